//! Channel models: exact output-set semantics, stochastic sampling, and the
//! confusability predicate.
//!
//! Two discrete-time models are implemented.
//!
//! * **Shift channel** `SHIFT(P; K1, K2)`: every particle of the input word
//!   moves between `K1` and `K2` cells to the right (negative shifts move
//!   left); particles keep their order and never share a cell.  Outputs are
//!   materialized as words of length `n + K2 - K1` covering the cell range
//!   `[1 + K1, n + K2]`, with the window offset recorded explicitly so that
//!   receiver realignment is a visible transform rather than a convention.
//! * **FIFO queue** `QUEUE(P; K; phi)`: packet `l`, sent in slot `i_l`, starts
//!   service in slot `max(i_l, j_{l-1} + 1)` and departs `kappa_l` slots
//!   later, where the processing times `kappa_l` are i.i.d. according to
//!   `phi` on `{0, ..., K}`.  Outputs have length `max(n, j_m)`.
//!
//! Two inputs are *confusable* when their output sets intersect; zero-error
//! codes are exactly the independent sets of this relation.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::Rng;

use crate::error::{Error, Result};
use crate::seq::{decompose, to_simplex, Sequence};

/// Parameters of the shift channel `SHIFT(P; K1, K2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftSpec {
    p: u32,
    k1: i64,
    k2: i64,
}

impl ShiftSpec {
    pub fn new(p: u32, k1: i64, k2: i64) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidParameter(format!("P must be >= 1, got {p}")));
        }
        if k2 < 0 {
            return Err(Error::InvalidParameter(format!(
                "K2 must be >= 0, got {k2}"
            )));
        }
        if k1 > k2 {
            return Err(Error::InvalidParameter(format!(
                "K1 <= K2 required, got K1={k1}, K2={k2}"
            )));
        }
        Ok(Self { p, k1, k2 })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn k1(&self) -> i64 {
        self.k1
    }

    pub fn k2(&self) -> i64 {
        self.k2
    }

    /// The shift window width `K = K2 - K1`; codes depend only on this.
    pub fn width(&self) -> u32 {
        (self.k2 - self.k1) as u32
    }

    /// The equivalent right-shift-only channel `SHIFT(P; 0, K2 - K1)`.
    pub fn normalized(&self) -> ShiftSpec {
        ShiftSpec {
            p: self.p,
            k1: 0,
            k2: self.k2 - self.k1,
        }
    }
}

/// Parameters of the FIFO queue `QUEUE(P; K; phi)`.
///
/// `phi` is the processing-time distribution on `{0, ..., K}`; every entry
/// must be strictly positive and the entries must sum to 1 (within `1e-9`).
#[derive(Debug, Clone, PartialEq)]
pub struct QueueSpec {
    p: u32,
    phi: Vec<f64>,
}

impl QueueSpec {
    pub fn new(p: u32, phi: Vec<f64>) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidParameter(format!("P must be >= 1, got {p}")));
        }
        if phi.is_empty() {
            return Err(Error::InvalidParameter("phi must be nonempty".into()));
        }
        if phi.iter().any(|&v| !(v > 0.0) || !v.is_finite()) {
            return Err(Error::InvalidParameter(
                "phi entries must be strictly positive".into(),
            ));
        }
        let sum: f64 = phi.iter().sum();
        if (sum - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidParameter(format!(
                "phi must sum to 1 (got {sum})"
            )));
        }
        Ok(Self { p, phi })
    }

    /// Uniform processing times on `{0, ..., k}`.
    pub fn uniform(p: u32, k: u32) -> Self {
        let len = k as usize + 1;
        Self {
            p,
            phi: vec![1.0 / len as f64; len],
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    /// The maximum processing time `K`.
    pub fn k(&self) -> u32 {
        (self.phi.len() - 1) as u32
    }

    pub fn phi(&self) -> &[f64] {
        &self.phi
    }

    /// `E[kappa]`, the mean processing time.
    pub fn mean_kappa(&self) -> f64 {
        self.phi
            .iter()
            .enumerate()
            .map(|(k, &v)| k as f64 * v)
            .sum()
    }

    pub(crate) fn kappa_dist(&self) -> WeightedIndex<f64> {
        WeightedIndex::new(self.phi.iter().copied()).expect("phi validated at construction")
    }
}

/// Any of the four channel families.
#[derive(Debug, Clone, PartialEq)]
pub enum ChannelSpec {
    Shift(ShiftSpec),
    Queue(QueueSpec),
    CtShift { p: u32, tau: f64, t_res: f64 },
    CtQueue { p: u32, tau: f64, t_proc: f64, e_kappa: f64 },
}

impl ChannelSpec {
    pub fn p(&self) -> u32 {
        match self {
            ChannelSpec::Shift(s) => s.p(),
            ChannelSpec::Queue(q) => q.p(),
            ChannelSpec::CtShift { p, .. } | ChannelSpec::CtQueue { p, .. } => *p,
        }
    }

    /// Replaces the alphabet-size parameter, keeping everything else.
    pub fn with_p(&self, p: u32) -> Result<ChannelSpec> {
        Ok(match self {
            ChannelSpec::Shift(s) => ChannelSpec::Shift(ShiftSpec::new(p, s.k1(), s.k2())?),
            ChannelSpec::Queue(q) => ChannelSpec::Queue(QueueSpec::new(p, q.phi().to_vec())?),
            ChannelSpec::CtShift { tau, t_res, .. } => ChannelSpec::CtShift {
                p,
                tau: *tau,
                t_res: *t_res,
            },
            ChannelSpec::CtQueue {
                tau,
                t_proc,
                e_kappa,
                ..
            } => ChannelSpec::CtQueue {
                p,
                tau: *tau,
                t_proc: *t_proc,
                e_kappa: *e_kappa,
            },
        })
    }
}

impl fmt::Display for ChannelSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChannelSpec::Shift(s) => write!(f, "SHIFT({};{},{})", s.p(), s.k1(), s.k2()),
            ChannelSpec::Queue(q) => {
                write!(f, "QUEUE({};{};", q.p(), q.k())?;
                for (i, v) in q.phi().iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{v}")?;
                }
                write!(f, ")")
            }
            ChannelSpec::CtShift { p, tau, t_res } => write!(f, "CTSHIFT({p};{tau};{t_res})"),
            ChannelSpec::CtQueue {
                p,
                tau,
                t_proc,
                e_kappa,
            } => write!(f, "CTQUEUE({p};{tau};{t_proc};{e_kappa})"),
        }
    }
}

impl FromStr for ChannelSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s
            .find('(')
            .ok_or_else(|| Error::Parse(format!("missing '(' in channel spec '{s}'")))?;
        if !s.ends_with(')') {
            return Err(Error::Parse(format!("missing ')' in channel spec '{s}'")));
        }
        let name = s[..open].to_ascii_uppercase();
        let body = &s[open + 1..s.len() - 1];
        let parts: Vec<&str> = body.split(';').collect();
        let int = |v: &str| -> Result<i64> {
            v.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("invalid integer '{v}'")))
        };
        let real = |v: &str| -> Result<f64> {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Error::Parse(format!("invalid number '{v}'")))
        };
        match name.as_str() {
            "SHIFT" => match parts.as_slice() {
                [p, window] if window.contains(',') => {
                    let (k1, k2) = window
                        .split_once(',')
                        .ok_or_else(|| Error::Parse("bad shift window".into()))?;
                    Ok(ChannelSpec::Shift(ShiftSpec::new(
                        int(p)? as u32,
                        int(k1)?,
                        int(k2)?,
                    )?))
                }
                [p, k] => Ok(ChannelSpec::Shift(ShiftSpec::new(
                    int(p)? as u32,
                    0,
                    int(k)?,
                )?)),
                _ => Err(Error::Parse(format!("bad SHIFT spec '{s}'"))),
            },
            "QUEUE" => match parts.as_slice() {
                [p, k] => Ok(ChannelSpec::Queue(QueueSpec::uniform(
                    int(p)? as u32,
                    int(k)? as u32,
                ))),
                [p, k, phi] => {
                    let phi: Vec<f64> =
                        phi.split(',').map(real).collect::<Result<_>>()?;
                    let k = int(k)? as usize;
                    if phi.len() != k + 1 {
                        return Err(Error::Parse(format!(
                            "phi has {} entries but K={k} requires {}",
                            phi.len(),
                            k + 1
                        )));
                    }
                    Ok(ChannelSpec::Queue(QueueSpec::new(int(p)? as u32, phi)?))
                }
                _ => Err(Error::Parse(format!("bad QUEUE spec '{s}'"))),
            },
            "CTSHIFT" => match parts.as_slice() {
                [p, tau, t_res] => Ok(ChannelSpec::CtShift {
                    p: int(p)? as u32,
                    tau: real(tau)?,
                    t_res: real(t_res)?,
                }),
                _ => Err(Error::Parse(format!("bad CTSHIFT spec '{s}'"))),
            },
            "CTQUEUE" => match parts.as_slice() {
                [p, tau, t_proc, e_kappa] => Ok(ChannelSpec::CtQueue {
                    p: int(p)? as u32,
                    tau: real(tau)?,
                    t_proc: real(t_proc)?,
                    e_kappa: real(e_kappa)?,
                }),
                _ => Err(Error::Parse(format!("bad CTQUEUE spec '{s}'"))),
            },
            other => Err(Error::Parse(format!("unknown channel '{other}'"))),
        }
    }
}

/// The exact set of sequences a given input can produce.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OutputSet {
    outputs: BTreeSet<Sequence>,
    /// Index of the first output cell minus one (`K1` for the shift channel,
    /// `0` for the queue).
    offset: i64,
}

impl OutputSet {
    pub fn outputs(&self) -> &BTreeSet<Sequence> {
        &self.outputs
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.outputs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.outputs.is_empty()
    }

    pub fn contains(&self, z: &Sequence) -> bool {
        self.outputs.contains(z)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sequence> {
        self.outputs.iter()
    }

    pub fn intersects(&self, other: &OutputSet) -> bool {
        self.outputs.intersection(&other.outputs).next().is_some()
    }

    /// Receiver realignment: shift the point of reference by `K1` cells, so
    /// the window starts at cell 1.  The materialized words are unchanged;
    /// only the recorded offset moves, which is exactly why codes depend on
    /// `K2 - K1` alone.
    pub fn normalized(&self) -> OutputSet {
        OutputSet {
            outputs: self.outputs.clone(),
            offset: 0,
        }
    }
}

fn check_alphabet(x: &Sequence, p: u32) -> Result<()> {
    if x.max_symbol() > p {
        return Err(Error::InvalidParameter(format!(
            "sequence contains symbol {} > P={p}",
            x.max_symbol()
        )));
    }
    Ok(())
}

/// Enumerates the outputs of the shift channel: all placements `j_1 < ... <
/// j_m` with `K1 <= j_l - i_l <= K2`, materialized over cells
/// `[1 + K1, n + K2]`.
pub fn shift_outputs(x: &Sequence, spec: &ShiftSpec) -> Result<OutputSet> {
    check_alphabet(x, spec.p())?;
    let n = x.len() as i64;
    let out_len = (n + spec.width() as i64) as usize;
    let positions: Vec<i64> = x.particle_positions().iter().map(|&i| i as i64).collect();
    let types = x.particle_types();

    let mut outputs = BTreeSet::new();
    let mut cells = vec![0i64; positions.len()];
    fn rec(
        level: usize,
        prev: i64,
        positions: &[i64],
        spec: &ShiftSpec,
        cells: &mut [i64],
        types: &[u32],
        out_len: usize,
        outputs: &mut BTreeSet<Sequence>,
    ) {
        if level == positions.len() {
            let mut symbols = vec![0u32; out_len];
            for (l, &j) in cells.iter().enumerate() {
                symbols[(j - 1 - spec.k1()) as usize] = types[l];
            }
            outputs.insert(Sequence::from_symbols(symbols));
            return;
        }
        let i = positions[level];
        let lo = (i + spec.k1()).max(prev + 1);
        let hi = i + spec.k2();
        for j in lo..=hi {
            cells[level] = j;
            rec(
                level + 1,
                j,
                positions,
                spec,
                cells,
                types,
                out_len,
                outputs,
            );
        }
    }
    rec(
        0,
        i64::MIN / 2,
        &positions,
        spec,
        &mut cells,
        &types,
        out_len,
        &mut outputs,
    );
    Ok(OutputSet {
        outputs,
        offset: spec.k1(),
    })
}

/// Enumerates the outputs of the FIFO queue: all departure vectors generated
/// by `j_l = max(i_l, j_{l-1} + 1) + kappa_l` with `kappa_l` ranging over
/// `{0, ..., K}`, materialized as words of length `max(n, j_m)`.
pub fn queue_outputs(x: &Sequence, spec: &QueueSpec) -> Result<OutputSet> {
    check_alphabet(x, spec.p())?;
    let n = x.len();
    let k = spec.k() as usize;
    let positions = x.particle_positions();
    let types = x.particle_types();

    let mut outputs = BTreeSet::new();
    let mut departures = vec![0usize; positions.len()];
    fn rec(
        level: usize,
        prev: usize,
        positions: &[usize],
        k: usize,
        n: usize,
        departures: &mut [usize],
        types: &[u32],
        outputs: &mut BTreeSet<Sequence>,
    ) {
        if level == positions.len() {
            let out_len = n.max(prev);
            let mut symbols = vec![0u32; out_len];
            for (l, &j) in departures.iter().enumerate() {
                symbols[j - 1] = types[l];
            }
            outputs.insert(Sequence::from_symbols(symbols));
            return;
        }
        let start = positions[level].max(prev + 1);
        for kappa in 0..=k {
            let j = start + kappa;
            departures[level] = j;
            rec(level + 1, j, positions, k, n, departures, types, outputs);
        }
    }
    if positions.is_empty() {
        outputs.insert(x.clone());
    } else {
        rec(0, 0, &positions, k, n, &mut departures, &types, &mut outputs);
    }
    Ok(OutputSet {
        outputs,
        offset: 0,
    })
}

/// Closed-form membership test `z in outputs(x)` without enumerating the
/// whole output set.  Only defined for the discrete channels.
pub fn output_contains(spec: &ChannelSpec, x: &Sequence, z: &Sequence) -> Result<bool> {
    match spec {
        ChannelSpec::Shift(s) => {
            check_alphabet(x, s.p())?;
            if z.len() != x.len() + s.width() as usize {
                return Ok(false);
            }
            if x.particle_types() != z.particle_types() {
                return Ok(false);
            }
            let width = s.width() as i64;
            // materialized position j corresponds to cell j + K1, so the
            // per-particle constraint K1 <= cell - i <= K2 becomes
            // 0 <= j - i <= K2 - K1.
            Ok(x.particle_positions()
                .iter()
                .zip(z.particle_positions())
                .all(|(&i, j)| {
                    let d = j as i64 - i as i64;
                    (0..=width).contains(&d)
                }))
        }
        ChannelSpec::Queue(q) => {
            check_alphabet(x, q.p())?;
            if z.len() < x.len() {
                return Ok(false);
            }
            if x.particle_types() != z.particle_types() {
                return Ok(false);
            }
            let k = q.k() as usize;
            let positions = x.particle_positions();
            let arrivals = z.particle_positions();
            let mut prev = 0usize;
            for (&i, &j) in positions.iter().zip(&arrivals) {
                let start = i.max(prev + 1);
                if j < start || j - start > k {
                    return Ok(false);
                }
                prev = j;
            }
            Ok(z.len() == x.len().max(prev))
        }
        _ => Err(Error::InvalidParameter(
            "output membership is defined for discrete channels only".into(),
        )),
    }
}

/// Draws one shift-channel output.  Cells are drawn left to right, uniformly
/// over the interval the window and the previously placed particle allow;
/// this touches every member of the output set with positive probability.
/// The particular distribution is implementation-defined (zero-error
/// properties do not depend on it).
pub fn sample_shift<R: Rng + ?Sized>(
    x: &Sequence,
    spec: &ShiftSpec,
    rng: &mut R,
) -> Result<Sequence> {
    check_alphabet(x, spec.p())?;
    let out_len = x.len() + spec.width() as usize;
    let mut symbols = vec![0u32; out_len];
    let mut prev = i64::MIN / 2;
    for (&i, &t) in x.particle_positions().iter().zip(&x.particle_types()) {
        let i = i as i64;
        let lo = (i + spec.k1()).max(prev + 1);
        let hi = i + spec.k2();
        let j = rng.random_range(lo..=hi);
        symbols[(j - 1 - spec.k1()) as usize] = t;
        prev = j;
    }
    Ok(Sequence::from_symbols(symbols))
}

/// Departure slot of the last packet for one random queue realization.
pub(crate) fn queue_last_departure<R: Rng + ?Sized>(
    positions: &[usize],
    dist: &WeightedIndex<f64>,
    rng: &mut R,
) -> usize {
    let mut prev = 0usize;
    for &i in positions {
        prev = i.max(prev + 1) + dist.sample(rng);
    }
    prev
}

/// Draws one queue output: processing times are i.i.d. according to `phi`,
/// and departures follow the FIFO recurrence.
pub fn sample_queue<R: Rng + ?Sized>(
    x: &Sequence,
    spec: &QueueSpec,
    rng: &mut R,
) -> Result<Sequence> {
    check_alphabet(x, spec.p())?;
    let positions = x.particle_positions();
    if positions.is_empty() {
        return Ok(x.clone());
    }
    let dist = spec.kappa_dist();
    let mut departures = Vec::with_capacity(positions.len());
    let mut prev = 0usize;
    for &i in &positions {
        prev = i.max(prev + 1) + dist.sample(rng);
        departures.push(prev);
    }
    let out_len = x.len().max(prev);
    let mut symbols = vec![0u32; out_len];
    for (&j, &t) in departures.iter().zip(&x.particle_types()) {
        symbols[j - 1] = t;
    }
    Ok(Sequence::from_symbols(symbols))
}

/// Whether two equal-length inputs can produce the same output.
///
/// For the shift channel this uses the geometric rule: the particle
/// subsequences must be identical and the indicator words, in simplex
/// coordinates, must satisfy `max_i |x_i - y_i| <= K2 - K1`.  For the queue
/// the output sets are intersected directly.
pub fn confusable(x: &Sequence, y: &Sequence, spec: &ChannelSpec) -> Result<bool> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            expected: x.len(),
            actual: y.len(),
        });
    }
    match spec {
        ChannelSpec::Shift(s) => {
            check_alphabet(x, s.p())?;
            check_alphabet(y, s.p())?;
            let dx = decompose(x);
            let dy = decompose(y);
            if dx.types != dy.types {
                return Ok(false);
            }
            let px = to_simplex(&dx.indicator)?;
            let py = to_simplex(&dy.indicator)?;
            let width = s.width() as i64;
            Ok(px
                .coords()
                .iter()
                .zip(py.coords())
                .all(|(&a, &b)| (a as i64 - b as i64).abs() <= width))
        }
        ChannelSpec::Queue(q) => {
            let ox = queue_outputs(x, q)?;
            let oy = queue_outputs(y, q)?;
            Ok(ox.intersects(&oy))
        }
        _ => Err(Error::InvalidParameter(
            "confusability is defined for discrete channels only".into(),
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn seq(s: &str) -> Sequence {
        Sequence::parse(s, 9).unwrap()
    }

    fn set(words: &[&str]) -> BTreeSet<Sequence> {
        words.iter().map(|w| seq(w)).collect()
    }

    #[test]
    fn shift_outputs_examples() {
        // single particle, window [0,2]: it lands in cell 1, 2 or 3 of the
        // 7-cell materialized range
        let spec = ShiftSpec::new(1, 0, 2).unwrap();
        let out = shift_outputs(&seq("10000"), &spec).unwrap();
        assert_eq!(out.outputs(), &set(&["1000000", "0100000", "0010000"]));
        assert_eq!(out.offset(), 0);

        // zero shift window
        let spec = ShiftSpec::new(1, 0, 0).unwrap();
        let out = shift_outputs(&seq("00100"), &spec).unwrap();
        assert_eq!(out.outputs(), &set(&["00100"]));

        // two particles, window [0,1]
        let spec = ShiftSpec::new(1, 0, 1).unwrap();
        let out = shift_outputs(&seq("101"), &spec).unwrap();
        assert_eq!(out.outputs(), &set(&["1010", "1001", "0110", "0101"]));
        assert!(out.iter().all(|z| z.len() == 4));
    }

    #[test]
    fn shift_outputs_all_zero_is_singleton() {
        let spec = ShiftSpec::new(2, -1, 2).unwrap();
        let out = shift_outputs(&seq("000"), &spec).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out.iter().next().unwrap(), &seq("000000"));
    }

    #[test]
    fn queue_outputs_examples() {
        let spec = QueueSpec::uniform(1, 1);
        let out = queue_outputs(&seq("11"), &spec).unwrap();
        assert_eq!(out.outputs(), &set(&["11", "101", "011", "0101"]));

        let spec = QueueSpec::uniform(1, 0);
        let out = queue_outputs(&seq("10"), &spec).unwrap();
        assert_eq!(out.outputs(), &set(&["10"]));

        let spec = QueueSpec::uniform(1, 2);
        let out = queue_outputs(&seq("1"), &spec).unwrap();
        assert_eq!(out.outputs(), &set(&["1", "01", "001"]));

        // all-zero input passes through unchanged
        let out = queue_outputs(&seq("000"), &spec).unwrap();
        assert_eq!(out.outputs(), &set(&["000"]));
    }

    #[test]
    fn outputs_preserve_particle_subsequence() {
        let x = Sequence::from_symbols(vec![0, 2, 1, 0, 2]);
        let shift = ShiftSpec::new(2, -1, 1).unwrap();
        for z in shift_outputs(&x, &shift).unwrap().iter() {
            assert_eq!(z.particle_types(), x.particle_types());
            assert_eq!(z.len(), x.len() + 2);
        }
        let queue = QueueSpec::uniform(2, 2);
        for z in queue_outputs(&x, &queue).unwrap().iter() {
            assert_eq!(z.particle_types(), x.particle_types());
            assert!(z.len() >= x.len() && z.len() <= 3 * x.len());
            if z.len() > x.len() {
                assert_ne!(*z.symbols().last().unwrap(), 0);
            }
        }
    }

    #[test]
    fn shift_window_normalization() {
        // outputs of SHIFT(P;K1,K2), re-read from the shifted reference
        // point, coincide with the outputs of SHIFT(P;0,K2-K1)
        for x in ["10100100", "00110000", "10000001", "00000000"] {
            let x = seq(x);
            for (k1, k2) in [(-2i64, 1i64), (-1, 0), (1, 3), (-2, 0)] {
                let spec = ShiftSpec::new(1, k1, k2).unwrap();
                let out = shift_outputs(&x, &spec).unwrap();
                let norm = shift_outputs(&x, &spec.normalized()).unwrap();
                assert_eq!(out.normalized(), norm);
                assert_eq!(out.offset(), k1);
                assert_eq!(norm.offset(), 0);
            }
        }
    }

    #[test]
    fn sample_shift_support_matches_enumeration() {
        let mut rng = ChaCha12Rng::seed_from_u64(1);

        // zero window: deterministic
        let spec = ShiftSpec::new(1, 0, 0).unwrap();
        for _ in 0..100 {
            assert_eq!(sample_shift(&seq("10000"), &spec, &mut rng).unwrap(), seq("10000"));
        }

        let spec = ShiftSpec::new(1, 0, 1).unwrap();
        let x = seq("101");
        let expected = shift_outputs(&x, &spec).unwrap();
        let mut seen = BTreeSet::new();
        for _ in 0..1_000_000 {
            let z = sample_shift(&x, &spec, &mut rng).unwrap();
            assert!(expected.contains(&z));
            seen.insert(z);
        }
        assert_eq!(&seen, expected.outputs());

        // window reaching left of the register
        let spec = ShiftSpec::new(1, -1, 1).unwrap();
        let x = seq("00100");
        let expected = shift_outputs(&x, &spec).unwrap();
        assert_eq!(
            expected.outputs(),
            &set(&["0100000", "0010000", "0001000"])
        );
        let mut seen = BTreeSet::new();
        for _ in 0..10_000 {
            seen.insert(sample_shift(&x, &spec, &mut rng).unwrap());
        }
        assert_eq!(&seen, expected.outputs());
    }

    #[test]
    fn sample_queue_support_matches_enumeration() {
        let mut rng = ChaCha12Rng::seed_from_u64(2);
        let spec = QueueSpec::uniform(1, 1);
        let x = seq("11");
        let expected = queue_outputs(&x, &spec).unwrap();
        let mut seen = BTreeSet::new();
        for _ in 0..1_000_000 {
            let z = sample_queue(&x, &spec, &mut rng).unwrap();
            assert!(expected.contains(&z));
            seen.insert(z);
        }
        assert_eq!(&seen, expected.outputs());

        // no packets: unchanged
        let z = sample_queue(&seq("0000"), &spec, &mut rng).unwrap();
        assert_eq!(z, seq("0000"));
    }

    #[test]
    fn confusable_examples() {
        // cubes of side 1 at coordinate distance 2 are disjoint
        let shift01 = ChannelSpec::Shift(ShiftSpec::new(1, 0, 1).unwrap());
        assert!(!confusable(&seq("110000"), &seq("001100"), &shift01).unwrap());
        // (0,0) and (1,1) both reach (1,1)
        assert!(confusable(&seq("110000"), &seq("010100"), &shift01).unwrap());

        let queue = ChannelSpec::Queue(QueueSpec::uniform(1, 1));
        assert!(confusable(&seq("10"), &seq("01"), &queue).unwrap());
        // x ~> x always holds for the queue
        assert!(confusable(&seq("10"), &seq("10"), &queue).unwrap());

        assert!(matches!(
            confusable(&seq("10"), &seq("100"), &queue),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn confusable_requires_equal_types() {
        let shift = ChannelSpec::Shift(ShiftSpec::new(2, 0, 3).unwrap());
        let x = Sequence::from_symbols(vec![1, 0, 0]);
        let y = Sequence::from_symbols(vec![0, 2, 0]);
        assert!(!confusable(&x, &y, &shift).unwrap());
        let y = Sequence::from_symbols(vec![0, 1, 0]);
        assert!(confusable(&x, &y, &shift).unwrap());
    }

    #[test]
    fn shift_fast_path_agrees_with_enumeration() {
        for n in 1..=7usize {
            let words: Vec<Sequence> = (0..=3usize.min(n))
                .flat_map(|w| crate::seq::weight_words(n, w, 1))
                .collect();
            for (k1, k2) in [(0i64, 0i64), (0, 1), (0, 2), (-1, 0), (-1, 1), (-2, 2)] {
                let spec = ShiftSpec::new(1, k1, k2).unwrap();
                let chan = ChannelSpec::Shift(spec);
                let outs: Vec<OutputSet> = words
                    .iter()
                    .map(|x| shift_outputs(x, &spec).unwrap())
                    .collect();
                for i in 0..words.len() {
                    for j in i..words.len() {
                        let fast = confusable(&words[i], &words[j], &chan).unwrap();
                        let brute = outs[i].intersects(&outs[j]);
                        assert_eq!(
                            fast, brute,
                            "mismatch at n={n} x={} y={} window=({k1},{k2})",
                            words[i], words[j]
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn confusable_is_symmetric() {
        let n = 6;
        let words = crate::seq::weight_words(n, 2, 1);
        for spec in [
            ChannelSpec::Shift(ShiftSpec::new(1, -2, 2).unwrap()),
            ChannelSpec::Shift(ShiftSpec::new(1, 0, 1).unwrap()),
            ChannelSpec::Queue(QueueSpec::uniform(1, 1)),
        ] {
            for x in &words {
                for y in &words {
                    assert_eq!(
                        confusable(x, y, &spec).unwrap(),
                        confusable(y, x, &spec).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn output_contains_agrees_with_enumeration() {
        let shift = ShiftSpec::new(2, -1, 1).unwrap();
        let queue = QueueSpec::uniform(2, 1);
        let words = crate::seq::weight_words(4, 2, 2);
        for x in &words {
            let so = shift_outputs(x, &shift).unwrap();
            let qo = queue_outputs(x, &queue).unwrap();
            for z in so.iter() {
                assert!(output_contains(&ChannelSpec::Shift(shift), x, z).unwrap());
            }
            for z in qo.iter() {
                assert!(output_contains(&ChannelSpec::Queue(queue.clone()), x, z).unwrap());
            }
            // non-members: outputs of the other words
            for y in &words {
                if y == x {
                    continue;
                }
                for z in shift_outputs(y, &shift).unwrap().iter() {
                    assert_eq!(
                        output_contains(&ChannelSpec::Shift(shift), x, z).unwrap(),
                        so.contains(z)
                    );
                }
                for z in queue_outputs(y, &queue).unwrap().iter() {
                    assert_eq!(
                        output_contains(&ChannelSpec::Queue(queue.clone()), x, z).unwrap(),
                        qo.contains(z)
                    );
                }
            }
        }
    }

    #[test]
    fn spec_parse_round_trip() {
        for s in [
            "SHIFT(1;0,1)",
            "SHIFT(2;-1,3)",
            "QUEUE(1;2;0.5,0.25,0.25)",
            "CTSHIFT(1;0.5;1)",
            "CTQUEUE(4;0.1;2;1)",
        ] {
            let spec: ChannelSpec = s.parse().unwrap();
            assert_eq!(spec.to_string().parse::<ChannelSpec>().unwrap(), spec);
        }
        // shorthand forms
        let spec: ChannelSpec = "SHIFT(1;2)".parse().unwrap();
        assert_eq!(spec, ChannelSpec::Shift(ShiftSpec::new(1, 0, 2).unwrap()));
        let spec: ChannelSpec = "QUEUE(3;1)".parse().unwrap();
        assert_eq!(spec, ChannelSpec::Queue(QueueSpec::uniform(3, 1)));
        assert!("QUEUE(1;2;0.5,0.5)".parse::<ChannelSpec>().is_err());
        assert!("FOO(1;2)".parse::<ChannelSpec>().is_err());
    }

    #[test]
    fn queue_spec_validation() {
        assert!(QueueSpec::new(1, vec![0.5, 0.5]).is_ok());
        assert!(QueueSpec::new(1, vec![0.5, 0.4]).is_err());
        assert!(QueueSpec::new(1, vec![1.0, 0.0]).is_err());
        assert!(QueueSpec::new(1, vec![]).is_err());
        assert!(QueueSpec::new(0, vec![1.0]).is_err());
        let q = QueueSpec::new(2, vec![0.5, 0.25, 0.25]).unwrap();
        assert_eq!(q.k(), 2);
        assert!((q.mean_kappa() - 0.75).abs() < 1e-12);
    }
}
