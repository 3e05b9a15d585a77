//! Code constructions, cardinality formulas, decoders and error detection.
//!
//! The central construction is the lattice code: in simplex coordinates, the
//! constant-weight words whose coordinates are all multiples of `K + 1`.
//! Output sets of the shift channel are axis-aligned cubes of side `K`, so
//! these codewords have pairwise disjoint cubes that tile the whole simplex;
//! decoding is per-coordinate rounding down to the lattice.  Queue codes
//! reuse the same lattice after reserving `K` empty slots behind each packet,
//! which makes the queue act exactly like the shift channel on the remaining
//! inputs.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::channel::{output_contains, ChannelSpec, QueueSpec, ShiftSpec};
use crate::error::{Error, Result};
use crate::oracle::Guard;
use crate::seq::{
    binomial, binomial_u128, compose, decompose, from_simplex, simplex_points, to_simplex,
    weight_words, BigCount, Decomposition, Sequence, SimplexPoint,
};

/// Whether a code targets error correction or error detection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CodeKind {
    Correction,
    Detection,
}

impl fmt::Display for CodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodeKind::Correction => write!(f, "correction"),
            CodeKind::Detection => write!(f, "detection"),
        }
    }
}

impl FromStr for CodeKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "correction" => Ok(CodeKind::Correction),
            "detection" => Ok(CodeKind::Detection),
            other => Err(Error::Parse(format!("unknown code kind '{other}'"))),
        }
    }
}

/// A finite set of equal-length words together with the channel it targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Code {
    words: BTreeSet<Sequence>,
    n: usize,
    p: u32,
    channel: ChannelSpec,
    kind: CodeKind,
    construction: String,
}

impl Code {
    pub fn new(
        words: impl IntoIterator<Item = Sequence>,
        n: usize,
        p: u32,
        channel: ChannelSpec,
        kind: CodeKind,
        construction: impl Into<String>,
    ) -> Result<Self> {
        let words: BTreeSet<Sequence> = words.into_iter().collect();
        if words.is_empty() {
            return Err(Error::InvalidParameter("a code must be nonempty".into()));
        }
        for w in &words {
            if w.len() != n {
                return Err(Error::LengthMismatch {
                    expected: n,
                    actual: w.len(),
                });
            }
            if w.max_symbol() > p {
                return Err(Error::InvalidParameter(format!(
                    "codeword {w} uses a symbol above P={p}"
                )));
            }
        }
        Ok(Self {
            words,
            n,
            p,
            channel,
            kind,
            construction: construction.into(),
        })
    }

    pub fn words(&self) -> &BTreeSet<Sequence> {
        &self.words
    }

    pub fn iter(&self) -> impl Iterator<Item = &Sequence> {
        self.words.iter()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn contains(&self, w: &Sequence) -> bool {
        self.words.contains(w)
    }

    /// Code length `n` (after any padding applied by a constructor).
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn channel(&self) -> &ChannelSpec {
        &self.channel
    }

    pub fn kind(&self) -> CodeKind {
        self.kind
    }

    pub fn construction(&self) -> &str {
        &self.construction
    }

    /// Weight of the codewords if the code is constant-weight.
    pub fn uniform_weight(&self) -> Option<usize> {
        let mut it = self.words.iter().map(|w| w.weight());
        let first = it.next()?;
        it.all(|w| w == first).then_some(first)
    }

    /// Serializes to the line-oriented text format: one header line
    /// `n=<n> P=<P> channel=<spec> kind=<kind> construction=<id>` followed by
    /// one digit-string codeword per line.
    pub fn to_file_string(&self) -> Result<String> {
        if self.p > 9 {
            return Err(Error::InvalidParameter(
                "text format supports P <= 9".into(),
            ));
        }
        let mut out = format!(
            "n={} P={} channel={} kind={} construction={}\n",
            self.n, self.p, self.channel, self.kind, self.construction
        );
        for w in &self.words {
            out.push_str(&w.to_string());
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_file_str(s: &str) -> Result<Self> {
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header = lines
            .next()
            .ok_or_else(|| Error::Parse("empty code file".into()))?;
        let mut n = None;
        let mut p = None;
        let mut channel = None;
        let mut kind = None;
        let mut construction = None;
        for field in header.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field '{field}'")))?;
            match key {
                "n" => {
                    n = Some(
                        value
                            .parse::<usize>()
                            .map_err(|_| Error::Parse(format!("bad n '{value}'")))?,
                    )
                }
                "P" => {
                    p = Some(
                        value
                            .parse::<u32>()
                            .map_err(|_| Error::Parse(format!("bad P '{value}'")))?,
                    )
                }
                "channel" => channel = Some(value.parse::<ChannelSpec>()?),
                "kind" => kind = Some(value.parse::<CodeKind>()?),
                "construction" => construction = Some(value.to_string()),
                other => return Err(Error::Parse(format!("unknown header key '{other}'"))),
            }
        }
        let n = n.ok_or_else(|| Error::Parse("header missing n".into()))?;
        let p = p.ok_or_else(|| Error::Parse("header missing P".into()))?;
        let channel = channel.ok_or_else(|| Error::Parse("header missing channel".into()))?;
        let kind = kind.ok_or_else(|| Error::Parse("header missing kind".into()))?;
        let construction =
            construction.ok_or_else(|| Error::Parse("header missing construction".into()))?;
        let words: Vec<Sequence> = lines
            .map(|l| Sequence::parse(l.trim(), p))
            .collect::<Result<_>>()?;
        Code::new(words, n, p, channel, kind, construction)
    }

    pub fn write_to_file(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_file_string()?)?;
        Ok(())
    }

    pub fn read_from_file(path: &Path) -> Result<Self> {
        Code::from_file_str(&std::fs::read_to_string(path)?)
    }
}

/// Size of the optimal constant-weight code for `SHIFT(P;K)`:
/// `P^W * C(W + floor((n-W)/(K+1)), W)`.
pub fn shift_cw_code_count(n: usize, w: usize, k: u32, p: u32) -> BigCount {
    if w > n {
        return BigCount::zero();
    }
    let d = (n - w) as u64 / (k as u64 + 1);
    BigCount::from(p).pow(w as u32) * binomial(w as u64 + d, w as u64)
}

/// Size of the optimal length-`n` code for `SHIFT(P;K)`, via the linear
/// recurrence `M(n) = P*M(n-1) + M(n-K-1)` with geometric initial segment
/// `M(n) = 1 + P + ... + P^n` for `n <= K`.
pub fn shift_code_count(n: usize, k: u32, p: u32) -> BigCount {
    let k = k as usize;
    let pb = BigCount::from(p);
    let mut m: Vec<BigCount> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let v = if i == 0 {
            BigCount::one()
        } else if i <= k {
            &m[i - 1] + pb.pow(i as u32)
        } else {
            &pb * &m[i - 1] + &m[i - k - 1]
        };
        m.push(v);
    }
    m.pop().expect("loop ran at least once")
}

/// Size of the optimal constant-weight queue code, `P^W * C((n+K)/(K+1), W)`.
///
/// The formula is certified only for `n >= W(K+1) - K` and
/// `n = 1 (mod K+1)`; outside that regime this returns an error.  `W = 0` is
/// exact for every `n` (the single all-zero word).
pub fn queue_code_count(n: usize, w: usize, k: u32, p: u32) -> Result<BigCount> {
    if w == 0 {
        return Ok(BigCount::one());
    }
    let k = k as usize;
    let needed = w * (k + 1) - k;
    if n < needed {
        return Err(Error::Infeasible(format!(
            "n={n} too small for W={w} packets with spacing K={k} (need n >= {needed})"
        )));
    }
    if n % (k + 1) != 1 % (k + 1) {
        return Err(Error::InvalidParameter(format!(
            "queue code count requires n = 1 (mod K+1); got n={n}, K={k}"
        )));
    }
    let top = (n + k) as u64 / (k as u64 + 1);
    Ok(BigCount::from(p).pow(w as u32) * binomial(top, w as u64))
}

/// Builds the optimal binary constant-weight code for `SHIFT(1;K)`: all
/// simplex points with every coordinate a multiple of `K + 1`.
pub fn construct_shift_cw_code(n: usize, w: usize, k: u32) -> Result<Code> {
    if w > n {
        return Err(Error::InvalidParameter(format!(
            "weight W={w} exceeds length n={n}"
        )));
    }
    let step = k as u64 + 1;
    let d = ((n - w) as u64 / step) as u32;
    let bound = (n - w) as u32;
    let words: Vec<Sequence> = simplex_points(w, d)
        .into_iter()
        .map(|t| {
            let coords: Vec<u32> = t.coords().iter().map(|&c| c * (k + 1)).collect();
            let pt = SimplexPoint::new(coords, bound).expect("scaled lattice stays in simplex");
            from_simplex(&pt, n).expect("bound matches")
        })
        .collect();
    Code::new(
        words,
        n,
        1,
        ChannelSpec::Shift(ShiftSpec::new(1, 0, k as i64)?),
        CodeKind::Correction,
        "shift-lattice",
    )
}

/// Lifts a binary code to the `P`-ary alphabet: all words whose indicator
/// lies in the base code.  Cardinality multiplies by `P^W` per weight class.
pub fn lift_to_pary(indicator_code: &Code, p: u32) -> Result<Code> {
    if p < 1 {
        return Err(Error::InvalidParameter(format!("P must be >= 1, got {p}")));
    }
    if !indicator_code.iter().all(|w| w.is_binary()) {
        return Err(Error::NotBinary);
    }
    if p == 1 {
        return Ok(indicator_code.clone());
    }
    let mut words = Vec::new();
    for indicator in indicator_code.iter() {
        let w = indicator.weight();
        let mut types = vec![1u32; w];
        loop {
            words.push(compose(&Decomposition {
                indicator: indicator.clone(),
                types: types.clone(),
            })?);
            let mut i = w;
            loop {
                if i == 0 {
                    break;
                }
                if types[i - 1] < p {
                    types[i - 1] += 1;
                    break;
                }
                types[i - 1] = 1;
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
    }
    Code::new(
        words,
        indicator_code.n(),
        p,
        indicator_code.channel().with_p(p)?,
        indicator_code.kind(),
        format!("lift:{}", indicator_code.construction()),
    )
}

/// Builds the optimal binary constant-weight queue code: reserve `K` empty
/// slots after each of the first `W - 1` packets, then place the shift-channel
/// lattice in the simplex that remains.  In simplex coordinates, codeword
/// coordinates are `x_i = (K+1) t_i + (i-1) K` for `t` ranging over the
/// reduced simplex.
///
/// When `n != 1 (mod K+1)` the length is zero-padded up to the next value
/// that satisfies the congruence (the returned code reports the padded
/// length); this keeps the cardinality formula exact.
pub fn construct_queue_code(n: usize, w: usize, k: u32) -> Result<Code> {
    let step = k as usize + 1;
    let target = 1 % step;
    let n_pad = n + (target + step - n % step) % step;
    if w > n_pad {
        return Err(Error::InvalidParameter(format!(
            "weight W={w} exceeds padded length {n_pad}"
        )));
    }
    let words: Vec<Sequence> = if w == 0 {
        vec![Sequence::zeros(n_pad)]
    } else {
        let slack = n_pad as i64 - w as i64 - (w as i64 - 1) * k as i64;
        if slack < 0 {
            return Err(Error::Infeasible(format!(
                "n={n} (padded to {n_pad}) cannot hold W={w} packets separated by K={k} zeros"
            )));
        }
        let d = (slack as u64 / step as u64) as u32;
        let bound = (n_pad - w) as u32;
        simplex_points(w, d)
            .into_iter()
            .map(|t| {
                let coords: Vec<u32> = t
                    .coords()
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| c * (k + 1) + i as u32 * k)
                    .collect();
                let pt = SimplexPoint::new(coords, bound).expect("spaced lattice stays in simplex");
                from_simplex(&pt, n_pad).expect("bound matches")
            })
            .collect()
    };
    let construction = if n_pad == n {
        "queue-lattice".to_string()
    } else {
        format!("queue-lattice(padded_from={n})")
    };
    Code::new(
        words,
        n_pad,
        1,
        ChannelSpec::Queue(QueueSpec::uniform(1, k)),
        CodeKind::Correction,
        construction,
    )
}

/// The dense queue codebook `{1, ..., P}^n`, capacity-achieving when the
/// packet-type term dominates.  Decoding reads the types in arrival order.
pub fn construct_dense_queue_code(n: usize, spec: &QueueSpec, guard: &Guard) -> Result<Code> {
    let count = (spec.p() as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if count > guard.max_vertices as u128 {
        return Err(Error::GuardExceeded(format!(
            "dense code has {count} words, guard allows {}",
            guard.max_vertices
        )));
    }
    let mut words = Vec::new();
    let mut symbols = vec![1u32; n];
    loop {
        words.push(Sequence::from_symbols(symbols.clone()));
        let mut i = n;
        loop {
            if i == 0 {
                break;
            }
            if symbols[i - 1] < spec.p() {
                symbols[i - 1] += 1;
                break;
            }
            symbols[i - 1] = 1;
            i -= 1;
        }
        if i == 0 {
            break;
        }
    }
    Code::new(
        words,
        n,
        spec.p(),
        ChannelSpec::Queue(spec.clone()),
        CodeKind::Correction,
        "dense",
    )
}

/// Compares two words reading the rightmost symbol as most significant.
fn colex_cmp(a: &Sequence, b: &Sequence) -> std::cmp::Ordering {
    for (x, y) in a.symbols().iter().rev().zip(b.symbols().iter().rev()) {
        match x.cmp(y) {
            std::cmp::Ordering::Equal => continue,
            other => return other,
        }
    }
    a.len().cmp(&b.len())
}

/// Greedy code construction: list all weight-`W` words in reverse
/// lexicographic order (rightmost symbol most significant, ascending) and
/// keep each word that is not confusable with any word kept so far.
///
/// This is an independent construction used to cross-check the lattice
/// codes; for the queue it is optimal for every `(n, W)`.
pub fn greedy_reverse_lex(n: usize, w: usize, spec: &ChannelSpec, guard: &Guard) -> Result<Code> {
    let p = spec.p();
    let candidates = binomial_u128(n as u64, w as u64)
        .saturating_mul((p as u128).saturating_pow(w as u32));
    if candidates > guard.max_vertices as u128 {
        return Err(Error::GuardExceeded(format!(
            "{candidates} candidate words, guard allows {}",
            guard.max_vertices
        )));
    }
    let mut words = weight_words(n, w, p);
    words.sort_by(colex_cmp);
    let mut chosen: Vec<Sequence> = Vec::new();
    for cand in words {
        let mut ok = true;
        for prev in &chosen {
            if crate::channel::confusable(&cand, prev, spec)? {
                ok = false;
                break;
            }
        }
        if ok {
            chosen.push(cand);
        }
    }
    Code::new(chosen, n, p, spec.clone(), CodeKind::Correction, "greedy")
}

/// Which sum to select when constructing a detection code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SumChoice {
    /// Fix the coordinate-sum plane.
    Fixed(u64),
    /// Scan all planes and keep a largest one (ties break to the smallest
    /// sum); the pigeonhole bound guarantees at least `|parent| / (W(n-W)+1)`
    /// codewords.
    Auto,
}

/// Builds a zero-error-*detecting* code as a constant-sum slice.
///
/// For `SHIFT(P;K1,K2)` (with `K1 <= 0 <= K2` so that undisturbed
/// transmission is possible) the slice is cut from the `K2`-lattice: all
/// lattice points with coordinate sum `a`.  For the queue, delays only ever
/// increase the coordinate sum, so the slice is cut from the whole simplex.
pub fn construct_detection_code(
    n: usize,
    w: usize,
    spec: &ChannelSpec,
    a: SumChoice,
) -> Result<Code> {
    if w > n {
        return Err(Error::InvalidParameter(format!(
            "weight W={w} exceeds length n={n}"
        )));
    }
    let max_sum = (w as u64) * ((n - w) as u64);
    if let SumChoice::Fixed(a) = a {
        if a > max_sum {
            return Err(Error::InvalidParameter(format!(
                "sum a={a} outside [0, W(n-W)] = [0, {max_sum}]"
            )));
        }
    }
    let (candidates, tag): (Vec<SimplexPoint>, &str) = match spec {
        ChannelSpec::Shift(s) => {
            if !(s.k1() <= 0 && s.k2() >= 0) {
                return Err(Error::InvalidParameter(
                    "detection requires K1 <= 0 <= K2 (x ~> x must be possible)".into(),
                ));
            }
            let step = s.k2() as u64 + 1;
            let d = ((n - w) as u64 / step) as u32;
            let bound = (n - w) as u32;
            (
                simplex_points(w, d)
                    .into_iter()
                    .map(|t| {
                        let coords: Vec<u32> =
                            t.coords().iter().map(|&c| c * (s.k2() as u32 + 1)).collect();
                        SimplexPoint::new(coords, bound).expect("lattice stays in simplex")
                    })
                    .collect(),
                "shift-detect",
            )
        }
        ChannelSpec::Queue(_) => (simplex_points(w, (n - w) as u32), "queue-detect"),
        _ => {
            return Err(Error::InvalidParameter(
                "detection codes are defined for discrete channels only".into(),
            ))
        }
    };
    let chosen_a = match a {
        SumChoice::Fixed(a) => a,
        SumChoice::Auto => {
            let mut sizes = vec![0usize; max_sum as usize + 1];
            for pt in &candidates {
                sizes[pt.coordinate_sum() as usize] += 1;
            }
            sizes
                .iter()
                .enumerate()
                .max_by(|(ia, ca), (ib, cb)| ca.cmp(cb).then(ib.cmp(ia)))
                .map(|(i, _)| i as u64)
                .unwrap_or(0)
        }
    };
    let words: Vec<Sequence> = candidates
        .into_iter()
        .filter(|pt| pt.coordinate_sum() == chosen_a)
        .map(|pt| from_simplex(&pt, n).expect("bound matches"))
        .collect();
    if words.is_empty() {
        return Err(Error::Infeasible(format!(
            "no codeword has coordinate sum a={chosen_a} for n={n}, W={w}"
        )));
    }
    let binary = Code::new(
        words,
        n,
        1,
        spec.with_p(1)?,
        CodeKind::Detection,
        format!("{tag}(a={chosen_a})"),
    )?;
    if spec.p() > 1 {
        lift_to_pary(&binary, spec.p())
    } else {
        Ok(binary)
    }
}

/// Per-coordinate lattice decoding in simplex coordinates:
/// `x_i = floor(z_i / (K+1)) * (K+1)`.
pub fn decode_shift_point(z: &SimplexPoint, k: u32) -> Result<SimplexPoint> {
    let step = k + 1;
    if z.bound() < k {
        return Err(Error::InconsistentOutput(format!(
            "output bound {} smaller than shift window {k}",
            z.bound()
        )));
    }
    let bound = z.bound() - k;
    let coords: Vec<u32> = z.coords().iter().map(|&c| (c / step) * step).collect();
    if coords.last().is_some_and(|&c| c > bound) {
        return Err(Error::InconsistentOutput(format!(
            "decoded point {coords:?} leaves the length-{} simplex",
            bound
        )));
    }
    SimplexPoint::new(coords, bound)
}

/// Decodes a shift-channel output word onto the `K`-lattice code.  The word
/// is read in its materialized form (length `n + K`); particle types pass
/// through unchanged.
pub fn decode_shift(z: &Sequence, k: u32) -> Result<Sequence> {
    if z.len() < k as usize {
        return Err(Error::InconsistentOutput(format!(
            "output of length {} cannot come from window K={k}",
            z.len()
        )));
    }
    let d = decompose(z);
    let pt = to_simplex(&d.indicator)?;
    let decoded = decode_shift_point(&pt, k)?;
    let indicator = from_simplex(&decoded, z.len() - k as usize)?;
    compose(&Decomposition {
        indicator,
        types: d.types,
    })
}

/// Decodes a queue output produced by a codeword of
/// [`construct_queue_code`]: strip the `(i-1)K` spacing offset, round down to
/// the `K`-lattice, and re-add the offset.
pub fn decode_queue(z: &Sequence, n: usize, w: usize, k: u32) -> Result<Sequence> {
    let d = decompose(z);
    if d.types.len() != w {
        return Err(Error::InconsistentOutput(format!(
            "output has weight {}, code has weight {w}",
            d.types.len()
        )));
    }
    if z.len() < n {
        return Err(Error::InconsistentOutput(format!(
            "output of length {} shorter than code length {n}",
            z.len()
        )));
    }
    if w == 0 {
        if z.len() != n {
            return Err(Error::InconsistentOutput(
                "empty input cannot produce a longer output".into(),
            ));
        }
        return Ok(Sequence::zeros(n));
    }
    let positions = z.particle_positions();
    if z.len() != n.max(*positions.last().expect("w > 0")) {
        return Err(Error::InconsistentOutput(
            "output length inconsistent with last departure".into(),
        ));
    }
    let step = (k + 1) as i64;
    let mut coords = Vec::with_capacity(w);
    for (i, &pos) in positions.iter().enumerate() {
        let zi = pos as i64 - (i as i64 + 1);
        let reduced = zi - i as i64 * k as i64;
        if reduced < 0 {
            return Err(Error::InconsistentOutput(format!(
                "packet {} arrived before any spaced codeword allows",
                i + 1
            )));
        }
        let lattice = (reduced / step) * step;
        let xi = lattice + i as i64 * k as i64;
        if xi > (n - w) as i64 {
            return Err(Error::InconsistentOutput(format!(
                "packet {} decoded outside the length-{n} register",
                i + 1
            )));
        }
        coords.push(xi as u32);
    }
    let pt = SimplexPoint::new(coords, (n - w) as u32).map_err(|_| {
        Error::InconsistentOutput("decoded departure order is not realizable".into())
    })?;
    let indicator = from_simplex(&pt, n)?;
    compose(&Decomposition {
        indicator,
        types: d.types,
    })
}

/// Decodes an output of the dense queue codebook: FIFO preserves packet
/// order, so the codeword is the particle subsequence itself.
pub fn decode_dense(z: &Sequence, n: usize) -> Result<Sequence> {
    let types = z.particle_types();
    if types.len() != n {
        return Err(Error::InconsistentOutput(format!(
            "expected {n} packets, received {}",
            types.len()
        )));
    }
    Ok(Sequence::from_symbols(types))
}

/// Receiver verdict of [`detect`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DetectVerdict {
    Clean,
    ErrorDetected,
}

/// Error-detection receiver rule for a detection code.
///
/// Shift channel: the receiver reads the original register window (cells
/// `1..n`); anything outside it, or a window content that is not a codeword,
/// flags an error.  Queue: the receiver stops after slot `n` and accepts only
/// if the first `n` slots spell a codeword.
pub fn detect(code: &Code, z: &Sequence) -> Result<DetectVerdict> {
    match code.channel() {
        ChannelSpec::Shift(s) => {
            if !(s.k1() <= 0 && s.k2() >= 0) {
                return Err(Error::InvalidParameter(
                    "detection requires K1 <= 0 <= K2".into(),
                ));
            }
            let expected = code.n() + s.width() as usize;
            if z.len() != expected {
                return Err(Error::LengthMismatch {
                    expected,
                    actual: z.len(),
                });
            }
            let left = (-s.k1()) as usize;
            let window = &z.symbols()[left..left + code.n()];
            let boundary_clear = z.symbols()[..left].iter().all(|&s| s == 0)
                && z.symbols()[left + code.n()..].iter().all(|&s| s == 0);
            if boundary_clear && code.contains(&Sequence::from_symbols(window.to_vec())) {
                Ok(DetectVerdict::Clean)
            } else {
                Ok(DetectVerdict::ErrorDetected)
            }
        }
        ChannelSpec::Queue(_) => {
            if z.len() < code.n() {
                return Err(Error::LengthMismatch {
                    expected: code.n(),
                    actual: z.len(),
                });
            }
            let window = Sequence::from_symbols(z.symbols()[..code.n()].to_vec());
            if code.contains(&window) {
                Ok(DetectVerdict::Clean)
            } else {
                Ok(DetectVerdict::ErrorDetected)
            }
        }
        _ => Err(Error::InvalidParameter(
            "detection is defined for discrete channels only".into(),
        )),
    }
}

/// Dispatches to the decoder matching the code's construction; unknown
/// constructions fall back to scanning for the unique codeword whose output
/// set contains `z`.
pub fn decode_for_code(code: &Code, z: &Sequence, sim: &ChannelSpec) -> Result<Sequence> {
    let construction = code
        .construction()
        .strip_prefix("lift:")
        .unwrap_or(code.construction());
    if construction.starts_with("shift-lattice") {
        let width = match sim {
            ChannelSpec::Shift(s) => s.width(),
            _ => {
                return Err(Error::InvalidParameter(
                    "shift-lattice codes decode on shift channels".into(),
                ))
            }
        };
        return decode_shift(z, width);
    }
    if construction.starts_with("queue-lattice") {
        let k = match sim {
            ChannelSpec::Queue(q) => q.k(),
            _ => {
                return Err(Error::InvalidParameter(
                    "queue-lattice codes decode on queue channels".into(),
                ))
            }
        };
        return decode_queue(z, code.n(), z.weight(), k);
    }
    if construction.starts_with("dense") {
        return decode_dense(z, code.n());
    }
    // generic zero-error decoding by membership
    let mut matches = code
        .iter()
        .filter(|x| output_contains(sim, x, z).unwrap_or(false));
    match (matches.next(), matches.next()) {
        (Some(x), None) => Ok(x.clone()),
        (Some(_), Some(_)) => Err(Error::InconsistentOutput(
            "output reachable from several codewords".into(),
        )),
        (None, _) => Err(Error::InconsistentOutput(
            "output reachable from no codeword".into(),
        )),
    }
}
