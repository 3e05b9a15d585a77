//! Independent brute-force certification.
//!
//! Everything here works by exhaustive enumeration of channel output sets
//! and never consults the geometric shortcuts used by the constructions, so
//! it serves as ground truth for them: zero-error verification, exact
//! maximum-code search on the confusability graph, perfect-cover checking,
//! and Monte Carlo estimation of the average output length.
//!
//! Instances are protected by explicit [`Guard`] limits; exceeding a limit
//! is a hard error, never a silent truncation.

use std::time::Instant;

use rand::Rng;
use serde::Serialize;

use crate::channel::{
    confusable, queue_last_departure, queue_outputs, sample_queue, sample_shift, shift_outputs,
    ChannelSpec, OutputSet, QueueSpec, ShiftSpec,
};
use crate::code::{decode_for_code, Code};
use crate::error::{Error, Result};
use crate::seq::{binomial_u128, simplex_points, to_simplex, weight_words, BigCount, Sequence};

/// Enumeration limits for the brute-force operations.
#[derive(Debug, Clone, Copy)]
pub struct Guard {
    /// Maximum number of words a graph / candidate list may hold.
    pub max_vertices: usize,
    /// Maximum size of a single enumerated output set.
    pub max_output_set: usize,
}

impl Default for Guard {
    fn default() -> Self {
        Self {
            max_vertices: 5000,
            max_output_set: 1 << 20,
        }
    }
}

fn output_set_bound(x: &Sequence, fanout: u64) -> u128 {
    (fanout as u128).saturating_pow(x.weight() as u32)
}

fn guarded_outputs(x: &Sequence, spec: &ChannelSpec, guard: &Guard) -> Result<OutputSet> {
    match spec {
        ChannelSpec::Shift(s) => {
            if output_set_bound(x, s.width() as u64 + 1) > guard.max_output_set as u128 {
                return Err(Error::GuardExceeded(format!(
                    "output set of {x} may exceed {} members",
                    guard.max_output_set
                )));
            }
            shift_outputs(x, s)
        }
        ChannelSpec::Queue(q) => {
            if output_set_bound(x, q.k() as u64 + 1) > guard.max_output_set as u128 {
                return Err(Error::GuardExceeded(format!(
                    "output set of {x} may exceed {} members",
                    guard.max_output_set
                )));
            }
            queue_outputs(x, q)
        }
        _ => Err(Error::InvalidParameter(
            "output enumeration is defined for discrete channels only".into(),
        )),
    }
}

/// Result of a verification run, serializable as the JSON verdict record.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub instance: String,
    pub verdict: bool,
    /// Confusable / producible codeword pair refuting the property.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<[String; 2]>,
    /// Simplex point left uncovered by a perfect-cover check.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub uncovered: Option<String>,
    pub elapsed_ms: f64,
}

impl VerifyReport {
    fn new(instance: String, start: Instant) -> Self {
        Self {
            instance,
            verdict: true,
            witness: None,
            uncovered: None,
            elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }
}

/// Checks the zero-error (correction) property by enumerating every
/// codeword's output set and testing pairwise disjointness.
pub fn verify_correction(code: &Code, spec: &ChannelSpec, guard: &Guard) -> Result<VerifyReport> {
    let start = Instant::now();
    if code.len() > guard.max_vertices {
        return Err(Error::GuardExceeded(format!(
            "code has {} words, guard allows {}",
            code.len(),
            guard.max_vertices
        )));
    }
    let words: Vec<&Sequence> = code.iter().collect();
    let outputs: Vec<OutputSet> = words
        .iter()
        .map(|x| guarded_outputs(x, spec, guard))
        .collect::<Result<_>>()?;
    let mut report = VerifyReport::new(
        format!("correction |C|={} n={} channel={}", code.len(), code.n(), spec),
        start,
    );
    'outer: for i in 0..words.len() {
        for j in i + 1..words.len() {
            if outputs[i].intersects(&outputs[j]) {
                report.verdict = false;
                report.witness = Some([words[i].to_string(), words[j].to_string()]);
                break 'outer;
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Embeds a length-`n` codeword into the materialized output index range of
/// a shift channel with `K1 <= 0 <= K2`.
fn embed_in_window(y: &Sequence, s: &ShiftSpec) -> Sequence {
    let mut symbols = vec![0u32; (-s.k1()) as usize];
    symbols.extend_from_slice(y.symbols());
    symbols.extend(std::iter::repeat(0).take(s.k2() as usize));
    Sequence::from_symbols(symbols)
}

/// Checks the zero-error-*detection* property: no codeword may produce
/// another codeword at the channel output.  Requires a channel on which
/// undisturbed transmission is possible (`x ~> x`).
pub fn verify_detection(code: &Code, spec: &ChannelSpec, guard: &Guard) -> Result<VerifyReport> {
    let start = Instant::now();
    if code.len() > guard.max_vertices {
        return Err(Error::GuardExceeded(format!(
            "code has {} words, guard allows {}",
            code.len(),
            guard.max_vertices
        )));
    }
    let embedded: Vec<Sequence> = match spec {
        ChannelSpec::Shift(s) => {
            if !(s.k1() <= 0 && s.k2() >= 0) {
                return Err(Error::InvalidParameter(
                    "detection verification requires K1 <= 0 <= K2".into(),
                ));
            }
            code.iter().map(|y| embed_in_window(y, s)).collect()
        }
        ChannelSpec::Queue(_) => code.iter().cloned().collect(),
        _ => {
            return Err(Error::InvalidParameter(
                "detection verification is defined for discrete channels only".into(),
            ))
        }
    };
    let words: Vec<&Sequence> = code.iter().collect();
    let mut report = VerifyReport::new(
        format!("detection |D|={} n={} channel={}", code.len(), code.n(), spec),
        start,
    );
    'outer: for (i, x) in words.iter().enumerate() {
        let outputs = guarded_outputs(x, spec, guard)?;
        for (j, y) in embedded.iter().enumerate() {
            if i != j && outputs.contains(y) {
                report.verdict = false;
                report.witness = Some([x.to_string(), words[j].to_string()]);
                break 'outer;
            }
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Fixed-capacity bitset over vertex indices.
#[derive(Clone, PartialEq, Eq)]
struct VertexSet {
    words: Vec<u64>,
}

impl VertexSet {
    fn empty(n: usize) -> Self {
        Self {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for i in 0..n {
            s.insert(i);
        }
        s
    }

    fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.words[i / 64] &= !(1 << (i % 64));
    }

    fn contains(&self, i: usize) -> bool {
        self.words[i / 64] & (1 << (i % 64)) != 0
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn first(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    fn subtract(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    fn intersect(&mut self, other: &VertexSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    fn intersection_count(&self, other: &VertexSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + b)
                }
            })
        })
    }
}

/// The confusability graph of a constant-weight input class: vertices are
/// words, edges join distinct confusable pairs.
pub struct ConfusabilityGraph {
    vertices: Vec<Sequence>,
    adjacency: Vec<VertexSet>,
}

impl ConfusabilityGraph {
    /// Builds the graph over the given words, sorted into canonical
    /// (lexicographic) order first.
    pub fn build(vertices: Vec<Sequence>, spec: &ChannelSpec, guard: &Guard) -> Result<Self> {
        let mut vertices = vertices;
        vertices.sort();
        Self::build_in_given_order(vertices, spec, guard)
    }

    pub(crate) fn build_in_given_order(
        vertices: Vec<Sequence>,
        spec: &ChannelSpec,
        guard: &Guard,
    ) -> Result<Self> {
        if vertices.len() > guard.max_vertices {
            return Err(Error::GuardExceeded(format!(
                "{} vertices, guard allows {}",
                vertices.len(),
                guard.max_vertices
            )));
        }
        let n = vertices.len();
        // the queue predicate enumerates output sets; do it once per vertex
        let queue_outputs_cache: Option<Vec<OutputSet>> = match spec {
            ChannelSpec::Queue(_) => Some(
                vertices
                    .iter()
                    .map(|x| guarded_outputs(x, spec, guard))
                    .collect::<Result<_>>()?,
            ),
            _ => None,
        };
        let mut adjacency = vec![VertexSet::empty(n); n];
        for i in 0..n {
            for j in i + 1..n {
                let edge = match &queue_outputs_cache {
                    Some(cache) => cache[i].intersects(&cache[j]),
                    None => confusable(&vertices[i], &vertices[j], spec)?,
                };
                if edge {
                    adjacency[i].insert(j);
                    adjacency[j].insert(i);
                }
            }
        }
        Ok(Self {
            vertices,
            adjacency,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> &[Sequence] {
        &self.vertices
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].contains(j)
    }

    /// Upper bound on the independent set inside `cand`: the size of a
    /// greedy clique cover (each clique contributes at most one vertex).
    fn clique_cover_bound(&self, cand: &VertexSet) -> usize {
        let mut remaining = cand.clone();
        let mut cliques = 0;
        while let Some(v) = remaining.first() {
            cliques += 1;
            remaining.remove(v);
            let mut grow = remaining.clone();
            grow.intersect(&self.adjacency[v]);
            while let Some(u) = grow.first() {
                remaining.remove(u);
                grow.remove(u);
                grow.intersect(&self.adjacency[u]);
            }
        }
        cliques
    }

    fn branch_vertex(&self, cand: &VertexSet) -> usize {
        let mut best = usize::MAX;
        let mut best_deg = 0usize;
        for v in cand.iter() {
            let deg = self.adjacency[v].intersection_count(cand);
            if best == usize::MAX || deg > best_deg {
                best = v;
                best_deg = deg;
            }
        }
        best
    }

    fn mis_recurse(&self, cand: VertexSet, size: usize, best: &mut usize) {
        let remaining = cand.count();
        if remaining == 0 {
            *best = (*best).max(size);
            return;
        }
        if size + remaining <= *best {
            return;
        }
        if size + self.clique_cover_bound(&cand) <= *best {
            return;
        }
        let v = self.branch_vertex(&cand);
        // include v
        let mut include = cand.clone();
        include.remove(v);
        include.subtract(&self.adjacency[v]);
        self.mis_recurse(include, size + 1, best);
        // exclude v
        let mut exclude = cand;
        exclude.remove(v);
        self.mis_recurse(exclude, size, best);
    }

    /// Exact maximum independent set size, by branch and bound with a
    /// greedy clique-cover bound.
    pub fn max_independent_set_size(&self) -> usize {
        let mut best = 0;
        self.mis_recurse(VertexSet::full(self.vertices.len()), 0, &mut best);
        best
    }
}

/// Exact size of an optimal zero-error code among the weight-`w` words of
/// length `n`, by maximum independent set on the confusability graph.
pub fn max_code_size(n: usize, w: usize, spec: &ChannelSpec, guard: &Guard) -> Result<BigCount> {
    let p = spec.p();
    let count = binomial_u128(n as u64, w as u64)
        .saturating_mul((p as u128).saturating_pow(w as u32));
    if count > guard.max_vertices as u128 {
        return Err(Error::GuardExceeded(format!(
            "{count} weight-{w} words, guard allows {}",
            guard.max_vertices
        )));
    }
    let graph = ConfusabilityGraph::build(weight_words(n, w, p), spec, guard)?;
    Ok(BigCount::from(graph.max_independent_set_size()))
}

/// Checks that the output cubes of a binary constant-weight shift code
/// cover its entire input simplex (the "perfect code" property that forces
/// optimality).
pub fn perfect_cover_check(code: &Code, spec: &ShiftSpec, guard: &Guard) -> Result<VerifyReport> {
    let start = Instant::now();
    let w = code
        .uniform_weight()
        .ok_or_else(|| Error::InvalidParameter("perfect cover requires constant weight".into()))?;
    if !code.iter().all(|x| x.is_binary()) {
        return Err(Error::NotBinary);
    }
    let n = code.n();
    if binomial_u128(n as u64, w as u64) > guard.max_vertices as u128 {
        return Err(Error::GuardExceeded(format!(
            "simplex has {} points, guard allows {}",
            binomial_u128(n as u64, w as u64),
            guard.max_vertices
        )));
    }
    let width = spec.width() as i64;
    let codeword_coords: Vec<Vec<u32>> = code
        .iter()
        .map(|x| Ok(to_simplex(x)?.coords().to_vec()))
        .collect::<Result<_>>()?;
    let mut report = VerifyReport::new(
        format!("perfect-cover |C|={} n={n} W={w} K={width}", code.len()),
        start,
    );
    for z in simplex_points(w, (n - w) as u32) {
        let covered = codeword_coords.iter().any(|x| {
            x.iter()
                .zip(z.coords())
                .all(|(&xi, &zi)| zi as i64 >= xi as i64 && zi as i64 - (xi as i64) <= width)
        });
        if !covered {
            report.verdict = false;
            report.uncovered = Some(z.to_string());
            break;
        }
    }
    report.elapsed_ms = start.elapsed().as_secs_f64() * 1e3;
    Ok(report)
}

/// Monte Carlo estimate of the average output length.
#[derive(Debug, Clone, Serialize)]
pub struct LavEstimate {
    pub mean: f64,
    pub std_err: f64,
    pub trials: u64,
}

/// Estimates `L_av` for a queue code: the expected output length over a
/// uniformly chosen codeword and the channel's processing randomness.
pub fn estimate_lav<R: Rng + ?Sized>(
    code: &Code,
    spec: &QueueSpec,
    trials: u64,
    rng: &mut R,
) -> Result<LavEstimate> {
    if trials < 1 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if code.p() > spec.p() {
        return Err(Error::InvalidParameter(format!(
            "code alphabet P={} exceeds channel P={}",
            code.p(),
            spec.p()
        )));
    }
    let n = code.n();
    let positions: Vec<Vec<usize>> = code.iter().map(|x| x.particle_positions()).collect();
    let dist = spec.kappa_dist();
    let mut sum = 0u64;
    let mut sum_sq = 0u128;
    for _ in 0..trials {
        let idx = rng.random_range(0..positions.len());
        let last = queue_last_departure(&positions[idx], &dist, rng);
        let len = n.max(last) as u64;
        sum += len;
        sum_sq += (len as u128) * (len as u128);
    }
    let mean = sum as f64 / trials as f64;
    let std_err = if trials > 1 {
        let var = (sum_sq as f64 - trials as f64 * mean * mean) / (trials - 1) as f64;
        (var.max(0.0) / trials as f64).sqrt()
    } else {
        f64::NAN
    };
    Ok(LavEstimate {
        mean,
        std_err,
        trials,
    })
}

/// Transmit-sample-decode statistics from [`simulate`].
#[derive(Debug, Clone, Serialize)]
pub struct SimStats {
    pub trials: u64,
    pub successes: u64,
    pub success_rate: f64,
    pub l_av: f64,
    pub l_av_std_err: f64,
    /// `log2 |C| / L_av`, the operational rate of the code.
    pub empirical_rate: f64,
}

/// End-to-end transmission loop: draw a codeword uniformly, push it through
/// the channel, decode, compare.  For a zero-error code the success rate is
/// exactly 1.
pub fn simulate<R: Rng + ?Sized>(
    code: &Code,
    spec: &ChannelSpec,
    trials: u64,
    rng: &mut R,
) -> Result<SimStats> {
    if trials < 1 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    let words: Vec<&Sequence> = code.iter().collect();
    let mut successes = 0u64;
    let mut len_sum = 0u64;
    let mut len_sum_sq = 0u128;
    for _ in 0..trials {
        let x = words[rng.random_range(0..words.len())];
        let z = match spec {
            ChannelSpec::Shift(s) => sample_shift(x, s, rng)?,
            ChannelSpec::Queue(q) => sample_queue(x, q, rng)?,
            _ => {
                return Err(Error::InvalidParameter(
                    "simulation is defined for discrete channels only".into(),
                ))
            }
        };
        let len = z.len() as u64;
        len_sum += len;
        len_sum_sq += (len as u128) * (len as u128);
        if decode_for_code(code, &z, spec).is_ok_and(|d| &d == x) {
            successes += 1;
        }
    }
    let l_av = len_sum as f64 / trials as f64;
    let l_av_std_err = if trials > 1 {
        let var = (len_sum_sq as f64 - trials as f64 * l_av * l_av) / (trials - 1) as f64;
        (var.max(0.0) / trials as f64).sqrt()
    } else {
        f64::NAN
    };
    Ok(SimStats {
        trials,
        successes,
        success_rate: successes as f64 / trials as f64,
        l_av,
        l_av_std_err,
        empirical_rate: (code.len() as f64).log2() / l_av,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{
        construct_queue_code, construct_shift_cw_code, shift_cw_code_count, Code, CodeKind,
    };
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    use rand_chacha::ChaCha12Rng;

    fn seq(s: &str) -> Sequence {
        Sequence::parse(s, 9).unwrap()
    }

    fn shift_chan(k1: i64, k2: i64) -> ChannelSpec {
        ChannelSpec::Shift(ShiftSpec::new(1, k1, k2).unwrap())
    }

    #[test]
    fn verify_correction_examples() {
        let guard = Guard::default();
        let code = construct_shift_cw_code(9, 2, 1).unwrap();
        let report = verify_correction(&code, &shift_chan(0, 1), &guard).unwrap();
        assert!(report.verdict);
        assert!(report.witness.is_none());

        // adjacent lattice points share output (1,1)
        let bad = Code::new(
            vec![seq("110000"), seq("010100")],
            6,
            1,
            shift_chan(0, 1),
            CodeKind::Correction,
            "fixture",
        )
        .unwrap();
        let report = verify_correction(&bad, &shift_chan(0, 1), &guard).unwrap();
        assert!(!report.verdict);
        assert_eq!(
            report.witness,
            Some(["010100".to_string(), "110000".to_string()])
        );

        // singletons are always zero-error
        let single = Code::new(
            vec![seq("00000")],
            5,
            1,
            shift_chan(0, 3),
            CodeKind::Correction,
            "fixture",
        )
        .unwrap();
        assert!(verify_correction(&single, &shift_chan(0, 3), &guard)
            .unwrap()
            .verdict);

        // the same code refutes on a wider window
        let report = verify_correction(&code, &shift_chan(0, 2), &guard).unwrap();
        assert!(!report.verdict);
    }

    #[test]
    fn verify_detection_examples() {
        let guard = Guard::default();
        let words = vec![seq("10000"), seq("00100")];
        let code = Code::new(
            words.clone(),
            5,
            1,
            shift_chan(-1, 1),
            CodeKind::Detection,
            "fixture",
        )
        .unwrap();
        assert!(verify_detection(&code, &shift_chan(-1, 1), &guard)
            .unwrap()
            .verdict);

        let code = Code::new(
            words,
            5,
            1,
            shift_chan(0, 2),
            CodeKind::Detection,
            "fixture",
        )
        .unwrap();
        let report = verify_detection(&code, &shift_chan(0, 2), &guard).unwrap();
        assert!(!report.verdict);
        assert_eq!(
            report.witness,
            Some(["10000".to_string(), "00100".to_string()])
        );

        // precondition: x ~> x must be possible
        assert!(verify_detection(&code, &shift_chan(1, 2), &guard).is_err());

        let single = Code::new(
            vec![seq("010")],
            3,
            1,
            shift_chan(-1, 1),
            CodeKind::Detection,
            "fixture",
        )
        .unwrap();
        assert!(verify_detection(&single, &shift_chan(-1, 1), &guard)
            .unwrap()
            .verdict);
    }

    #[test]
    fn max_code_size_examples() {
        let guard = Guard::default();
        assert_eq!(
            max_code_size(9, 2, &shift_chan(0, 1), &guard).unwrap(),
            BigCount::from(10u32)
        );

        // noiseless channel: the graph has no edges
        for (n, w) in [(6usize, 2usize), (7, 3)] {
            assert_eq!(
                max_code_size(n, w, &shift_chan(0, 0), &guard).unwrap(),
                shift_cw_code_count(n, w, 0, 1)
            );
        }

        let queue = ChannelSpec::Queue(QueueSpec::uniform(1, 1));
        assert_eq!(
            max_code_size(7, 2, &queue, &guard).unwrap(),
            BigCount::from(6u32)
        );

        // P-ary: the types multiply the binary optimum
        let shift_p2 = ChannelSpec::Shift(ShiftSpec::new(2, 0, 1).unwrap());
        assert_eq!(
            max_code_size(4, 1, &shift_p2, &guard).unwrap(),
            BigCount::from(4u32)
        );

        // nonincreasing in K
        let mut prev = u32::MAX;
        for k in 0..=4 {
            let m: u32 = max_code_size(8, 3, &shift_chan(0, k), &guard)
                .unwrap()
                .try_into()
                .unwrap();
            assert!(m <= prev);
            prev = m;
        }
    }

    #[test]
    fn max_code_size_guard() {
        let tiny = Guard {
            max_vertices: 10,
            ..Guard::default()
        };
        assert!(matches!(
            max_code_size(9, 2, &shift_chan(0, 1), &tiny),
            Err(Error::GuardExceeded(_))
        ));
    }

    #[test]
    fn mis_independent_of_vertex_order() {
        let spec = ChannelSpec::Queue(QueueSpec::uniform(1, 2));
        let mut words = weight_words(10, 2, 1);
        let guard = Guard::default();
        let canonical = ConfusabilityGraph::build(words.clone(), &spec, &guard)
            .unwrap()
            .max_independent_set_size();
        let mut rng = ChaCha12Rng::seed_from_u64(11);
        for _ in 0..5 {
            words.shuffle(&mut rng);
            let shuffled =
                ConfusabilityGraph::build_in_given_order(words.clone(), &spec, &guard)
                    .unwrap()
                    .max_independent_set_size();
            assert_eq!(shuffled, canonical);
        }
        assert_eq!(canonical, 6);
    }

    #[test]
    fn perfect_cover_examples() {
        let guard = Guard::default();
        let spec = ShiftSpec::new(1, 0, 1).unwrap();
        let code = construct_shift_cw_code(9, 2, 1).unwrap();
        assert!(perfect_cover_check(&code, &spec, &guard).unwrap().verdict);

        // removing any codeword leaves its corner uncovered
        let mut words: Vec<Sequence> = code.iter().cloned().collect();
        words.pop();
        let partial = Code::new(
            words,
            9,
            1,
            shift_chan(0, 1),
            CodeKind::Correction,
            "fixture",
        )
        .unwrap();
        let report = perfect_cover_check(&partial, &spec, &guard).unwrap();
        assert!(!report.verdict);
        assert!(report.uncovered.is_some());

        // one cube can cover the whole simplex
        let single = Code::new(
            vec![seq("11000")],
            5,
            1,
            shift_chan(0, 3),
            CodeKind::Correction,
            "fixture",
        )
        .unwrap();
        let wide = ShiftSpec::new(1, 0, 3).unwrap();
        assert!(perfect_cover_check(&single, &wide, &guard).unwrap().verdict);
    }

    #[test]
    fn estimate_lav_degenerate_and_spaced() {
        let mut rng = ChaCha12Rng::seed_from_u64(5);
        let spec = QueueSpec::uniform(1, 2);

        // no packets: the output length is exactly n
        let zero = Code::new(
            vec![seq("000000")],
            6,
            1,
            ChannelSpec::Queue(spec.clone()),
            CodeKind::Correction,
            "fixture",
        )
        .unwrap();
        let est = estimate_lav(&zero, &spec, 1000, &mut rng).unwrap();
        assert_eq!(est.mean, 6.0);
        assert_eq!(est.std_err, 0.0);

        // spaced codewords never stretch beyond n + K
        let code = construct_queue_code(10, 2, 2).unwrap();
        let est = estimate_lav(&code, &spec, 20_000, &mut rng).unwrap();
        assert!(est.mean <= 12.0 + 1e-9);
        assert!(est.mean >= 10.0);
    }

    #[test]
    fn simulate_lattice_codes() {
        let mut rng = ChaCha12Rng::seed_from_u64(6);
        let code = construct_shift_cw_code(9, 2, 1).unwrap();
        let spec = shift_chan(0, 1);
        let stats = simulate(&code, &spec, 3000, &mut rng).unwrap();
        assert_eq!(stats.success_rate, 1.0);
        assert_eq!(stats.l_av, 10.0); // shift outputs always have length n + K

        let code = construct_queue_code(10, 2, 2).unwrap();
        let spec = ChannelSpec::Queue(QueueSpec::uniform(1, 2));
        let stats = simulate(&code, &spec, 3000, &mut rng).unwrap();
        assert_eq!(stats.success_rate, 1.0);
        assert!(stats.empirical_rate > 0.0);
    }

    #[test]
    fn verify_uses_enumeration_consistent_with_fast_path() {
        // the graph built from the confusable predicate and the one implied
        // by brute-force verification agree pair by pair
        let guard = Guard::default();
        let spec = shift_chan(-1, 1);
        let words = weight_words(6, 2, 1);
        for i in 0..words.len() {
            for j in i + 1..words.len() {
                let pair = Code::new(
                    vec![words[i].clone(), words[j].clone()],
                    6,
                    1,
                    spec.clone(),
                    CodeKind::Correction,
                    "fixture",
                )
                .unwrap();
                let enumerated = verify_correction(&pair, &spec, &guard).unwrap().verdict;
                let fast = !confusable(&words[i], &words[j], &spec).unwrap();
                assert_eq!(enumerated, fast);
            }
        }
    }
}
