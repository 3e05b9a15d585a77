//! Channel input/output words and their geometric representations.
//!
//! A word of length `n` over the alphabet `{0, 1, ..., P}` describes the state
//! of an `n`-cell register (or an `n`-slot packet stream): symbol `0` is an
//! empty cell, a nonzero symbol is a particle (packet) of that type.  Three
//! equivalent views are used throughout the crate:
//!
//! * word form ([`Sequence`]): the raw symbol vector;
//! * simplex form ([`SimplexPoint`]): a constant-weight *binary* word of
//!   length `n` and weight `W` as the nondecreasing tuple
//!   `0 <= s_1 <= ... <= s_W <= n - W` obtained by listing the 1-positions
//!   (1-indexed) and subtracting `(1, ..., W)`;
//! * the ([`Decomposition`]) into a binary indicator word plus the ordered
//!   list of particle types.
//!
//! All conversions are exact bijections on their stated domains.

use std::fmt;

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative counter for code cardinalities.
pub type BigCount = num_bigint::BigUint;

/// Exact binomial coefficient as a [`BigCount`].
pub fn binomial(n: u64, k: u64) -> BigCount {
    use num_traits::{One, Zero};
    if k > n {
        return BigCount::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigCount::one();
    for i in 1..=k {
        acc *= BigCount::from(n - k + i);
        acc /= BigCount::from(i);
    }
    acc
}

/// Binomial coefficient clamped into `u128`, for enumeration guards.
pub(crate) fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=k {
        acc = acc.saturating_mul((n - k + i) as u128) / i as u128;
    }
    acc
}

/// A word over the alphabet `{0, ..., P}`; the channel input/output object.
///
/// The alphabet bound is contextual: constructors that receive `P` validate
/// against it, and channel operations re-check on entry.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence {
    symbols: Vec<u32>,
}

impl Sequence {
    /// Builds a word and checks every symbol against the alphabet bound `p`.
    pub fn new(symbols: Vec<u32>, p: u32) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidParameter(format!("P must be >= 1, got {p}")));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s > p) {
            return Err(Error::InvalidParameter(format!(
                "symbol {s} exceeds alphabet bound P={p}"
            )));
        }
        Ok(Self { symbols })
    }

    /// Builds a word from raw symbols without an alphabet check.
    pub fn from_symbols(symbols: Vec<u32>) -> Self {
        Self { symbols }
    }

    /// The all-zero word of length `n`.
    pub fn zeros(n: usize) -> Self {
        Self {
            symbols: vec![0; n],
        }
    }

    /// Parses a digit string such as `"010001"`. Requires `p <= 9`.
    pub fn parse(s: &str, p: u32) -> Result<Self> {
        if p > 9 {
            return Err(Error::InvalidParameter(
                "digit-string format supports P <= 9".into(),
            ));
        }
        let mut symbols = Vec::with_capacity(s.len());
        for c in s.chars() {
            let d = c
                .to_digit(10)
                .ok_or_else(|| Error::Parse(format!("invalid digit '{c}' in sequence")))?;
            symbols.push(d);
        }
        Self::new(symbols, p)
    }

    pub fn symbols(&self) -> &[u32] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Hamming weight: the number of nonzero symbols.
    pub fn weight(&self) -> usize {
        self.symbols.iter().filter(|&&s| s != 0).count()
    }

    pub fn is_binary(&self) -> bool {
        self.symbols.iter().all(|&s| s <= 1)
    }

    pub fn max_symbol(&self) -> u32 {
        self.symbols.iter().copied().max().unwrap_or(0)
    }

    /// 1-indexed positions of the nonzero symbols, in order.
    pub fn particle_positions(&self) -> Vec<usize> {
        self.symbols
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// The ordered nonzero symbols (the particle subsequence).
    pub fn particle_types(&self) -> Vec<u32> {
        self.symbols.iter().copied().filter(|&s| s != 0).collect()
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.max_symbol() <= 9 {
            for &s in &self.symbols {
                write!(f, "{s}")?;
            }
            Ok(())
        } else {
            // Symbols above 9 have no digit-string form; fall back to a list.
            write!(f, "[")?;
            for (i, &s) in self.symbols.iter().enumerate() {
                if i > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{s}")?;
            }
            write!(f, "]")
        }
    }
}

/// A point of the integer simplex `0 <= s_1 <= ... <= s_W <= bound`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SimplexPoint {
    coords: Vec<u32>,
    bound: u32,
}

impl SimplexPoint {
    pub fn new(coords: Vec<u32>, bound: u32) -> Result<Self> {
        for pair in coords.windows(2) {
            if pair[0] > pair[1] {
                return Err(Error::InvalidParameter(format!(
                    "simplex coordinates must be nondecreasing: {coords:?}"
                )));
            }
        }
        if let Some(&last) = coords.last() {
            if last > bound {
                return Err(Error::InvalidParameter(format!(
                    "coordinate {last} exceeds simplex bound {bound}"
                )));
            }
        }
        Ok(Self { coords, bound })
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    /// The weight `W` of the represented word.
    pub fn weight(&self) -> usize {
        self.coords.len()
    }

    pub fn coordinate_sum(&self) -> u64 {
        self.coords.iter().map(|&c| c as u64).sum()
    }
}

impl fmt::Display for SimplexPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, &c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// A word split into its binary indicator and its particle-type subsequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    /// Binary word marking the nonzero positions.
    pub indicator: Sequence,
    /// Nonzero symbols in order; its length equals the indicator weight.
    pub types: Vec<u32>,
}

/// Maps a binary word of weight `W` to its simplex point: 1-indexed one
/// positions minus `(1, ..., W)`, with bound `n - W`.
///
/// The weight-0 word maps to the empty tuple with bound `n`.
pub fn to_simplex(x: &Sequence) -> Result<SimplexPoint> {
    if !x.is_binary() {
        return Err(Error::NotBinary);
    }
    let positions = x.particle_positions();
    let w = positions.len();
    let coords: Vec<u32> = positions
        .iter()
        .enumerate()
        .map(|(i, &pos)| (pos - (i + 1)) as u32)
        .collect();
    SimplexPoint::new(coords, (x.len() - w) as u32)
}

/// Inverse of [`to_simplex`]: rebuilds the binary word of length `n`.
pub fn from_simplex(p: &SimplexPoint, n: usize) -> Result<Sequence> {
    let w = p.weight();
    let required = n as i64 - w as i64;
    if required < 0 || p.bound() as i64 != required {
        return Err(Error::BoundMismatch {
            bound: p.bound(),
            n,
            w,
            required,
        });
    }
    let mut symbols = vec![0u32; n];
    for (i, &c) in p.coords().iter().enumerate() {
        symbols[c as usize + i] = 1;
    }
    Ok(Sequence::from_symbols(symbols))
}

/// Splits a word into indicator and particle-type subsequence.
pub fn decompose(x: &Sequence) -> Decomposition {
    let indicator = Sequence::from_symbols(
        x.symbols()
            .iter()
            .map(|&s| if s != 0 { 1 } else { 0 })
            .collect(),
    );
    Decomposition {
        indicator,
        types: x.particle_types(),
    }
}

/// Inverse of [`decompose`]: fills the indicator's one-slots with the types.
pub fn compose(d: &Decomposition) -> Result<Sequence> {
    let weight = d.indicator.weight();
    if weight != d.types.len() {
        return Err(Error::WeightMismatch {
            weight,
            types: d.types.len(),
        });
    }
    if !d.indicator.is_binary() {
        return Err(Error::NotBinary);
    }
    let mut symbols = d.indicator.symbols().to_vec();
    let mut next = d.types.iter();
    for s in symbols.iter_mut() {
        if *s != 0 {
            *s = *next.next().expect("weight checked above");
        }
    }
    Ok(Sequence::from_symbols(symbols))
}

/// Enumerates the full simplex `0 <= s_1 <= ... <= s_w <= bound` in
/// lexicographic order. The result has `C(bound + w, w)` points.
pub fn simplex_points(w: usize, bound: u32) -> Vec<SimplexPoint> {
    let mut out = Vec::new();
    let mut coords = vec![0u32; w];
    fn rec(coords: &mut Vec<u32>, level: usize, low: u32, bound: u32, out: &mut Vec<SimplexPoint>) {
        if level == coords.len() {
            out.push(SimplexPoint {
                coords: coords.clone(),
                bound,
            });
            return;
        }
        for c in low..=bound {
            coords[level] = c;
            rec(coords, level + 1, c, bound, out);
        }
    }
    if w == 0 {
        out.push(SimplexPoint {
            coords: Vec::new(),
            bound,
        });
    } else {
        rec(&mut coords, 0, 0, bound, &mut out);
    }
    out
}

/// Enumerates all weight-`w` words of length `n` over `{0, ..., p}`,
/// sorted lexicographically.
pub fn weight_words(n: usize, w: usize, p: u32) -> Vec<Sequence> {
    let mut out = Vec::new();
    if w > n {
        return out;
    }
    for point in simplex_points(w, (n - w) as u32) {
        let indicator = from_simplex(&point, n).expect("bound matches by construction");
        let mut types = vec![1u32; w];
        loop {
            out.push(
                compose(&Decomposition {
                    indicator: indicator.clone(),
                    types: types.clone(),
                })
                .expect("weight matches"),
            );
            // odometer over {1..P}^w
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
    out.sort();
    out
}
