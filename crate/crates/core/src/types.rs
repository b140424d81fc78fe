//! Counts, alignments and exact rates shared by the metric modules.

use std::fmt;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

/// Insertion, substitution, deletion and match counts of one comparison.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EditCounts {
    pub ins: usize,
    pub sub: usize,
    pub del: usize,
    pub correct: usize,
}

impl EditCounts {
    pub fn new(ins: usize, sub: usize, del: usize, correct: usize) -> Self {
        EditCounts {
            ins,
            sub,
            del,
            correct,
        }
    }

    /// `ins + sub + del`.
    pub fn errors(&self) -> usize {
        self.ins + self.sub + self.del
    }

    /// Length of the reference side: `correct + sub + del`.
    pub fn ref_len(&self) -> usize {
        self.correct + self.sub + self.del
    }

    /// Length of the hypothesis side: `correct + sub + ins`.
    pub fn hyp_len(&self) -> usize {
        self.correct + self.sub + self.ins
    }
}

impl Add for EditCounts {
    type Output = EditCounts;

    fn add(self, rhs: Self) -> Self {
        EditCounts {
            ins: self.ins + rhs.ins,
            sub: self.sub + rhs.sub,
            del: self.del + rhs.del,
            correct: self.correct + rhs.correct,
        }
    }
}

impl AddAssign for EditCounts {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl std::iter::Sum for EditCounts {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(EditCounts::default(), Add::add)
    }
}

/// One link of a trace or alignment. Indices are 0-based positions in the
/// reference and hypothesis word sequences; a missing side stands for the
/// empty word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AlignPair {
    /// Reference word `ref_idx` paired with hypothesis word `hyp_idx`.
    Aligned { ref_idx: usize, hyp_idx: usize },
    /// Reference word with no counterpart.
    Deletion { ref_idx: usize },
    /// Hypothesis word with no counterpart.
    Insertion { hyp_idx: usize },
}

impl AlignPair {
    pub fn ref_idx(&self) -> Option<usize> {
        match *self {
            AlignPair::Aligned { ref_idx, .. } | AlignPair::Deletion { ref_idx } => Some(ref_idx),
            AlignPair::Insertion { .. } => None,
        }
    }

    pub fn hyp_idx(&self) -> Option<usize> {
        match *self {
            AlignPair::Aligned { hyp_idx, .. } | AlignPair::Insertion { hyp_idx } => Some(hyp_idx),
            AlignPair::Deletion { .. } => None,
        }
    }

    pub fn is_dummy(&self) -> bool {
        !matches!(self, AlignPair::Aligned { .. })
    }
}

impl fmt::Display for AlignPair {
    /// Renders 1-based indices with `ε` for the empty word.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AlignPair::Aligned { ref_idx, hyp_idx } => write!(f, "({},{})", ref_idx + 1, hyp_idx + 1),
            AlignPair::Deletion { ref_idx } => write!(f, "({},ε)", ref_idx + 1),
            AlignPair::Insertion { hyp_idx } => write!(f, "(ε,{})", hyp_idx + 1),
        }
    }
}

/// Order-preserving alignment produced by the edit distance backtrace.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub pairs: Vec<AlignPair>,
}

impl Trace {
    /// Whether non-dummy pairs are strictly increasing on both sides.
    pub fn is_sequential(&self) -> bool {
        let aligned: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .filter_map(|p| match *p {
                AlignPair::Aligned { ref_idx, hyp_idx } => Some((ref_idx, hyp_idx)),
                _ => None,
            })
            .collect();
        aligned
            .windows(2)
            .all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
    }
}

/// Unordered word pairing: every reference and hypothesis position appears
/// exactly once, with no ordering constraint between pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Alignment {
    pub pairs: Vec<AlignPair>,
}

impl Alignment {
    pub fn new(pairs: Vec<AlignPair>) -> Self {
        Alignment { pairs }
    }

    /// Number of dummy (insertion or deletion) pairs.
    pub fn dummy_pairs(&self) -> usize {
        self.pairs.iter().filter(|p| p.is_dummy()).count()
    }

    /// Checks that positions `0..len_ref` and `0..len_hyp` each occur exactly once.
    pub fn covers(&self, len_ref: usize, len_hyp: usize) -> Result<(), String> {
        let mut seen_ref = vec![false; len_ref];
        let mut seen_hyp = vec![false; len_hyp];
        for p in &self.pairs {
            if let Some(j) = p.ref_idx() {
                match seen_ref.get_mut(j) {
                    None => return Err(format!("reference index {j} out of range {len_ref}")),
                    Some(true) => return Err(format!("reference index {j} paired twice")),
                    Some(s) => *s = true,
                }
            }
            if let Some(k) = p.hyp_idx() {
                match seen_hyp.get_mut(k) {
                    None => return Err(format!("hypothesis index {k} out of range {len_hyp}")),
                    Some(true) => return Err(format!("hypothesis index {k} paired twice")),
                    Some(s) => *s = true,
                }
            }
        }
        if let Some(j) = seen_ref.iter().position(|s| !s) {
            return Err(format!("reference index {j} not paired"));
        }
        if let Some(k) = seen_hyp.iter().position(|s| !s) {
            return Err(format!("hypothesis index {k} not paired"));
        }
        Ok(())
    }
}

impl From<Trace> for Alignment {
    fn from(t: Trace) -> Self {
        Alignment { pairs: t.pairs }
    }
}

impl fmt::Display for Alignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// An exact non-negative ratio `num / den`; rates are kept as integer
/// ratios so values can be compared before any rounding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Rate {
    pub num: u64,
    pub den: u64,
}

impl Rate {
    pub const ZERO: Rate = Rate { num: 0, den: 1 };

    /// # Panics
    /// If `den == 0`.
    pub fn new(num: u64, den: u64) -> Self {
        assert!(den > 0, "rate with zero denominator");
        Rate { num, den }
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn percent(&self) -> f64 {
        100.0 * self.value()
    }

    /// Equality of the represented rational numbers, `1/2 == 2/4`.
    pub fn same_ratio(&self, other: &Rate) -> bool {
        self.num as u128 * other.den as u128 == other.num as u128 * self.den as u128
    }

    /// Value rounded to `decimals` places in percent, as printed in tables.
    pub fn rounded_percent(&self, decimals: i32) -> f64 {
        let scale = 10f64.powi(decimals);
        (self.percent() * scale).round() / scale
    }
}

impl PartialOrd for Rate {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        let lhs = self.num as u128 * other.den as u128;
        let rhs = other.num as u128 * self.den as u128;
        Some(lhs.cmp(&rhs))
    }
}

impl fmt::Display for Rate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{} ({:.1}%)", self.num, self.den, self.percent())
    }
}
