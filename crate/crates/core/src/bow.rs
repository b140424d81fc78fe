//! Bag-of-words distance and the order-independent error rates built on it.
//!
//! Word identity is exact string equality; computation is linear in the
//! number of words.

use std::collections::HashMap;

use crate::error::{EvalError, Result};
use crate::types::{EditCounts, Rate};

/// Multiset of words with their occurrence counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct WordBag<'a> {
    counts: HashMap<&'a str, usize>,
    total: usize,
}

impl<'a> WordBag<'a> {
    pub fn from_words<S: AsRef<str>>(words: &'a [S]) -> Self {
        let mut counts = HashMap::with_capacity(words.len());
        for w in words {
            *counts.entry(w.as_ref()).or_insert(0) += 1;
        }
        WordBag {
            counts,
            total: words.len(),
        }
    }

    pub fn count(&self, word: &str) -> usize {
        self.counts.get(word).copied().unwrap_or(0)
    }

    /// Number of word instances the bag was built from.
    pub fn total(&self) -> usize {
        self.total
    }

    pub fn vocabulary_size(&self) -> usize {
        self.counts.len()
    }

    /// `Σ_v |f_self(v) − f_other(v)|` over the union vocabulary.
    pub fn distance(&self, other: &WordBag<'_>) -> usize {
        let mut sum = 0;
        for (w, &c) in &self.counts {
            sum += c.abs_diff(other.count(w));
        }
        for (w, &c) in &other.counts {
            if !self.counts.contains_key(w) {
                sum += c;
            }
        }
        sum
    }

    /// `Σ_v min(f_self(v), f_other(v))`.
    pub fn overlap(&self, other: &WordBag<'_>) -> usize {
        self.counts
            .iter()
            .map(|(w, &c)| c.min(other.count(w)))
            .sum()
    }
}

/// Total multiset frequency discrepancy between two word sequences.
pub fn bag_distance<S: AsRef<str>>(x: &[S], y: &[S]) -> usize {
    WordBag::from_words(x).distance(&WordBag::from_words(y))
}

/// Naive bag-of-words rate `B(X,Y)/|X|`, counting every mismatch as an
/// insertion or deletion.
pub fn beta_wer<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<Rate> {
    if x.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    Ok(Rate::new(bag_distance(x, y) as u64, x.len() as u64))
}

/// Bag-of-words WER and the operation counts it implies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BwerOutcome {
    pub rate: Rate,
    pub counts: EditCounts,
    /// `B(X,Y)`.
    pub bag_distance: usize,
    /// `| |X| − |Y| |`, the insertions or deletions no substitution can replace.
    pub length_gap: usize,
}

/// Bag-of-words WER: every insertion/deletion pair beyond the unavoidable
/// length difference is counted as one substitution, giving
/// `(b + B(X,Y)) / (2|X|)`.
///
/// The `b` unavoidable operations are reported as deletions when the
/// reference is longer and as insertions when the hypothesis is longer.
pub fn bwer<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<BwerOutcome> {
    if x.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let n = x.len();
    let bag = bag_distance(x, y);
    let gap = n.abs_diff(y.len());
    debug_assert!(bag >= gap && (bag - gap) % 2 == 0);
    let sub = (bag - gap) / 2;
    let (ins, del) = if n > y.len() { (0, gap) } else { (gap, 0) };
    let counts = EditCounts::new(ins, sub, del, n - del - sub);
    Ok(BwerOutcome {
        rate: Rate::new((gap + sub) as u64, n as u64),
        counts,
        bag_distance: bag,
        length_gap: gap,
    })
}

/// Bag-of-words word accuracy `Σ_v min(f_X(v), f_Y(v)) / |X|`.
///
/// Extra hypothesis words never lower it; kept for comparison only.
pub fn bwac<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<Rate> {
    if x.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let overlap = WordBag::from_words(x).overlap(&WordBag::from_words(y));
    Ok(Rate::new(overlap as u64, x.len() as u64))
}
