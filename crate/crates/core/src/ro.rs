//! Reading-order mismatch: normalized Spearman footrule distance over a word
//! alignment.
//!
//! Deleted and inserted words would shift the positions of every later word
//! and inflate the displacement sum, so positions are first renumbered:
//! reference positions paired with the empty word are dropped from the
//! reference numbering, inserted hypothesis positions from the hypothesis
//! numbering. Each dummy pair then contributes exactly 1.

use crate::error::{EvalError, Result};
use crate::types::{AlignPair, Alignment, Rate};

/// Renumbers aligned pairs to ranks that skip deleted reference positions
/// and inserted hypothesis positions.
///
/// Dummy pairs are kept unchanged (they only contribute a constant to the
/// footrule sum); pair order is preserved.
pub fn renumber(alignment: &Alignment, len_ref: usize, len_hyp: usize) -> Alignment {
    let mut ref_kept = vec![false; len_ref];
    let mut hyp_kept = vec![false; len_hyp];
    for p in &alignment.pairs {
        if let AlignPair::Aligned { ref_idx, hyp_idx } = *p {
            ref_kept[ref_idx] = true;
            hyp_kept[hyp_idx] = true;
        }
    }
    let ref_rank = ranks(&ref_kept);
    let hyp_rank = ranks(&hyp_kept);
    let pairs = alignment
        .pairs
        .iter()
        .map(|p| match *p {
            AlignPair::Aligned { ref_idx, hyp_idx } => AlignPair::Aligned {
                ref_idx: ref_rank[ref_idx],
                hyp_idx: hyp_rank[hyp_idx],
            },
            dummy => dummy,
        })
        .collect();
    Alignment::new(pairs)
}

/// Position of each kept slot among kept slots.
fn ranks(kept: &[bool]) -> Vec<usize> {
    let mut next = 0;
    kept.iter()
        .map(|&k| {
            let r = next;
            if k {
                next += 1;
            }
            r
        })
        .collect()
}

/// `Σ |j − k|` over aligned pairs plus 1 per dummy pair.
pub fn footrule_sum(alignment: &Alignment) -> u64 {
    alignment
        .pairs
        .iter()
        .map(|p| match *p {
            AlignPair::Aligned { ref_idx, hyp_idx } => ref_idx.abs_diff(hyp_idx) as u64,
            _ => 1,
        })
        .sum()
}

/// Normalizer `⌊N²/2⌋` with `N = max(len_ref, len_hyp)`, floored at 1 so
/// single-word pages stay defined.
pub fn nsfd_normalizer(len_ref: usize, len_hyp: usize) -> u64 {
    let n = len_ref.max(len_hyp) as u64;
    (n * n / 2).max(1)
}

/// Footrule distance of an already renumbered alignment, normalized by
/// `⌊N²/2⌋` with `N = max(|X|, |Y|)`. Not clamped to `[0, 1]`.
pub fn nsfd(alignment: &Alignment, len_ref: usize, len_hyp: usize) -> Result<Rate> {
    if len_ref == 0 && len_hyp == 0 {
        return Err(EvalError::EmptyAlignment);
    }
    Ok(Rate::new(footrule_sum(alignment), nsfd_normalizer(len_ref, len_hyp)))
}

/// Renumbers a raw alignment and computes its NSFD.
pub fn nsfd_of_alignment(alignment: &Alignment, len_ref: usize, len_hyp: usize) -> Result<Rate> {
    nsfd(&renumber(alignment, len_ref, len_hyp), len_ref, len_hyp)
}
