//! Levenshtein distance with backtrace over words and characters, and the
//! order-aware WER/CER built on it.
//!
//! All edit operations cost 1. When several predecessors reach a DP cell
//! with the same cost the backtrace prefers match/substitution, then
//! deletion, then insertion, so traces and counts are deterministic.

use crate::error::{EvalError, Result};
use crate::page::{join_chars, PageTranscript};
use crate::types::{AlignPair, EditCounts, Rate, Trace};

/// Result of a word-level edit distance computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EditOutcome {
    pub distance: usize,
    pub counts: EditCounts,
    pub trace: Trace,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Step {
    Diag,
    Del,
    Ins,
}

#[inline]
fn pick(diag: u32, del: u32, ins: u32) -> (u32, Step) {
    if diag <= del && diag <= ins {
        (diag, Step::Diag)
    } else if del <= ins {
        (del, Step::Del)
    } else {
        (ins, Step::Ins)
    }
}

/// Edit distance between two sequences, with counts and the sequential trace.
pub fn edit_distance<T: PartialEq>(x: &[T], y: &[T]) -> EditOutcome {
    let (n, m) = (x.len(), y.len());
    let width = m + 1;
    let mut dist = vec![0u32; (n + 1) * width];
    for j in 0..=m {
        dist[j] = j as u32;
    }
    for i in 1..=n {
        let row = i * width;
        let prev = row - width;
        dist[row] = i as u32;
        for j in 1..=m {
            let diag = dist[prev + j - 1] + u32::from(x[i - 1] != y[j - 1]);
            let del = dist[prev + j] + 1;
            let ins = dist[row + j - 1] + 1;
            dist[row + j] = pick(diag, del, ins).0;
        }
    }

    let mut pairs = Vec::with_capacity(n.max(m));
    let mut counts = EditCounts::default();
    let (mut i, mut j) = (n, m);
    while i > 0 || j > 0 {
        let here = dist[i * width + j];
        let step = if i == 0 {
            Step::Ins
        } else if j == 0 {
            Step::Del
        } else {
            let diag = dist[(i - 1) * width + j - 1] + u32::from(x[i - 1] != y[j - 1]);
            let del = dist[(i - 1) * width + j] + 1;
            let ins = dist[i * width + j - 1] + 1;
            let (best, step) = pick(diag, del, ins);
            debug_assert_eq!(best, here);
            step
        };
        match step {
            Step::Diag => {
                if x[i - 1] == y[j - 1] {
                    counts.correct += 1;
                } else {
                    counts.sub += 1;
                }
                pairs.push(AlignPair::Aligned {
                    ref_idx: i - 1,
                    hyp_idx: j - 1,
                });
                i -= 1;
                j -= 1;
            }
            Step::Del => {
                counts.del += 1;
                pairs.push(AlignPair::Deletion { ref_idx: i - 1 });
                i -= 1;
            }
            Step::Ins => {
                counts.ins += 1;
                pairs.push(AlignPair::Insertion { hyp_idx: j - 1 });
                j -= 1;
            }
        }
    }
    pairs.reverse();

    EditOutcome {
        distance: dist[n * width + m] as usize,
        counts,
        trace: Trace { pairs },
    }
}

/// Edit counts without materializing the trace; linear memory in `|y|`.
///
/// Each cell keeps the counts of the path selected by the same tie rule the
/// backtrace uses, so the result equals `edit_distance(x, y).counts`.
pub fn edit_counts<T: PartialEq>(x: &[T], y: &[T]) -> EditCounts {
    #[derive(Clone, Copy, Default)]
    struct Cell {
        cost: u32,
        counts: EditCounts,
    }

    let m = y.len();
    let mut prev: Vec<Cell> = (0..=m)
        .map(|j| Cell {
            cost: j as u32,
            counts: EditCounts::new(j, 0, 0, 0),
        })
        .collect();
    let mut cur = vec![Cell::default(); m + 1];
    for (i, xi) in x.iter().enumerate() {
        cur[0] = Cell {
            cost: i as u32 + 1,
            counts: EditCounts::new(0, 0, i + 1, 0),
        };
        for j in 1..=m {
            let same = *xi == y[j - 1];
            let diag = prev[j - 1].cost + u32::from(!same);
            let del = prev[j].cost + 1;
            let ins = cur[j - 1].cost + 1;
            let (cost, step) = pick(diag, del, ins);
            let mut counts = match step {
                Step::Diag => prev[j - 1].counts,
                Step::Del => prev[j].counts,
                Step::Ins => cur[j - 1].counts,
            };
            match step {
                Step::Diag if same => counts.correct += 1,
                Step::Diag => counts.sub += 1,
                Step::Del => counts.del += 1,
                Step::Ins => counts.ins += 1,
            }
            cur[j] = Cell { cost, counts };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[m].counts
}

/// Plain Levenshtein distance in linear memory.
pub fn levenshtein<T: PartialEq>(x: &[T], y: &[T]) -> usize {
    let mut prev: Vec<usize> = (0..=y.len()).collect();
    let mut cur = vec![0usize; y.len() + 1];
    for (i, xi) in x.iter().enumerate() {
        cur[0] = i + 1;
        for (j, yj) in y.iter().enumerate() {
            let sub = prev[j] + usize::from(xi != yj);
            cur[j + 1] = sub.min(prev[j + 1] + 1).min(cur[j] + 1);
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    prev[y.len()]
}

/// Character edit distance between two word sequences, each joined with
/// single spaces.
pub fn char_edit_distance<S: AsRef<str>>(x: &[S], y: &[S]) -> (usize, EditCounts) {
    let counts = edit_counts(&join_chars(x), &join_chars(y));
    (counts.errors(), counts)
}

/// Word error rate `(i+s+d)/|x|`; may exceed 1.
pub fn wer<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<Rate> {
    Ok(wer_with_counts(x, y)?.0)
}

pub fn wer_with_counts<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<(Rate, EditCounts)> {
    if x.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let xs: Vec<&str> = x.iter().map(AsRef::as_ref).collect();
    let ys: Vec<&str> = y.iter().map(AsRef::as_ref).collect();
    let counts = edit_counts(&xs, &ys);
    Ok((Rate::new(counts.errors() as u64, x.len() as u64), counts))
}

/// Character error rate over the space-joined word sequences.
pub fn cer<S: AsRef<str>>(x: &[S], y: &[S]) -> Result<(Rate, EditCounts)> {
    if x.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let (_, counts) = char_edit_distance(x, y);
    Ok((Rate::new(counts.errors() as u64, counts.ref_len() as u64), counts))
}

/// Page WER accumulated over corresponding line pairs.
pub fn page_wer_by_lines(x: &PageTranscript, y: &PageTranscript) -> Result<(Rate, EditCounts)> {
    if x.num_lines() != y.num_lines() {
        return Err(EvalError::LineCountMismatch {
            reference: x.num_lines(),
            hypothesis: y.num_lines(),
        });
    }
    let n = x.num_words();
    if n == 0 {
        return Err(EvalError::EmptyReference);
    }
    let counts: EditCounts = x
        .lines()
        .iter()
        .zip(y.lines())
        .map(|(xl, yl)| {
            let xs: Vec<&str> = xl.iter().map(AsRef::as_ref).collect();
            let ys: Vec<&str> = yl.iter().map(AsRef::as_ref).collect();
            edit_counts(&xs, &ys)
        })
        .sum();
    Ok((Rate::new(counts.errors() as u64, n as u64), counts))
}

/// Page WER from one edit distance over the flattened pages.
pub fn page_wer_concat(x: &PageTranscript, y: &PageTranscript) -> Result<(Rate, EditCounts, Trace)> {
    let xs = x.flatten();
    let ys = y.flatten();
    if xs.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let out = edit_distance(&xs, &ys);
    Ok((
        Rate::new(out.distance as u64, xs.len() as u64),
        out.counts,
        out.trace,
    ))
}

/// Page CER over the flattened, space-joined pages.
pub fn page_cer_concat(x: &PageTranscript, y: &PageTranscript) -> Result<(Rate, EditCounts)> {
    cer(&x.flatten(), &y.flatten())
}

/// Replays a trace's edit operations on `x`, producing the edited sequence.
///
/// Matches keep the reference word, substitutions and insertions take the
/// hypothesis word, deletions drop the reference word.
pub fn apply_trace<'a, T: PartialEq>(trace: &Trace, x: &'a [T], y: &'a [T]) -> Vec<&'a T> {
    trace
        .pairs
        .iter()
        .filter_map(|p| match *p {
            AlignPair::Aligned { ref_idx, hyp_idx } if x[ref_idx] == y[hyp_idx] => Some(&x[ref_idx]),
            AlignPair::Aligned { hyp_idx, .. } | AlignPair::Insertion { hyp_idx } => Some(&y[hyp_idx]),
            AlignPair::Deletion { .. } => None,
        })
        .collect()
}
