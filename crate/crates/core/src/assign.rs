//! Order-independent word pairing by regularized minimum-cost assignment.
//!
//! Reference and hypothesis word instances form the two sides of a complete
//! bipartite graph. Pairing two real words costs their character edit
//! distance plus `γ·|j−k|/N`; pairing a word `v` with the empty word costs
//! `|v|/2 + γ/N`. The square cost matrix has side `|X|+|Y|`: `|Y|` dummy
//! rows and `|X|` dummy columns, with zero cost between dummies, so every
//! word can independently be deleted or inserted.

use crate::editdist::{cer, levenshtein};
use crate::error::{EvalError, Result};
use crate::types::{AlignPair, Alignment, EditCounts, Rate};

/// Rejects negative, infinite or NaN regularization factors.
pub fn check_gamma(gamma: f64) -> Result<()> {
    if gamma >= 0.0 && gamma.is_finite() {
        Ok(())
    } else {
        Err(EvalError::InvalidConfig(format!(
            "regularization factor must be finite and non-negative, got {gamma}"
        )))
    }
}

/// Cost matrix of the padded assignment problem, stored compactly: the
/// real block explicitly, dummy rows and columns as one vector each
/// (all dummy rows are identical, as are all dummy columns).
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n_ref: usize,
    n_hyp: usize,
    gamma: f64,
    real: Vec<f64>,
    /// Cost of pairing reference word `j` with a dummy column.
    deletion: Vec<f64>,
    /// Cost of pairing hypothesis word `k` with a dummy row.
    insertion: Vec<f64>,
}

impl CostMatrix {
    /// Builds the regularized cost matrix for reference `x` and hypothesis `y`.
    pub fn build<S: AsRef<str>>(x: &[S], y: &[S], gamma: f64) -> Result<Self> {
        if x.is_empty() {
            return Err(EvalError::EmptyReference);
        }
        check_gamma(gamma)?;
        let n = x.len() as f64;
        let xc: Vec<Vec<char>> = x.iter().map(|w| w.as_ref().chars().collect()).collect();
        let yc: Vec<Vec<char>> = y.iter().map(|w| w.as_ref().chars().collect()).collect();

        let mut real = Vec::with_capacity(xc.len() * yc.len());
        for (j, xw) in xc.iter().enumerate() {
            for (k, yw) in yc.iter().enumerate() {
                let g = if xw == yw { 0 } else { levenshtein(xw, yw) };
                real.push(g as f64 + gamma * j.abs_diff(k) as f64 / n);
            }
        }
        let dummy_shift = gamma / n;
        let deletion = xc.iter().map(|w| w.len() as f64 / 2.0 + dummy_shift).collect();
        let insertion = yc.iter().map(|w| w.len() as f64 / 2.0 + dummy_shift).collect();
        Ok(CostMatrix {
            n_ref: xc.len(),
            n_hyp: yc.len(),
            gamma,
            real,
            deletion,
            insertion,
        })
    }

    /// Side of the square matrix, `|X| + |Y|`.
    pub fn side(&self) -> usize {
        self.n_ref + self.n_hyp
    }

    pub fn n_ref(&self) -> usize {
        self.n_ref
    }

    pub fn n_hyp(&self) -> usize {
        self.n_hyp
    }

    /// Cell `(row, col)` of the padded matrix. Rows `0..|X|` are reference
    /// words and the rest dummies; columns `0..|Y|` are hypothesis words.
    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        match (row < self.n_ref, col < self.n_hyp) {
            (true, true) => self.real[row * self.n_hyp + col],
            (true, false) => self.deletion[row],
            (false, true) => self.insertion[col],
            (false, false) => 0.0,
        }
    }

    /// Maps a padded row/column pair back to an alignment link; `None` for
    /// dummy–dummy pairs.
    fn link(&self, row: usize, col: usize) -> Option<AlignPair> {
        match (row < self.n_ref, col < self.n_hyp) {
            (true, true) => Some(AlignPair::Aligned {
                ref_idx: row,
                hyp_idx: col,
            }),
            (true, false) => Some(AlignPair::Deletion { ref_idx: row }),
            (false, true) => Some(AlignPair::Insertion { hyp_idx: col }),
            (false, false) => None,
        }
    }

    /// Total cost of an alignment under this matrix.
    pub fn alignment_cost(&self, alignment: &Alignment) -> f64 {
        alignment
            .pairs
            .iter()
            .map(|p| match *p {
                AlignPair::Aligned { ref_idx, hyp_idx } => self.real[ref_idx * self.n_hyp + hyp_idx],
                AlignPair::Deletion { ref_idx } => self.deletion[ref_idx],
                AlignPair::Insertion { hyp_idx } => self.insertion[hyp_idx],
            })
            .sum()
    }
}

/// Minimum-cost perfect matching on a dense square matrix given by `cost`.
///
/// Shortest augmenting path with row/column potentials, O(n³). Returns
/// the column assigned to each row.
pub fn min_cost_assignment<F>(n: usize, cost: F) -> Vec<usize>
where
    F: Fn(usize, usize) -> f64,
{
    min_cost_assignment_by_rows(n, |r, row| {
        for (c, cell) in row.iter_mut().enumerate() {
            *cell = cost(r, c);
        }
    })
}

/// Same as [`min_cost_assignment`], with the matrix supplied one row at a
/// time: `fill_row(r, buf)` writes row `r` into `buf` (length `n`).
pub fn min_cost_assignment_by_rows<F>(n: usize, mut fill_row: F) -> Vec<usize>
where
    F: FnMut(usize, &mut [f64]),
{
    if n == 0 {
        return Vec::new();
    }
    // 1-based internally; column 0 is the virtual source.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of_col = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut minv = vec![f64::INFINITY; n + 1];
    let mut used = vec![false; n + 1];
    let mut row = vec![0.0f64; n];

    // Column reduction, then greedily match rows along tight cells; the
    // potentials stay feasible, so only unmatched rows need augmenting.
    v[1..].fill(f64::INFINITY);
    for r in 0..n {
        fill_row(r, &mut row);
        for (vj, &c) in v[1..].iter_mut().zip(&row) {
            if c < *vj {
                *vj = c;
            }
        }
    }
    let mut free_rows = Vec::new();
    for r in 0..n {
        fill_row(r, &mut row);
        let tight = (1..=n).find(|&j| row_of_col[j] == 0 && row[j - 1] == v[j]);
        match tight {
            Some(j) => row_of_col[j] = r + 1,
            None => free_rows.push(r + 1),
        }
    }

    for i in free_rows {
        row_of_col[0] = i;
        let mut j0 = 0usize;
        minv.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[j0] = true;
            let i0 = row_of_col[j0];
            let ui0 = u[i0];
            fill_row(i0 - 1, &mut row);
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let reduced = row[j - 1] - ui0 - v[j];
                if reduced < minv[j] {
                    minv[j] = reduced;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of_col[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if row_of_col[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of_col[j0] = row_of_col[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut col_of_row = vec![0usize; n];
    for j in 1..=n {
        col_of_row[row_of_col[j] - 1] = j - 1;
    }
    col_of_row
}

/// Optimal alignment and its total cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Assignment {
    pub alignment: Alignment,
    pub cost: f64,
}

/// Solves the padded assignment problem; dummy–dummy pairs are dropped.
/// Pairs are listed by reference index, then insertions by hypothesis index.
///
/// Without regularization all costs are multiples of ½, and among the
/// optimal assignments the one with the most exact word matches is
/// returned, so the result depends only on the word multisets.
pub fn solve_assignment(m: &CostMatrix) -> Assignment {
    let side = m.side();
    let bonus = if m.gamma == 0.0 { 0.25 / side as f64 } else { 0.0 };
    let (n_ref, n_hyp) = (m.n_ref, m.n_hyp);
    let cols = min_cost_assignment_by_rows(side, |r, row| {
        let (real, dummy) = row.split_at_mut(n_hyp);
        if r < n_ref {
            real.copy_from_slice(&m.real[r * n_hyp..(r + 1) * n_hyp]);
            if bonus > 0.0 {
                for cell in real.iter_mut().filter(|c| **c == 0.0) {
                    *cell = -bonus;
                }
            }
            dummy.fill(m.deletion[r]);
        } else {
            real.copy_from_slice(&m.insertion);
            dummy.fill(0.0);
        }
    });
    let mut cost = 0.0;
    let mut pairs = Vec::with_capacity(side);
    for (row, &col) in cols.iter().enumerate() {
        cost += m.get(row, col);
        if let Some(link) = m.link(row, col) {
            pairs.push(link);
        }
    }
    Assignment {
        alignment: Alignment::new(pairs),
        cost,
    }
}

/// Assignment-based WER with its alignment and accumulators.
#[derive(Debug, Clone, PartialEq)]
pub struct HwerOutcome {
    pub rate: Rate,
    pub alignment: Alignment,
    /// Word operations implied by the alignment, with `(D−b)/2`
    /// insertion/deletion pairs merged into substitutions.
    pub counts: EditCounts,
    /// Number of dummy pairs `D` in the alignment.
    pub dummy_pairs: usize,
    /// `b = | |X| − |Y| |`.
    pub length_gap: usize,
    /// Regularized assignment cost `d_h`.
    pub cost: f64,
}

/// hWER: mismatches along the optimal regularized assignment, where each
/// insertion/deletion pair beyond the length difference counts as one
/// substitution: `(Σ δ(X_j,Y_k))/N − (D − b)/(2N)`.
pub fn hwer<S: AsRef<str>>(x: &[S], y: &[S], gamma: f64) -> Result<HwerOutcome> {
    let matrix = CostMatrix::build(x, y, gamma)?;
    let Assignment { alignment, cost } = solve_assignment(&matrix);
    Ok(hwer_from_alignment(x, y, alignment, cost))
}

/// Computes hWER counts for a given alignment (which need not be optimal).
pub fn hwer_from_alignment<S: AsRef<str>>(x: &[S], y: &[S], alignment: Alignment, cost: f64) -> HwerOutcome {
    let mut mismatched = 0usize;
    let mut matched = 0usize;
    let mut deletions = 0usize;
    let mut insertions = 0usize;
    for p in &alignment.pairs {
        match *p {
            AlignPair::Aligned { ref_idx, hyp_idx } => {
                if x[ref_idx].as_ref() == y[hyp_idx].as_ref() {
                    matched += 1;
                } else {
                    mismatched += 1;
                }
            }
            AlignPair::Deletion { .. } => deletions += 1,
            AlignPair::Insertion { .. } => insertions += 1,
        }
    }
    let dummy_pairs = deletions + insertions;
    let length_gap = x.len().abs_diff(y.len());
    // deletions − insertions = |X| − |Y|, so D − b = 2·min(ins, del)
    let merged = deletions.min(insertions);
    debug_assert_eq!(dummy_pairs - length_gap, 2 * merged);
    let counts = EditCounts::new(insertions - merged, mismatched + merged, deletions - merged, matched);
    let numerator = mismatched + dummy_pairs - merged;
    HwerOutcome {
        rate: Rate::new(numerator as u64, x.len().max(1) as u64),
        alignment,
        counts,
        dummy_pairs,
        length_gap,
        cost,
    }
}

/// Reorders the hypothesis by the alignment: each aligned hypothesis word
/// takes its reference partner's position, deleted reference positions
/// stay empty and inserted words follow in their original order.
pub fn reorder_hypothesis<'a, S: AsRef<str>>(
    x: &[S],
    y: &'a [S],
    alignment: &Alignment,
) -> Result<Vec<&'a str>> {
    alignment
        .covers(x.len(), y.len())
        .map_err(EvalError::InconsistentAlignment)?;
    let mut partner: Vec<Option<usize>> = vec![None; x.len()];
    let mut inserted: Vec<usize> = Vec::new();
    for p in &alignment.pairs {
        match *p {
            AlignPair::Aligned { ref_idx, hyp_idx } => partner[ref_idx] = Some(hyp_idx),
            AlignPair::Insertion { hyp_idx } => inserted.push(hyp_idx),
            AlignPair::Deletion { .. } => {}
        }
    }
    inserted.sort_unstable();
    Ok(partner
        .into_iter()
        .flatten()
        .chain(inserted)
        .map(|k| y[k].as_ref())
        .collect())
}

/// hCER: character error rate between the reference and the hypothesis
/// reordered by an assignment alignment.
pub fn hcer<S: AsRef<str>>(x: &[S], y: &[S], alignment: &Alignment) -> Result<(Rate, EditCounts)> {
    if x.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    let reordered = reorder_hypothesis(x, y, alignment)?;
    let xs: Vec<&str> = x.iter().map(AsRef::as_ref).collect();
    cer(&xs, &reordered)
}
