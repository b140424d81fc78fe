//! Per-page evaluation and corpus-level aggregation.
//!
//! Corpus error rates are micro-averaged: numerators and reference sizes
//! are summed over pages before dividing. NSFD has a quadratic normalizer,
//! so it is averaged over pages instead, weighted by each page's share of
//! reference words.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::assign::{check_gamma, hcer, hwer};
use crate::bow::{beta_wer, bwer};
use crate::editdist::{cer, edit_counts};
use crate::error::{EvalError, Result};
use crate::page::{joined_char_len, PageTranscript};
use crate::ro::nsfd_of_alignment;
use crate::types::{EditCounts, Rate};

/// Wall-clock seconds spent on each metric (monotonic clock).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct Timings {
    pub wer: f64,
    pub cer: f64,
    pub bwer: f64,
    pub hwer: f64,
    pub hcer: f64,
    pub nsfd: f64,
}

/// All metrics for one reference/hypothesis page pair.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PageReport {
    pub page_id: String,
    pub ref_words: usize,
    pub hyp_words: usize,
    pub ref_chars: usize,
    pub wer: Rate,
    pub cer: Rate,
    pub beta_wer: Rate,
    pub bwer: Rate,
    pub hwer: Rate,
    pub hcer: Rate,
    pub nsfd: Rate,
    /// `WER − bWER`.
    pub delta_wer: f64,
    /// `WER − hWER`.
    pub delta_wer_h: f64,
    pub wer_counts: EditCounts,
    pub cer_counts: EditCounts,
    pub bwer_counts: EditCounts,
    pub hwer_counts: EditCounts,
    pub hcer_counts: EditCounts,
    /// Dummy pairs `D` in the assignment alignment.
    pub dummy_pairs: usize,
    /// `b = | |X| − |Y| |`.
    pub length_gap: usize,
    pub gamma: f64,
    pub timings: Timings,
}

fn timed<T>(slot: &mut f64, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    *slot = start.elapsed().as_secs_f64();
    out
}

/// Evaluates every metric on the flattened pages.
pub fn evaluate_page(x: &PageTranscript, y: &PageTranscript, gamma: f64) -> Result<PageReport> {
    evaluate_words(&x.page_id, &x.flatten(), &y.flatten(), gamma).map_err(|e| e.on_page(&x.page_id))
}

/// Evaluates every metric on two word sequences.
pub fn evaluate_words(page_id: &str, xs: &[&str], ys: &[&str], gamma: f64) -> Result<PageReport> {
    if xs.is_empty() {
        return Err(EvalError::EmptyReference);
    }
    check_gamma(gamma)?;

    let mut t = Timings::default();
    let n = xs.len() as u64;

    let wer_counts = timed(&mut t.wer, || edit_counts(xs, ys));
    let wer = Rate::new(wer_counts.errors() as u64, n);
    let (cer, cer_counts) = timed(&mut t.cer, || cer(xs, ys))?;
    let bow = timed(&mut t.bwer, || bwer(xs, ys))?;
    let beta = beta_wer(xs, ys)?;
    let h = timed(&mut t.hwer, || hwer(xs, ys, gamma))?;
    let (hcer, hcer_counts) = timed(&mut t.hcer, || hcer(xs, ys, &h.alignment))?;
    let nsfd = timed(&mut t.nsfd, || nsfd_of_alignment(&h.alignment, xs.len(), ys.len()))?;

    Ok(PageReport {
        page_id: page_id.to_string(),
        ref_words: xs.len(),
        hyp_words: ys.len(),
        ref_chars: joined_char_len(xs),
        wer,
        cer,
        beta_wer: beta,
        bwer: bow.rate,
        hwer: h.rate,
        hcer,
        nsfd,
        delta_wer: wer.value() - bow.rate.value(),
        delta_wer_h: wer.value() - h.rate.value(),
        wer_counts,
        cer_counts,
        bwer_counts: bow.counts,
        hwer_counts: h.counts,
        hcer_counts,
        dummy_pairs: h.dummy_pairs,
        length_gap: h.length_gap,
        gamma,
        timings: t,
    })
}

/// Summed accumulators over a corpus.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub pages: usize,
    pub ref_words: usize,
    pub hyp_words: usize,
    pub ref_chars: usize,
    pub wer_errors: u64,
    pub cer_errors: u64,
    pub beta_wer_errors: u64,
    pub bwer_errors: u64,
    pub hwer_errors: u64,
    pub hcer_errors: u64,
    pub wer_counts: EditCounts,
    pub bwer_counts: EditCounts,
    pub hwer_counts: EditCounts,
    pub dummy_pairs: usize,
    pub length_gaps: usize,
}

/// Micro-averaged corpus metrics plus the page reports they came from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub pages: Vec<PageReport>,
    pub wer: Rate,
    pub cer: Rate,
    pub beta_wer: Rate,
    pub bwer: Rate,
    pub hwer: Rate,
    pub hcer: Rate,
    /// Page NSFD values averaged with reference word-count weights.
    pub nsfd: f64,
    pub delta_wer: f64,
    pub delta_wer_h: f64,
    pub totals: Totals,
    pub timings: Timings,
}

/// Folds page reports into corpus figures.
pub fn aggregate(reports: &[PageReport]) -> Result<CorpusReport> {
    if reports.is_empty() {
        return Err(EvalError::NoReports);
    }
    let mut tot = Totals::default();
    let mut time = Timings::default();
    for r in reports {
        tot.pages += 1;
        tot.ref_words += r.ref_words;
        tot.hyp_words += r.hyp_words;
        // CER denominators come from the edit counts, equal to ref_chars
        tot.ref_chars += r.cer.den as usize;
        tot.wer_errors += r.wer.num;
        tot.cer_errors += r.cer.num;
        tot.beta_wer_errors += r.beta_wer.num;
        tot.bwer_errors += r.bwer.num;
        tot.hwer_errors += r.hwer.num;
        tot.hcer_errors += r.hcer.num;
        tot.wer_counts += r.wer_counts;
        tot.bwer_counts += r.bwer_counts;
        tot.hwer_counts += r.hwer_counts;
        tot.dummy_pairs += r.dummy_pairs;
        tot.length_gaps += r.length_gap;
        time.wer += r.timings.wer;
        time.cer += r.timings.cer;
        time.bwer += r.timings.bwer;
        time.hwer += r.timings.hwer;
        time.hcer += r.timings.hcer;
        time.nsfd += r.timings.nsfd;
    }
    let words = tot.ref_words as u64;
    let chars = tot.ref_chars as u64;
    let nsfd = reports
        .iter()
        .map(|r| r.ref_words as f64 / tot.ref_words as f64 * r.nsfd.value())
        .sum();
    let wer = Rate::new(tot.wer_errors, words);
    let bwer = Rate::new(tot.bwer_errors, words);
    let hwer = Rate::new(tot.hwer_errors, words);
    Ok(CorpusReport {
        pages: reports.to_vec(),
        wer,
        cer: Rate::new(tot.cer_errors, chars),
        beta_wer: Rate::new(tot.beta_wer_errors, words),
        bwer,
        hwer,
        hcer: Rate::new(tot.hcer_errors, chars),
        nsfd,
        delta_wer: wer.value() - bwer.value(),
        delta_wer_h: wer.value() - hwer.value(),
        totals: tot,
        timings: time,
    })
}
