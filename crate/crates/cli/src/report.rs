//! Serialized report layout (JSON and TSV).

use std::fmt::Write as _;

use htreval::agg::{CorpusReport, PageReport, Timings, Totals};
use htreval::{EditCounts, Rate};
use serde::Serialize;

/// Bumped whenever a field is renamed, removed or changes meaning.
pub const SCHEMA: &str = "htreval-report/1";

#[derive(Debug, Serialize)]
pub struct RateOut {
    pub num: u64,
    pub den: u64,
    pub value: f64,
}

impl From<Rate> for RateOut {
    fn from(r: Rate) -> Self {
        RateOut {
            num: r.num,
            den: r.den,
            value: r.value(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CountsOut {
    pub wer: EditCounts,
    pub cer: EditCounts,
    pub bwer: EditCounts,
    pub hwer: EditCounts,
    pub hcer: EditCounts,
}

#[derive(Debug, Serialize)]
pub struct PageOut {
    pub page_id: String,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub missing_hypothesis: bool,
    pub ref_words: usize,
    pub hyp_words: usize,
    pub ref_chars: usize,
    pub wer: RateOut,
    pub cer: RateOut,
    pub beta_wer: RateOut,
    pub bwer: RateOut,
    pub hwer: RateOut,
    pub hcer: RateOut,
    pub nsfd: RateOut,
    pub delta_wer: f64,
    pub delta_wer_h: f64,
    pub dummy_pairs: usize,
    pub length_gap: usize,
    pub counts: CountsOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl PageOut {
    pub fn new(r: &PageReport, missing_hypothesis: bool, timings: bool) -> Self {
        PageOut {
            page_id: r.page_id.clone(),
            missing_hypothesis,
            ref_words: r.ref_words,
            hyp_words: r.hyp_words,
            ref_chars: r.ref_chars,
            wer: r.wer.into(),
            cer: r.cer.into(),
            beta_wer: r.beta_wer.into(),
            bwer: r.bwer.into(),
            hwer: r.hwer.into(),
            hcer: r.hcer.into(),
            nsfd: r.nsfd.into(),
            delta_wer: r.delta_wer,
            delta_wer_h: r.delta_wer_h,
            dummy_pairs: r.dummy_pairs,
            length_gap: r.length_gap,
            counts: CountsOut {
                wer: r.wer_counts,
                cer: r.cer_counts,
                bwer: r.bwer_counts,
                hwer: r.hwer_counts,
                hcer: r.hcer_counts,
            },
            timings: timings.then_some(r.timings),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct CorpusOut {
    pub pages: usize,
    pub wer: RateOut,
    pub cer: RateOut,
    pub beta_wer: RateOut,
    pub bwer: RateOut,
    pub hwer: RateOut,
    pub hcer: RateOut,
    /// Page NSFD weighted by reference word share.
    pub nsfd: f64,
    pub delta_wer: f64,
    pub delta_wer_h: f64,
    pub totals: Totals,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

impl CorpusOut {
    pub fn new(c: &CorpusReport, timings: bool) -> Self {
        CorpusOut {
            pages: c.pages.len(),
            wer: c.wer.into(),
            cer: c.cer.into(),
            beta_wer: c.beta_wer.into(),
            bwer: c.bwer.into(),
            hwer: c.hwer.into(),
            hcer: c.hcer.into(),
            nsfd: c.nsfd,
            delta_wer: c.delta_wer,
            delta_wer_h: c.delta_wer_h,
            totals: c.totals,
            timings: timings.then_some(c.timings),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct PageError {
    pub page_id: String,
    pub error: String,
}

#[derive(Debug, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub gamma: f64,
    /// `None` when no page could be evaluated.
    pub corpus: Option<CorpusOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pages: Option<Vec<PageOut>>,
    pub missing_hypotheses: Vec<String>,
    pub errors: Vec<PageError>,
}

pub const TSV_HEADER: &str = "page_id\tNSFD\tΔWER\tWER\tbWER\thWER\tCER\thCER";

fn pct(v: f64) -> String {
    format!("{:.1}", 100.0 * v)
}

fn tsv_row(out: &mut String, id: &str, nsfd: f64, delta: f64, rates: [Rate; 5]) {
    let _ = write!(out, "{id}\t{}\t{}", pct(nsfd), pct(delta));
    for r in rates {
        let _ = write!(out, "\t{}", pct(r.value()));
    }
    out.push('\n');
}

/// Table-style TSV: one row per page (optional) and a final corpus row.
pub fn to_tsv(pages: &[&PageReport], corpus: Option<&CorpusReport>) -> String {
    let mut out = String::from(TSV_HEADER);
    out.push('\n');
    for r in pages {
        tsv_row(
            &mut out,
            &r.page_id,
            r.nsfd.value(),
            r.delta_wer,
            [r.wer, r.bwer, r.hwer, r.cer, r.hcer],
        );
    }
    if let Some(c) = corpus {
        tsv_row(&mut out, "TOTAL", c.nsfd, c.delta_wer, [c.wer, c.bwer, c.hwer, c.cer, c.hcer]);
    }
    out
}
