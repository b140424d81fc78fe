use std::path::Path;

use anyhow::{Context, Result};
use htreval::agg::{aggregate, evaluate_page, PageReport};
use htreval::PageTranscript;
use rayon::prelude::*;

use crate::corpus::{list_pages, page_path, read_page};
use crate::report::{to_tsv, CorpusOut, PageError, PageOut, Report, SCHEMA};
use crate::{EvalArgs, Format};

/// Outcome of evaluating one reference page.
pub enum PageResult {
    Done { report: PageReport, missing: bool },
    Failed(PageError),
}

/// Evaluates every reference page against its namesake under `hyp_dir`.
/// A missing hypothesis is scored as an empty page and flagged.
pub fn evaluate_tree(ref_dir: &Path, hyp_dir: &Path, gamma: f64, jobs: Option<usize>) -> Result<Vec<PageResult>> {
    let pages = list_pages(ref_dir)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or(0))
        .build()
        .context("starting worker pool")?;
    let results = pool.install(|| {
        pages
            .par_iter()
            .map(|p| {
                let fail = |error: String| {
                    PageResult::Failed(PageError {
                        page_id: p.id.clone(),
                        error,
                    })
                };
                let x = match read_page(&p.path, &p.id) {
                    Ok((page, _)) => page,
                    Err(e) => return fail(e),
                };
                let hyp_path = page_path(hyp_dir, &p.id);
                let missing = !hyp_path.is_file();
                let y = if missing {
                    PageTranscript::new(p.id.clone(), Vec::new())
                } else {
                    match read_page(&hyp_path, &p.id) {
                        Ok((page, _)) => page,
                        Err(e) => return fail(e),
                    }
                };
                match evaluate_page(&x, &y, gamma) {
                    Ok(report) => PageResult::Done { report, missing },
                    Err(e) => fail(e.to_string()),
                }
            })
            .collect()
    });
    Ok(results)
}

/// Runs `eval`; returns whether every page was evaluated cleanly.
pub fn run(args: &EvalArgs) -> Result<bool> {
    htreval::assign::check_gamma(args.gamma)?;
    if !args.hyp.is_dir() {
        anyhow::bail!("{} is not a directory", args.hyp.display());
    }
    let results = evaluate_tree(&args.reference, &args.hyp, args.gamma, args.jobs)?;

    let mut reports = Vec::new();
    let mut missing = Vec::new();
    let mut errors = Vec::new();
    let mut missing_flags = Vec::new();
    for r in results {
        match r {
            PageResult::Done { report, missing: m } => {
                if m {
                    missing.push(report.page_id.clone());
                }
                missing_flags.push(m);
                reports.push(report);
            }
            PageResult::Failed(e) => errors.push(e),
        }
    }
    for e in &errors {
        eprintln!("error: {}", e.error);
    }
    for id in &missing {
        eprintln!("warning: page {id}: no hypothesis file, scored as empty");
    }
    if reports.is_empty() && errors.is_empty() {
        eprintln!("warning: no *.txt pages under {}", args.reference.display());
    }
    let corpus = if reports.is_empty() { None } else { Some(aggregate(&reports)?) };
    let clean = errors.is_empty() && missing.is_empty() && corpus.is_some();

    let text = match args.format {
        Format::Json => {
            let report = Report {
                schema: SCHEMA,
                gamma: args.gamma,
                corpus: corpus.as_ref().map(|c| CorpusOut::new(c, args.timings)),
                pages: args.per_page.then(|| {
                    reports
                        .iter()
                        .zip(&missing_flags)
                        .map(|(r, &m)| PageOut::new(r, m, args.timings))
                        .collect()
                }),
                missing_hypotheses: missing,
                errors,
            };
            let mut s = serde_json::to_string_pretty(&report)?;
            s.push('\n');
            s
        }
        Format::Tsv => {
            let shown: Vec<&PageReport> = if args.per_page { reports.iter().collect() } else { Vec::new() };
            to_tsv(&shown, corpus.as_ref())
        }
    };
    crate::write_output(args.out.as_deref(), &text)?;
    Ok(clean)
}
