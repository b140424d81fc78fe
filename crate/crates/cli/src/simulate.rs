use std::fs;
use std::path::Path;

use anyhow::{bail, Context, Result};
use htreval::agg::{aggregate, evaluate_page, CorpusReport};
use htreval::sim::{
    distort_page, predict_nsfd_splits, predict_nsfd_swaps, predict_twer, rng_from_seed, tcer, Distorted, Distortion,
    DistortionConfig, DistortionMode, RNG_ALGORITHM,
};
use htreval::PageTranscript;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{list_pages, page_path, read_page};
use crate::report::PageError;
use crate::SimulateArgs;

pub const MANIFEST_SCHEMA: &str = "htreval-manifest/1";
pub const MANIFEST_FILE: &str = "manifest.json";
pub const SWEEP_FILE: &str = "sweep.tsv";

#[derive(Serialize)]
struct PageOps<'a> {
    page_id: &'a str,
    ops: &'a [Distortion],
}

#[derive(Serialize)]
struct Manifest<'a> {
    schema: &'static str,
    rng: &'static str,
    config: &'a DistortionConfig,
    /// The character edit shares are defaults unless set on the command line.
    op_mix_is_default: bool,
    pages: Vec<PageOps<'a>>,
    errors: Vec<PageError>,
}

struct SourcePage {
    id: String,
    page: PageTranscript,
    raw: Vec<u8>,
}

fn load(root: &Path) -> Result<(Vec<SourcePage>, Vec<PageError>)> {
    let mut pages = Vec::new();
    let mut errors = Vec::new();
    for p in list_pages(root)? {
        match read_page(&p.path, &p.id) {
            Ok((page, raw)) => pages.push(SourcePage { id: p.id, page, raw }),
            Err(error) => {
                eprintln!("error: {error}");
                errors.push(PageError { page_id: p.id, error });
            }
        }
    }
    Ok((pages, errors))
}

/// Distorts every page; page `k` of the sorted list draws from stream `k`
/// of the seeded generator, so results do not depend on scheduling.
fn distort_all(pages: &[SourcePage], cfg: &DistortionConfig) -> Result<Vec<Distorted>> {
    pages
        .par_iter()
        .enumerate()
        .map(|(k, p)| {
            let mut rng = rng_from_seed(cfg.seed);
            rng.set_stream(k as u64);
            distort_page(&p.page, cfg, &mut rng).map_err(|e| e.on_page(&p.id).into())
        })
        .collect()
}

fn evaluate_all(pages: &[SourcePage], distorted: &[Distorted], gamma: f64) -> Result<CorpusReport> {
    let reports = pages
        .par_iter()
        .zip(distorted)
        .filter(|(p, _)| p.page.num_words() > 0)
        .map(|(p, d)| evaluate_page(&p.page, &d.page, gamma))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(aggregate(&reports)?)
}

/// Runs `simulate`; returns whether every page was processed cleanly.
pub fn run(args: &SimulateArgs) -> Result<bool> {
    let cfg = args.config()?;
    cfg.validate()?;
    if args.out.exists() && same_dir(&args.out, &args.reference) {
        bail!("output directory must differ from the reference directory");
    }
    let (pages, errors) = load(&args.reference)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(args.jobs.unwrap_or(0))
        .build()
        .context("starting worker pool")?;
    fs::create_dir_all(&args.out).with_context(|| format!("creating {}", args.out.display()))?;

    let clean = errors.is_empty();
    if args.sweep {
        let table = pool.install(|| sweep(&pages, &cfg, args.gamma))?;
        fs::write(args.out.join(SWEEP_FILE), &table)?;
        print!("{table}");
        return Ok(clean);
    }

    let distorted = pool.install(|| distort_all(&pages, &cfg))?;
    for (p, d) in pages.iter().zip(&distorted) {
        let path = page_path(&args.out, &p.id);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent)?;
        }
        // untouched pages are copied byte for byte
        let bytes = if d.ops.is_empty() { p.raw.clone() } else { d.page.to_text().into_bytes() };
        fs::write(&path, bytes).with_context(|| format!("writing {}", path.display()))?;
    }
    let manifest = Manifest {
        schema: MANIFEST_SCHEMA,
        rng: RNG_ALGORITHM,
        config: &cfg,
        op_mix_is_default: args.op_mix_is_default(),
        pages: pages
            .iter()
            .zip(&distorted)
            .map(|(p, d)| PageOps {
                page_id: &p.id,
                ops: &d.ops,
            })
            .collect(),
        errors,
    };
    let mut json = serde_json::to_string_pretty(&manifest)?;
    json.push('\n');
    fs::write(args.out.join(MANIFEST_FILE), json)?;
    Ok(clean)
}

fn same_dir(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(a), Ok(b)) => a == b,
        _ => false,
    }
}

pub const SWEEP_HEADER: &str =
    "param\tWER\tbWER\thWER\tCER\thCER\tNSFD\tpred_CER\tpred_WER\tpred_NSFD\tpred_bWER";

fn cell(v: Option<f64>) -> String {
    v.map_or_else(|| "-".to_string(), |v| format!("{:.2}", 100.0 * v))
}

/// Distorts the corpus at every parameter value from 0 up to the configured
/// one (`n` for character modes, `S` otherwise) and tabulates measured and
/// predicted metrics in percent.
fn sweep(pages: &[SourcePage], cfg: &DistortionConfig, gamma: f64) -> Result<String> {
    let owned: Vec<&PageTranscript> = pages.iter().map(|p| &p.page).filter(|p| p.num_words() > 0).collect();
    if owned.is_empty() {
        bail!("no non-empty reference pages to sweep over");
    }
    let total_words: usize = owned.iter().map(|p| p.num_words()).sum();
    let total_chars: usize = owned.iter().map(|p| p.num_chars()).sum();
    let avg_word_len = total_chars as f64 / total_words as f64;
    let line_counts: Vec<usize> = owned.iter().map(|p| p.num_lines()).collect();
    let shapes: Vec<(usize, usize)> = owned.iter().map(|p| (p.num_lines(), p.num_words())).collect();

    let char_mode = matches!(cfg.mode, DistortionMode::CharWordLevel | DistortionMode::CharLineLevel);
    let top = if char_mode { cfg.tcer_step as usize } else { cfg.count };
    let mut out = String::from(SWEEP_HEADER);
    out.push('\n');
    for param in 0..=top {
        let mut step = cfg.clone();
        if char_mode {
            step.tcer_step = param as u32;
        } else {
            step.count = param;
        }
        let distorted = distort_all(pages, &step)?;
        let c = evaluate_all(pages, &distorted, gamma)?;
        let (pred_cer, pred_wer, pred_nsfd, pred_bwer) = match cfg.mode {
            DistortionMode::CharWordLevel | DistortionMode::CharLineLevel => (
                Some(tcer(step.tcer_step) / 100.0),
                Some(predict_twer(step.tcer_step, avg_word_len) / 100.0),
                None,
                None,
            ),
            DistortionMode::LineSwap => (
                None,
                None,
                predict_nsfd_swaps(param, cfg.range.0, cfg.range.1, &line_counts).ok(),
                Some(0.0),
            ),
            DistortionMode::LineSplit => {
                let in_word = distorted
                    .iter()
                    .flat_map(|d| &d.ops)
                    .filter(|op| matches!(op, Distortion::Split { in_word: true, .. }))
                    .count();
                (
                    None,
                    None,
                    predict_nsfd_splits(param, &shapes).ok(),
                    Some(2.0 * in_word as f64 / total_words as f64),
                )
            }
        };
        let measured = [c.wer, c.bwer, c.hwer, c.cer, c.hcer].map(|r| cell(Some(r.value())));
        out.push_str(&format!(
            "{param}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            measured.join("\t"),
            cell(Some(c.nsfd)),
            cell(pred_cer),
            cell(pred_wer),
            cell(pred_nsfd),
            cell(pred_bwer)
        ));
    }
    Ok(out)
}
