//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

mod common;

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use common::*;
use htreval::agg::{aggregate, evaluate_page, evaluate_words, CorpusReport};
use htreval::assign::{hcer, hwer, solve_assignment, CostMatrix};
use htreval::bow::{bag_distance, bwac, beta_wer, bwer};
use htreval::editdist::{apply_trace, cer, edit_counts, edit_distance, page_wer_concat, wer};
use htreval::page::{tokenize_str, PageTranscript};
use htreval::ro::nsfd_of_alignment;
use htreval::sim::{
    predict_bwer_split_increase, predict_nsfd_swaps, rng_from_seed, distort_chars, split_lines, swap_lines, tcer,
    Distortion, DistortionConfig, DistortionMode, SyntheticCorpus,
};
use htreval::{AlignPair, Alignment, EditCounts, Rate};
use proptest::prelude::*;
use proptest::sample::Index;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

type Check = std::result::Result<String, String>;

/// Collects failed expectations instead of stopping at the first one.
#[derive(Default)]
struct Expect {
    failures: Vec<String>,
}

impl Expect {
    fn that(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.failures.push(what.into());
        }
    }

    fn eq<T: PartialEq + std::fmt::Debug>(&mut self, got: T, want: T, what: &str) {
        if got != want {
            self.failures.push(format!("{what}: got {got:?}, want {want:?}"));
        }
    }

    fn finish(self, summary: String) -> Check {
        if self.failures.is_empty() {
            Ok(summary)
        } else {
            Err(self.failures.join("; "))
        }
    }
}

fn split(s: &str) -> Vec<&str> {
    s.split_whitespace().collect()
}

fn listing(pairs: &[(usize, usize)]) -> Alignment {
    Alignment::new(
        pairs
            .iter()
            .map(|&(j, k)| match (j, k) {
                (0, k) => AlignPair::Insertion { hyp_idx: k - 1 },
                (j, 0) => AlignPair::Deletion { ref_idx: j - 1 },
                (j, k) => AlignPair::Aligned {
                    ref_idx: j - 1,
                    hyp_idx: k - 1,
                },
            })
            .collect(),
    )
}

const HAMLET: &str = "To be or not to be, that is the question";
const HAMLET_HYP: &str = "to be oh! or not to be: the question";
const X: &str = "to be or not to be that is the question that needs be answered";
const Y: &str = "the question that needs be answered is to be or not to be";
const Z: &str = "to be or not to be, that is the question to be answered";

fn golden_examples() -> Check {
    let start = Instant::now();
    let mut e = Expect::default();

    let (hx, hy) = (split(HAMLET), split(HAMLET_HYP));
    let ed = edit_distance(&hx, &hy);
    e.eq(ed.distance, 5, "Hamlet edit distance");
    e.eq(ed.counts, EditCounts::new(1, 2, 2, 6), "Hamlet i/s/d/c");
    e.eq(wer(&hx, &hy).unwrap(), Rate::new(5, 10), "Hamlet WER");
    e.eq(cer(&hx, &hy).unwrap().0, Rate::new(14, 40), "Hamlet CER");

    let scrambled = listing(&[(0, 2), (1, 4), (2, 5), (3, 6), (4, 7), (5, 8), (6, 9), (7, 0), (8, 0), (9, 1), (10, 3)]);
    e.eq(nsfd_of_alignment(&scrambled, 10, 9).unwrap(), Rate::new(27, 50), "scrambled NSFD");

    let (x, y, z) = (split(X), split(Y), split(Z));
    e.eq(beta_wer(&x, &y).unwrap(), Rate::new(1, 14), "βWER(X,Y)");
    e.eq(beta_wer(&x, &z).unwrap(), Rate::new(5, 14), "βWER(X,Z)");
    e.eq(bag_distance(&x, &y), 1, "B(X,Y)");
    let bxy = bwer(&x, &y).unwrap().rate;
    let bxz = bwer(&x, &z).unwrap().rate;
    e.that(bxy.same_ratio(&Rate::new(1, 14)), format!("bWER(X,Y) {bxy}"));
    e.that(bxz.same_ratio(&Rate::new(3, 14)), format!("bWER(X,Z) {bxz}"));
    e.eq(bxy.rounded_percent(1), 7.1, "bWER(X,Y) %");
    e.eq(bxz.rounded_percent(1), 21.4, "bWER(X,Z) %");
    let px = tokenize_str(X, "x");
    let wxy = page_wer_concat(&px, &tokenize_str(Y, "y")).unwrap().0;
    let wxz = page_wer_concat(&px, &tokenize_str(Z, "z")).unwrap().0;
    e.eq(wxy, Rate::new(12, 14), "WER(X,Y)");
    e.eq(wxz, Rate::new(3, 14), "WER(X,Z)");
    e.eq(wxy.rounded_percent(1), 85.7, "WER(X,Y) %");
    let scr = bwer(&split(HAMLET), &split("to be, To not or be the is that question")).unwrap();
    e.eq(scr.rate.num, 0, "scrambled bWER");

    let hxy = hwer(&x, &y, 0.0).unwrap();
    let hxz = hwer(&x, &z, 0.0).unwrap();
    e.eq(hxy.rate, Rate::new(1, 14), "hWER(X,Y) γ=0");
    e.eq(hxz.rate, Rate::new(3, 14), "hWER(X,Z) γ=0");
    let printed_xy = listing(&[
        (1, 8), (2, 5), (3, 10), (4, 11), (5, 12), (6, 9), (7, 3),
        (8, 7), (9, 1), (10, 2), (11, 0), (12, 4), (13, 13), (14, 6),
    ]);
    let printed_xz = listing(&[
        (1, 1), (2, 2), (3, 3), (4, 4), (5, 5), (6, 12), (7, 7),
        (8, 8), (9, 9), (10, 10), (11, 11), (12, 0), (13, 6), (14, 13),
    ]);
    for (name, hyp, printed, rho) in [
        ("X,Y", &y, &printed_xy, Rate::new(71, 98)),
        ("X,Z", &z, &printed_xz, Rate::new(13, 98)),
    ] {
        let m = CostMatrix::build(&x, hyp, 0.0).unwrap();
        let best = solve_assignment(&m).cost;
        e.that(
            (m.alignment_cost(printed) - best).abs() < 1e-12,
            format!("printed {name} alignment not optimal at γ=0"),
        );
        let r = nsfd_of_alignment(printed, x.len(), hyp.len()).unwrap();
        e.eq(r, rho, &format!("ρ({name})"));
    }
    e.eq(nsfd_of_alignment(&printed_xy, 14, 13).unwrap().rounded_percent(1), 72.4, "ρ(X,Y) %");
    e.eq(nsfd_of_alignment(&printed_xz, 14, 13).unwrap().rounded_percent(1), 13.3, "ρ(X,Z) %");

    let reg = hwer(&x, &z, 1.0).unwrap();
    e.eq(reg.rate, Rate::new(3, 14), "hWER(X,Z) γ=1");
    let rho = nsfd_of_alignment(&reg.alignment, 14, 13).unwrap();
    e.eq(rho, Rate::new(1, 98), "ρ(X,Z) γ=1");
    e.eq(rho.rounded_percent(1), 1.0, "ρ(X,Z) γ=1 %");

    let reg_xy = hwer(&x, &y, 1.0).unwrap();
    e.eq(hcer(&x, &y, &reg_xy.alignment).unwrap().0.rounded_percent(1), 8.1, "hCER(X,Y)");
    e.eq(hcer(&x, &z, &reg.alignment).unwrap().0.rounded_percent(1), 16.1, "hCER(X,Z)");

    e.eq(bwer(&split("xx a ba yy"), &split("xx ac a yy")).unwrap().rate, Rate::new(1, 4), "tiny bWER");

    let elapsed = start.elapsed().as_secs_f64();
    e.that(elapsed < 1.0, format!("runtime {elapsed:.3}s >= 1s"));
    e.finish(format!("all worked-example values exact ({elapsed:.3}s)"))
}

const FIG1_REFERENCE: &str = "Two ways of coming
at the (archetypes of)
Geometrical abstract
Quantities: 1. by
decomposing Bodies:
1. application of
metaphisics to
mathematics.
2. Method of facilitating
the Study of mathematics
";

const FIG1_HYPOTHESIS: &str = "Two ways of coming 1. application of
at the (archetypes of) metaphisics to
Geometrical abstract mathematics.
2. Method of facilitating
Quantities: 1. by
decomposing Bodies: the Study of mathematics
";

fn interleaved_columns() -> Check {
    let x = tokenize_str(FIG1_REFERENCE, "fig1");
    let y = tokenize_str(FIG1_HYPOTHESIS, "fig1");
    let r = evaluate_page(&x, &y, 1.0).map_err(|e| e.to_string())?;
    let c = r.wer_counts;
    let summary = format!(
        "N={} WER={} ({:.1}%, i={} s={} d={} c={}) bWER={:.1}%",
        r.ref_words,
        r.wer,
        r.wer.percent(),
        c.ins,
        c.sub,
        c.del,
        c.correct,
        r.bwer.percent()
    );
    let mut e = Expect::default();
    e.that(r.wer.same_ratio(&Rate::new(7, 10)), format!("WER {} is not 70.0%", r.wer));
    e.eq((c.ins, c.sub, c.del, c.correct), (4, 13, 4, 13), "i/s/d/c");
    e.eq(r.bwer.num, 0, "bWER numerator");
    e.finish(summary.clone()).map_err(|f| format!("{f} [{summary}]"))
}

fn deterministic_runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn shuffled<T: Clone>(v: &[T], keys: &[Index]) -> Vec<T> {
    let mut out = v.to_vec();
    for i in (1..out.len()).rev() {
        out.swap(i, keys[i % keys.len()].index(i + 1));
    }
    out
}

fn run_property<S: Strategy>(
    name: &str,
    strategy: S,
    test: impl Fn(S::Value) -> std::result::Result<(), TestCaseError>,
) -> std::result::Result<(), String> {
    deterministic_runner(1000)
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

fn property_suite() -> Check {
    let keys = || prop::collection::vec(any::<Index>(), 1..=8);
    let mut failures = Vec::new();
    let mut record = |r: std::result::Result<(), String>| {
        if let Err(e) = r {
            failures.push(e);
        }
    };

    record(run_property("bWER <= hWER(γ=0)", pair(40), |(x, y)| {
        let b = bwer(&x, &y).unwrap().rate;
        let h = hwer(&x, &y, 0.0).unwrap().rate;
        prop_assert!(b <= h, "bwer {} > hwer {}", b, h);
        Ok(())
    }));
    record(run_property("B - b even", pair(40), |(x, y)| {
        prop_assert_eq!((bag_distance(&x, &y) - x.len().abs_diff(y.len())) % 2, 0);
        Ok(())
    }));
    record(run_property("bag metrics permutation-invariant", (pair(40), keys(), keys()), |((x, y), kx, ky)| {
        let (px, py) = (shuffled(&x, &kx), shuffled(&y, &ky));
        prop_assert_eq!(bwer(&x, &y).unwrap().rate, bwer(&px, &py).unwrap().rate);
        prop_assert_eq!(beta_wer(&x, &y).unwrap(), beta_wer(&px, &py).unwrap());
        prop_assert_eq!(bwac(&x, &y).unwrap(), bwac(&px, &py).unwrap());
        Ok(())
    }));
    record(run_property("hWER(γ=0) hypothesis-permutation-invariant", (pair(40), keys()), |((x, y), ky)| {
        let py = shuffled(&y, &ky);
        prop_assert_eq!(hwer(&x, &y, 0.0).unwrap().rate, hwer(&x, &py, 0.0).unwrap().rate);
        Ok(())
    }));
    record(run_property("D >= b", (pair(40), 0.0..10.0f64), |((x, y), gamma)| {
        let h = hwer(&x, &y, gamma).unwrap();
        prop_assert!(h.dummy_pairs >= h.length_gap);
        Ok(())
    }));
    record(run_property("all metrics 0 when X = Y", words(1, 40), |x| {
        let xs = strs(&x);
        let r = evaluate_words("p", &xs, &xs, 1.0).unwrap();
        for rate in [r.wer, r.cer, r.beta_wer, r.bwer, r.hwer, r.hcer, r.nsfd] {
            prop_assert_eq!(rate.num, 0);
        }
        Ok(())
    }));
    record(run_property("trace replay reconstructs Y", pair(40), |(x, y)| {
        let out = edit_distance(&x, &y);
        let rebuilt: Vec<&String> = apply_trace(&out.trace, &x, &y);
        prop_assert_eq!(rebuilt, y.iter().collect::<Vec<_>>());
        Ok(())
    }));

    if failures.is_empty() {
        Ok("7 properties x 1000 instances (<= 40 words)".into())
    } else {
        Err(failures.join("; "))
    }
}

fn brute_force_oracles() -> Check {
    let edit = deterministic_runner(1000)
        .run(&(words(0, 6), words(0, 6)), |(x, y)| {
            prop_assert_eq!(edit_distance(&x, &y).distance, brute_edit(&x, &y));
            prop_assert_eq!(edit_counts(&x, &y).errors(), brute_edit(&x, &y));
            Ok(())
        })
        .map_err(|e| format!("edit distance: {e}"));
    let assign = deterministic_runner(1000)
        .run(
            &(words(1, 7), words(0, 7), prop_oneof![Just(0.0), Just(1.0), 0.0..20.0f64]),
            |(x, y, gamma)| {
                let got = solve_assignment(&CostMatrix::build(&x, &y, gamma).unwrap()).cost;
                let want = brute_assignment(&x, &y, gamma);
                prop_assert!((got - want).abs() < 1e-9, "solver {} vs exhaustive {}", got, want);
                Ok(())
            },
        )
        .map_err(|e| format!("assignment: {e}"));
    match (edit, assign) {
        (Ok(()), Ok(())) => Ok("edit distance (<= 6 tokens) and assignment (<= 7 words/side) x 1000 each".into()),
        (a, b) => Err([a.err(), b.err()].into_iter().flatten().collect::<Vec<_>>().join("; ")),
    }
}

fn evaluate_corpus(refs: &[PageTranscript], hyps: &[PageTranscript], gamma: f64) -> CorpusReport {
    let reports: Vec<_> = refs
        .iter()
        .zip(hyps)
        .map(|(x, y)| evaluate_page(x, y, gamma).expect("non-empty synthetic page"))
        .collect();
    aggregate(&reports).expect("non-empty corpus")
}

fn mean_page_nsfd(c: &CorpusReport) -> f64 {
    c.pages.iter().map(|p| p.nsfd.value()).sum::<f64>() / c.pages.len() as f64
}

fn pct(v: f64) -> String {
    format!("{:.2}", 100.0 * v)
}

fn simulation_trends() -> Check {
    let corpus = SyntheticCorpus::default().generate();
    let total_words: usize = corpus.iter().map(PageTranscript::num_words).sum();
    let line_counts: Vec<usize> = corpus.iter().map(PageTranscript::num_lines).collect();
    let mut e = Expect::default();
    let mut notes = Vec::new();

    // (a) line swaps at distances 4..7, same seed per page for every S
    let (lo, hi) = (4, 7);
    let mut prev: Option<(f64, f64)> = None;
    let mut ratios = Vec::new();
    for s in 0..=8 {
        let hyps: Vec<_> = corpus
            .iter()
            .enumerate()
            .map(|(k, p)| swap_lines(p, s, lo, hi, &mut rng_from_seed(1000 + k as u64)).page)
            .collect();
        let c = evaluate_corpus(&corpus, &hyps, 1.0);
        e.eq(c.bwer.num, 0, &format!("swap S={s} bWER numerator"));
        let (w, rho) = (c.wer.value(), mean_page_nsfd(&c));
        if let Some((pw, prho)) = prev {
            e.that(w > pw, format!("swap WER not increasing at S={s}: {} -> {}", pct(pw), pct(w)));
            e.that(rho > prho, format!("swap NSFD not increasing at S={s}: {} -> {}", pct(prho), pct(rho)));
        }
        if (1..=4).contains(&s) {
            let predicted = predict_nsfd_swaps(s, lo, hi, &line_counts).unwrap();
            let rel = (rho - predicted).abs() / predicted;
            ratios.push(format!("S={s}:{}/{}", pct(rho), pct(predicted)));
            e.that(rel <= 0.30, format!("swap S={s} NSFD {} vs predicted {} ({:.0}% off)", pct(rho), pct(predicted), 100.0 * rel));
        }
        prev = Some((w, rho));
    }
    notes.push(format!("swap NSFD measured/predicted % {}", ratios.join(" ")));

    // (b) line splits: bWER increase against two errors per in-word split
    let mut split_notes = Vec::new();
    for s in [1usize, 2, 4, 8] {
        let mut in_word = 0usize;
        let hyps: Vec<_> = corpus
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let d = split_lines(p, s, &mut rng_from_seed(2000 + k as u64));
                in_word += d
                    .ops
                    .iter()
                    .filter(|op| matches!(op, Distortion::Split { in_word: true, .. }))
                    .count();
                d.page
            })
            .collect();
        let c = evaluate_corpus(&corpus, &hyps, 1.0);
        let measured = c.bwer.value();
        let predicted = 2.0 * in_word as f64 / total_words as f64;
        let prior = predict_bwer_split_increase(s, corpus.len(), total_words);
        split_notes.push(format!("S={s}:{}/{} (a priori {})", pct(measured), pct(predicted), pct(prior)));
        if in_word == 0 {
            e.eq(c.bwer.num, 0, &format!("split S={s} bWER without in-word splits"));
        } else {
            let rel = (measured - predicted).abs() / predicted;
            e.that(rel <= 0.5, format!("split S={s} bWER {} vs predicted {}", pct(measured), pct(predicted)));
        }
    }
    notes.push(format!("split bWER measured/predicted % {}", split_notes.join(" ")));

    // (c) word-level character distortion
    let mut char_notes = Vec::new();
    for n in 1..=6u32 {
        let cfg = DistortionConfig {
            tcer_step: n,
            ..DistortionConfig::new(DistortionMode::CharWordLevel, 3000 + n as u64)
        };
        let hyps: Vec<_> = corpus
            .iter()
            .enumerate()
            .map(|(k, p)| distort_chars(p, &cfg, &mut rng_from_seed(cfg.seed * 1000 + k as u64)).unwrap().page)
            .collect();
        let c = evaluate_corpus(&corpus, &hyps, 1.0);
        let target = tcer(n) / 100.0;
        let measured = c.cer.value();
        let rel = (measured - target).abs() / target;
        e.that(rel <= 0.10, format!("n={n} CER {} vs tCER {}", pct(measured), pct(target)));
        let (w, b, h) = (c.wer.value(), c.bwer.value(), c.hwer.value());
        let spread = w.max(b).max(h) - w.min(b).min(h);
        e.that(spread <= 0.01, format!("n={n} WER/bWER/hWER spread {} points", pct(spread)));
        e.that(c.nsfd < 0.01, format!("n={n} NSFD {}", pct(c.nsfd)));
        char_notes.push(format!("n={n}:CER {} WER {} bWER {} hWER {} NSFD {}", pct(measured), pct(w), pct(b), pct(h), pct(c.nsfd)));
    }
    notes.push(char_notes.join(" | "));

    let summary = notes.join("\n      ");
    e.finish(summary.clone()).map_err(|f| format!("{f}\n      {summary}"))
}

fn gamma_sweep() -> Check {
    let corpus = SyntheticCorpus::default().generate();
    let cfg = DistortionConfig {
        tcer_step: 1,
        ..DistortionConfig::new(DistortionMode::CharWordLevel, 4000)
    };
    let hyps: Vec<_> = corpus
        .iter()
        .enumerate()
        .map(|(k, p)| {
            let mut rng = rng_from_seed(4000 + k as u64);
            let d = distort_chars(p, &cfg, &mut rng).unwrap();
            swap_lines(&d.page, 4, 4, 7, &mut rng).page
        })
        .collect();
    let gammas = [0.0, 1e-4, 0.1, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0, 100.0];
    let mut e = Expect::default();
    let mut rows = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for &g in &gammas {
        let c = evaluate_corpus(&corpus, &hyps, g);
        let (h, rho, b) = (c.hwer.value(), c.nsfd, c.bwer.value());
        rows.push(format!("γ={g}:hWER {} NSFD {}", pct(h), pct(rho)));
        if let Some((ph, prho)) = prev {
            e.that(rho <= prho + 1e-12, format!("NSFD rises at γ={g}: {} -> {}", pct(prho), pct(rho)));
            e.that(h >= ph - 1e-12, format!("hWER falls at γ={g}: {} -> {}", pct(ph), pct(h)));
        }
        if g <= 1.0 {
            e.that((h - b).abs() <= 0.001, format!("γ={g} hWER {} vs bWER {}", pct(h), pct(b)));
        }
        prev = Some((h, rho));
    }
    let summary = rows.join(" ");
    e.finish(summary.clone()).map_err(|f| format!("{f}\n      {summary}"))
}

/// Fastest of at least three calls, repeating cheap calls for a stable
/// reading.
fn time_it(mut f: impl FnMut()) -> f64 {
    let budget = Instant::now();
    let mut best = f64::INFINITY;
    let mut reps = 0u32;
    while reps < 3 || (budget.elapsed().as_secs_f64() < 0.05 && reps < 200) {
        let start = Instant::now();
        f();
        best = best.min(start.elapsed().as_secs_f64());
        reps += 1;
    }
    best
}

/// Residual sum of squares of the least-squares fit `t ≈ c + a·N^p`.
fn power_fit_residual(sizes: &[f64], times: &[f64], p: i32) -> f64 {
    let xs: Vec<f64> = sizes.iter().map(|n| n.powi(p)).collect();
    let k = xs.len() as f64;
    let (mx, mt) = (xs.iter().sum::<f64>() / k, times.iter().sum::<f64>() / k);
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxt: f64 = xs.iter().zip(times).map(|(x, t)| (x - mx) * (t - mt)).sum();
    let a = sxt / sxx;
    let c = mt - a * mx;
    xs.iter().zip(times).map(|(x, t)| (t - c - a * x).powi(2)).sum()
}

fn best_degree(sizes: &[f64], times: &[f64]) -> (i32, [f64; 3]) {
    let r = [1, 2, 3].map(|p| power_fit_residual(sizes, times, p));
    let best = (0..3).min_by(|&a, &b| r[a].total_cmp(&r[b])).unwrap() as i32 + 1;
    (best, r)
}

fn complexity_shape() -> Check {
    let sizes = [50usize, 100, 200, 400, 700, 1000, 1400, 2000];
    let long = SyntheticCorpus {
        pages: 1,
        lines: 300,
        words: 8,
        seed: 5,
        ..SyntheticCorpus::default()
    }
    .generate()
    .remove(0);
    let all: Vec<&str> = long.flatten();
    let cfg = DistortionConfig {
        tcer_step: 1,
        ..DistortionConfig::new(DistortionMode::CharWordLevel, 5000)
    };
    let (mut tb, mut tw, mut th) = (Vec::new(), Vec::new(), Vec::new());
    for &n in &sizes {
        let lines: Vec<String> = all[..n].chunks(8).map(|c| c.join(" ")).collect();
        let page = PageTranscript::from_lines("p", &lines);
        let mut rng = rng_from_seed(5000 + n as u64);
        let d = distort_chars(&page, &cfg, &mut rng).unwrap();
        let hyp = swap_lines(&d.page, 4, 4, 7, &mut rng).page;
        let (x, y) = (page.flatten(), hyp.flatten());
        tb.push(time_it(|| {
            std::hint::black_box(bwer(&x, &y).unwrap());
        }));
        tw.push(time_it(|| {
            std::hint::black_box(wer(&x, &y).unwrap());
        }));
        th.push(time_it(|| {
            std::hint::black_box(hwer(&x, &y, 1.0).unwrap());
        }));
    }
    let ns: Vec<f64> = sizes.iter().map(|&n| n as f64).collect();
    let mut e = Expect::default();
    let mut notes = Vec::new();
    for (name, times, want) in [("bWER", &tb, 1), ("WER", &tw, 2), ("hWER", &th, 3)] {
        let (best, r) = best_degree(&ns, times);
        let slope = (times[times.len() - 1] / times[times.len() - 2]).ln()
            / (ns[ns.len() - 1] / ns[ns.len() - 2]).ln();
        notes.push(format!(
            "{name}: best degree {best} (SSR {:.2e}/{:.2e}/{:.2e}, t(2000)={:.4}s, local exponent {:.2})",
            r[0],
            r[1],
            r[2],
            times[times.len() - 1],
            slope
        ));
        e.eq(best, want, &format!("{name} best-fitting degree"));
    }
    let summary = notes.join("\n      ");
    e.finish(summary.clone()).map_err(|f| format!("{f}\n      {summary}"))
}

fn not_reproducible() -> Check {
    Ok("Table 1 and Table 3 absolute values and the absolute curves of Figs. 4-7 need the original \
        datasets and trained recognizers; replaced by criteria 5-7"
        .into())
}

fn main() {
    let criteria: [(&str, fn() -> Check); 8] = [
        ("golden worked examples", golden_examples),
        ("interleaved two-column fixture: WER 70.0%, bWER 0%", interleaved_columns),
        ("property suite", property_suite),
        ("brute-force oracles", brute_force_oracles),
        ("simulation trends", simulation_trends),
        ("γ-sweep monotonicity", gamma_sweep),
        ("complexity shape", complexity_shape),
        ("not reproducible at desk scale (documented)", not_reproducible),
    ];
    let filter: Option<usize> = std::env::args().skip(1).find_map(|a| a.parse().ok());
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let id = i + 1;
        if filter.is_some_and(|f| f != id) {
            continue;
        }
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {id}: {name} [{secs:.2}s]\n      {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {id}: {name} [{secs:.2}s]\n      {detail}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}
