//! Controlled distortions of page transcripts and closed-form predictions
//! of their effect on the metrics.
//!
//! Three protocols are supported:
//!
//! * character distortion at a target rate `tCER(n) = 3.25·n` percent,
//!   either within words only (the word count never changes) or over whole
//!   lines (whitespace may be edited, splitting or joining words);
//! * swapping disjoint pairs of lines at distances drawn from `[R′, R]`;
//! * splitting lines at a character or word boundary and relocating one
//!   fragment.
//!
//! Every generator is a deterministic function of the page, its parameters
//! and the random stream, and returns the list of operations it applied.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};
use crate::page::{PageTranscript, WordToken};

/// Generator used for every simulation; its name is written to manifests.
pub type SimRng = ChaCha8Rng;

pub const RNG_ALGORITHM: &str = "ChaCha8Rng (rand_chacha 0.3)";

pub fn rng_from_seed(seed: u64) -> SimRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Induced CER per distortion step, in percent.
pub const TCER_STEP_PERCENT: f64 = 3.25;

/// Target character error rate `tCER(n)` in percent.
pub fn tcer(n: u32) -> f64 {
    TCER_STEP_PERCENT * f64::from(n)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistortionMode {
    /// Character edits inside words; whitespace untouched.
    CharWordLevel,
    /// Character edits over whole lines, whitespace included.
    CharLineLevel,
    LineSwap,
    LineSplit,
}

/// Shares of the character edit types. `whitespace` is the probability that
/// an inserted or substituted character is a space (line-level mode only).
///
/// The defaults are placeholders, not measured proportions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OpMix {
    pub sub: f64,
    pub ins: f64,
    pub del: f64,
    pub whitespace: f64,
}

impl Default for OpMix {
    fn default() -> Self {
        OpMix {
            sub: 0.6,
            ins: 0.15,
            del: 0.25,
            whitespace: 0.15,
        }
    }
}

impl OpMix {
    fn validate(&self) -> Result<()> {
        let parts = [self.sub, self.ins, self.del, self.whitespace];
        if parts.iter().any(|p| !(0.0..=1.0).contains(p)) {
            return Err(EvalError::InvalidConfig(format!("operation shares out of [0,1]: {self:?}")));
        }
        if ((self.sub + self.ins + self.del) - 1.0).abs() > 1e-9 {
            return Err(EvalError::InvalidConfig(format!(
                "substitution, insertion and deletion shares must sum to 1: {self:?}"
            )));
        }
        Ok(())
    }

    fn draw(&self, rng: &mut SimRng) -> CharOp {
        let u: f64 = rng.gen();
        if u < self.sub {
            CharOp::Sub
        } else if u < self.sub + self.ins {
            CharOp::Ins
        } else {
            CharOp::Del
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CharOp {
    Sub,
    Ins,
    Del,
}

/// Parameters of one distortion run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistortionConfig {
    pub seed: u64,
    pub mode: DistortionMode,
    /// `n` in `tCER(n) = 3.25·n` (character modes).
    pub tcer_step: u32,
    pub op_mix: OpMix,
    /// Number of swaps or splits `S` per page.
    pub count: usize,
    /// Inclusive swap distance range `[R′, R]` in lines.
    pub range: (usize, usize),
}

impl DistortionConfig {
    pub fn new(mode: DistortionMode, seed: u64) -> Self {
        DistortionConfig {
            seed,
            mode,
            tcer_step: 0,
            op_mix: OpMix::default(),
            count: 0,
            range: (1, 1),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.op_mix.validate()?;
        let (lo, hi) = self.range;
        if self.mode == DistortionMode::LineSwap && (lo == 0 || lo > hi) {
            return Err(EvalError::InvalidConfig(format!(
                "swap range must satisfy 1 <= R' <= R, got [{lo}, {hi}]"
            )));
        }
        if matches!(self.mode, DistortionMode::CharWordLevel | DistortionMode::CharLineLevel)
            && tcer(self.tcer_step) > 100.0
        {
            return Err(EvalError::InvalidConfig(format!(
                "target CER {}% exceeds 100%",
                tcer(self.tcer_step)
            )));
        }
        Ok(())
    }
}

/// Where a line was split.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind", content = "at")]
pub enum SplitPoint {
    /// Before the character at this offset of the space-joined line.
    Char(usize),
    /// Before the word at this index.
    Word(usize),
}

/// How the two fragments of a split line are placed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Relocation {
    /// The suffix goes before the prefix.
    SuffixFirst,
    /// The suffix goes after the following line.
    SuffixAfterNext,
    /// The prefix goes after the following line.
    PrefixAfterNext,
}

const RELOCATIONS: [Relocation; 3] = [
    Relocation::SuffixFirst,
    Relocation::SuffixAfterNext,
    Relocation::PrefixAfterNext,
];

/// One applied operation, for the distortion manifest. Line indices refer
/// to the input page; character operations carry word and character offsets
/// within the line (word-level mode) or character offsets in the joined
/// line (line-level mode, `word` is `None`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "op")]
pub enum Distortion {
    Substitute {
        line: usize,
        word: Option<usize>,
        offset: usize,
        from: char,
        to: char,
    },
    Insert {
        line: usize,
        word: Option<usize>,
        offset: usize,
        ch: char,
    },
    Delete {
        line: usize,
        word: Option<usize>,
        offset: usize,
        ch: char,
    },
    Swap {
        first: usize,
        second: usize,
    },
    Split {
        line: usize,
        point: SplitPoint,
        relocation: Relocation,
        /// Whether the split point falls strictly inside a word.
        in_word: bool,
    },
}

impl Distortion {
    pub fn is_char_edit(&self) -> bool {
        matches!(
            self,
            Distortion::Substitute { .. } | Distortion::Insert { .. } | Distortion::Delete { .. }
        )
    }
}

/// A distorted page with the operations that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Distorted {
    pub page: PageTranscript,
    pub ops: Vec<Distortion>,
}

/// Applies the distortion selected by `cfg.mode`.
pub fn distort_page(page: &PageTranscript, cfg: &DistortionConfig, rng: &mut SimRng) -> Result<Distorted> {
    cfg.validate()?;
    match cfg.mode {
        DistortionMode::CharWordLevel | DistortionMode::CharLineLevel => distort_chars(page, cfg, rng),
        DistortionMode::LineSwap => Ok(swap_lines(page, cfg.count, cfg.range.0, cfg.range.1, rng)),
        DistortionMode::LineSplit => Ok(split_lines(page, cfg.count, rng)),
    }
}

/// Characters used for substitutions and insertions: those of the page,
/// in a fixed order, falling back to ASCII letters.
fn page_alphabet(page: &PageTranscript) -> Vec<char> {
    let set: BTreeSet<char> = page.words().flat_map(|w| w.as_str().chars()).collect();
    if set.len() >= 2 {
        set.into_iter().collect()
    } else {
        ('a'..='z').collect()
    }
}

fn random_other(alphabet: &[char], not: char, rng: &mut SimRng) -> char {
    loop {
        let c = *alphabet.choose(rng).expect("non-empty alphabet");
        if c != not {
            return c;
        }
    }
}

/// Character-level distortion at target rate `tCER(cfg.tcer_step)`.
///
/// Each editable character is hit independently with a probability chosen
/// so that the expected number of edits is `tCER · (page characters)`,
/// where page characters include one separator between consecutive words.
pub fn distort_chars(page: &PageTranscript, cfg: &DistortionConfig, rng: &mut SimRng) -> Result<Distorted> {
    cfg.validate()?;
    let rate = tcer(cfg.tcer_step) / 100.0;
    if rate == 0.0 || page.num_words() == 0 {
        return Ok(Distorted {
            page: page.clone(),
            ops: Vec::new(),
        });
    }
    match cfg.mode {
        DistortionMode::CharWordLevel => Ok(distort_words(page, rate, &cfg.op_mix, rng)),
        DistortionMode::CharLineLevel => Ok(distort_lines(page, rate, &cfg.op_mix, rng)),
        other => Err(EvalError::InvalidConfig(format!(
            "character distortion needs a character mode, got {other:?}"
        ))),
    }
}

fn distort_words(page: &PageTranscript, rate: f64, mix: &OpMix, rng: &mut SimRng) -> Distorted {
    let alphabet = page_alphabet(page);
    let total = page.num_chars() as f64;
    let editable: usize = page.words().map(WordToken::char_len).sum();
    let p = (rate * total / editable as f64).min(1.0);
    let mut ops = Vec::new();
    let mut lines = Vec::with_capacity(page.num_lines());
    for (li, line) in page.lines().iter().enumerate() {
        let mut out_line = Vec::with_capacity(line.len());
        for (wi, word) in line.iter().enumerate() {
            let chars: Vec<char> = word.as_str().chars().collect();
            let mut out = String::with_capacity(word.as_str().len() + 2);
            let mut offset = 0usize;
            for (ci, &c) in chars.iter().enumerate() {
                if !rng.gen_bool(p) {
                    out.push(c);
                    offset += 1;
                    continue;
                }
                let mut op = mix.draw(rng);
                // a word may not vanish: a deletion that would empty it becomes a substitution
                if op == CharOp::Del && out.is_empty() && ci + 1 == chars.len() {
                    op = CharOp::Sub;
                }
                match op {
                    CharOp::Sub => {
                        let to = random_other(&alphabet, c, rng);
                        out.push(to);
                        ops.push(Distortion::Substitute {
                            line: li,
                            word: Some(wi),
                            offset,
                            from: c,
                            to,
                        });
                        offset += 1;
                    }
                    CharOp::Ins => {
                        let ch = *alphabet.choose(rng).expect("non-empty alphabet");
                        out.push(ch);
                        ops.push(Distortion::Insert {
                            line: li,
                            word: Some(wi),
                            offset,
                            ch,
                        });
                        out.push(c);
                        offset += 2;
                    }
                    CharOp::Del => {
                        ops.push(Distortion::Delete {
                            line: li,
                            word: Some(wi),
                            offset,
                            ch: c,
                        });
                    }
                }
            }
            out_line.push(WordToken::new(out).expect("word edits never add whitespace or empty a word"));
        }
        lines.push(out_line);
    }
    Distorted {
        page: PageTranscript::new(page.page_id.clone(), lines),
        ops,
    }
}

fn distort_lines(page: &PageTranscript, rate: f64, mix: &OpMix, rng: &mut SimRng) -> Distorted {
    let alphabet = page_alphabet(page);
    let total = page.num_chars() as f64;
    // separators between lines are not editable
    let editable: usize = page
        .lines()
        .iter()
        .map(|l| crate::page::joined_char_len(l))
        .sum();
    let p = (rate * total / editable.max(1) as f64).min(1.0);
    let draw_char = |rng: &mut SimRng, not: Option<char>| -> char {
        if not != Some(' ') && rng.gen_bool(mix.whitespace) {
            ' '
        } else {
            match not {
                Some(c) => random_other(&alphabet, c, rng),
                None => *alphabet.choose(rng).expect("non-empty alphabet"),
            }
        }
    };
    let mut ops = Vec::new();
    let mut lines = Vec::with_capacity(page.num_lines());
    for (li, line) in page.lines().iter().enumerate() {
        let chars = crate::page::join_chars(line);
        let mut out = String::with_capacity(chars.len() + 4);
        let mut offset = 0usize;
        for &c in &chars {
            if !rng.gen_bool(p) {
                out.push(c);
                offset += 1;
                continue;
            }
            match mix.draw(rng) {
                CharOp::Sub => {
                    let to = draw_char(rng, Some(c));
                    out.push(to);
                    ops.push(Distortion::Substitute {
                        line: li,
                        word: None,
                        offset,
                        from: c,
                        to,
                    });
                    offset += 1;
                }
                CharOp::Ins => {
                    let ch = draw_char(rng, None);
                    out.push(ch);
                    out.push(c);
                    ops.push(Distortion::Insert {
                        line: li,
                        word: None,
                        offset,
                        ch,
                    });
                    offset += 2;
                }
                CharOp::Del => {
                    ops.push(Distortion::Delete {
                        line: li,
                        word: None,
                        offset,
                        ch: c,
                    });
                }
            }
        }
        lines.push(
            out.split_whitespace()
                .map(|w| WordToken::new(w).expect("whitespace-split piece"))
                .collect(),
        );
    }
    Distorted {
        page: PageTranscript::new(page.page_id.clone(), lines),
        ops,
    }
}

/// Swaps up to `count` disjoint line pairs at distances in `[min_dist, max_dist]`.
///
/// For each swap a distance is drawn uniformly; if no unswapped pair exists
/// at that distance, the remaining distances of the range are tried in
/// random order. Lines already swapped are never swapped again, so fewer
/// than `count` swaps happen when the page runs out of candidates.
pub fn swap_lines(page: &PageTranscript, count: usize, min_dist: usize, max_dist: usize, rng: &mut SimRng) -> Distorted {
    let mut lines = page.lines().to_vec();
    let m = lines.len();
    let mut swapped = vec![false; m];
    let mut ops = Vec::new();
    let min_dist = min_dist.max(1);
    for _ in 0..count {
        let mut distances: Vec<usize> = (min_dist..=max_dist).collect();
        let mut done = false;
        while !distances.is_empty() {
            let di = rng.gen_range(0..distances.len());
            let r = distances.swap_remove(di);
            let candidates: Vec<usize> = (0..m.saturating_sub(r))
                .filter(|&i| !swapped[i] && !swapped[i + r])
                .collect();
            if let Some(&i) = candidates.choose(rng) {
                lines.swap(i, i + r);
                swapped[i] = true;
                swapped[i + r] = true;
                ops.push(Distortion::Swap {
                    first: i,
                    second: i + r,
                });
                done = true;
                break;
            }
        }
        if !done {
            break;
        }
    }
    Distorted {
        page: PageTranscript::new(page.page_id.clone(), lines),
        ops,
    }
}

/// Probability that a split happens at character level rather than at a
/// word boundary (odds 1:4).
pub const CHAR_SPLIT_PROBABILITY: f64 = 0.2;

/// Splits `count` distinct random lines and relocates one fragment of each.
///
/// A split point is a character position (probability 1/5) or a word gap
/// (4/5), uniform over the internal positions of the line. Relocation is
/// one of [`Relocation`]'s three options, equiprobable. When the split line
/// is the last one, "after the following line" means the end of the page.
/// Lines with fewer than two characters cannot be split; lines with a
/// single word are always split at character level.
pub fn split_lines(page: &PageTranscript, count: usize, rng: &mut SimRng) -> Distorted {
    let mut eligible: Vec<usize> = page
        .lines()
        .iter()
        .enumerate()
        .filter(|(_, l)| crate::page::joined_char_len(l) >= 2)
        .map(|(i, _)| i)
        .collect();
    eligible.shuffle(rng);
    eligible.truncate(count);
    eligible.sort_unstable_by(|a, b| b.cmp(a));

    let mut lines: Vec<Vec<WordToken>> = page.lines().to_vec();
    let mut ops = Vec::with_capacity(eligible.len());
    // processed bottom-up so earlier line indices stay valid
    for li in eligible {
        let line = &lines[li];
        let char_level = line.len() < 2 || rng.gen_bool(CHAR_SPLIT_PROBABILITY);
        let (prefix, suffix, point, in_word) = if char_level {
            let chars = crate::page::join_chars(line);
            let at = rng.gen_range(1..chars.len());
            let in_word = !chars[at - 1].is_whitespace() && !chars[at].is_whitespace();
            let prefix: String = chars[..at].iter().collect();
            let suffix: String = chars[at..].iter().collect();
            (
                crate::page::tokenize_str(&prefix, "").into_lines().concat(),
                crate::page::tokenize_str(&suffix, "").into_lines().concat(),
                SplitPoint::Char(at),
                in_word,
            )
        } else {
            let gap = rng.gen_range(1..line.len());
            (line[..gap].to_vec(), line[gap..].to_vec(), SplitPoint::Word(gap), false)
        };
        let relocation = *RELOCATIONS.choose(rng).expect("three options");
        let has_next = li + 1 < lines.len();
        match relocation {
            Relocation::SuffixFirst => {
                lines[li] = suffix;
                lines.insert(li + 1, prefix);
            }
            Relocation::SuffixAfterNext => {
                lines[li] = prefix;
                let at = if has_next { li + 2 } else { li + 1 };
                lines.insert(at, suffix);
            }
            Relocation::PrefixAfterNext => {
                lines[li] = suffix;
                let at = if has_next { li + 2 } else { li + 1 };
                lines.insert(at, prefix);
            }
        }
        ops.push(Distortion::Split {
            line: li,
            point,
            relocation,
            in_word,
        });
    }
    ops.reverse();
    Distorted {
        page: PageTranscript::new(page.page_id.clone(), lines),
        ops,
    }
}

/// Expected NSFD after `count` swaps per page at distances in `[R′, R]`:
/// `S(R′+R)/K · Σ_k 1/⌊M_k²/2⌋` over the line counts `M_k` of `K` pages.
pub fn predict_nsfd_swaps(count: usize, min_dist: usize, max_dist: usize, line_counts: &[usize]) -> Result<f64> {
    let sum = inverse_normalizer_sum(line_counts.iter().map(|&m| (m, 1.0)))?;
    let k = line_counts.len() as f64;
    Ok(count as f64 * (min_dist + max_dist) as f64 / k * sum)
}

/// Expected NSFD after `count` line splits per page:
/// `(7/6)(S/K) Σ_k (N_k/M_k)/⌊M_k²/2⌋` over `(M_k, N_k)` = (lines, words).
pub fn predict_nsfd_splits(count: usize, pages: &[(usize, usize)]) -> Result<f64> {
    let sum = inverse_normalizer_sum(pages.iter().map(|&(m, n)| (m, n as f64 / m.max(1) as f64)))?;
    let k = pages.len() as f64;
    Ok(7.0 / 6.0 * count as f64 / k * sum)
}

fn inverse_normalizer_sum(items: impl Iterator<Item = (usize, f64)>) -> Result<f64> {
    let mut sum = 0.0;
    let mut any = false;
    for (m, weight) in items {
        if m < 2 {
            return Err(EvalError::InvalidConfig(format!(
                "every page needs at least two lines, got {m}"
            )));
        }
        sum += weight / ((m * m / 2) as f64);
        any = true;
    }
    if !any {
        return Err(EvalError::InvalidConfig("no pages".into()));
    }
    Ok(sum)
}

/// Expected bWER increase from `count` splits per page over `pages` pages
/// with `total_words` reference words: a quarter of splits per page falls
/// inside a word, and each such split costs two word errors.
pub fn predict_bwer_split_increase(count: usize, pages: usize, total_words: usize) -> f64 {
    2.0 * count as f64 * (pages as f64 / 4.0) / total_words as f64
}

/// Expected WER in percent for tCER step `n` and mean word length.
pub fn predict_twer(n: u32, avg_word_len: f64) -> f64 {
    avg_word_len * tcer(n)
}

/// Parameters of a synthetic corpus.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticCorpus {
    pub pages: usize,
    /// Mean number of lines per page (actual counts vary by ±20%).
    pub lines: usize,
    /// Mean number of words per line (actual counts vary by ±25%).
    pub words: usize,
    pub vocabulary: usize,
    pub seed: u64,
}

impl Default for SyntheticCorpus {
    fn default() -> Self {
        SyntheticCorpus {
            pages: 30,
            lines: 15,
            words: 8,
            vocabulary: 3000,
            seed: 1,
        }
    }
}

const SYLLABLES: [&str; 24] = [
    "ba", "ce", "di", "fo", "gu", "ha", "je", "ki", "lo", "mu", "na", "pe", "qui", "ro", "su", "ta", "ve", "wi",
    "xo", "ya", "ze", "st", "an", "or",
];

impl SyntheticCorpus {
    /// Generates pages of pseudo-words drawn with Zipfian frequencies, so
    /// frequent words recur across lines as in natural text.
    pub fn generate(&self) -> Vec<PageTranscript> {
        let mut rng = rng_from_seed(self.seed);
        let mut vocab = BTreeSet::new();
        let mut list = Vec::with_capacity(self.vocabulary);
        while list.len() < self.vocabulary {
            let syllables = rng.gen_range(1..=3);
            let mut w: String = (0..syllables).map(|_| *SYLLABLES.choose(&mut rng).unwrap()).collect();
            if rng.gen_bool(0.08) {
                w.push(*[',', '.', ';'].choose(&mut rng).unwrap());
            }
            if vocab.insert(w.clone()) {
                list.push(w);
            }
        }
        let weights: Vec<f64> = (1..=list.len()).map(|r| 1.0 / r as f64).collect();
        let dist = rand::distributions::WeightedIndex::new(&weights).expect("positive weights");

        (0..self.pages)
            .map(|p| {
                let m = jitter(self.lines, 0.2, &mut rng).max(2);
                let lines = (0..m)
                    .map(|_| {
                        let n = jitter(self.words, 0.25, &mut rng).max(1);
                        (0..n)
                            .map(|_| WordToken::new(list[rng.sample(&dist)].clone()).expect("generated word"))
                            .collect()
                    })
                    .collect();
                PageTranscript::new(format!("page{p:03}"), lines)
            })
            .collect()
    }
}

fn jitter(mean: usize, spread: f64, rng: &mut SimRng) -> usize {
    let delta = (mean as f64 * spread).round() as i64;
    (mean as i64 + rng.gen_range(-delta..=delta)).max(0) as usize
}
