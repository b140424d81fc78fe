//! `htreval`: evaluate page transcripts and run distortion experiments.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 on data errors (missing
//! or unreadable pages, empty references, invalid UTF-8).

mod corpus;
mod eval;
mod report;
mod simulate;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use htreval::sim::{DistortionConfig, DistortionMode, OpMix};
use htreval::EvalError;

#[derive(Parser)]
#[command(name = "htreval", version, about = "Reading-order aware evaluation of full-page transcripts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compare a hypothesis tree against a reference tree.
    Eval(EvalArgs),
    /// Write a distorted copy of a reference tree, or sweep a distortion
    /// parameter and tabulate the metrics.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Reference tree: one `.txt` file per page, one line per text line.
    #[arg(long = "ref", value_name = "DIR")]
    pub reference: PathBuf,
    /// Hypothesis tree, paired with the reference by relative path.
    #[arg(long, value_name = "DIR")]
    pub hyp: PathBuf,
    /// Reading-order regularization factor for the assignment metrics.
    #[arg(long, default_value_t = htreval::DEFAULT_GAMMA, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
    /// Include one entry per page.
    #[arg(long)]
    pub per_page: bool,
    /// Worker threads (default: all cores).
    #[arg(long)]
    pub jobs: Option<usize>,
    /// Output file (default: stdout).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
    /// Include wall-clock timings in JSON output (makes reruns differ).
    #[arg(long)]
    pub timings: bool,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    /// Character edits inside words.
    CharWord,
    /// Character edits over whole lines, whitespace included.
    CharLine,
    /// Swap line pairs.
    Swap,
    /// Split lines and relocate a fragment.
    Split,
}

impl From<Mode> for DistortionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::CharWord => DistortionMode::CharWordLevel,
            Mode::CharLine => DistortionMode::CharLineLevel,
            Mode::Swap => DistortionMode::LineSwap,
            Mode::Split => DistortionMode::LineSplit,
        }
    }
}

#[derive(Args)]
pub struct SimulateArgs {
    #[arg(long = "ref", value_name = "DIR")]
    pub reference: PathBuf,
    #[arg(long, value_enum)]
    pub mode: Mode,
    /// Character distortion step: target CER is 3.25·n percent.
    #[arg(long, default_value_t = 1)]
    pub n: u32,
    /// Swaps or splits per page.
    #[arg(long = "S", value_name = "S", default_value_t = 1)]
    pub count: usize,
    /// Inclusive swap distance range in lines.
    #[arg(long, num_args = 2, value_names = ["MIN", "MAX"], default_values_t = [1, 1])]
    pub range: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Substitution share of character edits.
    #[arg(long)]
    pub sub: Option<f64>,
    /// Insertion share of character edits.
    #[arg(long)]
    pub ins: Option<f64>,
    /// Deletion share of character edits.
    #[arg(long)]
    pub del: Option<f64>,
    /// Probability that an inserted or substituted character is a space
    /// (line-level mode).
    #[arg(long)]
    pub whitespace: Option<f64>,
    /// Output directory.
    #[arg(long, value_name = "DIR")]
    pub out: PathBuf,
    /// Sweep `n` (character modes) or `S` from 0 to the given value and
    /// write a TSV of measured and predicted metrics instead of pages.
    #[arg(long)]
    pub sweep: bool,
    /// Regularization factor used when sweeping.
    #[arg(long, default_value_t = htreval::DEFAULT_GAMMA, allow_negative_numbers = true)]
    pub gamma: f64,
    #[arg(long)]
    pub jobs: Option<usize>,
}

impl SimulateArgs {
    pub fn op_mix_is_default(&self) -> bool {
        self.sub.is_none() && self.ins.is_none() && self.del.is_none() && self.whitespace.is_none()
    }

    pub fn config(&self) -> Result<DistortionConfig> {
        let d = OpMix::default();
        Ok(DistortionConfig {
            seed: self.seed,
            mode: self.mode.into(),
            tcer_step: self.n,
            op_mix: OpMix {
                sub: self.sub.unwrap_or(d.sub),
                ins: self.ins.unwrap_or(d.ins),
                del: self.del.unwrap_or(d.del),
                whitespace: self.whitespace.unwrap_or(d.whitespace),
            },
            count: self.count,
            range: (self.range[0], self.range[1]),
        })
    }
}

/// Writes `text` to `path`, or to stdout when no path is given.
pub fn write_output(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let outcome = match &cli.command {
        Command::Eval(args) => eval::run(args),
        Command::Simulate(args) => simulate::run(args),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<EvalError>() {
                Some(EvalError::InvalidConfig(_)) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}
