//! Evaluation metrics for full-page text recognition transcripts.
//!
//! Two families of measures are provided. Order-aware ones (WER and CER
//! from the Levenshtein distance) penalize any reading-order mismatch
//! between reference and hypothesis. Order-independent ones (the
//! bag-of-words `bWER`, and `hWER`/`hCER` from a regularized minimum-cost
//! word assignment) measure recognition quality alone, while the
//! normalized Spearman footrule distance (NSFD) computed over the
//! assignment measures the reading-order mismatch separately.
//!
//! ```
//! use htreval::{agg::evaluate_page, page::tokenize_str};
//!
//! let reference = tokenize_str("one two\nthree four", "p1");
//! let hypothesis = tokenize_str("three four\none two", "p1");
//! let report = evaluate_page(&reference, &hypothesis, 1.0).unwrap();
//! assert_eq!(report.bwer.num, 0);
//! assert!(report.wer.value() > 0.0);
//! assert!(report.nsfd.value() > 0.0);
//! ```

pub mod agg;
pub mod assign;
pub mod bow;
pub mod editdist;
pub mod error;
pub mod page;
pub mod ro;
pub mod sim;
pub mod types;

pub use error::{EvalError, Result};
pub use page::{flatten, tokenize_page, PageTranscript, WordToken};
pub use types::{AlignPair, Alignment, EditCounts, Rate, Trace};

/// Regularization factor used when none is given.
pub const DEFAULT_GAMMA: f64 = 1.0;
