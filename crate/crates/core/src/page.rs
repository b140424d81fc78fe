//! Word tokens, page transcripts and plain-text ingestion.
//!
//! A page is an ordered list of text lines, each an ordered list of words.
//! Words are maximal runs of non-whitespace characters; punctuation stays
//! attached to the word it touches (`"be,"` is one token). No case folding
//! or other normalization is applied.

use serde::{Deserialize, Serialize};

use crate::error::{EvalError, Result};

/// A single word instance. Never empty, never contains whitespace.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct WordToken(String);

impl WordToken {
    pub fn new(text: impl Into<String>) -> Result<Self> {
        let text = text.into();
        if text.is_empty() || text.chars().any(char::is_whitespace) {
            return Err(EvalError::InvalidToken(text));
        }
        Ok(WordToken(text))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// Length in Unicode scalar values.
    pub fn char_len(&self) -> usize {
        self.0.chars().count()
    }
}

impl AsRef<str> for WordToken {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl std::fmt::Display for WordToken {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl TryFrom<String> for WordToken {
    type Error = EvalError;

    fn try_from(value: String) -> Result<Self> {
        WordToken::new(value)
    }
}

impl From<WordToken> for String {
    fn from(value: WordToken) -> Self {
        value.0
    }
}

/// Reference or hypothesis transcript of one page.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PageTranscript {
    pub page_id: String,
    lines: Vec<Vec<WordToken>>,
}

impl PageTranscript {
    pub fn new(page_id: impl Into<String>, lines: Vec<Vec<WordToken>>) -> Self {
        PageTranscript {
            page_id: page_id.into(),
            lines,
        }
    }

    /// Builds a page from already-split text lines; each line is tokenized on whitespace.
    pub fn from_lines<S: AsRef<str>>(page_id: impl Into<String>, lines: &[S]) -> Self {
        let lines = lines.iter().map(|l| split_line(l.as_ref())).collect();
        PageTranscript::new(page_id, lines)
    }

    pub fn lines(&self) -> &[Vec<WordToken>] {
        &self.lines
    }

    pub fn into_lines(self) -> Vec<Vec<WordToken>> {
        self.lines
    }

    /// Number of text lines (M).
    pub fn num_lines(&self) -> usize {
        self.lines.len()
    }

    /// Number of running words (N).
    pub fn num_words(&self) -> usize {
        self.lines.iter().map(Vec::len).sum()
    }

    /// Characters of the page text with one separator between consecutive words.
    pub fn num_chars(&self) -> usize {
        joined_char_len(&self.flatten())
    }

    pub fn words(&self) -> impl Iterator<Item = &WordToken> + '_ {
        self.lines.iter().flatten()
    }

    /// The page word sequence: all lines concatenated in stored order.
    pub fn flatten(&self) -> Vec<&str> {
        self.words().map(WordToken::as_str).collect()
    }

    /// Serializes back to text: words joined by single spaces, lines by `\n`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for line in &self.lines {
            for (i, w) in line.iter().enumerate() {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(w.as_str());
            }
            out.push('\n');
        }
        out
    }
}

fn split_line(line: &str) -> Vec<WordToken> {
    // split_whitespace never yields empty or whitespace-bearing pieces
    line.split_whitespace()
        .map(|w| WordToken(w.to_string()))
        .collect()
}

/// Parses raw page bytes: one physical line per text line, words split on
/// runs of Unicode whitespace. Empty lines are kept as empty word lists.
pub fn tokenize_page(raw: &[u8], page_id: impl Into<String>) -> Result<PageTranscript> {
    let text = std::str::from_utf8(raw).map_err(|e| EvalError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    Ok(tokenize_str(text, page_id))
}

pub fn tokenize_str(text: &str, page_id: impl Into<String>) -> PageTranscript {
    let lines = text.lines().map(split_line).collect();
    PageTranscript::new(page_id, lines)
}

/// Concatenation of a page's lines in order.
pub fn flatten(page: &PageTranscript) -> Vec<&str> {
    page.flatten()
}

/// Joins words with single spaces into a sequence of Unicode scalar values.
pub fn join_chars<S: AsRef<str>>(words: &[S]) -> Vec<char> {
    let mut out = Vec::with_capacity(joined_char_len(words));
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            out.push(' ');
        }
        out.extend(w.as_ref().chars());
    }
    out
}

pub fn joined_char_len<S: AsRef<str>>(words: &[S]) -> usize {
    let chars: usize = words.iter().map(|w| w.as_ref().chars().count()).sum();
    chars + words.len().saturating_sub(1)
}
