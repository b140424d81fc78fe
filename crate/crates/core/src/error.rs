use thiserror::Error;

/// Errors raised by ingestion, metric computation and aggregation.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { offset: usize },

    #[error("invalid word token {0:?}: tokens must be non-empty and free of whitespace")]
    InvalidToken(String),

    #[error("reference text is empty; the error rate is undefined")]
    EmptyReference,

    #[error("both texts are empty; the footrule distance is undefined")]
    EmptyAlignment,

    #[error("line count mismatch: reference has {reference} lines, hypothesis has {hypothesis}")]
    LineCountMismatch { reference: usize, hypothesis: usize },

    #[error("alignment is inconsistent with the compared texts: {0}")]
    InconsistentAlignment(String),

    #[error("no page reports to aggregate")]
    NoReports,

    #[error("invalid distortion config: {0}")]
    InvalidConfig(String),

    #[error("page {page_id}: {source}")]
    Page {
        page_id: String,
        #[source]
        source: Box<EvalError>,
    },
}

impl EvalError {
    pub fn on_page(self, page_id: &str) -> Self {
        match self {
            e @ EvalError::Page { .. } => e,
            other => EvalError::Page {
                page_id: page_id.to_string(),
                source: Box::new(other),
            },
        }
    }
}

pub type Result<T, E = EvalError> = std::result::Result<T, E>;
