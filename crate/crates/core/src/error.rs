use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid index (k={k}, l={l}): {reason}")]
    InvalidIndex { k: i64, l: i64, reason: &'static str },

    #[error("index out of supported range (k={k}, l={l}); limits are k <= {max_k}, l <= {max_l}")]
    IndexTooLarge { k: i64, l: i64, max_k: u32, max_l: u32 },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("pole: {0}")]
    Pole(String),

    #[error("degenerate case: {0}")]
    Degenerate(String),

    #[error("evaluation budget of {budget} exceeded; best estimate {best_re} + {best_im}i with error {abs_error}")]
    BudgetExceeded {
        budget: usize,
        best_re: f64,
        best_im: f64,
        abs_error: f64,
    },

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
