use thiserror::Error;

use crate::poly::Poly;

pub type Result<T> = std::result::Result<T, JnfError>;

#[derive(Debug, Clone, Error)]
pub enum JnfError {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("divisor must be monic and nonzero")]
    NotMonic,

    #[error("matrix is singular")]
    Singular,

    #[error("unsupported field: {0}")]
    UnsupportedField(String),

    /// The Faddeev recurrence divides by 1..=n.
    #[error("method unavailable in characteristic {characteristic} for n = {n}")]
    UnsupportedMethod { characteristic: u64, n: usize },

    /// Factorization stopped at a factor the built-in path cannot split.
    /// `factored` holds what was found, `stuck` the remaining parts, both as
    /// (polynomial, multiplicity).
    #[error("characteristic polynomial needs an external factorization; stuck at {}", stuck_summary(.stuck))]
    NeedsFactorization {
        factored: Vec<(Poly, usize)>,
        stuck: Vec<(Poly, usize)>,
    },

    #[error("invalid factor hint: {0}")]
    InvalidHint(String),

    #[error("internal consistency failure: {0}")]
    Internal(String),
}

fn stuck_summary(stuck: &[(Poly, usize)]) -> String {
    stuck
        .iter()
        .map(|(p, m)| format!("({p})^{m}"))
        .collect::<Vec<_>>()
        .join(" * ")
}
