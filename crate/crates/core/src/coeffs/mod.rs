//! Novikov coefficients over F2 and linear algebra over the Novikov field.

mod matrix;
mod novikov;

pub use matrix::{rank_over_lambda, rank_with_precision, NovMatrix, RankInfo};
pub use novikov::{Novikov, NovikovDoc};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Failures of coefficient arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("matrix has a truncated entry; exact rank needs finite sums")]
    TruncatedEntry,
    #[error("exact division failed: divisor does not divide dividend")]
    NotDivisible,
    #[error("matrix dimensions do not match")]
    DimensionMismatch,
}

/// How polygon counts are weighted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffMode {
    /// Each polygon contributes `T^{area}`.
    Novikov,
    /// Each polygon contributes 1; legal only for exact scenes.
    Z2,
}

impl CoeffMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoeffMode::Novikov => "novikov",
            CoeffMode::Z2 => "z2",
        }
    }
}
