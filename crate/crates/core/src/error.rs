use thiserror::Error;

use crate::coeffs::CoeffError;
use crate::geom::GeomError;
use crate::polygons::SearchError;

/// Failures of the algebraic layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Coeff(#[from] CoeffError),
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("object `{0}` appears more than once; hom(L, L) needs an explicit pushoff")]
    RepeatedObject(String),
    #[error("complex is obstructed: d^2 != 0 ({0} nonzero entries)")]
    ObstructedComplex(usize),
    #[error("critical points must alternate between maxima and minima: {0}")]
    NotAlternating(String),
    #[error("morphism is not closed")]
    NotClosed,
    #[error("twisted complex fails the Maurer-Cartan equation at entry ({0}, {1})")]
    NotMaurerCartan(usize, usize),
    #[error("index {0} lies outside the window")]
    OutOfWindow(i64),
    #[error("Z2 coefficients need every curve to be exact; `{0}` is not")]
    NotExact(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
