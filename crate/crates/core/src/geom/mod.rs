//! Flat surfaces, PL curves, crossings, gradings, Dehn twists and surgery.

pub mod curve;
mod generator;
pub mod grading;
pub mod intersect;
mod surface;
mod surgery;
mod twist;
mod vec2;

pub use curve::{Component, Curve, EdgeRef};
pub use generator::{generators, Generator};
pub use grading::GradedLift;
pub use intersect::{check_embedded, curve_contains, lift_point, Strip};
pub use surface::{Deck, Surface};
pub use surgery::{corner_area, surgery};
pub use twist::dehn_twist_torus;
pub use vec2::{segment_meet, twice_signed_area, SegmentMeet, Vec2};

use thiserror::Error;

/// Geometric validation and construction failures.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("curves `{left}` and `{right}` are not transverse near {at}")]
    NonTransverse { left: String, right: String, at: String },
    #[error("curves `{left}` and `{right}` cross at a corner at {at}")]
    VertexIncidence { left: String, right: String, at: String },
    #[error("curves `{first}`, `{second}` and `{third}` pass through the common point {at}")]
    TriplePoint { first: String, second: String, third: String, at: String },
    #[error("curve `{curve}` is not embedded (self-contact at {at})")]
    NotEmbedded { curve: String, at: String },
    #[error("curve `{curve}` has nonzero rotation and admits no graded lift")]
    Ungradable { curve: String },
    #[error("curve `{curve}` carries no graded lift")]
    Ungraded { curve: String },
    #[error("curve `{0}` is not a straight torus line")]
    NotALine(String),
    #[error("surgery parameter too large: {0}")]
    EpsTooLarge(String),
    #[error("curves cross infinitely often; restrict to a window")]
    InfiniteIntersection,
    #[error("point {0} is not a crossing of the two curves")]
    NotACrossing(String),
}
