//! Exact combinatorial Floer theory for piecewise-linear curves on flat surfaces.

pub mod ainfty;
pub mod coeffs;
mod error;
pub mod floer;
pub mod geom;
pub mod polygons;
pub mod rational;
pub mod scene;
pub mod tw;
pub mod wrapped;

pub use error::{Error, Result};
