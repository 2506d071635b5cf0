//! Set-valued gauges of random convex sets on finite scenario models.
//!
//! A scalar gauge `g` (quantile, expectile, average quantile, ...) applied
//! to the support function `h(X, w)` in each direction `w` yields a family
//! of half-spaces; their intersection is the set-valued gauge `G(X)`. With
//! a finite partition of the scenarios, conditional gauges are computed
//! atom by atom.

pub mod engine;
pub mod error;
pub mod ext_real;
pub mod geometry;
pub mod model;
pub mod scalar;

pub use error::{Error, Result};
pub use ext_real::ExtReal;
