//! Closed convex sets as generalized polyhedra, their support functions,
//! polars, and half-space intersections.

pub mod angular;
mod body;
mod grid;
mod halfspace;
pub mod linalg;
pub mod lp;
pub mod plane;
mod region;

pub use body::{
    cone_body, cone_generators_2d, linear_image, minkowski_sum, polar_cone_2d, polar_set, ConvexBody,
    RAY_TOL,
};
pub use grid::{default_grid, direction_grid, GridScheme};
pub use halfspace::HalfSpace;
pub use lp::{hrep_feasible, support_of_hrep};
pub use plane::{intersect_halfplanes, Chain2d};
pub use region::Region;

/// Region of the intersection of planar half-spaces.
pub fn intersect_halfspaces_2d(constraints: Vec<HalfSpace>) -> crate::error::Result<Region> {
    Region::from_constraints(2, constraints)
}
