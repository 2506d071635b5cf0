//! Oracles for checking the `gaugesets` engine: the standard normal law and
//! its exact gauges, seeded Gaussian samples, brute-force quantiles and
//! region membership, full enumeration of conditional half-spaces, and the
//! lognormal random cone.

mod enumeration;
mod normal;
mod oracles;
mod sampling;
mod vorobev;

pub use enumeration::{angular_lattice, brute_conditional_enumeration, AtomHRep, MAX_ATOMS, MAX_LATTICE, MAX_SCENARIOS};
pub use normal::{normal_cdf, normal_expectile, normal_gauge_constants, normal_pdf, normal_quantile};
pub use oracles::{
    brute_region_membership, counted_sample, expanded_quantile_lower, expanded_quantile_upper, product_sum,
};
pub use sampling::mc_gaussian;
pub use vorobev::{
    discrete_boundary_parameter, lognormal_boundary_parameter, lognormal_cone_scenarios, random_cone_model,
    Convention,
};
