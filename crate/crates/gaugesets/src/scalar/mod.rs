//! Scalar gauges on finite weighted samples of `(-inf, +inf]`.

pub mod gauges;
mod sample;
mod spec;

pub use gauges::{
    avg_quantile_left, avg_quantile_right, ess_inf, ess_sup, expectation, expectile,
    expectile_residual, norm_gauge, quantile_lower, quantile_upper,
};
pub use sample::{Atoms, Extremum, WeightedSample, WEIGHT_SUM_TOL};
pub use spec::{dual_eval, eval_gauge, GaugeSpec, MAX_NESTING};
