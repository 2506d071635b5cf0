//! The random cone with `(-1, pi)` and `(pi, -1)` on its boundary, where
//! `pi - 2` is lognormal, and the two readings of its Vorob'ev quantile.

use gaugesets::geometry::ConvexBody;
use gaugesets::model::{RandomSetModel, Scenario};
use gaugesets::{Error, Result};

use crate::normal::normal_quantile;

/// Which coverage threshold defines `Q_alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// `P{w in C°} >= alpha`
    AtLeastAlpha,
    /// `P{w in C°} >= 1 - alpha`
    AtLeastOneMinusAlpha,
}

impl Convention {
    fn level(self, alpha: f64) -> f64 {
        match self {
            Convention::AtLeastAlpha => alpha,
            Convention::AtLeastOneMinusAlpha => 1.0 - alpha,
        }
    }
}

/// `(-t, -1)` lies on the boundary of `Q_alpha(C°)` for the continuous
/// lognormal law: `P{pi >= t} = level` gives `t = 2 + exp(sigma Phi^{-1}(1 - level))`.
pub fn lognormal_boundary_parameter(sigma: f64, alpha: f64, convention: Convention) -> Result<f64> {
    let level = convention.level(alpha);
    Ok(2.0 + (sigma * normal_quantile(1.0 - level)?).exp())
}

/// `n` equally likely values of `pi = 2 + exp(sigma Z)` at the midpoint
/// quantiles of `Z`, as `(prob, pi)`.
pub fn lognormal_cone_scenarios(n: usize, sigma: f64) -> Result<Vec<(f64, f64)>> {
    if n == 0 || sigma.is_nan() || sigma <= 0.0 {
        return Err(Error::Domain("need n > 0 and sigma > 0".into()));
    }
    (0..n)
        .map(|k| Ok((1.0 / n as f64, 2.0 + (sigma * normal_quantile((k as f64 + 0.5) / n as f64)?).exp())))
        .collect()
}

/// Largest `t` with `P{pi >= t} >= level` for the discrete law.
pub fn discrete_boundary_parameter(scen: &[(f64, f64)], alpha: f64, convention: Convention) -> f64 {
    let level = convention.level(alpha);
    let mut v = scen.to_vec();
    v.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut acc = 0.0;
    for (p, t) in &v {
        acc += p;
        if acc >= level - 1e-12 {
            return *t;
        }
    }
    v.last().map(|x| x.1).unwrap_or(f64::NAN)
}

/// Scenario model of the random cone spanned by `(-1, pi)` and `(pi, -1)`.
pub fn random_cone_model(scen: &[(f64, f64)]) -> Result<RandomSetModel> {
    let total: f64 = scen.iter().map(|s| s.0).sum();
    let scenarios = scen
        .iter()
        .map(|&(p, t)| Ok(Scenario::new(p / total, ConvexBody::cone(2, vec![vec![-1.0, t], vec![t, -1.0]])?)))
        .collect::<Result<Vec<_>>>()?;
    RandomSetModel::new(scenarios)
}
