//! Gauges of random cones and of points translated by a deterministic cone.
//!
//! For a cone scenario `h(C, w)` is `0` on the polar `C°` and `+inf`
//! elsewhere, so a gauge only sees the coverage `P{w in C°}`. In the plane
//! every polar is an angular sector and the sets of interest are computed
//! exactly by sweeping the circle at the sector boundaries.

use crate::error::{Error, Result};
use crate::geometry::angular::{cone_shape, sweep, AngularSet};
use crate::geometry::linalg::{p2, P2};
use crate::geometry::{
    cone_body, default_grid, intersect_halfplanes, minkowski_sum, ConvexBody, HalfSpace, Region,
};
use crate::model::RandomSetModel;
use crate::scalar::{eval_gauge, GaugeSpec};

use super::wulff::wulff_from;

/// Coverage levels are compared with this slack.
const LEVEL_TOL: f64 = 1e-12;

fn require_cones(model: &RandomSetModel) -> Result<()> {
    if model.is_cone_model() {
        Ok(())
    } else {
        Err(Error::Precondition("every scenario must be a cone with apex at the origin".into()))
    }
}

fn check_level(alpha: f64) -> Result<()> {
    if alpha > 0.0 && alpha <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidGauge(format!("level {alpha} outside (0, 1]")))
    }
}

fn generators(body: &ConvexBody) -> Vec<P2> {
    body.rays.iter().map(|r| p2(r)).collect()
}

/// Exact boundary directions of every scenario polar.
fn polar_cuts(model: &RandomSetModel) -> Vec<P2> {
    let mut cuts = Vec::new();
    for s in model.scenarios() {
        cuts.extend(cone_shape(&generators(&s.body)).polar().directions().endpoints());
    }
    cuts
}

fn polar_of_hull(set: &AngularSet) -> Result<ConvexBody> {
    cone_body(&set.conic_hull().polar())
}

/// `(m(C°))°`, the set-valued gauge of a random cone for any gauge with
/// property (g9).
///
/// In the plane the fixed-point cone `m(C°)` is the intersection of the
/// half-planes `<g, u> <= 0` over all scenario generators `g`; its polar is
/// read off the resulting cone. In higher dimensions the result is the cone
/// spanned by all scenario generators, which is the same set.
pub fn cone_gauge_g9(model: &RandomSetModel) -> Result<ConvexBody> {
    require_cones(model)?;
    let dim = model.dim();
    if dim != 2 {
        let mut rays: Vec<Vec<f64>> = Vec::new();
        for s in model.scenarios() {
            for r in &s.body.rays {
                if !rays.contains(r) {
                    rays.push(r.clone());
                }
            }
        }
        return ConvexBody::cone(dim, rays);
    }
    let cons: Vec<HalfSpace> = model
        .scenarios()
        .iter()
        .flat_map(|s| s.body.rays.iter().map(|r| HalfSpace::new(r.clone(), 0.0)))
        .collect();
    let chain = intersect_halfplanes(&cons)
        .chain
        .ok_or_else(|| Error::Degenerate("polar cones miss the origin".into()))?;
    let fixed = cone_shape(&chain.rays);
    cone_body(&fixed.polar())
}

/// The Vorob'ev quantile `Q_alpha(C°) = {w : P{w in C°} >= alpha}`.
#[derive(Debug, Clone, PartialEq)]
pub struct VorobevQuantile {
    /// exact directions in the plane; `None` for grid approximations
    pub directions: Option<AngularSet>,
    /// smallest convex cone containing the quantile
    pub hull: ConvexBody,
    /// grid directions kept, for the approximate route
    pub grid_directions: Vec<Vec<f64>>,
}

fn coverage(model: &RandomSetModel, w: &[f64]) -> f64 {
    model.barrier_probability(w).unwrap_or(0.0)
}

/// Vorob'ev quantile of the random polar cone at level `alpha`.
pub fn vorobev_quantile(model: &RandomSetModel, alpha: f64) -> Result<VorobevQuantile> {
    require_cones(model)?;
    check_level(alpha)?;
    let dim = model.dim();
    if dim == 2 {
        let set = sweep(&polar_cuts(model), |u, _| coverage(model, &u) >= alpha - LEVEL_TOL);
        let hull = cone_body(&set.conic_hull())?;
        return Ok(VorobevQuantile { directions: Some(set), hull, grid_directions: Vec::new() });
    }
    let kept: Vec<Vec<f64>> = default_grid(dim, 0)?
        .into_iter()
        .filter(|w| coverage(model, w) >= alpha - LEVEL_TOL)
        .collect();
    let hull = ConvexBody::cone(dim, kept.clone())?;
    Ok(VorobevQuantile { directions: None, hull, grid_directions: kept })
}

/// `(Q_alpha(C°))°`, the gauge of a random cone under the lower quantile or
/// the left-average quantile at level `alpha`.
pub fn cone_gauge_quantile(model: &RandomSetModel, alpha: f64) -> Result<ConvexBody> {
    let q = vorobev_quantile(model, alpha)?;
    match q.directions {
        Some(set) => polar_of_hull(&set),
        None => {
            let cons = q.grid_directions.into_iter().map(|w| HalfSpace::new(w, 0.0)).collect();
            ConvexBody::from_hrep(model.dim(), cons)
        }
    }
}

/// Gauge of a random cone for an arbitrary gauge: the polar of the
/// directions where the gauge of `h(C, w)` is finite. Planar models only.
pub fn cone_gauge(model: &RandomSetModel, gauge: &GaugeSpec) -> Result<ConvexBody> {
    require_cones(model)?;
    gauge.validate()?;
    if model.dim() != 2 {
        return Err(Error::Unsupported("generic cone gauge outside the plane".into()));
    }
    let mut failure = None;
    let set = sweep(&polar_cuts(model), |u, _| {
        match model.scalarize(&u).and_then(|s| eval_gauge(gauge, &s)) {
            Ok(t) => t.is_finite(),
            Err(e) => {
                failure.get_or_insert(e);
                false
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }
    polar_of_hull(&set)
}

/// `G({X} | A) + C` for singleton scenarios and a deterministic cone `C`,
/// computed from the directions inside `C°` only.
///
/// The singleton gauge being empty makes the result empty.
pub fn translated_cone_gauge(
    model: &RandomSetModel,
    cone: &ConvexBody,
    gauge: &GaugeSpec,
    grid: &[Vec<f64>],
) -> Result<Region> {
    if !gauge.is_sublinear() {
        return Err(Error::Precondition("translated-cone formula needs a sublinear gauge".into()));
    }
    if !model.is_singleton_model() {
        return Err(Error::Precondition("translated-cone formula needs singleton scenarios".into()));
    }
    if !cone.has_vrep() || cone.vertices.iter().any(|v| v.iter().any(|x| *x != 0.0)) {
        return Err(Error::Precondition("expected a cone with apex at the origin".into()));
    }
    let dim = model.dim();
    if cone.dim != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: cone.dim });
    }
    let mut dirs: Vec<Vec<f64>> = Vec::new();
    for w in grid {
        if cone.support(w)?.is_finite() {
            dirs.push(w.clone());
        }
    }
    if dim == 2 {
        for e in cone_shape(&generators(cone)).polar().directions().endpoints() {
            let e = e.to_vec();
            if !dirs.contains(&e) {
                dirs.push(e);
            }
        }
    }
    let (region, _) = wulff_from(dim, gauge, &dirs, |w| model.scalarize(w))?;
    if region.empty || dim != 2 {
        // every constraint normal lies in the polar, so the region already
        // absorbs the cone
        return Ok(region);
    }
    let sum = minkowski_sum(&region.to_body(), cone)?;
    Region::from_body(&sum)
}
