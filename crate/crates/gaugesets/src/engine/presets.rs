use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::geometry::{HalfSpace, Region};
use crate::model::{Partition, RandomSetModel};
use crate::scalar::{eval_gauge, GaugeSpec};

use super::wulff::wulff_region;

/// Depth-trimmed regions of a point cloud.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DepthPreset {
    /// half-space depth, support `q_alpha^-(<X, u>)`
    Tukey(f64),
    /// zonoid depth, support `e_alpha(<X, u>)`
    Zonoid(f64),
    Expectile(f64),
    Norm { p: f64, a: f64 },
}

impl DepthPreset {
    pub fn gauge(&self) -> GaugeSpec {
        match *self {
            DepthPreset::Tukey(a) => GaugeSpec::QuantileLower(a),
            DepthPreset::Zonoid(a) => GaugeSpec::AvgQuantileRight(a),
            DepthPreset::Expectile(t) => GaugeSpec::Expectile(t),
            DepthPreset::Norm { p, a } => GaugeSpec::NormGauge { p, a },
        }
    }
}

pub fn depth_region(preset: DepthPreset, model: &RandomSetModel, grid: &[Vec<f64>]) -> Result<Region> {
    if !model.is_singleton_model() {
        return Err(Error::Precondition("depth regions need singleton scenarios".into()));
    }
    wulff_region(model, &preset.gauge(), grid)
}

/// Support function of `mu + g1 Sigma^(1/2) B`.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianSupport {
    pub mu: Vec<f64>,
    pub sigma: Vec<Vec<f64>>,
    pub g1: f64,
}

impl GaussianSupport {
    pub fn support(&self, u: &[f64]) -> Result<f64> {
        let d = self.mu.len();
        if u.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: u.len() });
        }
        let mut q = 0.0;
        for i in 0..d {
            for j in 0..d {
                q += u[i] * self.sigma[i][j] * u[j];
            }
        }
        let m: f64 = self.mu.iter().zip(u).map(|(a, b)| a * b).sum();
        Ok(m + self.g1 * q.max(0.0).sqrt())
    }

    /// The region cut out by the grid half-spaces.
    pub fn region(&self, grid: &[Vec<f64>]) -> Result<Region> {
        let cons = grid
            .iter()
            .map(|w| Ok(HalfSpace::new(w.clone(), self.support(w)?)))
            .collect::<Result<Vec<_>>>()?;
        Region::from_constraints(self.mu.len(), cons)
    }
}

/// Closed-form gauge region of a Gaussian `N(mu, Sigma)` whose standard
/// normal marginal has gauge `g1`.
pub fn gaussian_closed_form_region(mu: &[f64], sigma: &[Vec<f64>], g1: f64) -> Result<GaussianSupport> {
    let d = mu.len();
    if d == 0 || sigma.len() != d || sigma.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: sigma.len() });
    }
    if !g1.is_finite() || mu.iter().any(|x| !x.is_finite()) {
        return Err(Error::Domain("mean and gauge constant must be finite".into()));
    }
    let m = DMatrix::from_fn(d, d, |i, j| sigma[i][j]);
    let sym = (0..d).all(|i| (0..d).all(|j| (m[(i, j)] - m[(j, i)]).abs() <= 1e-12 * (1.0 + m[(i, j)].abs())));
    if !sym || m.cholesky().is_none() {
        return Err(Error::NotPositiveDefinite);
    }
    Ok(GaussianSupport { mu: mu.to_vec(), sigma: sigma.to_vec(), g1 })
}

/// Collapsed point of a singleton model per atom, or `None` when the
/// atom's region is empty.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomPoint {
    pub label: String,
    pub point: Option<Vec<f64>>,
}

/// For a superlinear gauge the conditional region of a random point is the
/// single point of coordinatewise gauges, or empty once some direction has
/// `g(<X, w>) + g(<X, -w>) < 0`.
pub fn singleton_collapse_check(
    model: &RandomSetModel,
    partition: &Partition,
    gauge: &GaugeSpec,
    grid: &[Vec<f64>],
) -> Result<Vec<AtomPoint>> {
    if !gauge.is_superlinear() {
        return Err(Error::Precondition("collapse check needs a superlinear gauge".into()));
    }
    if !model.is_singleton_model() {
        return Err(Error::Precondition("collapse check needs singleton scenarios".into()));
    }
    gauge.validate()?;
    let d = model.dim();
    let finite = |t: ExtReal| -> Result<f64> {
        t.finite().ok_or_else(|| Error::Domain("gauge of a finite sample is infinite".into()))
    };
    let mut out = Vec::new();
    for cell in partition.cells() {
        let label = cell.label.as_str();
        let g = |w: &[f64]| -> Result<f64> { finite(eval_gauge(gauge, &model.conditional_scalarize(partition, label, w)?)?) };
        let mut collapsed = true;
        for w in grid {
            let neg: Vec<f64> = w.iter().map(|x| -x).collect();
            let (a, b) = (g(w)?, g(&neg)?);
            if a + b < -1e-9 * (1.0 + a.abs() + b.abs()) {
                collapsed = false;
                break;
            }
        }
        let point = if collapsed {
            let mut p = Vec::with_capacity(d);
            for k in 0..d {
                let mut e = vec![0.0; d];
                e[k] = 1.0;
                p.push(g(&e)?);
            }
            Some(p)
        } else {
            None
        };
        out.push(AtomPoint { label: cell.label.clone(), point });
    }
    Ok(out)
}
