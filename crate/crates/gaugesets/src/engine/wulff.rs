use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::geometry::{HalfSpace, Region};
use crate::model::{Partition, RandomSetModel};
use crate::scalar::{eval_gauge, GaugeSpec, WeightedSample};

use super::cones::{cone_gauge, cone_gauge_g9, cone_gauge_quantile, translated_cone_gauge};
use super::presets::gaussian_closed_form_region;
use super::{AtomRegion, ConditionalRegionResult, ExactPath, RegionMeta, RegionRequest};

/// Intersects `H_w(t_w)` over the grid, where `t_w` is the gauge of the
/// scalarization produced by `sample(w)`.
pub(crate) fn wulff_from(
    dim: usize,
    gauge: &GaugeSpec,
    grid: &[Vec<f64>],
    sample: impl Fn(&[f64]) -> Result<WeightedSample> + Sync,
) -> Result<(Region, RegionMeta)> {
    gauge.validate()?;
    if let Some(w) = grid.iter().find(|w| w.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: w.len() });
    }
    let offsets: Vec<ExtReal> = grid
        .par_iter()
        .map(|w| eval_gauge(gauge, &sample(w)?))
        .collect::<Result<_>>()?;
    let mut meta = RegionMeta { directions: grid.len(), ..RegionMeta::default() };
    let mut constraints = Vec::with_capacity(grid.len());
    let mut empty = false;
    for (w, t) in grid.iter().zip(offsets) {
        match t {
            ExtReal::PosInf => meta.dropped_infinite += 1,
            ExtReal::NegInf => {
                empty = true;
                constraints.push(HalfSpace::new(w.clone(), t));
            }
            ExtReal::Finite(_) => constraints.push(HalfSpace::new(w.clone(), t)),
        }
    }
    let region = if empty { Region::empty(dim, constraints) } else { Region::from_constraints(dim, constraints)? };
    meta.empty = region.empty;
    Ok((region, meta))
}

/// Outer approximation of the set-valued gauge `G(X)`, exact at the grid
/// directions for sublinear gauges with finite support data.
pub fn wulff_region(model: &RandomSetModel, gauge: &GaugeSpec, grid: &[Vec<f64>]) -> Result<Region> {
    Ok(wulff_region_with_meta(model, gauge, grid)?.0)
}

pub fn wulff_region_with_meta(
    model: &RandomSetModel,
    gauge: &GaugeSpec,
    grid: &[Vec<f64>],
) -> Result<(Region, RegionMeta)> {
    wulff_from(model.dim(), gauge, grid, |w| model.scalarize(w))
}

/// `G(X | A)` atom by atom.
pub fn conditional_regions(
    model: &RandomSetModel,
    partition: &Partition,
    gauge: &GaugeSpec,
    grid: &[Vec<f64>],
) -> Result<ConditionalRegionResult> {
    check_partition(model, partition)?;
    let mut atoms = Vec::with_capacity(partition.cells().len());
    for cell in partition.cells() {
        let label = cell.label.as_str();
        let (region, meta) =
            wulff_from(model.dim(), gauge, grid, |w| model.conditional_scalarize(partition, label, w))?;
        atoms.push(AtomRegion { label: cell.label.clone(), region, meta });
    }
    Ok(ConditionalRegionResult { atoms })
}

fn check_partition(model: &RandomSetModel, partition: &Partition) -> Result<()> {
    if partition.scenario_count() != model.len() {
        return Err(Error::Precondition(format!(
            "partition built for {} scenarios, model has {}",
            partition.scenario_count(),
            model.len()
        )));
    }
    Ok(())
}

/// Dispatches a request: closed-form paths when asked for, the grid
/// otherwise.
pub fn compute_region(model: &RandomSetModel, req: &RegionRequest) -> Result<ConditionalRegionResult> {
    req.gauge.validate()?;
    let trivial;
    let partition = match &req.partition {
        Some(p) => p,
        None => {
            trivial = Partition::trivial(model);
            &trivial
        }
    };
    check_partition(model, partition)?;
    let grid = req.grid.directions(model.dim())?;
    let Some(path) = &req.exact_path else {
        return conditional_regions(model, partition, &req.gauge, &grid);
    };
    let mut atoms = Vec::new();
    for cell in partition.cells() {
        let sub = model.atom_submodel(partition, &cell.label)?;
        let region = match path {
            ExactPath::Cone => {
                if !sub.is_cone_model() {
                    return Err(Error::Precondition("cone path needs cone scenarios".into()));
                }
                let body = match req.gauge {
                    _ if req.gauge.is_g9() => cone_gauge_g9(&sub)?,
                    GaugeSpec::QuantileLower(a) | GaugeSpec::AvgQuantileLeft(a) => cone_gauge_quantile(&sub, a)?,
                    _ => cone_gauge(&sub, &req.gauge)?,
                };
                Region::from_body(&body)?
            }
            ExactPath::TranslatedCone(cone) => translated_cone_gauge(&sub, cone, &req.gauge, &grid)?,
            ExactPath::Gaussian { mu, sigma, g1 } => {
                if !partition.is_trivial() {
                    return Err(Error::Precondition("the Gaussian path is unconditional".into()));
                }
                gaussian_closed_form_region(mu, sigma, *g1)?.region(&grid)?
            }
        };
        let meta = RegionMeta { directions: grid.len(), dropped_infinite: 0, empty: region.empty };
        atoms.push(AtomRegion { label: cell.label.clone(), region, meta });
    }
    Ok(ConditionalRegionResult { atoms })
}
