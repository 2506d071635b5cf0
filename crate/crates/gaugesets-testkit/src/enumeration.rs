//! Conditional regions by enumerating every atom-measurable direction.

use std::f64::consts::TAU;

use gaugesets::model::{Partition, RandomSetModel};
use gaugesets::scalar::{eval_gauge, GaugeSpec};
use gaugesets::{Error, ExtReal, Result};

use crate::oracles::brute_scalarize;

pub const MAX_SCENARIOS: usize = 6;
pub const MAX_ATOMS: usize = 3;
pub const MAX_LATTICE: usize = 48;

/// `n` planar directions at angles `2 pi k / n`.
pub fn angular_lattice(n: usize) -> Vec<Vec<f64>> {
    (0..n)
        .map(|k| {
            let t = k as f64 * TAU / n as f64;
            vec![t.cos(), t.sin()]
        })
        .collect()
}

/// Half-space description of one atom's region; `offsets[k]` belongs to
/// lattice direction `k`.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomHRep {
    pub label: String,
    pub directions: Vec<Vec<f64>>,
    pub offsets: Vec<ExtReal>,
}

impl AtomHRep {
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.directions.iter().zip(&self.offsets).all(|(w, t)| {
            let lhs: f64 = w.iter().zip(x).map(|(a, b)| a * b).sum();
            match *t {
                ExtReal::PosInf => true,
                ExtReal::NegInf => false,
                ExtReal::Finite(t) => lhs <= t + tol,
            }
        })
    }
}

/// Intersects `H_W(g(h(X, W) | A))` over every map `W` from atoms to lattice
/// directions and reads off, atom by atom, the half-spaces that bind there.
///
/// The loop really visits all `n^k` maps, so the per-atom reduction used by
/// the engine is checked rather than assumed.
pub fn brute_conditional_enumeration(
    model: &RandomSetModel,
    partition: &Partition,
    gauge: &GaugeSpec,
    lattice_n: usize,
) -> Result<Vec<AtomHRep>> {
    let k = partition.cells().len();
    if model.len() > MAX_SCENARIOS || k > MAX_ATOMS || lattice_n > MAX_LATTICE || lattice_n == 0 {
        return Err(Error::SizeLimit(format!(
            "enumeration allows {MAX_SCENARIOS} scenarios, {MAX_ATOMS} atoms and {MAX_LATTICE} directions; got {}, {k}, {lattice_n}",
            model.len()
        )));
    }
    if model.dim() != 2 {
        return Err(Error::Unsupported("enumeration runs on planar models".into()));
    }
    gauge.validate()?;
    let lattice = angular_lattice(lattice_n);
    let mut best: Vec<Vec<Option<ExtReal>>> = vec![vec![None; lattice_n]; k];
    let mut map = vec![0usize; k];
    loop {
        for (a, cell) in partition.cells().iter().enumerate() {
            let w = &lattice[map[a]];
            let t = eval_gauge(gauge, &brute_scalarize(model, &cell.indices, w)?)?;
            let slot = &mut best[a][map[a]];
            *slot = Some(match *slot {
                Some(prev) if prev <= t => prev,
                _ => t,
            });
        }
        // odometer over all maps atoms -> lattice
        let mut i = 0;
        while i < k {
            map[i] += 1;
            if map[i] < lattice_n {
                break;
            }
            map[i] = 0;
            i += 1;
        }
        if i == k {
            break;
        }
    }
    Ok(partition
        .cells()
        .iter()
        .zip(best)
        .map(|(cell, offs)| AtomHRep {
            label: cell.label.clone(),
            directions: lattice.clone(),
            offsets: offs.into_iter().map(|t| t.expect("every direction is visited")).collect(),
        })
        .collect())
}
