//! Set-valued gauges of finite-scenario random convex sets.
//!
//! Conditioning is per atom: on a finite partition the measurable
//! directions are the piecewise-constant ones, so every conditional
//! region is computed from the atom's conditional scalarizations alone.

mod bodies;
mod cones;
mod presets;
mod wulff;

use crate::error::Result;
use crate::geometry::{direction_grid, ConvexBody, GridScheme, Region};
use crate::model::Partition;
use crate::scalar::GaugeSpec;

pub use bodies::{conditional_core, conditional_hull, selection_expectation};
pub use cones::{
    cone_gauge, cone_gauge_g9, cone_gauge_quantile, translated_cone_gauge, vorobev_quantile, VorobevQuantile,
};
pub use presets::{
    depth_region, gaussian_closed_form_region, singleton_collapse_check, AtomPoint, DepthPreset,
    GaussianSupport,
};
pub use wulff::{compute_region, conditional_regions, wulff_region, wulff_region_with_meta};

/// Per-atom bodies in partition order.
pub type AtomBodies = Vec<(String, ConvexBody)>;

/// Direction grid parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GridSpec {
    pub n: usize,
    pub scheme: GridScheme,
}

impl GridSpec {
    pub fn uniform(n: usize) -> Self {
        GridSpec { n, scheme: GridScheme::Uniform2d }
    }

    /// 720 uniform directions in the plane, 2048 Fibonacci directions in
    /// space, 2048 seeded random directions above that.
    pub fn default_for(dim: usize, seed: u64) -> Self {
        match dim {
            2 => GridSpec { n: 720, scheme: GridScheme::Uniform2d },
            3 => GridSpec { n: 2048, scheme: GridScheme::Fibonacci },
            _ => GridSpec { n: 2048, scheme: GridScheme::Random(seed) },
        }
    }

    pub fn directions(&self, dim: usize) -> Result<Vec<Vec<f64>>> {
        direction_grid(dim, self.n, self.scheme)
    }
}

/// Closed-form routes that bypass the direction grid.
#[derive(Debug, Clone, PartialEq)]
pub enum ExactPath {
    /// every scenario is a cone with apex at the origin
    Cone,
    /// singleton scenarios plus a deterministic cone
    TranslatedCone(ConvexBody),
    /// Gaussian support `<mu, u> + g1 <Sigma u, u>^(1/2)`, evaluated on the grid
    Gaussian { mu: Vec<f64>, sigma: Vec<Vec<f64>>, g1: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionRequest {
    pub gauge: GaugeSpec,
    pub grid: GridSpec,
    pub partition: Option<Partition>,
    pub exact_path: Option<ExactPath>,
}

impl RegionRequest {
    pub fn new(gauge: GaugeSpec, grid: GridSpec) -> Self {
        RegionRequest { gauge, grid, partition: None, exact_path: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct RegionMeta {
    /// directions evaluated
    pub directions: usize,
    /// directions whose gauge was `+inf` and therefore imposed nothing
    pub dropped_infinite: usize,
    pub empty: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AtomRegion {
    pub label: String,
    pub region: Region,
    pub meta: RegionMeta,
}

/// Per-atom regions in partition order.
#[derive(Debug, Clone, PartialEq)]
pub struct ConditionalRegionResult {
    pub atoms: Vec<AtomRegion>,
}

impl ConditionalRegionResult {
    pub fn get(&self, label: &str) -> Option<&Region> {
        self.atoms.iter().find(|a| a.label == label).map(|a| &a.region)
    }

    pub fn labels(&self) -> Vec<&str> {
        self.atoms.iter().map(|a| a.label.as_str()).collect()
    }
}
