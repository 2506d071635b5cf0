use crate::error::{Error, Result};
use crate::ext_real::ExtReal;

use super::body::ConvexBody;
use super::halfspace::HalfSpace;
use super::linalg::p2;
use super::lp;
use super::plane::{intersect_halfplanes, Chain2d};

/// A convex set given by half-spaces, with the exact vertex/ray chain in the
/// plane. `constraints` keeps every finite input constraint, including
/// redundant ones; `active` indexes the ones that support the boundary.
#[derive(Debug, Clone, PartialEq)]
pub struct Region {
    pub dim: usize,
    pub constraints: Vec<HalfSpace>,
    pub chain: Option<Chain2d>,
    pub empty: bool,
    pub active: Vec<usize>,
}

impl Region {
    pub fn from_constraints(dim: usize, constraints: Vec<HalfSpace>) -> Result<Region> {
        for h in &constraints {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: h.dim() });
            }
        }
        if dim == 2 {
            let res = intersect_halfplanes(&constraints);
            let empty = res.chain.is_none();
            return Ok(Region { dim, constraints, chain: res.chain, empty, active: res.active });
        }
        let empty = !lp::hrep_feasible(&constraints, dim)?;
        let active = if empty { Vec::new() } else { (0..constraints.len()).collect() };
        Ok(Region { dim, constraints, chain: None, empty, active })
    }

    /// Region of an explicitly empty result, keeping the constraints seen.
    pub fn empty(dim: usize, constraints: Vec<HalfSpace>) -> Region {
        Region { dim, constraints, chain: None, empty: true, active: Vec::new() }
    }

    /// Region equal to a body: planar bodies get their facets and chain.
    pub fn from_body(body: &ConvexBody) -> Result<Region> {
        if body.is_empty_sentinel() {
            return Ok(Region::empty(body.dim, Vec::new()));
        }
        if body.dim == 2 && body.has_vrep() {
            let (facets, chain) = body.normalized_2d();
            let active = (0..facets.len()).collect();
            return Ok(Region { dim: 2, constraints: facets, chain: Some(chain), empty: false, active });
        }
        match &body.hrep {
            Some(h) => Region::from_constraints(body.dim, h.clone()),
            None => Err(Error::MissingHRep(body.dim)),
        }
    }

    pub fn support(&self, w: &[f64]) -> Result<ExtReal> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: w.len() });
        }
        if self.empty {
            return Ok(ExtReal::NegInf);
        }
        match &self.chain {
            Some(c) => Ok(c.support(p2(w))),
            None => lp::support_of_hrep(&self.constraints, w),
        }
    }

    /// Feasibility of `x` for every stored constraint, up to `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        !self.empty && self.constraints.iter().all(|h| h.contains(x, tol))
    }

    /// Constraints that support the boundary.
    pub fn facets(&self) -> Vec<HalfSpace> {
        self.active.iter().map(|&i| self.constraints[i].clone()).collect()
    }

    pub fn to_body(&self) -> ConvexBody {
        if self.empty {
            return ConvexBody::empty(self.dim);
        }
        match &self.chain {
            Some(c) => {
                let mut b = ConvexBody::from_chain(c);
                b.hrep = Some(self.facets());
                b
            }
            None => ConvexBody {
                dim: self.dim,
                vertices: Vec::new(),
                rays: Vec::new(),
                hrep: Some(self.constraints.clone()),
                is_cone: false,
            },
        }
    }
}
