use crate::ext_real::ExtReal;

use super::linalg::{dot, is_zero, norm};

/// `{x : <normal, x> <= offset}`.
///
/// An offset of `+inf` or a zero normal is the whole space; an offset of
/// `-inf` is the empty set.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfSpace {
    pub normal: Vec<f64>,
    pub offset: ExtReal,
}

impl HalfSpace {
    pub fn new(normal: Vec<f64>, offset: impl Into<ExtReal>) -> Self {
        HalfSpace { normal, offset: offset.into() }
    }

    pub fn dim(&self) -> usize {
        self.normal.len()
    }

    pub fn is_whole_space(&self) -> bool {
        self.offset == ExtReal::PosInf || is_zero(&self.normal)
    }

    pub fn is_empty_set(&self) -> bool {
        !self.is_whole_space() && self.offset == ExtReal::NegInf
    }

    /// Amount by which `x` violates the constraint, scaled to a unit normal.
    /// Nonpositive means satisfied.
    pub fn violation(&self, x: &[f64]) -> f64 {
        if self.is_whole_space() {
            return f64::NEG_INFINITY;
        }
        match self.offset {
            ExtReal::Finite(b) => (dot(&self.normal, x) - b) / norm(&self.normal),
            _ => f64::INFINITY,
        }
    }

    pub fn contains(&self, x: &[f64], tol: f64) -> bool {
        self.violation(x) <= tol
    }
}
