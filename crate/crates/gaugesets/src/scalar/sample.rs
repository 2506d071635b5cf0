use std::sync::OnceLock;

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;

/// Tolerance on the total weight accepted by [`WeightedSample::new`].
pub const WEIGHT_SUM_TOL: f64 = 1e-9;

/// A finite discrete distribution on `(-inf, +inf]`.
///
/// `+inf` is stored as `f64::INFINITY`. Zero weights are dropped and the
/// remaining weights are renormalized once, at construction. The sorted view
/// with tied values merged is built lazily because the selection-based
/// gauges never need it.
#[derive(Debug, Clone)]
pub struct WeightedSample {
    values: Vec<f64>,
    weights: Vec<f64>,
    merged: OnceLock<Atoms>,
}

/// Strictly increasing support points with their (positive) weights.
#[derive(Debug, Clone)]
pub struct Atoms {
    pub values: Vec<f64>,
    pub weights: Vec<f64>,
}

/// Which order statistic an i.i.d. extension takes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extremum {
    Max,
    Min,
}

impl WeightedSample {
    pub fn new(values: Vec<ExtReal>, weights: Vec<f64>) -> Result<Self> {
        let mut raw = Vec::with_capacity(values.len());
        for v in values {
            match v {
                ExtReal::NegInf => {
                    return Err(Error::InvalidSample("value -inf is not allowed".into()))
                }
                ExtReal::Finite(x) if x.is_nan() => {
                    return Err(Error::InvalidSample("NaN value".into()))
                }
                other => raw.push(other.to_f64()),
            }
        }
        Self::from_f64(raw, weights)
    }

    /// Like [`new`](Self::new) with `f64::INFINITY` standing for `+inf`.
    pub fn from_f64(values: Vec<f64>, weights: Vec<f64>) -> Result<Self> {
        if values.len() != weights.len() {
            return Err(Error::InvalidSample(format!(
                "{} values but {} weights",
                values.len(),
                weights.len()
            )));
        }
        if values.is_empty() {
            return Err(Error::InvalidSample("empty sample".into()));
        }
        if values.iter().any(|v| v.is_nan() || *v == f64::NEG_INFINITY) {
            return Err(Error::InvalidSample("values must lie in (-inf, +inf]".into()));
        }
        if weights.iter().any(|w| !w.is_finite() || *w < 0.0) {
            return Err(Error::InvalidSample("weights must be finite and nonnegative".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidSample(format!("weights sum to {total}, not 1")));
        }
        Ok(Self::normalized(values, weights))
    }

    /// Equal weights.
    pub fn uniform(values: Vec<f64>) -> Result<Self> {
        let n = values.len();
        Self::from_f64(values, vec![1.0 / n.max(1) as f64; n])
    }

    /// Dirac mass at `c`.
    pub fn point(c: f64) -> Result<Self> {
        Self::from_f64(vec![c], vec![1.0])
    }

    /// Drops zero weights and divides by the total. Inputs are trusted.
    pub(crate) fn normalized(values: Vec<f64>, weights: Vec<f64>) -> Self {
        let total: f64 = weights.iter().sum();
        let (mut values, mut weights) = (values, weights);
        if weights.iter().any(|w| *w <= 0.0) {
            let keep: Vec<bool> = weights.iter().map(|w| *w > 0.0).collect();
            let mut k = keep.iter();
            values.retain(|_| *k.next().unwrap());
            weights.retain(|w| *w > 0.0);
        }
        for w in weights.iter_mut() {
            *w /= total;
        }
        WeightedSample { values, weights, merged: OnceLock::new() }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Values in input order, `+inf` as `f64::INFINITY`.
    pub fn raw_values(&self) -> &[f64] {
        &self.values
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn values(&self) -> impl Iterator<Item = ExtReal> + '_ {
        self.values.iter().map(|&v| ExtReal::from(v))
    }

    /// Sorted support with ties merged.
    pub fn atoms(&self) -> &Atoms {
        self.merged.get_or_init(|| {
            let mut idx: Vec<usize> = (0..self.values.len()).collect();
            idx.sort_unstable_by(|&a, &b| self.values[a].total_cmp(&self.values[b]));
            let mut out = Atoms { values: Vec::new(), weights: Vec::new() };
            for i in idx {
                let (v, w) = (self.values[i], self.weights[i]);
                match out.values.last() {
                    Some(&last) if last == v => *out.weights.last_mut().unwrap() += w,
                    _ => {
                        out.values.push(v);
                        out.weights.push(w);
                    }
                }
            }
            out
        })
    }

    /// Total weight sitting at `+inf`.
    pub fn pos_inf_mass(&self) -> f64 {
        self.values
            .iter()
            .zip(&self.weights)
            .filter(|(v, _)| v.is_infinite())
            .map(|(_, w)| w)
            .sum()
    }

    pub fn has_pos_inf(&self) -> bool {
        self.values.iter().any(|v| v.is_infinite())
    }

    /// The law of `c * X + b` for `c > 0`.
    pub fn affine(&self, c: f64, b: f64) -> Result<Self> {
        if !(c > 0.0 && c.is_finite() && b.is_finite()) {
            return Err(Error::Domain(format!("affine map needs c > 0 and finite b, got {c}, {b}")));
        }
        let values = self
            .values
            .iter()
            .map(|&v| if v.is_infinite() { v } else { c * v + b })
            .collect();
        Ok(WeightedSample { values, weights: self.weights.clone(), merged: OnceLock::new() })
    }

    /// The law of `-X`; fails when `X` charges `+inf`.
    pub fn negated(&self) -> Result<Self> {
        if self.has_pos_inf() {
            return Err(Error::Domain("negating a sample with mass at +inf".into()));
        }
        let values = self.values.iter().map(|v| -v).collect();
        Ok(WeightedSample { values, weights: self.weights.clone(), merged: OnceLock::new() })
    }

    /// Exact law of the maximum (or minimum) of `m` independent copies.
    pub fn iid_extension(&self, m: u32, mode: Extremum) -> Self {
        if m <= 1 {
            return self.clone();
        }
        let atoms = self.atoms();
        let n = atoms.values.len();
        let mi = m as i32;
        let mut weights = Vec::with_capacity(n);
        match mode {
            Extremum::Max => {
                let mut cum = 0.0f64;
                let mut prev = 0.0f64;
                for (k, w) in atoms.weights.iter().enumerate() {
                    cum += w;
                    let c = if k + 1 == n { 1.0 } else { cum.min(1.0) };
                    let cur = c.powi(mi);
                    weights.push((cur - prev).max(0.0));
                    prev = cur;
                }
            }
            Extremum::Min => {
                // survival[k] = P(X > v_k), accumulated from the top
                let mut survival = vec![0.0f64; n];
                let mut acc = 0.0f64;
                for k in (0..n).rev() {
                    survival[k] = acc.min(1.0);
                    acc += atoms.weights[k];
                }
                let mut prev = 1.0f64;
                for s in survival {
                    let cur = s.powi(mi);
                    weights.push((prev - cur).max(0.0));
                    prev = cur;
                }
            }
        }
        Self::normalized(atoms.values.clone(), weights)
    }
}
