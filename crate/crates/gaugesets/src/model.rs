//! Finite-scenario random convex sets and the partitions that condition them.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;
use crate::geometry::{hrep_feasible, ConvexBody};
use crate::scalar::{WeightedSample, WEIGHT_SUM_TOL};

/// Atom label used when nothing conditions the model.
pub const TRIVIAL_ATOM: &str = "all";

/// Default number of equal-frequency bins for a continuous covariate.
pub const DEFAULT_BINS: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub prob: f64,
    pub body: ConvexBody,
    pub atom: String,
}

impl Scenario {
    pub fn new(prob: f64, body: ConvexBody) -> Self {
        Scenario { prob, body, atom: TRIVIAL_ATOM.to_string() }
    }

    pub fn with_atom(prob: f64, body: ConvexBody, atom: impl Into<String>) -> Self {
        Scenario { prob, body, atom: atom.into() }
    }
}

/// A random closed convex set with finitely many outcomes.
#[derive(Debug, Clone)]
pub struct RandomSetModel {
    scenarios: Vec<Scenario>,
    dim: usize,
    /// scenario probabilities, contiguous for the scalarization loop
    probs: Vec<f64>,
    /// row-major copy of the points when every scenario is a singleton
    points: Option<Vec<f64>>,
}

impl RandomSetModel {
    /// Drops zero-probability scenarios and checks the rest.
    pub fn new(scenarios: Vec<Scenario>) -> Result<Self> {
        if scenarios.iter().any(|s| !s.prob.is_finite() || s.prob < 0.0) {
            return Err(Error::InvalidSample("scenario probabilities must be finite and nonnegative".into()));
        }
        let total: f64 = scenarios.iter().map(|s| s.prob).sum();
        if (total - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(Error::InvalidSample(format!("scenario probabilities sum to {total}, not 1")));
        }
        let scenarios: Vec<Scenario> = scenarios.into_iter().filter(|s| s.prob > 0.0).collect();
        let dim = match scenarios.first() {
            Some(s) => s.body.dim,
            None => return Err(Error::InvalidSample("model without scenarios".into())),
        };
        for s in &scenarios {
            if s.body.dim != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: s.body.dim });
            }
            let nonempty = if s.body.has_vrep() {
                true
            } else {
                match &s.body.hrep {
                    Some(h) => hrep_feasible(h, dim)?,
                    None => false,
                }
            };
            if !nonempty {
                return Err(Error::InvalidSample("scenario bodies must be nonempty".into()));
            }
        }
        let singletons = scenarios.iter().all(|s| s.body.vertices.len() == 1 && s.body.rays.is_empty());
        let points = singletons.then(|| {
            scenarios.iter().flat_map(|s| s.body.vertices[0].iter().copied()).collect()
        });
        let probs = scenarios.iter().map(|s| s.prob).collect();
        Ok(RandomSetModel { scenarios, dim, probs, points })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.scenarios.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scenarios.is_empty()
    }

    pub fn scenarios(&self) -> &[Scenario] {
        &self.scenarios
    }

    pub fn probs(&self) -> Vec<f64> {
        self.probs.clone()
    }

    /// Whether every scenario is a single point.
    pub fn is_singleton_model(&self) -> bool {
        self.points.is_some()
    }

    /// Whether every scenario is a cone with apex at the origin.
    pub fn is_cone_model(&self) -> bool {
        self.scenarios.iter().all(|s| {
            s.body.has_vrep() && s.body.vertices.iter().all(|v| v.iter().all(|x| *x == 0.0))
        })
    }

    /// The points of a singleton model.
    pub fn points(&self) -> Option<Vec<Vec<f64>>> {
        self.points.as_ref().map(|p| p.chunks(self.dim).map(|c| c.to_vec()).collect())
    }

    fn support_at(&self, i: usize, w: &[f64]) -> Result<ExtReal> {
        match &self.points {
            Some(p) => {
                let x = &p[i * self.dim..(i + 1) * self.dim];
                Ok(ExtReal::Finite(x.iter().zip(w).map(|(a, b)| a * b).sum()))
            }
            None => self.scenarios[i].body.support(w),
        }
    }

    fn check_direction(&self, w: &[f64]) -> Result<()> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: w.len() });
        }
        if w.iter().any(|x| !x.is_finite()) {
            return Err(Error::Domain("direction must be finite".into()));
        }
        Ok(())
    }

    fn sample_over(&self, idx: impl Iterator<Item = (usize, f64)>, w: &[f64]) -> Result<WeightedSample> {
        self.check_direction(w)?;
        let (lower, _) = idx.size_hint();
        let mut values = Vec::with_capacity(lower);
        let mut weights = Vec::with_capacity(lower);
        if let Some(p) = &self.points {
            for (i, q) in idx {
                let x = &p[i * self.dim..(i + 1) * self.dim];
                values.push(x.iter().zip(w).map(|(a, b)| a * b).sum());
                weights.push(q);
            }
            return Ok(WeightedSample::normalized(values, weights));
        }
        for (i, p) in idx {
            let h = self.support_at(i, w)?;
            if h == ExtReal::NegInf {
                return Err(Error::InvalidSample("empty scenario body".into()));
            }
            values.push(h.to_f64());
            weights.push(p);
        }
        Ok(WeightedSample::normalized(values, weights))
    }

    /// Law of the support function `h(X, w)`.
    pub fn scalarize(&self, w: &[f64]) -> Result<WeightedSample> {
        self.sample_over(self.probs.iter().copied().enumerate(), w)
    }

    /// Law of `h(X, w)` given the atom `label`.
    pub fn conditional_scalarize(&self, partition: &Partition, label: &str, w: &[f64]) -> Result<WeightedSample> {
        let cell = partition.cell(label)?;
        self.sample_over(cell.indices.iter().copied().zip(cell.weights.iter().copied()), w)
    }

    /// `P{w in B_X}`: the mass of scenarios whose support at `w` is finite.
    pub fn barrier_probability(&self, w: &[f64]) -> Result<f64> {
        self.check_direction(w)?;
        let mut p = 0.0;
        for (i, s) in self.scenarios.iter().enumerate() {
            if self.support_at(i, w)?.is_finite() {
                p += s.prob;
            }
        }
        Ok(p.min(1.0))
    }

    /// The model restricted to one atom, with its conditional weights.
    pub fn atom_submodel(&self, partition: &Partition, label: &str) -> Result<RandomSetModel> {
        let cell = partition.cell(label)?;
        let scenarios = cell
            .indices
            .iter()
            .zip(&cell.weights)
            .map(|(&i, &w)| Scenario { prob: w, ..self.scenarios[i].clone() })
            .collect();
        RandomSetModel::new(scenarios)
    }

    /// The partition generated by the scenario atom labels.
    pub fn partition(&self) -> Partition {
        let mut order: Vec<String> = Vec::new();
        let mut groups: HashMap<&str, Vec<usize>> = HashMap::new();
        for (i, s) in self.scenarios.iter().enumerate() {
            groups
                .entry(s.atom.as_str())
                .or_insert_with(|| {
                    order.push(s.atom.clone());
                    Vec::new()
                })
                .push(i);
        }
        let cells = order
            .into_iter()
            .map(|label| {
                let idx = groups.remove(label.as_str()).unwrap_or_default();
                AtomCell::new(label, idx, self)
            })
            .collect();
        Partition { cells, n: self.len() }
    }
}

/// One atom of a partition: scenario indices and their conditional weights.
#[derive(Debug, Clone, PartialEq)]
pub struct AtomCell {
    pub label: String,
    pub indices: Vec<usize>,
    pub weights: Vec<f64>,
    /// unconditional probability of the atom
    pub prob: f64,
}

impl AtomCell {
    fn new(label: String, indices: Vec<usize>, model: &RandomSetModel) -> Self {
        let prob: f64 = indices.iter().map(|&i| model.scenarios[i].prob).sum();
        let weights = indices.iter().map(|&i| model.scenarios[i].prob / prob).collect();
        AtomCell { label, indices, weights, prob }
    }
}

/// A finite partition of the scenario indices.
#[derive(Debug, Clone, PartialEq)]
pub struct Partition {
    cells: Vec<AtomCell>,
    n: usize,
}

impl Partition {
    /// The single atom holding every scenario.
    pub fn trivial(model: &RandomSetModel) -> Self {
        let cell = AtomCell::new(TRIVIAL_ATOM.to_string(), (0..model.len()).collect(), model);
        Partition { cells: vec![cell], n: model.len() }
    }

    /// Explicit cells; they must cover every scenario exactly once.
    pub fn new(model: &RandomSetModel, cells: Vec<(String, Vec<usize>)>) -> Result<Self> {
        let mut seen = vec![false; model.len()];
        let mut labels = std::collections::HashSet::new();
        for (label, idx) in &cells {
            if !labels.insert(label.as_str()) {
                return Err(Error::Format(format!("duplicate atom label {label:?}")));
            }
            if idx.is_empty() {
                return Err(Error::Format(format!("atom {label:?} is empty")));
            }
            for &i in idx {
                if i >= seen.len() || seen[i] {
                    return Err(Error::Format(format!("scenario {i} is missing or in two atoms")));
                }
                seen[i] = true;
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::Format("partition does not cover every scenario".into()));
        }
        let cells = cells.into_iter().map(|(l, idx)| AtomCell::new(l, idx, model)).collect();
        Ok(Partition { cells, n: model.len() })
    }

    pub fn cells(&self) -> &[AtomCell] {
        &self.cells
    }

    pub fn labels(&self) -> Vec<&str> {
        self.cells.iter().map(|c| c.label.as_str()).collect()
    }

    pub fn cell(&self, label: &str) -> Result<&AtomCell> {
        self.cells
            .iter()
            .find(|c| c.label == label)
            .ok_or_else(|| Error::UnknownAtom(label.to_string()))
    }

    pub fn is_trivial(&self) -> bool {
        self.cells.len() == 1
    }

    /// Number of scenarios the partition was built for.
    pub fn scenario_count(&self) -> usize {
        self.n
    }
}

/// One singleton scenario per row. Weights default to equal; weights that do
/// not sum to one are renormalized with a warning. Atom labels, when given,
/// define the partition.
pub fn from_point_samples(
    rows: &[Vec<f64>],
    weights: Option<&[f64]>,
    atoms: Option<&[String]>,
) -> Result<(RandomSetModel, Partition)> {
    let d = match rows.first() {
        Some(r) => r.len(),
        None => return Err(Error::Format("no data rows".into())),
    };
    if d == 0 {
        return Err(Error::Format("rows need at least one coordinate".into()));
    }
    for (k, r) in rows.iter().enumerate() {
        if r.len() != d {
            return Err(Error::Format(format!("row {} has {} coordinates, expected {d}", k + 1, r.len())));
        }
        if r.iter().any(|x| !x.is_finite()) {
            return Err(Error::Format(format!("row {} has a non-finite coordinate", k + 1)));
        }
    }
    let n = rows.len();
    let probs: Vec<f64> = match weights {
        None => vec![1.0 / n as f64; n],
        Some(w) => {
            if w.len() != n {
                return Err(Error::Format(format!("{} weights for {n} rows", w.len())));
            }
            if w.iter().any(|x| !x.is_finite() || *x < 0.0) {
                return Err(Error::Format("weights must be finite and nonnegative".into()));
            }
            let total: f64 = w.iter().sum();
            if total <= 0.0 {
                return Err(Error::Format("weights sum to zero".into()));
            }
            if (total - 1.0).abs() > WEIGHT_SUM_TOL {
                log::warn!("weights sum to {total}; renormalizing");
            }
            w.iter().map(|x| x / total).collect()
        }
    };
    if let Some(a) = atoms {
        if a.len() != n {
            return Err(Error::Format(format!("{} atom labels for {n} rows", a.len())));
        }
    }
    let mut scenarios = Vec::with_capacity(n);
    for (k, r) in rows.iter().enumerate() {
        let atom = atoms.map_or(TRIVIAL_ATOM.to_string(), |a| a[k].clone());
        scenarios.push(Scenario { prob: probs[k], body: ConvexBody::point(r.clone())?, atom });
    }
    // renormalized weights can be a few ulps off one
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > WEIGHT_SUM_TOL {
        return Err(Error::InvalidSample(format!("weights sum to {total}")));
    }
    let model = RandomSetModel::new(scenarios)?;
    let partition = if atoms.is_some() { model.partition() } else { Partition::trivial(&model) };
    Ok((model, partition))
}

/// Equal-frequency bin labels `bin0, bin1, ...` for a continuous covariate.
/// Tied values always share a bin.
pub fn equal_frequency_bins(values: &[f64], bins: usize) -> Result<Vec<String>> {
    if bins == 0 {
        return Err(Error::Precondition("need at least one bin".into()));
    }
    if values.iter().any(|v| v.is_nan()) {
        return Err(Error::Format("NaN covariate".into()));
    }
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut labels = vec![String::new(); n];
    let mut current = 0;
    for (rank, &i) in order.iter().enumerate() {
        let tied = rank > 0 && values[order[rank - 1]] == values[i];
        if !tied {
            current = rank * bins / n;
        }
        labels[i] = format!("bin{current}");
    }
    Ok(labels)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(lo: f64, hi: f64) -> ConvexBody {
        ConvexBody::cuboid(vec![lo, lo], vec![hi, hi]).unwrap()
    }

    #[test]
    fn points_and_partitions() {
        let rows = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]];
        let (m, p) = from_point_samples(&rows, None, None).unwrap();
        assert_eq!(m.len(), 4);
        assert!(p.is_trivial());
        assert_eq!(m.probs(), vec![0.25; 4]);

        let labels: Vec<String> = ["a", "b", "a", "b"].iter().map(|s| s.to_string()).collect();
        let w = [1.0, 1.0, 3.0, 1.0];
        let (m, p) = from_point_samples(&rows, Some(&w), Some(&labels)).unwrap();
        assert_eq!(p.labels(), vec!["a", "b"]);
        let a = p.cell("a").unwrap();
        assert_eq!(a.weights, vec![0.25, 0.75]);
        assert!((a.prob - 4.0 / 6.0).abs() < 1e-15);
        let s = m.conditional_scalarize(&p, "a", &[0.0, 1.0]).unwrap();
        assert_eq!(s.raw_values(), &[0.0, 1.0]);
        assert!(matches!(m.conditional_scalarize(&p, "zz", &[0.0, 1.0]), Err(Error::UnknownAtom(_))));

        let ragged = vec![vec![0.0, 0.0], vec![1.0]];
        assert!(matches!(from_point_samples(&ragged, None, None), Err(Error::Format(_))));
    }

    #[test]
    fn scalarize_and_barrier() {
        let cone = ConvexBody::cone(2, vec![vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let m = RandomSetModel::new(vec![Scenario::new(0.5, square(0.0, 1.0)), Scenario::new(0.5, cone)]).unwrap();
        let s = m.scalarize(&[1.0, 1.0]).unwrap();
        assert_eq!(s.raw_values(), &[2.0, 0.0]);
        let s = m.scalarize(&[-1.0, 0.0]).unwrap();
        assert_eq!(s.raw_values(), &[0.0, f64::INFINITY]);
        assert_eq!(m.barrier_probability(&[-1.0, 0.0]).unwrap(), 0.5);
        assert_eq!(m.barrier_probability(&[1.0, 0.0]).unwrap(), 1.0);
    }

    #[test]
    fn rejects_bad_models() {
        assert!(RandomSetModel::new(vec![]).is_err());
        assert!(RandomSetModel::new(vec![Scenario::new(0.5, square(0.0, 1.0))]).is_err());
        assert!(RandomSetModel::new(vec![Scenario::new(1.0, ConvexBody::empty(2))]).is_err());
        let m = RandomSetModel::new(vec![
            Scenario::new(1.0, square(0.0, 1.0)),
            Scenario::new(0.0, square(5.0, 6.0)),
        ])
        .unwrap();
        assert_eq!(m.len(), 1);
    }

    #[test]
    fn binning() {
        let v = [5.0, 1.0, 3.0, 3.0, 2.0, 9.0];
        let b = equal_frequency_bins(&v, 3).unwrap();
        assert_eq!(b, vec!["bin2", "bin0", "bin1", "bin1", "bin0", "bin2"]);
        let b = equal_frequency_bins(&[1.0, 1.0, 1.0], 3).unwrap();
        assert!(b.iter().all(|l| l == "bin0"));
    }
}
