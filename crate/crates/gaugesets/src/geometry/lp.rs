//! Dense two-phase simplex with Bland's rule.
//!
//! Problems here have a handful of equality rows (the dimension, plus one)
//! and up to a few thousand columns, so the LPs are posed in the dual/column
//! form and the tableau stays small.

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;

use super::halfspace::HalfSpace;
use super::linalg::norm;

const PIVOT_TOL: f64 = 1e-11;
const COST_TOL: f64 = 1e-10;
const MAX_PIVOTS: usize = 200_000;

#[derive(Debug, Clone, PartialEq)]
pub enum LpOutcome {
    Optimal { x: Vec<f64>, value: f64 },
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize,
    /// `rows` rows of `cols + 1` entries, the last being the right-hand side
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let p = self.t[r][c];
        for v in self.t[r].iter_mut() {
            *v /= p;
        }
        let pivot_row = self.t[r].clone();
        for (i, row) in self.t.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for (v, pv) in row.iter_mut().zip(&pivot_row) {
                    *v -= f * pv;
                }
                row[c] = 0.0;
            }
        }
        self.basis[r] = c;
    }

    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let mut r = cost.to_vec();
        for (i, row) in self.t.iter().enumerate() {
            let cb = cost[self.basis[i]];
            if cb != 0.0 {
                for j in 0..self.cols {
                    r[j] -= cb * row[j];
                }
            }
        }
        r
    }

    /// Runs Bland's rule on `cost` over columns `j` with `allowed(j)`.
    /// Returns false when unbounded.
    fn optimize(&mut self, cost: &[f64], allowed: impl Fn(usize) -> bool) -> Result<bool> {
        for _ in 0..MAX_PIVOTS {
            let red = self.reduced_costs(cost);
            let Some(enter) = (0..self.cols).find(|&j| allowed(j) && red[j] < -COST_TOL) else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                let a = self.t[i][enter];
                if a > PIVOT_TOL {
                    let ratio = self.t[i][self.cols] / a;
                    leave = match leave {
                        None => Some((i, ratio)),
                        Some((li, lr)) => {
                            if ratio < lr - 1e-14
                                || (ratio <= lr + 1e-14 && self.basis[i] < self.basis[li])
                            {
                                Some((i, ratio))
                            } else {
                                Some((li, lr))
                            }
                        }
                    };
                }
            }
            match leave {
                None => return Ok(false),
                Some((r, _)) => self.pivot(r, enter),
            }
        }
        Err(Error::Degenerate("simplex pivot limit reached".into()))
    }
}

/// Minimizes `c.x` subject to `A x = b`, `x >= 0`, with `A` given by rows.
pub fn solve_standard(a: &[Vec<f64>], b: &[f64], c: &[f64]) -> Result<LpOutcome> {
    let rows = a.len();
    let n = c.len();
    let cols = n + rows;
    let mut t = Vec::with_capacity(rows);
    for (i, row) in a.iter().enumerate() {
        let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
        let mut r = vec![0.0; cols + 1];
        for j in 0..n {
            r[j] = sign * row[j];
        }
        r[n + i] = 1.0;
        r[cols] = sign * b[i];
        t.push(r);
    }
    let mut tab = Tableau { rows, cols, t, basis: (n..cols).collect() };

    // phase 1: drive the artificial columns to zero
    let mut cost1 = vec![0.0; cols];
    for c1 in cost1.iter_mut().skip(n) {
        *c1 = 1.0;
    }
    tab.optimize(&cost1, |_| true)?;
    let scale = 1.0 + b.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let infeas: f64 = (0..rows).filter(|&i| tab.basis[i] >= n).map(|i| tab.t[i][cols]).sum();
    if infeas > 1e-9 * scale {
        return Ok(LpOutcome::Infeasible);
    }
    for i in 0..rows {
        if tab.basis[i] >= n {
            if let Some(j) = (0..n).find(|&j| tab.t[i][j].abs() > PIVOT_TOL) {
                tab.pivot(i, j);
            }
        }
    }

    // phase 2 on the original columns only
    let mut cost2 = vec![0.0; cols];
    cost2[..n].copy_from_slice(c);
    if !tab.optimize(&cost2, |j| j < n)? {
        return Ok(LpOutcome::Unbounded);
    }
    let mut x = vec![0.0; n];
    for i in 0..rows {
        if tab.basis[i] < n {
            x[tab.basis[i]] = tab.t[i][cols].max(0.0);
        }
    }
    let value = x.iter().zip(c).map(|(xi, ci)| xi * ci).sum();
    Ok(LpOutcome::Optimal { x, value })
}

/// Unit-normal form of the finite constraints; `None` when some constraint
/// is the empty set.
fn normalized(constraints: &[HalfSpace]) -> Option<Vec<(Vec<f64>, f64)>> {
    let mut out = Vec::new();
    for h in constraints {
        if h.is_whole_space() {
            continue;
        }
        match h.offset {
            ExtReal::Finite(b) => {
                let n = norm(&h.normal);
                out.push((h.normal.iter().map(|x| x / n).collect(), b / n));
            }
            _ => return None,
        }
    }
    Some(out)
}

fn feasible_normalized(cons: &[(Vec<f64>, f64)], dim: usize) -> Result<bool> {
    if cons.is_empty() {
        return Ok(true);
    }
    // Farkas: infeasible iff some y >= 0 has A^T y = 0 and b.y < 0.
    let mut a = vec![vec![0.0; cons.len()]; dim + 1];
    for (j, (n, _)) in cons.iter().enumerate() {
        for k in 0..dim {
            a[k][j] = n[k];
        }
        a[dim][j] = 1.0;
    }
    let mut rhs = vec![0.0; dim + 1];
    rhs[dim] = 1.0;
    let c: Vec<f64> = cons.iter().map(|(_, b)| *b).collect();
    let scale = 1.0 + c.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    Ok(match solve_standard(&a, &rhs, &c)? {
        LpOutcome::Optimal { value, .. } => value >= -1e-9 * scale,
        _ => true,
    })
}

/// Whether the intersection of the half-spaces is nonempty.
pub fn hrep_feasible(constraints: &[HalfSpace], dim: usize) -> Result<bool> {
    match normalized(constraints) {
        None => Ok(false),
        Some(cons) => feasible_normalized(&cons, dim),
    }
}

/// `sup <w, x>` over the intersection of the half-spaces.
pub fn support_of_hrep(constraints: &[HalfSpace], w: &[f64]) -> Result<ExtReal> {
    let dim = w.len();
    let Some(cons) = normalized(constraints) else {
        return Ok(ExtReal::NegInf);
    };
    if !feasible_normalized(&cons, dim)? {
        return Ok(ExtReal::NegInf);
    }
    // dual: min b.y subject to A^T y = w, y >= 0
    let mut a = vec![vec![0.0; cons.len()]; dim];
    for (j, (n, _)) in cons.iter().enumerate() {
        for k in 0..dim {
            a[k][j] = n[k];
        }
    }
    let c: Vec<f64> = cons.iter().map(|(_, b)| *b).collect();
    Ok(match solve_standard(&a, w, &c)? {
        LpOutcome::Optimal { value, .. } => ExtReal::Finite(value),
        LpOutcome::Infeasible => ExtReal::PosInf,
        LpOutcome::Unbounded => ExtReal::NegInf,
    })
}

/// Whether `x` lies in `conv(vertices) + cone(rays)`, up to an L1 residual
/// of `tol`.
pub fn vrep_contains(vertices: &[Vec<f64>], rays: &[Vec<f64>], x: &[f64], tol: f64) -> Result<bool> {
    if vertices.is_empty() {
        return Ok(false);
    }
    let dim = x.len();
    let n = vertices.len() + rays.len();
    let mut a = vec![vec![0.0; n]; dim + 1];
    for (j, v) in vertices.iter().chain(rays.iter()).enumerate() {
        for k in 0..dim {
            a[k][j] = v[k];
        }
        a[dim][j] = if j < vertices.len() { 1.0 } else { 0.0 };
    }
    let mut rhs = x.to_vec();
    rhs.push(1.0);
    // phase 1 residual with slack columns of both signs measures the distance
    let mut a_ext = a.clone();
    let mut c = vec![0.0; n];
    for k in 0..dim {
        for (i, row) in a_ext.iter_mut().enumerate() {
            row.push(if i == k { 1.0 } else { 0.0 });
            row.push(if i == k { -1.0 } else { 0.0 });
        }
        c.push(1.0);
        c.push(1.0);
    }
    Ok(match solve_standard(&a_ext, &rhs, &c)? {
        LpOutcome::Optimal { value, .. } => value <= tol,
        _ => false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_real::ExtReal::*;

    fn square() -> Vec<HalfSpace> {
        vec![
            HalfSpace::new(vec![1.0, 0.0], 1.0),
            HalfSpace::new(vec![-1.0, 0.0], 0.0),
            HalfSpace::new(vec![0.0, 1.0], 1.0),
            HalfSpace::new(vec![0.0, -1.0], 0.0),
        ]
    }

    #[test]
    fn support_of_square() {
        assert_eq!(support_of_hrep(&square(), &[1.0, 1.0]).unwrap(), Finite(2.0));
        assert_eq!(support_of_hrep(&square(), &[0.0, 0.0]).unwrap(), Finite(0.0));
        let v = support_of_hrep(&square(), &[-2.0, 0.5]).unwrap().finite().unwrap();
        assert!((v - 0.5).abs() < 1e-12);
    }

    #[test]
    fn unbounded_and_infeasible() {
        let half = vec![HalfSpace::new(vec![1.0, 0.0], 0.0)];
        assert_eq!(support_of_hrep(&half, &[0.0, 1.0]).unwrap(), PosInf);
        let bad = vec![HalfSpace::new(vec![1.0, 0.0], 0.0), HalfSpace::new(vec![-1.0, 0.0], -1.0)];
        assert_eq!(support_of_hrep(&bad, &[0.0, 1.0]).unwrap(), NegInf);
        assert!(!hrep_feasible(&bad, 2).unwrap());
        assert!(hrep_feasible(&square(), 2).unwrap());
        assert!(hrep_feasible(&[], 3).unwrap());
    }

    #[test]
    fn three_dimensional_box() {
        let mut cons = Vec::new();
        for k in 0..3 {
            let mut e = vec![0.0; 3];
            e[k] = 1.0;
            cons.push(HalfSpace::new(e.clone(), 2.0));
            e[k] = -1.0;
            cons.push(HalfSpace::new(e, 1.0));
        }
        let v = support_of_hrep(&cons, &[1.0, -1.0, 0.5]).unwrap().finite().unwrap();
        assert!((v - (2.0 + 1.0 + 1.0)).abs() < 1e-12);
    }

    #[test]
    fn membership() {
        let verts = vec![vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        assert!(vrep_contains(&verts, &[], &[0.2, 0.2], 1e-9).unwrap());
        assert!(!vrep_contains(&verts, &[], &[0.6, 0.6], 1e-9).unwrap());
        let rays = vec![vec![1.0, 1.0]];
        assert!(vrep_contains(&verts, &rays, &[5.6, 5.6], 1e-9).unwrap());
        assert!(!vrep_contains(&verts, &rays, &[-0.1, 5.0], 1e-9).unwrap());
    }
}
