use crate::error::{Error, Result};
use crate::geometry::lp::vrep_contains;
use crate::geometry::{minkowski_sum, ConvexBody, Region};
use crate::model::{Partition, RandomSetModel};

use super::AtomBodies;

/// Largest vertex list a Minkowski average may build before pruning.
const MAX_SUM_VERTICES: usize = 200_000;

fn vrep_body(b: &ConvexBody) -> Result<&ConvexBody> {
    if b.has_vrep() {
        Ok(b)
    } else {
        Err(Error::Unsupported("this operation needs bodies with vertex lists".into()))
    }
}

/// Drops vertices lying in the hull of the others (spatial bodies; planar
/// sums are pruned by `minkowski_sum` itself).
fn prune(body: ConvexBody) -> Result<ConvexBody> {
    if body.dim == 2 || body.vertices.len() <= body.dim + 1 {
        return Ok(body);
    }
    let mut keep: Vec<Vec<f64>> = body.vertices.clone();
    let mut i = 0;
    while i < keep.len() {
        let others: Vec<Vec<f64>> =
            keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, v)| v.clone()).collect();
        if !others.is_empty() && vrep_contains(&others, &body.rays, &keep[i], 1e-12)? {
            keep.remove(i);
        } else {
            i += 1;
        }
    }
    Ok(ConvexBody { vertices: keep, ..body })
}

/// Selection expectation `E(X | A)` per atom: the weighted Minkowski average
/// of the scenario bodies.
pub fn selection_expectation(model: &RandomSetModel, partition: &Partition) -> Result<AtomBodies> {
    let mut out = Vec::with_capacity(partition.cells().len());
    for cell in partition.cells() {
        let mut acc: Option<ConvexBody> = None;
        for (&i, &p) in cell.indices.iter().zip(&cell.weights) {
            let term = vrep_body(&model.scenarios()[i].body)?.scale(p);
            let next = match acc {
                None => term.normalize(),
                Some(a) => {
                    if a.vertices.len() * term.vertices.len() > MAX_SUM_VERTICES {
                        return Err(Error::SizeLimit("Minkowski average has too many vertices".into()));
                    }
                    prune(minkowski_sum(&a, &term)?)?
                }
            };
            acc = Some(next);
        }
        let body = acc.ok_or_else(|| Error::Precondition(format!("atom {} is empty", cell.label)))?;
        out.push((cell.label.clone(), body));
    }
    Ok(out)
}

/// Conditional core per atom: the intersection of the atom's scenario bodies.
pub fn conditional_core(model: &RandomSetModel, partition: &Partition) -> Result<AtomBodies> {
    let dim = model.dim();
    let mut out = Vec::with_capacity(partition.cells().len());
    for cell in partition.cells() {
        let mut cons = Vec::new();
        for &i in &cell.indices {
            cons.extend(model.scenarios()[i].body.hrep()?);
        }
        let region = Region::from_constraints(dim, cons)?;
        let mut body = region.to_body();
        if dim != 2 && !region.empty {
            body.hrep = Some(region.constraints.clone());
        }
        out.push((cell.label.clone(), body));
    }
    Ok(out)
}

/// Conditional convex hull per atom: `conv` of the union of the atom's
/// scenario bodies.
pub fn conditional_hull(model: &RandomSetModel, partition: &Partition) -> Result<AtomBodies> {
    let mut out = Vec::with_capacity(partition.cells().len());
    for cell in partition.cells() {
        let mut vertices: Vec<Vec<f64>> = Vec::new();
        let mut rays: Vec<Vec<f64>> = Vec::new();
        for &i in &cell.indices {
            let b = vrep_body(&model.scenarios()[i].body)?;
            for v in &b.vertices {
                if !vertices.contains(v) {
                    vertices.push(v.clone());
                }
            }
            for r in &b.rays {
                if !rays.contains(r) {
                    rays.push(r.clone());
                }
            }
        }
        let body = prune(ConvexBody::polytope(vertices, rays)?)?.normalize();
        out.push((cell.label.clone(), body));
    }
    Ok(out)
}
