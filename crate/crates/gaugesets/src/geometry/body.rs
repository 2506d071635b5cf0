use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::ext_real::ExtReal;

use super::angular::{cone_shape, ConeShape};
use super::halfspace::HalfSpace;
use super::linalg::{add, dot, norm, p2, scaled, P2};
use super::lp;
use super::plane::{self, Chain2d};

/// Relative tolerance for deciding that a direction leaves a recession ray.
pub const RAY_TOL: f64 = 1e-12;

/// Generalized polyhedron `conv(vertices) + cone(rays)`, optionally carrying
/// an H-representation.
///
/// No vertices and no H-rep is the empty set. No vertices with an H-rep is an
/// H-only body (used in dimension three and up, where vertex enumeration is
/// not attempted).
#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    pub rays: Vec<Vec<f64>>,
    pub hrep: Option<Vec<HalfSpace>>,
    pub is_cone: bool,
}

fn check_dim(v: &[f64], dim: usize) -> Result<()> {
    if v.len() != dim {
        return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
    }
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Format("coordinates must be finite".into()));
    }
    Ok(())
}

impl ConvexBody {
    pub fn empty(dim: usize) -> Self {
        ConvexBody { dim, vertices: Vec::new(), rays: Vec::new(), hrep: None, is_cone: false }
    }

    pub fn point(x: Vec<f64>) -> Result<Self> {
        Self::polytope(vec![x], Vec::new())
    }

    pub fn origin(dim: usize) -> Self {
        ConvexBody { dim, vertices: vec![vec![0.0; dim]], rays: Vec::new(), hrep: None, is_cone: true }
    }

    /// `conv(vertices) + cone(rays)`; zero rays are dropped.
    pub fn polytope(vertices: Vec<Vec<f64>>, rays: Vec<Vec<f64>>) -> Result<Self> {
        let dim = match vertices.first() {
            Some(v) => v.len(),
            None => return Err(Error::Format("a body needs at least one vertex".into())),
        };
        if dim == 0 {
            return Err(Error::Format("dimension must be positive".into()));
        }
        for v in vertices.iter().chain(rays.iter()) {
            check_dim(v, dim)?;
        }
        let rays: Vec<Vec<f64>> = rays.into_iter().filter(|r| norm(r) > 0.0).collect();
        let is_cone = vertices.iter().all(|v| v.iter().all(|x| *x == 0.0));
        Ok(ConvexBody { dim, vertices, rays, hrep: None, is_cone })
    }

    /// Axis-parallel box `[lo, hi]`.
    pub fn cuboid(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self> {
        let dim = lo.len();
        check_dim(&hi, dim)?;
        check_dim(&lo, dim)?;
        if dim == 0 || dim > 16 {
            return Err(Error::Unsupported(format!("box in dimension {dim}")));
        }
        if lo.iter().zip(&hi).any(|(a, b)| a > b) {
            return Err(Error::Format("box needs lo <= hi".into()));
        }
        let mut vertices = Vec::with_capacity(1 << dim);
        for mask in 0..(1usize << dim) {
            let v: Vec<f64> =
                (0..dim).map(|k| if mask >> k & 1 == 1 { hi[k] } else { lo[k] }).collect();
            if !vertices.contains(&v) {
                vertices.push(v);
            }
        }
        let mut hrep = Vec::with_capacity(2 * dim);
        for k in 0..dim {
            let mut e = vec![0.0; dim];
            e[k] = 1.0;
            hrep.push(HalfSpace::new(e.clone(), hi[k]));
            e[k] = -1.0;
            hrep.push(HalfSpace::new(e, -lo[k]));
        }
        let mut b = Self::polytope(vertices, Vec::new())?;
        b.hrep = Some(hrep);
        Ok(b)
    }

    /// Convex cone generated by `rays`, with apex at the origin.
    pub fn cone(dim: usize, rays: Vec<Vec<f64>>) -> Result<Self> {
        let mut b = Self::polytope(vec![vec![0.0; dim]], rays)?;
        b.is_cone = true;
        Ok(b)
    }

    /// `apex + cone(rays)`.
    pub fn translated_cone(apex: Vec<f64>, rays: Vec<Vec<f64>>) -> Result<Self> {
        Self::polytope(vec![apex], rays)
    }

    /// `{x : <normal, x> <= offset}` for a nonzero normal.
    pub fn halfspace(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let dim = normal.len();
        check_dim(&normal, dim)?;
        let nn = dot(&normal, &normal);
        if nn == 0.0 || !offset.is_finite() {
            return Err(Error::Format("half-space needs a nonzero normal and finite offset".into()));
        }
        let apex = scaled(&normal, offset / nn);
        let mut rays = vec![scaled(&normal, -1.0)];
        // orthonormal complement of the normal by Gram-Schmidt on the axes
        let mut basis: Vec<Vec<f64>> = vec![scaled(&normal, 1.0 / nn.sqrt())];
        for k in 0..dim {
            let mut e = vec![0.0; dim];
            e[k] = 1.0;
            for q in &basis {
                let c = dot(&e, q);
                e = add(&e, &scaled(q, -c));
            }
            let l = norm(&e);
            if l > 1e-8 {
                let e = scaled(&e, 1.0 / l);
                rays.push(e.clone());
                rays.push(scaled(&e, -1.0));
                basis.push(e);
            }
            if basis.len() == dim {
                break;
            }
        }
        let mut b = Self::polytope(vec![apex], rays)?;
        b.hrep = Some(vec![HalfSpace::new(normal, offset)]);
        Ok(b)
    }

    /// H-only body; only meaningful for `dim >= 3` queries through the LP.
    pub fn from_hrep(dim: usize, constraints: Vec<HalfSpace>) -> Result<Self> {
        for h in &constraints {
            if h.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: h.dim() });
            }
        }
        Ok(ConvexBody { dim, vertices: Vec::new(), rays: Vec::new(), hrep: Some(constraints), is_cone: false })
    }

    pub fn from_chain(chain: &Chain2d) -> Self {
        let vertices: Vec<Vec<f64>> = chain.vertices.iter().map(|v| v.to_vec()).collect();
        let is_cone = vertices.iter().all(|v| v.iter().all(|x| *x == 0.0));
        ConvexBody {
            dim: 2,
            vertices,
            rays: chain.rays.iter().map(|r| r.to_vec()).collect(),
            hrep: None,
            is_cone,
        }
    }

    pub fn is_empty_sentinel(&self) -> bool {
        self.vertices.is_empty() && self.hrep.is_none()
    }

    pub fn has_vrep(&self) -> bool {
        !self.vertices.is_empty()
    }

    /// `sup <w, x>` over the body.
    pub fn support(&self, w: &[f64]) -> Result<ExtReal> {
        if w.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: w.len() });
        }
        if self.vertices.is_empty() {
            return match &self.hrep {
                Some(h) => lp::support_of_hrep(h, w),
                None => Ok(ExtReal::NegInf),
            };
        }
        Ok(self.support_vrep(w))
    }

    pub(crate) fn support_vrep(&self, w: &[f64]) -> ExtReal {
        let wn = norm(w);
        for r in &self.rays {
            if dot(w, r) > RAY_TOL * wn * norm(r) {
                return ExtReal::PosInf;
            }
        }
        ExtReal::Finite(self.vertices.iter().map(|v| dot(w, v)).fold(f64::NEG_INFINITY, f64::max))
    }

    /// Membership up to `tol`.
    pub fn contains(&self, x: &[f64], tol: f64) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if self.has_vrep() {
            return lp::vrep_contains(&self.vertices, &self.rays, x, tol);
        }
        Ok(match &self.hrep {
            Some(h) => h.iter().all(|c| c.contains(x, tol)),
            None => false,
        })
    }

    /// Facet description; derived from the vertices in the plane, otherwise
    /// whatever was supplied.
    pub fn hrep(&self) -> Result<Vec<HalfSpace>> {
        if let Some(h) = &self.hrep {
            return Ok(h.clone());
        }
        if self.dim == 2 && self.has_vrep() {
            return Ok(self.normalized_2d().0);
        }
        if self.is_empty_sentinel() {
            let mut n = vec![0.0; self.dim];
            n[0] = 1.0;
            return Ok(vec![HalfSpace::new(n, ExtReal::NegInf)]);
        }
        Err(Error::MissingHRep(self.dim))
    }

    fn vrep2(&self) -> (Vec<P2>, Vec<P2>) {
        (self.vertices.iter().map(|v| p2(v)).collect(), self.rays.iter().map(|r| p2(r)).collect())
    }

    /// Planar V-rep pruned to extreme points and facet rays, with facets.
    pub fn normalized_2d(&self) -> (Vec<HalfSpace>, Chain2d) {
        let (v, r) = self.vrep2();
        plane::vrep_to_hrep(&v, &r)
    }

    /// Prunes redundant vertices and rays (planar bodies only) and attaches
    /// the facet list.
    pub fn normalize(&self) -> ConvexBody {
        if self.dim != 2 || !self.has_vrep() {
            return self.clone();
        }
        let (facets, chain) = self.normalized_2d();
        let mut b = ConvexBody::from_chain(&chain);
        b.is_cone = self.is_cone || b.is_cone;
        b.hrep = Some(facets);
        b
    }

    pub fn translate(&self, z: &[f64]) -> Result<ConvexBody> {
        check_dim(z, self.dim)?;
        let mut b = self.clone();
        for v in b.vertices.iter_mut() {
            *v = add(v, z);
        }
        if let Some(h) = b.hrep.as_mut() {
            for c in h.iter_mut() {
                if let ExtReal::Finite(t) = c.offset {
                    c.offset = ExtReal::Finite(t + dot(&c.normal, z));
                }
            }
        }
        b.is_cone = b.vertices.iter().all(|v| v.iter().all(|x| *x == 0.0)) && b.has_vrep();
        Ok(b)
    }

    /// `c * body` for `c > 0`.
    pub fn scale(&self, c: f64) -> ConvexBody {
        let mut b = self.clone();
        for v in b.vertices.iter_mut() {
            *v = scaled(v, c);
        }
        if let Some(h) = b.hrep.as_mut() {
            for hs in h.iter_mut() {
                hs.offset = hs.offset.scale(c);
            }
        }
        b
    }
}

/// `a + b`: pairwise vertex sums and the union of rays, pruned in the plane.
pub fn minkowski_sum(a: &ConvexBody, b: &ConvexBody) -> Result<ConvexBody> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch { expected: a.dim, got: b.dim });
    }
    if a.is_empty_sentinel() || b.is_empty_sentinel() {
        return Ok(ConvexBody::empty(a.dim));
    }
    if !a.has_vrep() || !b.has_vrep() {
        return Err(Error::Unsupported("Minkowski sum of H-only bodies".into()));
    }
    let mut vertices = Vec::with_capacity(a.vertices.len() * b.vertices.len());
    for u in &a.vertices {
        for v in &b.vertices {
            let s = add(u, v);
            if !vertices.contains(&s) {
                vertices.push(s);
            }
        }
    }
    let mut rays = a.rays.clone();
    for r in &b.rays {
        if !rays.contains(r) {
            rays.push(r.clone());
        }
    }
    let sum = ConvexBody {
        dim: a.dim,
        vertices,
        rays,
        hrep: None,
        is_cone: a.is_cone && b.is_cone,
    };
    Ok(sum.normalize())
}

fn to_matrix(g: &[Vec<f64>], dim: usize) -> Result<DMatrix<f64>> {
    if g.len() != dim || g.iter().any(|r| r.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
    }
    Ok(DMatrix::from_fn(dim, dim, |i, j| g[i][j]))
}

/// `Gamma * body` for an invertible matrix given by rows.
pub fn linear_image(body: &ConvexBody, gamma: &[Vec<f64>]) -> Result<ConvexBody> {
    let m = to_matrix(gamma, body.dim)?;
    let inv = m.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let cond = m.norm() * inv.norm();
    if !cond.is_finite() || cond > 1e14 {
        return Err(Error::SingularMatrix);
    }
    let apply = |v: &Vec<f64>| -> Vec<f64> {
        (0..body.dim).map(|i| (0..body.dim).map(|j| m[(i, j)] * v[j]).sum()).collect()
    };
    let hrep = body.hrep.as_ref().map(|h| {
        // <n, x> <= t with x = inv * y becomes <inv^T n, y> <= t
        h.iter()
            .map(|c| {
                let n: Vec<f64> =
                    (0..body.dim).map(|j| (0..body.dim).map(|i| inv[(i, j)] * c.normal[i]).sum()).collect();
                HalfSpace { normal: n, offset: c.offset }
            })
            .collect()
    });
    Ok(ConvexBody {
        dim: body.dim,
        vertices: body.vertices.iter().map(apply).collect(),
        rays: body.rays.iter().map(apply).collect(),
        hrep,
        is_cone: body.is_cone,
    })
}

/// Polar set `{u : <u, x> <= 1 for all x in body}`; requires `0` in body.
pub fn polar_set(body: &ConvexBody) -> Result<ConvexBody> {
    if !body.has_vrep() {
        return Err(Error::Unsupported("polar of a body without vertices".into()));
    }
    if !body.contains(&vec![0.0; body.dim], 1e-9)? {
        return Err(Error::Precondition("polar needs the origin inside the body".into()));
    }
    let mut cons = Vec::with_capacity(body.vertices.len() + body.rays.len());
    for v in &body.vertices {
        let rhs = if body.is_cone { 0.0 } else { 1.0 };
        cons.push(HalfSpace::new(v.clone(), rhs));
    }
    for r in &body.rays {
        cons.push(HalfSpace::new(r.clone(), 0.0));
    }
    if body.dim != 2 {
        return ConvexBody::from_hrep(body.dim, cons);
    }
    let res = plane::intersect_halfplanes(&cons);
    let chain = res.chain.ok_or_else(|| Error::Degenerate("empty polar".into()))?;
    let mut out = ConvexBody::from_chain(&chain);
    out.is_cone = body.is_cone;
    out.hrep = Some(res.active.iter().map(|&i| cons[i].clone()).collect());
    Ok(out)
}

/// Generator form of the polar of `cone(generators)` in the plane.
///
/// Generators spanning the whole plane have polar `{0}`; that case is
/// reported as [`Error::Degenerate`].
pub fn polar_cone_2d(generators: &[P2]) -> Result<ConvexBody> {
    let shape = cone_shape(generators);
    if shape == ConeShape::Plane {
        return Err(Error::Degenerate("generators span the plane; the polar is {0}".into()));
    }
    cone_body(&shape.polar())
}

/// Cone body for a planar cone shape.
pub fn cone_body(shape: &ConeShape) -> Result<ConvexBody> {
    let rays: Vec<Vec<f64>> = shape.generators().into_iter().map(|g| g.to_vec()).collect();
    ConvexBody::cone(2, rays)
}

/// Generators of a planar cone body (its rays; vertices must be the origin).
pub fn cone_generators_2d(body: &ConvexBody) -> Result<Vec<P2>> {
    if body.dim != 2 || !body.has_vrep() || body.vertices.iter().any(|v| v.iter().any(|x| *x != 0.0)) {
        return Err(Error::Precondition("expected a planar cone with apex at the origin".into()));
    }
    Ok(body.rays.iter().map(|r| p2(r)).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ext_real::ExtReal::*;

    fn unit_square() -> ConvexBody {
        ConvexBody::cuboid(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap()
    }

    #[test]
    fn support_basics() {
        let s = unit_square();
        assert_eq!(s.support(&[1.0, 1.0]).unwrap(), Finite(2.0));
        assert_eq!(s.support(&[0.0, 0.0]).unwrap(), Finite(0.0));
        assert_eq!(ConvexBody::empty(2).support(&[1.0, 0.0]).unwrap(), NegInf);
        let tc = ConvexBody::translated_cone(vec![1.0, 1.0], vec![vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        assert_eq!(tc.support(&[1.0, -1.0]).unwrap(), PosInf);
        assert_eq!(tc.support(&[1.0, 2.0]).unwrap(), Finite(3.0));
    }

    #[test]
    fn sums_and_images() {
        let s = unit_square();
        let d = minkowski_sum(&s, &s).unwrap();
        assert_eq!(d.vertices.len(), 4);
        assert_eq!(d.support(&[1.0, 0.0]).unwrap(), Finite(2.0));
        let img = linear_image(&s, &[vec![2.0, 0.0], vec![0.0, 3.0]]).unwrap();
        assert_eq!(img.support(&[0.0, 1.0]).unwrap(), Finite(3.0));
        assert_eq!(img.support(&[1.0, 0.0]).unwrap(), Finite(2.0));
        assert_eq!(
            linear_image(&s, &[vec![1.0, 2.0], vec![2.0, 4.0]]).unwrap_err(),
            Error::SingularMatrix
        );
    }

    #[test]
    fn polars() {
        let sq = ConvexBody::cuboid(vec![-1.0, -1.0], vec![1.0, 1.0]).unwrap();
        let p = polar_set(&sq).unwrap();
        assert_eq!(p.vertices.len(), 4);
        assert_eq!(p.support(&[1.0, 1.0]).unwrap(), Finite(1.0));
        assert_eq!(p.support(&[1.0, 0.0]).unwrap(), Finite(1.0));
        assert!(polar_set(&unit_square().translate(&[1.0, 1.0]).unwrap()).is_err());

        let neg = ConvexBody::cone(2, vec![vec![-1.0, 0.0], vec![0.0, -1.0]]).unwrap();
        let pos = polar_set(&neg).unwrap();
        assert_eq!(pos.support(&[1.0, 1.0]).unwrap(), PosInf);
        assert_eq!(pos.support(&[-1.0, -0.5]).unwrap(), Finite(0.0));

        let pc = polar_cone_2d(&[[1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(pc.rays, vec![vec![-1.0, 0.0], vec![0.0, -1.0]]);
        let pc = polar_cone_2d(&[[2.0, -1.0], [-1.0, 2.0]]).unwrap();
        let dirs: Vec<P2> = pc.rays.iter().map(|r| p2(r)).collect();
        assert_eq!(dirs, vec![[-2.0, -1.0], [-1.0, -2.0]]);
        let pc = polar_cone_2d(&[[-2.0, 1.0], [1.0, -2.0], [-1.0, -1.0]]).unwrap();
        let dirs: Vec<P2> = pc.rays.iter().map(|r| p2(r)).collect();
        assert_eq!(dirs, vec![[2.0, 1.0], [1.0, 2.0]]);
        assert!(polar_cone_2d(&[[1.0, 0.0], [-1.0, 1.0], [-1.0, -1.0]]).is_err());
        let half = polar_cone_2d(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]).unwrap();
        assert_eq!(half.rays, vec![vec![0.0, -1.0]]);
    }

    #[test]
    fn halfspace_body() {
        let h = ConvexBody::halfspace(vec![1.0, 1.0], 2.0).unwrap();
        assert_eq!(h.support(&[1.0, 1.0]).unwrap(), Finite(2.0));
        assert_eq!(h.support(&[1.0, 0.0]).unwrap(), PosInf);
        let h3 = ConvexBody::halfspace(vec![0.0, 0.0, 2.0], 4.0).unwrap();
        assert_eq!(h3.rays.len(), 5);
        let v = h3.support(&[0.0, 0.0, 1.0]).unwrap().finite().unwrap();
        assert!((v - 2.0).abs() < 1e-15);
    }
}
