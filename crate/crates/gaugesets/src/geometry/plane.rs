//! Exact planar half-plane intersection and V-rep normalization.

use std::collections::VecDeque;
use std::f64::consts::{PI, TAU};

use crate::ext_real::ExtReal;

use super::halfspace::HalfSpace;
use super::linalg::{angle2, cross2, dot2, neg2, norm2, rot_ccw, P2};

/// Normals closer than this (radians) are treated as parallel.
pub const ANGLE_TOL: f64 = 1e-10;

/// Vertices and recession directions of a planar convex set, the set being
/// `conv(vertices) + cone(rays)`.
///
/// Vertices run counter-clockwise. For unbounded sets the first ray leaves
/// the first vertex and the second ray leaves the last vertex.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain2d {
    pub vertices: Vec<P2>,
    pub rays: Vec<P2>,
}

impl Chain2d {
    pub fn whole_plane() -> Self {
        Chain2d {
            vertices: vec![[0.0, 0.0]],
            rays: vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
        }
    }

    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    pub fn support(&self, w: P2) -> ExtReal {
        let wn = norm2(w);
        for r in &self.rays {
            if dot2(w, *r) > 1e-12 * wn * norm2(*r) {
                return ExtReal::PosInf;
            }
        }
        ExtReal::Finite(
            self.vertices.iter().map(|v| dot2(w, *v)).fold(f64::NEG_INFINITY, f64::max),
        )
    }
}

/// Result of [`intersect_halfplanes`]: `None` chain means empty; `active`
/// lists indices of input constraints that support the boundary.
#[derive(Debug, Clone)]
pub struct Intersection2d {
    pub chain: Option<Chain2d>,
    pub active: Vec<usize>,
}

#[derive(Debug, Clone, Copy)]
struct Line {
    n: P2,
    b: f64,
    angle: f64,
    idx: usize,
}

impl Line {
    fn meet(&self, o: &Line) -> P2 {
        let d = cross2(self.n, o.n);
        [(self.b * o.n[1] - o.b * self.n[1]) / d, (self.n[0] * o.b - o.n[0] * self.b) / d]
    }

    fn violated_by(&self, p: P2, tol: f64) -> bool {
        dot2(self.n, p) > self.b + tol
    }
}

fn empty() -> Intersection2d {
    Intersection2d { chain: None, active: Vec::new() }
}

/// Vertices of consecutive lines (`lines[i]` meets `lines[i + 1]`, wrapping
/// around when `cyclic`), with runs of vertices closer than `tol` merged.
/// A merged vertex is recomputed from the pair of its incident lines that
/// meet at the widest angle, so that near-degenerate constraints through a
/// corner do not perturb it.
fn chain_vertices(lines: &[Line], tol: f64, cyclic: bool) -> Vec<P2> {
    let k = lines.len();
    let count = if cyclic { k } else { k.saturating_sub(1) };
    let line = |i: usize| lines[i % k];
    let verts: Vec<P2> = (0..count).map(|i| line(i).meet(&line(i + 1))).collect();
    let close = |p: P2, q: P2| (p[0] - q[0]).abs() <= tol && (p[1] - q[1]).abs() <= tol;
    // runs of close vertices as (first index, last index)
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for i in 0..count {
        match runs.last_mut() {
            Some(r) if close(verts[r.1], verts[i]) => r.1 = i,
            _ => runs.push((i, i)),
        }
    }
    if cyclic && runs.len() > 1 {
        let (first, last) = (runs[0], runs[runs.len() - 1]);
        if close(verts[last.1], verts[first.0]) {
            runs[0] = (last.0, first.1 + count);
            runs.pop();
        }
    }
    if cyclic && runs.len() == 1 && count > 1 && close(verts[0], verts[count - 1]) {
        runs[0] = (0, count - 1);
    }
    runs.into_iter()
        .map(|(s, e)| {
            if s == e {
                return verts[s % count.max(1)];
            }
            let inc: Vec<Line> = (s..=e + 1).map(line).collect();
            let (mut best, mut bv) = (-1.0, verts[s % count]);
            for x in 0..inc.len() {
                for y in x + 1..inc.len() {
                    let c = cross2(inc[x].n, inc[y].n).abs();
                    if c > best {
                        best = c;
                        bv = inc[x].meet(&inc[y]);
                    }
                }
            }
            bv
        })
        .collect()
}

/// Intersects planar half-spaces exactly (up to floating point).
///
/// Normals are sorted by angle, parallel ones merged keeping the tighter
/// offset, and the shape is classified by the largest angular gap between
/// consecutive normals: a gap above `pi` gives an unbounded pointed region
/// (envelope scan), a gap of exactly `pi` a half-strip, and smaller gaps a
/// bounded polygon (deque scan).
pub fn intersect_halfplanes(constraints: &[HalfSpace]) -> Intersection2d {
    let mut lines = Vec::new();
    for (idx, h) in constraints.iter().enumerate() {
        if h.is_whole_space() {
            continue;
        }
        let b = match h.offset {
            ExtReal::Finite(b) => b,
            _ => return empty(),
        };
        let n = [h.normal[0], h.normal[1]];
        let len = norm2(n);
        let n = [n[0] / len, n[1] / len];
        lines.push(Line { n, b: b / len, angle: angle2(n), idx });
    }
    lines.sort_by(|a, b| a.angle.total_cmp(&b.angle).then(a.b.total_cmp(&b.b)));
    let mut merged: Vec<Line> = Vec::with_capacity(lines.len());
    for l in lines {
        match merged.last() {
            // sorted by offset within ties, so the first one is the tightest
            Some(prev) if l.angle - prev.angle < ANGLE_TOL => {}
            _ => merged.push(l),
        }
    }
    if merged.len() > 1 {
        let (first, last) = (merged[0], merged[merged.len() - 1]);
        if first.angle + TAU - last.angle < ANGLE_TOL {
            if last.b < first.b {
                merged[0] = Line { angle: last.angle - TAU, ..last };
            }
            merged.pop();
        }
    }
    let lines = merged;
    let m = lines.len();
    let scale = lines.iter().fold(1.0f64, |s, l| s.max(l.b.abs()));
    let tol = 1e-10 * scale;

    if m == 0 {
        return Intersection2d { chain: Some(Chain2d::whole_plane()), active: Vec::new() };
    }
    if m == 1 {
        let l = lines[0];
        let t = rot_ccw(l.n);
        return Intersection2d {
            chain: Some(Chain2d {
                vertices: vec![[l.b * l.n[0], l.b * l.n[1]]],
                rays: vec![neg2(t), t, neg2(l.n)],
            }),
            active: vec![l.idx],
        };
    }

    // largest gap between consecutive normals, gap k runs from line k to k+1
    let (mut g, mut gmax) = (0usize, f64::NEG_INFINITY);
    for k in 0..m {
        let next = if k + 1 == m { lines[0].angle + TAU } else { lines[k + 1].angle };
        let gap = next - lines[k].angle;
        if gap > gmax {
            gmax = gap;
            g = k;
        }
    }

    if gmax >= PI - ANGLE_TOL {
        let order: Vec<Line> = (0..m).map(|k| lines[(g + 1 + k) % m]).collect();
        if m == 2 && gmax <= PI + ANGLE_TOL {
            return strip(order[0], order[1], tol);
        }
        let half_strip = gmax <= PI + ANGLE_TOL;
        if half_strip {
            let (f, l) = (order[0], order[m - 1]);
            if f.b + l.b < -tol {
                return empty();
            }
        }
        return envelope(&order, tol, scale);
    }
    bounded(&lines, tol, scale)
}

fn strip(a: Line, b: Line, tol: f64) -> Intersection2d {
    if a.b + b.b < -tol {
        return empty();
    }
    let pa = [a.b * a.n[0], a.b * a.n[1]];
    let pb = [b.b * b.n[0], b.b * b.n[1]];
    let t = rot_ccw(a.n);
    let vertices = if a.b + b.b <= tol { vec![pa] } else { vec![pa, pb] };
    Intersection2d { chain: Some(Chain2d { vertices, rays: vec![neg2(t), t] }), active: vec![a.idx, b.idx] }
}

fn envelope(order: &[Line], tol: f64, scale: f64) -> Intersection2d {
    let mut st: Vec<Line> = Vec::with_capacity(order.len());
    for &l in order {
        while st.len() >= 2 {
            let p = st[st.len() - 2].meet(&st[st.len() - 1]);
            if l.violated_by(p, tol) {
                st.pop();
            } else {
                break;
            }
        }
        st.push(l);
    }
    let vertices = chain_vertices(&st, 1e-9 * scale, false);
    let first = st[0].n;
    let last = st[st.len() - 1].n;
    let r0 = neg2(rot_ccw(first));
    let r1 = rot_ccw(last);
    let rays = if dot2(r0, r1) > 1.0 - 1e-15 { vec![r0] } else { vec![r0, r1] };
    Intersection2d {
        chain: Some(Chain2d { vertices, rays }),
        active: st.iter().map(|l| l.idx).collect(),
    }
}

fn bounded(lines: &[Line], tol: f64, scale: f64) -> Intersection2d {
    let mut dq: VecDeque<Line> = VecDeque::with_capacity(lines.len());
    for &l in lines {
        while dq.len() >= 2 && l.violated_by(dq[dq.len() - 1].meet(&dq[dq.len() - 2]), tol) {
            dq.pop_back();
        }
        while dq.len() >= 2 && l.violated_by(dq[0].meet(&dq[1]), tol) {
            dq.pop_front();
        }
        if let Some(back) = dq.back() {
            if cross2(l.n, back.n).abs() < 1e-12 && dot2(l.n, back.n) < 0.0 {
                // opposite lines met after everything between them was cut
                if l.b + back.b < -tol {
                    return empty();
                }
            }
        }
        dq.push_back(l);
    }
    while dq.len() >= 3 && dq[0].violated_by(dq[dq.len() - 1].meet(&dq[dq.len() - 2]), tol) {
        dq.pop_back();
    }
    while dq.len() >= 3 && dq[dq.len() - 1].violated_by(dq[0].meet(&dq[1]), tol) {
        dq.pop_front();
    }
    if dq.len() < 3 {
        return empty();
    }
    let k = dq.len();
    // a closed polygon needs consecutive normals to turn by less than pi
    for i in 0..k {
        let (a, b) = (dq[i], dq[(i + 1) % k]);
        let mut turn = b.angle - a.angle;
        if turn <= 0.0 {
            turn += TAU;
        }
        if turn >= PI - ANGLE_TOL {
            return empty();
        }
    }
    let ring: Vec<Line> = dq.iter().copied().collect();
    let vertices = chain_vertices(&ring, 1e-9 * scale, true);
    Intersection2d {
        chain: Some(Chain2d { vertices, rays: Vec::new() }),
        active: dq.iter().map(|l| l.idx).collect(),
    }
}

/// Convex hull (counter-clockwise, no collinear points) by monotone chain.
pub fn convex_hull(points: &[P2]) -> Vec<P2> {
    let mut pts: Vec<P2> = points.to_vec();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let turn = |o: P2, a: P2, b: P2| cross2([a[0] - o[0], a[1] - o[1]], [b[0] - o[0], b[1] - o[1]]);
    let mut hull: Vec<P2> = Vec::with_capacity(2 * pts.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &P2>> =
            if pass == 0 { Box::new(pts.iter()) } else { Box::new(pts.iter().rev()) };
        for &p in iter {
            while hull.len() >= start + 2 && turn(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    hull
}

/// Candidate facet normals of `conv(vertices) + cone(rays)`: the hull edge
/// normals of the vertices, the normals of every ray, and the axes. Every
/// facet normal of the set is among them.
pub fn candidate_normals(vertices: &[P2], rays: &[P2]) -> Vec<P2> {
    let mut out = vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
    let hull = convex_hull(vertices);
    if hull.len() == 2 {
        let e = [hull[1][0] - hull[0][0], hull[1][1] - hull[0][1]];
        out.push(rot_ccw(e));
        out.push(neg2(rot_ccw(e)));
    } else if hull.len() >= 3 {
        for i in 0..hull.len() {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            out.push([b[1] - a[1], a[0] - b[0]]);
        }
    }
    for &r in rays {
        if r == [0.0, 0.0] {
            continue;
        }
        out.push(rot_ccw(r));
        out.push(neg2(rot_ccw(r)));
        out.push(neg2(r));
    }
    out.into_iter()
        .map(|n| {
            let l = norm2(n);
            [n[0] / l, n[1] / l]
        })
        .collect()
}

/// Facet description of `conv(vertices) + cone(rays)` together with its
/// normalized chain. `vertices` must be nonempty.
pub fn vrep_to_hrep(vertices: &[P2], rays: &[P2]) -> (Vec<HalfSpace>, Chain2d) {
    let body = Chain2d { vertices: vertices.to_vec(), rays: rays.to_vec() };
    let cons: Vec<HalfSpace> = candidate_normals(vertices, rays)
        .into_iter()
        .filter_map(|n| match body.support(n) {
            ExtReal::Finite(b) => Some(HalfSpace::new(n.to_vec(), b)),
            _ => None,
        })
        .collect();
    let res = intersect_halfplanes(&cons);
    let chain = res.chain.unwrap_or_else(|| body.clone());
    let mut facets: Vec<HalfSpace> = Vec::new();
    for i in res.active {
        if !facets.contains(&cons[i]) {
            facets.push(cons[i].clone());
        }
    }
    (facets, chain)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hs(n: [f64; 2], b: f64) -> HalfSpace {
        HalfSpace::new(n.to_vec(), b)
    }

    #[test]
    fn unit_square() {
        let r = intersect_halfplanes(&[
            hs([1.0, 0.0], 1.0),
            hs([-1.0, 0.0], 0.0),
            hs([0.0, 1.0], 1.0),
            hs([0.0, -1.0], 0.0),
        ]);
        let c = r.chain.unwrap();
        assert!(c.rays.is_empty());
        let mut v = c.vertices.clone();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(v, vec![[0.0, 0.0], [0.0, 1.0], [1.0, 0.0], [1.0, 1.0]]);
    }

    #[test]
    fn contradictory_pair() {
        let r = intersect_halfplanes(&[hs([1.0, 0.0], 0.0), hs([-1.0, 0.0], -1.0)]);
        assert!(r.chain.is_none());
    }

    #[test]
    fn wedge() {
        let r = intersect_halfplanes(&[hs([1.0, 0.0], 1.0), hs([0.0, 1.0], 2.0)]);
        let c = r.chain.unwrap();
        assert_eq!(c.vertices, vec![[1.0, 2.0]]);
        assert_eq!(c.rays.len(), 2);
        assert_eq!(c.support([-1.0, -1.0]), ExtReal::PosInf);
        assert_eq!(c.support([1.0, 1.0]), ExtReal::Finite(3.0));
    }

    #[test]
    fn half_strip_and_its_emptiness() {
        let mut cons = vec![hs([0.0, 1.0], 1.0), hs([0.0, -1.0], 0.0), hs([-1.0, 0.0], 0.0)];
        let c = intersect_halfplanes(&cons).chain.unwrap();
        assert_eq!(c.rays, vec![[1.0, 0.0]]);
        assert_eq!(c.vertices.len(), 2);
        cons[1] = hs([0.0, -1.0], -2.0);
        assert!(intersect_halfplanes(&cons).chain.is_none());
    }

    #[test]
    fn redundant_and_whole_space_constraints() {
        let r = intersect_halfplanes(&[
            hs([1.0, 0.0], 1.0),
            hs([1.0, 0.0], 5.0),
            hs([0.0, 0.0], -3.0),
            HalfSpace::new(vec![0.0, 1.0], ExtReal::PosInf),
            hs([-1.0, 0.0], 1.0),
            hs([0.0, 1.0], 1.0),
            hs([0.0, -1.0], 1.0),
            hs([1.0, 1.0], 10.0),
        ]);
        assert_eq!(r.chain.unwrap().vertices.len(), 4);
        assert_eq!(r.active.len(), 4);
    }

    #[test]
    fn degenerate_point_region() {
        let r = intersect_halfplanes(&[
            hs([1.0, 0.0], 0.5),
            hs([-1.0, 0.0], -0.5),
            hs([0.0, 1.0], 0.25),
            hs([0.0, -1.0], -0.25),
        ]);
        assert_eq!(r.chain.unwrap().vertices, vec![[0.5, 0.25]]);
    }

    #[test]
    fn hull_and_hrep() {
        let pts = [[0.0, 0.0], [1.0, 0.0], [0.5, 0.5], [1.0, 1.0], [0.0, 1.0], [0.5, 0.0]];
        assert_eq!(convex_hull(&pts).len(), 4);
        let (facets, chain) = vrep_to_hrep(&pts, &[]);
        assert_eq!(facets.len(), 4);
        assert_eq!(chain.vertices.len(), 4);
        let (facets, chain) = vrep_to_hrep(&[[0.0, 0.0]], &[[1.0, 0.0], [0.0, 1.0]]);
        assert_eq!(facets.len(), 2);
        assert_eq!(chain.vertices, vec![[0.0, 0.0]]);
        let (facets, _) = vrep_to_hrep(&[[0.0, 0.0]], &[[1.0, 0.0], [-1.0, 0.0]]);
        assert_eq!(facets.len(), 2);
    }
}
