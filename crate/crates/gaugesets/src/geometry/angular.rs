//! Closed subsets of the circle of directions, used to represent planar
//! cones by the directions they contain.
//!
//! Arc endpoints keep the exact vectors they were built from (typically
//! quarter turns of input generators), so boundary rays survive round trips
//! without trigonometric error. Angles are only used for ordering.

use std::f64::consts::{PI, TAU};

use super::linalg::{angle2, neg2, norm2, rot_ccw, rot_cw, P2};
use super::plane::ANGLE_TOL;

/// Counter-clockwise closed arc from `start` to `end`, spanning `span`
/// radians in `[0, 2pi)`. A zero span is a single direction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Arc {
    pub start: P2,
    pub end: P2,
    pub start_angle: f64,
    pub span: f64,
}

impl Arc {
    pub fn new(start: P2, end: P2) -> Self {
        let a = angle2(start);
        let mut span = angle2(end) - a;
        if span < 0.0 {
            span += TAU;
        }
        if span > TAU - ANGLE_TOL {
            span = 0.0;
        }
        Arc { start, end, start_angle: a, span }
    }

    pub fn point(d: P2) -> Self {
        Arc { start: d, end: d, start_angle: angle2(d), span: 0.0 }
    }

    pub fn contains_angle(&self, phi: f64) -> bool {
        let mut d = phi - self.start_angle;
        d = d.rem_euclid(TAU);
        d <= self.span + ANGLE_TOL || d >= TAU - ANGLE_TOL
    }
}

/// A closed set of directions: the whole circle or a finite union of arcs.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularSet {
    pub full: bool,
    pub arcs: Vec<Arc>,
}

/// Shape of a planar convex cone read off its generators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConeShape {
    /// `{0}`
    Origin,
    /// pointed sector from `start` counter-clockwise to `end`, span below pi
    /// (a single ray when both coincide)
    Sector { start: P2, end: P2 },
    /// the half-plane swept counter-clockwise from `start` to `end = -start`
    HalfPlane { start: P2, end: P2 },
    /// the line through `a` and `b = -a`
    Line { a: P2, b: P2 },
    Plane,
}

/// Classifies `cone(generators)` by the largest angular gap between the
/// generator directions.
pub fn cone_shape(generators: &[P2]) -> ConeShape {
    let mut g: Vec<(f64, P2)> = generators
        .iter()
        .filter(|v| norm2(**v) > 0.0)
        .map(|&v| (angle2(v), v))
        .collect();
    if g.is_empty() {
        return ConeShape::Origin;
    }
    g.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut dirs: Vec<(f64, P2)> = Vec::with_capacity(g.len());
    for x in g {
        match dirs.last() {
            Some(prev) if x.0 - prev.0 < ANGLE_TOL => {}
            _ => dirs.push(x),
        }
    }
    if dirs.len() > 1 && dirs[0].0 + TAU - dirs[dirs.len() - 1].0 < ANGLE_TOL {
        dirs.pop();
    }
    let m = dirs.len();
    if m == 1 {
        return ConeShape::Sector { start: dirs[0].1, end: dirs[0].1 };
    }
    let (mut k, mut gmax) = (0, f64::NEG_INFINITY);
    for i in 0..m {
        let next = if i + 1 == m { dirs[0].0 + TAU } else { dirs[i + 1].0 };
        if next - dirs[i].0 > gmax {
            gmax = next - dirs[i].0;
            k = i;
        }
    }
    let start = dirs[(k + 1) % m].1;
    let end = dirs[k].1;
    if gmax > PI + ANGLE_TOL {
        ConeShape::Sector { start, end }
    } else if gmax >= PI - ANGLE_TOL {
        if m == 2 {
            ConeShape::Line { a: start, b: end }
        } else {
            ConeShape::HalfPlane { start, end }
        }
    } else {
        ConeShape::Plane
    }
}

impl ConeShape {
    /// Directions contained in the cone.
    pub fn directions(&self) -> AngularSet {
        match *self {
            ConeShape::Origin => AngularSet::empty(),
            ConeShape::Plane => AngularSet::full(),
            ConeShape::Sector { start, end } | ConeShape::HalfPlane { start, end } => {
                let mut arc = Arc::new(start, end);
                if let ConeShape::HalfPlane { .. } = self {
                    arc.span = PI;
                }
                AngularSet { full: false, arcs: vec![arc] }
            }
            ConeShape::Line { a, b } => {
                AngularSet { full: false, arcs: vec![Arc::point(a), Arc::point(b)] }
            }
        }
    }

    /// Shape of the polar cone `{u : <u, x> <= 0 for all x in the cone}`.
    pub fn polar(&self) -> ConeShape {
        match *self {
            ConeShape::Origin => ConeShape::Plane,
            ConeShape::Plane => ConeShape::Origin,
            ConeShape::Sector { start, end } if start == end => {
                ConeShape::HalfPlane { start: rot_ccw(start), end: rot_cw(start) }
            }
            ConeShape::Sector { start, end } => {
                ConeShape::Sector { start: rot_ccw(end), end: rot_cw(start) }
            }
            ConeShape::HalfPlane { start, .. } => {
                let n = rot_cw(start);
                ConeShape::Sector { start: n, end: n }
            }
            ConeShape::Line { a, .. } => ConeShape::Line { a: rot_ccw(a), b: rot_cw(a) },
        }
    }

    /// Extreme generators: enough rays to span the cone, including a
    /// direction across half-planes and both directions of lines.
    pub fn generators(&self) -> Vec<P2> {
        match *self {
            ConeShape::Origin => Vec::new(),
            ConeShape::Plane => vec![[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]],
            ConeShape::Sector { start, end } if start == end => vec![start],
            ConeShape::Sector { start, end } => vec![start, end],
            ConeShape::HalfPlane { start, end } => vec![start, rot_ccw(start), end],
            ConeShape::Line { a, b } => vec![a, b],
        }
    }
}

impl AngularSet {
    pub fn empty() -> Self {
        AngularSet { full: false, arcs: Vec::new() }
    }

    pub fn full() -> Self {
        AngularSet { full: true, arcs: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        !self.full && self.arcs.is_empty()
    }

    pub fn contains_angle(&self, phi: f64) -> bool {
        self.full || self.arcs.iter().any(|a| a.contains_angle(phi))
    }

    /// Exact boundary directions of all arcs.
    pub fn endpoints(&self) -> Vec<P2> {
        let mut out = Vec::with_capacity(2 * self.arcs.len());
        for a in &self.arcs {
            out.push(a.start);
            if a.span > 0.0 {
                out.push(a.end);
            }
        }
        out
    }

    /// Shape of the smallest convex cone containing these directions.
    pub fn conic_hull(&self) -> ConeShape {
        if self.full {
            return ConeShape::Plane;
        }
        let mut gens = Vec::new();
        for a in &self.arcs {
            gens.push(a.start);
            gens.push(a.end);
            // interior samples keep half-circle arcs from reading as lines
            for k in 1..4 {
                let t = a.start_angle + a.span * k as f64 / 4.0;
                gens.push([t.cos(), t.sin()]);
            }
        }
        cone_shape(&gens)
    }
}

/// Splits the circle at the given exact directions and keeps the pieces
/// where `keep` holds: `keep` is asked once per cut direction and once per
/// open gap (at its angular midpoint). Returns the resulting closed set.
///
/// Pieces are stitched into arcs that start and end at cut directions, so
/// `keep` should be upper semicontinuous (a kept gap implies kept ends), as
/// is the case for coverage of closed sets.
pub fn sweep(cuts: &[P2], mut keep: impl FnMut(P2, f64) -> bool) -> AngularSet {
    let mut pts: Vec<(f64, P2)> = cuts
        .iter()
        .filter(|v| norm2(**v) > 0.0)
        .map(|&v| (angle2(v), v))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0));
    let mut cps: Vec<(f64, P2)> = Vec::with_capacity(pts.len());
    for p in pts {
        match cps.last() {
            Some(prev) if p.0 - prev.0 < ANGLE_TOL => {}
            _ => cps.push(p),
        }
    }
    if cps.len() > 1 && cps[0].0 + TAU - cps[cps.len() - 1].0 < ANGLE_TOL {
        cps.pop();
    }
    if cps.is_empty() {
        return if keep([1.0, 0.0], 0.0) { AngularSet::full() } else { AngularSet::empty() };
    }
    let k = cps.len();
    // item 2i is cut i, item 2i+1 the open gap after it
    let mut items = Vec::with_capacity(2 * k);
    for i in 0..k {
        items.push(keep(cps[i].1, cps[i].0));
        let next = if i + 1 == k { cps[0].0 + TAU } else { cps[i + 1].0 };
        let mid = 0.5 * (cps[i].0 + next);
        items.push(keep([mid.cos(), mid.sin()], mid.rem_euclid(TAU)));
    }
    if items.iter().all(|&b| b) {
        return AngularSet::full();
    }
    let first_off = items.iter().position(|&b| !b).unwrap();
    let mut arcs = Vec::new();
    let mut run: Option<(usize, usize)> = None;
    for step in 1..=2 * k {
        let j = (first_off + step) % (2 * k);
        if items[j] {
            run = Some(match run {
                None => (j, j),
                Some((s, _)) => (s, j),
            });
        } else if let Some((s, e)) = run.take() {
            arcs.push(run_to_arc(&cps, s, e));
        }
    }
    if let Some((s, e)) = run {
        arcs.push(run_to_arc(&cps, s, e));
    }
    AngularSet { full: false, arcs }
}

fn run_to_arc(cps: &[(f64, P2)], s: usize, e: usize) -> Arc {
    // runs are bounded by cuts; a run that starts or ends on a gap means the
    // neighbouring cut failed by rounding, so widen to it
    let k = cps.len();
    let si = (s / 2) % k;
    let ei = if e % 2 == 1 { (e / 2 + 1) % k } else { e / 2 };
    let start = cps[si].1;
    let end = cps[ei].1;
    if s == e && s % 2 == 0 {
        Arc::point(start)
    } else {
        Arc::new(start, end)
    }
}

/// Directions of the unit circle at angle `phi`.
pub fn direction(phi: f64) -> P2 {
    [phi.cos(), phi.sin()]
}

/// Exact negation of an arc (the antipodal set).
pub fn antipodal(a: &Arc) -> Arc {
    Arc { start: neg2(a.start), end: neg2(a.end), start_angle: angle2(neg2(a.start)), span: a.span }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(d: f64) -> P2 {
        direction(d.to_radians())
    }

    #[test]
    fn shapes() {
        assert_eq!(cone_shape(&[]), ConeShape::Origin);
        assert!(matches!(cone_shape(&[[1.0, 0.0], [0.0, 1.0]]), ConeShape::Sector { start, end } if start == [1.0, 0.0] && end == [0.0, 1.0]));
        assert!(matches!(cone_shape(&[[1.0, 0.0], [-1.0, 0.0]]), ConeShape::Line { .. }));
        assert!(matches!(cone_shape(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]), ConeShape::HalfPlane { start, .. } if start == [1.0, 0.0]));
        assert_eq!(cone_shape(&[[1.0, 0.0], [-1.0, 1.0], [-1.0, -1.0]]), ConeShape::Plane);
    }

    #[test]
    fn polar_of_quadrant() {
        let p = cone_shape(&[[1.0, 0.0], [0.0, 1.0]]).polar();
        assert_eq!(p, ConeShape::Sector { start: [-1.0, 0.0], end: [0.0, -1.0] });
        let h = cone_shape(&[[1.0, 0.0], [-1.0, 0.0], [0.0, 1.0]]).polar();
        assert_eq!(h, ConeShape::Sector { start: [0.0, -1.0], end: [0.0, -1.0] });
    }

    #[test]
    fn sweep_three_sectors() {
        let sets: Vec<AngularSet> = [(0.0, 90.0), (30.0, 120.0), (60.0, 150.0)]
            .iter()
            .map(|&(a, b)| AngularSet { full: false, arcs: vec![Arc::new(deg(a), deg(b))] })
            .collect();
        let cuts: Vec<P2> = sets.iter().flat_map(|s| s.endpoints()).collect();
        let q = sweep(&cuts, |_, phi| {
            sets.iter().filter(|s| s.contains_angle(phi)).count() as f64 / 3.0 >= 0.5 - 1e-12
        });
        assert_eq!(q.arcs.len(), 1);
        let a = q.arcs[0];
        assert!((a.start_angle - 30f64.to_radians()).abs() < 1e-12);
        assert!((a.span - 90f64.to_radians()).abs() < 1e-12);
    }
}
