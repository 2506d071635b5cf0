//! Small dense vector helpers. Points are `Vec<f64>` in general dimension and
//! `[f64; 2]` on the planar fast paths.

pub type P2 = [f64; 2];

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}

pub fn add(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn scaled(a: &[f64], c: f64) -> Vec<f64> {
    a.iter().map(|x| c * x).collect()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn is_zero(a: &[f64]) -> bool {
    a.iter().all(|x| *x == 0.0)
}

pub fn p2(a: &[f64]) -> P2 {
    [a[0], a[1]]
}

pub fn dot2(a: P2, b: P2) -> f64 {
    a[0] * b[0] + a[1] * b[1]
}

pub fn cross2(a: P2, b: P2) -> f64 {
    a[0] * b[1] - a[1] * b[0]
}

pub fn norm2(a: P2) -> f64 {
    a[0].hypot(a[1])
}

pub fn unit2(a: P2) -> P2 {
    let n = norm2(a);
    [a[0] / n, a[1] / n]
}

/// Counter-clockwise quarter turn `(x, y) -> (-y, x)`.
pub fn rot_ccw(a: P2) -> P2 {
    [-a[1], a[0]]
}

/// Clockwise quarter turn `(x, y) -> (y, -x)`.
pub fn rot_cw(a: P2) -> P2 {
    [a[1], -a[0]]
}

pub fn neg2(a: P2) -> P2 {
    [-a[0], -a[1]]
}

/// Angle in `[0, 2pi)`.
pub fn angle2(a: P2) -> f64 {
    let t = a[1].atan2(a[0]);
    if t < 0.0 {
        t + std::f64::consts::TAU
    } else {
        t
    }
}
