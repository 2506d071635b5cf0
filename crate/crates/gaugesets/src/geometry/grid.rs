use std::f64::consts::TAU;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// How to place directions on the unit sphere.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridScheme {
    /// angles `2 pi k / n`, planar only
    Uniform2d,
    /// spherical Fibonacci lattice, three dimensions only
    Fibonacci,
    /// normalized Gaussian vectors from a seeded ChaCha8 stream
    Random(u64),
}

fn axes(d: usize) -> Vec<Vec<f64>> {
    let mut out = Vec::with_capacity(2 * d);
    for k in 0..d {
        for s in [1.0, -1.0] {
            let mut e = vec![0.0; d];
            e[k] = s;
            out.push(e);
        }
    }
    out
}

fn append_missing_axes(mut dirs: Vec<Vec<f64>>, d: usize) -> Vec<Vec<f64>> {
    for e in axes(d) {
        let present = dirs.iter().any(|v| v.iter().zip(&e).all(|(a, b)| (a - b).abs() <= 1e-12));
        if !present {
            dirs.push(e);
        }
    }
    dirs
}

/// `n` unit directions in `R^d` (plus any coordinate axes the scheme misses).
///
/// The uniform planar lattice is computed inside the first quadrant and
/// rotated by exact quarter turns, so the axes come out exact and the grid
/// for `n` is a bitwise subset of the grid for `2n`.
pub fn direction_grid(d: usize, n: usize, scheme: GridScheme) -> Result<Vec<Vec<f64>>> {
    if n < 4 {
        return Err(Error::Precondition(format!("grid needs at least 4 directions, got {n}")));
    }
    if d == 0 {
        return Err(Error::Precondition("dimension must be positive".into()));
    }
    let dirs = match scheme {
        GridScheme::Uniform2d => {
            if d != 2 {
                return Err(Error::Unsupported(format!("uniform2d grid in dimension {d}")));
            }
            (0..n)
                .map(|k| {
                    let q = 4 * k / n;
                    let r = 4 * k - q * n;
                    let phi = TAU * (r as f64 / (4 * n) as f64);
                    let (c, s) = if r == 0 { (1.0, 0.0) } else { (phi.cos(), phi.sin()) };
                    match q {
                        0 => vec![c, s],
                        1 => vec![-s, c],
                        2 => vec![-c, -s],
                        _ => vec![s, -c],
                    }
                })
                .collect()
        }
        GridScheme::Fibonacci => {
            if d != 3 {
                return Err(Error::Unsupported(format!("fibonacci grid in dimension {d}")));
            }
            let golden = TAU * (1.0 - 1.0 / ((1.0 + 5f64.sqrt()) / 2.0));
            (0..n)
                .map(|i| {
                    let z = 1.0 - (2 * i + 1) as f64 / n as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = golden * i as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        GridScheme::Random(seed) => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let v: Vec<f64> = (0..d).map(|_| StandardNormal.sample(&mut rng)).collect();
                let l = v.iter().map(|x: &f64| x * x).sum::<f64>().sqrt();
                if l > 1e-9 {
                    out.push(v.into_iter().map(|x| x / l).collect());
                }
            }
            out
        }
    };
    Ok(append_missing_axes(dirs, d))
}

/// Default grid: 720 uniform directions in the plane, 2048 Fibonacci
/// directions in space; random otherwise.
pub fn default_grid(d: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    match d {
        2 => direction_grid(2, 720, GridScheme::Uniform2d),
        3 => direction_grid(3, 2048, GridScheme::Fibonacci),
        _ => direction_grid(d, 2048, GridScheme::Random(seed)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_directions() {
        let g = direction_grid(2, 4, GridScheme::Uniform2d).unwrap();
        assert_eq!(g, vec![vec![1.0, 0.0], vec![0.0, 1.0], vec![-1.0, 0.0], vec![0.0, -1.0]]);
    }

    #[test]
    fn unit_norm_and_nesting() {
        for n in [4, 6, 7, 45, 360, 720] {
            let g = direction_grid(2, n, GridScheme::Uniform2d).unwrap();
            assert!(g.len() >= n);
            for v in &g {
                assert!((v[0].hypot(v[1]) - 1.0).abs() < 1e-12);
            }
            let g2 = direction_grid(2, 2 * n, GridScheme::Uniform2d).unwrap();
            for v in g.iter().take(n) {
                assert!(g2.contains(v), "n = {n}");
            }
        }
        let f = direction_grid(3, 100, GridScheme::Fibonacci).unwrap();
        assert!(f.iter().all(|v| (v.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12));
        assert!(f.contains(&vec![0.0, 0.0, -1.0]));
    }

    #[test]
    fn random_is_reproducible() {
        let a = direction_grid(4, 10, GridScheme::Random(7)).unwrap();
        let b = direction_grid(4, 10, GridScheme::Random(7)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 18);
        assert!(direction_grid(2, 3, GridScheme::Uniform2d).is_err());
    }
}
