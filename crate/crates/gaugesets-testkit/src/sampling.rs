//! Seeded Gaussian samples.

use gaugesets::{Error, Result};
use nalgebra::{DMatrix, DVector};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// `n` draws from `N(mu, sigma)`: ChaCha8 standard normals pushed through
/// the Cholesky factor of `sigma`. The same seed gives the same points.
pub fn mc_gaussian(mu: &[f64], sigma: &[Vec<f64>], n: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
    let d = mu.len();
    if d == 0 || sigma.len() != d || sigma.iter().any(|r| r.len() != d) {
        return Err(Error::DimensionMismatch { expected: d, got: sigma.len() });
    }
    let m = DMatrix::from_fn(d, d, |i, j| sigma[i][j]);
    if (0..d).any(|i| (0..d).any(|j| m[(i, j)] != m[(j, i)])) {
        return Err(Error::NotPositiveDefinite);
    }
    let l = m.cholesky().ok_or(Error::NotPositiveDefinite)?.unpack();
    let mean = DVector::from_column_slice(mu);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let z = DVector::from_fn(d, |_, _| StandardNormal.sample(&mut rng));
        let x: DVector<f64> = &mean + &l * z;
        out.push(x.iter().copied().collect());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const MU: [f64; 2] = [1.0, 2.0];

    fn sigma() -> Vec<Vec<f64>> {
        vec![vec![0.09, 0.09], vec![0.09, 0.25]]
    }

    #[test]
    fn reproducible() {
        let a = mc_gaussian(&MU, &sigma(), 100, 11).unwrap();
        let b = mc_gaussian(&MU, &sigma(), 100, 11).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, mc_gaussian(&MU, &sigma(), 100, 12).unwrap());
    }

    #[test]
    fn moments_within_clt_bounds() {
        let n = 40_000;
        let x = mc_gaussian(&MU, &sigma(), n, 3).unwrap();
        let s = sigma();
        let mean: Vec<f64> = (0..2).map(|k| x.iter().map(|p| p[k]).sum::<f64>() / n as f64).collect();
        for k in 0..2 {
            // 4 sigma / sqrt(n)
            assert!((mean[k] - MU[k]).abs() < 4.0 * s[k][k].sqrt() / (n as f64).sqrt());
        }
        for i in 0..2 {
            for j in 0..2 {
                let c = x.iter().map(|p| (p[i] - mean[i]) * (p[j] - mean[j])).sum::<f64>() / (n - 1) as f64;
                // sd of a sample covariance is sqrt((s_ii s_jj + s_ij^2) / n)
                let sd = ((s[i][i] * s[j][j] + s[i][j] * s[i][j]) / n as f64).sqrt();
                assert!((c - s[i][j]).abs() < 4.0 * sd, "{i}{j}: {c}");
            }
        }
    }

    #[test]
    fn rejects_indefinite() {
        let bad = vec![vec![1.0, 2.0], vec![2.0, 1.0]];
        assert_eq!(mc_gaussian(&MU, &bad, 10, 0).unwrap_err(), Error::NotPositiveDefinite);
    }
}
