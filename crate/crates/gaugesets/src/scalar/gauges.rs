//! Scalar gauge functions on weighted samples.
//!
//! Quantile-type gauges run a weighted three-way quickselect over a copy of
//! the sample (linear expected time); the expectile and the i.i.d. extensions
//! work on the merged sorted atoms.

use crate::error::{Error, Result};
use crate::ext_real::ExtReal::{self, Finite, PosInf};

use super::sample::WeightedSample;

/// Slack on cumulative weights when deciding whether a level is reached.
/// Without it, `0.1 + 0.2 >= 0.3` style rounding moves quantiles by an atom.
pub const CUM_TOL: f64 = 1e-12;

fn ext(v: f64) -> ExtReal {
    if v == f64::INFINITY {
        PosInf
    } else {
        Finite(v)
    }
}

pub fn expectation(s: &WeightedSample) -> ExtReal {
    if s.has_pos_inf() {
        return PosInf;
    }
    Finite(s.raw_values().iter().zip(s.weights()).map(|(v, w)| v * w).sum())
}

pub fn ess_sup(s: &WeightedSample) -> ExtReal {
    ext(s.raw_values().iter().copied().fold(f64::NEG_INFINITY, f64::max))
}

pub fn ess_inf(s: &WeightedSample) -> ExtReal {
    ext(s.raw_values().iter().copied().fold(f64::INFINITY, f64::min))
}

/// Result of a weighted selection: the first atom at which the cumulative
/// weight is accepted, plus the partial sums around it.
#[derive(Debug, Clone, Copy)]
struct Cut {
    value: f64,
    /// weight strictly below `value`
    w_below: f64,
    /// weight at `value`
    w_at: f64,
    /// sum of weight * value strictly below
    wv_below: f64,
    /// sum of weight * value strictly above
    wv_above: f64,
}

/// Three-way split of a slice around a pivot value, with the weight and
/// weighted-value sums of each part gathered in the same pass.
struct Split {
    lt: usize,
    gt: usize,
    w_lt: f64,
    w_eq: f64,
    wv_lt: f64,
    wv_eq: f64,
    wv_gt: f64,
}

/// Dutch-flag partition: `[..lt] < pivot`, `[lt..gt] == pivot`,
/// `[gt..] > pivot`. Every element is classified exactly once.
fn partition3(p: &mut [(f64, f64)], pivot: f64) -> Split {
    let (mut lt, mut i, mut gt) = (0, 0, p.len());
    let mut sp = Split { lt: 0, gt: 0, w_lt: 0.0, w_eq: 0.0, wv_lt: 0.0, wv_eq: 0.0, wv_gt: 0.0 };
    while i < gt {
        let (v, w) = p[i];
        if v < pivot {
            sp.w_lt += w;
            sp.wv_lt += v * w;
            p.swap(lt, i);
            lt += 1;
            i += 1;
        } else if v > pivot {
            sp.wv_gt += v * w;
            gt -= 1;
            p.swap(i, gt);
        } else {
            sp.w_eq += w;
            sp.wv_eq += v * w;
            i += 1;
        }
    }
    sp.lt = lt;
    sp.gt = gt;
    sp
}

/// Finds the smallest support point `t` whose cumulative weight `F(t)`
/// satisfies `accept`, which must be monotone in its argument.
fn select(s: &WeightedSample, accept: impl Fn(f64) -> bool) -> Cut {
    let mut pairs: Vec<(f64, f64)> =
        s.raw_values().iter().copied().zip(s.weights().iter().copied()).collect();
    let (mut lo, mut hi) = (0usize, pairs.len());
    let (mut w_below, mut wv_below, mut wv_above) = (0.0, 0.0, 0.0);
    // xorshift pivot choice: deterministic, and immune to sorted inputs
    let mut state: u64 = 0x9E37_79B9_7F4A_7C15 ^ pairs.len() as u64;
    loop {
        let slice = &mut pairs[lo..hi];
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        let pivot = slice[(state % slice.len() as u64) as usize].0;
        let sp = partition3(slice, pivot);
        if sp.lt > 0 && accept(w_below + sp.w_lt) {
            wv_above += sp.wv_eq + sp.wv_gt;
            hi = lo + sp.lt;
            continue;
        }
        if sp.gt == slice.len() || accept(w_below + sp.w_lt + sp.w_eq) {
            // either accepted here, or nothing above is left and rounding
            // kept the total just short of the level
            wv_above += sp.wv_gt;
            return Cut {
                value: pivot,
                w_below: w_below + sp.w_lt,
                w_at: sp.w_eq,
                wv_below: wv_below + sp.wv_lt,
                wv_above,
            };
        }
        w_below += sp.w_lt + sp.w_eq;
        wv_below += sp.wv_lt + sp.wv_eq;
        lo += sp.gt;
    }
}

/// `inf{t : F(t) >= alpha}` for `alpha` in `(0, 1]`.
pub fn quantile_lower(s: &WeightedSample, alpha: f64) -> ExtReal {
    ext(select(s, |c| c >= alpha - CUM_TOL).value)
}

/// `inf{t : F(t) > alpha}` for `alpha` in `[0, 1)`; `alpha = 0` gives the
/// essential infimum.
pub fn quantile_upper(s: &WeightedSample, alpha: f64) -> ExtReal {
    if alpha <= 0.0 {
        return ess_inf(s);
    }
    ext(select(s, |c| c > alpha + CUM_TOL).value)
}

/// `(1 - alpha)^{-1} * integral of the lower quantile over [alpha, 1]`.
pub fn avg_quantile_right(s: &WeightedSample, alpha: f64) -> ExtReal {
    if s.has_pos_inf() {
        return PosInf;
    }
    if alpha <= 0.0 {
        return expectation(s);
    }
    let cut = select(s, |c| c >= alpha - CUM_TOL);
    let straddle = (cut.w_below + cut.w_at - alpha).max(0.0);
    Finite((straddle * cut.value + cut.wv_above) / (1.0 - alpha))
}

/// `alpha^{-1} * integral of the lower quantile over [0, alpha]`.
pub fn avg_quantile_left(s: &WeightedSample, alpha: f64) -> ExtReal {
    if alpha >= 1.0 {
        return expectation(s);
    }
    let cut = select(s, |c| c >= alpha - CUM_TOL);
    let straddle = (alpha - cut.w_below).max(0.0);
    if cut.value.is_infinite() {
        return if straddle > CUM_TOL { PosInf } else { Finite(cut.wv_below / alpha) };
    }
    Finite((cut.wv_below + straddle * cut.value) / alpha)
}

/// Root of `tau E(X - z)_+ = (1 - tau) E(X - z)_-`.
///
/// The defining function is piecewise linear between support points, so a
/// bisection over the atom index brackets the root in one segment and the
/// root inside that segment is solved in closed form.
pub fn expectile(s: &WeightedSample, tau: f64) -> ExtReal {
    if s.has_pos_inf() {
        return PosInf;
    }
    if tau == 0.5 {
        return expectation(s);
    }
    let atoms = s.atoms();
    let (v, w) = (&atoms.values, &atoms.weights);
    let n = v.len();
    // prefix[j] = sums over atoms 0..j, suffix[j] = sums over atoms j..n
    let mut pw = vec![0.0; n + 1];
    let mut pwv = vec![0.0; n + 1];
    for j in 0..n {
        pw[j + 1] = pw[j] + w[j];
        pwv[j + 1] = pwv[j] + w[j] * v[j];
    }
    let mut sw = vec![0.0; n + 1];
    let mut swv = vec![0.0; n + 1];
    for j in (0..n).rev() {
        sw[j] = sw[j + 1] + w[j];
        swv[j] = swv[j + 1] + w[j] * v[j];
    }
    // f(v_j) = tau * E(X - v_j)_+ - (1 - tau) * E(v_j - X)_+
    let f = |j: usize| {
        let up = swv[j + 1] - v[j] * sw[j + 1];
        let down = v[j] * pw[j] - pwv[j];
        tau * up - (1.0 - tau) * down
    };
    // f is nonincreasing in j with f(0) >= 0 >= f(n-1)
    let (mut lo, mut hi) = (0usize, n - 1);
    if f(hi) >= 0.0 {
        return Finite(v[hi]);
    }
    while hi - lo > 1 {
        let mid = (lo + hi) / 2;
        if f(mid) >= 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    // on [v_lo, v_hi] the atoms <= v_lo sit below z and the rest above
    let num = tau * swv[hi] + (1.0 - tau) * pwv[hi];
    let den = tau * sw[hi] + (1.0 - tau) * pw[hi];
    Finite((num / den).clamp(v[lo], v[hi]))
}

/// `E X + a (E (X - E X)_+^p)^{1/p}`.
pub fn norm_gauge(s: &WeightedSample, p: f64, a: f64) -> ExtReal {
    let mean = match expectation(s) {
        Finite(m) => m,
        other => return other,
    };
    if a == 0.0 {
        return Finite(mean);
    }
    let moment: f64 = s
        .raw_values()
        .iter()
        .zip(s.weights())
        .map(|(v, w)| w * (v - mean).max(0.0).powf(p))
        .sum();
    Finite(mean + a * moment.powf(1.0 / p))
}

/// Residual of the expectile equation at `z`, used by tests and callers that
/// want to audit a returned value.
pub fn expectile_residual(s: &WeightedSample, tau: f64, z: f64) -> Result<f64> {
    if s.has_pos_inf() {
        return Err(Error::Domain("expectile residual needs a finite sample".into()));
    }
    let (mut up, mut down) = (0.0, 0.0);
    for (v, w) in s.raw_values().iter().zip(s.weights()) {
        up += w * (v - z).max(0.0);
        down += w * (z - v).max(0.0);
    }
    Ok(tau * up - (1.0 - tau) * down)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quarter() -> WeightedSample {
        WeightedSample::uniform(vec![1.0, 2.0, 3.0, 4.0]).unwrap()
    }

    #[test]
    fn quantiles_on_four_points() {
        let s = quarter();
        assert_eq!(quantile_lower(&s, 0.5), Finite(2.0));
        assert_eq!(quantile_upper(&s, 0.5), Finite(3.0));
        assert_eq!(quantile_lower(&s, 1.0), Finite(4.0));
        assert_eq!(quantile_upper(&s, 0.0), Finite(1.0));
        assert_eq!(quantile_lower(&s, 0.26), Finite(2.0));
        assert_eq!(quantile_lower(&s, 0.25), Finite(1.0));
    }

    #[test]
    fn quantile_at_infinity() {
        let s = WeightedSample::from_f64(vec![0.0, f64::INFINITY], vec![0.5, 0.5]).unwrap();
        assert_eq!(quantile_lower(&s, 0.6), PosInf);
        assert_eq!(quantile_lower(&s, 0.5), Finite(0.0));
        assert_eq!(quantile_upper(&s, 0.5), PosInf);
    }

    #[test]
    fn average_quantiles() {
        let s = quarter();
        assert_eq!(avg_quantile_right(&s, 0.5), Finite(3.5));
        assert_eq!(avg_quantile_left(&s, 0.5), Finite(1.5));
        assert_eq!(avg_quantile_right(&s, 0.0), Finite(2.5));
        assert_eq!(avg_quantile_left(&s, 1.0), Finite(2.5));
        // the straddling atom contributes a fraction of its weight
        let r = avg_quantile_right(&s, 0.6).finite().unwrap();
        assert!((r - (0.15 * 3.0 + 0.25 * 4.0) / 0.4).abs() < 1e-14);
        let inf = WeightedSample::from_f64(vec![0.0, f64::INFINITY], vec![0.9, 0.1]).unwrap();
        assert_eq!(avg_quantile_right(&inf, 0.5), PosInf);
        assert_eq!(avg_quantile_left(&inf, 0.5), Finite(0.0));
        assert_eq!(avg_quantile_left(&inf, 0.95), PosInf);
    }

    #[test]
    fn expectile_two_point() {
        let s = WeightedSample::uniform(vec![0.0, 1.0]).unwrap();
        let z = expectile(&s, 0.9).finite().unwrap();
        assert!((z - 0.9).abs() < 1e-15);
        assert_eq!(expectile(&quarter(), 0.5), Finite(2.5));
        assert_eq!(expectile(&WeightedSample::point(-3.0).unwrap(), 0.2), Finite(-3.0));
    }

    #[test]
    fn norm_gauge_symmetric_pair() {
        let s = WeightedSample::uniform(vec![-1.0, 1.0]).unwrap();
        let v = norm_gauge(&s, 2.0, 1.0).finite().unwrap();
        assert!((v - 0.5f64.sqrt()).abs() < 1e-15);
        assert_eq!(norm_gauge(&quarter(), 3.0, 0.0), Finite(2.5));
    }

    #[test]
    fn selection_handles_many_ties() {
        let vals: Vec<f64> = (0..1000).map(|i| (i % 7) as f64).collect();
        let s = WeightedSample::uniform(vals).unwrap();
        // 143 of each residue 0..=5, 142 sixes
        assert_eq!(quantile_lower(&s, 0.143), Finite(0.0));
        assert_eq!(quantile_lower(&s, 0.1431), Finite(1.0));
        assert_eq!(ess_sup(&s), Finite(6.0));
    }
}
