//! Brute-force oracles that avoid the engine's selection and half-plane code.

use gaugesets::geometry::ConvexBody;
use gaugesets::model::RandomSetModel;
use gaugesets::scalar::{eval_gauge, GaugeSpec, WeightedSample};
use gaugesets::{ExtReal, Result};

/// Lower quantile of the sample with `counts[i]` copies of `values[i]`,
/// read off the fully expanded sorted list.
pub fn expanded_quantile_lower(values: &[f64], counts: &[u32], alpha: f64) -> f64 {
    let sorted = expand(values, counts);
    let n = sorted.len() as f64;
    // smallest k with k / n >= alpha
    let k = (1..=sorted.len()).find(|&k| k as f64 / n >= alpha - 1e-12).unwrap_or(sorted.len());
    sorted[k - 1]
}

/// Upper quantile `inf{t : F(t) > alpha}` of the expanded sample.
pub fn expanded_quantile_upper(values: &[f64], counts: &[u32], alpha: f64) -> f64 {
    let sorted = expand(values, counts);
    let n = sorted.len() as f64;
    let k = (1..=sorted.len()).find(|&k| k as f64 / n > alpha + 1e-12).unwrap_or(sorted.len());
    sorted[k - 1]
}

fn expand(values: &[f64], counts: &[u32]) -> Vec<f64> {
    let mut v: Vec<f64> = values.iter().zip(counts).flat_map(|(&x, &c)| std::iter::repeat(x).take(c as usize)).collect();
    v.sort_by(f64::total_cmp);
    v
}

/// Weighted sample matching an expanded one: weights `counts / sum`.
pub fn counted_sample(values: &[f64], counts: &[u32]) -> Result<WeightedSample> {
    let n: u32 = counts.iter().sum();
    WeightedSample::from_f64(values.to_vec(), counts.iter().map(|&c| c as f64 / n as f64).collect())
}

/// Law of `X + Y` for independent finite `X` and `Y`, every pair kept.
pub fn product_sum(x: &WeightedSample, y: &WeightedSample) -> Result<WeightedSample> {
    let mut vals = Vec::with_capacity(x.len() * y.len());
    let mut wts = Vec::with_capacity(x.len() * y.len());
    for (a, p) in x.raw_values().iter().zip(x.weights()) {
        for (b, q) in y.raw_values().iter().zip(y.weights()) {
            vals.push(a + b);
            wts.push(p * q);
        }
    }
    let total: f64 = wts.iter().sum();
    WeightedSample::from_f64(vals, wts.into_iter().map(|w| w / total).collect())
}

/// Support function straight from the vertex and ray lists.
pub(crate) fn brute_support(body: &ConvexBody, w: &[f64]) -> Result<ExtReal> {
    if !body.has_vrep() {
        return body.support(w);
    }
    let dot = |v: &[f64]| v.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
    for r in &body.rays {
        let scale = r.iter().map(|x| x.abs()).fold(0.0, f64::max) * w.iter().map(|x| x.abs()).fold(0.0, f64::max);
        if dot(r) > 1e-12 * scale {
            return Ok(ExtReal::PosInf);
        }
    }
    Ok(body.vertices.iter().map(|v| ExtReal::Finite(dot(v))).fold(ExtReal::NegInf, |a, b| if b > a { b } else { a }))
}

/// `h(X, w)` under the scenario probabilities, built without the model's
/// own scalarization.
pub(crate) fn brute_scalarize(model: &RandomSetModel, indices: &[usize], w: &[f64]) -> Result<WeightedSample> {
    let sc = model.scenarios();
    let total: f64 = indices.iter().map(|&i| sc[i].prob).sum();
    let mut vals = Vec::with_capacity(indices.len());
    let mut wts = Vec::with_capacity(indices.len());
    for &i in indices {
        vals.push(brute_support(&sc[i].body, w)?);
        wts.push(sc[i].prob / total);
    }
    WeightedSample::new(vals, wts)
}

/// Whether `<x, w> <= g(h(X, w)) + tol` at every direction of `dense_grid`.
pub fn brute_region_membership(
    model: &RandomSetModel,
    gauge: &GaugeSpec,
    dense_grid: &[Vec<f64>],
    x: &[f64],
    tol: f64,
) -> Result<bool> {
    let all: Vec<usize> = (0..model.len()).collect();
    for w in dense_grid {
        let t = eval_gauge(gauge, &brute_scalarize(model, &all, w)?)?;
        let lhs: f64 = x.iter().zip(w).map(|(a, b)| a * b).sum();
        match t {
            ExtReal::PosInf => {}
            ExtReal::NegInf => return Ok(false),
            ExtReal::Finite(t) => {
                if lhs > t + tol * (1.0 + t.abs()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
