use crate::error::{Error, Result};
use crate::ext_real::ExtReal;

use super::gauges;
use super::sample::{Extremum, WeightedSample};

/// Maximum nesting of `Dual` / `MaxExt` / `MinExt` wrappers.
pub const MAX_NESTING: usize = 8;

/// Declarative description of a scalar gauge.
#[derive(Debug, Clone, PartialEq)]
pub enum GaugeSpec {
    /// `inf{t : F(t) >= alpha}`, `alpha` in `(0, 1]`
    QuantileLower(f64),
    /// `inf{t : F(t) > alpha}`, `alpha` in `[0, 1)`
    QuantileUpper(f64),
    EssInf,
    EssSup,
    Expectation,
    /// right-average quantile `e_alpha`, `alpha` in `[0, 1)`
    AvgQuantileRight(f64),
    /// left-average quantile `u_alpha`, `alpha` in `(0, 1]`
    AvgQuantileLeft(f64),
    /// `tau` in `(0, 1)`
    Expectile(f64),
    /// `p >= 1`, `a` in `[0, 1]`
    NormGauge { p: f64, a: f64 },
    Dual(Box<GaugeSpec>),
    MaxExt { m: u32, inner: Box<GaugeSpec> },
    MinExt { m: u32, inner: Box<GaugeSpec> },
}

fn check(ok: bool, what: &str, v: f64, range: &str) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGauge(format!("{what} = {v} outside {range}")))
    }
}

impl GaugeSpec {
    pub fn dual(inner: GaugeSpec) -> Self {
        GaugeSpec::Dual(Box::new(inner))
    }

    pub fn max_ext(m: u32, inner: GaugeSpec) -> Self {
        GaugeSpec::MaxExt { m, inner: Box::new(inner) }
    }

    pub fn min_ext(m: u32, inner: GaugeSpec) -> Self {
        GaugeSpec::MinExt { m, inner: Box::new(inner) }
    }

    /// Number of wrapper layers above the base gauge.
    pub fn depth(&self) -> usize {
        match self {
            GaugeSpec::Dual(g) => 1 + g.depth(),
            GaugeSpec::MaxExt { inner, .. } | GaugeSpec::MinExt { inner, .. } => 1 + inner.depth(),
            _ => 0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        use GaugeSpec::*;
        if self.depth() > MAX_NESTING {
            return Err(Error::InvalidGauge(format!("nesting deeper than {MAX_NESTING}")));
        }
        match self {
            QuantileLower(a) => check(*a > 0.0 && *a <= 1.0, "alpha", *a, "(0, 1]"),
            QuantileUpper(a) => check(*a >= 0.0 && *a < 1.0, "alpha", *a, "[0, 1)"),
            AvgQuantileRight(a) => check(*a >= 0.0 && *a < 1.0, "alpha", *a, "[0, 1)"),
            AvgQuantileLeft(a) => check(*a > 0.0 && *a <= 1.0, "alpha", *a, "(0, 1]"),
            Expectile(t) => check(*t > 0.0 && *t < 1.0, "tau", *t, "(0, 1)"),
            NormGauge { p, a } => {
                check(*p >= 1.0 && p.is_finite(), "p", *p, "[1, inf)")?;
                check(*a >= 0.0 && *a <= 1.0, "a", *a, "[0, 1]")
            }
            EssInf | EssSup | Expectation => Ok(()),
            Dual(g) => g.validate(),
            MaxExt { m, inner } | MinExt { m, inner } => {
                if *m == 0 {
                    return Err(Error::InvalidGauge("extension order m must be >= 1".into()));
                }
                inner.validate()
            }
        }
    }

    /// Subadditive (hence sublinear) gauge.
    pub fn is_sublinear(&self) -> bool {
        use GaugeSpec::*;
        match self {
            QuantileLower(a) => *a == 1.0,
            QuantileUpper(_) | EssInf => false,
            EssSup | Expectation | AvgQuantileRight(_) | NormGauge { .. } => true,
            AvgQuantileLeft(a) => *a == 1.0,
            Expectile(t) => *t >= 0.5,
            Dual(g) => g.is_superlinear(),
            MaxExt { inner, .. } => inner.is_sublinear(),
            MinExt { m, inner } => inner.is_sublinear() && *m == 1,
        }
    }

    /// Superadditive (hence superlinear) gauge.
    pub fn is_superlinear(&self) -> bool {
        use GaugeSpec::*;
        match self {
            QuantileUpper(a) => *a == 0.0,
            QuantileLower(_) | EssSup => false,
            EssInf | Expectation | AvgQuantileLeft(_) => true,
            AvgQuantileRight(a) => *a == 0.0,
            NormGauge { a, .. } => *a == 0.0,
            Expectile(t) => *t <= 0.5,
            Dual(g) => g.is_sublinear(),
            MaxExt { m, inner } => inner.is_superlinear() && *m == 1,
            MinExt { inner, .. } => inner.is_superlinear(),
        }
    }

    /// Whether any positive mass at `+inf` forces the value `+inf`.
    pub fn is_g9(&self) -> bool {
        use GaugeSpec::*;
        match self {
            EssSup | Expectation | AvgQuantileRight(_) | Expectile(_) | NormGauge { .. } => true,
            QuantileLower(a) | AvgQuantileLeft(a) => *a == 1.0,
            QuantileUpper(_) | EssInf | Dual(_) => false,
            MaxExt { inner, .. } | MinExt { inner, .. } => inner.is_g9(),
        }
    }
}

/// Evaluates `spec` on `s`. The spec is assumed valid.
pub fn eval_gauge(spec: &GaugeSpec, s: &WeightedSample) -> Result<ExtReal> {
    use GaugeSpec::*;
    Ok(match spec {
        QuantileLower(a) => gauges::quantile_lower(s, *a),
        QuantileUpper(a) => gauges::quantile_upper(s, *a),
        EssInf => gauges::ess_inf(s),
        EssSup => gauges::ess_sup(s),
        Expectation => gauges::expectation(s),
        AvgQuantileRight(a) => gauges::avg_quantile_right(s, *a),
        AvgQuantileLeft(a) => gauges::avg_quantile_left(s, *a),
        Expectile(t) => gauges::expectile(s, *t),
        NormGauge { p, a } => gauges::norm_gauge(s, *p, *a),
        Dual(inner) => return dual_eval(inner, s),
        MaxExt { m, inner } => eval_gauge(inner, &s.iid_extension(*m, Extremum::Max))?,
        MinExt { m, inner } => eval_gauge(inner, &s.iid_extension(*m, Extremum::Min))?,
    })
}

/// `-g(-X)`; undefined when `X` charges `+inf`.
pub fn dual_eval(inner: &GaugeSpec, s: &WeightedSample) -> Result<ExtReal> {
    Ok(-eval_gauge(inner, &s.negated()?)?)
}
