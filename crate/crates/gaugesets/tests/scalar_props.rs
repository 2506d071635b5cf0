use gaugesets::scalar::{eval_gauge, expectile, expectile_residual, GaugeSpec, WeightedSample};
use gaugesets::ExtReal;
use proptest::prelude::*;

fn base_spec() -> impl Strategy<Value = GaugeSpec> {
    prop_oneof![
        (0.01f64..=1.0).prop_map(GaugeSpec::QuantileLower),
        (0.0f64..0.99).prop_map(GaugeSpec::QuantileUpper),
        Just(GaugeSpec::EssInf),
        Just(GaugeSpec::EssSup),
        Just(GaugeSpec::Expectation),
        (0.0f64..0.99).prop_map(GaugeSpec::AvgQuantileRight),
        (0.01f64..=1.0).prop_map(GaugeSpec::AvgQuantileLeft),
        (0.01f64..0.99).prop_map(GaugeSpec::Expectile),
        (1.0f64..4.0, 0.0f64..=1.0).prop_map(|(p, a)| GaugeSpec::NormGauge { p, a }),
    ]
}

fn spec() -> impl Strategy<Value = GaugeSpec> {
    base_spec().prop_recursive(2, 4, 1, |inner| {
        prop_oneof![
            inner.clone().prop_map(GaugeSpec::dual),
            (1u32..4, inner.clone()).prop_map(|(m, g)| GaugeSpec::max_ext(m, g)),
            (1u32..4, inner).prop_map(|(m, g)| GaugeSpec::min_ext(m, g)),
        ]
    })
}

/// Finite sample with up to six atoms and strictly positive weights.
fn sample() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
    prop::collection::vec((-10.0f64..10.0, 0.05f64..1.0), 1..=6).prop_map(|v| {
        let total: f64 = v.iter().map(|p| p.1).sum();
        v.into_iter().map(|(x, w)| (x, w / total)).unzip()
    })
}

fn ws(v: &(Vec<f64>, Vec<f64>)) -> WeightedSample {
    WeightedSample::from_f64(v.0.clone(), v.1.clone()).unwrap()
}

fn fin(t: ExtReal) -> f64 {
    t.finite().expect("finite gauge value")
}

fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * (1.0 + a.abs().max(b.abs()))
}

/// Law of `X + Y` for independent `X` and `Y`, enumerated atom by atom.
fn product_sum(x: &(Vec<f64>, Vec<f64>), y: &(Vec<f64>, Vec<f64>)) -> WeightedSample {
    let mut vals = Vec::new();
    let mut wts = Vec::new();
    for (a, p) in x.0.iter().zip(&x.1) {
        for (b, q) in y.0.iter().zip(&y.1) {
            vals.push(a + b);
            wts.push(p * q);
        }
    }
    let total: f64 = wts.iter().sum();
    WeightedSample::from_f64(vals, wts.into_iter().map(|w| w / total).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn constant_preserving(g in spec(), c in -50.0f64..50.0) {
        let v = fin(eval_gauge(&g, &WeightedSample::point(c).unwrap()).unwrap());
        prop_assert!(close(v, c, 1e-12), "{g:?}: {v} vs {c}");
    }

    #[test]
    fn positive_homogeneity(g in spec(), s in sample(), c in 0.1f64..10.0) {
        let x = ws(&s);
        let lhs = fin(eval_gauge(&g, &x.affine(c, 0.0).unwrap()).unwrap());
        let rhs = c * fin(eval_gauge(&g, &x).unwrap());
        prop_assert!(close(lhs, rhs, 1e-9), "{g:?}: {lhs} vs {rhs}");
    }

    #[test]
    fn monotone(g in spec(), s in sample(), bumps in prop::collection::vec(0.0f64..3.0, 6)) {
        let up: Vec<f64> = s.0.iter().zip(&bumps).map(|(x, b)| x + b).collect();
        let lo = fin(eval_gauge(&g, &ws(&s)).unwrap());
        let hi = fin(eval_gauge(&g, &ws(&(up, s.1.clone()))).unwrap());
        prop_assert!(hi >= lo - 1e-9 * (1.0 + lo.abs()), "{g:?}: {hi} < {lo}");
    }

    #[test]
    fn translation_equivariant(g in spec(), s in sample(), c in -20.0f64..20.0) {
        let shifted: Vec<f64> = s.0.iter().map(|x| x + c).collect();
        let lhs = fin(eval_gauge(&g, &ws(&(shifted, s.1.clone()))).unwrap());
        let rhs = fin(eval_gauge(&g, &ws(&s)).unwrap()) + c;
        prop_assert!(close(lhs, rhs, 1e-9), "{g:?}: {lhs} vs {rhs}");
    }

    #[test]
    fn sandwiched_by_essential_bounds(g in spec(), s in sample()) {
        let x = ws(&s);
        let v = fin(eval_gauge(&g, &x).unwrap());
        let lo = fin(eval_gauge(&GaugeSpec::EssInf, &x).unwrap());
        let hi = fin(eval_gauge(&GaugeSpec::EssSup, &x).unwrap());
        prop_assert!(lo - 1e-9 * (1.0 + lo.abs()) <= v && v <= hi + 1e-9 * (1.0 + hi.abs()), "{g:?}: {v} not in [{lo}, {hi}]");
    }

    #[test]
    fn mass_at_infinity_forces_infinity(g in spec(), s in sample(), p in 0.01f64..0.9) {
        prop_assume!(g.is_g9());
        let mut vals: Vec<ExtReal> = s.0.iter().map(|&x| ExtReal::Finite(x)).collect();
        let mut wts: Vec<f64> = s.1.iter().map(|w| w * (1.0 - p)).collect();
        vals.push(ExtReal::PosInf);
        wts.push(p);
        let x = WeightedSample::new(vals, wts).unwrap();
        prop_assert_eq!(eval_gauge(&g, &x).unwrap(), ExtReal::PosInf);
    }

    #[test]
    fn subadditive_or_superadditive_on_products(g in spec(), a in sample(), b in sample()) {
        let (x, y) = (ws(&a), ws(&b));
        let sum = fin(eval_gauge(&g, &product_sum(&a, &b)).unwrap());
        let split = fin(eval_gauge(&g, &x).unwrap()) + fin(eval_gauge(&g, &y).unwrap());
        let tol = 1e-9 * (1.0 + sum.abs().max(split.abs()));
        if g.is_sublinear() {
            prop_assert!(sum <= split + tol, "{g:?}: {sum} > {split}");
        }
        if g.is_superlinear() {
            prop_assert!(sum >= split - tol, "{g:?}: {sum} < {split}");
        }
    }

    #[test]
    fn expectile_solves_its_equation(s in sample(), tau in 0.001f64..0.999) {
        let x = ws(&s);
        let z = fin(expectile(&x, tau));
        let r = expectile_residual(&x, tau, z).unwrap();
        prop_assert!(r.abs() < 1e-10 * (1.0 + z.abs()), "residual {r} at {z}");
    }

    #[test]
    fn left_average_quantile_is_dual_to_right(s in sample(), alpha in 0.01f64..=1.0) {
        let x = ws(&s);
        let u = fin(eval_gauge(&GaugeSpec::AvgQuantileLeft(alpha), &x).unwrap());
        let e = fin(eval_gauge(&GaugeSpec::AvgQuantileRight(1.0 - alpha), &x.negated().unwrap()).unwrap());
        prop_assert!(close(u, -e, 1e-9), "{u} vs {}", -e);
    }

    #[test]
    fn dual_lower_quantile_is_upper_quantile(s in sample(), alpha in 0.01f64..=0.99) {
        let x = ws(&s);
        let d = fin(eval_gauge(&GaugeSpec::dual(GaugeSpec::QuantileLower(alpha)), &x).unwrap());
        let q = fin(eval_gauge(&GaugeSpec::QuantileUpper(1.0 - alpha), &x).unwrap());
        prop_assert_eq!(d, q);
    }
}

#[test]
fn half_expectile_is_the_mean() {
    let x = WeightedSample::from_f64(vec![1.0, 2.0, 7.5, -3.0], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
    let mean = fin(eval_gauge(&GaugeSpec::Expectation, &x).unwrap());
    assert_eq!(fin(expectile(&x, 0.5)), mean);
}
