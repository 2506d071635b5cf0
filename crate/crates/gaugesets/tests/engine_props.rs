use gaugesets::engine::{cone_gauge, cone_gauge_g9, conditional_regions, vorobev_quantile, wulff_region};
use gaugesets::geometry::angular::direction;
use gaugesets::geometry::{direction_grid, linear_image, minkowski_sum, ConvexBody, GridScheme, Region};
use gaugesets::model::{Partition, RandomSetModel, Scenario};
use gaugesets::scalar::{eval_gauge, GaugeSpec};
use gaugesets::ExtReal;
use proptest::prelude::*;

const GRID: usize = 24;

fn grid(n: usize) -> Vec<Vec<f64>> {
    direction_grid(2, n, GridScheme::Uniform2d).unwrap()
}

fn polygon() -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-3.0f64..3.0, 2), 1..6)
}

/// Scenario bodies, raw probabilities and atom choices.
type Raw = Vec<(Vec<Vec<f64>>, f64, bool)>;

fn raw_model() -> impl Strategy<Value = Raw> {
    prop::collection::vec((polygon(), 0.05f64..1.0, any::<bool>()), 1..5)
}

fn build(raw: &Raw, f: impl Fn(&[Vec<f64>]) -> Vec<Vec<f64>>) -> RandomSetModel {
    let total: f64 = raw.iter().map(|r| r.1).sum();
    let scenarios = raw
        .iter()
        .map(|(v, p, a)| {
            let body = ConvexBody::polytope(f(v), vec![]).unwrap();
            Scenario::with_atom(p / total, body, if *a { "a" } else { "b" })
        })
        .collect();
    RandomSetModel::new(scenarios).unwrap()
}

fn model(raw: &Raw) -> RandomSetModel {
    build(raw, |v| v.to_vec())
}

fn gauge() -> impl Strategy<Value = GaugeSpec> {
    prop_oneof![
        (0.05f64..=1.0).prop_map(GaugeSpec::QuantileLower),
        (0.0f64..0.95).prop_map(GaugeSpec::QuantileUpper),
        Just(GaugeSpec::EssInf),
        Just(GaugeSpec::EssSup),
        Just(GaugeSpec::Expectation),
        (0.0f64..0.95).prop_map(GaugeSpec::AvgQuantileRight),
        (0.05f64..=1.0).prop_map(GaugeSpec::AvgQuantileLeft),
        (0.05f64..0.95).prop_map(GaugeSpec::Expectile),
        (1.0f64..3.0, 0.0f64..=1.0).prop_map(|(p, a)| GaugeSpec::NormGauge { p, a }),
        (2u32..4).prop_map(|m| GaugeSpec::max_ext(m, GaugeSpec::Expectation)),
    ]
}

fn superlinear_gauge() -> impl Strategy<Value = GaugeSpec> {
    prop_oneof![
        Just(GaugeSpec::EssInf),
        Just(GaugeSpec::Expectation),
        (0.05f64..=1.0).prop_map(GaugeSpec::AvgQuantileLeft),
        (0.05f64..=0.5).prop_map(GaugeSpec::Expectile),
        (1.0f64..3.0).prop_map(|p| GaugeSpec::NormGauge { p, a: 0.0 }),
        (2u32..4).prop_map(|m| GaugeSpec::min_ext(m, GaugeSpec::Expectation)),
    ]
}

fn probes() -> Vec<Vec<f64>> {
    (0..37).map(|k| direction(0.1 + k as f64 * 0.17).to_vec()).chain(grid(GRID)).collect()
}

fn sup(r: &Region, w: &[f64]) -> ExtReal {
    r.support(w).unwrap()
}

/// `a <= b + tol`, with the usual conventions at infinity.
fn le(a: ExtReal, b: ExtReal, tol: f64) -> bool {
    match (a, b) {
        (ExtReal::Finite(x), ExtReal::Finite(y)) => x <= y + tol * (1.0 + x.abs().max(y.abs())),
        _ => a <= b,
    }
}

fn eq(a: ExtReal, b: ExtReal, tol: f64) -> bool {
    le(a, b, tol) && le(b, a, tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn scalarization_is_homogeneous_and_averages_over_atoms(raw in raw_model(), t in 0.0f64..std::f64::consts::TAU, c in 0.1f64..5.0) {
        let m = model(&raw);
        let w = direction(t);
        let cw = [c * w[0], c * w[1]];
        let a = m.scalarize(&w).unwrap();
        let b = m.scalarize(&cw).unwrap();
        for (x, y) in a.raw_values().iter().zip(b.raw_values()) {
            prop_assert!((c * x - y).abs() <= 1e-12 * (1.0 + y.abs()));
        }
        let p = m.partition();
        let mean = |s: &gaugesets::scalar::WeightedSample| eval_gauge(&GaugeSpec::Expectation, s).unwrap().finite().unwrap();
        let total: f64 = p
            .cells()
            .iter()
            .map(|cell| cell.prob * mean(&m.conditional_scalarize(&p, &cell.label, &w).unwrap()))
            .sum();
        prop_assert!((total - mean(&a)).abs() <= 1e-12 * (1.0 + total.abs()));
    }

    #[test]
    fn deterministic_body_is_preserved(v in polygon(), g in gauge()) {
        let body = ConvexBody::polytope(v, vec![]).unwrap();
        let m = RandomSetModel::new(vec![Scenario::new(1.0, body.clone())]).unwrap();
        let r = wulff_region(&m, &g, &grid(GRID)).unwrap();
        for w in grid(GRID) {
            prop_assert!(eq(sup(&r, &w), body.support(&w).unwrap(), 1e-9));
        }
        // with every facet normal in the grid the region is the body itself
        let mut full = grid(GRID);
        full.extend(body.hrep().unwrap().into_iter().map(|h| h.normal));
        let r = wulff_region(&m, &g, &full).unwrap();
        for w in probes() {
            prop_assert!(eq(sup(&r, &w), body.support(&w).unwrap(), 1e-9));
        }
    }

    #[test]
    fn diagonal_maps_commute(raw in raw_model(), g in gauge(), s in prop::collection::vec(0.2f64..5.0, 2)) {
        let gamma = vec![vec![s[0], 0.0], vec![0.0, s[1]]];
        let m = model(&raw);
        let mapped = build(&raw, |v| {
            let b = ConvexBody::polytope(v.to_vec(), vec![]).unwrap();
            linear_image(&b, &gamma).unwrap().vertices
        });
        let g1 = grid(GRID);
        // h(Gamma X, Gamma^-1 w) = h(X, w)
        let g2: Vec<Vec<f64>> = g1.iter().map(|w| vec![w[0] / s[0], w[1] / s[1]]).collect();
        let r1 = wulff_region(&m, &g, &g1).unwrap();
        let r2 = wulff_region(&mapped, &g, &g2).unwrap();
        for (w, v) in g1.iter().zip(&g2) {
            prop_assert!(eq(sup(&r2, v), sup(&r1, w), 1e-9), "{:?} vs {:?}", sup(&r2, v), sup(&r1, w));
        }
    }

    #[test]
    fn larger_scenarios_give_larger_regions(raw in raw_model(), g in gauge(), grow in prop::collection::vec(prop::collection::vec(-1.0f64..1.0, 2), 1..4)) {
        let small = model(&raw);
        let big = build(&raw, |v| {
            let mut out = v.to_vec();
            out.extend(grow.iter().map(|d| vec![v[0][0] + d[0], v[0][1] + d[1]]));
            out
        });
        let (ps, pb) = (small.partition(), big.partition());
        let rs = conditional_regions(&small, &ps, &g, &grid(GRID)).unwrap();
        let rb = conditional_regions(&big, &pb, &g, &grid(GRID)).unwrap();
        for (a, b) in rs.atoms.iter().zip(&rb.atoms) {
            for w in probes() {
                prop_assert!(le(sup(&a.region, &w), sup(&b.region, &w), 1e-9));
            }
        }
    }

    #[test]
    fn translation_moves_the_region(raw in raw_model(), g in gauge(), z in prop::collection::vec(-5.0f64..5.0, 2)) {
        let m = model(&raw);
        let shifted = build(&raw, |v| v.iter().map(|x| vec![x[0] + z[0], x[1] + z[1]]).collect());
        let r = wulff_region(&m, &g, &grid(GRID)).unwrap();
        let rz = wulff_region(&shifted, &g, &grid(GRID)).unwrap();
        for w in grid(GRID) {
            let shift = ExtReal::Finite(w[0] * z[0] + w[1] * z[1]);
            prop_assert!(eq(sup(&rz, &w), sup(&r, &w).checked_add(shift).unwrap(), 1e-9));
        }
    }

    #[test]
    fn regions_nest_between_essential_bounds(raw in raw_model(), g in gauge()) {
        let m = model(&raw);
        let p = m.partition();
        let dirs = grid(GRID);
        let lo = conditional_regions(&m, &p, &GaugeSpec::EssInf, &dirs).unwrap();
        let mid = conditional_regions(&m, &p, &g, &dirs).unwrap();
        let hi = conditional_regions(&m, &p, &GaugeSpec::EssSup, &dirs).unwrap();
        for cell in p.cells() {
            for w in &dirs {
                let s = m.conditional_scalarize(&p, &cell.label, w).unwrap();
                let t = eval_gauge(&g, &s).unwrap();
                prop_assert!(le(eval_gauge(&GaugeSpec::EssInf, &s).unwrap(), t, 1e-9));
                prop_assert!(le(t, eval_gauge(&GaugeSpec::EssSup, &s).unwrap(), 1e-9));
            }
            let (a, b, c) = (lo.get(&cell.label).unwrap(), mid.get(&cell.label).unwrap(), hi.get(&cell.label).unwrap());
            for w in probes() {
                prop_assert!(le(sup(a, &w), sup(b, &w), 1e-9));
                prop_assert!(le(sup(b, &w), sup(c, &w), 1e-9));
            }
        }
    }

    #[test]
    fn refining_the_grid_shrinks_the_region(raw in raw_model(), g in gauge(), n in 4usize..20) {
        let m = model(&raw);
        let coarse = wulff_region(&m, &g, &grid(n)).unwrap();
        let fine = wulff_region(&m, &g, &grid(2 * n)).unwrap();
        for w in probes() {
            prop_assert!(le(sup(&fine, &w), sup(&coarse, &w), 1e-9));
        }
    }

    #[test]
    fn superlinear_gauges_are_superadditive(a in raw_model(), b in raw_model(), g in superlinear_gauge()) {
        let (x, y) = (model(&a), model(&b));
        let mut scen = Vec::new();
        for s in x.scenarios() {
            for t in y.scenarios() {
                scen.push(Scenario::new(s.prob * t.prob, minkowski_sum(&s.body, &t.body).unwrap()));
            }
        }
        let total: f64 = scen.iter().map(|s| s.prob).sum();
        for s in scen.iter_mut() {
            s.prob /= total;
        }
        let xy = RandomSetModel::new(scen).unwrap();
        let dirs = grid(GRID);
        let (rx, ry, rxy) = (
            wulff_region(&x, &g, &dirs).unwrap(),
            wulff_region(&y, &g, &dirs).unwrap(),
            wulff_region(&xy, &g, &dirs).unwrap(),
        );
        for w in &dirs {
            let t = |m: &RandomSetModel| eval_gauge(&g, &m.scalarize(w).unwrap()).unwrap();
            prop_assert!(le(t(&x).checked_add(t(&y)).unwrap(), t(&xy), 1e-9));
            let split = sup(&rx, w).checked_add(sup(&ry, w)).unwrap_or(ExtReal::NegInf);
            prop_assert!(le(split, sup(&rxy, w), 1e-9));
        }
    }

    #[test]
    fn cone_gauge_is_the_same_for_every_g9_gauge(
        cones in prop::collection::vec((0.0f64..std::f64::consts::TAU, 0.0f64..3.0, 0.05f64..1.0), 1..5),
        g in gauge(),
    ) {
        prop_assume!(g.is_g9());
        let m = cone_model(&cones);
        let reference = cone_gauge_g9(&m).unwrap();
        let generic = cone_gauge(&m, &g).unwrap();
        for w in probes() {
            prop_assert_eq!(reference.support(&w).unwrap(), generic.support(&w).unwrap());
        }
    }

    #[test]
    fn vorobev_sweep_matches_the_grid_indicator(
        cones in prop::collection::vec((0.0f64..std::f64::consts::TAU, 0.0f64..3.0, 0.05f64..1.0), 1..5),
        alpha in 0.05f64..=1.0,
    ) {
        let m = cone_model(&cones);
        let q = vorobev_quantile(&m, alpha).unwrap();
        let set = q.directions.unwrap();
        let ends: Vec<f64> = set.endpoints().iter().map(|e| e[1].atan2(e[0])).collect();
        for k in 0..2048 {
            let phi = k as f64 * std::f64::consts::TAU / 2048.0;
            let w = direction(phi);
            let inside = m.barrier_probability(&w).unwrap() >= alpha - 1e-12;
            if inside != set.contains_angle(phi) {
                let near = ends.iter().any(|e| {
                    let d = (phi - e).rem_euclid(std::f64::consts::TAU);
                    d.min(std::f64::consts::TAU - d) < 1e-9
                });
                prop_assert!(near, "mismatch at {phi}");
            }
        }
    }
}

/// Cones spanned by a direction and a turn of up to three radians.
fn cone_model(cones: &[(f64, f64, f64)]) -> RandomSetModel {
    let total: f64 = cones.iter().map(|c| c.2).sum();
    let scenarios = cones
        .iter()
        .map(|&(t, span, p)| {
            let rays = vec![direction(t).to_vec(), direction(t + span).to_vec()];
            Scenario::new(p / total, ConvexBody::cone(2, rays).unwrap())
        })
        .collect();
    RandomSetModel::new(scenarios).unwrap()
}

#[test]
fn partition_cells_cover_the_model() {
    let raw: Raw = vec![
        (vec![vec![0.0, 0.0]], 1.0, true),
        (vec![vec![1.0, 0.0]], 1.0, false),
        (vec![vec![0.0, 2.0]], 2.0, true),
    ];
    let m = model(&raw);
    let p = m.partition();
    assert_eq!(p.labels(), vec!["a", "b"]);
    assert_eq!(p.cell("a").unwrap().indices, vec![0, 2]);
    assert!((p.cell("a").unwrap().prob - 0.75).abs() < 1e-15);
    assert!(Partition::trivial(&m).is_trivial());
}
