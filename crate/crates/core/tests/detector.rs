mod common;

use common::*;
use normgeom::detector::{
    classify_space, default_gamma_grid, lorch_pair, parallelogram_defect, search_counterexample,
    violation_objective, SearchConfig, SpaceVerdict, Verdict,
};
use normgeom::functionals::pair_geometry;
use normgeom::norm::{sample_vector, NormSpec, RadiusRange, RngSeed, Vector};

fn config(dim: usize, seed: u64) -> SearchConfig {
    SearchConfig { dim, seed: RngSeed(seed), ..SearchConfig::default() }
}

#[test]
fn never_flags_inner_product_norms() {
    let mut specs = vec![NormSpec::lp(2.0), NormSpec::gram_diagonal(&[2.0, 3.0])];
    for seed in [1, 2] {
        specs.push(NormSpec::gram(random_spd(3, seed).0));
    }
    for spec in specs {
        let dim = spec.intrinsic_dim().unwrap_or(2);
        let n = spec.build(dim).unwrap();
        for seed in [0, 7] {
            let c = classify_space(&n, &config(dim, seed)).unwrap();
            assert_eq!(c.verdict, SpaceVerdict::ConsistentWithInnerProduct, "{spec}");
            assert!(c.sub_tests_agree());
            assert!(c.alpha_beta.best_value <= 1e-9, "{spec}: {}", c.alpha_beta.best_value);
        }
    }
}

#[test]
fn flags_non_euclidean_lp() {
    for p in [1.0, 1.5, 4.0, f64::INFINITY] {
        let n = NormSpec::lp(p).build(2).unwrap();
        let r = search_counterexample(&n, &config(2, 7)).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFound, "p={p}");
        let (x, y) = (r.witness_x.unwrap(), r.witness_y.unwrap());
        let (a, b) = oracle_alpha_beta(p, x.coords(), y.coords());
        assert!(a - b > 0.99 * 1e-7, "p={p}: {}", a - b);
        assert!((a - r.alpha_at_witness).abs() <= 1e-12 && (b - r.beta_at_witness).abs() <= 1e-12);
        assert!(r.best_value <= 2.0 + 1e-9);
    }
}

#[test]
fn sub_tests_agree_on_builtin_families() {
    for spec in [
        NormSpec::lp(1.0),
        NormSpec::lp(3.0),
        NormSpec::lp(f64::INFINITY),
        NormSpec::weighted(2.0, vec![1.0, 5.0]),
        NormSpec::weighted(1.5, vec![1.0, 5.0]),
    ] {
        let n = spec.build(2).unwrap();
        let c = classify_space(&n, &config(2, 7)).unwrap();
        let expect = if spec.is_inner_product() || matches!(spec, NormSpec::WeightedLp { p, .. } if p == 2.0) {
            SpaceVerdict::ConsistentWithInnerProduct
        } else {
            SpaceVerdict::NotInnerProduct
        };
        assert_eq!(c.verdict, expect, "{spec}");
        assert!(c.sub_tests_agree(), "{spec}");
    }
}

#[test]
fn results_do_not_depend_on_thread_count() {
    let n = NormSpec::lp(1.5).build(3).unwrap();
    let cfg = SearchConfig { restarts: 16, ..config(3, 4) };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| classify_space(&n, &cfg).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(4));
}

#[test]
fn objective_ceiling() {
    let mut rng = RngSeed(9).rng();
    for p in [1.0, 1.3, 2.0, 5.0, f64::INFINITY] {
        let n = NormSpec::lp(p).build(3).unwrap();
        for _ in 0..2000 {
            let x = sample_vector(&n, &mut rng, RadiusRange::new(1e-3, 1e3).unwrap()).unwrap();
            let y = sample_vector(&n, &mut rng, RadiusRange::new(1e-3, 1e3).unwrap()).unwrap();
            let v = violation_objective(&n, &x, &y).unwrap();
            assert!(v <= 2.0 + 1e-9);
            let g = pair_geometry(&n, &x, &y).unwrap();
            assert_eq!(v, g.alpha - g.beta);
        }
    }
}

#[test]
fn parallelogram_defect_vanishes_only_for_euclidean() {
    let x = Vector::new(vec![1.0, 0.0]).unwrap();
    let y = Vector::new(vec![0.0, 1.0]).unwrap();
    let l2 = NormSpec::lp(2.0).build(2).unwrap();
    assert!(parallelogram_defect(&l2, &x, &y).unwrap().abs() <= 1e-12);
    let l1 = NormSpec::lp(1.0).build(2).unwrap();
    // ‖x+y‖² + ‖x−y‖² − 2‖x‖² − 2‖y‖² = 4 + 4 − 4
    assert!((parallelogram_defect(&l1, &x, &y).unwrap().abs() - 4.0).abs() <= 1e-12);
}

#[test]
fn lorch_pair_examples() {
    let grid = default_gamma_grid();
    assert_eq!(grid.len(), 61);
    assert_eq!(grid[30], 1.0);
    let x = Vector::new(vec![1.0, 0.0]).unwrap();
    let y = Vector::new(vec![0.0, 1.0]).unwrap();
    let l2 = NormSpec::lp(2.0).build(2).unwrap();
    assert!(lorch_pair(&l2, &x, &y, &grid).unwrap().is_empty());
    let linf = NormSpec::lp(f64::INFINITY).build(2).unwrap();
    // ‖x+y‖ = 1.5 but ‖γx + γ⁻¹y‖ = 0.5γ + 1/γ drops to √2 near γ = √2
    let x = Vector::new(vec![1.0, 0.5]).unwrap();
    let y = Vector::new(vec![-0.5, 1.0]).unwrap();
    let v = lorch_pair(&linf, &x, &y, &grid).unwrap();
    assert!(!v.is_empty());
    for w in v {
        assert!(w.lhs > w.rhs);
    }
}

#[test]
fn invalid_configs_rejected() {
    let n = NormSpec::lp(1.0).build(2).unwrap();
    for cfg in [
        SearchConfig { restarts: 0, ..SearchConfig::default() },
        SearchConfig { dim: 0, ..SearchConfig::default() },
        SearchConfig { violation_threshold: 0.0, ..SearchConfig::default() },
        SearchConfig { dim: 3, ..SearchConfig::default() },
    ] {
        assert!(search_counterexample(&n, &cfg).is_err(), "{cfg:?}");
    }
}

/// Reports how the best violation shrinks as p approaches 2; informational.
#[test]
fn margin_near_euclidean() {
    for p in [1.9, 1.99] {
        let n = NormSpec::lp(p).build(2).unwrap();
        let r = search_counterexample(&n, &config(2, 7)).unwrap();
        println!("p={p}: best α−β = {:.3e} ({:?})", r.best_value, r.verdict);
    }
}
