use num_bigint::BigInt;
use quadbetti_core::bounds::{self, DegreeSequence};
use quadbetti_core::cubical::BettiVector;
use quadbetti_core::grid::{grid_complex, GridSpec};
use quadbetti_core::harness::suite::builtin_suite;
use quadbetti_core::harness::*;
use quadbetti_core::quadratic::{
    deform, is_nonsingular_quadric, is_positive_definite, make_p_eps, random_pd_form, QuadraticForm,
    QuadraticPoly,
};
use quadbetti_core::rational::{int, ratio};
use quadbetti_core::Verdict;

#[test]
fn quadric_intersections_match_the_quadric_recurrence() {
    for k in 0..=60 {
        for j in 0..=k {
            let ci = bounds::b_ci(j, k, &DegreeSequence::quadrics(j)).unwrap();
            let q = bounds::b_quad(j, k).unwrap();
            assert_eq!(ci, q, "j={j} k={k}");
            assert!(q >= BigInt::from(0));
        }
    }
}

#[test]
fn mixed_degree_totals_are_nonnegative() {
    for k in 1..=12 {
        for j in 1..=k.min(4) {
            for d in 1..=5u32 {
                let degrees = DegreeSequence::new(vec![d; j]).unwrap();
                assert!(
                    bounds::b_ci(j, k, &degrees).unwrap() >= BigInt::from(0),
                    "j={j} k={k} d={d}"
                );
            }
        }
    }
}

#[test]
fn lifting_sphere_polynomial() {
    let p = make_p_eps(&ratio(1, 10), 1).unwrap();
    assert_eq!(p.eval(&[int(0), int(0)]), int(400));
    assert_eq!(p.eval(&[int(20), int(0)]), int(0));
    assert!(make_p_eps(&int(0), 1).is_err());
}

#[test]
fn perturbation_forms() {
    for n in 1..=5 {
        for seed in 0..20 {
            let f = random_pd_form(n, seed).unwrap();
            assert!(is_positive_definite(&f));
            assert!(is_nonsingular_quadric(&f));
            assert_eq!(f, random_pd_form(n, seed).unwrap());
        }
    }
    assert_ne!(random_pd_form(3, 1).unwrap(), random_pd_form(3, 2).unwrap());
    let x1 = QuadraticForm::diagonal(&[int(1), int(0)]);
    let x2 = QuadraticForm::diagonal(&[int(0), int(1)]);
    assert_eq!(
        deform(&x1, &x2, &ratio(1, 2)).unwrap(),
        QuadraticForm::diagonal(&[ratio(1, 2), ratio(1, 2)])
    );
}

#[test]
fn sets_without_points_give_empty_complexes() {
    let spec = GridSpec::cube(2, int(-2), int(2), ratio(1, 2)).unwrap();
    let never = QuadraticPoly::norm_squared(2).neg().with_constant(int(-1));
    assert!(grid_complex(&[never], &spec).unwrap().is_empty());
    assert_eq!(
        grid_complex(&[], &spec).unwrap().betti(),
        BettiVector(vec![1, 0, 0])
    );
}

#[test]
fn every_oracle_scenario_passes() {
    let mut scenarios: Vec<Scenario> = (1..=6).map(|k| scenario_products(k).unwrap()).collect();
    for k in 2..=3 {
        scenarios.push(scenario_shell(k, &ratio(1, 2), &int(1)).unwrap());
        scenarios.push(scenario_shell(k, &ratio(1, 3), &int(2)).unwrap());
    }
    for sc in &scenarios {
        let r = bound_audit(sc, &BettiSource::Oracle).unwrap();
        assert_eq!(r.overall, Verdict::Pass, "{}", sc.name);
    }
    assert!(scenario_shell(2, &int(1), &int(1)).is_err());
    assert!(scenario_products(7).is_err());
}

#[test]
fn grid_sources_never_violate() {
    // coarse grids on a thin annulus: wrong topology at worst, never a violation
    for den in [2, 3, 4, 6] {
        let mut sc = scenario_shell(2, &ratio(9, 10), &int(1)).unwrap();
        sc.grid = GridSpec::cube(2, int(-2), int(2), ratio(1, den)).unwrap();
        let r = bound_audit(&sc, &BettiSource::Grid(sc.grid.clone())).unwrap();
        assert_ne!(r.overall, Verdict::Violation);
    }
}

#[test]
fn refining_the_lifting_grid_keeps_doubling() {
    let params = DeformationParams::default();
    let sc = scenario_products(1).unwrap();
    for cells in [10, 20, 40] {
        let spec = lifted_grid(1, &params, cells).unwrap();
        let r = double_cover_audit(&sc, &params, &spec).unwrap();
        assert_eq!(r.lifted.get(0), 4, "cells per radius {cells}");
        assert_eq!(r.verdict, Verdict::Pass);
    }
}

#[test]
fn builtin_suite_passes() {
    for job in builtin_suite(0) {
        let e = job.run().unwrap();
        assert_eq!(e.verdict, Verdict::Pass, "{}: {:?}", e.name, e.details);
    }
}
