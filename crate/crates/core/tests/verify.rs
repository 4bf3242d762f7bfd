mod common;

use std::f64::consts::PI;

use common::*;
use maglab_core::fields::FlatField;
use maglab_core::functionals::RadialSample;
use maglab_core::verify::{
    boundary_flux_bound, comparison_check, default_vanishing_radii, derivative_check,
    doubling_check, doubling_from_profile, frequency_monotonicity, pohozaev_report,
    pohozaev_residual, relative_excess, relative_residual, rellich_check, rellich_report,
    vanishing_order, PohozaevForm, TripleConstants, VanishingOrder, DERIVATIVE_TOLERANCE,
    IDENTITY_TOLERANCE,
};
use maglab_core::{build_profile, Dim, Error, RadiiGrid, Verdict};
use proptest::prelude::*;

#[test]
fn residual_definitions() {
    assert_eq!(relative_residual(1.0, 1.0), 0.0);
    assert_eq!(relative_residual(3.0, 1.0), 2.0 / 5.0);
    assert_eq!(relative_excess(1.0, 2.0), 0.0);
    assert_eq!(relative_excess(3.0, 2.0), 0.5);
    assert_eq!(relative_excess(1.0, 0.0), f64::INFINITY);
    assert_eq!(relative_excess(0.0, 0.0), 0.0);
}

#[test]
fn rellich_examples() {
    let rule = rule_for(Dim::Two);
    for k in 1..=5 {
        let rep = rellich_check(&harmonic(k), 0.5, rule, IDENTITY_TOLERANCE).unwrap();
        let expected = -4.0 * PI * k as f64 * 0.5f64.powi(2 * k as i32);
        assert!(rel_err(rep.lhs, expected) <= 1e-12 && rel_err(rep.rhs, expected) <= 1e-12);
        assert!(rep.residual <= 1e-10);
        assert_eq!(rep.verdict, Verdict::Pass);
        assert_eq!(rep.identity, "rellich");
    }
    let rep = rellich_check(&gaussian(2), 0.5, rule, IDENTITY_TOLERANCE).unwrap();
    let expected = 8.0 * PI * 0.25 * (-0.5f64).exp();
    assert!(rel_err(rep.lhs, expected) <= 1e-12 && rel_err(rep.rhs, expected) <= 1e-12);
    assert!(rep.residual <= 1e-10);
    let rep = rellich_check(&zero_triple(Dim::Two), 0.5, rule, IDENTITY_TOLERANCE).unwrap();
    assert_eq!((rep.lhs, rep.rhs, rep.verdict), (0.0, 0.0, Verdict::Pass));
}

#[test]
fn rellich_and_classical_pohozaev_hold_for_every_triple() {
    let radii: Vec<f64> = (1..=20).map(|i| 0.045 * i as f64).collect();
    for t in catalog_triples().iter().chain(gauged_triples()) {
        let rule = rule_for(t.dim());
        for &r in &radii {
            let s = RadialSample::evaluate(t, r, rule).unwrap();
            let rel = rellich_report(&t.label, &s, IDENTITY_TOLERANCE);
            assert!(rel.passed(), "{} r={r}: {:e}", t.label, rel.residual);
            let poh = pohozaev_report(&t.label, &s, PohozaevForm::Classical, IDENTITY_TOLERANCE);
            assert!(poh.passed(), "{} r={r}: {:e}", t.label, poh.residual);
        }
    }
}

#[test]
fn derivative_check_examples() {
    let grid = RadiiGrid::default_grid();
    let rule = rule_for(Dim::Two);
    let p = build_profile(&harmonic(3), &grid, rule).unwrap();
    let reps = derivative_check(&p, IDENTITY_TOLERANCE, DERIVATIVE_TOLERANCE);
    assert_eq!(reps.len(), 2 * (grid.len() - 2));
    for rep in reps.iter().filter(|r| r.identity == "phi_derivative") {
        assert!(rep.residual <= 1e-8);
        assert!(rel_err(rep.lhs, 14.0 * PI * rep.radius.powi(6)) <= 1e-12);
    }
    let p = build_profile(&gaussian(2), &grid, rule).unwrap();
    for rep in derivative_check(&p, IDENTITY_TOLERANCE, DERIVATIVE_TOLERANCE) {
        assert_eq!(
            rep.verdict,
            Verdict::Pass,
            "{} r={}",
            rep.identity,
            rep.radius
        );
    }
    let p = build_profile(
        &zero_triple(Dim::Two),
        &RadiiGrid::uniform(0.1, 0.5, 0.1).unwrap(),
        rule,
    )
    .unwrap();
    let reps = derivative_check(&p, IDENTITY_TOLERANCE, DERIVATIVE_TOLERANCE);
    assert!(!reps.is_empty());
    assert!(reps.iter().all(|r| r.verdict == Verdict::NotApplicable));
}

#[test]
fn comparison_examples() {
    let rule = rule_for(Dim::Two);
    let grid = RadiiGrid::default_grid();
    for k in 1..=5 {
        let reps = comparison_check(&harmonic(k), &grid, rule).unwrap();
        let at = reps
            .iter()
            .find(|r| (r.radius - 0.3).abs() < 1e-12)
            .unwrap();
        let kf = k as f64;
        assert!(rel_err(at.lhs, PI * 0.3f64.powi(2 * k as i32 + 2) / (kf + 1.0)) <= 1e-12);
        assert!(rel_err(at.rhs, 2.0 * PI * 0.3f64.powi(2 * k as i32 + 2)) <= 1e-12);
        assert_eq!(at.verdict, Verdict::Pass);
        // ‖φ^R‖ = 0 gives r₀ = 1/2
        for r in &reps {
            let expect = if r.radius < 0.5 {
                Verdict::Pass
            } else {
                Verdict::NotApplicable
            };
            assert_eq!(r.verdict, expect);
        }
    }

    let g = gaussian(2);
    let c = TripleConstants::estimate(&g, rule).unwrap();
    assert!((c.phi_re_sup - 4.0).abs() < 1e-12);
    assert_eq!(c.comparison_radius(2), 0.5);
    // dense scan of the closed forms on (0, 1/2)
    for i in 1..100_000 {
        let r = 0.5 * i as f64 / 100_000.0;
        assert!(0.5 * PI * (1.0 - (-2.0 * r * r).exp()) <= 2.0 * PI * r * r * (-2.0 * r * r).exp());
    }
    let reps = comparison_check(&g, &grid, rule).unwrap();
    assert!(reps
        .iter()
        .filter(|r| r.radius < 0.5)
        .all(|r| r.verdict == Verdict::Pass));
    assert!(reps
        .iter()
        .filter(|r| r.radius >= 0.5)
        .all(|r| r.verdict == Verdict::NotApplicable));

    let reps = comparison_check(
        &zero_triple(Dim::Two),
        &RadiiGrid::uniform(0.1, 0.4, 0.1).unwrap(),
        rule,
    )
    .unwrap();
    assert!(reps
        .iter()
        .all(|r| r.lhs == 0.0 && r.rhs == 0.0 && r.verdict == Verdict::Pass));
}

#[test]
fn comparison_has_no_violations_below_r0() {
    let grid = RadiiGrid::uniform(0.02, 0.98, 0.02).unwrap();
    for t in catalog_triples() {
        for rep in comparison_check(t, &grid, rule_for(t.dim())).unwrap() {
            assert_ne!(rep.verdict, Verdict::Fail, "{} r={}", t.label, rep.radius);
        }
    }
}

#[test]
fn monotonicity_examples() {
    let grid = RadiiGrid::default_grid();
    for k in 2..=5 {
        let tau = frequency_monotonicity(&cached_profile(&harmonic(k)));
        assert_eq!(tau.beth_set.len(), grid.len());
        assert!(tau.tau_hat.abs() <= 1e-6, "k={k}: {}", tau.tau_hat);
        assert!(tau.monotone && !tau.vacuous);
        assert_eq!(tau.to_report().verdict, Verdict::Pass);
    }
    for t in [gaussian(2), harmonic(1)] {
        let tau = frequency_monotonicity(&cached_profile(&t));
        assert!(tau.beth_set.is_empty(), "{}", t.label);
        assert_eq!(tau.tau_hat, 0.0);
        assert!(tau.vacuous);
        assert_eq!(tau.to_report().verdict, Verdict::NotApplicable);
    }
}

#[test]
fn flux_bound_examples() {
    let rule = rule_for(Dim::Two);
    let rep = boundary_flux_bound(&harmonic(2), 0.5, rule).unwrap();
    assert!((rep.lhs - 4.0).abs() < 1e-12);
    assert!((rep.rhs - 8.0).abs() < 1e-12);
    assert_eq!(rep.verdict, Verdict::Pass);

    // the bound as stated fails once k exceeds N + 2
    let rep = boundary_flux_bound(&harmonic(6), 0.5, rule).unwrap();
    assert!((rep.lhs - 12.0).abs() < 1e-11);
    assert!((rep.rhs - 8.0).abs() < 1e-12);
    assert_eq!(rep.verdict, Verdict::Fail);
    assert!(rep.is_failure());

    for r in [0.1, 0.3, 0.6, 0.9] {
        let rep = boundary_flux_bound(&gaussian(2), r, rule).unwrap();
        assert_eq!(rep.verdict, Verdict::NotApplicable);
    }
}

#[test]
fn pohozaev_examples() {
    let rule = rule_for(Dim::Two);
    let r: f64 = 0.5;
    for k in 1..=5 {
        let t = harmonic(k);
        let c =
            pohozaev_residual(&t, r, rule, PohozaevForm::Classical, IDENTITY_TOLERANCE).unwrap();
        assert!(c.residual <= 1e-8 && c.asserted && c.verdict == Verdict::Pass);
        let p = pohozaev_residual(&t, r, rule, PohozaevForm::Paper, IDENTITY_TOLERANCE).unwrap();
        let kf = k as f64;
        let gap = PI * kf * kf * r.powi(2 * k as i32 - 1);
        assert!(rel_err(p.lhs, -gap) <= 1e-12);
        assert!(p.rhs.abs() <= 1e-12);
        assert!(((p.lhs - p.rhs).abs() - gap).abs() <= 1e-8);
        assert!(!p.asserted);
        assert!(!p.is_failure());
    }
    let z = zero_triple(Dim::Two);
    for form in [PohozaevForm::Paper, PohozaevForm::Classical] {
        assert_eq!(
            pohozaev_residual(&z, r, rule, form, IDENTITY_TOLERANCE)
                .unwrap()
                .residual,
            0.0
        );
    }
}

#[test]
fn doubling_examples() {
    let grid = RadiiGrid::default_grid();
    let rule = rule_for(Dim::Two);
    for k in 1..=5 {
        let out = doubling_check(&harmonic(k), 0.2, &grid, rule).unwrap();
        let expected = 2f64.powi(2 * k as i32 + 1);
        assert!(rel_err(out.phi_ratio, expected) <= 1e-10);
        assert!(rel_err(out.phi_ratio, 2f64.powf(out.exponent + 1.0)) <= 1e-8);
        let surface = &out.reports[0];
        assert_eq!(
            (surface.identity, surface.verdict),
            ("doubling_surface", Verdict::Pass)
        );
        // the printed volume form misses a factor of two: ratio 2^{2k+2}
        assert!(rel_err(out.mass_ratio, 2.0 * expected) <= 1e-10);
        let printed = &out.reports[1];
        assert_eq!(printed.verdict, Verdict::Fail);
        assert!(!printed.asserted);
        assert_eq!(out.reports[2].verdict, Verdict::Pass);
    }

    let out = doubling_check(&constant_triple(Dim::Two, 1.0), 0.3, &grid, rule).unwrap();
    assert!(rel_err(out.phi_ratio, 2.0) <= 1e-12);
    assert_eq!(out.exponent, 0.0);
    assert!(out
        .reports
        .iter()
        .filter(|r| r.asserted)
        .all(|r| r.verdict == Verdict::Pass));

    let out = doubling_check(&gaussian(2), 0.25, &grid, rule).unwrap();
    assert_eq!(out.exponent, 0.0);
    assert!(out.frequency_max < 0.0);
    // Φ(2γ)/Φ(γ) = 2e^{−6γ²}
    assert!(rel_err(out.phi_ratio, 2.0 * (-6.0 * 0.0625f64).exp()) <= 1e-12);
    assert_eq!(out.reports[0].verdict, Verdict::Pass);

    assert!(matches!(
        doubling_check(&zero_triple(Dim::Two), 0.2, &grid, rule),
        Err(Error::VanishingBoundaryMass { .. })
    ));
    assert!(matches!(
        doubling_check(&gaussian(2), 0.5, &grid, rule),
        Err(Error::Config(_))
    ));
}

#[test]
fn doubling_holds_for_every_triple() {
    for t in catalog_triples()
        .iter()
        .chain(gauged_triples().iter().step_by(5))
    {
        let rule = rule_for(t.dim());
        let profile = cached_profile(t);
        for gamma in [0.1, 0.2, 0.3, 0.4] {
            let out = doubling_from_profile(t, &profile, gamma, rule).unwrap();
            for rep in out.reports.iter().filter(|r| r.asserted) {
                assert_eq!(
                    rep.verdict,
                    Verdict::Pass,
                    "{} {} γ={gamma}",
                    t.label,
                    rep.identity
                );
            }
        }
    }
}

#[test]
fn vanishing_order_examples() {
    let rule = rule_for(Dim::Two);
    let radii = default_vanishing_radii();
    for k in 1..=5 {
        match vanishing_order(&*harmonic(k).omega, &radii, rule).unwrap() {
            VanishingOrder::Finite { order, slope } => {
                assert!((order - k as f64).abs() <= 0.05);
                assert!((slope - (2 * k + 2) as f64).abs() <= 1e-8);
            }
            other => panic!("{other:?}"),
        }
    }
    for dim in [Dim::Two, Dim::Three] {
        let one = constant_triple(dim, 1.0);
        match vanishing_order(&*one.omega, &radii, rule_for(dim)).unwrap() {
            VanishingOrder::Finite { order, slope } => {
                assert!(order.abs() <= 1e-10);
                assert!((slope - dim.n() as f64).abs() <= 1e-10);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            vanishing_order(&FlatField { dim }, &radii, rule_for(dim)).unwrap(),
            VanishingOrder::NumericallyInfinite
        );
    }
    assert!(vanishing_order(
        &*harmonic(1).omega,
        &RadiiGrid::new(vec![0.1, 0.2, 0.3]).unwrap(),
        rule
    )
    .is_err());
    assert!(vanishing_order(
        &*harmonic(1).omega,
        &RadiiGrid::new(vec![0.1, 0.2, 0.3, 0.6]).unwrap(),
        rule
    )
    .is_err());
}

#[test]
fn flat_field_mass_decays_faster_than_any_power() {
    // direct quadrature: log-mass slope keeps steepening as R shrinks
    let rule = rule_for(Dim::Two);
    let flat = FlatField { dim: Dim::Two };
    let mass = |r: f64| maglab_core::functionals::volume_mass(&flat, r, rule).unwrap();
    let mut prev = 0.0;
    for r in [0.2, 0.15, 0.1, 0.075] {
        let slope = (mass(r * 1.1).ln() - mass(r).ln()) / 1.1f64.ln();
        assert!(slope > prev);
        prev = slope;
    }
    assert!(prev > 100.0);
}

#[test]
fn reports_sort_deterministically() {
    let rule = rule_for(Dim::Two);
    let mut reps = Vec::new();
    for t in [gaussian(2), harmonic(2)] {
        for r in [0.6, 0.2, 0.4] {
            let s = RadialSample::evaluate(&t, r, rule).unwrap();
            reps.push(maglab_core::verify::rellich_report(&t.label, &s, 1e-8));
            reps.push(maglab_core::verify::pohozaev_report(
                &t.label,
                &s,
                PohozaevForm::Classical,
                1e-8,
            ));
        }
    }
    reps.sort_by(|a, b| a.sort_key().partial_cmp(&b.sort_key()).unwrap());
    let keys: Vec<_> = reps
        .iter()
        .map(|r| (r.triple.clone(), r.identity, r.radius))
        .collect();
    assert_eq!(
        keys[0],
        ("gaussian(N=2)".to_string(), "pohozaev_classical", 0.2)
    );
    assert_eq!(
        keys[2],
        ("gaussian(N=2)".to_string(), "pohozaev_classical", 0.6)
    );
    assert_eq!(keys[3].1, "rellich");
    assert_eq!(keys[6].0, "harmonic2d(k=2)");
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn verdict_matches_residual(lhs in -1e3f64..1e3, rhs in -1e3f64..1e3, tol in 1e-12f64..1.0) {
        let id = maglab_core::IdentityReport::identity("t", "x", "", 0.5, lhs, rhs, tol);
        prop_assert_eq!(id.verdict == Verdict::Pass, id.residual <= tol);
        let ineq = maglab_core::IdentityReport::inequality("t", "x", "", 0.5, lhs, rhs, tol);
        prop_assert_eq!(ineq.verdict == Verdict::Pass, ineq.residual <= tol);
        prop_assert_eq!(ineq.verdict == Verdict::Pass, lhs <= rhs + tol * rhs.abs());
    }

    #[test]
    fn identities_hold_at_random_radii(i in 0usize..22, r in 0.02f64..0.98) {
        let t = &gauged_triples()[i];
        let rule = rule_for(t.dim());
        prop_assert!(rellich_check(t, r, rule, IDENTITY_TOLERANCE).unwrap().passed());
        prop_assert!(pohozaev_residual(t, r, rule, PohozaevForm::Classical, IDENTITY_TOLERANCE).unwrap().passed());
    }
}
