use proptest::prelude::*;
use ymwave_core::constraints::{expanded_constraints, nearest_pattern};
use ymwave_core::residuals::{ampere_residual, gauss_residual};
use ymwave_core::*;

fn sign() -> impl Strategy<Value = Sign> {
    prop_oneof![Just(Sign::Plus), Just(Sign::Minus)]
}

fn nonzero(lo: f64, hi: f64) -> impl Strategy<Value = f64> {
    prop_oneof![-hi..-lo, lo..hi]
}

fn family() -> impl Strategy<Value = FamilySolution> {
    (
        nonzero(0.2, 3.0),
        nonzero(0.2, 3.0),
        -2.0..2.0f64,
        nonzero(0.5, 3.0),
        sign(),
        sign(),
        0.3..3.0f64,
    )
        .prop_flat_map(|(k, a4, lambda, g, eta, xi, w)| {
            prop_oneof![
                Just(FamilySolution::linear(k, a4, lambda, g, 1.0).unwrap()),
                Just(FamilySolution::self_interacting(k, a4, lambda, g, eta, xi, 1.0).unwrap()),
                Just(FamilySolution::pure_gauge(k, w, a4, lambda, g, eta, 1.0).unwrap()),
            ]
        })
}

#[test]
fn every_sign_pair_of_family_ii_solves() {
    for eta in Sign::BOTH {
        for xi in Sign::BOTH {
            let p = build_family_ii(1.7, -0.6, 0.3, 0.8, eta, xi, 1.0).unwrap();
            assert!(
                normalized_constraints(&p).max_abs() < 1e-14,
                "η={eta} ξ={xi}"
            );
            let s = SpacetimePoint::new(0.2, 0.0, 0.5, -1.0);
            assert!(gauss_residual(&p, &s, Mode::Analytic).unwrap().norm() < 1e-12);
            assert!(ampere_residual(&p, &s, Mode::Analytic).unwrap().norm() < 1e-12);
        }
    }
}

#[test]
fn perturbed_pure_gauge_flags_same_constraints_as_oracle() {
    let mut p = build_family_iii(1.1, 0.6, 0.9, 0.4, 1.2, Sign::Plus, 1.0).unwrap();
    p.alpha5 += 0.05;
    let exact = nine_constraints(&p).violations(1e-6);
    let oracle = oracle_constraints(&p, 1e-4).unwrap().violations(1e-6);
    assert!(exact.contains(5), "{exact}");
    assert_eq!(exact, oracle);
}

#[test]
fn oracle_recovers_constraints_of_random_params() {
    let p = AnsatzParams {
        alpha1: 0.3,
        alpha2: -0.8,
        alpha3: 1.1,
        alpha4: 0.5,
        alpha5: -1.4,
        lambda: 0.7,
        k: 1.2,
        omega: 0.4,
        g: 0.9,
        c: 1.0,
    };
    let exact = nine_constraints(&p);
    let fit = oracle_fit(&p, 1e-4).unwrap();
    for n in 1..=9 {
        assert!((fit.constraints.get(n) - exact.get(n)).abs() < 1e-6, "c{n}");
    }
    assert!(fit.off_pattern < 1e-6);
}

#[test]
fn scan_style_refinement_lands_on_a_root() {
    let seed = AnsatzParams {
        k: 1.0,
        omega: 1.0,
        g: 1.0,
        c: 1.0,
        ..Default::default()
    }
    .with_alphas([0.4, -0.3, 1.2, 0.9, -0.5]);
    let out = refine(&seed, &RefineOptions::default());
    assert!(out.converged);
    assert!(classify(&out.params, 1e-9).unwrap().is_solution());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn families_satisfy_all_constraints(f in family()) {
        let p = f.params();
        prop_assert!(normalized_constraints(&p).max_abs() < 1e-12);
        prop_assert!(nine_constraints(&p).violations(1e-9).is_empty());
    }

    #[test]
    fn families_classify_as_themselves(f in family()) {
        match classify(&f.params(), 1e-9).unwrap() {
            Classification::Solution(s) => {
                prop_assert_eq!(s.family(), f.family());
                prop_assert!((s.alpha4() - f.alpha4()).abs() < 1e-9);
            }
            other => prop_assert!(false, "{:?}", other),
        }
        let (label, d) = nearest_pattern(&f.params());
        prop_assert_eq!(label, Some(f.family()));
        prop_assert!(d < 1e-9);
    }

    #[test]
    fn factored_and_expanded_constraints_agree(
        a in prop::array::uniform5(-2.0..2.0f64),
        lambda in -2.0..2.0f64,
        k in -2.0..2.0f64,
        omega in -2.0..2.0f64,
        g in -2.0..2.0f64,
    ) {
        let p = AnsatzParams { lambda, k, omega, g, c: 1.0, ..Default::default() }.with_alphas(a);
        let f = nine_constraints(&p);
        let e = expanded_constraints(&p);
        for n in 1..=9 {
            prop_assert!((f.get(n) - e.get(n)).abs() < 1e-11);
        }
    }
}
