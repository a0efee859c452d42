use proptest::prelude::*;
use proptest::strategy::ValueTree;
use ymwave_core::fields::{electric_field_numeric_parts, magnetic_field_numeric_parts};
use ymwave_core::*;

fn params() -> impl Strategy<Value = AnsatzParams> {
    (
        prop::array::uniform5(-2.0..2.0f64),
        -2.0..2.0f64,
        0.2..3.0f64,
        -3.0..3.0f64,
        prop_oneof![-3.0..-0.5f64, 0.5..3.0f64],
    )
        .prop_map(|(a, lambda, k, omega, g)| {
            AnsatzParams {
                lambda,
                k,
                omega,
                g,
                c: 1.0,
                ..Default::default()
            }
            .with_alphas(a)
        })
}

fn point() -> impl Strategy<Value = SpacetimePoint> {
    prop::array::uniform4(-2.0..2.0f64).prop_map(|[t, x, y, z]| SpacetimePoint::new(t, x, y, z))
}

fn diff(a: &ColorVector, b: &ColorVector) -> f64 {
    a.components()
        .iter()
        .zip(b.components().iter())
        .map(|(u, v)| (*u - *v).norm())
        .fold(0.0, f64::max)
}

#[test]
fn numeric_fields_converge_at_second_order() {
    let mut ratios = Vec::new();
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..120 {
        let p = params().new_tree(&mut runner).unwrap().current();
        let s = point().new_tree(&mut runner).unwrap().current();
        let ea = electric_field_analytic(&p, &s);
        let ba = magnetic_field_analytic(&p, &s);
        let err = |h: f64| {
            diff(&electric_field_numeric(&p, &s, h).unwrap(), &ea)
                + diff(&magnetic_field_numeric(&p, &s, h).unwrap(), &ba)
        };
        let (e1, e2) = (err(1e-2), err(5e-3));
        if e1 > 1e-9 {
            ratios.push(e1 / e2);
        }
    }
    assert!(
        ratios.len() >= 100,
        "only {} samples above round-off",
        ratios.len()
    );
    for r in ratios {
        assert!((r - 4.0).abs() < 0.5, "ratio {r}");
    }
}

#[test]
fn family_fields_have_no_x_or_z_components() {
    let sols = [
        build_family_i(1.3, 0.8, 0.4, 1.1, 1.0).unwrap(),
        build_family_ii(1.3, 0.8, 0.4, 1.1, Sign::Minus, Sign::Plus, 1.0).unwrap(),
    ];
    for p in sols {
        for s in [
            SpacetimePoint::new(0.3, 0.0, -0.7, 1.9),
            SpacetimePoint::new(-1.1, 2.0, 0.4, 0.2),
        ] {
            let e = electric_field_analytic(&p, &s);
            let b = magnetic_field_analytic(&p, &s);
            // transverse: no component along the propagation axis
            assert!(e.z.norm() < 1e-14 && b.z.norm() < 1e-14);
            assert!(e.x.norm() < 1e-14 && b.y.norm() < 1e-14);
        }
    }
}

#[test]
fn fields_do_not_depend_on_x() {
    let p = build_family_ii(0.9, 1.4, 0.6, 0.7, Sign::Plus, Sign::Minus, 1.0).unwrap();
    let a = SpacetimePoint::new(0.4, -3.0, 0.8, 1.1);
    let b = SpacetimePoint { x: 5.0, ..a };
    assert_eq!(
        electric_field_analytic(&p, &a),
        electric_field_analytic(&p, &b)
    );
    assert_eq!(
        magnetic_field_analytic(&p, &a),
        magnetic_field_analytic(&p, &b)
    );
}

#[test]
fn trivial_wave_has_zero_fields() {
    let p = AnsatzParams {
        alpha3: 0.7,
        lambda: 0.0,
        k: 0.0,
        omega: 0.0,
        g: 1.0,
        c: 1.0,
        ..Default::default()
    };
    let s = SpacetimePoint::new(0.5, 0.1, 0.9, -0.3);
    assert!(electric_field_analytic(&p, &s).norm() < 1e-15);
    assert!(magnetic_field_analytic(&p, &s).norm() < 1e-15);
}

#[test]
fn pure_gauge_field_strength_vanishes() {
    let p = build_family_iii(1.2, 0.7, 1.5, 0.9, 1.3, Sign::Minus, 1.0).unwrap();
    let grid = Grid::new(
        Samples::new(-2.0, 2.0, 4).unwrap(),
        Samples::new(-2.0, 2.0, 4).unwrap(),
        Samples::new(-2.0, 2.0, 4).unwrap(),
    );
    for s in grid.points() {
        let f = field_strength(&p, &s, DEFAULT_STEP).unwrap();
        for mu in 0..4 {
            for nu in 0..4 {
                assert!(f.get(mu, nu).norm() < 1e-8);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn abelian_limit_drops_commutators(p in params(), s in point()) {
        let p = AnsatzParams { g: 0.0, ..p };
        let e = electric_field_numeric_parts(&p, &s, 1e-4, Stencil::Central2).unwrap();
        let b = magnetic_field_numeric_parts(&p, &s, 1e-4, Stencil::Central2).unwrap();
        prop_assert_eq!(e.commutator.norm(), 0.0);
        prop_assert_eq!(b.commutator.norm(), 0.0);
    }

    #[test]
    fn field_strength_is_antisymmetric(p in params(), s in point()) {
        let f = field_strength_analytic(&p, &s);
        for mu in 0..4 {
            for nu in 0..4 {
                prop_assert!((f.get(mu, nu) + f.get(nu, mu)).norm() < 1e-14);
            }
        }
        prop_assert!(diff(&f.electric(), &electric_field_analytic(&p, &s)) < 1e-14);
    }
}
