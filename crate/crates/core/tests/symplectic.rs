use std::f64::consts::PI;

use proptest::prelude::*;
use quantlab_core::algebra::{LatticeElement, RealCocycle};
use quantlab_core::poly::Poly2;
use quantlab_core::symplectic::*;

fn el(n: i64, m: i64) -> LatticeElement {
    LatticeElement::new(n, m)
}

#[test]
fn closed_form_on_the_ten_ball() {
    let a = PolynomialOneForm::torus_symmetric();
    let mut deriver = CocycleDeriver::new(&a);
    let start = std::time::Instant::now();
    let mut worst: f64 = 0.0;
    for n in -10..=10 {
        for m in -10..=10 {
            for n2 in -10..=10 {
                for m2 in -10..=10 {
                    let c = deriver.derive(el(n, m), el(n2, m2), &DEFAULT_SAMPLES).unwrap();
                    worst = worst.max((c - PI * (m * n2 - n * m2) as f64).abs());
                }
            }
        }
    }
    assert!(worst <= 1e-10, "{worst}");
    assert!(start.elapsed().as_secs_f64() < 5.0);
}

#[test]
fn landau_table_passes_identity_exhaustively() {
    let c = cocycle_table(&PolynomialOneForm::landau(2.0 * PI), 3).unwrap();
    assert!(max_identity_defect(&c, 3).unwrap() <= 1e-10);
}

#[test]
fn zero_potential_gives_zero_table() {
    let c = cocycle_table(&PolynomialOneForm::zero(), 2).unwrap();
    for g1 in quantlab_core::algebra::ball(1) {
        for g2 in quantlab_core::algebra::ball(1) {
            assert_eq!(c.value(g1, g2).unwrap(), 0.0);
        }
    }
}

#[test]
fn symmetric_table_matches_closed_form() {
    let c = cocycle_table(&PolynomialOneForm::torus_symmetric(), 3).unwrap();
    let closed = RealCocycle::default();
    for g1 in quantlab_core::algebra::ball(3) {
        for g2 in quantlab_core::algebra::ball(3) {
            if (g1 * g2).sup_norm() <= 3 {
                assert!((c.value(g1, g2).unwrap() - closed.value(g1, g2).unwrap()).abs() <= 1e-10);
            }
        }
    }
}

fn closed_quadratic() -> impl Strategy<Value = PolynomialOneForm> {
    // A = symmetric gauge + dF for a random polynomial F of degree ≤ 3: same curvature.
    prop::collection::vec(-1.0f64..1.0, 10).prop_map(|c| {
        let f = Poly2::from_coeffs(vec![vec![0.0, c[0], c[1], c[2]], vec![c[3], c[4], c[5]], vec![c[6], c[7]], vec![c[8]]]);
        let base = PolynomialOneForm::torus_symmetric();
        PolynomialOneForm::new(base.p.add(&f.dx()), base.q.add(&f.dy())).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn phi_solves_exactness(a in closed_quadratic(), n in -4i64..=4, m in -4i64..=4) {
        let g = el(n, m);
        let phi = solve_phi(&a, g).unwrap();
        let diff_p = a.p.sub(&pullback(&a, g).p);
        let diff_q = a.q.sub(&pullback(&a, g).q);
        prop_assert!(phi.poly.dx().approx_eq(&diff_p, 1e-9));
        prop_assert!(phi.poly.dy().approx_eq(&diff_q, 1e-9));
        prop_assert!(phi.eval(0.0, 0.0).abs() <= 1e-12);
    }

    #[test]
    fn antisymmetrization_is_gauge_invariant(a in closed_quadratic(), n in -3i64..=3, m in -3i64..=3, n2 in -3i64..=3, m2 in -3i64..=3) {
        let (g1, g2) = (el(n, m), el(n2, m2));
        let c = derive_cocycle(&a, g1, g2, &DEFAULT_SAMPLES).unwrap() - derive_cocycle(&a, g2, g1, &DEFAULT_SAMPLES).unwrap();
        prop_assert!((c - 2.0 * PI * (m * n2 - n * m2) as f64).abs() <= 1e-8);
    }

    #[test]
    fn combination_is_point_independent(n in -5i64..=5, m in -5i64..=5, n2 in -5i64..=5, m2 in -5i64..=5,
                                        pts in prop::collection::vec((-3.0f64..3.0, -3.0f64..3.0), 5..8)) {
        let a = PolynomialOneForm::landau(2.0 * PI);
        let c = derive_cocycle(&a, el(n, m), el(n2, m2), &pts);
        prop_assert!(c.is_ok());
    }
}
