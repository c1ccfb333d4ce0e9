use std::f64::consts::PI;

use proptest::prelude::*;
use quantlab_core::algebra::{ball, involution, multiply, sigma, AlgebraElement, LatticeElement, RealCocycle, TwistParameter};
use quantlab_core::sections::*;
use quantlab_core::symplectic::PolynomialOneForm;
use quantlab_core::C64;

fn gauge() -> PolynomialOneForm {
    PolynomialOneForm::torus_symmetric()
}

fn el(n: i64, m: i64) -> LatticeElement {
    LatticeElement::new(n, m)
}

fn term_strategy(s: f64) -> impl Strategy<Value = GaussianTerm> {
    ((-1.0f64..1.0, -1.0f64..1.0), (-1.5f64..1.5, -1.5f64..1.5), (-2.0f64..2.0, -2.0f64..2.0)).prop_map(
        move |((re, im), (mx, my), (kx, ky))| GaussianTerm { coeff: C64::new(re, im), center: [mx, my], wave: [kx, ky], s },
    )
}

fn section_strategy(s: f64) -> impl Strategy<Value = GaussianSection> {
    prop::collection::vec(term_strategy(s), 1..4).prop_map(|t| GaussianSection::new(t).unwrap())
}

/// Tensor trapezoid rule on a box; spectrally accurate for Gaussians.
fn trapezoid_inner(psi: &GaussianSection, phi: &GaussianSection, half: f64, n: usize) -> C64 {
    let h = 2.0 * half / n as f64;
    let mut acc = C64::new(0.0, 0.0);
    for i in 0..n {
        for j in 0..n {
            let (x, y) = (-half + (i as f64 + 0.5) * h, -half + (j as f64 + 0.5) * h);
            acc += psi.eval(x, y).conj() * phi.eval(x, y);
        }
    }
    acc * h * h
}

#[test]
fn gram_element_of_the_vacuum() {
    let s = TwistParameter::new(2.0);
    let start = std::time::Instant::now();
    let g = module_inner(&GaussianSection::vacuum(2.0), &GaussianSection::vacuum(2.0), &gauge(), s, 6).unwrap();
    for gm in ball(6) {
        let want = (-(PI * 2.0 / 2.0) * (gm.n * gm.n + gm.m * gm.m) as f64).exp() / 2.0;
        assert!((g.coefficient(gm) - C64::new(want, 0.0)).norm() <= 1e-10);
    }
    let report = gram_positivity(&[GaussianSection::vacuum(2.0)], &gauge(), &RealCocycle::default(), s, 6, 6).unwrap();
    assert!(report.min_eigenvalue >= -1e-9);
    assert!(start.elapsed().as_secs_f64() < 10.0);
}

#[test]
fn vacuum_translate_against_expansion() {
    // e^{isπ(mx−ny)} e^{−(πs/2)((x+n)²+(y+m)²)} evaluated pointwise.
    let s = 1.3;
    let (n, m) = (2, -1);
    let moved = project_act(&GaussianSection::vacuum(s), el(n, m), &gauge(), TwistParameter::new(s)).unwrap();
    for &(x, y) in &[(0.1, 0.2), (-1.0, 0.7), (2.2, -0.4)] {
        let (nf, mf) = (n as f64, m as f64);
        let want = C64::from_polar((-(PI * s / 2.0) * ((x + nf).powi(2) + (y + mf).powi(2))).exp(), s * PI * (mf * x - nf * y));
        assert!((moved.eval(x, y) - want).norm() < 1e-12);
    }
}

#[test]
fn l2_inner_against_trapezoid_oracle() {
    let s = 1.1;
    let psi = GaussianSection::new(vec![
        GaussianTerm { coeff: C64::new(0.7, -0.2), center: [0.3, -0.5], wave: [1.0, 0.4], s },
        GaussianTerm { coeff: C64::new(-0.1, 0.9), center: [-0.8, 0.2], wave: [-0.6, 1.5], s },
    ])
    .unwrap();
    let phi = GaussianSection::new(vec![GaussianTerm { coeff: C64::new(1.0, 0.3), center: [0.5, 0.5], wave: [0.2, -1.1], s }]).unwrap();
    let exact = l2_inner(&psi, &phi).unwrap();
    let quad = trapezoid_inner(&psi, &phi, 8.0, 320);
    assert!((exact - quad).norm() <= 1e-8, "{exact} vs {quad}");
}

#[test]
fn empty_overlap_is_block_diagonal() {
    let s = 2.0;
    let far = GaussianSection::new(vec![GaussianTerm { center: [0.5, 0.5], wave: [40.0, 0.0], ..GaussianTerm::vacuum(s) }]).unwrap();
    let one = gram_positivity(&[GaussianSection::vacuum(s)], &gauge(), &RealCocycle::default(), TwistParameter::new(s), 4, 3).unwrap();
    let two = gram_positivity(&[GaussianSection::vacuum(s), far], &gauge(), &RealCocycle::default(), TwistParameter::new(s), 4, 3)
        .unwrap();
    assert!(two.min_eigenvalue >= -1e-9);
    assert!(two.min_eigenvalue <= one.min_eigenvalue + 1e-9);
}

#[test]
fn module_trace_scales_quadratically() {
    let s = TwistParameter::new(1.7);
    let psi = GaussianSection::new(vec![GaussianTerm { coeff: C64::new(0.4, 0.1), center: [0.2, -0.3], wave: [0.5, 0.0], s: 1.7 }]).unwrap();
    let a = C64::new(1.5, -2.0);
    let t1 = module_trace(&psi, &gauge(), &RealCocycle::default(), s, 4).unwrap();
    let t2 = module_trace(&psi.scale(a), &gauge(), &RealCocycle::default(), s, 4).unwrap();
    assert!((t2 - a.norm_sqr() * t1).abs() < 1e-12);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn projective_action_twist(psi in section_strategy(1.3), n in -3i64..=3, m in -3i64..=3, n2 in -3i64..=3, m2 in -3i64..=3) {
        let s = TwistParameter::new(1.3);
        let (g1, g2) = (el(n, m), el(n2, m2));
        let lhs = project_act(&project_act(&psi, g1, &gauge(), s).unwrap(), g2, &gauge(), s).unwrap();
        let phase = sigma(&RealCocycle::default(), s, g1, g2).unwrap();
        let rhs = project_act(&psi, g1 * g2, &gauge(), s).unwrap().scale(phase);
        for (a, b) in lhs.terms().iter().zip(rhs.terms()) {
            prop_assert!((a.coeff - b.coeff).norm() <= 1e-12);
            prop_assert!((a.center[0] - b.center[0]).abs() <= 1e-12 && (a.center[1] - b.center[1]).abs() <= 1e-12);
            prop_assert!((a.wave[0] - b.wave[0]).abs() <= 1e-12 && (a.wave[1] - b.wave[1]).abs() <= 1e-12);
        }
    }

    #[test]
    fn hermitian_symmetry(psi in section_strategy(1.3), phi in section_strategy(1.3)) {
        let s = TwistParameter::new(1.3);
        let c = RealCocycle::default();
        let pq = module_inner(&psi, &phi, &gauge(), s, 5).unwrap();
        let qp = module_inner(&phi, &psi, &gauge(), s, 5).unwrap();
        let star = involution(&pq, &c, s).unwrap();
        for g in ball(5) {
            prop_assert!((star.coefficient(g) - qp.coefficient(g)).norm() <= 1e-12);
        }
        let pp = module_inner(&psi, &psi, &gauge(), s, 5).unwrap();
        let pps = involution(&pp, &c, s).unwrap();
        for g in ball(5) {
            prop_assert!((pps.coefficient(g) - pp.coefficient(g)).norm() <= 1e-12);
        }
    }

    #[test]
    fn right_linearity(psi in section_strategy(1.3), phi in section_strategy(1.3), n in -2i64..=2, m in -2i64..=2) {
        let s = TwistParameter::new(1.3);
        let c = RealCocycle::default();
        let g = el(n, m);
        let r = 7;
        let moved = project_act(&phi, g, &gauge(), s).unwrap();
        let lhs = module_inner(&psi, &moved, &gauge(), s, r).unwrap();
        let rhs = multiply(&module_inner(&psi, &phi, &gauge(), s, r).unwrap(), &AlgebraElement::basis(g), &c, s).unwrap();
        for h in ball(r - 2) {
            prop_assert!((lhs.coefficient(h) - rhs.coefficient(h)).norm() <= 1e-12);
        }
    }

    #[test]
    fn positivity(sections in prop::collection::vec(section_strategy(1.3), 1..4)) {
        let s = TwistParameter::new(1.3);
        let r = gram_positivity(&sections, &gauge(), &RealCocycle::default(), s, 5, 3).unwrap();
        prop_assert!(r.min_eigenvalue >= -1e-9);
    }

    #[test]
    fn trace_equals_l2_norm(psi in section_strategy(0.9)) {
        let s = TwistParameter::new(0.9);
        let t = module_trace(&psi, &gauge(), &RealCocycle::default(), s, 3).unwrap();
        prop_assert!((t - l2_inner(&psi, &psi).unwrap().re).abs() <= 1e-12);
    }

    #[test]
    fn truncation_tail_bound(coeff in (0.1f64..1.0, -1.0f64..1.0), mu in (-0.2f64..0.2, -0.2f64..0.2), r in 2i64..5) {
        let s = TwistParameter::new(1.5);
        let psi = GaussianSection::new(vec![GaussianTerm {
            coeff: C64::new(coeff.0, coeff.1),
            center: [mu.0, mu.1],
            ..GaussianTerm::vacuum(1.5)
        }])
        .unwrap();
        let small = module_inner(&psi, &psi, &gauge(), s, r).unwrap();
        let big = module_inner(&psi, &psi, &gauge(), s, r + 2).unwrap();
        let norm = l2_inner(&psi, &psi).unwrap().re;
        prop_assert!(small.max_abs_diff(&big) <= tail_bound(1.5, r) * norm);
    }
}
