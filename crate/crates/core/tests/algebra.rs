use std::f64::consts::{PI, SQRT_2};

use nalgebra::{DMatrix, Matrix2};
use proptest::prelude::*;
use quantlab_core::algebra::*;
use quantlab_core::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c0() -> RealCocycle {
    RealCocycle::default()
}

fn el(n: i64, m: i64) -> LatticeElement {
    LatticeElement::new(n, m)
}

fn random_element(rng: &mut ChaCha8Rng, terms: usize, reach: i64) -> AlgebraElement {
    AlgebraElement::from_terms((0..terms).map(|_| {
        (
            el(rng.gen_range(-reach..=reach), rng.gen_range(-reach..=reach)),
            C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)),
        )
    }))
}

/// Brute-force twisted convolution straight from the definition.
fn convolution_oracle(a: &[(i64, i64, C64)], b: &[(i64, i64, C64)], s: f64) -> Vec<((i64, i64), C64)> {
    let mut out: Vec<((i64, i64), C64)> = Vec::new();
    for &(n1, m1, x) in a {
        for &(n2, m2, y) in b {
            let phase = C64::from_polar(1.0, s * PI * ((m1 * n2 - n1 * m2) as f64));
            let key = (n1 + n2, m1 + m2);
            match out.iter_mut().find(|(k, _)| *k == key) {
                Some((_, v)) => *v += x * y * phase,
                None => out.push((key, x * y * phase)),
            }
        }
    }
    out
}

fn strategy_element() -> impl Strategy<Value = AlgebraElement> {
    prop::collection::vec(((-4i64..=4, -4i64..=4), (-1.0f64..1.0, -1.0f64..1.0)), 1..6).prop_map(|v| {
        AlgebraElement::from_terms(v.into_iter().map(|((n, m), (re, im))| (el(n, m), C64::new(re, im))))
    })
}

#[test]
fn product_matches_convolution_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let s = TwistParameter::new(0.37);
    for _ in 0..20 {
        let raw = |rng: &mut ChaCha8Rng| -> Vec<(i64, i64, C64)> {
            (0..5)
                .map(|_| {
                    (rng.gen_range(-3..=3), rng.gen_range(-3..=3), C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                })
                .collect()
        };
        let (ra, rb) = (raw(&mut rng), raw(&mut rng));
        let a = AlgebraElement::from_terms(ra.iter().map(|&(n, m, z)| (el(n, m), z)));
        let b = AlgebraElement::from_terms(rb.iter().map(|&(n, m, z)| (el(n, m), z)));
        let ab = multiply(&a, &b, &c0(), s).unwrap();
        for ((n, m), want) in convolution_oracle(&ra, &rb, 0.37) {
            assert!((ab.coefficient(el(n, m)) - want).norm() < 1e-13);
        }
    }
}

#[test]
fn commutation_relation() {
    for s in [0.1, 0.5, SQRT_2 - 1.0] {
        let s = TwistParameter::new(s);
        let u = AlgebraElement::basis(LatticeElement::U);
        let v = AlgebraElement::basis(LatticeElement::V);
        let uv = multiply(&u, &v, &c0(), s).unwrap();
        let vu = multiply(&v, &u, &c0(), s).unwrap();
        let want = uv.scale(C64::from_polar(1.0, 2.0 * PI * s.s));
        assert!(vu.max_abs_diff(&want) <= 4.0 * f64::EPSILON);
    }
}

#[test]
fn involution_of_uv() {
    let s = TwistParameter::new(0.3);
    let uv = multiply(&AlgebraElement::basis(LatticeElement::U), &AlgebraElement::basis(LatticeElement::V), &c0(), s).unwrap();
    let star = involution(&uv, &c0(), s).unwrap();
    assert!((star.coefficient(el(-1, -1)) - C64::from_polar(1.0, PI * 0.3)).norm() < 1e-15);
    assert_eq!(star.len(), 1);
}

#[test]
fn cocycle_identity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let c = c0();
    for _ in 0..10_000 {
        let mut g = || el(rng.gen_range(-50..=50), rng.gen_range(-50..=50));
        let (a, b, d) = (g(), g(), g());
        assert!(c.identity_defect(a, b, d).unwrap().abs() <= 1e-12);
    }
}

#[test]
fn harper_norm_at_zero_twist() {
    let oracle = (0..200)
        .flat_map(|i| (0..200).map(move |j| (i as f64 / 200.0, j as f64 / 200.0)))
        .map(|(x, y)| 2.0 * (2.0 * PI * x).cos() + 2.0 * (2.0 * PI * y).cos())
        .fold(f64::MIN, f64::max);
    let est = norm_estimate(&AlgebraElement::harper(), &c0(), TwistParameter::new(0.0), 40).unwrap();
    assert!((est - oracle).abs() <= 0.05, "{est} vs {oracle}");
}

#[test]
fn harper_norm_at_half_twist() {
    // Bloch family of the rational rotation 1/2: U = e^{2πik₁}σ_z, V = e^{2πik₂}σ_x.
    let mut oracle: f64 = 0.0;
    for i in 0..100 {
        for j in 0..100 {
            let (k1, k2) = (i as f64 / 100.0, j as f64 / 100.0);
            let h = Matrix2::new(1.0, 0.0, 0.0, -1.0) * (2.0 * (2.0 * PI * k1).cos())
                + Matrix2::new(0.0, 1.0, 1.0, 0.0) * (2.0 * (2.0 * PI * k2).cos());
            oracle = oracle.max(h.symmetric_eigenvalues().amax());
        }
    }
    let est = norm_estimate(&AlgebraElement::harper(), &c0(), TwistParameter::new(0.5), 40).unwrap();
    assert!((est - oracle).abs() <= 0.01, "{est} vs {oracle}");
    assert!((oracle - 2.0 * SQRT_2).abs() < 1e-12);
}

#[test]
fn norm_profile_symmetry() {
    let grid: Vec<f64> = (0..=10).map(|k| k as f64 / 10.0).collect();
    let prof = norm_profile(&AlgebraElement::harper(), &grid, &c0(), 12, 0.5).unwrap();
    for k in 0..=10 {
        assert!((prof.rows[k].1 - prof.rows[10 - k].1).abs() <= 1e-2);
    }
    let unit = norm_profile(&AlgebraElement::one(), &grid, &c0(), 3, 1e-12).unwrap();
    assert!(unit.continuous && unit.rows.iter().all(|r| (r.1 - 1.0).abs() < 1e-12));
}

#[test]
fn rep_of_star_a_a_is_psd() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let s = TwistParameter::new(0.61);
    let a = random_element(&mut rng, 6, 2);
    let ata = multiply(&involution(&a, &c0(), s).unwrap(), &a, &c0(), s).unwrap();
    let m = regular_representation(&ata, &c0(), s, 8).unwrap().to_dense();
    assert!((&m - m.adjoint()).norm() < 1e-12);
    let ev = quantlab_core::linalg::hermitian_eigenvalues(&m);
    assert!(ev[0] >= -1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn associativity(a in strategy_element(), b in strategy_element(), d in strategy_element(), s in 0.0f64..1.0) {
        let s = TwistParameter::new(s);
        let c = c0();
        let left = multiply(&multiply(&a, &b, &c, s).unwrap(), &d, &c, s).unwrap();
        let right = multiply(&a, &multiply(&b, &d, &c, s).unwrap(), &c, s).unwrap();
        prop_assert!(left.max_abs_diff(&right) <= 1e-12);
    }

    #[test]
    fn trace_is_tracial(a in strategy_element(), b in strategy_element(), s in 0.0f64..1.0) {
        let s = TwistParameter::new(s);
        let c = c0();
        let ab = trace(&multiply(&a, &b, &c, s).unwrap(), &c, s).unwrap();
        let ba = trace(&multiply(&b, &a, &c, s).unwrap(), &c, s).unwrap();
        prop_assert!((ab - ba).norm() <= 1e-12);
    }

    #[test]
    fn trace_of_star_a_a(a in strategy_element(), s in 0.0f64..1.0) {
        let s = TwistParameter::new(s);
        let c = c0();
        let t = trace(&multiply(&involution(&a, &c, s).unwrap(), &a, &c, s).unwrap(), &c, s).unwrap();
        let parseval: f64 = a.iter().map(|(_, z)| z.norm_sqr()).sum();
        prop_assert!(t.im.abs() <= 1e-12 && (t.re - parseval).abs() <= 1e-12);
    }

    #[test]
    fn involution_axioms(a in strategy_element(), b in strategy_element(), s in 0.0f64..1.0) {
        let s = TwistParameter::new(s);
        let c = c0();
        let star = |x: &AlgebraElement| involution(x, &c, s).unwrap();
        prop_assert!(star(&star(&a)).max_abs_diff(&a) <= 1e-13);
        let lhs = star(&multiply(&a, &b, &c, s).unwrap());
        let rhs = multiply(&star(&b), &star(&a), &c, s).unwrap();
        prop_assert!(lhs.max_abs_diff(&rhs) <= 1e-13);
    }

    #[test]
    fn regular_representation_is_multiplicative_inside(a in strategy_element(), b in strategy_element(), s in 0.0f64..1.0) {
        let s = TwistParameter::new(s);
        let c = c0();
        let r = 8;
        let inner = r - a.support_radius() - b.support_radius();
        let ra = regular_representation(&a, &c, s, r).unwrap().to_dense();
        let rb = regular_representation(&b, &c, s, r).unwrap().to_dense();
        let rep = regular_representation(&multiply(&a, &b, &c, s).unwrap(), &c, s, r).unwrap();
        let diff: DMatrix<C64> = rep.to_dense() - ra * rb;
        for g in ball(inner) {
            let col = rep.index_of(g).unwrap();
            for row in 0..rep.dim() {
                prop_assert!(diff[(row, col)].norm() <= 1e-12);
            }
        }
    }

    #[test]
    fn norm_is_monotone_and_l1_bounded(a in strategy_element(), s in 0.0f64..1.0) {
        let s = TwistParameter::new(s);
        let mut last = 0.0;
        for r in [1, 3, 5, 8, 11] {
            let n = norm_estimate(&a, &c0(), s, r).unwrap();
            prop_assert!(n >= last - 1e-10);
            prop_assert!(n <= a.l1_norm() + 1e-10);
            last = n;
        }
    }
}
