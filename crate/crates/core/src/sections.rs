//! Gaussian sections on the covering plane, the projective `ℤ²` action
//! `ψ·γ = e^{isφ_γ} γ*ψ` and the algebra-valued inner product.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;

use crate::algebra::{ball, regular_representation, AlgebraElement, LatticeElement, RealCocycle, TwistParameter};
use crate::linalg::hermitian_eigenvalues;
use crate::symplectic::{solve_phi, PolynomialOneForm};
use crate::{Error, Result, C64};

/// `coeff·exp(−(πs/2)|r − center|² + i wave·r)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussianTerm {
    pub coeff: C64,
    pub center: [f64; 2],
    pub wave: [f64; 2],
    pub s: f64,
}

impl GaussianTerm {
    /// The vacuum `e^{−(πs/2)(x²+y²)}`.
    pub fn vacuum(s: f64) -> Self {
        Self { coeff: C64::new(1.0, 0.0), center: [0.0, 0.0], wave: [0.0, 0.0], s }
    }

    pub fn eval(&self, x: f64, y: f64) -> C64 {
        let (dx, dy) = (x - self.center[0], y - self.center[1]);
        let re = -0.5 * PI * self.s * (dx * dx + dy * dy);
        self.coeff * C64::from_polar(libm::exp(re), self.wave[0] * x + self.wave[1] * y)
    }

    /// `(∂ψ/∂x, ∂ψ/∂y)`.
    pub fn gradient(&self, x: f64, y: f64) -> (C64, C64) {
        let v = self.eval(x, y);
        let gx = C64::new(-PI * self.s * (x - self.center[0]), self.wave[0]);
        let gy = C64::new(-PI * self.s * (y - self.center[1]), self.wave[1]);
        (v * gx, v * gy)
    }
}

/// A finite sum of Gaussian terms sharing the width `s`.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussianSection {
    terms: Vec<GaussianTerm>,
}

impl GaussianSection {
    pub fn new(terms: Vec<GaussianTerm>) -> Result<Self> {
        let s = terms.first().ok_or(Error::InvalidSection)?.s;
        if !(s > 0.0) || terms.iter().any(|t| t.s != s) {
            return Err(Error::InvalidSection);
        }
        Ok(Self { terms })
    }

    pub fn vacuum(s: f64) -> Self {
        Self { terms: alloc::vec![GaussianTerm::vacuum(s)] }
    }

    pub fn terms(&self) -> &[GaussianTerm] {
        &self.terms
    }

    pub fn width(&self) -> f64 {
        self.terms[0].s
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { terms: self.terms.iter().map(|t| GaussianTerm { coeff: t.coeff * z, ..*t }).collect() }
    }

    pub fn eval(&self, x: f64, y: f64) -> C64 {
        self.terms.iter().map(|t| t.eval(x, y)).sum()
    }

    pub fn gradient(&self, x: f64, y: f64) -> (C64, C64) {
        self.terms.iter().map(|t| t.gradient(x, y)).fold((C64::default(), C64::default()), |a, b| (a.0 + b.0, a.1 + b.1))
    }
}

/// `ψ·γ = e^{isφ_γ} γ*ψ`, with `φ_γ` solved from the potential `a`.
pub fn project_act(
    psi: &GaussianSection,
    g: LatticeElement,
    a: &PolynomialOneForm,
    s: TwistParameter,
) -> Result<GaussianSection> {
    let phi = solve_phi(a, g)?;
    let (a0, ax, ay) = phi.affine_parts().ok_or(Error::UnsupportedGauge(g))?;
    let (n, m) = (g.n as f64, g.m as f64);
    let terms = psi
        .terms
        .iter()
        .map(|t| {
            let shift_phase = t.wave[0] * n + t.wave[1] * m + s.s * a0;
            GaussianTerm {
                coeff: t.coeff * C64::from_polar(1.0, shift_phase),
                center: [t.center[0] - n, t.center[1] - m],
                wave: [t.wave[0] + s.s * ax, t.wave[1] + s.s * ay],
                s: t.s,
            }
        })
        .collect();
    Ok(GaussianSection { terms })
}

fn term_inner(t1: &GaussianTerm, t2: &GaussianTerm) -> C64 {
    let s = t1.s;
    let dmu = [t1.center[0] - t2.center[0], t1.center[1] - t2.center[1]];
    let mid = [0.5 * (t1.center[0] + t2.center[0]), 0.5 * (t1.center[1] + t2.center[1])];
    let k = [t2.wave[0] - t1.wave[0], t2.wave[1] - t1.wave[1]];
    let k2 = k[0] * k[0] + k[1] * k[1];
    let re = -0.25 * PI * s * (dmu[0] * dmu[0] + dmu[1] * dmu[1]) - k2 / (4.0 * PI * s);
    t1.coeff.conj() * t2.coeff * C64::from_polar(libm::exp(re) / s, k[0] * mid[0] + k[1] * mid[1])
}

/// `∫ conj(ψ) φ dx dy` in closed form.
pub fn l2_inner(psi: &GaussianSection, phi: &GaussianSection) -> Result<C64> {
    if psi.width() != phi.width() {
        return Err(Error::InvalidSection);
    }
    Ok(psi.terms.iter().flat_map(|t1| phi.terms.iter().map(move |t2| term_inner(t1, t2))).sum())
}

/// `Σ_{|γ| ≤ R} [γ]·⟨ψ·γ | φ⟩`, summed in lexicographic order of `γ`.
pub fn module_inner(
    psi: &GaussianSection,
    phi: &GaussianSection,
    a: &PolynomialOneForm,
    s: TwistParameter,
    radius: i64,
) -> Result<AlgebraElement> {
    if radius < 1 {
        return Err(Error::InvalidTruncation(radius));
    }
    let mut out = AlgebraElement::zero();
    for g in ball(radius) {
        out.add_term(g, l2_inner(&project_act(psi, g, a, s)?, phi)?);
    }
    Ok(out)
}

/// Bound `e^{−(πs/2)R²}` on the relative size of coefficients dropped at radius `R`.
pub fn tail_bound(s: f64, radius: i64) -> f64 {
    libm::exp(-0.5 * PI * s * (radius * radius) as f64)
}

/// `τ_s(⟨ψ|ψ⟩)`.
pub fn module_trace(
    psi: &GaussianSection,
    a: &PolynomialOneForm,
    c: &RealCocycle,
    s: TwistParameter,
    radius: i64,
) -> Result<f64> {
    Ok(crate::algebra::trace(&module_inner(psi, psi, a, s, radius)?, c, s)?.re)
}

/// Smallest eigenvalue of the block matrix `[rep(⟨ψᵢ|ψⱼ⟩)]ᵢⱼ`.
#[derive(Clone, Debug, PartialEq)]
pub struct GramReport {
    pub min_eigenvalue: f64,
    pub dim: usize,
    pub tail_bound: f64,
}

pub fn gram_positivity(
    sections: &[GaussianSection],
    a: &PolynomialOneForm,
    c: &RealCocycle,
    s: TwistParameter,
    radius: i64,
    rep_radius: i64,
) -> Result<GramReport> {
    let k = sections.len();
    let block = ((2 * rep_radius + 1) * (2 * rep_radius + 1)) as usize;
    let mut big = DMatrix::<C64>::zeros(k * block, k * block);
    for (i, psi) in sections.iter().enumerate() {
        for (j, phi) in sections.iter().enumerate() {
            let inner = module_inner(psi, phi, a, s, radius)?;
            let rep = regular_representation(&inner, c, s, rep_radius)?;
            for &(r, col, z) in rep.entries() {
                big[(i * block + r, j * block + col)] += z;
            }
        }
    }
    let min_eigenvalue = hermitian_eigenvalues(&big).first().copied().unwrap_or(0.0);
    Ok(GramReport { min_eigenvalue, dim: k * block, tail_bound: tail_bound(s.s, radius) })
}
