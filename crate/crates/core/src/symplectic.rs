//! Group cocycles `c = φ_{γ₂} + γ₂*φ_{γ₁} − φ_{γ₁γ₂}` from a polynomial potential `A`.

use alloc::collections::BTreeMap;
use alloc::vec;

use core::f64::consts::PI;

use crate::algebra::{ball, CocycleTable, LatticeElement, RealCocycle};
use crate::poly::Poly2;
use crate::{Error, Result};

/// Maximum total degree accepted for `P` and `Q`.
pub const MAX_DEGREE: usize = 4;

/// Tolerance for coefficient-wise polynomial identities.
const POLY_TOL: f64 = 1e-12;

/// Tolerance on the spread of the cocycle combination across sample points.
pub const CONSTANCY_TOL: f64 = 1e-10;

/// Default sample points for constancy checks.
pub const DEFAULT_SAMPLES: [(f64, f64); 5] = [(0.0, 0.0), (0.3, -0.7), (1.1, 0.4), (-0.9, -1.3), (2.5, 1.7)];

/// `A = P dx + Q dy`.
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialOneForm {
    pub p: Poly2,
    pub q: Poly2,
}

impl PolynomialOneForm {
    pub fn new(p: Poly2, q: Poly2) -> Result<Self> {
        for d in [p.degree(), q.degree()] {
            if d > MAX_DEGREE {
                return Err(Error::DegreeTooHigh(d));
            }
        }
        Ok(Self { p, q })
    }

    pub fn zero() -> Self {
        Self { p: Poly2::zero(), q: Poly2::zero() }
    }

    /// Symmetric gauge `A = (ω₀/2)(x dy − y dx)`.
    pub fn symmetric(omega0: f64) -> Self {
        Self { p: Poly2::monomial(-omega0 / 2.0, 0, 1), q: Poly2::monomial(omega0 / 2.0, 1, 0) }
    }

    /// Landau gauge `A = ω₀ x dy`.
    pub fn landau(omega0: f64) -> Self {
        Self { p: Poly2::zero(), q: Poly2::monomial(omega0, 1, 0) }
    }

    /// The torus potential `π(x dy − y dx)`, with `ω = 2π dx∧dy`.
    pub fn torus_symmetric() -> Self {
        Self::symmetric(2.0 * PI)
    }

    fn sub(&self, other: &Self) -> Self {
        Self { p: self.p.sub(&other.p), q: self.q.sub(&other.q) }
    }
}

/// `ω = omega0·dx∧dy`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymplecticScalar {
    pub omega0: f64,
}

/// `dA = (∂Q/∂x − ∂P/∂y) dx∧dy`, returned as the coefficient polynomial.
pub fn exterior_derivative(a: &PolynomialOneForm) -> Poly2 {
    a.q.dx().sub(&a.p.dy())
}

/// The constant value of `dA`, or `None` when `dA` is not constant or vanishes.
pub fn symplectic_scalar(a: &PolynomialOneForm) -> Option<SymplecticScalar> {
    let d = exterior_derivative(a);
    let c = d.coeff(0, 0);
    if d.sub(&Poly2::constant(c)).max_abs() > POLY_TOL || c == 0.0 {
        return None;
    }
    Some(SymplecticScalar { omega0: c })
}

/// Pullback by the deck translation `(x, y) ↦ (x + n, y + m)`.
pub fn pullback(a: &PolynomialOneForm, g: LatticeElement) -> PolynomialOneForm {
    let (dx, dy) = (g.n as f64, g.m as f64);
    PolynomialOneForm { p: a.p.translate(dx, dy), q: a.q.translate(dx, dy) }
}

/// `φ_γ` with `dφ_γ = A − γ*A` and `φ_γ(0,0) = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct PhiFunction {
    pub gamma: LatticeElement,
    pub poly: Poly2,
}

impl PhiFunction {
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.poly.eval(x, y)
    }

    /// `(a0, ax, ay)` with `φ = a0 + ax·x + ay·y`, if `φ` is affine.
    pub fn affine_parts(&self) -> Option<(f64, f64, f64)> {
        let (a0, ax, ay) = (self.poly.coeff(0, 0), self.poly.coeff(1, 0), self.poly.coeff(0, 1));
        let affine = Poly2::from_coeffs(vec![vec![a0, ay], vec![ax]]);
        (self.poly.sub(&affine).max_abs() <= POLY_TOL).then_some((a0, ax, ay))
    }
}

/// Integrates `A − γ*A` along the segment from the origin, term by term.
pub fn solve_phi(a: &PolynomialOneForm, g: LatticeElement) -> Result<PhiFunction> {
    let diff = a.sub(&pullback(a, g));
    let curl = exterior_derivative(&diff);
    let scale = 1.0 + diff.p.max_abs().max(diff.q.max_abs());
    if curl.max_abs() > POLY_TOL * scale {
        return Err(Error::ExactnessViolation(g));
    }
    let mut phi = Poly2::zero();
    for (i, row) in diff.p.coeffs().iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            phi.add_to(i + 1, j, c / (i + j + 1) as f64);
        }
    }
    for (i, row) in diff.q.coeffs().iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            phi.add_to(i, j + 1, c / (i + j + 1) as f64);
        }
    }
    if !phi.dx().approx_eq(&diff.p, POLY_TOL * scale) || !phi.dy().approx_eq(&diff.q, POLY_TOL * scale) {
        return Err(Error::ExactnessViolation(g));
    }
    Ok(PhiFunction { gamma: g, poly: phi })
}

fn combination(phi1: &PhiFunction, phi2: &PhiFunction, phi12: &PhiFunction, samples: &[(f64, f64)]) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidParameter("derive_cocycle needs at least one sample point"));
    }
    let g2 = phi2.gamma;
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for &(x, y) in samples {
        let v = phi2.eval(x, y) + phi1.eval(x + g2.n as f64, y + g2.m as f64) - phi12.eval(x, y);
        lo = lo.min(v);
        hi = hi.max(v);
    }
    if hi - lo > CONSTANCY_TOL {
        return Err(Error::CocycleInconsistency(hi - lo));
    }
    Ok(0.5 * (hi + lo))
}

/// Evaluates `φ_{γ₂} + γ₂*φ_{γ₁} − φ_{γ₁γ₂}` at every sample and returns the common value.
pub fn derive_cocycle(
    a: &PolynomialOneForm,
    g1: LatticeElement,
    g2: LatticeElement,
    samples: &[(f64, f64)],
) -> Result<f64> {
    combination(&solve_phi(a, g1)?, &solve_phi(a, g2)?, &solve_phi(a, g1 * g2)?, samples)
}

/// `derive_cocycle` with memoized `φ_γ`, for evaluating many pairs.
#[derive(Clone, Debug)]
pub struct CocycleDeriver<'a> {
    a: &'a PolynomialOneForm,
    phis: BTreeMap<LatticeElement, PhiFunction>,
}

impl<'a> CocycleDeriver<'a> {
    pub fn new(a: &'a PolynomialOneForm) -> Self {
        Self { a, phis: BTreeMap::new() }
    }

    pub fn phi(&mut self, g: LatticeElement) -> Result<&PhiFunction> {
        if !self.phis.contains_key(&g) {
            let phi = solve_phi(self.a, g)?;
            self.phis.insert(g, phi);
        }
        Ok(&self.phis[&g])
    }

    pub fn derive(&mut self, g1: LatticeElement, g2: LatticeElement, samples: &[(f64, f64)]) -> Result<f64> {
        let p1 = self.phi(g1)?.clone();
        let p2 = self.phi(g2)?.clone();
        let p12 = self.phi(g1 * g2)?;
        combination(&p1, &p2, p12, samples)
    }
}

/// Tabulates the derived cocycle on the sup-norm ball and checks the cocycle identity
/// on every triple whose partial products stay inside the ball.
pub fn cocycle_table(a: &PolynomialOneForm, radius: i64) -> Result<RealCocycle> {
    let mut deriver = CocycleDeriver::new(a);
    let mut failure = None;
    let table = CocycleTable::from_fn(radius, |g1, g2| match deriver.derive(g1, g2, &DEFAULT_SAMPLES) {
        Ok(v) => v,
        Err(e) => {
            failure.get_or_insert(e);
            0.0
        }
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    let c = RealCocycle::Tabulated(table);
    let worst = max_identity_defect(&c, radius)?;
    if worst > CONSTANCY_TOL {
        return Err(Error::CocycleIdentity(worst));
    }
    Ok(c)
}

/// Largest additive cocycle defect over all in-ball triples.
pub fn max_identity_defect(c: &RealCocycle, radius: i64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for g1 in ball(radius) {
        for g2 in ball(radius) {
            if (g1 * g2).sup_norm() > radius {
                continue;
            }
            for g3 in ball(radius) {
                if (g2 * g3).sup_norm() > radius {
                    continue;
                }
                worst = worst.max(c.identity_defect(g1, g2, g3)?.abs());
            }
        }
    }
    Ok(worst)
}

/// `c(γ₁,γ₂) − c(γ₂,γ₁)`, the gauge-independent part of the cocycle.
pub fn antisymmetrized(c: &RealCocycle, g1: LatticeElement, g2: LatticeElement) -> Result<f64> {
    Ok(c.value(g1, g2)? - c.value(g2, g1)?)
}
