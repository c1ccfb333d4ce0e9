//! The twisted group algebra `ℂ[ℤ², σ_s]` with `σ_s = e^{i s c}`.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::Mul;

use nalgebra::DMatrix;

use crate::linalg::SymTridiagonal;
use crate::{Error, Result, C64};

/// An element `γ = (n, m)` of `Γ = ℤ²`, written multiplicatively.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LatticeElement {
    pub n: i64,
    pub m: i64,
}

impl LatticeElement {
    pub const IDENTITY: Self = Self { n: 0, m: 0 };
    /// The generator `u = (1, 0)`.
    pub const U: Self = Self { n: 1, m: 0 };
    /// The generator `v = (0, 1)`.
    pub const V: Self = Self { n: 0, m: 1 };

    pub const fn new(n: i64, m: i64) -> Self {
        Self { n, m }
    }

    pub const fn inverse(self) -> Self {
        Self { n: -self.n, m: -self.m }
    }

    /// Sup-norm `max(|n|, |m|)`.
    pub fn sup_norm(self) -> i64 {
        self.n.abs().max(self.m.abs())
    }

    pub fn is_identity(self) -> bool {
        self == Self::IDENTITY
    }
}

impl Mul for LatticeElement {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self { n: self.n + rhs.n, m: self.m + rhs.m }
    }
}

impl fmt::Display for LatticeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.m)
    }
}

/// Iterates the sup-norm ball `|n|, |m| ≤ r` in lexicographic order.
pub fn ball(r: i64) -> impl Iterator<Item = LatticeElement> {
    (-r..=r).flat_map(move |n| (-r..=r).map(move |m| LatticeElement::new(n, m)))
}

/// Dense table of a real cocycle on a sup-norm ball.
#[derive(Clone, Debug, PartialEq)]
pub struct CocycleTable {
    radius: i64,
    values: Vec<f64>,
}

impl CocycleTable {
    /// Tabulates `f` on all pairs in the ball of radius `radius`.
    /// Rejects tables with `c(e,e) ≠ 0`, since then `σ_s(e,e) ≠ 1` for generic `s`.
    pub fn from_fn(radius: i64, mut f: impl FnMut(LatticeElement, LatticeElement) -> f64) -> Result<Self> {
        if radius < 0 {
            return Err(Error::InvalidTruncation(radius));
        }
        let side = (2 * radius + 1) as usize;
        let mut values = Vec::with_capacity(side.pow(4));
        for g1 in ball(radius) {
            for g2 in ball(radius) {
                values.push(f(g1, g2));
            }
        }
        let table = Self { radius, values };
        let cee = table.get(LatticeElement::IDENTITY, LatticeElement::IDENTITY).unwrap_or(0.0);
        if cee.abs() > 1e-12 {
            return Err(Error::UnnormalizedCocycle(cee));
        }
        Ok(table)
    }

    pub fn radius(&self) -> i64 {
        self.radius
    }

    fn index(&self, g: LatticeElement) -> Option<usize> {
        if g.sup_norm() > self.radius {
            return None;
        }
        let side = 2 * self.radius + 1;
        Some(((g.n + self.radius) * side + g.m + self.radius) as usize)
    }

    pub fn get(&self, g1: LatticeElement, g2: LatticeElement) -> Option<f64> {
        let side = (2 * self.radius + 1) as usize;
        let (i, j) = (self.index(g1)?, self.index(g2)?);
        Some(self.values[i * side * side + j])
    }
}

/// A real 2-cocycle `c : Γ × Γ → ℝ`.
#[derive(Clone, Debug, PartialEq)]
pub enum RealCocycle {
    /// `c((n,m),(n',m')) = kappa·(m n' − n m')`.
    ClosedForm { kappa: f64 },
    Tabulated(CocycleTable),
}

impl Default for RealCocycle {
    fn default() -> Self {
        Self::ClosedForm { kappa: core::f64::consts::PI }
    }
}

impl RealCocycle {
    pub fn closed_form(kappa: f64) -> Self {
        Self::ClosedForm { kappa }
    }

    pub fn value(&self, g1: LatticeElement, g2: LatticeElement) -> Result<f64> {
        match self {
            Self::ClosedForm { kappa } => Ok(kappa * (g1.m * g2.n - g1.n * g2.m) as f64),
            Self::Tabulated(t) => t.get(g1, g2).ok_or(Error::CocycleOutOfTable(g1, g2)),
        }
    }

    /// Additive cocycle defect `c(γ₂,γ₃) − c(γ₁γ₂,γ₃) + c(γ₁,γ₂γ₃) − c(γ₁,γ₂)`.
    /// The closed form is evaluated on the integer bilinear form before scaling by `kappa`.
    pub fn identity_defect(&self, g1: LatticeElement, g2: LatticeElement, g3: LatticeElement) -> Result<f64> {
        if let Self::ClosedForm { kappa } = self {
            let w = |a: LatticeElement, b: LatticeElement| a.m * b.n - a.n * b.m;
            return Ok(kappa * (w(g2, g3) - w(g1 * g2, g3) + w(g1, g2 * g3) - w(g1, g2)) as f64);
        }
        Ok(self.value(g2, g3)? - self.value(g1 * g2, g3)? + self.value(g1, g2 * g3)? - self.value(g1, g2)?)
    }
}

/// The quantization parameter `s` (so `ħ = 1/s`).
#[derive(Clone, Copy, Debug, PartialEq, PartialOrd)]
pub struct TwistParameter {
    pub s: f64,
}

impl TwistParameter {
    pub const fn new(s: f64) -> Self {
        Self { s }
    }
}

/// `σ_s(γ₁,γ₂) = e^{i s c(γ₁,γ₂)}`.
pub fn sigma(c: &RealCocycle, s: TwistParameter, g1: LatticeElement, g2: LatticeElement) -> Result<C64> {
    Ok(C64::from_polar(1.0, s.s * c.value(g1, g2)?))
}

/// A finitely supported element `Σ a_γ [γ]`. Exact zeros are never stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AlgebraElement {
    terms: BTreeMap<LatticeElement, C64>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit `[e]`.
    pub fn one() -> Self {
        Self::basis(LatticeElement::IDENTITY)
    }

    /// The basis element `[γ]`.
    pub fn basis(g: LatticeElement) -> Self {
        Self::from_terms([(g, C64::new(1.0, 0.0))])
    }

    /// Builds an element, summing repeated keys and dropping exact zeros.
    pub fn from_terms(terms: impl IntoIterator<Item = (LatticeElement, C64)>) -> Self {
        let mut out = Self::zero();
        for (g, a) in terms {
            out.add_term(g, a);
        }
        out
    }

    /// The Harper element `[u] + [u]* + [v] + [v]*` for the closed-form cocycle.
    pub fn harper() -> Self {
        let one = C64::new(1.0, 0.0);
        Self::from_terms([
            (LatticeElement::U, one),
            (LatticeElement::U.inverse(), one),
            (LatticeElement::V, one),
            (LatticeElement::V.inverse(), one),
        ])
    }

    pub fn add_term(&mut self, g: LatticeElement, a: C64) {
        let entry = self.terms.entry(g).or_insert(C64::new(0.0, 0.0));
        *entry += a;
        if *entry == C64::new(0.0, 0.0) {
            self.terms.remove(&g);
        }
    }

    pub fn coefficient(&self, g: LatticeElement) -> C64 {
        self.terms.get(&g).copied().unwrap_or_default()
    }

    /// Terms in lexicographic order of `(n, m)`.
    pub fn iter(&self) -> impl Iterator<Item = (LatticeElement, C64)> + '_ {
        self.terms.iter().map(|(g, a)| (*g, *a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest sup-norm over the support (0 for the zero element).
    pub fn support_radius(&self) -> i64 {
        self.terms.keys().map(|g| g.sup_norm()).max().unwrap_or(0)
    }

    /// `Σ |a_γ|`, an upper bound for every C*-norm.
    pub fn l1_norm(&self) -> f64 {
        self.terms.values().map(|a| a.norm()).sum()
    }

    pub fn scale(&self, z: C64) -> Self {
        Self::from_terms(self.iter().map(|(g, a)| (g, a * z)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_terms(self.iter().chain(other.iter()))
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_terms(self.iter().chain(other.iter().map(|(g, a)| (g, -a))))
    }

    /// Sup-norm of the coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).iter().map(|(_, a)| a.norm()).fold(0.0, f64::max)
    }
}

/// Twisted product, the bilinear extension of `[γ₁][γ₂] = σ_s(γ₁,γ₂)[γ₁γ₂]`.
pub fn multiply(a: &AlgebraElement, b: &AlgebraElement, c: &RealCocycle, s: TwistParameter) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (g1, x) in a.iter() {
        for (g2, y) in b.iter() {
            out.add_term(g1 * g2, x * y * sigma(c, s, g1, g2)?);
        }
    }
    Ok(out)
}

/// Antilinear involution with `[γ]* = σ_s(γ,γ⁻¹)⁻¹ [γ⁻¹]`.
pub fn involution(a: &AlgebraElement, c: &RealCocycle, s: TwistParameter) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::zero();
    for (g, x) in a.iter() {
        out.add_term(g.inverse(), x.conj() * sigma(c, s, g, g.inverse())?.conj());
    }
    Ok(out)
}

/// The canonical trace `τ(a) = σ_s(e,e)·a_e`.
pub fn trace(a: &AlgebraElement, c: &RealCocycle, s: TwistParameter) -> Result<C64> {
    let e = LatticeElement::IDENTITY;
    Ok(sigma(c, s, e, e)? * a.coefficient(e))
}

/// Compression of left multiplication to `ℓ²` of the sup-norm ball, stored sparsely.
#[derive(Clone, Debug)]
pub struct RegularRepresentation {
    radius: i64,
    entries: Vec<(usize, usize, C64)>,
    /// Set when the support of the element is wider than the ball.
    pub support_exceeds_radius: bool,
}

impl RegularRepresentation {
    pub fn radius(&self) -> i64 {
        self.radius
    }

    pub fn dim(&self) -> usize {
        ((2 * self.radius + 1) * (2 * self.radius + 1)) as usize
    }

    /// Position of `γ` in the basis ordering (lexicographic), if inside the ball.
    pub fn index_of(&self, g: LatticeElement) -> Option<usize> {
        ball_index(self.radius, g)
    }

    pub fn entries(&self) -> &[(usize, usize, C64)] {
        &self.entries
    }

    pub fn to_dense(&self) -> DMatrix<C64> {
        let d = self.dim();
        let mut m = DMatrix::zeros(d, d);
        for &(i, j, z) in &self.entries {
            m[(i, j)] += z;
        }
        m
    }

    pub fn apply(&self, x: &[C64], y: &mut [C64]) {
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        for &(i, j, z) in &self.entries {
            y[i] += z * x[j];
        }
    }

    pub fn apply_adjoint(&self, x: &[C64], y: &mut [C64]) {
        y.iter_mut().for_each(|v| *v = C64::new(0.0, 0.0));
        for &(i, j, z) in &self.entries {
            y[j] += z.conj() * x[i];
        }
    }
}

fn ball_index(radius: i64, g: LatticeElement) -> Option<usize> {
    if g.sup_norm() > radius {
        return None;
    }
    let side = 2 * radius + 1;
    Some(((g.n + radius) * side + g.m + radius) as usize)
}

/// Matrix of left multiplication by `a` on `{δ_γ : |n|,|m| ≤ R}` with `[γ']δ_γ = σ_s(γ',γ)δ_{γ'γ}`.
pub fn regular_representation(
    a: &AlgebraElement,
    c: &RealCocycle,
    s: TwistParameter,
    radius: i64,
) -> Result<RegularRepresentation> {
    if radius <= 0 {
        return Err(Error::InvalidTruncation(radius));
    }
    let mut entries = Vec::new();
    for g in ball(radius) {
        let col = ball_index(radius, g).expect("in ball");
        for (gp, x) in a.iter() {
            if let Some(row) = ball_index(radius, gp * g) {
                entries.push((row, col, x * sigma(c, s, gp, g)?));
            }
        }
    }
    Ok(RegularRepresentation { radius, entries, support_exceeds_radius: a.support_radius() > radius })
}

/// Dimension up to which norms are computed by dense Hermitian eigenvalues.
const DENSE_NORM_LIMIT: usize = 289;

/// Largest singular value of the truncated regular representation.
pub fn norm_estimate(a: &AlgebraElement, c: &RealCocycle, s: TwistParameter, radius: i64) -> Result<f64> {
    let rep = regular_representation(a, c, s, radius)?;
    if a.is_empty() {
        return Ok(0.0);
    }
    if rep.dim() <= DENSE_NORM_LIMIT {
        let m = rep.to_dense();
        let gram = m.adjoint() * &m;
        let top = gram.symmetric_eigenvalues().iter().copied().fold(0.0, f64::max);
        return Ok(libm::sqrt(top));
    }
    Ok(lanczos_norm(&rep))
}

/// Largest eigenvalue of `A*A` by Lanczos with full reorthogonalization; Ritz values
/// increase monotonically towards it.
fn lanczos_norm(rep: &RegularRepresentation) -> f64 {
    let d = rep.dim();
    let mut q: Vec<C64> = (0..d)
        .map(|k| {
            let t = k as f64;
            C64::new(1.0 + 0.5 * libm::sin(1.3 * t + 0.7), 0.25 * libm::cos(0.9 * t))
        })
        .collect();
    normalize(&mut q);
    let mut basis: Vec<Vec<C64>> = Vec::new();
    let (mut alpha, mut beta) = (Vec::new(), Vec::new());
    let mut y = vec![C64::new(0.0, 0.0); d];
    let mut w = vec![C64::new(0.0, 0.0); d];
    let mut last = 0.0;
    let mut stable = 0;
    for _ in 0..d.min(LANCZOS_MAX_STEPS) {
        rep.apply(&q, &mut y);
        rep.apply_adjoint(&y, &mut w);
        alpha.push(dot(&q, &w).re);
        basis.push(q.clone());
        for _ in 0..2 {
            for b in &basis {
                let h = dot(b, &w);
                w.iter_mut().zip(b).for_each(|(x, v)| *x -= h * v);
            }
        }
        let t = SymTridiagonal::new(alpha.clone(), beta.clone());
        let top = t.eigenvalue(t.len() - 1);
        stable = if (top - last).abs() <= 1e-14 * top { stable + 1 } else { 0 };
        last = top;
        let b = normalize(&mut w);
        if stable >= 3 || b <= 1e-13 * libm::sqrt(top.abs()).max(f64::MIN_POSITIVE) {
            break;
        }
        beta.push(b);
        core::mem::swap(&mut q, &mut w);
    }
    libm::sqrt(last.max(0.0))
}

const LANCZOS_MAX_STEPS: usize = 400;

fn dot(a: &[C64], b: &[C64]) -> C64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn normalize(x: &mut [C64]) -> f64 {
    let n = libm::sqrt(x.iter().map(|v| v.norm_sqr()).sum::<f64>());
    if n > 0.0 {
        x.iter_mut().for_each(|v| *v /= n);
    }
    n
}

/// A norm profile over a grid of twist parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct NormProfile {
    pub rows: Vec<(f64, f64)>,
    /// Largest difference between norms at adjacent grid points.
    pub max_jump: f64,
    /// Whether `max_jump` stays within the declared continuity threshold.
    pub continuous: bool,
}

/// Norm estimates of a fixed coefficient pattern across `s_grid`.
pub fn norm_profile(
    a: &AlgebraElement,
    s_grid: &[f64],
    c: &RealCocycle,
    radius: i64,
    continuity_threshold: f64,
) -> Result<NormProfile> {
    let mut rows = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        rows.push((s, norm_estimate(a, c, TwistParameter::new(s), radius)?));
    }
    let max_jump = rows.windows(2).map(|w| (w[1].1 - w[0].1).abs()).fold(0.0, f64::max);
    Ok(NormProfile { rows, max_jump, continuous: max_jump <= continuity_threshold })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn c0() -> RealCocycle {
        RealCocycle::default()
    }

    #[test]
    fn uv_product_phase() {
        let s = TwistParameter::new(0.3);
        let uv = multiply(&AlgebraElement::basis(LatticeElement::U), &AlgebraElement::basis(LatticeElement::V), &c0(), s)
            .unwrap();
        let want = C64::from_polar(1.0, -PI * 0.3);
        assert!((uv.coefficient(LatticeElement::new(1, 1)) - want).norm() < 1e-15);
        assert_eq!(uv.len(), 1);
    }

    #[test]
    fn unit_is_neutral() {
        let s = TwistParameter::new(0.7);
        let a = AlgebraElement::from_terms([
            (LatticeElement::new(2, -1), C64::new(0.5, 1.0)),
            (LatticeElement::new(0, 3), C64::new(-1.0, 0.25)),
        ]);
        assert_eq!(multiply(&AlgebraElement::one(), &a, &c0(), s).unwrap(), a);
        assert_eq!(multiply(&a, &AlgebraElement::one(), &c0(), s).unwrap(), a);
    }

    #[test]
    fn involution_of_generators() {
        let s = TwistParameter::new(0.41);
        let ustar = involution(&AlgebraElement::basis(LatticeElement::U), &c0(), s).unwrap();
        assert_eq!(ustar, AlgebraElement::basis(LatticeElement::new(-1, 0)));
        let uv = multiply(&AlgebraElement::basis(LatticeElement::U), &AlgebraElement::basis(LatticeElement::V), &c0(), s)
            .unwrap();
        let got = involution(&uv, &c0(), s).unwrap();
        let want = C64::from_polar(1.0, PI * 0.41);
        assert!((got.coefficient(LatticeElement::new(-1, -1)) - want).norm() < 1e-15);
    }

    #[test]
    fn trace_values() {
        let s = TwistParameter::new(0.9);
        assert_eq!(trace(&AlgebraElement::one(), &c0(), s).unwrap(), C64::new(1.0, 0.0));
        let uv = multiply(&AlgebraElement::basis(LatticeElement::U), &AlgebraElement::basis(LatticeElement::V), &c0(), s)
            .unwrap();
        assert_eq!(trace(&uv, &c0(), s).unwrap(), C64::new(0.0, 0.0));
    }

    #[test]
    fn rep_of_unit_is_identity() {
        let rep = regular_representation(&AlgebraElement::one(), &c0(), TwistParameter::new(0.2), 2).unwrap();
        let m = rep.to_dense();
        assert_eq!(m, DMatrix::identity(25, 25));
    }

    #[test]
    fn rep_of_u_on_small_ball() {
        let s = TwistParameter::new(0.5);
        let rep = regular_representation(&AlgebraElement::basis(LatticeElement::U), &c0(), s, 1).unwrap();
        let m = rep.to_dense();
        for g in ball(1) {
            let col = rep.index_of(g).unwrap();
            let target = LatticeElement::U * g;
            for row in 0..9 {
                let want = match rep.index_of(target) {
                    Some(r) if r == row => C64::from_polar(1.0, 0.5 * PI * (-(g.m) as f64)),
                    _ => C64::new(0.0, 0.0),
                };
                assert!((m[(row, col)] - want).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn invalid_radius() {
        let r = regular_representation(&AlgebraElement::one(), &c0(), TwistParameter::new(0.2), 0);
        assert_eq!(r.unwrap_err(), Error::InvalidTruncation(0));
    }

    #[test]
    fn basis_norm_is_one() {
        for r in [1, 3, 20] {
            let n = norm_estimate(&AlgebraElement::basis(LatticeElement::new(1, -1)), &c0(), TwistParameter::new(0.3), r)
                .unwrap();
            assert!((n - 1.0).abs() < 1e-10, "{n}");
        }
    }

    #[test]
    fn tabulated_rejects_unnormalized() {
        let t = CocycleTable::from_fn(1, |_, _| 0.5);
        assert_eq!(t.unwrap_err(), Error::UnnormalizedCocycle(0.5));
    }

    #[test]
    fn tabulated_out_of_range() {
        let t = RealCocycle::Tabulated(CocycleTable::from_fn(1, |_, _| 0.0).unwrap());
        assert!(t.value(LatticeElement::new(2, 0), LatticeElement::IDENTITY).is_err());
    }
}
