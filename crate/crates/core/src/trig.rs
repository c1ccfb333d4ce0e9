//! Trigonometric polynomials `f(x,y) = Σ c(j,k) e^{2πi(jx+ky)}` on the unit torus.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::C64;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrigPolynomial {
    coeffs: BTreeMap<(i64, i64), C64>,
}

impl TrigPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::from_terms([((0, 0), C64::new(c, 0.0))])
    }

    /// `e^{2πi(jx+ky)}`.
    pub fn exponential(j: i64, k: i64) -> Self {
        Self::from_terms([((j, k), C64::new(1.0, 0.0))])
    }

    pub fn cos_x() -> Self {
        Self::from_terms([((1, 0), C64::new(0.5, 0.0)), ((-1, 0), C64::new(0.5, 0.0))])
    }

    pub fn cos_y() -> Self {
        Self::from_terms([((0, 1), C64::new(0.5, 0.0)), ((0, -1), C64::new(0.5, 0.0))])
    }

    pub fn sin_x() -> Self {
        Self::from_terms([((1, 0), C64::new(0.0, -0.5)), ((-1, 0), C64::new(0.0, 0.5))])
    }

    pub fn sin_y() -> Self {
        Self::from_terms([((0, 1), C64::new(0.0, -0.5)), ((0, -1), C64::new(0.0, 0.5))])
    }

    /// Parses the short names used on the command line:
    /// `1`, `cos2pix`, `cos2piy`, `sin2pix`, `sin2piy`, `exp-2pix`, `exp-2piy`, `exp2pix`, `exp2piy`.
    pub fn named(name: &str) -> Option<Self> {
        Some(match name.trim() {
            "1" | "one" => Self::constant(1.0),
            "cos2pix" => Self::cos_x(),
            "cos2piy" => Self::cos_y(),
            "sin2pix" => Self::sin_x(),
            "sin2piy" => Self::sin_y(),
            "exp2pix" => Self::exponential(1, 0),
            "exp2piy" => Self::exponential(0, 1),
            "exp-2pix" => Self::exponential(-1, 0),
            "exp-2piy" => Self::exponential(0, -1),
            _ => return None,
        })
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), C64)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (jk, c) in terms {
            out.add_term(jk, c);
        }
        out
    }

    pub fn add_term(&mut self, jk: (i64, i64), c: C64) {
        let entry = self.coeffs.entry(jk).or_default();
        *entry += c;
        if *entry == C64::new(0.0, 0.0) {
            self.coeffs.remove(&jk);
        }
    }

    pub fn coefficient(&self, j: i64, k: i64) -> C64 {
        self.coeffs.get(&(j, k)).copied().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), C64)> + '_ {
        self.coeffs.iter().map(|(&jk, &c)| (jk, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// The `(0,0)` coefficient, i.e. the mean over the torus.
    pub fn mean(&self) -> C64 {
        self.coefficient(0, 0)
    }

    /// `coeff(−j,−k) = conj(coeff(j,k))` within `tol`.
    pub fn is_real(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|(&(j, k), c)| (self.coefficient(-j, -k) - c.conj()).norm() <= tol)
    }

    pub fn eval(&self, x: f64, y: f64) -> C64 {
        self.terms().map(|((j, k), c)| c * C64::from_polar(1.0, 2.0 * PI * (j as f64 * x + k as f64 * y))).sum()
    }

    /// Pointwise complex conjugate.
    pub fn conj(&self) -> Self {
        Self::from_terms(self.terms().map(|((j, k), c)| ((-j, -k), c.conj())))
    }

    pub fn scale(&self, z: C64) -> Self {
        Self::from_terms(self.terms().map(|(jk, c)| (jk, c * z)))
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (jk, c) in other.terms() {
            out.add_term(jk, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((j1, k1), a) in self.terms() {
            for ((j2, k2), b) in other.terms() {
                out.add_term((j1 + j2, k1 + k2), a * b);
            }
        }
        out
    }

    pub fn dx(&self) -> Self {
        Self::from_terms(self.terms().map(|((j, k), c)| ((j, k), c * C64::new(0.0, 2.0 * PI * j as f64))))
    }

    pub fn dy(&self) -> Self {
        Self::from_terms(self.terms().map(|((j, k), c)| ((j, k), c * C64::new(0.0, 2.0 * PI * k as f64))))
    }

    /// `∂ = ½(∂_x − i∂_y)`.
    pub fn d_holo(&self) -> Self {
        self.dx().sub(&self.dy().scale(C64::new(0.0, 1.0))).scale(C64::new(0.5, 0.0))
    }

    /// `∂̄ = ½(∂_x + i∂_y)`.
    pub fn d_antiholo(&self) -> Self {
        self.dx().add(&self.dy().scale(C64::new(0.0, 1.0))).scale(C64::new(0.5, 0.0))
    }

    /// Largest modulus over an `n×n` sample grid.
    pub fn sampled_sup(&self, n: usize) -> f64 {
        let h = 1.0 / n as f64;
        (0..n * n).map(|v| self.eval((v / n) as f64 * h, (v % n) as f64 * h).norm()).fold(0.0, f64::max)
    }

    /// Smallest real part over an `n×n` sample grid.
    pub fn sampled_min(&self, n: usize) -> f64 {
        let h = 1.0 / n as f64;
        (0..n * n).map(|v| self.eval((v / n) as f64 * h, (v % n) as f64 * h).re).fold(f64::INFINITY, f64::min)
    }

    /// Largest coefficient difference.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        self.sub(other).terms().map(|(_, c)| c.norm()).fold(0.0, f64::max)
    }

    /// Lattice frequencies in the support.
    pub fn support(&self) -> Vec<(i64, i64)> {
        self.coeffs.keys().copied().collect()
    }
}

/// `{f,g} = (1/2π)(∂_y f ∂_x g − ∂_x f ∂_y g)`.
pub fn poisson(f: &TrigPolynomial, g: &TrigPolynomial) -> TrigPolynomial {
    f.dy().mul(&g.dx()).sub(&f.dx().mul(&g.dy())).scale(C64::new(0.5 / PI, 0.0))
}

/// First-order pairing `G(f,g) = −(1/π) ∂f·∂̄g`, so that `G(f,g) − G(g,f) = i{f,g}`.
pub fn gradient_pairing(f: &TrigPolynomial, g: &TrigPolynomial) -> TrigPolynomial {
    f.d_holo().mul(&g.d_antiholo()).scale(C64::new(-1.0 / PI, 0.0))
}
