//! Dense real bivariate polynomials `Σ c[i][j] xⁱ yʲ`.

use alloc::vec;
use alloc::vec::Vec;

/// Coefficients indexed as `coeffs[i][j]` for `xⁱ yʲ`; rows may have any length.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Poly2 {
    coeffs: Vec<Vec<f64>>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: f64) -> Self {
        Self::from_coeffs(vec![vec![c]])
    }

    pub fn from_coeffs(coeffs: Vec<Vec<f64>>) -> Self {
        Self { coeffs }
    }

    /// Single monomial `c·xⁱ yʲ`.
    pub fn monomial(c: f64, i: usize, j: usize) -> Self {
        let mut p = Self::zero();
        p.add_to(i, j, c);
        p
    }

    pub fn coeffs(&self) -> &[Vec<f64>] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize, j: usize) -> f64 {
        self.coeffs.get(i).and_then(|r| r.get(j)).copied().unwrap_or(0.0)
    }

    pub fn add_to(&mut self, i: usize, j: usize, c: f64) {
        if self.coeffs.len() <= i {
            self.coeffs.resize(i + 1, Vec::new());
        }
        let row = &mut self.coeffs[i];
        if row.len() <= j {
            row.resize(j + 1, 0.0);
        }
        row[j] += c;
    }

    fn terms(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &c)| (i, j, c)))
            .filter(|t| t.2 != 0.0)
    }

    /// Total degree of the nonzero part (0 for the zero polynomial).
    pub fn degree(&self) -> usize {
        self.terms().map(|(i, j, _)| i + j).max().unwrap_or(0)
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, row| acc * x + row.iter().rev().fold(0.0, |a, &c| a * y + c))
    }

    pub fn scale(&self, k: f64) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            out.add_to(i, j, k * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_to(i, j, c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(-1.0))
    }

    pub fn dx(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms().filter(|t| t.0 > 0) {
            out.add_to(i - 1, j, c * i as f64);
        }
        out
    }

    pub fn dy(&self) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms().filter(|t| t.1 > 0) {
            out.add_to(i, j - 1, c * j as f64);
        }
        out
    }

    /// The composition `p(x + a, y + b)`.
    pub fn translate(&self, a: f64, b: f64) -> Self {
        let mut out = Self::zero();
        for (i, j, c) in self.terms() {
            for k in 0..=i {
                let cx = binomial(i, k) * libm::pow(a, (i - k) as f64);
                for l in 0..=j {
                    let cy = binomial(j, l) * libm::pow(b, (j - l) as f64);
                    out.add_to(k, l, c * cx * cy);
                }
            }
        }
        out
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.terms().map(|t| t.2.abs()).fold(0.0, f64::max)
    }

    /// Coefficient-wise comparison with an absolute tolerance.
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.sub(other).max_abs() <= tol
    }
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}
