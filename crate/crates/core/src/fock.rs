//! The vacuum on the covering plane: matrix elements of plane waves and the Heisenberg
//! generators `X = i∂_x + πs·y`, `Y = i∂_y − πs·x` with `[X,Y] = −2πis`.

use alloc::vec::Vec;
use core::f64::consts::PI;

use nalgebra::DMatrix;

use crate::quadrature::gauss_hermite_2d;
use crate::sections::GaussianSection;
use crate::{Error, Result, C64};

/// Default absolute tolerance of the adaptive quadrature.
pub const BARGMANN_TOL: f64 = 1e-12;

/// Closed form `s^{−1} e^{−π(j²+k²)/s}`.
pub fn bargmann_closed_form(j: i64, k: i64, s: f64) -> f64 {
    libm::exp(-PI * (j * j + k * k) as f64 / s) / s
}

/// `⟨ψ₀| e^{−2πi(jx+ky)} ψ₀⟩` for `ψ₀ = e^{−(πs/2)(x²+y²)}`, by adaptive tensor Gauss–Hermite
/// quadrature after the substitution `u = √(πs)·x`.
pub fn bargmann_matrix_element(j: i64, k: i64, s: f64) -> Result<C64> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter("s must be positive"));
    }
    let c = libm::sqrt(PI * s);
    let (wj, wk) = (2.0 * PI * j as f64 / c, 2.0 * PI * k as f64 / c);
    let q = gauss_hermite_2d(|u, v| C64::from_polar(1.0, -(wj * u + wk * v)), BARGMANN_TOL, 16, 512)?;
    Ok(q.value / (c * c))
}

/// Residuals of the truncated Fock-space realization of `X` and `Y`.
#[derive(Clone, Debug, PartialEq)]
pub struct HeisenbergReport {
    pub s: f64,
    pub truncation: usize,
    /// Largest entry of `[X,Y] + 2πis` on the leading `truncation − 1` block.
    pub commutator_residual: f64,
    /// `⟨0| e^{iY/s} e^{−iX/s} e^{−iY/s} e^{iX/s} |0⟩`.
    pub group_commutator: C64,
    /// Deviation of the group commutator from `e^{2πi/s}` on the low block.
    pub group_residual: f64,
    /// `max |(X − iY)ψ₀|` on a sample grid.
    pub zero_mode_residual: f64,
}

/// Number of low Fock states on which the group commutator is compared.
pub const LOW_BLOCK: usize = 4;

/// Builds `X = √(πs)(b + b†)` and `Y = i√(πs)(b − b†)` on `truncation` Fock states.
pub fn heisenberg_generators(s: f64, truncation: usize) -> (DMatrix<C64>, DMatrix<C64>) {
    let c = libm::sqrt(PI * s);
    let b = DMatrix::from_fn(truncation, truncation, |r, col| {
        if col == r + 1 {
            C64::new(libm::sqrt(col as f64), 0.0)
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let bd = b.adjoint();
    let x = (&b + &bd) * C64::new(c, 0.0);
    let y = (&b - &bd) * C64::new(0.0, c);
    (x, y)
}

/// `e^{iθH}` for Hermitian `H`.
fn unitary_exp(h: &DMatrix<C64>, theta: f64) -> DMatrix<C64> {
    let eig = h.clone().symmetric_eigen();
    let q = &eig.eigenvectors;
    let phases = DMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, theta * l)));
    q * phases * q.adjoint()
}

pub fn heisenberg_generator_check(s: f64, truncation: usize) -> Result<HeisenbergReport> {
    if !(s > 0.0) {
        return Err(Error::InvalidParameter("s must be positive"));
    }
    if truncation < 2 * LOW_BLOCK {
        return Err(Error::InvalidParameter("truncation is too small"));
    }
    let (x, y) = heisenberg_generators(s, truncation);
    let comm = &x * &y - &y * &x;
    let inner = truncation - 1;
    let target = C64::new(0.0, -2.0 * PI * s);
    let mut commutator_residual: f64 = 0.0;
    for r in 0..inner {
        for c in 0..inner {
            let want = if r == c { target } else { C64::new(0.0, 0.0) };
            commutator_residual = commutator_residual.max((comm[(r, c)] - want).norm());
        }
    }

    let g = unitary_exp(&y, 1.0 / s) * unitary_exp(&x, -1.0 / s) * unitary_exp(&y, -1.0 / s) * unitary_exp(&x, 1.0 / s);
    let phase = C64::from_polar(1.0, 2.0 * PI / s);
    let mut group_residual: f64 = 0.0;
    for r in 0..LOW_BLOCK {
        for c in 0..LOW_BLOCK {
            let want = if r == c { phase } else { C64::new(0.0, 0.0) };
            group_residual = group_residual.max((g[(r, c)] - want).norm());
        }
    }

    Ok(HeisenbergReport {
        s,
        truncation,
        commutator_residual,
        group_commutator: g[(0, 0)],
        group_residual,
        zero_mode_residual: zero_mode_residual(s, 4.0, 41),
    })
}

/// `max |(X − iY)ψ₀|` over an `n×n` grid on `[−L, L]²`, with analytic derivatives.
pub fn zero_mode_residual(s: f64, half_width: f64, n: usize) -> f64 {
    let vac = GaussianSection::vacuum(s);
    let step = 2.0 * half_width / (n - 1) as f64;
    let i = C64::new(0.0, 1.0);
    let pts: Vec<f64> = (0..n).map(|t| -half_width + t as f64 * step).collect();
    let mut worst: f64 = 0.0;
    for &px in &pts {
        for &py in &pts {
            let v = vac.eval(px, py);
            let (gx, gy) = vac.gradient(px, py);
            let xv = i * gx + v * (PI * s * py);
            let yv = i * gy - v * (PI * s * px);
            worst = worst.max((xv - i * yv).norm());
        }
    }
    worst
}
