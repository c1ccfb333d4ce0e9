//! Gauss–Hermite rules for integrals against `e^{−u²}`.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::{Error, Result, C64};

/// Nodes and weights of the `n`-point rule `∫ e^{−u²} f(u) du ≈ Σ wᵢ f(uᵢ)`, by Golub–Welsch.
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let jacobi = DMatrix::from_fn(n, n, |i, j| {
        if i + 1 == j || j + 1 == i {
            libm::sqrt(i.max(j) as f64 / 2.0)
        } else {
            0.0
        }
    });
    let eig = jacobi.symmetric_eigen();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let v0 = eig.eigenvectors[(0, k)];
            (eig.eigenvalues[k], libm::sqrt(core::f64::consts::PI) * v0 * v0)
        })
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// Result of an adaptive tensor rule.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Quadrature {
    pub value: C64,
    pub nodes_per_axis: usize,
    pub change: f64,
}

/// `∬ e^{−u²−v²} f(u,v) du dv` by tensor Gauss–Hermite rules, doubling the order from `n0`
/// until successive values differ by at most `tol`.
pub fn gauss_hermite_2d<F: Fn(f64, f64) -> C64>(f: F, tol: f64, n0: usize, n_max: usize) -> Result<Quadrature> {
    if !(tol > 0.0) || n0 == 0 {
        return Err(Error::InvalidParameter("quadrature needs tol > 0 and a positive starting order"));
    }
    let rule = |n: usize| {
        let (x, w) = gauss_hermite(n);
        let mut acc = C64::new(0.0, 0.0);
        for (xa, wa) in x.iter().zip(&w) {
            for (xb, wb) in x.iter().zip(&w) {
                acc += f(*xa, *xb) * (wa * wb);
            }
        }
        acc
    };
    let mut n = n0;
    let mut prev = rule(n);
    while 2 * n <= n_max {
        n *= 2;
        let next = rule(n);
        let change = (next - prev).norm();
        if change <= tol {
            return Ok(Quadrature { value: next, nodes_per_axis: n, change });
        }
        prev = next;
    }
    Err(Error::InvalidParameter("quadrature did not converge within the order cap"))
}
