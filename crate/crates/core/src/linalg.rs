//! Small dense and tridiagonal linear-algebra helpers.

use alloc::vec;
use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::{Error, Result, C64};

/// Largest singular value (0 for empty matrices).
pub fn spectral_norm(m: &DMatrix<C64>) -> f64 {
    if m.is_empty() {
        return 0.0;
    }
    m.clone().svd(false, false).singular_values.iter().copied().fold(0.0, f64::max)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn hermitian_eigenvalues(m: &DMatrix<C64>) -> Vec<f64> {
    let mut ev: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Unitary factor `W` of the polar decomposition `A = W|A|`.
pub fn polar_unitary(a: &DMatrix<C64>) -> Result<DMatrix<C64>> {
    let svd = a.clone().svd(true, true);
    let smax = svd.singular_values.iter().copied().fold(0.0, f64::max);
    let smin = svd.singular_values.iter().copied().fold(f64::INFINITY, f64::min);
    if !(smin > 1e-12 * smax) {
        return Err(Error::DegenerateToeplitz);
    }
    let u = svd.u.ok_or(Error::DegenerateToeplitz)?;
    let vt = svd.v_t.ok_or(Error::DegenerateToeplitz)?;
    Ok(u * vt)
}

/// Least-squares slope of `ln y` against `ln x`.
pub fn loglog_slope(points: &[(f64, f64)]) -> Option<f64> {
    if points.len() < 2 {
        return None;
    }
    let n = points.len() as f64;
    let (lx, ly): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (libm::log(x), libm::log(y))).unzip();
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    (sxx > 0.0).then(|| sxy / sxx)
}

/// Real symmetric tridiagonal matrix with diagonal `diag` and off-diagonal `off`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymTridiagonal {
    pub diag: Vec<f64>,
    pub off: Vec<f64>,
}

impl SymTridiagonal {
    pub fn new(diag: Vec<f64>, off: Vec<f64>) -> Self {
        assert!(off.len() + 1 == diag.len() || diag.is_empty() && off.is_empty());
        Self { diag, off }
    }

    pub fn len(&self) -> usize {
        self.diag.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diag.is_empty()
    }

    /// Gershgorin interval containing the spectrum.
    pub fn bounds(&self) -> (f64, f64) {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..self.len() {
            let r = self.off.get(i).map_or(0.0, |v| v.abs()) + if i > 0 { self.off[i - 1].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        (lo, hi)
    }

    /// Number of eigenvalues strictly below `x` (Sturm sequence).
    pub fn count_below(&self, x: f64) -> usize {
        let (lo, hi) = self.bounds();
        let tiny = f64::MIN_POSITIVE.max(1e-300 * (hi - lo).abs());
        let mut count = 0;
        let mut q = 1.0;
        for i in 0..self.len() {
            let e2 = if i > 0 { self.off[i - 1] * self.off[i - 1] } else { 0.0 };
            q = self.diag[i] - x - if i > 0 { e2 / q } else { 0.0 };
            if q == 0.0 {
                q = -tiny;
            }
            if q < 0.0 {
                count += 1;
            }
        }
        count
    }

    /// The `k`-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        assert!(k < self.len());
        let (mut lo, mut hi) = self.bounds();
        let scale = lo.abs().max(hi.abs()).max(f64::MIN_POSITIVE);
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if hi - lo <= 2.0 * f64::EPSILON * scale || mid == lo || mid == hi {
                break;
            }
            if self.count_below(mid) > k {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        0.5 * (lo + hi)
    }

    /// All eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        (0..self.len()).map(|k| self.eigenvalue(k)).collect()
    }

    /// Normalized eigenvector for an (accurate) eigenvalue, by inverse iteration.
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.len();
        let mut x: Vec<f64> = (0..n).map(|i| 1.0 + 0.1 * libm::sin(i as f64 + 0.3)).collect();
        let factors = ShiftedLu::new(self, lambda);
        for _ in 0..4 {
            x = factors.solve(x);
            let norm = libm::sqrt(x.iter().map(|v| v * v).sum::<f64>());
            x.iter_mut().for_each(|v| *v /= norm);
        }
        x
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let n = self.len();
        DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                self.diag[i]
            } else if i + 1 == j {
                self.off[i]
            } else if j + 1 == i {
                self.off[j]
            } else {
                0.0
            }
        })
    }
}

/// LU factors of `T − μI` with partial pivoting.
struct ShiftedLu {
    d: Vec<f64>,
    dl: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

impl ShiftedLu {
    fn new(t: &SymTridiagonal, mu: f64) -> Self {
        let n = t.len();
        let (lo, hi) = t.bounds();
        let tiny = f64::EPSILON * lo.abs().max(hi.abs()).max(1.0);
        let mut d: Vec<f64> = t.diag.iter().map(|v| v - mu).collect();
        let mut dl = t.off.clone();
        let mut du = t.off.clone();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n.saturating_sub(1) {
            if d[i].abs() >= dl[i].abs() {
                if d[i] == 0.0 {
                    d[i] = tiny;
                }
                let f = dl[i] / d[i];
                dl[i] = f;
                d[i + 1] -= f * du[i];
            } else {
                let f = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = f;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - f * d[i + 1];
                if i + 2 < n {
                    du2[i] = du[i + 1];
                    du[i + 1] *= -f;
                }
                swapped[i] = true;
            }
        }
        if n > 0 && d[n - 1] == 0.0 {
            d[n - 1] = tiny;
        }
        Self { d, dl, du, du2, swapped }
    }

    fn solve(&self, mut b: Vec<f64>) -> Vec<f64> {
        let n = b.len();
        for i in 0..n.saturating_sub(1) {
            if self.swapped[i] {
                let tmp = b[i];
                b[i] = b[i + 1];
                b[i + 1] = tmp - self.dl[i] * b[i];
            } else {
                b[i + 1] -= self.dl[i] * b[i];
            }
        }
        for i in (0..n).rev() {
            let mut v = b[i];
            if i + 1 < n {
                v -= self.du[i] * b[i + 1];
            }
            if i + 2 < n {
                v -= self.du2[i] * b[i + 2];
            }
            b[i] = v / self.d[i];
        }
        b
    }
}
