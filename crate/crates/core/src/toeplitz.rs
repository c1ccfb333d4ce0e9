//! Toeplitz matrices `T_N(f) = Π f Π` on the lattice holomorphic sections and their
//! semiclassical defects.

use alloc::vec::Vec;

use nalgebra::DMatrix;

use crate::dolbeault::{build_dolbeault, kernel_basis, Gauge, DEFAULT_KERNEL_TOL};
use crate::linalg::{loglog_slope, polar_unitary, spectral_norm};
use crate::trig::{gradient_pairing, poisson, TrigPolynomial};
use crate::{Error, Result, C64};

/// Defects at or below this level are treated as round-off.
pub const DEFECT_FLOOR: f64 = 1e-12;

/// Smallest multiple of `N` that is at least `max(16, 4N)`.
pub fn default_grid(n: usize) -> usize {
    let floor = (4 * n).max(16);
    if n == 0 {
        floor
    } else {
        floor.div_ceil(n) * n
    }
}

/// Orthonormal holomorphic basis at flux `N` on an `M×M` grid.
#[derive(Clone, Debug)]
pub struct ToeplitzContext {
    n: usize,
    m: usize,
    basis: DMatrix<C64>,
}

impl ToeplitzContext {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        Self::with_gauge(n, m, Gauge::Landau)
    }

    /// Context on [`default_grid`].
    pub fn for_flux(n: usize) -> Result<Self> {
        Self::new(n, default_grid(n))
    }

    pub fn with_gauge(n: usize, m: usize, gauge: Gauge) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter("Toeplitz matrices need N ≥ 1"));
        }
        let pair = build_dolbeault(n, m, gauge)?;
        let kb = kernel_basis(&pair, DEFAULT_KERNEL_TOL)?;
        if kb.dim() != n {
            return Err(Error::IndexViolation { kernel: kb.dim(), formula: n as f64 });
        }
        Ok(Self { n, m, basis: kb.vectors })
    }

    /// Uses a precomputed `M² × N` basis with orthonormal columns.
    pub fn from_basis(m: usize, basis: DMatrix<C64>) -> Result<Self> {
        if basis.nrows() != m * m || basis.ncols() == 0 {
            return Err(Error::InvalidParameter("basis must have M² rows and at least one column"));
        }
        Ok(Self { n: basis.ncols(), m, basis })
    }

    pub fn flux(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &DMatrix<C64> {
        &self.basis
    }

    /// `⟨θᵢ| f θⱼ⟩` by grid quadrature.
    pub fn toeplitz(&self, f: &TrigPolynomial) -> ToeplitzMatrix {
        let m = self.m;
        let h = 1.0 / m as f64;
        let samples: Vec<C64> = (0..m * m).map(|v| f.eval((v / m) as f64 * h, (v % m) as f64 * h)).collect();
        let mut weighted = self.basis.clone();
        for (r, mut row) in weighted.row_iter_mut().enumerate() {
            row *= samples[r];
        }
        ToeplitzMatrix { entries: self.basis.adjoint() * weighted }
    }

    /// `‖T(f)T(g) − T(fg)‖`.
    pub fn product_defect(&self, f: &TrigPolynomial, g: &TrigPolynomial) -> f64 {
        spectral_norm(&self.product_residual(f, g))
    }

    pub fn product_residual(&self, f: &TrigPolynomial, g: &TrigPolynomial) -> DMatrix<C64> {
        self.toeplitz(f).entries * self.toeplitz(g).entries - self.toeplitz(&f.mul(g)).entries
    }

    /// `[T(f),T(g)] − iN⁻¹T({f,g})`.
    pub fn commutator_residual(&self, f: &TrigPolynomial, g: &TrigPolynomial) -> DMatrix<C64> {
        let (tf, tg) = (self.toeplitz(f).entries, self.toeplitz(g).entries);
        let bracket = self.toeplitz(&poisson(f, g)).entries * C64::new(0.0, 1.0 / self.n as f64);
        &tf * &tg - &tg * &tf - bracket
    }

    pub fn commutator_defect(&self, f: &TrigPolynomial, g: &TrigPolynomial) -> f64 {
        spectral_norm(&self.commutator_residual(f, g))
    }

    /// `T(f)T(g) − T(fg + N⁻¹G(f,g))`.
    pub fn first_order_residual(&self, f: &TrigPolynomial, g: &TrigPolynomial) -> DMatrix<C64> {
        let corrected = f.mul(g).add(&gradient_pairing(f, g).scale(C64::new(1.0 / self.n as f64, 0.0)));
        self.toeplitz(f).entries * self.toeplitz(g).entries - self.toeplitz(&corrected).entries
    }

    pub fn first_order_defect(&self, f: &TrigPolynomial, g: &TrigPolynomial) -> f64 {
        spectral_norm(&self.first_order_residual(f, g))
    }

    /// `|tr T(f)/N − mean f|` for real `f`.
    pub fn trace_limit_defect(&self, f: &TrigPolynomial) -> Result<f64> {
        if !f.is_real(1e-12) {
            return Err(Error::InvalidParameter("trace limit needs a real symbol"));
        }
        Ok((self.toeplitz(f).normalized_trace() - f.mean()).norm())
    }

    pub fn defect(&self, kind: DefectKind, f: &TrigPolynomial, g: &TrigPolynomial) -> Result<f64> {
        Ok(match kind {
            DefectKind::Product => self.product_defect(f, g),
            DefectKind::Commutator => self.commutator_defect(f, g),
            DefectKind::FirstOrder => self.first_order_defect(f, g),
            DefectKind::TraceLimit => self.trace_limit_defect(f)?,
        })
    }

    /// Clock–shift structure of the coordinate exponentials.
    pub fn weyl_relation(&self) -> Result<WeylReport> {
        if self.n < 2 {
            return Err(Error::InvalidParameter("Weyl relation needs N ≥ 2"));
        }
        let tu = self.toeplitz(&TrigPolynomial::exponential(-1, 0)).entries;
        let tv = self.toeplitz(&TrigPolynomial::exponential(0, -1)).entries;
        let u = polar_unitary(&tu)?;
        let v = polar_unitary(&tv)?;
        let g = &v * &u * v.adjoint() * u.adjoint();
        let scalar = g.trace() / self.n as f64;
        let residual = spectral_norm(&(g - DMatrix::<C64>::identity(self.n, self.n) * scalar));
        let sv = tu.svd(false, false).singular_values;
        Ok(WeylReport {
            n: self.n,
            scalar,
            residual,
            shift_scale: sv.iter().sum::<f64>() / self.n as f64,
            shift_scale_spread: sv.max() - sv.min(),
        })
    }
}

/// An `N×N` Toeplitz matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct ToeplitzMatrix {
    pub entries: DMatrix<C64>,
}

impl ToeplitzMatrix {
    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn normalized_trace(&self) -> C64 {
        self.entries.trace() / self.dim() as f64
    }

    pub fn norm(&self) -> f64 {
        spectral_norm(&self.entries)
    }

    /// `‖T − T*‖`.
    pub fn hermiticity_error(&self) -> f64 {
        spectral_norm(&(&self.entries - self.entries.adjoint()))
    }
}

/// Output of [`ToeplitzContext::weyl_relation`].
#[derive(Clone, Debug, PartialEq)]
pub struct WeylReport {
    pub n: usize,
    /// `ṼŨṼ*Ũ* / 1` as a scalar (normalized trace).
    pub scalar: C64,
    /// Distance of `ṼŨṼ*Ũ*` from `scalar·I`.
    pub residual: f64,
    /// Mean singular value of `T(e^{−2πix})`.
    pub shift_scale: f64,
    pub shift_scale_spread: f64,
}

/// Which semiclassical defect a sweep measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DefectKind {
    Product,
    Commutator,
    FirstOrder,
    TraceLimit,
}

impl DefectKind {
    pub const ALL: [DefectKind; 4] = [Self::Product, Self::Commutator, Self::FirstOrder, Self::TraceLimit];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Product => "product",
            Self::Commutator => "commutator",
            Self::FirstOrder => "first-order",
            Self::TraceLimit => "trace-limit",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|k| k.tag() == tag)
    }

    /// Required upper bound on the fitted log-log slope.
    pub fn slope_bound(self) -> f64 {
        match self {
            Self::Product => -0.5,
            Self::Commutator | Self::FirstOrder => -1.5,
            Self::TraceLimit => -0.9,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub n: usize,
    pub m: usize,
    pub defect: f64,
    /// Slope fitted through this row and all earlier ones.
    pub slope_so_far: Option<f64>,
}

/// Fitted decay of a sweep.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DecayFit {
    pub slope: Option<f64>,
    /// Every defect is at or below [`DEFECT_FLOOR`].
    pub at_floor: bool,
}

impl DecayFit {
    /// Decay at least as fast as `N^bound`: a fitted slope `≤ bound`, or defects at round-off level.
    pub fn satisfies(&self, bound: f64) -> bool {
        self.at_floor || self.slope.is_some_and(|s| s <= bound)
    }
}

pub fn fit_decay(rows: &[SweepRow]) -> DecayFit {
    let at_floor = !rows.is_empty() && rows.iter().all(|r| r.defect <= DEFECT_FLOOR);
    let pts: Vec<(f64, f64)> = rows.iter().filter(|r| r.defect > 0.0).map(|r| (r.n as f64, r.defect)).collect();
    DecayFit { slope: if at_floor { None } else { loglog_slope(&pts) }, at_floor }
}

/// Attaches running slopes to `(N, M, defect)` triples in the given order.
pub fn with_running_slopes(cells: &[(usize, usize, f64)]) -> Vec<SweepRow> {
    let mut rows: Vec<SweepRow> = Vec::with_capacity(cells.len());
    for &(n, m, defect) in cells {
        rows.push(SweepRow { n, m, defect, slope_so_far: None });
        let fit = fit_decay(&rows);
        rows.last_mut().unwrap().slope_so_far = fit.slope;
    }
    rows
}

/// Sequential sweep over `ns` on [`default_grid`].
pub fn sweep(ns: &[usize], kind: DefectKind, f: &TrigPolynomial, g: &TrigPolynomial) -> Result<Vec<SweepRow>> {
    let mut cells = Vec::with_capacity(ns.len());
    for &n in ns {
        let ctx = ToeplitzContext::for_flux(n)?;
        cells.push((n, ctx.grid(), ctx.defect(kind, f, g)?));
    }
    Ok(with_running_slopes(&cells))
}
