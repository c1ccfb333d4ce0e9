//! Closed-form `L²`-index values for surfaces and their lattice cross-check.

use crate::dolbeault::{build_dolbeault, kernel_dimension, Gauge, DEFAULT_KERNEL_TOL};
use crate::{Error, Result};

/// Genus, normalized volume `∫ω/2π`, quantization parameter `s` and the degree `d0` of the twist bundle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfaceData {
    pub genus: u32,
    pub vol: f64,
    pub s: f64,
    pub d0: f64,
}

impl SurfaceData {
    pub fn new(genus: u32, vol: f64, s: f64, d0: f64) -> Result<Self> {
        if genus < 1 {
            return Err(Error::InvalidParameter("genus must be at least 1"));
        }
        if !(vol > 0.0) {
            return Err(Error::InvalidParameter("volume must be positive"));
        }
        Ok(Self { genus, vol, s, d0 })
    }

    /// Flat torus with unit volume at flux `s`.
    pub fn torus(s: f64) -> Self {
        Self { genus: 1, vol: 1.0, s, d0: 0.0 }
    }

    /// Genus-`g` surface with the normalization `vol = g − 1`.
    pub fn hyperbolic(genus: u32, s: f64) -> Result<Self> {
        if genus < 2 {
            return Err(Error::InvalidParameter("hyperbolic surfaces need genus at least 2"));
        }
        Self::new(genus, (genus - 1) as f64, s, 0.0)
    }
}

/// `s·vol + (1 − g) − d0/2`.
pub fn l2_index(d: &SurfaceData) -> f64 {
    d.s * d.vol + (1.0 - d.genus as f64) - 0.5 * d.d0
}

/// `(s − 1)(g − 1)`, checked against [`l2_index`] under `vol = g − 1`.
pub fn natsume_nest_trace(genus: u32, s: f64) -> Result<f64> {
    let d = SurfaceData::hyperbolic(genus, s)?;
    let trace = (s - 1.0) * (genus as f64 - 1.0);
    let index = l2_index(&d);
    if (trace - index).abs() > 1e-12 * (1.0 + trace.abs()) {
        return Err(Error::TraceMismatch { trace, index });
    }
    Ok(trace)
}

#[derive(Clone, Debug, PartialEq)]
pub struct IndexCrosscheck {
    pub n: usize,
    pub m: usize,
    pub gauge: Gauge,
    pub kernel_dim: usize,
    pub formula: f64,
    pub agrees: bool,
    /// `N = 0`: constants are harmonic, the formula counts the holomorphic Euler characteristic.
    pub flat_case: bool,
}

/// Compares the lattice kernel dimension with `l2_index` of the unit torus at `s = N`.
pub fn numeric_index_crosscheck(n: usize, m: usize, gauge: Gauge) -> Result<IndexCrosscheck> {
    let pair = build_dolbeault(n, m, gauge)?;
    let kernel_dim = kernel_dimension(&pair, DEFAULT_KERNEL_TOL)?;
    let formula = l2_index(&SurfaceData::torus(n as f64));
    let agrees = kernel_dim as f64 == formula;
    let flat_case = n == 0;
    if !agrees && !flat_case {
        return Err(Error::IndexViolation { kernel: kernel_dim, formula });
    }
    Ok(IndexCrosscheck { n, m, gauge, kernel_dim, formula, agrees, flat_case })
}
