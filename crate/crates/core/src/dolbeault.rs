//! Lattice Dolbeault operator for the flux-`N` line bundle on the unit torus.
//!
//! Sites are `(i, j)` with `x = i/M`, `y = j/M`. Links carry parallel transport
//! `U(v→w) ≈ e^{i∫A}` for the connection `d − iA`, and the magnetic translations are
//! `(T_x ψ)(i,j) = conj(U_x(i,j)) ψ(i+1,j)` and `(T_y ψ)(i,j) = conj(U_y(i,j)) ψ(i,j+1)`.
//!
//! The operator is
//!
//! ```text
//! D₊ = (T_x − exp(h·P_mid)) / (√2 h),   P = −i·Log(T_y)/h,
//! ```
//!
//! where `P` is the covariant `y`-momentum (principal branch, spectrum in `(−πM, πM]`)
//! and `P_mid` is `P` averaged over the two ends of each `x`-edge. Both `T_y` and the
//! intertwining `T_x` act diagonally on column momentum modes, so `D₊` splits into chains
//! along which the momentum drops by `2πN/M` per step. The `N` edges where `T_x` would carry
//! a mode across the branch cut of `Log` are removed from the degree-1 space, which makes
//! `D₊` a `(M²−N)×M²` matrix of full row rank with a kernel of dimension exactly `N`.
//!
//! On each chain the zero modes are exact samples of the continuum theta functions, and
//! `D₊D₊* − D₊*D₊ → 2πN` on low-lying states.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;

use crate::linalg::SymTridiagonal;
use crate::{Error, Result, C64};

/// Constant `c` in the lattice Weitzenbock identity `D₊D₊* = D₊*D₊ + c·N`.
pub const CURVATURE_SCALE: f64 = 2.0 * PI;

/// Default relative threshold for numerical kernels.
pub const DEFAULT_KERNEL_TOL: f64 = 1e-6;

/// Number of lowest `D₊*D₊` levels per chain entering [`weitzenbock_residual`].
pub const WEITZENBOCK_LEVELS: usize = 1;

/// Default discretization slack `η` in the gap assertion `gap ≥ N(1−η)`.
pub const DEFAULT_ETA: f64 = 0.1;

/// Gauge choice for the link phases.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Gauge {
    /// `A = 2πN x dy`, with the transition phase on the `x`-boundary links.
    Landau,
    /// `A = πN(x dy − y dx)` in the interior, periodic corrections on boundary links.
    SymmetricPeriodic,
}

impl Gauge {
    pub fn tag(self) -> &'static str {
        match self {
            Gauge::Landau => "landau",
            Gauge::SymmetricPeriodic => "symmetric-periodic",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Self> {
        match tag {
            "landau" => Some(Gauge::Landau),
            "symmetric-periodic" | "symmetric" => Some(Gauge::SymmetricPeriodic),
            _ => None,
        }
    }
}

/// Smallest admissible grid `M ≥ 4N` for flux `N`.
pub fn min_grid(n: usize) -> usize {
    (4 * n).max(2)
}

/// Unit-modulus link phases on the `M×M` periodic grid.
#[derive(Clone, Debug, PartialEq)]
pub struct FluxLattice {
    n: usize,
    m: usize,
    ux: Vec<C64>,
    uy: Vec<C64>,
    gauge: Option<Gauge>,
}

impl FluxLattice {
    pub fn new(n: usize, m: usize, gauge: Gauge) -> Result<Self> {
        if m < 2 {
            return Err(Error::InvalidParameter("grid size M must be at least 2"));
        }
        let (mf, nf) = (m as f64, n as f64);
        let mut ux = vec![C64::new(1.0, 0.0); m * m];
        let mut uy = vec![C64::new(1.0, 0.0); m * m];
        for i in 0..m {
            for j in 0..m {
                uy[i * m + j] = C64::from_polar(1.0, 2.0 * PI * nf * i as f64 / (mf * mf));
                if i == m - 1 {
                    ux[i * m + j] = C64::from_polar(1.0, -2.0 * PI * nf * j as f64 / mf);
                }
            }
        }
        let landau = Self { n, m, ux, uy, gauge: Some(Gauge::Landau) };
        Ok(match gauge {
            Gauge::Landau => landau,
            Gauge::SymmetricPeriodic => {
                let g: Vec<C64> = (0..m * m)
                    .map(|v| C64::from_polar(1.0, PI * nf * (v / m) as f64 * (v % m) as f64 / (mf * mf)))
                    .collect();
                let mut out = landau.gauge_transform(&g);
                out.gauge = Some(Gauge::SymmetricPeriodic);
                out
            }
        })
    }

    /// Links given explicitly, `ux[i*M+j]` on `(i,j)→(i+1,j)` and `uy[i*M+j]` on `(i,j)→(i,j+1)`.
    pub fn from_links(n: usize, m: usize, ux: Vec<C64>, uy: Vec<C64>) -> Result<Self> {
        if m < 2 || ux.len() != m * m || uy.len() != m * m {
            return Err(Error::InvalidParameter("link arrays must have M² entries"));
        }
        Ok(Self { n, m, ux, uy, gauge: None })
    }

    /// `U'(v→w) = g(v) U(v→w) conj(g(w))` for unit-modulus site phases `g`.
    pub fn gauge_transform(&self, g: &[C64]) -> Self {
        let m = self.m;
        let mut out = self.clone();
        for i in 0..m {
            for j in 0..m {
                let v = i * m + j;
                out.ux[v] = g[v] * self.ux[v] * g[self.site(i + 1, j)].conj();
                out.uy[v] = g[v] * self.uy[v] * g[self.site(i, j + 1)].conj();
            }
        }
        out.gauge = None;
        out
    }

    pub fn flux(&self) -> usize {
        self.n
    }

    pub fn grid(&self) -> usize {
        self.m
    }

    pub fn gauge(&self) -> Option<Gauge> {
        self.gauge
    }

    pub fn site(&self, i: usize, j: usize) -> usize {
        (i % self.m) * self.m + j % self.m
    }

    pub fn ux(&self, i: usize, j: usize) -> C64 {
        self.ux[self.site(i, j)]
    }

    pub fn uy(&self, i: usize, j: usize) -> C64 {
        self.uy[self.site(i, j)]
    }

    /// Counterclockwise product of the links around the plaquette at `(i, j)`.
    pub fn plaquette(&self, i: usize, j: usize) -> C64 {
        self.ux(i, j) * self.uy(i + 1, j) * self.ux(i, j + 1).conj() * self.uy(i, j).conj()
    }

    /// Largest deviation of a plaquette from `e^{2πiN/M²}`.
    pub fn plaquette_error(&self) -> f64 {
        let want = C64::from_polar(1.0, 2.0 * PI * self.n as f64 / (self.m * self.m) as f64);
        (0..self.m)
            .flat_map(|i| (0..self.m).map(move |j| (i, j)))
            .map(|(i, j)| (self.plaquette(i, j) - want).norm())
            .fold(0.0, f64::max)
    }

    /// Product of all plaquettes (equal to 1 on a closed torus).
    pub fn total_plaquette_product(&self) -> C64 {
        (0..self.m).flat_map(|i| (0..self.m).map(move |j| (i, j))).map(|(i, j)| self.plaquette(i, j)).product()
    }

    /// Sum of plaquette angles `Σ arg P = 2πN` (valid while each angle is below π).
    pub fn total_flux(&self) -> f64 {
        (0..self.m).flat_map(|i| (0..self.m).map(move |j| (i, j))).map(|(i, j)| self.plaquette(i, j).arg()).sum()
    }

    /// `(T_x ψ)(i,j) = conj(U_x(i,j)) ψ(i+1,j)`.
    pub fn translate_x(&self, psi: &[C64]) -> Vec<C64> {
        let m = self.m;
        (0..m * m).map(|v| self.ux[v].conj() * psi[self.site(v / m + 1, v % m)]).collect()
    }

    /// `(T_y ψ)(i,j) = conj(U_y(i,j)) ψ(i,j+1)`.
    pub fn translate_y(&self, psi: &[C64]) -> Vec<C64> {
        let m = self.m;
        (0..m * m).map(|v| self.uy[v].conj() * psi[self.site(v / m, v % m + 1)]).collect()
    }
}

/// Eigenbasis of `T_y` on one column.
#[derive(Clone, Debug)]
struct ColumnBasis {
    theta: f64,
    transport: Vec<C64>,
}

impl ColumnBasis {
    fn new(lat: &FluxLattice, i: usize) -> Self {
        let m = lat.m;
        let mut transport = Vec::with_capacity(m);
        let mut acc = C64::new(1.0, 0.0);
        for j in 0..m {
            transport.push(acc);
            acc *= lat.uy(i, j);
        }
        Self { theta: acc.conj().arg(), transport }
    }

    /// Mode `k`: `e(j) = e^{i(Θ+2πk)j/M} G(j)/√M`, an eigenvector of `T_y` with eigenvalue `e^{i(Θ+2πk)/M}`.
    fn mode(&self, k: usize) -> Vec<C64> {
        let m = self.transport.len();
        let rate = (self.theta + 2.0 * PI * k as f64) / m as f64;
        let norm = 1.0 / libm::sqrt(m as f64);
        self.transport.iter().enumerate().map(|(j, g)| g * C64::from_polar(norm, rate * j as f64)).collect()
    }
}

/// Principal momentum window `(−πM, πM]` with a small tie-breaking offset.
fn wrap_momentum(p: f64, m: usize) -> f64 {
    let period = 2.0 * PI * m as f64;
    let eps = 1e-9 * period;
    p - period * libm::floor((p + 0.5 * period - eps) / period)
}

/// One site of a chain in the momentum-mode basis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChainVertex {
    pub column: usize,
    pub mode: usize,
    /// Covariant `y`-momentum of the mode.
    pub momentum: f64,
    /// Phase of the chain basis vector relative to the raw column mode.
    pub phase: C64,
    /// Diagonal coefficient `e^{h·p_mid}/(√2h)` of the outgoing edge (0 if the edge is cut).
    pub a: f64,
}

/// A maximal path (or cycle) of `T_x`-linked modes. In its basis `D₊` is bidiagonal:
/// row `r` has `−a_r` in column `r` and `b = 1/(√2h)` in column `r+1`.
#[derive(Clone, Debug)]
pub struct Chain {
    pub vertices: Vec<ChainVertex>,
    pub closed: bool,
    /// Phase of the closing edge of a cycle.
    pub wrap_phase: C64,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    fn edges(&self) -> usize {
        if self.closed {
            self.len()
        } else {
            self.len() - 1
        }
    }

    /// `D₊D₊*` on the chain's edges (open chains).
    pub fn ddstar(&self, b: f64) -> SymTridiagonal {
        let l = self.len();
        let a: Vec<f64> = self.vertices.iter().map(|v| v.a).collect();
        let diag = (0..l - 1).map(|r| a[r] * a[r] + b * b).collect();
        let off = (0..l.saturating_sub(2)).map(|r| -b * a[r + 1]).collect();
        SymTridiagonal::new(diag, off)
    }

    /// `D₊*D₊` on the chain's vertices (open chains).
    pub fn dstard(&self, b: f64) -> SymTridiagonal {
        let l = self.len();
        let a: Vec<f64> = self.vertices.iter().map(|v| v.a).collect();
        let diag = (0..l)
            .map(|c| if c + 1 < l { a[c] * a[c] } else { 0.0 } + if c > 0 { b * b } else { 0.0 })
            .collect();
        let off = (0..l - 1).map(|c| -a[c] * b).collect();
        SymTridiagonal::new(diag, off)
    }

    /// Dense chain block of `D₊` (edges × vertices).
    pub fn dense(&self, b: f64) -> DMatrix<C64> {
        let l = self.len();
        let mut d = DMatrix::zeros(self.edges(), l);
        for r in 0..self.edges() {
            d[(r, r)] = C64::new(-self.vertices[r].a, 0.0);
            if r + 1 < l {
                d[(r, r + 1)] = C64::new(b, 0.0);
            } else {
                d[(r, 0)] = self.wrap_phase * b;
            }
        }
        d
    }
}

/// The degree-0 → degree-1 block `D₊` together with its lattice data.
#[derive(Clone, Debug)]
pub struct DolbeaultPair {
    lattice: FluxLattice,
    columns: Vec<ColumnBasis>,
    chains: Vec<Chain>,
}

/// Builds `D₊` for flux `N` on an `M×M` grid in the given gauge.
pub fn build_dolbeault(n: usize, m: usize, gauge: Gauge) -> Result<DolbeaultPair> {
    if m < min_grid(n) {
        return Err(Error::Resolution { n, m, required: min_grid(n) });
    }
    DolbeaultPair::from_lattice(FluxLattice::new(n, m, gauge)?)
}

impl DolbeaultPair {
    pub fn from_lattice(lattice: FluxLattice) -> Result<Self> {
        let (n, m) = (lattice.n, lattice.m);
        if lattice.plaquette_error() > 1e-9 {
            return Err(Error::NonUniformFlux("plaquette phases differ from e^{2πiN/M²}"));
        }
        let h = 1.0 / m as f64;
        let b = 1.0 / (SQRT_2 * h);
        let delta = 2.0 * PI * n as f64 / m as f64;
        let columns: Vec<ColumnBasis> = (0..m).map(|i| ColumnBasis::new(&lattice, i)).collect();
        let momentum = |i: usize, k: usize| wrap_momentum(columns[i].theta + 2.0 * PI * k as f64, m);

        // Outgoing edge of each vertex: the source mode in the next column and the overlap
        // ⟨e_{i,k}|T_x e_{i+1,k'}⟩, or None for cut edges.
        let nv = m * m;
        let mut succ: Vec<Option<(usize, C64)>> = vec![None; nv];
        let mut cuts = 0;
        for i in 0..m {
            let next = (i + 1) % m;
            let col_next: Vec<Vec<C64>> = (0..m).map(|k| columns[next].mode(k)).collect();
            let ux: Vec<C64> = (0..m).map(|j| lattice.ux(i, j).conj()).collect();
            for k in 0..m {
                let p = momentum(i, k);
                let q_raw = p - delta;
                let q = wrap_momentum(q_raw, m);
                if (q - q_raw).abs() > 1.0 {
                    cuts += 1;
                    continue;
                }
                let kk = libm::round((q - columns[next].theta) / (2.0 * PI)) as i64;
                let kk = kk.rem_euclid(m as i64) as usize;
                if (momentum(next, kk) - q).abs() > 1e-6 * m as f64 {
                    return Err(Error::NonUniformFlux("momentum transfer between columns"));
                }
                let here = columns[i].mode(k);
                let c: C64 = (0..m).map(|j| here[j].conj() * ux[j] * col_next[kk][j]).sum();
                if (c.norm() - 1.0).abs() > 1e-8 {
                    return Err(Error::NonUniformFlux("x-translation does not map modes to modes"));
                }
                succ[i * m + k] = Some((next * m + kk, c));
            }
        }
        if cuts != n {
            return Err(Error::NonUniformFlux("number of branch-cut edges differs from N"));
        }

        let mut has_pred = vec![false; nv];
        for (t, _) in succ.iter().flatten() {
            has_pred[*t] = true;
        }
        let a_of = |v: usize, target: usize| {
            let p = momentum(v / m, v % m);
            let q = momentum(target / m, target % m);
            libm::exp(h * 0.5 * (p + q)) * b
        };
        let mut visited = vec![false; nv];
        let mut chains = Vec::new();
        let starts: Vec<usize> = (0..nv).filter(|&v| !has_pred[v]).collect();
        let cycle_starts = 0..nv;
        for (start, open) in starts.into_iter().map(|v| (v, true)).chain(cycle_starts.map(|v| (v, false))) {
            if visited[start] {
                continue;
            }
            let mut vertices = Vec::new();
            let mut v = start;
            let mut phase = C64::new(1.0, 0.0);
            let mut wrap_phase = C64::new(1.0, 0.0);
            loop {
                visited[v] = true;
                let mut vert = ChainVertex { column: v / m, mode: v % m, momentum: momentum(v / m, v % m), phase, a: 0.0 };
                match succ[v] {
                    Some((t, c)) => {
                        vert.a = a_of(v, t);
                        vertices.push(vert);
                        if t == start && !open {
                            wrap_phase = phase.conj() * c;
                            break;
                        }
                        if visited[t] {
                            return Err(Error::NonUniformFlux("chain structure is inconsistent"));
                        }
                        phase /= c;
                        v = t;
                    }
                    None => {
                        vertices.push(vert);
                        break;
                    }
                }
            }
            chains.push(Chain { vertices, closed: !open, wrap_phase });
        }
        Ok(Self { lattice, columns, chains })
    }

    pub fn lattice(&self) -> &FluxLattice {
        &self.lattice
    }

    pub fn flux(&self) -> usize {
        self.lattice.n
    }

    pub fn grid(&self) -> usize {
        self.lattice.m
    }

    pub fn chains(&self) -> &[Chain] {
        &self.chains
    }

    /// Off-diagonal coefficient `b = 1/(√2h)`.
    pub fn b(&self) -> f64 {
        self.lattice.m as f64 / SQRT_2
    }

    /// `M²`, the number of lattice sites.
    pub fn domain_dim(&self) -> usize {
        self.lattice.m * self.lattice.m
    }

    /// Number of degree-1 basis elements (`M² − N`).
    pub fn codomain_dim(&self) -> usize {
        self.chains.iter().map(Chain::edges).sum()
    }

    /// Position-space basis vector of chain vertex `v`.
    fn vertex_vector(&self, v: &ChainVertex) -> Vec<C64> {
        let mut e = self.columns[v.column].mode(v.mode);
        e.iter_mut().for_each(|z| *z *= v.phase);
        e
    }

    /// Dense `D₊` in position space: rows are degree-1 basis elements chain by chain,
    /// columns are sites `i*M + j`.
    pub fn dplus_dense(&self) -> DMatrix<C64> {
        let m = self.lattice.m;
        let b = self.b();
        let mut d = DMatrix::zeros(self.codomain_dim(), m * m);
        let mut row = 0;
        for chain in &self.chains {
            for v in &chain.vertices[..chain.edges()] {
                let e = self.vertex_vector(v);
                let i = v.column;
                for j in 0..m {
                    let ec = e[j].conj();
                    d[(row, self.lattice.site(i + 1, j))] += ec * self.lattice.ux(i, j).conj() * b;
                    d[(row, self.lattice.site(i, j))] -= ec * v.a;
                }
                row += 1;
            }
        }
        d
    }

    /// Maps chain coefficients to a grid function.
    pub fn chain_to_grid(&self, chain: &Chain, coeffs: &[C64]) -> Vec<C64> {
        let m = self.lattice.m;
        let mut out = vec![C64::new(0.0, 0.0); m * m];
        for (v, &z) in chain.vertices.iter().zip(coeffs) {
            if z == C64::new(0.0, 0.0) {
                continue;
            }
            let e = self.vertex_vector(v);
            for j in 0..m {
                out[v.column * m + j] += z * e[j];
            }
        }
        out
    }

    /// Singular values of `D₊` in ascending order.
    pub fn singular_values(&self) -> Vec<f64> {
        let b = self.b();
        let mut out = Vec::new();
        for chain in &self.chains {
            if chain.closed {
                let d = chain.dense(b);
                out.extend(d.svd(false, false).singular_values.iter().copied());
            } else if chain.len() > 1 {
                out.extend(chain.ddstar(b).eigenvalues().into_iter().map(|l| libm::sqrt(l.max(0.0))));
            }
        }
        out.sort_by(f64::total_cmp);
        out
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol > 0.0 && tol < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter("kernel tolerance must lie in (0, 1)"))
    }
}

/// Per-chain singular values relevant for rank decisions.
struct ChainSpectrum {
    sigma_max: f64,
    /// For each chain: (domain size, singular values or None if only counts are used).
    per_chain: Vec<ChainRank>,
}

enum ChainRank {
    Open(SymTridiagonal),
    Dense(Vec<f64>),
}

fn chain_spectrum(pair: &DolbeaultPair) -> ChainSpectrum {
    let b = pair.b();
    let mut sigma_max: f64 = 0.0;
    let mut per_chain = Vec::new();
    for chain in &pair.chains {
        if chain.closed || chain.len() < 2 {
            let sv: Vec<f64> = if chain.len() < 2 && !chain.closed {
                Vec::new()
            } else {
                chain.dense(b).svd(false, false).singular_values.iter().copied().collect()
            };
            sigma_max = sv.iter().copied().fold(sigma_max, f64::max);
            per_chain.push(ChainRank::Dense(sv));
        } else {
            let t = chain.ddstar(b);
            sigma_max = sigma_max.max(libm::sqrt(t.eigenvalue(t.len() - 1)));
            per_chain.push(ChainRank::Open(t));
        }
    }
    ChainSpectrum { sigma_max, per_chain }
}

/// Number of singular values of `D₊` above `tol·σ_max` per chain, with the ambiguity check.
fn chain_ranks(pair: &DolbeaultPair, tol: f64) -> Result<Vec<usize>> {
    check_tol(tol)?;
    let spec = chain_spectrum(pair);
    let thr = tol * spec.sigma_max;
    let (lo, hi) = (thr / 10.0, thr * 10.0);
    let mut ranks = Vec::with_capacity(spec.per_chain.len());
    for rank in &spec.per_chain {
        match rank {
            ChainRank::Dense(sv) => {
                if let Some(&s) = sv.iter().find(|&&s| s > lo && s < hi) {
                    return Err(Error::IndeterminateKernel { sigma: s, threshold: thr });
                }
                ranks.push(sv.iter().filter(|&&s| s > thr).count());
            }
            ChainRank::Open(t) => {
                let below_hi = t.count_below(hi * hi);
                let below_lo = t.count_below(lo * lo);
                if below_hi > below_lo {
                    let s = libm::sqrt(t.eigenvalue(below_lo).max(0.0));
                    return Err(Error::IndeterminateKernel { sigma: s, threshold: thr });
                }
                ranks.push(t.len() - t.count_below(thr * thr));
            }
        }
    }
    Ok(ranks)
}

/// `dim ker D₊ = M² − #{σ > tol·σ_max}`.
pub fn kernel_dimension(pair: &DolbeaultPair, tol: f64) -> Result<usize> {
    let ranks = chain_ranks(pair, tol)?;
    Ok(pair.domain_dim() - ranks.iter().sum::<usize>())
}

/// Spectral summary of `D₊`.
#[derive(Clone, Debug, PartialEq)]
pub struct SpectralReport {
    pub n: usize,
    pub m: usize,
    pub gauge: &'static str,
    pub kernel_dim: usize,
    /// Number of zero eigenvalues of `D₊D₊*` (0 for `N ≥ 1`).
    pub cokernel_dim: usize,
    pub sigma_max: f64,
    pub sigma_min_nonzero: f64,
    /// `λ_min(D₊D₊*)` on the complement of its kernel.
    pub gap_degree1: f64,
    /// `gap_degree1^{−1/2}`.
    pub parametrix_norm: f64,
    pub eta: f64,
    /// `gap_degree1 ≥ N(1−η)` and `parametrix_norm ≤ (N(1−η))^{−1/2}`.
    pub gap_ok: bool,
    /// Largest mismatch between the nonzero spectra of `D₊*D₊` and `D₊D₊*`, relative to `σ_max²`.
    pub susy_residual: f64,
    /// Lowest eigenvalues of `D₊*D₊`, ascending.
    pub dstar_d_low: Vec<f64>,
    /// Lowest eigenvalues of `D₊D₊*`, ascending.
    pub d_dstar_low: Vec<f64>,
}

/// How many low eigenvalues each report lists.
const REPORTED_LEVELS: usize = 8;

pub fn spectral_report(pair: &DolbeaultPair, eta: f64) -> Result<SpectralReport> {
    let b = pair.b();
    let kernel_dim = kernel_dimension(pair, DEFAULT_KERNEL_TOL)?;
    let mut dd = Vec::new();
    let mut sd = Vec::new();
    let mut susy: f64 = 0.0;
    for chain in &pair.chains {
        if chain.closed || chain.len() < 2 {
            let d = chain.dense(b);
            let mut a: Vec<f64> = crate::linalg::hermitian_eigenvalues(&(&d * d.adjoint()));
            let mut c: Vec<f64> = crate::linalg::hermitian_eigenvalues(&(d.adjoint() * &d));
            let worst = a.iter().zip(&c).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            susy = susy.max(worst);
            dd.append(&mut a);
            sd.append(&mut c);
        } else {
            let a = chain.ddstar(b).eigenvalues();
            let c = chain.dstard(b).eigenvalues();
            // D*D has one extra (zero) eigenvalue on an open chain.
            let worst = a.iter().zip(&c[1..]).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max);
            susy = susy.max(worst);
            dd.extend(a);
            sd.extend(c);
        }
    }
    dd.sort_by(f64::total_cmp);
    sd.sort_by(f64::total_cmp);
    let top = dd.last().copied().unwrap_or(0.0);
    let zero = DEFAULT_KERNEL_TOL * DEFAULT_KERNEL_TOL * top;
    let cokernel_dim = dd.iter().filter(|&&l| l <= zero).count();
    let gap = dd.iter().copied().find(|&l| l > zero).unwrap_or(0.0);
    let nf = pair.flux() as f64;
    let parametrix = 1.0 / libm::sqrt(gap);
    let bound = nf * (1.0 - eta);
    Ok(SpectralReport {
        n: pair.flux(),
        m: pair.grid(),
        gauge: pair.lattice.gauge.map_or("custom", Gauge::tag),
        kernel_dim,
        cokernel_dim,
        sigma_max: libm::sqrt(top),
        sigma_min_nonzero: libm::sqrt(gap),
        gap_degree1: gap,
        parametrix_norm: parametrix,
        eta,
        gap_ok: gap >= bound && parametrix <= 1.0 / libm::sqrt(bound),
        susy_residual: if top > 0.0 { susy / top } else { 0.0 },
        dstar_d_low: sd.iter().copied().take(REPORTED_LEVELS.max(pair.flux() + 1)).collect(),
        d_dstar_low: dd.iter().copied().take(REPORTED_LEVELS).collect(),
    })
}

/// Norm of `E D₊D₊* E* − D₊*D₊ − 2πN` compressed to the lowest `levels` eigenvectors of
/// `D₊*D₊` on every chain, where `E` identifies each kept `x`-edge with its tail vertex.
pub fn weitzenbock_residual(pair: &DolbeaultPair, levels: usize) -> f64 {
    let b = pair.b();
    let shift = CURVATURE_SCALE * pair.flux() as f64;
    let mut worst: f64 = 0.0;
    for chain in &pair.chains {
        if chain.closed || chain.len() < 2 {
            let d = chain.dense(b);
            let diff = &d * d.adjoint() - d.adjoint() * &d;
            let r = diff - DMatrix::<C64>::identity(d.ncols(), d.ncols()) * C64::new(shift, 0.0);
            worst = worst.max(crate::linalg::spectral_norm(&r));
            continue;
        }
        let dd = chain.ddstar(b);
        let sd = chain.dstard(b);
        let k = levels.min(sd.len());
        let vecs: Vec<Vec<f64>> = (0..k).map(|t| sd.eigenvector(sd.eigenvalue(t))).collect();
        let images: Vec<Vec<f64>> = vecs
            .iter()
            .map(|u| {
                let lhs = tri_apply(&dd, &u[..dd.len()]);
                let rhs = tri_apply(&sd, u);
                (0..u.len())
                    .map(|r| if r < lhs.len() { lhs[r] } else { 0.0 } - rhs[r] - shift * u[r])
                    .collect()
            })
            .collect();
        let small = DMatrix::from_fn(k, k, |x, y| vecs[x].iter().zip(&images[y]).map(|(p, q)| p * q).sum::<f64>());
        let sym = (&small + small.transpose()) * 0.5;
        let norm = sym.symmetric_eigenvalues().iter().map(|v| v.abs()).fold(0.0, f64::max);
        worst = worst.max(norm);
    }
    worst
}

fn tri_apply(t: &SymTridiagonal, u: &[f64]) -> Vec<f64> {
    let n = t.len();
    (0..n)
        .map(|r| {
            let mut v = t.diag[r] * u[r];
            if r + 1 < n {
                v += t.off[r] * u[r + 1];
            }
            if r > 0 {
                v += t.off[r - 1] * u[r - 1];
            }
            v
        })
        .collect()
}

/// Orthonormal kernel vectors of `D₊` as grid functions (site index `i*M + j`).
#[derive(Clone, Debug)]
pub struct KernelBasis {
    pub n: usize,
    pub m: usize,
    /// `M² × dim` matrix whose columns are the basis vectors.
    pub vectors: DMatrix<C64>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.ncols()
    }

    /// Largest entry of `V*V − I`.
    pub fn orthonormality_error(&self) -> f64 {
        let g = self.vectors.adjoint() * &self.vectors;
        let d = g.nrows();
        (g - DMatrix::<C64>::identity(d, d)).iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

/// Orthonormal basis of the numerical kernel.
pub fn kernel_basis(pair: &DolbeaultPair, tol: f64) -> Result<KernelBasis> {
    let ranks = chain_ranks(pair, tol)?;
    let m = pair.grid();
    let b = pair.b();
    let mut cols: Vec<Vec<C64>> = Vec::new();
    for (chain, rank) in pair.chains.iter().zip(ranks) {
        let nullity = chain.len() - rank;
        if nullity == 0 {
            continue;
        }
        if !chain.closed && nullity == 1 {
            cols.push(pair.chain_to_grid(chain, &open_chain_zero_mode(chain, b)));
            continue;
        }
        let d = chain.dense(b);
        let l = chain.len();
        let gram = d.adjoint() * &d;
        let eig = gram.symmetric_eigen();
        let mut order: Vec<usize> = (0..l).collect();
        order.sort_by(|&x, &y| eig.eigenvalues[x].total_cmp(&eig.eigenvalues[y]));
        for &idx in order.iter().take(nullity) {
            let v: Vec<C64> = eig.eigenvectors.column(idx).iter().copied().collect();
            cols.push(pair.chain_to_grid(chain, &v));
        }
    }
    let dim = cols.len();
    let vectors = DMatrix::from_fn(m * m, dim, |r, c| cols[c][r]);
    Ok(KernelBasis { n: pair.flux(), m, vectors })
}

/// Exact zero mode of an open chain: `ψ_{r+1} = (a_r/b) ψ_r`, accumulated in log scale.
fn open_chain_zero_mode(chain: &Chain, b: f64) -> Vec<C64> {
    let mut logs = Vec::with_capacity(chain.len());
    let mut acc = 0.0;
    logs.push(0.0);
    for v in &chain.vertices[..chain.len() - 1] {
        acc += libm::log(v.a / b);
        logs.push(acc);
    }
    let top = logs.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let vals: Vec<f64> = logs.iter().map(|l| libm::exp(l - top)).collect();
    let norm = libm::sqrt(vals.iter().map(|v| v * v).sum::<f64>());
    vals.iter().map(|v| C64::new(v / norm, 0.0)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn landau_plaquettes() {
        for (n, m) in [(1, 8), (3, 12), (2, 16)] {
            let lat = FluxLattice::new(n, m, Gauge::Landau).unwrap();
            assert!(lat.plaquette_error() < 1e-12);
            assert!((lat.total_plaquette_product() - C64::new(1.0, 0.0)).norm() < 1e-10);
            assert!((lat.total_flux() - 2.0 * PI * n as f64).abs() < 1e-9);
            let sym = FluxLattice::new(n, m, Gauge::SymmetricPeriodic).unwrap();
            assert!(sym.plaquette_error() < 1e-12);
        }
    }

    #[test]
    fn symmetric_gauge_interior_links() {
        let (n, m) = (2, 12);
        let lat = FluxLattice::new(n, m, Gauge::SymmetricPeriodic).unwrap();
        let h = 1.0 / m as f64;
        for i in 0..m - 1 {
            for j in 0..m - 1 {
                let (x, y) = (i as f64 * h, j as f64 * h);
                let ax = C64::from_polar(1.0, -PI * n as f64 * y * h);
                let ay = C64::from_polar(1.0, PI * n as f64 * x * h);
                assert!((lat.ux(i, j) - ax).norm() < 1e-12);
                assert!((lat.uy(i, j) - ay).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn resolution_floor() {
        assert_eq!(
            build_dolbeault(3, 8, Gauge::Landau).unwrap_err(),
            Error::Resolution { n: 3, m: 8, required: 12 }
        );
    }

    #[test]
    fn flat_case_has_constant_kernel() {
        let pair = build_dolbeault(0, 8, Gauge::Landau).unwrap();
        assert_eq!(pair.codomain_dim(), 64);
        assert_eq!(kernel_dimension(&pair, 1e-6).unwrap(), 1);
        let kb = kernel_basis(&pair, 1e-6).unwrap();
        let first = kb.vectors[(0, 0)];
        assert!(kb.vectors.iter().all(|z| (z - first).norm() < 1e-12));
        assert!(weitzenbock_residual(&pair, 3) < 1e-9);
    }

    #[test]
    fn chain_structure() {
        let pair = build_dolbeault(3, 12, Gauge::Landau).unwrap();
        assert_eq!(pair.chains().len(), 3);
        assert!(pair.chains().iter().all(|c| !c.closed));
        assert_eq!(pair.codomain_dim(), 144 - 3);
    }

    #[test]
    fn dense_operator_agrees_with_chains() {
        let pair = build_dolbeault(2, 8, Gauge::SymmetricPeriodic).unwrap();
        let d = pair.dplus_dense();
        let mut dense: Vec<f64> = d.clone().svd(false, false).singular_values.iter().copied().collect();
        dense.sort_by(f64::total_cmp);
        let chain = pair.singular_values();
        assert_eq!(dense.len(), chain.len());
        let top = chain.last().unwrap();
        for (x, y) in dense.iter().zip(&chain) {
            assert!((x - y).abs() < 1e-10 * top);
        }
        let kb = kernel_basis(&pair, 1e-6).unwrap();
        assert!((&d * &kb.vectors).norm() < 1e-10 * top);
    }

    #[test]
    fn translations_commute_up_to_flux() {
        let lat = FluxLattice::new(2, 8, Gauge::SymmetricPeriodic).unwrap();
        let psi: Vec<C64> = (0..64).map(|v| C64::new(libm::sin(v as f64), libm::cos(0.3 * v as f64))).collect();
        let xy = lat.translate_x(&lat.translate_y(&psi));
        let yx = lat.translate_y(&lat.translate_x(&psi));
        let phase = C64::from_polar(1.0, 2.0 * PI * 2.0 / 64.0);
        let err = xy.iter().zip(&yx).map(|(a, b)| (a - phase * b).norm()).fold(0.0, f64::max);
        let err2 = xy.iter().zip(&yx).map(|(a, b)| (a - phase.conj() * b).norm()).fold(0.0, f64::max);
        assert!(err.min(err2) < 1e-12);
    }
}
