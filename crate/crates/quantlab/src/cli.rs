//! Command-line surface. Every flag has a JSON twin of the same name for `--config`.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::formats::FourierRecord;

#[derive(Debug, Parser)]
#[command(name = "quantlab", version, about = "Twisted group algebras, lattice Dolbeault spectra and Toeplitz operators on the torus")]
pub struct Cli {
    /// JSON file whose fields override the flags.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Write the primary artifact here instead of stdout.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Derive the cocycle of a polynomial potential and check it against the closed form.
    CocycleCheck(CocycleArgs),
    /// Products, involution, trace, regular representation and norms in the twisted group algebra.
    Algebra(AlgebraArgs),
    /// Module inner products, traces and Gram positivity of Gaussian sections.
    ModuleGram(GramArgs),
    /// Kernel, gap and pairing report of the lattice Dolbeault operator.
    Spectral(SpectralArgs),
    /// Semiclassical defects of Toeplitz operators over a range of flux numbers (CSV).
    ToeplitzSweep(SweepArgs),
    /// Commutation scalar of the polar parts of T(e^{-2πix}) and T(e^{-2πiy}) (CSV).
    Weyl(WeylArgs),
    /// Vacuum matrix elements of e^{-2πi(jx+ky)} by quadrature (CSV).
    Bargmann(BargmannArgs),
    /// Truncated Fock-space realization of the magnetic translations.
    Heisenberg(HeisenbergArgs),
    /// Closed-form index and trace values, or the lattice cross-check.
    Index(IndexArgs),
    /// List which subcommand exercises each library operation (CSV).
    Registry,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Self::CocycleCheck(_) => "cocycle-check",
            Self::Algebra(_) => "algebra",
            Self::ModuleGram(_) => "module-gram",
            Self::Spectral(_) => "spectral",
            Self::ToeplitzSweep(_) => "toeplitz-sweep",
            Self::Weyl(_) => "weyl",
            Self::Bargmann(_) => "bargmann",
            Self::Heisenberg(_) => "heisenberg",
            Self::Index(_) => "index",
            Self::Registry => "registry",
        }
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleArgs {
    /// Potential file {"P": [[..]], "Q": [[..]]}; defaults to π(x dy − y dx).
    #[arg(long, value_name = "FILE")]
    pub potential: Option<PathBuf>,
    /// Inline potential coefficients (config only).
    #[arg(skip)]
    #[serde(rename = "P")]
    pub p: Option<Vec<Vec<f64>>>,
    #[arg(skip)]
    #[serde(rename = "Q")]
    pub q: Option<Vec<Vec<f64>>>,
    /// Pairs with |n|,|m|,|n'|,|m'| ≤ radius are compared with the closed form [default: 10].
    #[arg(long)]
    pub radius: Option<i64>,
    /// Radius of the ball on which the cocycle identity is checked [default: 4].
    #[arg(long)]
    pub identity_radius: Option<i64>,
    /// Residual bound [default: 1e-10].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Also write every derived value as CSV.
    #[arg(long, value_name = "FILE")]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AlgebraOp {
    Mult,
    Star,
    Trace,
    Rep,
    Norm,
    NormProfile,
}

impl AlgebraOp {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Mult => "mult",
            Self::Star => "star",
            Self::Trace => "trace",
            Self::Rep => "rep",
            Self::Norm => "norm",
            Self::NormProfile => "norm-profile",
        }
    }
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraArgs {
    #[arg(value_enum)]
    pub op: Option<AlgebraOp>,
    /// Element: harper, one, u, v, or a JSON file of {n, m, re, im} records [default: harper].
    #[arg(long)]
    pub a: Option<String>,
    /// Second factor for mult [default: same as a].
    #[arg(long)]
    pub b: Option<String>,
    /// Twist parameter [default: 0.5].
    #[arg(long)]
    pub s: Option<f64>,
    /// Twist grid for norm-profile: a,b,c or lo..hi/count [default: 0..1/21].
    #[arg(long)]
    pub s_grid: Option<String>,
    /// Largest norm jump allowed between adjacent grid points in norm-profile [default: unchecked].
    #[arg(long)]
    pub continuity: Option<f64>,
    /// Truncation radius of the regular representation [default: 8].
    #[arg(long)]
    pub radius: Option<i64>,
    /// Cocycle scale κ in c = κ(mn' − nm') [default: π].
    #[arg(long)]
    pub kappa: Option<f64>,
    /// Worker threads for norm-profile, further capped by QUANTLAB_THREADS.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GramArgs {
    /// JSON list of Gaussian term records, or a list of such lists [default: the vacuum].
    #[arg(long, value_name = "FILE")]
    pub sections: Option<PathBuf>,
    /// Quantization parameter [default: 2].
    #[arg(long)]
    pub s: Option<f64>,
    /// Truncation radius of the lattice sum [default: 6].
    #[arg(long)]
    pub radius: Option<i64>,
    /// Radius of the regular representation used for positivity [default: 6].
    #[arg(long)]
    pub rep_radius: Option<i64>,
    /// Also report the first section translated by n,m.
    #[arg(long, value_name = "N,M")]
    pub act: Option<String>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralArgs {
    /// Flux number [default: 1].
    #[arg(long = "N", visible_alias = "n")]
    #[serde(rename = "N", alias = "n")]
    pub n: Option<usize>,
    /// Grid size [default: max(16, 8N)].
    #[arg(long = "M", visible_alias = "m")]
    #[serde(rename = "M", alias = "m")]
    pub m: Option<usize>,
    /// landau or symmetric-periodic [default: landau].
    #[arg(long)]
    pub gauge: Option<String>,
    /// Relative kernel threshold [default: 1e-6].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Gap slack η in λ ≥ N(1−η) [default: 0.1].
    #[arg(long)]
    pub eta: Option<f64>,
    /// Export the kernel basis as CSV.
    #[arg(long, value_name = "FILE")]
    pub kernel_csv: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepArgs {
    /// Named symbols "f,g" [default: cos2pix,cos2piy].
    #[arg(long)]
    pub fg: Option<String>,
    /// Flux numbers: a..b, a..b:step or a,b,c [default: 4..32:4].
    #[arg(long = "N", visible_alias = "n")]
    #[serde(rename = "N", alias = "n")]
    pub n: Option<String>,
    /// Comma-separated defects [default: product,commutator,first-order,trace-limit].
    #[arg(long)]
    pub kinds: Option<String>,
    /// Fourier table for f (config only); overrides --fg.
    #[arg(skip)]
    pub f_table: Option<Vec<FourierRecord>>,
    /// Fourier table for g (config only); overrides --fg.
    #[arg(skip)]
    pub g_table: Option<Vec<FourierRecord>>,
    /// Worker threads, further capped by QUANTLAB_THREADS.
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeylArgs {
    /// Flux numbers [default: 2..12].
    #[arg(long = "N", visible_alias = "n")]
    #[serde(rename = "N", alias = "n")]
    pub n: Option<String>,
    /// Distance bound to e^{±2πi/N} [default: 1e-8].
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BargmannArgs {
    /// [default: 0..3]
    #[arg(long)]
    pub j: Option<String>,
    /// [default: 0..3]
    #[arg(long)]
    pub k: Option<String>,
    /// Quantization parameters [default: 1,1.7,2.5].
    #[arg(long)]
    pub s: Option<String>,
    /// Agreement bound with the closed form [default: 1e-8].
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HeisenbergArgs {
    /// [default: 1]
    #[arg(long)]
    pub s: Option<f64>,
    /// Number of Fock states [default: 60].
    #[arg(long)]
    pub truncation: Option<usize>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexArgs {
    /// Genus [default: 2].
    #[arg(long)]
    pub g: Option<u32>,
    /// Quantization parameter [default: 3].
    #[arg(long)]
    pub s: Option<f64>,
    /// Normalized volume [default: g − 1, or 1 on the torus].
    #[arg(long)]
    pub vol: Option<f64>,
    /// Degree of the twisting bundle [default: 0].
    #[arg(long)]
    pub d0: Option<f64>,
    /// Run the lattice cross-check at this flux instead.
    #[arg(long = "N", visible_alias = "n")]
    #[serde(rename = "N", alias = "n")]
    pub n: Option<usize>,
    /// Grid for the cross-check [default: max(16, 8N)].
    #[arg(long = "M", visible_alias = "m")]
    #[serde(rename = "M", alias = "m")]
    pub m: Option<usize>,
    /// Gauge for the cross-check [default: landau].
    #[arg(long)]
    pub gauge: Option<String>,
}
