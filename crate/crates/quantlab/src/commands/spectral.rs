use quantlab_core::dolbeault::{
    build_dolbeault, kernel_basis, kernel_dimension, spectral_report, weitzenbock_residual, CURVATURE_SCALE, WEITZENBOCK_LEVELS,
};
use serde_json::json;

use super::{default_grid, parse_gauge, positive, Outcome};
use crate::checks::{claim, Check};
use crate::cli::SpectralArgs;
use crate::error::CliError;
use crate::formats::kernel_basis_csv;

/// Relative Weitzenbock residual tolerated on the lowest level.
const WEITZENBOCK_FRACTION: f64 = 0.05;

pub fn run(args: &SpectralArgs) -> Result<Outcome, CliError> {
    let n = args.n.unwrap_or(1);
    let m = args.m.unwrap_or_else(|| default_grid(n));
    let gauge = parse_gauge(args.gauge.as_deref())?;
    let tol = positive("tol", args.tol.unwrap_or(1e-6))?;
    let eta = positive("eta", args.eta.unwrap_or(0.1))?;
    if tol >= 1.0 || eta >= 1.0 {
        return Err(CliError::usage("tol and eta must lie in (0, 1)"));
    }
    let pair = build_dolbeault(n, m, gauge)?;
    let report = spectral_report(&pair, eta)?;
    let kernel_dim = kernel_dimension(&pair, tol)?;
    let weitzenbock = weitzenbock_residual(&pair, WEITZENBOCK_LEVELS);
    let basis = kernel_basis(&pair, tol)?;
    let orthonormality = basis.orthonormality_error();
    if let Some(path) = &args.kernel_csv {
        std::fs::write(path, kernel_basis_csv(&basis)?)?;
    }

    let nf = n as f64;
    let mut checks = Vec::new();
    if n >= 1 {
        let floor = nf * (1.0 - eta);
        checks.push(Check::at_most(claim::HOLOMORPHIC_INDEX, "|kernel dimension - N|", (kernel_dim as f64 - nf).abs(), 0.0));
        checks.push(Check::at_least(claim::SPECTRAL_GAP, "lambda_min(D D*)", report.gap_degree1, floor));
        checks.push(Check::at_most(claim::PARAMETRIX, "parametrix norm", report.parametrix_norm, floor.powf(-0.5)));
        checks.push(Check::at_most(
            claim::WEITZENBOCK,
            "lowest-level Weitzenbock residual",
            weitzenbock,
            WEITZENBOCK_FRACTION * CURVATURE_SCALE * nf,
        ));
    }
    checks.push(Check::at_most(claim::SUSY_PAIRING, "relative spectral mismatch", report.susy_residual, 1e-9));
    checks.push(Check::at_most(claim::KERNEL_ORTHONORMAL, "max |B*B - I|", orthonormality, 1e-10));

    let body = json!({
        "N": n,
        "M": m,
        "gauge": report.gauge,
        "tol": tol,
        "eta": eta,
        "flat_case": n == 0,
        "domain_dim": pair.domain_dim(),
        "codomain_dim": pair.codomain_dim(),
        "kernel_dim": kernel_dim,
        "cokernel_dim": report.cokernel_dim,
        "sigma_max": report.sigma_max,
        "sigma_min_nonzero": report.sigma_min_nonzero,
        "gap_degree1": report.gap_degree1,
        "parametrix_norm": report.parametrix_norm,
        "gap_ok": report.gap_ok,
        "susy_residual": report.susy_residual,
        "dstar_d_low": report.dstar_d_low,
        "d_dstar_low": report.d_dstar_low,
        "weitzenbock_levels": WEITZENBOCK_LEVELS,
        "weitzenbock_residual": weitzenbock,
        "kernel_orthonormality_error": orthonormality,
    });
    Ok(Outcome::json("spectral", body, checks))
}
