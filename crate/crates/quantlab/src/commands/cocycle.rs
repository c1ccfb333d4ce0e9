use quantlab_core::algebra::{ball, LatticeElement};
use quantlab_core::symplectic::{
    cocycle_table, derive_cocycle, exterior_derivative, max_identity_defect, pullback, symplectic_scalar, CocycleDeriver,
    PolynomialOneForm, DEFAULT_SAMPLES,
};
use serde::Serialize;
use serde_json::json;

use super::{positive, Outcome};
use crate::checks::{claim, Check};
use crate::cli::CocycleArgs;
use crate::error::CliError;
use crate::formats::{read_json, to_csv, PotentialRecord};

#[derive(Serialize)]
struct Row {
    n1: i64,
    m1: i64,
    n2: i64,
    m2: i64,
    c: f64,
    closed_form: Option<f64>,
    residual: Option<f64>,
    claim: &'static str,
}

fn potential(args: &CocycleArgs) -> Result<PotentialRecord, CliError> {
    match (&args.p, &args.q, &args.potential) {
        (Some(p), Some(q), None) => Ok(PotentialRecord { p: p.clone(), q: q.clone() }),
        (None, None, Some(path)) => read_json(path),
        (None, None, None) => Ok(PotentialRecord::from_form(&PolynomialOneForm::torus_symmetric())),
        _ => Err(CliError::usage("give either a potential file or both inline P and Q")),
    }
}

fn symplectic_area(g1: LatticeElement, g2: LatticeElement) -> f64 {
    (g1.m * g2.n - g1.n * g2.m) as f64
}

pub fn run(args: &CocycleArgs) -> Result<Outcome, CliError> {
    let record = potential(args)?;
    let a = record.to_form()?;
    let radius = args.radius.unwrap_or(10);
    let identity_radius = args.identity_radius.unwrap_or(4);
    if radius < 1 || identity_radius < 1 {
        return Err(CliError::usage("radii must be positive"));
    }
    let tol = positive("tol", args.tol.unwrap_or(1e-10))?;
    let omega0 = symplectic_scalar(&a).ok_or_else(|| CliError::usage("dA must be a nonzero constant form"))?.omega0;
    let sym = PolynomialOneForm::symmetric(omega0);
    let scale = 1.0 + omega0.abs();
    let symmetric = a.p.sub(&sym.p).max_abs() <= 1e-12 * scale && a.q.sub(&sym.q).max_abs() <= 1e-12 * scale;

    let d = exterior_derivative(&a);
    let curvature_residual = [LatticeElement::U, LatticeElement::V]
        .into_iter()
        .map(|g| exterior_derivative(&pullback(&a, g)).sub(&d).max_abs())
        .fold(0.0, f64::max);

    let mut deriver = CocycleDeriver::new(&a);
    let mut phi = Vec::new();
    for g in [LatticeElement::U, LatticeElement::V] {
        let (a0, ax, ay) = deriver.phi(g)?.affine_parts().map_or((None, None, None), |(a0, ax, ay)| (Some(a0), Some(ax), Some(ay)));
        phi.push(json!({"n": g.n, "m": g.m, "a0": a0, "ax": ax, "ay": ay}));
    }
    let c_uv = derive_cocycle(&a, LatticeElement::U, LatticeElement::V, &DEFAULT_SAMPLES)?;

    let elements: Vec<LatticeElement> = ball(radius).collect();
    let side = elements.len();
    let mut values = Vec::with_capacity(side * side);
    for &g1 in &elements {
        for &g2 in &elements {
            values.push(deriver.derive(g1, g2, &DEFAULT_SAMPLES)?);
        }
    }
    let (mut worst_closed, mut worst_antisym): (f64, f64) = (0.0, 0.0);
    let mut rows = Vec::new();
    for (i, &g1) in elements.iter().enumerate() {
        for (j, &g2) in elements.iter().enumerate() {
            let c = values[i * side + j];
            let closed = symmetric.then(|| 0.5 * omega0 * symplectic_area(g1, g2));
            let residual = closed.map(|v| (c - v).abs());
            worst_closed = worst_closed.max(residual.unwrap_or(0.0));
            let antisym = c - values[j * side + i] - omega0 * symplectic_area(g1, g2);
            worst_antisym = worst_antisym.max(antisym.abs());
            if args.table.is_some() {
                rows.push(Row { n1: g1.n, m1: g1.m, n2: g2.n, m2: g2.m, c, closed_form: closed, residual, claim: claim::COCYCLE_CLOSED_FORM });
            }
        }
    }
    let table = cocycle_table(&a, identity_radius)?;
    let identity_defect = max_identity_defect(&table, identity_radius)?;
    if let Some(path) = &args.table {
        std::fs::write(path, to_csv(&rows)?)?;
    }

    let mut checks = Vec::new();
    if symmetric {
        checks.push(Check::at_most(claim::COCYCLE_CLOSED_FORM, "max |c - (omega0/2)(mn' - nm')|", worst_closed, tol));
    }
    checks.push(Check::at_most(claim::COCYCLE_ANTISYMMETRY, "max |c(g,h) - c(h,g) - omega0(mn' - nm')|", worst_antisym, tol));
    checks.push(Check::at_most(claim::COCYCLE_IDENTITY, "max additive cocycle defect", identity_defect, tol));
    checks.push(Check::at_most(claim::CURVATURE_INVARIANCE, "max |d(g*A) - dA|", curvature_residual, tol));
    let body = json!({
        "potential": record,
        "omega0": omega0,
        "symmetric_gauge": symmetric,
        "radius": radius,
        "pairs": side * side,
        "c_uv": c_uv,
        "phi": phi,
        "max_closed_form_residual": symmetric.then_some(worst_closed),
        "max_antisymmetry_residual": worst_antisym,
        "identity_radius": identity_radius,
        "max_identity_defect": identity_defect,
        "curvature_pullback_residual": curvature_residual,
    });
    Ok(Outcome::json("cocycle-check", body, checks))
}
