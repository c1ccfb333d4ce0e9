use std::f64::consts::PI;

use quantlab_core::algebra::{ball, involution, sigma, LatticeElement, RealCocycle, TwistParameter};
use quantlab_core::sections::{gram_positivity, l2_inner, module_inner, module_trace, project_act, GaussianSection};
use quantlab_core::symplectic::PolynomialOneForm;
use quantlab_core::C64;
use serde_json::json;

use super::{positive, Outcome};
use crate::checks::{claim, Check};
use crate::cli::GramArgs;
use crate::error::CliError;
use crate::formats::{algebra_to_records, parse_lattice, read_json, section_to_records, SectionsFile};

/// Largest coefficient, center or wave-vector difference between two sections with aligned terms.
fn section_distance(a: &GaussianSection, b: &GaussianSection) -> f64 {
    a.terms()
        .iter()
        .zip(b.terms())
        .map(|(x, y)| {
            let mut d = (x.coeff - y.coeff).norm();
            for k in 0..2 {
                d = d.max((x.center[k] - y.center[k]).abs()).max((x.wave[k] - y.wave[k]).abs());
            }
            d
        })
        .fold(0.0, f64::max)
}

pub fn run(args: &GramArgs) -> Result<Outcome, CliError> {
    let s_value = positive("s", args.s.unwrap_or(2.0))?;
    let s = TwistParameter::new(s_value);
    let radius = args.radius.unwrap_or(6);
    let rep_radius = args.rep_radius.unwrap_or(6);
    if radius < 1 || rep_radius < 1 {
        return Err(CliError::usage("radii must be positive"));
    }
    let vacuum = args.sections.is_none();
    let sections = match &args.sections {
        Some(path) => read_json::<SectionsFile>(path)?.into_sections()?,
        None => vec![GaussianSection::vacuum(s_value)],
    };
    let gauge = PolynomialOneForm::torus_symmetric();
    let c = RealCocycle::default();
    let psi = &sections[0];

    let gram = module_inner(psi, psi, &gauge, s, radius)?;
    let trace = module_trace(psi, &gauge, &c, s, radius)?;
    let l2 = l2_inner(psi, psi)?.re;
    let positivity = gram_positivity(&sections, &gauge, &c, s, radius, rep_radius)?;
    let self_adjoint = involution(&gram, &c, s)?.max_abs_diff(&gram);

    let (u, v) = (LatticeElement::U, LatticeElement::V);
    let twice = project_act(&project_act(psi, u, &gauge, s)?, v, &gauge, s)?;
    let once = project_act(psi, u * v, &gauge, s)?.scale(sigma(&c, s, u, v)?);
    let twist = section_distance(&twice, &once);

    let mut checks = vec![
        Check::at_least(claim::MODULE_POSITIVITY, "min eigenvalue of the Gram matrix", positivity.min_eigenvalue, -1e-9),
        Check::at_most(claim::MODULE_POSITIVITY, "max |<psi|psi>* - <psi|psi>|", self_adjoint, 1e-12),
        Check::at_most(claim::MODULE_TRACE, "|tau(<psi|psi>) - (psi,psi)|", (trace - l2).abs(), 1e-12 * (1.0 + l2)),
        Check::at_most(claim::PROJECTIVE_ACTION, "max |(psi.u).v - sigma(u,v) psi.(uv)|", twist, 1e-12),
    ];
    let mut vacuum_residual = None;
    if vacuum {
        let worst = ball(radius)
            .map(|g| {
                let want = (-(PI * s_value / 2.0) * (g.n * g.n + g.m * g.m) as f64).exp() / s_value;
                (gram.coefficient(g) - C64::new(want, 0.0)).norm()
            })
            .fold(0.0, f64::max);
        checks.push(Check::at_most(claim::GRAM_VACUUM, "max |<psi0|psi0>_g - e^{-(pi s/2)|g|^2}/s|", worst, 1e-10));
        vacuum_residual = Some(worst);
    }
    let acted = match &args.act {
        Some(spec) => Some(section_to_records(&project_act(psi, parse_lattice(spec)?, &gauge, s)?)),
        None => None,
    };
    let body = json!({
        "s": s_value,
        "radius": radius,
        "rep_radius": rep_radius,
        "sections": sections.len(),
        "gram": algebra_to_records(&gram),
        "module_trace": trace,
        "l2_norm_squared": l2,
        "tail_bound": positivity.tail_bound,
        "min_eigenvalue": positivity.min_eigenvalue,
        "gram_matrix_dim": positivity.dim,
        "vacuum_residual": vacuum_residual,
        "acted": acted,
    });
    Ok(Outcome::json("module-gram", body, checks))
}
