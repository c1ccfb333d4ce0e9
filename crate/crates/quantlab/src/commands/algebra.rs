use std::f64::consts::PI;
use std::path::Path;

use quantlab_core::algebra::{
    ball, involution, multiply, norm_estimate, norm_profile, regular_representation, trace, AlgebraElement, LatticeElement,
    RealCocycle, TwistParameter,
};
use quantlab_core::C64;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{positive, Outcome};
use crate::checks::{claim, Check};
use crate::cli::{AlgebraArgs, AlgebraOp};
use crate::config::{thread_count, with_pool};
use crate::error::CliError;
use crate::formats::{algebra_from_records, algebra_to_records, parse_float_list, read_json, to_csv, CoefficientRecord};

fn element(spec: &str) -> Result<AlgebraElement, CliError> {
    Ok(match spec {
        "harper" => AlgebraElement::harper(),
        "one" => AlgebraElement::one(),
        "u" => AlgebraElement::basis(LatticeElement::U),
        "v" => AlgebraElement::basis(LatticeElement::V),
        path => algebra_from_records(&read_json::<Vec<CoefficientRecord>>(Path::new(path))?),
    })
}

/// `Σ|a_γ|²`, the value of `τ(a*a)`.
fn parseval(a: &AlgebraElement) -> f64 {
    a.iter().map(|(_, z)| z.norm_sqr()).sum()
}

fn star_checks(a: &AlgebraElement, c: &RealCocycle, s: TwistParameter) -> Result<Vec<Check>, CliError> {
    let star = involution(a, c, s)?;
    let twice = involution(&star, c, s)?;
    let t = trace(&multiply(&star, a, c, s)?, c, s)?;
    let p = parseval(a);
    Ok(vec![
        Check::at_most(claim::INVOLUTION, "max |a** - a|", twice.max_abs_diff(a), 1e-13 * (1.0 + a.l1_norm())),
        Check::at_most(claim::TRACE_PROPERTY, "|tau(a*a) - sum |a_g|^2|", (t - C64::new(p, 0.0)).norm(), 1e-12 * (1.0 + p)),
    ])
}

#[derive(Serialize)]
struct RepRow {
    row: usize,
    col: usize,
    n_row: i64,
    m_row: i64,
    n_col: i64,
    m_col: i64,
    re: f64,
    im: f64,
    claim: &'static str,
}

#[derive(Serialize)]
struct ProfileRow {
    s: f64,
    norm: f64,
    /// Change from the previous grid point.
    jump: Option<f64>,
    radius: i64,
    claim: &'static str,
}

pub fn run(args: &AlgebraArgs) -> Result<Outcome, CliError> {
    let op = args.op.ok_or_else(|| CliError::usage("algebra needs an operation: mult, star, trace, rep, norm or norm-profile"))?;
    let a_spec = args.a.clone().unwrap_or_else(|| "harper".into());
    let a = element(&a_spec)?;
    let s_value = args.s.unwrap_or(0.5);
    if !s_value.is_finite() {
        return Err(CliError::usage("s must be finite"));
    }
    let s = TwistParameter::new(s_value);
    let kappa = args.kappa.unwrap_or(PI);
    let c = RealCocycle::closed_form(kappa);
    let radius = args.radius.unwrap_or(8);
    if radius < 1 {
        return Err(CliError::usage("radius must be positive"));
    }
    let header = json!({"op": op.tag(), "a": a_spec, "s": s_value, "kappa": kappa});
    let merge = |extra: serde_json::Value| {
        let mut h = header.clone();
        h.as_object_mut().unwrap().extend(extra.as_object().unwrap().clone());
        h
    };

    match op {
        AlgebraOp::Mult => {
            let b_spec = args.b.clone().unwrap_or_else(|| a_spec.clone());
            let b = element(&b_spec)?;
            let ab = multiply(&a, &b, &c, s)?;
            let ba = multiply(&b, &a, &c, s)?;
            let (u, v) = (AlgebraElement::basis(LatticeElement::U), AlgebraElement::basis(LatticeElement::V));
            let uv = multiply(&u, &v, &c, s)?;
            let vu = multiply(&v, &u, &c, s)?;
            let commutation = vu.max_abs_diff(&uv.scale(C64::from_polar(1.0, 2.0 * kappa * s.s)));
            let tab = trace(&ab, &c, s)?;
            let tba = trace(&ba, &c, s)?;
            let checks = vec![
                Check::at_most(claim::TORUS_COMMUTATION, "max |[v][u] - e^{2i kappa s}[u][v]|", commutation, 4.0 * f64::EPSILON),
                Check::at_most(claim::TRACE_PROPERTY, "|tau(ab) - tau(ba)|", (tab - tba).norm(), 1e-12 * (1.0 + a.l1_norm() * b.l1_norm())),
            ];
            let body = merge(json!({"b": b_spec, "product": algebra_to_records(&ab)}));
            Ok(Outcome::json("algebra", body, checks))
        }
        AlgebraOp::Star => {
            let star = involution(&a, &c, s)?;
            let body = merge(json!({"involution": algebra_to_records(&star)}));
            Ok(Outcome::json("algebra", body, star_checks(&a, &c, s)?))
        }
        AlgebraOp::Trace => {
            let t = trace(&a, &c, s)?;
            let body = merge(json!({"trace": {"re": t.re, "im": t.im}}));
            Ok(Outcome::json("algebra", body, star_checks(&a, &c, s)?))
        }
        AlgebraOp::Rep => {
            let rep = regular_representation(&a, &c, s, radius)?;
            let mut sites = vec![LatticeElement::IDENTITY; rep.dim()];
            for g in ball(radius) {
                sites[rep.index_of(g).expect("ball element")] = g;
            }
            let e = rep.index_of(LatticeElement::IDENTITY).expect("identity in ball");
            let mut column = AlgebraElement::zero();
            let mut rows = Vec::with_capacity(rep.entries().len());
            for &(r, col, z) in rep.entries() {
                let (gr, gc) = (sites[r], sites[col]);
                if col == e {
                    column.add_term(gr, z);
                }
                rows.push(RepRow { row: r, col, n_row: gr.n, m_row: gr.m, n_col: gc.n, m_col: gc.m, re: z.re, im: z.im, claim: claim::REGULAR_REPRESENTATION });
            }
            let inside = AlgebraElement::from_terms(a.iter().filter(|(g, _)| g.sup_norm() <= radius));
            let checks = vec![Check::at_most(claim::REGULAR_REPRESENTATION, "max |rep(a) delta_e - a|", column.max_abs_diff(&inside), 1e-14)];
            Ok(Outcome::csv(to_csv(&rows)?, checks))
        }
        AlgebraOp::Norm => {
            let norm = norm_estimate(&a, &c, s, radius)?;
            let mut checks = vec![Check::at_most(claim::REDUCED_NORM, "norm - l1 norm", norm - a.l1_norm(), 1e-10)];
            let mut smaller = None;
            if radius > 1 {
                let n0 = norm_estimate(&a, &c, s, radius - 1)?;
                checks.push(Check::at_least(claim::REDUCED_NORM, "norm(R) - norm(R-1)", norm - n0, -1e-10));
                smaller = Some(n0);
            }
            let body = merge(json!({"radius": radius, "norm": norm, "norm_radius_minus_one": smaller, "l1_norm": a.l1_norm()}));
            Ok(Outcome::json("algebra", body, checks))
        }
        AlgebraOp::NormProfile => {
            let grid = parse_float_list(args.s_grid.as_deref().unwrap_or("0..1/21"))?;
            let threads = thread_count(args.threads)?;
            let cells: Vec<Result<(f64, f64), CliError>> = with_pool(threads, || {
                grid.par_iter()
                    .map(|&x| Ok(norm_profile(&a, &[x], &c, radius, f64::INFINITY)?.rows[0]))
                    .collect()
            })?;
            let rows: Vec<(f64, f64)> = cells.into_iter().collect::<Result<_, _>>()?;
            let worst_l1 = rows.iter().map(|r| r.1 - a.l1_norm()).fold(f64::NEG_INFINITY, f64::max);
            let mut checks = vec![Check::at_most(claim::REDUCED_NORM, "max norm - l1 norm", worst_l1, 1e-10)];
            if let Some(threshold) = args.continuity {
                let jump = rows.windows(2).map(|w| (w[1].1 - w[0].1).abs()).fold(0.0, f64::max);
                checks.push(Check::at_most(claim::REDUCED_NORM, "max jump between adjacent s", jump, positive("continuity", threshold)?));
            }
            let out: Vec<ProfileRow> = rows
                .iter()
                .enumerate()
                .map(|(i, &(s, norm))| ProfileRow {
                    s,
                    norm,
                    jump: i.checked_sub(1).map(|p| (norm - rows[p].1).abs()),
                    radius,
                    claim: claim::REDUCED_NORM,
                })
                .collect();
            Ok(Outcome::csv(to_csv(&out)?, checks))
        }
    }
}
