use quantlab_core::fock::{bargmann_closed_form, bargmann_matrix_element, heisenberg_generator_check};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{positive, Outcome};
use crate::checks::{claim, Check};
use crate::cli::{BargmannArgs, HeisenbergArgs};
use crate::config::{thread_count, with_pool};
use crate::error::CliError;
use crate::formats::{parse_float_list, parse_int_list, to_csv};

#[derive(Serialize)]
struct BargmannRow {
    j: i64,
    k: i64,
    s: f64,
    re: f64,
    im: f64,
    closed_form: f64,
    residual: f64,
    claim: &'static str,
}

pub fn bargmann(args: &BargmannArgs) -> Result<Outcome, CliError> {
    let js = parse_int_list(args.j.as_deref().unwrap_or("0..3"))?;
    let ks = parse_int_list(args.k.as_deref().unwrap_or("0..3"))?;
    let ss = parse_float_list(args.s.as_deref().unwrap_or("1,1.7,2.5"))?;
    for &s in &ss {
        positive("s", s)?;
    }
    let tol = positive("tol", args.tol.unwrap_or(1e-8))?;
    let mut cells = Vec::with_capacity(ss.len() * js.len() * ks.len());
    for &s in &ss {
        for &j in &js {
            cells.extend(ks.iter().map(|&k| (j, k, s)));
        }
    }
    let threads = thread_count(args.threads)?;
    let rows: Vec<Result<BargmannRow, CliError>> = with_pool(threads, || {
        cells
            .par_iter()
            .map(|&(j, k, s)| {
                let q = bargmann_matrix_element(j, k, s)?;
                let closed = bargmann_closed_form(j, k, s);
                let residual = (q.re - closed).hypot(q.im);
                Ok(BargmannRow { j, k, s, re: q.re, im: q.im, closed_form: closed, residual, claim: claim::BARGMANN_FORMULA })
            })
            .collect()
    })?;
    let rows: Vec<BargmannRow> = rows.into_iter().collect::<Result<_, _>>()?;
    let worst = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
    let checks = vec![Check::at_most(claim::BARGMANN_FORMULA, "max |quadrature - s^-1 e^{-pi(j^2+k^2)/s}|", worst, tol)];
    Ok(Outcome::csv(to_csv(&rows)?, checks))
}

pub fn heisenberg(args: &HeisenbergArgs) -> Result<Outcome, CliError> {
    let s = positive("s", args.s.unwrap_or(1.0))?;
    let truncation = args.truncation.unwrap_or(60);
    let r = heisenberg_generator_check(s, truncation)?;
    let checks = vec![
        Check::at_most(claim::HEISENBERG_COMMUTATOR, "max |[X,Y] + 2 pi i s| on the inner block", r.commutator_residual, 1e-8),
        Check::at_most(claim::GROUP_COMMUTATOR, "max |group commutator - e^{2 pi i/s}| on the low block", r.group_residual, 1e-6),
        Check::at_most(claim::ZERO_MODE, "max |(X - iY) psi0|", r.zero_mode_residual, 1e-10),
    ];
    let body = json!({
        "s": r.s,
        "truncation": r.truncation,
        "commutator_residual": r.commutator_residual,
        "group_commutator": {"re": r.group_commutator.re, "im": r.group_commutator.im},
        "group_residual": r.group_residual,
        "zero_mode_residual": r.zero_mode_residual,
    });
    Ok(Outcome::json("heisenberg", body, checks))
}
