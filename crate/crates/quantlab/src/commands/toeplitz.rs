use std::f64::consts::PI;

use quantlab_core::toeplitz::{fit_decay, with_running_slopes, DefectKind, ToeplitzContext, DEFECT_FLOOR};
use quantlab_core::trig::TrigPolynomial;
use quantlab_core::C64;
use rayon::prelude::*;
use serde::Serialize;

use super::{positive, to_usize, Outcome};
use crate::checks::{claim, Check};
use crate::cli::{SweepArgs, WeylArgs};
use crate::config::{thread_count, with_pool};
use crate::error::CliError;
use crate::formats::{parse_int_list, symbol_from_table, to_csv};

fn defect_claim(kind: DefectKind) -> &'static str {
    match kind {
        DefectKind::Product => claim::PRODUCT_DECAY,
        DefectKind::Commutator => claim::COMMUTATOR_DECAY,
        DefectKind::FirstOrder => claim::FIRST_ORDER_DECAY,
        DefectKind::TraceLimit => claim::TRACE_LIMIT,
    }
}

fn symbols(args: &SweepArgs) -> Result<(TrigPolynomial, TrigPolynomial), CliError> {
    let fg = args.fg.as_deref().unwrap_or("cos2pix,cos2piy");
    let (f_name, g_name) = fg.split_once(',').ok_or_else(|| CliError::usage(format!("--fg expects \"f,g\", got {fg:?}")))?;
    let named = |name: &str| TrigPolynomial::named(name).ok_or_else(|| CliError::usage(format!("unknown symbol {name:?}")));
    let f = match &args.f_table {
        Some(t) => symbol_from_table(t),
        None => named(f_name)?,
    };
    let g = match &args.g_table {
        Some(t) => symbol_from_table(t),
        None => named(g_name)?,
    };
    Ok((f, g))
}

#[derive(Serialize)]
struct SweepCsvRow {
    kind: &'static str,
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    defect: f64,
    fitted_slope_so_far: Option<f64>,
    claim: &'static str,
}

pub fn sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    let (f, g) = symbols(args)?;
    let ns = to_usize(parse_int_list(args.n.as_deref().unwrap_or("4..32:4"))?, "N", 1)?;
    let kinds: Vec<DefectKind> = args
        .kinds
        .as_deref()
        .unwrap_or("product,commutator,first-order,trace-limit")
        .split(',')
        .map(|t| DefectKind::from_tag(t.trim()).ok_or_else(|| CliError::usage(format!("unknown defect kind {t:?}"))))
        .collect::<Result<_, _>>()?;
    if kinds.contains(&DefectKind::TraceLimit) && !f.is_real(1e-12) {
        return Err(CliError::usage("the trace-limit defect needs a real symbol f"));
    }
    let threads = thread_count(args.threads)?;
    let cells: Vec<Result<(usize, Vec<f64>), CliError>> = with_pool(threads, || {
        ns.par_iter()
            .map(|&n| {
                let ctx = ToeplitzContext::for_flux(n)?;
                let defects = kinds.iter().map(|&k| ctx.defect(k, &f, &g)).collect::<Result<Vec<_>, _>>()?;
                Ok((ctx.grid(), defects))
            })
            .collect()
    })?;
    let cells: Vec<(usize, Vec<f64>)> = cells.into_iter().collect::<Result<_, _>>()?;

    let mut rows = Vec::new();
    let mut checks = Vec::new();
    for (i, &kind) in kinds.iter().enumerate() {
        let triples: Vec<(usize, usize, f64)> = ns.iter().zip(&cells).map(|(&n, (m, d))| (n, *m, d[i])).collect();
        let sweep = with_running_slopes(&triples);
        let fit = fit_decay(&sweep);
        let tag = defect_claim(kind);
        if ns.len() >= 2 {
            checks.push(if fit.at_floor {
                let worst = sweep.iter().map(|r| r.defect).fold(0.0, f64::max);
                Check::at_most(tag, format!("{} defect, all at round-off level", kind.tag()), worst, DEFECT_FLOOR)
            } else {
                Check::at_most(tag, format!("{} log-log slope", kind.tag()), fit.slope.unwrap_or(f64::NAN), kind.slope_bound())
            });
        }
        rows.extend(sweep.iter().map(|r| SweepCsvRow {
            kind: kind.tag(),
            n: r.n,
            m: r.m,
            defect: r.defect,
            fitted_slope_so_far: r.slope_so_far,
            claim: tag,
        }));
    }
    Ok(Outcome::csv(to_csv(&rows)?, checks))
}

#[derive(Serialize)]
struct WeylRow {
    #[serde(rename = "N")]
    n: usize,
    #[serde(rename = "M")]
    m: usize,
    scalar_re: f64,
    scalar_im: f64,
    modulus: f64,
    orientation: &'static str,
    distance: f64,
    residual: f64,
    shift_scale: f64,
    shift_scale_spread: f64,
    claim: &'static str,
}

pub fn weyl(args: &WeylArgs) -> Result<Outcome, CliError> {
    let ns = to_usize(parse_int_list(args.n.as_deref().unwrap_or("2..12"))?, "N", 2)?;
    let tol = positive("tol", args.tol.unwrap_or(1e-8))?;
    let threads = thread_count(args.threads)?;
    let cells: Vec<Result<WeylRow, CliError>> = with_pool(threads, || {
        ns.par_iter()
            .map(|&n| {
                let ctx = ToeplitzContext::for_flux(n)?;
                let w = ctx.weyl_relation()?;
                let e = C64::from_polar(1.0, 2.0 * PI / n as f64);
                let (plus, minus) = ((w.scalar - e).norm(), (w.scalar - e.conj()).norm());
                Ok(WeylRow {
                    n,
                    m: ctx.grid(),
                    scalar_re: w.scalar.re,
                    scalar_im: w.scalar.im,
                    modulus: w.scalar.norm(),
                    orientation: if plus <= minus { "+" } else { "-" },
                    distance: plus.min(minus),
                    residual: w.residual,
                    shift_scale: w.shift_scale,
                    shift_scale_spread: w.shift_scale_spread,
                    claim: claim::WEYL_RELATION,
                })
            })
            .collect()
    })?;
    let rows: Vec<WeylRow> = cells.into_iter().collect::<Result<_, _>>()?;
    let mut checks = Vec::new();
    for r in &rows {
        checks.push(Check::at_most(claim::WEYL_RELATION, format!("N={} distance to e^(+-2 pi i/N)", r.n), r.distance, tol));
        checks.push(Check::at_most(claim::WEYL_RELATION, format!("N={} ||scalar| - 1|", r.n), (r.modulus - 1.0).abs(), 1e-10));
    }
    Ok(Outcome::csv(to_csv(&rows)?, checks))
}
