use quantlab_core::index::{l2_index, natsume_nest_trace, numeric_index_crosscheck, SurfaceData};
use serde_json::json;

use super::{default_grid, parse_gauge, Outcome};
use crate::checks::{claim, Check};
use crate::cli::IndexArgs;
use crate::error::CliError;

pub fn run(args: &IndexArgs) -> Result<Outcome, CliError> {
    if let Some(n) = args.n {
        let m = args.m.unwrap_or_else(|| default_grid(n));
        let r = numeric_index_crosscheck(n, m, parse_gauge(args.gauge.as_deref())?)?;
        let mut checks = Vec::new();
        if !r.flat_case {
            checks.push(Check::holds(claim::INDEX_CROSSCHECK, "kernel dimension equals l2_index(torus, s=N)", r.agrees));
        }
        let body = json!({
            "N": r.n,
            "M": r.m,
            "gauge": r.gauge.tag(),
            "kernel_dim": r.kernel_dim,
            "l2_index": r.formula,
            "agrees": r.agrees,
            "flat_case": r.flat_case,
        });
        return Ok(Outcome::json("index", body, checks));
    }

    let g = args.g.unwrap_or(2);
    let s = args.s.unwrap_or(3.0);
    if !s.is_finite() {
        return Err(CliError::usage("s must be finite"));
    }
    let vol = args.vol.unwrap_or(if g >= 2 { (g - 1) as f64 } else { 1.0 });
    let d0 = args.d0.unwrap_or(0.0);
    let data = SurfaceData::new(g, vol, s, d0)?;
    let index = l2_index(&data);
    let mut checks = Vec::new();
    let natsume = if g >= 2 { Some(natsume_nest_trace(g, s)?) } else { None };
    if let Some(t) = natsume {
        if vol == (g - 1) as f64 && d0 == 0.0 {
            checks.push(Check::at_most(claim::GENUS_TRACE, "|(s-1)(g-1) - l2_index|", (t - index).abs(), 1e-12));
        }
    }
    checks.push(Check::holds(claim::L2_INDEX, "l2_index is finite", index.is_finite()));
    let body = json!({
        "g": g,
        "s": s,
        "vol": vol,
        "d0": d0,
        "experimental": d0 != 0.0,
        "l2_index": index,
        "natsume_nest": natsume,
    });
    Ok(Outcome::json("index", body, checks))
}
