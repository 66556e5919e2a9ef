use std::fmt::Write as _;

use serde::Serialize;
use serde_json::json;
use subord_core::gft::{
    sqrt_deriv_residual, standard_corpus, starlike_cubic, verify_order_theorem, ConvexFunction, OrderGrid,
    OrderReport, OrderTheorem,
};

use crate::config::RunConfig;
use crate::report::{Check, Report, Row};
use crate::{CliError, OrderArgs, Outcome, EXIT_FAIL, EXIT_OK};

/// Tolerance of the corpus checks.
pub const CORPUS_TOL: f64 = 1e-3;
/// Tolerance on the residual of the defining equation.
pub const RESIDUAL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Serialize)]
pub struct OrderRow {
    pub a2_mag: f64,
    pub alpha: f64,
    pub residual: f64,
}

/// `|a2| -> alpha` together with the residual of the equation it solves.
pub fn order_row(theorem: OrderTheorem, a2: f64) -> Result<OrderRow, CliError> {
    let alpha = theorem.order(a2)?;
    let residual = match theorem {
        OrderTheorem::Starlike => starlike_cubic(a2, alpha).abs(),
        OrderTheorem::SqrtDerivative => sqrt_deriv_residual(a2, alpha),
        // the ratio form is the derivative form at |a2|/2
        OrderTheorem::SqrtRatio => sqrt_deriv_residual(a2 / 2.0, alpha),
    };
    Ok(OrderRow {
        a2_mag: a2,
        alpha,
        residual,
    })
}

pub fn linspace(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    match count {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..count).map(|k| lo + (hi - lo) * k as f64 / (count - 1) as f64).collect(),
    }
}

fn parse_sweep(s: &str) -> Result<Vec<f64>, CliError> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || CliError::Usage(format!("sweep must be lo:hi:count, got '{s}'"));
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].trim().parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].trim().parse().map_err(|_| bad())?;
    let count: usize = parts[2].trim().parse().map_err(|_| bad())?;
    if count == 0 {
        return Err(bad());
    }
    Ok(linspace(lo, hi, count))
}

/// The function a theorem is checked on: the corpus member itself, or its
/// Alexander transform for the ratio form.
pub fn corpus_check(
    theorem: OrderTheorem,
    f: &ConvexFunction<f64>,
    grid: &OrderGrid,
) -> Result<OrderReport<f64>, CliError> {
    Ok(match theorem {
        OrderTheorem::SqrtRatio => verify_order_theorem(theorem, &f.alexander(), grid, CORPUS_TOL)?,
        _ => verify_order_theorem(theorem, f, grid, CORPUS_TOL)?,
    })
}

pub fn order_grid(cfg: &RunConfig) -> OrderGrid {
    let base = OrderGrid::default();
    OrderGrid {
        angles: cfg.angles.unwrap_or(base.angles),
        ..base
    }
}

pub fn order(a: &OrderArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let theorem: OrderTheorem = a.theorem.parse()?;
    let values = match (&a.a2, &a.sweep) {
        (Some(x), _) => vec![*x],
        (None, Some(s)) => parse_sweep(s)?,
        (None, None) => linspace(0.0, theorem.a2_max(), 11),
    };
    let rows = values
        .iter()
        .map(|&b| order_row(theorem, b))
        .collect::<Result<Vec<_>, _>>()?;
    let mut summary = String::new();
    let _ = writeln!(summary, "{:>12}  {:>16}  {:>10}", "|a2|", "alpha", "residual");
    for r in &rows {
        let _ = writeln!(summary, "{:>12.6}  {:>16.12}  {:>10.2e}", r.a2_mag, r.alpha, r.residual);
    }
    let mut report = Report::new("order", cfg);
    for r in &rows {
        report.rows.push(Row::new(
            format!("{theorem:?} residual at |a2| = {:.6}", r.a2_mag),
            r.residual,
            0.0,
            RESIDUAL_TOL,
            Check::AtMost,
        ));
    }
    let mut corpus = Vec::new();
    if a.verify {
        let grid = order_grid(cfg);
        for f in standard_corpus::<f64>()? {
            let rep = corpus_check(theorem, &f, &grid)?;
            report.rows.push(Row::new(
                format!("{theorem:?} {:?} c = {}", f.kind, super::fmt_c(f.c)),
                rep.infimum,
                rep.alpha,
                CORPUS_TOL,
                Check::AtLeast,
            ));
            corpus.push(rep);
        }
    }
    report.details = json!({ "theorem": theorem.label(), "orders": rows, "corpus": corpus });
    let code = if report.all_pass() { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome { code, report, summary })
}
