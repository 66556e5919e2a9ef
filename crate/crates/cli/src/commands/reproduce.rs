use num_complex::Complex;
use serde_json::json;
use subord_core::admissibility::{
    check_admissible, is_admissible_triple, min_admissible_n, sharp_disk_radius, PsiSpec, SearchConfig,
    VerdictStatus,
};
use subord_core::catalog::{Example, ExampleSetup};
use subord_core::gft::{
    convex_family, sqrt_deriv_order, sqrt_ratio_order, standard_corpus, starlike_order_of_convex, verify_order_theorem,
    ConvexKind, OrderTheorem,
};
use subord_core::lemmas::{verify_interior_max, LemmaTolerance};
use subord_core::maps::CanonicalMap;
use subord_core::series::Series;
use subord_core::verifier::falsify_implication;

use super::lemma::{contact_suite, extremal_gap, schwarz_suite, EXTREMAL_TOL};
use super::order::{corpus_check, linspace, order_grid, CORPUS_TOL};
use super::{falsify_config, RADIUS_TOL};
use crate::config::RunConfig;
use crate::report::{Check, Report, Row};
use crate::{CliError, Outcome, EXIT_FAIL, EXIT_OK};

/// Admissible parameters used for the falsification runs.
pub const FALSIFY_PARAMS: [(Example, usize, f64); 5] = [
    (Example::SumDisk, 1, 1.0),
    (Example::QuadraticDisk, 1, 0.5),
    (Example::FirstOrderHalfPlane, 2, 0.5),
    (Example::SecondOrderHalfPlane, 2, 0.1),
    (Example::AffineDisk, 2, 0.5),
];

fn name(e: Example) -> String {
    format!("{e:?}")
}

fn sharp_radii(rows: &mut Vec<Row>, search: &SearchConfig) -> Result<(), CliError> {
    let radius = |e: Example, n: usize, beta: f64, m: f64| -> Result<(f64, f64), CliError> {
        let s = ExampleSetup::<f64>::new(e, n, beta, m)?;
        let r = sharp_disk_radius(&s.psi, &s.q, n, beta, search)?;
        Ok((r.radius, s.sharp_radius.unwrap_or(f64::NAN)))
    };
    for n in [1, 2, 3] {
        for m in [0.5, 1.0, 2.0] {
            for ratio in [0.25, 0.5, 1.0] {
                let (got, closed) = radius(Example::SumDisk, n, ratio * m, m)?;
                rows.push(Row::equal(
                    format!("SumDisk R* n={n} M={m} beta={}", ratio * m),
                    got,
                    closed,
                    RADIUS_TOL,
                ));
            }
        }
    }
    let (got, _) = radius(Example::SumDisk, 1, 1.0, 1.0)?;
    rows.push(Row::equal("SumDisk R* at n=1, M=beta=1", got, 2.0, 1e-12));
    for beta in [0.5, 1.0, 2.0] {
        let (got, _) = radius(Example::QuadraticDisk, 1, beta, 1.0)?;
        rows.push(Row::equal(
            format!("QuadraticDisk R* beta={beta}"),
            got,
            (6.0 - beta) / (2.0 + beta),
            RADIUS_TOL,
        ));
    }
    let (got, _) = radius(Example::QuadraticDisk, 1, 2.0, 1.0)?;
    rows.push(Row::equal("QuadraticDisk R* at beta=2", got, 1.0, RADIUS_TOL));
    for beta in [0.25, 0.5, 1.0] {
        let (got, _) = radius(Example::AffineDisk, 2, beta, 1.0)?;
        rows.push(Row::equal(
            format!("AffineDisk R* beta={beta}"),
            got,
            4.0 * (3.0 + 2.0 * beta) / ((1.0 + beta) * (1.0 + beta)),
            RADIUS_TOL,
        ));
    }
    let (got, _) = radius(Example::AffineDisk, 2, 1.0, 1.0)?;
    rows.push(Row::equal("AffineDisk R* at beta=1", got, 5.0, RADIUS_TOL));
    Ok(())
}

fn thresholds(rows: &mut Vec<Row>, search: &SearchConfig) -> Result<(), CliError> {
    for e in [Example::FirstOrderHalfPlane, Example::SecondOrderHalfPlane] {
        for beta in [0.5, 1.0, 2.0] {
            for n in [1, 2, 3] {
                let s = ExampleSetup::<f64>::new(e, n, beta, 1.0)?;
                let v = check_admissible(&s.psi.into(), &s.omega, &s.q, n, beta, search)?;
                let expected = n as f64 >= s.n_threshold.unwrap_or(f64::INFINITY) - 1e-12;
                rows.push(Row::equal(
                    format!("{} admissible n={n} beta={beta}", name(e)),
                    v.is_admissible() as u8 as f64,
                    expected as u8 as f64,
                    0.0,
                ));
            }
        }
        let s = ExampleSetup::<f64>::new(e, 1, 2.0, 1.0)?;
        let psi: PsiSpec<f64> = s.psi.into();
        let n_min = min_admissible_n(&psi, &s.q, 2.0, &s.omega, search)?;
        rows.push(Row::equal(format!("{} smallest admissible n at beta=2", name(e)), n_min as f64, 2.0, 0.0));
        let v = check_admissible(&psi, &s.omega, &s.q, 1, 2.0, search)?;
        let witness_ok = match v.status {
            VerdictStatus::Violation { witness: w, psi_value } => {
                is_admissible_triple(&s.q, 1, 2.0, w.r0, w.s0, w.t0, 1e-9) && s.omega.contains(psi_value)
            }
            _ => false,
        };
        rows.push(Row::flag(format!("{} violation witness at n=1, beta=2", name(e)), witness_ok));
    }
    Ok(())
}

fn orders(rows: &mut Vec<Row>) -> Result<(), CliError> {
    rows.push(Row::equal("Starlike alpha(|a2|=1)", starlike_order_of_convex(1.0)?.alpha, 0.5, 1e-10));
    rows.push(Row::equal(
        "Starlike alpha(|a2|=0)",
        starlike_order_of_convex(0.0)?.alpha,
        (5f64.sqrt() - 1.0) / 2.0,
        1e-10,
    ));
    rows.push(Row::equal(
        "Starlike alpha(|a2|=0.25)",
        starlike_order_of_convex(0.25)?.alpha,
        0.5739434919202448,
        1e-10,
    ));
    rows.push(Row::equal("SqrtDerivative alpha(|a2|=1)", sqrt_deriv_order(1.0)?, 0.5, 1e-12));
    rows.push(Row::equal("SqrtDerivative alpha(|a2|=0)", sqrt_deriv_order(0.0)?, 2.0 / 3.0, 1e-12));
    rows.push(Row::equal(
        "SqrtDerivative alpha(|a2|=0.5)",
        sqrt_deriv_order(0.5)?,
        (10.5 - 14.25f64.sqrt()) / 12.0,
        1e-12,
    ));
    rows.push(Row::equal("SqrtRatio alpha(|a2|=2)", sqrt_ratio_order(2.0)?, 0.5, 1e-12));
    rows.push(Row::equal("SqrtRatio alpha(|a2|=0)", sqrt_ratio_order(0.0)?, 2.0 / 3.0, 1e-12));
    let mut identity = 0.0f64;
    for b in linspace(0.0, 2.0, 100) {
        identity = identity.max((sqrt_ratio_order(b)? - sqrt_deriv_order(b / 2.0)?).abs());
    }
    rows.push(Row::new("SqrtRatio(b) - SqrtDerivative(b/2), 100 values", identity, 0.0, 1e-12, Check::AtMost));
    for t in OrderTheorem::ALL {
        let alphas = linspace(0.0, t.a2_max(), 101)
            .into_iter()
            .map(|b| t.order(b))
            .collect::<Result<Vec<f64>, _>>()?;
        let rises = alphas.windows(2).filter(|w| !(w[1] < w[0])).count();
        rows.push(Row::new(format!("{t:?} non-decreasing steps in sweep"), rises as f64, 0.0, 0.0, Check::AtMost));
        let floor = alphas.iter().copied().fold(f64::INFINITY, f64::min);
        rows.push(Row::new(format!("{t:?} smallest alpha in sweep"), floor, 0.5, 1e-12, Check::AtLeast));
    }
    Ok(())
}

fn corpus(rows: &mut Vec<Row>, cfg: &RunConfig) -> Result<(), CliError> {
    let grid = order_grid(cfg);
    let members = standard_corpus::<f64>()?;
    for t in OrderTheorem::ALL {
        let mut worst = f64::INFINITY;
        for f in &members {
            let rep = corpus_check(t, f, &grid)?;
            worst = worst.min(rep.infimum - rep.alpha);
        }
        rows.push(Row::new(
            format!("{t:?} corpus: min(infimum - alpha) over {}", members.len()),
            worst,
            0.0,
            CORPUS_TOL,
            Check::AtLeast,
        ));
    }
    let f = convex_family(ConvexKind::HalfPlaneType, Complex::new(1.0, 0.0))?;
    let rep = verify_order_theorem(OrderTheorem::Starlike, &f, &grid, CORPUS_TOL)?;
    rows.push(Row::equal("z/(1-z): inf Re(z f'/f)", rep.infimum, 0.5, CORPUS_TOL));
    Ok(())
}

fn lemmas(rows: &mut Vec<Row>, cfg: &RunConfig) -> Result<(), CliError> {
    let seed = cfg.seed();
    rows.extend(schwarz_suite(cfg.trials.unwrap_or(1000), seed)?.rows("Schwarz bound"));
    rows.push(Row::new("Schwarz extremal gap", extremal_gap()?, 0.0, EXTREMAL_TOL, Check::AtMost));
    rows.extend(contact_suite(cfg.trials.unwrap_or(500), seed)?.rows("boundary contact"));
    let g = Series::monomial(Complex::new(1.0, 0.0), 2);
    let z0 = Complex::from_polar(0.7, std::f64::consts::FRAC_PI_3);
    let rep = verify_interior_max(&g, z0, &LemmaTolerance::default())?;
    rows.push(Row::equal("interior max of z^2: m", rep.m, 2.0, 1e-12));
    rows.push(Row::equal("interior max of z^2: lower bound", rep.m_lower, 2.0, 1e-12));
    Ok(())
}

fn falsification(rows: &mut Vec<Row>, cfg: &RunConfig) -> Result<serde_json::Value, CliError> {
    let fc = falsify_config(cfg, 1000);
    let mut summaries = Vec::new();
    for (e, n, beta) in FALSIFY_PARAMS {
        let s = ExampleSetup::<f64>::new(e, n, beta, 1.0)?;
        let r = falsify_implication(&s.psi.into(), &s.omega, &s.q, &s.spec, &fc)?;
        rows.push(Row::new(
            format!("{} hypothesis-satisfying samples", name(e)),
            r.hypothesis_holds_count as f64,
            fc.samples as f64,
            0.0,
            Check::AtLeast,
        ));
        rows.push(Row::new(
            format!("{} counterexamples", name(e)),
            r.counterexamples.len() as f64,
            0.0,
            0.0,
            Check::AtMost,
        ));
        rows.push(Row::flag(format!("{} admissibility confirmed", name(e)), !r.exploratory));
        summaries.push(json!({
            "example": e.label(),
            "n": n,
            "beta": beta,
            "hypothesis_holds": r.hypothesis_holds_count,
            "counterexamples": r.counterexamples.len(),
            "min_conclusion_margin": r.min_conclusion_margin,
        }));
    }
    let s = ExampleSetup::<f64>::new(Example::SumDisk, 1, 1.0, 1.0)?;
    let small = CanonicalMap::disk(0.5, Complex::new(0.0, 0.0))?;
    let mut control = fc.clone();
    control.samples = fc.samples.min(100);
    let r = falsify_implication(&s.psi.into(), &s.omega, &small, &s.spec, &control)?;
    rows.push(Row::new(
        "shrunken conclusion: counterexamples",
        r.counterexamples.len() as f64,
        1.0,
        0.0,
        Check::AtLeast,
    ));
    Ok(json!({ "runs": summaries, "negative_control_counterexamples": r.counterexamples.len() }))
}

pub fn reproduce(cfg: &RunConfig) -> Result<Outcome, CliError> {
    let search = cfg.search(SearchConfig::default());
    let mut report = Report::new("reproduce", cfg);
    let mut rows = Vec::new();
    sharp_radii(&mut rows, &search)?;
    thresholds(&mut rows, &search)?;
    orders(&mut rows)?;
    corpus(&mut rows, cfg)?;
    lemmas(&mut rows, cfg)?;
    let details = falsification(&mut rows, cfg)?;
    report.rows = rows;
    report.details = json!({ "seed": cfg.seed(), "falsification": details });
    let failed = report.rows.iter().filter(|r| !r.pass).count();
    let summary = format!("{} claims, {} failed\n", report.rows.len(), failed);
    let code = if failed == 0 { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome { code, report, summary })
}
