pub mod lemma;
pub mod order;
pub mod reproduce;

use std::fmt::Write as _;

use num_complex::Complex;
use serde_json::json;
use subord_core::admissibility::{
    check_admissible, sharp_disk_radius, AdmissiblePoint, OmegaRegion, PsiSpec, SearchConfig, StructuredPsi,
    VerdictStatus,
};
use subord_core::catalog::{Example, ExampleSetup};
use subord_core::maps::CanonicalMap;
use subord_core::series::FixedClassSpec;
use subord_core::verifier::{falsify_implication, falsify_subordination_form, FalsifyConfig, ShrinkConfig};
use subord_core::{ClassSpec64, Example64, Map64, Omega64, C64};

pub use lemma::lemma;
pub use order::order;
pub use reproduce::reproduce;

use crate::config::RunConfig;
use crate::expr;
use crate::report::{Check, Report, Row};
use crate::{CliError, FalsifyArgs, Outcome, ProblemArgs, EXIT_FAIL, EXIT_INCONCLUSIVE, EXIT_OK};

/// Tolerance for comparing computed radii with their closed forms.
pub const RADIUS_TOL: f64 = 1e-6;

/// A fully resolved problem: either a catalogued example or a custom one.
pub struct Problem {
    pub setup: Option<Example64>,
    pub psi: StructuredPsi<f64>,
    pub q: Map64,
    pub omega: Omega64,
    pub spec: ClassSpec64,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn real_arg(v: C64, what: &str) -> Result<f64, CliError> {
    if v.im != 0.0 {
        return Err(usage(format!("{what} must be real")));
    }
    Ok(v.re)
}

pub fn parse_map(src: &str) -> Result<Map64, CliError> {
    let (name, args) = expr::call(src)?;
    let arity = |k: usize| {
        if args.len() == k {
            Ok(())
        } else {
            Err(usage(format!("{name} takes {k} arguments")))
        }
    };
    Ok(match name.as_str() {
        "disk" => {
            arity(2)?;
            CanonicalMap::disk(real_arg(args[0], "M")?, args[1])?
        }
        "halfplane" => {
            arity(2)?;
            CanonicalMap::half_plane(real_arg(args[0], "alpha")?, args[1])?
        }
        "affine" => {
            arity(2)?;
            CanonicalMap::affine(args[0], args[1])?
        }
        _ => return Err(usage(format!("unknown map '{name}'"))),
    })
}

fn parse_omega(src: &str) -> Result<Omega64, CliError> {
    let (name, args) = expr::call(src)?;
    if args.len() != 2 {
        return Err(usage(format!("{name} takes 2 arguments")));
    }
    Ok(match name.as_str() {
        "disk" => OmegaRegion::disk(args[0], real_arg(args[1], "radius")?)?,
        "halfplane" => OmegaRegion::half_plane(real_arg(args[0], "gamma")?, args[1]),
        _ => return Err(usage(format!("unknown region '{name}'"))),
    })
}

fn parse_psi(src: &str) -> Result<StructuredPsi<f64>, CliError> {
    let c = expr::split_top_level(src)
        .into_iter()
        .map(|s| expr::parse(s)?.constant())
        .collect::<Result<Vec<_>, _>>()?;
    if c.len() != 5 {
        return Err(usage("psi takes five coefficients: c0, c_r, c_r2, c_s, c_t"));
    }
    Ok(StructuredPsi::new(c[0], c[1], c[2], c[3], c[4]))
}

pub fn problem(a: &ProblemArgs) -> Result<Problem, CliError> {
    let beta = a.beta.ok_or_else(|| usage("--beta is required"))?;
    if let Some(label) = &a.example {
        let example: Example = label.parse()?;
        let n = a.n.unwrap_or(example.default_n());
        let mut setup = ExampleSetup::new(example, n, beta, a.big_m.unwrap_or(1.0))?;
        if let Some(r) = a.radius {
            if !example.has_radius() {
                return Err(usage(format!("example {example} has no disk radius")));
            }
            setup = setup.with_radius(r)?;
        }
        return Ok(Problem {
            psi: setup.psi,
            q: setup.q,
            omega: setup.omega.clone(),
            spec: setup.spec,
            setup: Some(setup),
        });
    }
    let (Some(psi), Some(q), Some(omega)) = (&a.psi, &a.q, &a.omega) else {
        return Err(usage("give --example, or all of --psi, --q and --omega"));
    };
    let q = parse_map(q)?;
    Ok(Problem {
        setup: None,
        psi: parse_psi(psi)?,
        omega: parse_omega(omega)?,
        spec: FixedClassSpec::new(q.q0(), a.n.unwrap_or(1), beta)?,
        q,
    })
}

pub fn fmt_c(c: C64) -> String {
    // no "-0.0000000000" for values that round to zero
    let tidy = |x: f64| if x.abs() < 5e-11 { 0.0 } else { x };
    format!("{:.10}{:+.10}i", tidy(c.re), tidy(c.im))
}

fn fmt_point(p: &AdmissiblePoint<f64>) -> String {
    format!(
        "theta={:.10} m={:.10} tau={} r0={} s0={} t0={}",
        p.theta,
        p.m,
        fmt_c(p.tau),
        fmt_c(p.r0),
        fmt_c(p.s0),
        fmt_c(p.t0)
    )
}

fn status_name(s: &VerdictStatus<f64>) -> &'static str {
    match s {
        VerdictStatus::AdmissibleExact => "AdmissibleExact",
        VerdictStatus::AdmissibleNumeric { .. } => "AdmissibleNumeric",
        VerdictStatus::Violation { .. } => "Violation",
        VerdictStatus::Inconclusive { .. } => "Inconclusive",
        VerdictStatus::BaseOutside { .. } => "BaseOutside",
    }
}

pub fn admissible(a: &ProblemArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = problem(a)?;
    let search = cfg.search(SearchConfig::default());
    let psi: PsiSpec<f64> = p.psi.into();
    let verdict = check_admissible(&psi, &p.omega, &p.q, p.spec.n, p.spec.beta, &search)?;
    let mut report = Report::new("admissible", cfg);
    let mut summary = String::new();
    let _ = writeln!(summary, "verdict: {}", status_name(&verdict.status));
    let _ = writeln!(summary, "m_min: {:.10}", verdict.m_min);
    match &verdict.status {
        VerdictStatus::Violation { witness, psi_value } => {
            let _ = writeln!(summary, "witness: {}", fmt_point(witness));
            let _ = writeln!(summary, "psi at witness: {}", fmt_c(*psi_value));
        }
        VerdictStatus::BaseOutside { psi_value } => {
            let _ = writeln!(summary, "psi(q(0), 0, 0) = {} lies outside Omega", fmt_c(*psi_value));
        }
        VerdictStatus::AdmissibleNumeric { margin } => {
            let _ = writeln!(summary, "numeric margin: {margin:.3e}");
        }
        VerdictStatus::Inconclusive { bounds } => {
            let _ = writeln!(summary, "searched m in [{:.6}, {:.6}]", bounds.m_min, bounds.m_max);
        }
        VerdictStatus::AdmissibleExact => {}
    }
    let centred_disk = matches!(p.omega, OmegaRegion::Disk { center, .. } if center == Complex::new(0.0, 0.0));
    let mut sharp = None;
    if centred_disk {
        if let Ok(r) = sharp_disk_radius(&p.psi, &p.q, p.spec.n, p.spec.beta, &search) {
            let _ = writeln!(summary, "sharp radius: {:.10}{}", r.radius, if r.pinned { "" } else { " (upper bound)" });
            sharp = Some(r);
        }
    }
    if let Some(setup) = &p.setup {
        if let (Some(closed), Some(r)) = (setup.sharp_radius, &sharp) {
            report.rows.push(Row::equal(format!("{:?} sharp radius", setup.example), r.radius, closed, RADIUS_TOL));
        }
        if let Some(threshold) = setup.n_threshold {
            let expected = setup.spec.n as f64 >= threshold - 1e-12;
            report.rows.push(Row::new(
                format!("{:?} admissible iff n >= {threshold:.6}", setup.example),
                verdict.is_admissible() as u8 as f64,
                expected as u8 as f64,
                0.0,
                Check::Equal,
            ));
        }
    }
    report.details = json!({
        "example": p.setup.as_ref().map(|s| s.example.label()),
        "n": p.spec.n,
        "beta": p.spec.beta,
        "verdict": verdict,
        "sharp_radius": sharp,
    });
    let code = match verdict.status {
        VerdictStatus::AdmissibleExact | VerdictStatus::AdmissibleNumeric { .. } => EXIT_OK,
        VerdictStatus::Violation { .. } | VerdictStatus::BaseOutside { .. } => EXIT_FAIL,
        VerdictStatus::Inconclusive { .. } => EXIT_INCONCLUSIVE,
    };
    Ok(Outcome { code, report, summary })
}

pub fn falsify_config(cfg: &RunConfig, default_samples: usize) -> FalsifyConfig {
    FalsifyConfig {
        samples: cfg.samples.unwrap_or(default_samples),
        seed: cfg.seed(),
        grid: cfg.grid(),
        shrink: ShrinkConfig::default(),
        search: cfg.search(SearchConfig::coarse()),
    }
}

pub fn falsify(a: &FalsifyArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let p = problem(&a.problem)?;
    let mut conclusion = p.q;
    if let Some(r) = a.shrink_conclusion {
        conclusion = CanonicalMap::disk(r, p.q.q0())?;
    }
    if let Some(rho) = a.dilate {
        conclusion = conclusion.dilate(rho)?;
    }
    let fc = falsify_config(cfg, 1000);
    let psi: PsiSpec<f64> = p.psi.into();
    let r = if a.h_form {
        let setup = p.setup.as_ref().ok_or_else(|| usage("--h-form needs --example"))?;
        falsify_subordination_form(&psi, &setup.h, &conclusion, &p.spec, &fc)?
    } else {
        falsify_implication(&psi, &p.omega, &conclusion, &p.spec, &fc)?
    };
    let mut summary = String::new();
    let _ = writeln!(
        summary,
        "samples: {}  hypothesis holds (grid-verified): {}  counterexamples: {}{}",
        r.samples_run,
        r.hypothesis_holds_count,
        r.counterexamples.len(),
        if r.exploratory { "  [exploratory: admissibility not confirmed]" } else { "" }
    );
    if let Some(m) = r.min_conclusion_margin {
        let _ = writeln!(summary, "smallest conclusion margin: {m:.6e}");
    }
    for ce in r.counterexamples.iter().take(5) {
        let _ = writeln!(
            summary,
            "counterexample sample {} at z = {}: conclusion margin {:.6e}",
            ce.sample,
            fmt_c(ce.witness),
            ce.conclusion_margin
        );
    }
    let mut report = Report::new("falsify", cfg);
    report.rows.push(Row::new(
        "hypothesis-satisfying samples",
        r.hypothesis_holds_count as f64,
        1.0,
        0.0,
        Check::AtLeast,
    ));
    report.rows.push(Row::new("counterexamples", r.counterexamples.len() as f64, 0.0, 0.0, Check::AtMost));
    let code = if r.vacuous {
        let _ = writeln!(summary, "vacuous: no sample satisfied the hypothesis");
        EXIT_INCONCLUSIVE
    } else if !r.counterexamples.is_empty() {
        EXIT_FAIL
    } else {
        EXIT_OK
    };
    report.details = json!({
        "example": p.setup.as_ref().map(|s| s.example.label()),
        "n": p.spec.n,
        "beta": p.spec.beta,
        "falsification": r,
    });
    Ok(Outcome { code, report, summary })
}
