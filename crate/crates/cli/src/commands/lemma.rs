use std::fmt::Write as _;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;
use subord_core::lemmas::{
    first_contact, max_modulus_point, min_real_point, random_disk_point, sample_contact_pair, schwarz_bound,
    schwarz_extremal, verify_boundary_contact, verify_interior_max, verify_max_modulus_growth, verify_min_re,
    LemmaTolerance, SchwarzFunction, CIRCLE_SAMPLES,
};
use subord_core::maps::CanonicalMap;
use subord_core::series::{FixedClassSpec, Series};
use subord_core::{Analytic, Map64, Series64, C64};

use super::{fmt_c, parse_map};
use crate::config::RunConfig;
use crate::expr;
use crate::report::{Check, Report, Row};
use crate::{CliError, LemmaArgs, Outcome, EXIT_FAIL, EXIT_OK};

/// Allowed excess over the Schwarz bound.
pub const SCHWARZ_TOL: f64 = 1e-10;
/// Allowed gap between the extremal function and the bound.
pub const EXTREMAL_TOL: f64 = 1e-8;
/// Allowed negative slack in the contact inequalities.
pub const SLACK_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Which {
    Schwarz,
    Interior,
    Contact,
    Growth,
    MinRe,
}

impl Which {
    fn parse(s: &str) -> Result<Self, CliError> {
        Ok(match s.trim().to_ascii_lowercase().replace('_', "-").as_str() {
            "schwarz" | "1.1" => Which::Schwarz,
            "interior" | "interior-max" | "2.1" => Which::Interior,
            "contact" | "boundary-contact" | "2.2" => Which::Contact,
            "growth" | "max-modulus" | "2.3" => Which::Growth,
            "min-re" | "real-part" | "2.4" => Which::MinRe,
            other => return Err(CliError::Usage(format!("unknown lemma '{other}'"))),
        })
    }
}

/// Outcome of a randomized lemma suite. `min_slack` is the smallest margin
/// by which the checked inequality held (negative: violated).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Suite {
    pub which: Which,
    pub trials: usize,
    pub checked: usize,
    pub failures: usize,
    pub min_slack: f64,
}

impl Suite {
    fn new(which: Which, trials: usize) -> Self {
        Suite {
            which,
            trials,
            checked: 0,
            failures: 0,
            min_slack: f64::INFINITY,
        }
    }

    fn record(&mut self, pass: bool, slack: f64) {
        self.checked += 1;
        self.failures += usize::from(!pass);
        self.min_slack = self.min_slack.min(slack);
    }

    pub fn rows(&self, label: &str) -> Vec<Row> {
        let tol = if self.which == Which::Schwarz { SCHWARZ_TOL } else { SLACK_TOL };
        vec![
            Row::new(format!("{label}: failures in {} checks", self.checked), self.failures as f64, 0.0, 0.0, Check::AtMost),
            Row::new(format!("{label}: smallest slack"), self.min_slack, 0.0, tol, Check::AtLeast),
        ]
    }
}

/// Random Schwarz functions `w` with `w'(0) = a1`, each checked at 32 random
/// points against `|w(z)| <= r (r + |a1|)/(1 + |a1| r)`.
pub fn schwarz_suite(trials: usize, seed: u64) -> Result<Suite, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut suite = Suite::new(Which::Schwarz, trials);
    for _ in 0..trials {
        let a1 = random_disk_point::<f64, _>(&mut rng, 1.0);
        let w = SchwarzFunction::random(1, a1, &mut rng)?;
        let mut slack = f64::INFINITY;
        for _ in 0..32 {
            let z = random_disk_point::<f64, _>(&mut rng, 1.0);
            slack = slack.min(schwarz_bound(a1.norm(), z.norm())? - w.value(z).norm());
        }
        suite.record(slack >= -SCHWARZ_TOL, slack);
    }
    Ok(suite)
}

/// Largest gap between the extremal function and the bound on the positive
/// axis.
pub fn extremal_gap() -> Result<f64, CliError> {
    let mut gap = 0.0f64;
    for a in [0.0f64, 0.3, 0.6, 0.9] {
        let w = schwarz_extremal(Complex::new(a, 0.0), 0.0, 400)?;
        for r in [0.2f64, 0.5, 0.8, 0.9] {
            gap = gap.max((w.value(Complex::new(r, 0.0)).norm() - schwarz_bound(a, r)?).abs());
        }
    }
    Ok(gap)
}

fn contact_maps() -> Result<Vec<Map64>, CliError> {
    let c = Complex::new;
    Ok(vec![
        CanonicalMap::disk(1.0, c(0.0, 0.0))?,
        CanonicalMap::disk(2.0, c(0.5, 0.5))?,
        CanonicalMap::half_plane(0.0, c(1.0, 0.0))?,
        CanonicalMap::half_plane(-0.5, c(0.5, 1.0))?,
        CanonicalMap::affine(c(1.0, 0.0), c(1.0, 0.0))?,
    ])
}

/// Sampled pairs `p = q(lambda w)` leaving `q(D)`, checked at their first
/// boundary contact.
pub fn contact_suite(trials: usize, seed: u64) -> Result<Suite, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let maps = contact_maps()?;
    let tol = LemmaTolerance::default();
    let mut suite = Suite::new(Which::Contact, trials);
    for i in 0..trials {
        let q = maps[i % maps.len()];
        let n = 1 + i % 3;
        let beta = q.qprime0_abs() * rng.gen_range(0.05..=1.0);
        let Some((p, contact)) = sample_contact_pair(&q, n, beta, 0.999, &mut rng)? else {
            continue;
        };
        let rep = verify_boundary_contact(&p, &p.class()?, &q, contact.z0, &tol)?;
        suite.record(rep.pass, rep.slack().min(rep.curvature_lhs - rep.curvature_rhs));
    }
    Ok(suite)
}

fn random_member(rng: &mut ChaCha8Rng, a: C64, tail_size: f64) -> Result<(FixedClassSpec<f64>, Series64), CliError> {
    let n = rng.gen_range(1..4usize);
    let beta = rng.gen_range(0.1..1.0);
    let spec = FixedClassSpec::new(a, n, beta)?;
    let tail: Vec<C64> = (0..5).map(|_| random_disk_point::<f64, _>(rng, tail_size)).collect();
    let p = Series::member(&spec, &tail)?;
    Ok((spec, p))
}

/// Interior-maximum and max-modulus growth checks on random members of
/// `H_beta[0, n]` at their circle maxima.
pub fn modulus_suite(which: Which, trials: usize, seed: u64) -> Result<Suite, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = LemmaTolerance::default();
    let mut suite = Suite::new(which, trials);
    for _ in 0..trials {
        let (spec, p) = random_member(&mut rng, Complex::new(0.0, 0.0), 0.3)?;
        let z0 = max_modulus_point(&p, rng.gen_range(0.2..0.9), CIRCLE_SAMPLES);
        if which == Which::Growth {
            let rep = verify_max_modulus_growth(&p, &spec, z0, &tol)?;
            suite.record(rep.pass, (rep.value.re - rep.bound).min(rep.curvature_lhs - rep.curvature_rhs));
        } else {
            let rep = verify_interior_max(&p, z0, &tol)?;
            suite.record(rep.pass, rep.slack().min(rep.curvature_lhs - rep.curvature_rhs));
        }
    }
    Ok(suite)
}

/// Minimum-real-part checks on random members of `H_beta[1, n]`.
pub fn min_re_suite(trials: usize, seed: u64) -> Result<Suite, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tol = LemmaTolerance::default();
    let mut suite = Suite::new(Which::MinRe, trials);
    for _ in 0..trials {
        let (spec, p) = random_member(&mut rng, Complex::new(1.0, 0.0), 0.2)?;
        let z0 = min_real_point(&p, rng.gen_range(0.3..0.9), CIRCLE_SAMPLES);
        if p.value(z0).re >= 1.0 {
            continue;
        }
        let rep = verify_min_re(&p, &spec, z0, &tol)?;
        suite.record(rep.pass, (rep.bound - rep.value.re).min(rep.curvature_lhs));
    }
    Ok(suite)
}

/// Class of a concrete series: `a = p(0)`, first nonzero index and its
/// modulus.
fn class_of(p: &Series64) -> Result<FixedClassSpec<f64>, CliError> {
    let n = (1..=p.degree())
        .find(|&k| p.coeff(k).norm() > 1e-14)
        .ok_or_else(|| CliError::Usage("function is constant".into()))?;
    Ok(FixedClassSpec::new(p.coeff(0), n, p.coeff(n).norm())?)
}

fn spot_check(a: &LemmaArgs, which: Which, src: &str, cfg: &RunConfig) -> Result<(String, Vec<Row>, serde_json::Value), CliError> {
    let p = expr::parse(src)?.series(cfg.degree())?;
    let z0 = a.z0.as_deref().map(|s| expr::parse(s)?.constant()).transpose()?;
    let tol = LemmaTolerance::default();
    let mut s = String::new();
    let mut rows = Vec::new();
    let details = match which {
        Which::Schwarz => {
            if p.coeff(0).norm() > 1e-14 {
                return Err(CliError::Usage("a Schwarz function must vanish at 0".into()));
            }
            let a1 = p.coeff(1).norm().min(1.0);
            let mut slack = f64::INFINITY;
            for z in cfg.grid().points::<f64>() {
                slack = slack.min(schwarz_bound(a1, z.norm())? - p.value(z).norm());
            }
            let _ = writeln!(s, "|a1| = {a1:.10}  smallest slack over the grid: {slack:.6e}");
            rows.push(Row::new("bound slack", slack, 0.0, SCHWARZ_TOL, Check::AtLeast));
            json!({ "a1": a1, "min_slack": slack })
        }
        Which::Interior => {
            let z0 = z0.unwrap_or_else(|| max_modulus_point(&p, 0.7, CIRCLE_SAMPLES));
            let rep = verify_interior_max(&p, z0, &tol)?;
            let _ = writeln!(s, "z0 = {}", fmt_c(z0));
            let _ = writeln!(s, "m = {:.10} (imaginary part {:.2e})  lower bound {:.10}", rep.m, rep.m_imag, rep.m_lower);
            let _ = writeln!(s, "Re(z0 g''/g' + 1) = {:.10}  >= m", rep.curvature_lhs);
            rows.push(Row::new("m - lower bound", rep.slack(), 0.0, SLACK_TOL, Check::AtLeast));
            rows.push(Row::new("curvature - m", rep.curvature_lhs - rep.m, 0.0, SLACK_TOL, Check::AtLeast));
            rows.push(Row::new("|Im m|", rep.m_imag.abs(), 0.0, tol.reality * (1.0 + rep.m.abs()), Check::AtMost));
            json!(rep)
        }
        Which::Contact => {
            let q = parse_map(a.q.as_deref().ok_or_else(|| CliError::Usage("--q is required".into()))?)?;
            let spec = class_of(&p)?;
            let z0 = match z0 {
                Some(z) => z,
                None => {
                    first_contact(&p, &q, 0.999, CIRCLE_SAMPLES)
                        .ok_or_else(|| CliError::Usage("no boundary contact below radius 0.999".into()))?
                        .z0
                }
            };
            let rep = verify_boundary_contact(&p, &spec, &q, z0, &tol)?;
            let _ = writeln!(s, "z0 = {}  zeta0 = {}", fmt_c(z0), fmt_c(rep.zeta0.unwrap_or_default()));
            let _ = writeln!(s, "m = {:.10} (imaginary part {:.2e})  lower bound {:.10}", rep.m, rep.m_imag, rep.m_lower);
            rows.push(Row::new("m - lower bound", rep.slack(), 0.0, SLACK_TOL, Check::AtLeast));
            rows.push(Row::new(
                "curvature inequality",
                rep.curvature_lhs - rep.curvature_rhs,
                0.0,
                SLACK_TOL,
                Check::AtLeast,
            ));
            json!(rep)
        }
        Which::Growth => {
            let spec = class_of(&p)?;
            let z0 = z0.unwrap_or_else(|| max_modulus_point(&p, 0.7, CIRCLE_SAMPLES));
            let rep = verify_max_modulus_growth(&p, &spec, z0, &tol)?;
            let _ = writeln!(s, "z0 = {}  z0 p'/p = {}  bound {:.10}", fmt_c(z0), fmt_c(rep.value), rep.bound);
            rows.push(Row::flag("growth lemma holds", rep.pass));
            json!(rep)
        }
        Which::MinRe => {
            let spec = class_of(&p)?;
            let z0 = z0.unwrap_or_else(|| min_real_point(&p, 0.7, CIRCLE_SAMPLES));
            let rep = verify_min_re(&p, &spec, z0, &tol)?;
            let _ = writeln!(s, "z0 = {}  z0 p' = {}  bound {:.10}", fmt_c(z0), fmt_c(rep.value), rep.bound);
            rows.push(Row::flag("real-part lemma holds", rep.pass));
            json!(rep)
        }
    };
    Ok((s, rows, details))
}

pub fn lemma(a: &LemmaArgs, cfg: &RunConfig) -> Result<Outcome, CliError> {
    let which = Which::parse(&a.which)?;
    let mut report = Report::new("lemma", cfg);
    let mut summary = String::new();
    if let Some(src) = &a.function {
        let (s, rows, details) = spot_check(a, which, src, cfg)?;
        summary = s;
        report.rows = rows;
        report.details = details;
    } else {
        let seed = cfg.seed();
        let trials = cfg.trials.unwrap_or(if which == Which::Contact { 500 } else { 1000 });
        let suite = match which {
            Which::Schwarz => schwarz_suite(trials, seed)?,
            Which::Contact => contact_suite(trials, seed)?,
            Which::Interior | Which::Growth => modulus_suite(which, trials, seed)?,
            Which::MinRe => min_re_suite(trials, seed)?,
        };
        let _ = writeln!(
            summary,
            "{} of {} trials checked, {} failures, smallest slack {:.6e}",
            suite.checked, suite.trials, suite.failures, suite.min_slack
        );
        report.rows = suite.rows(&format!("{which:?}"));
        let mut extremal = None;
        if which == Which::Schwarz {
            let gap = extremal_gap()?;
            report.rows.push(Row::new("extremal gap to bound", gap, 0.0, EXTREMAL_TOL, Check::AtMost));
            extremal = Some(gap);
        }
        report.details = json!({ "suite": suite, "extremal_gap": extremal });
    }
    let code = if report.all_pass() { EXIT_OK } else { EXIT_FAIL };
    Ok(Outcome { code, report, summary })
}
