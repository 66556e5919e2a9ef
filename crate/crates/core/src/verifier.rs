//! Grid-based subordination tests, samplers for `H_beta[a, n]` and the
//! falsification harness for the implication "`psi(p, zp', z^2 p'') in Omega`
//! implies `p < q`".
//!
//! A grid check is a necessary-condition screen, not a proof: reports call a
//! hypothesis "grid-verified".

use num_complex::Complex;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::admissibility::{check_admissible, OmegaRegion, PsiSpec, SearchConfig};
use crate::error::{Error, Result};
use crate::lemmas::{Composite, SchwarzFunction};
use crate::maps::CanonicalMap;
use crate::scalar::{is_finite, lit, polar, Cx, Real};
use crate::series::{Analytic, FixedClassSpec, Series};

/// Polar sampling grid on the disk.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridConfig {
    pub radii: Vec<f64>,
    pub angles: usize,
    /// Slack on membership decisions.
    pub tol: f64,
}

impl Default for GridConfig {
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.95, 0.98, 0.99]);
        Self {
            radii,
            angles: 512,
            tol: 1e-9,
        }
    }
}

impl GridConfig {
    pub fn points<T: Real>(&self) -> Vec<Cx<T>> {
        self.points_within(f64::INFINITY)
    }

    /// Grid points with radius at most `r_max`, plus the circle `r_max`
    /// itself when it is not already a grid radius.
    pub fn points_within<T: Real>(&self, r_max: f64) -> Vec<Cx<T>> {
        let mut radii: Vec<f64> = self.radii.iter().copied().filter(|&r| r <= r_max).collect();
        if r_max.is_finite() && !radii.iter().any(|&r| r == r_max) {
            radii.push(r_max);
        }
        let tau = std::f64::consts::TAU;
        let mut out = Vec::with_capacity(radii.len() * self.angles);
        for &r in &radii {
            for k in 0..self.angles {
                let t = tau * k as f64 / self.angles as f64;
                out.push(polar(lit::<T>(r), lit::<T>(t)));
            }
        }
        out
    }
}

/// Outcome of [`is_subordinate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SubordinationCheck<T> {
    pub subordinate: bool,
    /// `1 - max |q^{-1}(p(z))|` over the grid.
    pub margin: T,
    /// Grid point attaining the maximum.
    pub witness: Cx<T>,
}

/// Grid test of `p(D_r) in q(D)` for `r <= r_max`, given `p(0) = q(0)`.
pub fn is_subordinate<T: Real>(
    p: &impl Analytic<T>,
    q: &CanonicalMap<T>,
    r_max: T,
    grid: &GridConfig,
) -> Result<SubordinationCheck<T>> {
    let p0 = p.value(Cx::zero());
    let q0 = q.q0();
    if (p0 - q0).norm() > lit::<T>(grid.tol) * (T::one() + q0.norm()) {
        return Err(Error::NotComparable {
            p0_re: p0.re.to_f64_lossy(),
            p0_im: p0.im.to_f64_lossy(),
            q0_re: q0.re.to_f64_lossy(),
            q0_im: q0.im.to_f64_lossy(),
        });
    }
    let points = grid.points_within::<T>(r_max.to_f64_lossy());
    let mut worst = (T::neg_infinity(), Cx::zero());
    for z in points {
        let g = q.invert(p.value(z)).ok().filter(|g| is_finite(*g));
        let size = g.map_or(T::infinity(), |g| g.norm());
        if size > worst.0 {
            worst = (size, z);
        }
    }
    let margin = T::one() - worst.0;
    Ok(SubordinationCheck {
        subordinate: margin > T::zero(),
        margin,
        witness: worst.1,
    })
}

/// `p = q o w` with `w(z) = z^n (c + z h)/(1 + conj(c) z h)`,
/// `c = beta / q'(0)` and a seeded random `h` with `sup |h| <= 1`. Then
/// `p` lies in `H_beta[q(0), n]` and is subordinate to `q`.
pub fn sample_subordinate<T: Real>(spec: &FixedClassSpec<T>, q: &CanonicalMap<T>, seed: u64) -> Result<Composite<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_subordinate_with(spec, q, &mut rng)
}

pub fn sample_subordinate_with<T: Real, R: Rng + ?Sized>(
    spec: &FixedClassSpec<T>,
    q: &CanonicalMap<T>,
    rng: &mut R,
) -> Result<Composite<T>> {
    let inner = SchwarzFunction::random(spec.n, leading_inner(spec, q)?, rng)?;
    Ok(Composite {
        map: *q,
        inner,
        gain: T::one(),
    })
}

/// `p = q(c z^n)`: the simplest subordinate member.
pub fn simplest_subordinate<T: Real>(spec: &FixedClassSpec<T>, q: &CanonicalMap<T>) -> Result<Composite<T>> {
    let h = Series::constant(Cx::zero());
    Ok(Composite {
        map: *q,
        inner: SchwarzFunction::new(spec.n, leading_inner(spec, q)?, h)?,
        gain: T::one(),
    })
}

fn leading_inner<T: Real>(spec: &FixedClassSpec<T>, q: &CanonicalMap<T>) -> Result<Cx<T>> {
    let q0 = q.q0();
    if (spec.a - q0).norm() > lit::<T>(1e-12) * (T::one() + q0.norm()) {
        return Err(Error::NotComparable {
            p0_re: spec.a.re.to_f64_lossy(),
            p0_im: spec.a.im.to_f64_lossy(),
            q0_re: q0.re.to_f64_lossy(),
            q0_im: q0.im.to_f64_lossy(),
        });
    }
    let bound = q.qprime0_abs();
    if spec.beta > bound * (T::one() + lit::<T>(1e-12)) {
        return Err(Error::BetaTooLarge {
            beta: spec.beta.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    let c = Complex::new(spec.beta, T::zero()) / q.qprime0();
    // clamp rounding just above the unit circle
    Ok(if c.norm() > T::one() { c / c.norm() } else { c })
}

/// Geometric shrinking of the random tail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShrinkConfig {
    pub initial: f64,
    pub factor: f64,
    pub max_shrinks: usize,
    /// Number of random tail coefficients after `z^n`.
    pub tail_len: usize,
    pub decay: f64,
}

impl Default for ShrinkConfig {
    fn default() -> Self {
        Self {
            initial: 1.0,
            factor: 0.5,
            max_shrinks: 20,
            tail_len: 12,
            decay: 0.7,
        }
    }
}

/// Why a candidate was discarded.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Screen {
    Accepted,
    OutsideOmega,
    OutsideDomain,
}

/// Smallest value of the `Omega` margin of `psi(p, zp', z^2 p'')` over the
/// grid, with the screen outcome. Leaving the domain of `psi` anywhere
/// rejects the candidate outright.
pub fn hypothesis_margin<T: Real>(
    p: &impl Analytic<T>,
    psi: &PsiSpec<T>,
    omega: &OmegaRegion<T>,
    points: &[Cx<T>],
) -> (Screen, T) {
    let mut worst = T::infinity();
    for &z in points {
        let (r, s, t) = p.orbit(z);
        if !psi.in_domain(r, s, t) {
            return (Screen::OutsideDomain, T::neg_infinity());
        }
        let m = omega.margin(psi.eval(r, s, t));
        if !(m >= worst) {
            worst = m;
        }
    }
    let screen = if worst > T::zero() {
        Screen::Accepted
    } else {
        Screen::OutsideOmega
    };
    (screen, worst)
}

/// Draws `p = a + beta z^n + eps * tail` and halves `eps` until the
/// `psi`-orbit of `p` lies in `Omega` on the grid. The `z^n` coefficient is
/// never scaled.
pub fn hypothesis_sampler<T: Real, R: Rng + ?Sized>(
    spec: &FixedClassSpec<T>,
    psi: &PsiSpec<T>,
    omega: &OmegaRegion<T>,
    rng: &mut R,
    grid: &GridConfig,
    shrink: &ShrinkConfig,
) -> Option<Series<T>> {
    let points = grid.points::<T>();
    sample_hypothesis(spec, psi, omega, rng, &points, shrink).0
}

fn sample_hypothesis<T: Real, R: Rng + ?Sized>(
    spec: &FixedClassSpec<T>,
    psi: &PsiSpec<T>,
    omega: &OmegaRegion<T>,
    rng: &mut R,
    points: &[Cx<T>],
    shrink: &ShrinkConfig,
) -> (Option<Series<T>>, usize) {
    let mut decay = 1.0;
    let tail: Vec<Cx<T>> = (0..shrink.tail_len)
        .map(|_| {
            decay *= shrink.decay;
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            Complex::new(lit::<T>(re * decay), lit::<T>(im * decay))
        })
        .collect();
    let mut eps = shrink.initial;
    let mut domain_exits = 0;
    for _ in 0..=shrink.max_shrinks {
        let scaled: Vec<Cx<T>> = tail.iter().map(|c| *c * lit::<T>(eps)).collect();
        let Ok(p) = Series::member(spec, &scaled) else {
            return (None, domain_exits);
        };
        match hypothesis_margin(&p, psi, omega, points).0 {
            Screen::Accepted => return (Some(p), domain_exits),
            Screen::OutsideDomain => domain_exits += 1,
            Screen::OutsideOmega => {}
        }
        if eps == 0.0 {
            break;
        }
        eps *= shrink.factor;
    }
    (None, domain_exits)
}

/// A sample that satisfies the hypothesis on the grid but not the conclusion.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample<T> {
    pub sample: usize,
    pub series: Series<T>,
    pub witness: Cx<T>,
    pub hypothesis_margin: T,
    pub conclusion_margin: T,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FalsificationReport<T> {
    pub seed: u64,
    pub grid: GridConfig,
    pub samples_run: usize,
    pub hypothesis_holds_count: usize,
    /// Candidates whose orbit left the domain of `psi`.
    pub domain_discards: usize,
    pub counterexamples: Vec<Counterexample<T>>,
    /// No sample satisfied the hypothesis.
    pub vacuous: bool,
    /// The admissibility precondition was not confirmed.
    pub exploratory: bool,
    /// Smallest conclusion margin among hypothesis-satisfying samples.
    pub min_conclusion_margin: Option<T>,
}

impl<T> FalsificationReport<T> {
    pub fn passed(&self) -> bool {
        !self.vacuous && self.counterexamples.is_empty()
    }
}

/// Settings shared by the falsification runs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FalsifyConfig {
    pub samples: usize,
    pub seed: u64,
    pub grid: GridConfig,
    pub shrink: ShrinkConfig,
    pub search: SearchConfig,
}

impl Default for FalsifyConfig {
    fn default() -> Self {
        Self {
            samples: 1000,
            seed: 0,
            grid: GridConfig::default(),
            shrink: ShrinkConfig::default(),
            search: SearchConfig::coarse(),
        }
    }
}

/// Per-sample generator: one stream of the master seed per sample index.
pub fn sample_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Searches for `p` in `H_beta[a, n]` with `psi(p, zp', z^2 p'') in Omega` on
/// the grid but `p` not subordinate to `conclusion`.
pub fn falsify_implication<T: Real>(
    psi: &PsiSpec<T>,
    omega: &OmegaRegion<T>,
    conclusion: &CanonicalMap<T>,
    spec: &FixedClassSpec<T>,
    config: &FalsifyConfig,
) -> Result<FalsificationReport<T>> {
    let verdict = check_admissible(psi, omega, conclusion, spec.n, spec.beta, &config.search);
    let exploratory = !matches!(&verdict, Ok(v) if v.is_admissible());
    run_falsification(psi, omega, conclusion, spec, config, exploratory)
}

/// As [`falsify_implication`], but takes the admissibility precondition as
/// already decided.
pub fn run_falsification<T: Real>(
    psi: &PsiSpec<T>,
    omega: &OmegaRegion<T>,
    conclusion: &CanonicalMap<T>,
    spec: &FixedClassSpec<T>,
    config: &FalsifyConfig,
    exploratory: bool,
) -> Result<FalsificationReport<T>> {
    let q0 = conclusion.q0();
    if (spec.a - q0).norm() > lit::<T>(1e-12) * (T::one() + q0.norm()) {
        return Err(Error::NotComparable {
            p0_re: spec.a.re.to_f64_lossy(),
            p0_im: spec.a.im.to_f64_lossy(),
            q0_re: q0.re.to_f64_lossy(),
            q0_im: q0.im.to_f64_lossy(),
        });
    }
    let points = config.grid.points::<T>();
    let r_max = lit::<T>(config.grid.radii.iter().copied().fold(0.0, f64::max));
    let tol = lit::<T>(config.grid.tol);

    struct Outcome<T> {
        accepted: Option<(T, SubordinationCheck<T>, Series<T>)>,
        domain_exits: usize,
    }

    let outcomes: Vec<Outcome<T>> = (0..config.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = sample_rng(config.seed, i);
            let (p, domain_exits) = sample_hypothesis(spec, psi, omega, &mut rng, &points, &config.shrink);
            let accepted = p.and_then(|p| {
                let (_, hyp) = hypothesis_margin(&p, psi, omega, &points);
                let check = is_subordinate(&p, conclusion, r_max, &config.grid).ok()?;
                Some((hyp, check, p))
            });
            Outcome {
                accepted,
                domain_exits,
            }
        })
        .collect();

    let mut report = FalsificationReport {
        seed: config.seed,
        grid: config.grid.clone(),
        samples_run: config.samples,
        hypothesis_holds_count: 0,
        domain_discards: 0,
        counterexamples: Vec::new(),
        vacuous: true,
        exploratory,
        min_conclusion_margin: None,
    };
    for (i, o) in outcomes.into_iter().enumerate() {
        report.domain_discards += o.domain_exits;
        let Some((hyp, check, series)) = o.accepted else {
            continue;
        };
        report.hypothesis_holds_count += 1;
        report.min_conclusion_margin = Some(match report.min_conclusion_margin {
            Some(m) if m <= check.margin => m,
            _ => check.margin,
        });
        if check.margin < -tol {
            report.counterexamples.push(Counterexample {
                sample: i,
                series,
                witness: check.witness,
                hypothesis_margin: hyp,
                conclusion_margin: check.margin,
            });
        }
    }
    report.vacuous = report.hypothesis_holds_count == 0;
    Ok(report)
}

/// Subordination form: hypothesis `psi(p, zp', z^2 p'') < h`, i.e. the orbit
/// lies in `h(D)`, with the normalization `psi(q(0), 0, 0) = h(0)`.
pub fn falsify_subordination_form<T: Real>(
    psi: &PsiSpec<T>,
    h: &CanonicalMap<T>,
    conclusion: &CanonicalMap<T>,
    spec: &FixedClassSpec<T>,
    config: &FalsifyConfig,
) -> Result<FalsificationReport<T>> {
    let base = psi.eval(conclusion.q0(), Cx::zero(), Cx::zero());
    let gap = (base - h.q0()).norm();
    if gap > lit::<T>(1e-12) * (T::one() + base.norm()) {
        return Err(Error::Normalization {
            gap: gap.to_f64_lossy(),
        });
    }
    falsify_implication(psi, &OmegaRegion::ImageOf(*h), conclusion, spec, config)
}
