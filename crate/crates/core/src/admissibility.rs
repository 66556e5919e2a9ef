//! Admissibility of `psi(r, s, t)` with respect to a region `Omega`, a
//! univalent `q` and the class parameters `(n, beta)`.
//!
//! At a boundary point `zeta = e^{i theta}` and multiplier `m >= m_min`, the
//! admissible triples are
//!
//! ```text
//! r0 = q(zeta),  s0 = m zeta q'(zeta),  t0 = s0 (m kappa - 1 + tau),  Re tau >= 0
//! ```
//!
//! with `kappa = Re(zeta q''/q' + 1)`. A structured `psi` is affine in `t`, so
//! for fixed `(theta, m)` its values sweep the closed half-plane
//! `B + v tau` (a point when `v = 0`), and disk or half-plane regions can be
//! tested against it in closed form.

use std::fmt;
use std::sync::Arc;

use num_complex::Complex;
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lemmas::m_lower_bound;
use crate::maps::{circle_grid, CanonicalMap, ImageShape};
use crate::scalar::{is_finite, lit, unit, Cx, Real};
use crate::search::golden_min;

/// `psi(r, s, t) = c0 + c_r r + c_r2 r^2 + c_s s + c_t t`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StructuredPsi<T> {
    pub c0: Cx<T>,
    pub c_r: Cx<T>,
    pub c_r2: Cx<T>,
    pub c_s: Cx<T>,
    pub c_t: Cx<T>,
}

impl<T: Real> StructuredPsi<T> {
    pub fn new(c0: Cx<T>, c_r: Cx<T>, c_r2: Cx<T>, c_s: Cx<T>, c_t: Cx<T>) -> Self {
        Self { c0, c_r, c_r2, c_s, c_t }
    }

    /// Real coefficients, in the order `c0, c_r, c_r2, c_s, c_t`.
    pub fn real(c: [f64; 5]) -> Self {
        let f = |x: f64| Complex::new(lit::<T>(x), T::zero());
        Self::new(f(c[0]), f(c[1]), f(c[2]), f(c[3]), f(c[4]))
    }

    pub fn eval(&self, r: Cx<T>, s: Cx<T>, t: Cx<T>) -> Cx<T> {
        self.c0 + self.c_r * r + self.c_r2 * r * r + self.c_s * s + self.c_t * t
    }
}

type PsiFn<T> = dyn Fn(Cx<T>, Cx<T>, Cx<T>) -> Cx<T> + Send + Sync;
type DomainFn<T> = dyn Fn(Cx<T>, Cx<T>, Cx<T>) -> bool + Send + Sync;
type RegionFn<T> = dyn Fn(Cx<T>) -> bool + Send + Sync;

/// An arbitrary `psi` together with its domain `D`.
#[derive(Clone)]
pub struct GenericPsi<T> {
    pub f: Arc<PsiFn<T>>,
    pub domain: Arc<DomainFn<T>>,
}

impl<T> GenericPsi<T> {
    pub fn new(
        f: impl Fn(Cx<T>, Cx<T>, Cx<T>) -> Cx<T> + Send + Sync + 'static,
        domain: impl Fn(Cx<T>, Cx<T>, Cx<T>) -> bool + Send + Sync + 'static,
    ) -> Self {
        Self {
            f: Arc::new(f),
            domain: Arc::new(domain),
        }
    }

    /// Defined on all of `C^3`.
    pub fn total(f: impl Fn(Cx<T>, Cx<T>, Cx<T>) -> Cx<T> + Send + Sync + 'static) -> Self {
        Self::new(f, |_, _, _| true)
    }
}

impl<T> fmt::Debug for GenericPsi<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("GenericPsi(..)")
    }
}

#[derive(Debug, Clone)]
pub enum PsiSpec<T> {
    Structured(StructuredPsi<T>),
    Generic(GenericPsi<T>),
}

impl<T: Real> PsiSpec<T> {
    pub fn eval(&self, r: Cx<T>, s: Cx<T>, t: Cx<T>) -> Cx<T> {
        match self {
            PsiSpec::Structured(p) => p.eval(r, s, t),
            PsiSpec::Generic(g) => (g.f)(r, s, t),
        }
    }

    pub fn in_domain(&self, r: Cx<T>, s: Cx<T>, t: Cx<T>) -> bool {
        match self {
            PsiSpec::Structured(_) => true,
            PsiSpec::Generic(g) => (g.domain)(r, s, t),
        }
    }
}

impl<T> From<StructuredPsi<T>> for PsiSpec<T> {
    fn from(p: StructuredPsi<T>) -> Self {
        PsiSpec::Structured(p)
    }
}

impl<T> From<GenericPsi<T>> for PsiSpec<T> {
    fn from(p: GenericPsi<T>) -> Self {
        PsiSpec::Generic(p)
    }
}

/// The target region `Omega`.
#[derive(Clone)]
pub enum OmegaRegion<T> {
    Disk { center: Cx<T>, radius: T },
    /// `Re(e^{-i gamma} (w - w0)) > 0`.
    HalfPlane { gamma: T, w0: Cx<T> },
    Predicate(Arc<RegionFn<T>>),
    ImageOf(CanonicalMap<T>),
}

impl<T: fmt::Debug> fmt::Debug for OmegaRegion<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OmegaRegion::Disk { center, radius } => write!(f, "Disk {{ center: {center:?}, radius: {radius:?} }}"),
            OmegaRegion::HalfPlane { gamma, w0 } => write!(f, "HalfPlane {{ gamma: {gamma:?}, w0: {w0:?} }}"),
            OmegaRegion::Predicate(_) => f.write_str("Predicate(..)"),
            OmegaRegion::ImageOf(h) => write!(f, "ImageOf({h:?})"),
        }
    }
}

impl<T: Real> OmegaRegion<T> {
    pub fn disk(center: Cx<T>, radius: T) -> Result<Self> {
        if !(radius > T::zero()) || !radius.is_finite() || !is_finite(center) {
            return Err(Error::OutOfRange(format!("disk radius must be positive, got {radius}")));
        }
        Ok(OmegaRegion::Disk { center, radius })
    }

    pub fn half_plane(gamma: T, w0: Cx<T>) -> Self {
        OmegaRegion::HalfPlane { gamma, w0 }
    }

    /// `Re w > 0`.
    pub fn right_half_plane() -> Self {
        Self::half_plane(T::zero(), Cx::zero())
    }

    pub fn predicate(f: impl Fn(Cx<T>) -> bool + Send + Sync + 'static) -> Self {
        OmegaRegion::Predicate(Arc::new(f))
    }

    /// Signed membership margin: positive exactly inside. Distance-like for
    /// disks and half-planes, `1 - |h^{-1}(w)|` for images, `+-1` for
    /// predicates.
    pub fn margin(&self, w: Cx<T>) -> T {
        match self {
            OmegaRegion::Disk { center, radius } => *radius - (w - *center).norm(),
            OmegaRegion::HalfPlane { gamma, w0 } => (unit(-*gamma) * (w - *w0)).re,
            OmegaRegion::Predicate(f) => {
                if f(w) {
                    T::one()
                } else {
                    -T::one()
                }
            }
            OmegaRegion::ImageOf(h) => h.contains(w).margin,
        }
    }

    pub fn contains(&self, w: Cx<T>) -> bool {
        self.margin(w) > T::zero()
    }

    /// Disk or half-plane form, when one exists.
    pub fn shape(&self) -> Option<ImageShape<T>> {
        match self {
            OmegaRegion::Disk { center, radius } => Some(ImageShape::Disk {
                center: *center,
                radius: *radius,
            }),
            OmegaRegion::HalfPlane { gamma, w0 } => Some(ImageShape::HalfPlane { gamma: *gamma, w0: *w0 }),
            OmegaRegion::ImageOf(h) => Some(h.image()),
            OmegaRegion::Predicate(_) => None,
        }
    }
}

/// One admissible triple with the parameters that produced it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdmissiblePoint<T> {
    pub theta: T,
    pub m: T,
    pub tau: Cx<T>,
    pub r0: Cx<T>,
    pub s0: Cx<T>,
    pub t0: Cx<T>,
}

/// Boundary quantities at `zeta = e^{i theta}` and the minimal multiplier.
#[derive(Debug, Clone, Copy)]
struct Frame<T> {
    theta: T,
    r0: Cx<T>,
    zeta_qprime: Cx<T>,
    kappa: T,
}

impl<T: Real> Frame<T> {
    fn new(q: &CanonicalMap<T>, theta: T) -> Result<Self> {
        let b = q.boundary_data(theta)?;
        if !is_finite(b.q) || !is_finite(b.zeta_qprime) || !b.curvature.is_finite() {
            let z = unit(theta);
            return Err(Error::Pole {
                re: z.re.to_f64_lossy(),
                im: z.im.to_f64_lossy(),
            });
        }
        Ok(Self {
            theta,
            r0: b.q,
            zeta_qprime: b.zeta_qprime,
            kappa: b.curvature,
        })
    }

    fn point(&self, m: T, tau: Cx<T>) -> AdmissiblePoint<T> {
        let s0 = self.zeta_qprime * m;
        let t0 = s0 * (Complex::new(m * self.kappa - T::one(), T::zero()) + tau);
        AdmissiblePoint {
            theta: self.theta,
            m,
            tau,
            r0: self.r0,
            s0,
            t0,
        }
    }

    /// `psi = B + v tau` for structured `psi`.
    fn affine(&self, psi: &StructuredPsi<T>, m: T) -> (Cx<T>, Cx<T>) {
        let p = self.point(m, Cx::zero());
        (psi.eval(p.r0, p.s0, p.t0), psi.c_t * p.s0)
    }
}

/// `m_min = n + (|q'(0)| - beta)/(|q'(0)| + beta)`.
pub fn minimal_multiplier<T: Real>(q: &CanonicalMap<T>, n: usize, beta: T) -> Result<T> {
    m_lower_bound(n, q.qprime0_abs(), beta, T::one())
}

/// A triple from the admissible set at `zeta = e^{i theta}`. `t_param = 0`
/// puts `t0` on the constraint boundary; `Re t_param` moves it inside and
/// `Im t_param` along the boundary line.
pub fn admissible_set_sample<T: Real>(
    q: &CanonicalMap<T>,
    n: usize,
    beta: T,
    theta: T,
    m: T,
    t_param: Cx<T>,
) -> Result<AdmissiblePoint<T>> {
    let m_min = minimal_multiplier(q, n, beta)?;
    if m < m_min * (T::one() - lit::<T>(1e-12)) {
        return Err(Error::OutOfRange(format!("m = {m} is below the lower bound {m_min}")));
    }
    if t_param.re < T::zero() {
        return Err(Error::OutOfRange("Re t_param must be nonnegative".into()));
    }
    Ok(Frame::new(q, theta)?.point(m, t_param))
}

/// Checks that `(r0, s0, t0)` lies in the admissible set: `r0` on `q(dD)`,
/// `s0/(zeta q'(zeta))` real and at least `m_min`, and the curvature
/// constraint on `t0`.
pub fn is_admissible_triple<T: Real>(
    q: &CanonicalMap<T>,
    n: usize,
    beta: T,
    r0: Cx<T>,
    s0: Cx<T>,
    t0: Cx<T>,
    tol: T,
) -> bool {
    let Ok(m_min) = minimal_multiplier(q, n, beta) else {
        return false;
    };
    let Ok(zeta) = q.invert(r0) else {
        return false;
    };
    if (zeta.norm() - T::one()).abs() > tol {
        return false;
    }
    let Ok((d1, d2)) = q.derivatives(zeta) else {
        return false;
    };
    let m = s0 / (zeta * d1);
    let scale = T::one() + m.norm();
    if m.im.abs() > tol * scale || m.re < m_min - tol * scale {
        return false;
    }
    let kappa = (zeta * d2 / d1 + T::one()).re;
    let lhs = (t0 / s0 + T::one()).re;
    lhs >= m.re * kappa - tol * (T::one() + (m.re * kappa).abs())
}

/// Search grid and tolerances.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchConfig {
    pub theta_points: usize,
    pub m_points: usize,
    /// Generic and fallback searches cover `m` in `[m_min, m_min + m_span]`.
    pub m_span: f64,
    /// Offsets of the monotonicity probes above `m_min`.
    pub m_probes: Vec<f64>,
    pub tau_magnitudes: Vec<f64>,
    pub tau_angles: Vec<f64>,
    /// Relative decision tolerance.
    pub tol: f64,
    pub refine: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        use std::f64::consts::FRAC_PI_2 as H;
        use std::f64::consts::FRAC_PI_4 as Q;
        Self {
            theta_points: 4096,
            m_points: 256,
            m_span: 16.0,
            m_probes: vec![0.0, 64.0],
            tau_magnitudes: vec![0.1, 1.0, 10.0, 100.0],
            tau_angles: vec![-H, -Q, Q, H],
            tol: 1e-9,
            refine: true,
        }
    }
}

impl SearchConfig {
    /// A coarser grid for property tests and smoke runs.
    pub fn coarse() -> Self {
        Self {
            theta_points: 512,
            m_points: 32,
            ..Self::default()
        }
    }

    fn tau_offsets<T: Real>(&self) -> Vec<Cx<T>> {
        let mut out = vec![Cx::zero()];
        for &mag in &self.tau_magnitudes {
            for &ang in &self.tau_angles {
                out.push(Complex::from_polar(lit::<T>(mag), lit::<T>(ang)));
            }
        }
        out
    }
}

/// Where the extremum of the search was attained.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WorstPoint<T> {
    pub point: AdmissiblePoint<T>,
    /// Distance of `psi` from `Omega` (negative: inside).
    pub margin: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchBounds<T> {
    pub m_min: T,
    pub m_max: T,
    pub theta_points: usize,
    pub m_points: usize,
    pub tau_max: T,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum VerdictStatus<T> {
    AdmissibleExact,
    AdmissibleNumeric { margin: T },
    Violation { witness: AdmissiblePoint<T>, psi_value: Cx<T> },
    Inconclusive { bounds: SearchBounds<T> },
    /// `psi(q(0), 0, 0)` lies outside `Omega`.
    BaseOutside { psi_value: Cx<T> },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibilityVerdict<T> {
    pub status: VerdictStatus<T>,
    pub worst_point: Option<WorstPoint<T>>,
    pub m_min: T,
    /// Grid points skipped because they left the domain of `psi`.
    pub domain_skips: usize,
}

impl<T> AdmissibilityVerdict<T> {
    pub fn is_admissible(&self) -> bool {
        matches!(
            self.status,
            VerdictStatus::AdmissibleExact | VerdictStatus::AdmissibleNumeric { .. }
        )
    }

    pub fn is_violation(&self) -> bool {
        matches!(
            self.status,
            VerdictStatus::Violation { .. } | VerdictStatus::BaseOutside { .. }
        )
    }
}

/// Distance from `psi` values at `(theta, m)` to the region, minimized over
/// `tau`, with the `tau` attaining it. Negative when the half-plane of values
/// meets `Omega`.
fn separation<T: Real>(b: Cx<T>, v: Cx<T>, shape: &ImageShape<T>) -> (T, Cx<T>) {
    match *shape {
        ImageShape::Disk { center, radius } => {
            let (dist, tau) = distance_to_values(center, b, v);
            (dist - radius, tau)
        }
        ImageShape::HalfPlane { gamma, w0 } => {
            // sup of l(w) = Re(e^{-i gamma}(w - w0)) over B + v tau: l(B) when
            // u = e^{-i gamma} v is a nonpositive real, unbounded otherwise.
            let rot = unit(-gamma);
            let lb = (rot * (b - w0)).re;
            let u = rot * v;
            let flat = u.im.abs() <= lit::<T>(1e-9) * u.norm();
            if u.norm() == T::zero() || (flat && u.re <= T::zero()) {
                return (-lb, Cx::zero());
            }
            let reach = T::one() + lit::<T>(2.0) * lb.abs();
            let tau = if !flat {
                Complex::new(T::zero(), -u.im.signum() * reach / u.im.abs())
            } else {
                Complex::new(reach / u.re, T::zero())
            };
            (T::neg_infinity(), tau)
        }
    }
}

/// `inf |w - (B + v tau)|` over `Re tau >= 0`, and the minimizing `tau`.
/// With `x = (w - B)/v` the nearest admissible `tau` is `x` with its real
/// part clamped at 0.
fn distance_to_values<T: Real>(w: Cx<T>, b: Cx<T>, v: Cx<T>) -> (T, Cx<T>) {
    if v.norm() == T::zero() {
        return ((w - b).norm(), Cx::zero());
    }
    let x = (w - b) / v;
    let tau = Complex::new(x.re.max(T::zero()), x.im);
    ((-x.re).max(T::zero()) * v.norm(), tau)
}

fn point_scale<T: Real>(b: Cx<T>, shape: &ImageShape<T>) -> T {
    match *shape {
        ImageShape::Disk { center, radius } => T::one() + b.norm() + center.norm() + radius,
        ImageShape::HalfPlane { w0, .. } => T::one() + b.norm() + w0.norm(),
    }
}

struct Sample<T> {
    index: usize,
    frame: Frame<T>,
    margin: T,
    tau: Cx<T>,
    violates: bool,
}

/// Decides whether `psi` is admissible for `(Omega, q, n, beta)`.
///
/// Structured `psi` with a disk or half-plane region is decided exactly on
/// the `theta` grid (after the `tau` extremum in closed form and the
/// multiplier pinned at `m_min` once monotonicity is confirmed); anything
/// else goes through the bounded falsification search.
pub fn check_admissible<T: Real>(
    psi: &PsiSpec<T>,
    omega: &OmegaRegion<T>,
    q: &CanonicalMap<T>,
    n: usize,
    beta: T,
    search: &SearchConfig,
) -> Result<AdmissibilityVerdict<T>> {
    let m_min = minimal_multiplier(q, n, beta)?;
    let q0 = q.q0();
    if !psi.in_domain(q0, Cx::zero(), Cx::zero()) {
        return Err(Error::Degenerate("(q(0), 0, 0) lies outside the domain of psi".into()));
    }
    let base = psi.eval(q0, Cx::zero(), Cx::zero());
    if !omega.contains(base) {
        return Ok(AdmissibilityVerdict {
            status: VerdictStatus::BaseOutside { psi_value: base },
            worst_point: None,
            m_min,
            domain_skips: 0,
        });
    }
    match (psi, omega.shape()) {
        (PsiSpec::Structured(s), Some(shape)) => exact_check(s, &shape, q, m_min, search),
        _ => Ok(generic_search(psi, omega, q, m_min, search)),
    }
}

fn exact_check<T: Real>(
    psi: &StructuredPsi<T>,
    shape: &ImageShape<T>,
    q: &CanonicalMap<T>,
    m_min: T,
    search: &SearchConfig,
) -> Result<AdmissibilityVerdict<T>> {
    let tol = lit::<T>(search.tol);
    let q0 = q.q0();
    let frames = frames(q, search.theta_points)?;
    let evaluate = |frame: &Frame<T>, m: T| {
        let (b, v) = frame.affine(psi, m);
        let (margin, tau) = separation(b, v, shape);
        (margin, tau, margin < -tol * point_scale(b, shape))
    };

    let mut samples: Vec<Sample<T>> = frames
        .par_iter()
        .enumerate()
        .map(|(index, frame)| {
            let (margin, tau, violates) = evaluate(frame, m_min);
            Sample {
                index,
                frame: *frame,
                margin,
                tau,
                violates,
            }
        })
        .collect();

    if search.refine && !samples.iter().any(|s| s.violates) {
        if let Some(refined) = refine_theta(q, &samples, search.theta_points, |f| evaluate(f, m_min)) {
            samples.push(refined);
        }
    }

    let worst = worst_of(&samples, m_min);
    if let Some(v) = pick_witness(&samples, q0) {
        let witness = v.frame.point(m_min, v.tau);
        return Ok(AdmissibilityVerdict {
            status: VerdictStatus::Violation {
                witness,
                psi_value: psi.eval(witness.r0, witness.s0, witness.t0),
            },
            worst_point: worst,
            m_min,
            domain_skips: 0,
        });
    }

    if monotone_in_m(&frames, m_min, search, |f, m| evaluate(f, m).0) {
        return Ok(AdmissibilityVerdict {
            status: VerdictStatus::AdmissibleExact,
            worst_point: worst,
            m_min,
            domain_skips: 0,
        });
    }

    // Capped search over m; never claims admissibility.
    let ms = m_grid(m_min, search);
    let grid: Vec<Sample<T>> = frames
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, frame)| {
            let ms = &ms;
            ms.iter().enumerate().map(move |(j, &m)| {
                let (margin, tau, violates) = evaluate(frame, m);
                Sample {
                    index: i * ms.len() + j,
                    frame: *frame,
                    margin,
                    tau,
                    violates,
                }
            })
        })
        .collect();
    let m_of = |s: &Sample<T>| ms[s.index % ms.len()];
    let worst = grid
        .iter()
        .min_by(|a, b| a.margin.partial_cmp(&b.margin).unwrap_or(std::cmp::Ordering::Equal))
        .map(|s| WorstPoint {
            point: s.frame.point(m_of(s), s.tau),
            margin: s.margin,
        });
    if let Some(v) = pick_witness(&grid, q0) {
        let witness = v.frame.point(m_of(v), v.tau);
        return Ok(AdmissibilityVerdict {
            status: VerdictStatus::Violation {
                witness,
                psi_value: psi.eval(witness.r0, witness.s0, witness.t0),
            },
            worst_point: worst,
            m_min,
            domain_skips: 0,
        });
    }
    Ok(AdmissibilityVerdict {
        status: VerdictStatus::Inconclusive {
            bounds: bounds(m_min, search),
        },
        worst_point: worst,
        m_min,
        domain_skips: 0,
    })
}

fn frames<T: Real>(q: &CanonicalMap<T>, points: usize) -> Result<Vec<Frame<T>>> {
    circle_grid(q, points).into_iter().map(|t| Frame::new(q, t)).collect()
}

fn m_grid<T: Real>(m_min: T, search: &SearchConfig) -> Vec<T> {
    let k = search.m_points.max(2);
    let span = lit::<T>(search.m_span);
    (0..k)
        .map(|j| m_min + span * lit::<T>(j as f64) / lit::<T>((k - 1) as f64))
        .collect()
}

fn bounds<T: Real>(m_min: T, search: &SearchConfig) -> SearchBounds<T> {
    SearchBounds {
        m_min,
        m_max: m_min + lit::<T>(search.m_span),
        theta_points: search.theta_points,
        m_points: search.m_points,
        tau_max: lit::<T>(search.tau_magnitudes.iter().cloned().fold(0.0, f64::max)),
    }
}

fn worst_of<T: Real>(samples: &[Sample<T>], m: T) -> Option<WorstPoint<T>> {
    let mut best: Option<&Sample<T>> = None;
    for s in samples {
        if s.margin.is_nan() {
            continue;
        }
        if best.map_or(true, |b| s.margin < b.margin) {
            best = Some(s);
        }
    }
    best.map(|s| WorstPoint {
        point: s.frame.point(m, s.tau),
        margin: s.margin,
    })
}

/// Among violating samples, the one whose `r0` is closest to `q(0)`; the
/// lowest index wins ties.
fn pick_witness<T: Real>(samples: &[Sample<T>], q0: Cx<T>) -> Option<&Sample<T>> {
    let mut best: Option<(&Sample<T>, T)> = None;
    for s in samples.iter().filter(|s| s.violates) {
        let d = (s.frame.r0 - q0).norm();
        match best {
            Some((b, bd)) if d > bd || (d == bd && s.index >= b.index) => {}
            _ => best = Some((s, d)),
        }
    }
    best.map(|(s, _)| s)
}

fn refine_theta<T: Real>(
    q: &CanonicalMap<T>,
    samples: &[Sample<T>],
    points: usize,
    evaluate: impl Fn(&Frame<T>) -> (T, Cx<T>, bool),
) -> Option<Sample<T>> {
    let worst = samples
        .iter()
        .filter(|s| !s.margin.is_nan())
        .min_by(|a, b| a.margin.partial_cmp(&b.margin).unwrap_or(std::cmp::Ordering::Equal))?;
    if !worst.margin.is_finite() {
        return None;
    }
    let step = (T::PI() + T::PI()) / lit::<T>((points + 2) as f64);
    let objective = |t: T| match Frame::new(q, t) {
        Ok(f) => evaluate(&f).0,
        Err(_) => T::infinity(),
    };
    let centre = worst.frame.theta;
    let (theta, value) = golden_min(objective, centre - step, centre + step, lit::<T>(1e-12), 200);
    if !(value < worst.margin) {
        return None;
    }
    let frame = Frame::new(q, theta).ok()?;
    let (margin, tau, violates) = evaluate(&frame);
    Some(Sample {
        index: usize::MAX,
        frame,
        margin,
        tau,
        violates,
    })
}

/// Forward-difference sign of the objective in `m` at each probe, for every
/// grid angle.
fn monotone_in_m<T: Real>(
    frames: &[Frame<T>],
    m_min: T,
    search: &SearchConfig,
    objective: impl Fn(&Frame<T>, T) -> T + Sync,
) -> bool {
    frames.par_iter().all(|frame| {
        search.m_probes.iter().all(|&offset| {
            let m = m_min + lit::<T>(offset);
            let h = lit::<T>(1e-6) * (T::one() + m);
            let lo = objective(frame, m);
            let hi = objective(frame, m + h);
            if !lo.is_finite() || !hi.is_finite() {
                return lo.is_finite() || hi == lo;
            }
            hi - lo >= -lit::<T>(search.tol) * (T::one() + lo.abs())
        })
    })
}

fn generic_search<T: Real>(
    psi: &PsiSpec<T>,
    omega: &OmegaRegion<T>,
    q: &CanonicalMap<T>,
    m_min: T,
    search: &SearchConfig,
) -> AdmissibilityVerdict<T> {
    let tol = lit::<T>(search.tol);
    let q0 = q.q0();
    let thetas = circle_grid(q, search.theta_points);
    let ms = m_grid(m_min, search);
    let taus = search.tau_offsets::<T>();
    let tau_cap = lit::<T>(search.tau_magnitudes.iter().cloned().fold(0.0, f64::max));

    struct Best<T> {
        worst: Option<(usize, AdmissiblePoint<T>, T)>,
        witness: Option<(usize, AdmissiblePoint<T>, T, Cx<T>)>,
        skips: usize,
    }

    let per_theta: Vec<Best<T>> = thetas
        .par_iter()
        .enumerate()
        .map(|(i, &theta)| {
            let mut best = Best {
                worst: None,
                witness: None,
                skips: 0,
            };
            let Ok(frame) = Frame::new(q, theta) else {
                return best;
            };
            let dist = (frame.r0 - q0).norm();
            for (j, &m) in ms.iter().enumerate() {
                for (k, &tau) in taus.iter().enumerate() {
                    let index = (i * ms.len() + j) * taus.len() + k;
                    let p = frame.point(m, tau);
                    if !psi.in_domain(p.r0, p.s0, p.t0) {
                        best.skips += 1;
                        continue;
                    }
                    let w = psi.eval(p.r0, p.s0, p.t0);
                    let inside = omega.margin(w);
                    if inside.is_nan() {
                        continue;
                    }
                    let margin = -inside;
                    if best.worst.as_ref().map_or(true, |&(_, _, b)| margin < b) {
                        best.worst = Some((index, p, margin));
                    }
                    if inside > tol * (T::one() + w.norm()) {
                        if best.witness.as_ref().map_or(true, |&(_, _, d, _)| dist < d) {
                            best.witness = Some((index, p, dist, w));
                        }
                    }
                }
            }
            best
        })
        .collect();

    let domain_skips = per_theta.iter().map(|b| b.skips).sum();
    let mut worst: Option<(usize, AdmissiblePoint<T>, T)> = None;
    let mut witness: Option<(usize, AdmissiblePoint<T>, T, Cx<T>)> = None;
    for b in per_theta {
        if let Some(w) = b.worst {
            if worst.as_ref().map_or(true, |x| w.2 < x.2) {
                worst = Some(w);
            }
        }
        if let Some(v) = b.witness {
            if witness.as_ref().map_or(true, |x| v.2 < x.2) {
                witness = Some(v);
            }
        }
    }
    let worst_point = worst.map(|(_, point, margin)| WorstPoint { point, margin });
    let status = if let Some((_, point, _, w)) = witness {
        VerdictStatus::Violation {
            witness: point,
            psi_value: w,
        }
    } else {
        match worst_point {
            Some(wp) => {
                let at_cap = wp.point.m >= *ms.last().expect("nonempty m grid") || wp.point.tau.norm() >= tau_cap;
                if at_cap {
                    VerdictStatus::Inconclusive {
                        bounds: bounds(m_min, search),
                    }
                } else {
                    VerdictStatus::AdmissibleNumeric { margin: wp.margin }
                }
            }
            None => VerdictStatus::Inconclusive {
                bounds: bounds(m_min, search),
            },
        }
    };
    AdmissibilityVerdict {
        status,
        worst_point,
        m_min,
        domain_skips,
    }
}

/// Largest disk about the origin for which a structured `psi` is
/// admissible, with the point attaining it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SharpRadius<T> {
    pub radius: T,
    pub point: AdmissiblePoint<T>,
    /// False when the multiplier could not be pinned at `m_min`; the radius
    /// is then the capped-grid minimum, an upper bound.
    pub pinned: bool,
}

/// `R* = inf |psi(r0, s0, t0)|` over the admissible set.
pub fn sharp_disk_radius<T: Real>(
    psi: &StructuredPsi<T>,
    q: &CanonicalMap<T>,
    n: usize,
    beta: T,
    search: &SearchConfig,
) -> Result<SharpRadius<T>> {
    let m_min = minimal_multiplier(q, n, beta)?;
    let frames = frames(q, search.theta_points)?;
    let objective = |frame: &Frame<T>, m: T| {
        let (b, v) = frame.affine(psi, m);
        distance_to_values(Cx::zero(), b, v)
    };
    let pinned = monotone_in_m(&frames, m_min, search, |f, m| objective(f, m).0);
    let ms = if pinned { vec![m_min] } else { m_grid(m_min, search) };
    // gains within a few ulps are rounding noise and keep the earlier point
    let noise = lit::<T>(8.0) * T::epsilon();
    let improves = |d: T, incumbent: T| d < incumbent - noise * incumbent.abs();
    let mut best: Option<(T, AdmissiblePoint<T>)> = None;
    let mut best_frame = None;
    for frame in &frames {
        for &m in &ms {
            let (d, tau) = objective(frame, m);
            if best.as_ref().map_or(true, |(b, _)| improves(d, *b)) {
                best = Some((d, frame.point(m, tau)));
                best_frame = Some(*frame);
            }
        }
    }
    let (mut radius, mut point) = best.ok_or(Error::ZeroSharpRadius)?;
    if let (true, Some(frame)) = (search.refine, best_frame) {
        let step = (T::PI() + T::PI()) / lit::<T>((search.theta_points + 2) as f64);
        let m = point.m;
        let f = |t: T| Frame::new(q, t).map(|fr| objective(&fr, m).0).unwrap_or(T::infinity());
        let (theta, value) = golden_min(f, frame.theta - step, frame.theta + step, lit::<T>(1e-12), 200);
        if improves(value, radius) {
            let fr = Frame::new(q, theta)?;
            let (d, tau) = objective(&fr, m);
            radius = d;
            point = fr.point(m, tau);
        }
    }
    if radius <= lit::<T>(search.tol) {
        return Err(Error::ZeroSharpRadius);
    }
    Ok(SharpRadius { radius, point, pinned })
}

/// Smallest `n <= 64` for which `psi` is admissible.
pub fn min_admissible_n<T: Real>(
    psi: &PsiSpec<T>,
    q: &CanonicalMap<T>,
    beta: T,
    omega: &OmegaRegion<T>,
    search: &SearchConfig,
) -> Result<usize> {
    const LIMIT: usize = 64;
    for n in 1..=LIMIT {
        let verdict = check_admissible(psi, omega, q, n, beta, search)?;
        if verdict.is_admissible() {
            return Ok(n);
        }
        if matches!(verdict.status, VerdictStatus::BaseOutside { .. }) {
            break;
        }
    }
    Err(Error::NoAdmissibleN { limit: LIMIT })
}
