//! Extended Schwarz lemma and the boundary-contact lemmas, in computable form.
//!
//! The verifiers take a function and a contact point, compute the contact
//! multiplier `m` and check each inequality numerically. Locating the contact
//! point (maximum modulus, minimum real part, first boundary contact) is
//! handled by the search helpers at the bottom of the module.

use num_complex::Complex;
use num_traits::{One, Zero};
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::maps::CanonicalMap;
use crate::scalar::{is_finite, lit, polar, real, unit, Cx, Real};
use crate::search::{bisect, circle_argmax};
use crate::series::{Analytic, FixedClassSpec, Jet, Series};

/// Tolerances for the lemma checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LemmaTolerance<T> {
    /// `m` counts as real when `|Im m| <= reality * (1 + |m|)`.
    pub reality: T,
    /// Slack on each inequality, relative to `1 + |rhs|`.
    pub inequality: T,
    /// Allowed deviation of `|zeta0|` from 1.
    pub boundary: T,
}

impl<T: Real> Default for LemmaTolerance<T> {
    fn default() -> Self {
        Self {
            reality: lit(1e-6),
            inequality: lit(1e-9),
            boundary: lit(1e-6),
        }
    }
}

impl<T: Real> LemmaTolerance<T> {
    fn is_real(&self, m: Cx<T>) -> bool {
        m.im.abs() <= self.reality * (T::one() + m.norm())
    }

    fn geq(&self, lhs: T, rhs: T) -> bool {
        lhs >= rhs - self.inequality * (T::one() + rhs.abs())
    }
}

/// Contact data for the interior-maximum and boundary-contact lemmas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ContactReport<T> {
    pub z0: Cx<T>,
    /// Boundary preimage `q^{-1}(p(z0))`; absent for the interior-maximum form.
    pub zeta0: Option<Cx<T>>,
    pub m: T,
    pub m_imag: T,
    pub m_lower: T,
    /// `Re(z0 p''/p' + 1)`.
    pub curvature_lhs: T,
    /// `m Re(zeta0 q''/q' + 1)`, or `m` for the interior-maximum form.
    pub curvature_rhs: T,
    pub pass: bool,
}

impl<T: Real> ContactReport<T> {
    /// `m - m_lower`.
    pub fn slack(&self) -> T {
        self.m - self.m_lower
    }
}

/// Outcome of the disk-growth and minimum-real-part lemmas.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthReport<T> {
    pub z0: Cx<T>,
    /// `z0 p'(z0)/p(z0)` (growth form) or `z0 p'(z0)` (real-part form).
    pub value: Cx<T>,
    pub bound: T,
    pub curvature_lhs: T,
    pub curvature_rhs: T,
    pub reality_ok: bool,
    pub bound_ok: bool,
    pub curvature_ok: bool,
    pub pass: bool,
}

/// `r (r + |a1|) / (1 + |a1| r)`.
pub fn schwarz_bound<T: Real>(a1_mag: T, r: T) -> Result<T> {
    let unit_interval = |x: T| x >= T::zero() && x <= T::one();
    if !unit_interval(a1_mag) || !unit_interval(r) {
        return Err(Error::OutOfRange(format!(
            "schwarz_bound needs |a1|, r in [0, 1], got {a1_mag}, {r}"
        )));
    }
    Ok(r * (r + a1_mag) / (T::one() + a1_mag * r))
}

/// Truncated series of `e^{-it} z (z + a1 e^{it}) / (1 + conj(a1) e^{-it} z)`,
/// the function attaining the extended Schwarz bound.
pub fn schwarz_extremal<T: Real>(a1: Cx<T>, t: T, degree: usize) -> Result<Series<T>> {
    if !(a1.norm() <= T::one()) {
        return Err(Error::OutOfRange(format!("|a1| = {} exceeds 1", a1.norm())));
    }
    let rot = unit(t);
    let degree = degree.max(2);
    let num = Series::new(vec![Cx::zero(), a1, rot.conj()])?.with_degree(degree);
    let den = Series::new(vec![Cx::one(), a1.conj() * rot.conj()])?.with_degree(degree);
    num.div_trunc(&den)
}

/// `n + (|q'(0)| - beta r0^n) / (|q'(0)| + beta r0^n)`.
///
/// The admissible range is `beta r0^n <= |q'(0)|`, i.e. `|g_n| r0^n <= 1` for
/// `g = q^{-1} o p`; at `r0 = 1` this is `beta <= |q'(0)|`.
pub fn m_lower_bound<T: Real>(n: usize, qprime0_mag: T, beta: T, r0: T) -> Result<T> {
    if n == 0 {
        return Err(Error::OutOfRange("n must be at least 1".into()));
    }
    if !(qprime0_mag > T::zero()) || !(beta >= T::zero()) {
        return Err(Error::OutOfRange(format!(
            "need |q'(0)| > 0 and beta >= 0, got {qprime0_mag}, {beta}"
        )));
    }
    if !(r0 > T::zero() && r0 <= T::one()) {
        return Err(Error::OutOfRange(format!("r0 must lie in (0, 1], got {r0}")));
    }
    let weighted = beta * r0.powi(n as i32);
    if weighted > qprime0_mag * (T::one() + lit::<T>(1e-12)) {
        return Err(Error::BetaTooLarge {
            beta: weighted.to_f64_lossy(),
            bound: qprime0_mag.to_f64_lossy(),
        });
    }
    Ok(lit::<T>(n as f64) + (qprime0_mag - weighted) / (qprime0_mag + weighted))
}

/// Interior-maximum lemma for `g = g_n z^n + ...` with `|g(z0)|` maximal on
/// `|z| <= |z0|`: `m = z0 g'(z0)/g(z0)` is real, at least
/// `n + (|g(z0)| - |g_n| r0^n)/(|g(z0)| + |g_n| r0^n)`, and bounds
/// `Re(z0 g''/g' + 1)` from below.
pub fn verify_interior_max<T: Real>(g: &Series<T>, z0: Cx<T>, tol: &LemmaTolerance<T>) -> Result<ContactReport<T>> {
    let scale = g.coeffs().iter().fold(T::zero(), |acc, c| acc.max(c.norm()));
    let tiny = lit::<T>(1e-14) * scale.max(T::one());
    if g.coeff(0).norm() > tiny {
        return Err(Error::InnerNotCentered {
            re: g.coeff(0).re.to_f64_lossy(),
            im: g.coeff(0).im.to_f64_lossy(),
        });
    }
    let n = g
        .leading_index(tiny)
        .ok_or_else(|| Error::Degenerate("g vanishes identically".into()))?;
    let gn = g.coeff(n).norm();
    let jet = g.jet(z0);
    if jet.value.norm() <= tiny || jet.d1.norm() <= tiny {
        return Err(Error::Degenerate("g or g' vanishes at z0".into()));
    }
    let m = z0 * jet.d1 / jet.value;
    let modulus = jet.value.norm();
    let weighted = gn * z0.norm().powi(n as i32);
    let m_lower = lit::<T>(n as f64) + (modulus - weighted) / (modulus + weighted);
    let curvature_lhs = (z0 * jet.d2 / jet.d1 + T::one()).re;
    let pass = tol.is_real(m) && tol.geq(m.re, m_lower) && tol.geq(curvature_lhs, m.re);
    Ok(ContactReport {
        z0,
        zeta0: None,
        m: m.re,
        m_imag: m.im,
        m_lower,
        curvature_lhs,
        curvature_rhs: m.re,
        pass,
    })
}

/// Boundary-contact lemma: at the first point `z0` where `p` reaches
/// `q(dD)`, `z0 p'(z0) = m zeta0 q'(zeta0)` with `m` real, bounded below by
/// [`m_lower_bound`] at `r0 = |z0|`, and the curvature inequality holds.
pub fn verify_boundary_contact<T: Real>(
    p: &impl Analytic<T>,
    spec: &FixedClassSpec<T>,
    q: &CanonicalMap<T>,
    z0: Cx<T>,
    tol: &LemmaTolerance<T>,
) -> Result<ContactReport<T>> {
    let jet = p.jet(z0);
    let zeta0 = q.invert(jet.value)?;
    if !is_finite(zeta0) || (zeta0.norm() - T::one()).abs() > tol.boundary {
        return Err(Error::NotOnBoundary {
            modulus: zeta0.norm().to_f64_lossy(),
        });
    }
    let (q1, q2) = q.derivatives(zeta0)?;
    let m = z0 * jet.d1 / (zeta0 * q1);
    let m_lower = m_lower_bound(spec.n, q.qprime0_abs(), spec.beta, z0.norm())?;
    let curvature_lhs = (z0 * jet.d2 / jet.d1 + T::one()).re;
    let curvature_rhs = m.re * (zeta0 * q2 / q1 + T::one()).re;
    let pass = tol.is_real(m) && tol.geq(m.re, m_lower) && tol.geq(curvature_lhs, curvature_rhs);
    Ok(ContactReport {
        z0,
        zeta0: Some(zeta0),
        m: m.re,
        m_imag: m.im,
        m_lower,
        curvature_lhs,
        curvature_rhs,
        pass,
    })
}

/// Growth lemma for the disk case: with `|p(z0)|` maximal on `|z| <= |z0|`,
/// both `z0 p'/p` (real) and `Re(z0 p''/p' + 1)` are at least
/// `(n + (M^2 - |a|^2 - beta M r0^n)/(M^2 - |a|^2 + beta M r0^n)) |p(z0) - a|^2 / (M^2 - |a|^2)`
/// where `M = |p(z0)|`.
pub fn verify_max_modulus_growth<T: Real>(
    p: &impl Analytic<T>,
    spec: &FixedClassSpec<T>,
    z0: Cx<T>,
    tol: &LemmaTolerance<T>,
) -> Result<GrowthReport<T>> {
    if spec.beta == T::zero() {
        return Err(Error::Degenerate("beta must be nonzero".into()));
    }
    let jet = p.jet(z0);
    let modulus = jet.value.norm();
    let gap = modulus * modulus - spec.a.norm_sqr();
    if !(gap > T::zero()) {
        return Err(Error::Degenerate("|p(z0)| must exceed |a|".into()));
    }
    let weighted = spec.beta * modulus * z0.norm().powi(spec.n as i32);
    let m_lower = lit::<T>(spec.n as f64) + (gap - weighted) / (gap + weighted);
    let bound = m_lower * (jet.value - spec.a).norm_sqr() / gap;
    let value = z0 * jet.d1 / jet.value;
    let curvature_lhs = (z0 * jet.d2 / jet.d1 + T::one()).re;
    let reality_ok = tol.is_real(value);
    let bound_ok = tol.geq(value.re, bound);
    let curvature_ok = tol.geq(curvature_lhs, bound);
    Ok(GrowthReport {
        z0,
        value,
        bound,
        curvature_lhs,
        curvature_rhs: bound,
        reality_ok,
        bound_ok,
        curvature_ok,
        pass: reality_ok && bound_ok && curvature_ok,
    })
}

/// Half-plane lemma: with `Re p(z0)` minimal on `|z| <= |z0|` and
/// `Re p(z0) < Re a`, `z0 p'(z0)` is real and at most
/// `-(1/2)(n + (2d - beta r0^n)/(2d + beta r0^n)) |p(z0) - a|^2 / d` with
/// `d = Re(a - p(z0))`; also `Re(z0 p''/p' + 1) >= 0`.
pub fn verify_min_re<T: Real>(
    p: &impl Analytic<T>,
    spec: &FixedClassSpec<T>,
    z0: Cx<T>,
    tol: &LemmaTolerance<T>,
) -> Result<GrowthReport<T>> {
    if spec.beta == T::zero() {
        return Err(Error::Degenerate("beta must be nonzero".into()));
    }
    let jet = p.jet(z0);
    let d = (spec.a - jet.value).re;
    if !(d > T::zero()) {
        return Err(Error::Degenerate("Re p(z0) must lie below Re a".into()));
    }
    let two = lit::<T>(2.0);
    let weighted = spec.beta * z0.norm().powi(spec.n as i32);
    let m_lower = lit::<T>(spec.n as f64) + (two * d - weighted) / (two * d + weighted);
    let bound = -m_lower * (jet.value - spec.a).norm_sqr() / (two * d);
    let value = z0 * jet.d1;
    let curvature_lhs = (z0 * jet.d2 / jet.d1 + T::one()).re;
    let reality_ok = tol.is_real(value);
    // value <= bound, written as -value >= -bound
    let bound_ok = tol.geq(-value.re, -bound);
    let curvature_ok = tol.geq(curvature_lhs, T::zero());
    Ok(GrowthReport {
        z0,
        value,
        bound,
        curvature_lhs,
        curvature_rhs: T::zero(),
        reality_ok,
        bound_ok,
        curvature_ok,
        pass: reality_ok && bound_ok && curvature_ok,
    })
}

/// Schwarz function `w(z) = z^n (c + z h(z)) / (1 + conj(c) z h(z))` with
/// `|c| <= 1` and `sup |h| <= 1`. Its `n`-th coefficient is `c` and
/// `|w(z)| <= |z|^n (|z| + |c|)/(1 + |c||z|)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SchwarzFunction<T> {
    pub n: usize,
    pub c: Cx<T>,
    pub h: Series<T>,
}

impl<T: Real> SchwarzFunction<T> {
    pub fn new(n: usize, c: Cx<T>, h: Series<T>) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        if !(c.norm() <= T::one() + lit::<T>(1e-12)) {
            return Err(Error::OutOfRange(format!("|c| = {} exceeds 1", c.norm())));
        }
        Ok(Self { n, c, h })
    }

    /// Draws `h` with complex Gaussian coefficients decaying by 0.7 per
    /// degree, scaled so that `sup |h| <= 1` on the closed disk.
    pub fn random<R: Rng + ?Sized>(n: usize, c: Cx<T>, rng: &mut R) -> Result<Self> {
        let degree = rng.gen_range(0..=6usize);
        let mut coeffs = Vec::with_capacity(degree + 1);
        let mut decay = 1.0f64;
        for _ in 0..=degree {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            coeffs.push(Complex::new(lit::<T>(re * decay), lit::<T>(im * decay)));
            decay *= 0.7;
        }
        let h = Series::new(coeffs)?;
        let scale = lit::<T>(rng.gen_range(0.2..=1.0f64));
        Self::new(n, c, normalize_sup(&h, scale))
    }

    pub fn to_series(&self, degree: usize) -> Result<Series<T>> {
        let u = self.h.with_degree(degree).mul_z();
        let one = Series::constant(Cx::one()).with_degree(degree);
        let num = &u + &Series::constant(self.c).with_degree(degree);
        let den = &u.scale(self.c.conj()) + &one;
        let phi = num.div_trunc(&den)?;
        let mut coeffs = vec![Cx::zero(); degree + 1];
        for k in 0..=degree.saturating_sub(self.n) {
            coeffs[k + self.n] = phi.coeff(k);
        }
        Series::new(coeffs)
    }
}

/// `h * target / sup|h|` with the supremum over the closed disk bounded from
/// the circle samples through Bernstein's inequality.
pub fn normalize_sup<T: Real>(h: &Series<T>, target: T) -> Series<T> {
    let samples = 4096usize;
    let tau = T::PI() + T::PI();
    let grid_max = (0..samples)
        .map(|k| h.evaluate(unit(tau * lit::<T>(k as f64) / lit::<T>(samples as f64))).norm())
        .fold(T::zero(), T::max);
    if grid_max == T::zero() {
        return h.clone();
    }
    let deficit = lit::<T>(h.degree() as f64) * T::PI() / lit::<T>(samples as f64);
    h.scale(real(target * (T::one() - deficit) / grid_max))
}

impl<T: Real> Analytic<T> for SchwarzFunction<T> {
    fn jet(&self, z: Cx<T>) -> Jet<T> {
        let hj = self.h.jet(z);
        let u = z * hj.value;
        let u1 = hj.value + z * hj.d1;
        let u2 = hj.d1 * lit::<T>(2.0) + z * hj.d2;
        let one = Cx::<T>::one();
        let cbar = self.c.conj();
        let den = cbar * u + one;
        let det = real(T::one() - self.c.norm_sqr());
        let phi = (u + self.c) / den;
        let phi_u = det / (den * den);
        let phi_uu = -(cbar * lit::<T>(2.0)) * phi_u / den;
        let big1 = phi_u * u1;
        let big2 = phi_uu * u1 * u1 + phi_u * u2;
        let n = self.n as i32;
        let nf = lit::<T>(self.n as f64);
        let pow = |k: i32| if k < 0 { Cx::zero() } else { z.powi(k) };
        let zn = pow(n);
        Jet {
            value: zn * phi,
            d1: pow(n - 1) * phi * nf + zn * big1,
            d2: pow(n - 2) * phi * (nf * (nf - T::one())) + pow(n - 1) * big1 * (nf * lit::<T>(2.0)) + zn * big2,
        }
    }
}

/// `p(z) = q(gain * w(z))`. With `gain = 1` this is subordinate to `q`; with
/// `gain > 1` it leaves `q(D)` and exhibits a boundary contact.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Composite<T> {
    pub map: CanonicalMap<T>,
    pub inner: SchwarzFunction<T>,
    pub gain: T,
}

impl<T: Real> Composite<T> {
    /// The class this composite belongs to: `a = q(0)`, index `n` of the
    /// inner function, `beta = |q'(0) gain c|`.
    pub fn class(&self) -> Result<FixedClassSpec<T>> {
        FixedClassSpec::new(
            self.map.q0(),
            self.inner.n,
            (self.map.qprime0() * self.inner.c * self.gain).norm(),
        )
    }

    pub fn to_series(&self, degree: usize) -> Result<Series<T>> {
        let w = self.inner.to_series(degree)?.scale(real(self.gain));
        self.map.compose_series(&w)
    }
}

impl<T: Real> Analytic<T> for Composite<T> {
    fn jet(&self, z: Cx<T>) -> Jet<T> {
        let w = self.inner.jet(z);
        let v = w.value * self.gain;
        let v1 = w.d1 * self.gain;
        let v2 = w.d2 * self.gain;
        let q = self.map.jet(v);
        Jet {
            value: q.value,
            d1: q.d1 * v1,
            d2: q.d2 * v1 * v1 + q.d1 * v2,
        }
    }
}

/// Circle-scan resolution used by the locators.
pub const CIRCLE_SAMPLES: usize = 4096;

/// Point of maximum modulus of `p` on `|z| = r`.
pub fn max_modulus_point<T: Real>(p: &impl Analytic<T>, r: T, samples: usize) -> Cx<T> {
    let f = |t: T| p.value(polar(r, t)).norm();
    let slope = |t: T| {
        let z = polar(r, t);
        let jet = p.jet(z);
        -(z * jet.d1 / jet.value).im
    };
    let (theta, _) = circle_argmax(f, Some(&slope), samples);
    polar(r, theta)
}

/// Point of minimum real part of `p` on `|z| = r`.
pub fn min_real_point<T: Real>(p: &impl Analytic<T>, r: T, samples: usize) -> Cx<T> {
    let f = |t: T| -p.value(polar(r, t)).re;
    let slope = |t: T| {
        let z = polar(r, t);
        (z * p.jet(z).d1).im
    };
    let (theta, _) = circle_argmax(f, Some(&slope), samples);
    polar(r, theta)
}

/// First boundary contact of `p` with `q(dD)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Contact<T> {
    pub radius: T,
    pub z0: Cx<T>,
}

/// Finds the smallest `r <= r_max` with `max_theta |q^{-1}(p(r e^{i theta}))| >= 1`
/// by bisection, then the contact angle on that circle.
pub fn first_contact<T: Real>(p: &impl Analytic<T>, q: &CanonicalMap<T>, r_max: T, samples: usize) -> Option<Contact<T>> {
    let preimage = |z: Cx<T>| -> T {
        match q.invert(p.value(z)) {
            Ok(g) if is_finite(g) => g.norm(),
            _ => T::infinity(),
        }
    };
    let slope = |r: T| {
        move |t: T| {
            let z = polar(r, t);
            let jet = p.jet(z);
            let g = q.invert(jet.value).unwrap_or_else(|_| Cx::zero());
            let (q1, _) = q.derivatives(g).unwrap_or((Cx::one(), Cx::zero()));
            // d/dtheta log|g| = -Im(z g'/g), g' = p'/q'(g)
            -(z * jet.d1 / (q1 * g)).im
        }
    };
    let peak = |r: T| {
        let s = slope(r);
        circle_argmax(|t: T| preimage(polar(r, t)), Some(&s), samples)
    };
    if peak(r_max).1 < T::one() {
        return None;
    }
    let (radius, _) = bisect(
        |r: T| peak(r).1 - T::one(),
        lit::<T>(1e-6).min(r_max),
        r_max,
        lit::<T>(1e-15),
        80,
    )?;
    let (theta, _) = peak(radius);
    Some(Contact {
        radius,
        z0: polar(radius, theta),
    })
}

/// A random pair `p = q(gain * w)` with `gain` in `(1.05, 3]` and the
/// `n`-th coefficient of `p` equal to `beta`, together with its first
/// boundary contact. Redraws (up to 64 times) when `p` stays inside `q(D)`
/// up to `r_max`.
pub fn sample_contact_pair<T: Real, R: Rng + ?Sized>(
    q: &CanonicalMap<T>,
    n: usize,
    beta: T,
    r_max: T,
    rng: &mut R,
) -> Result<Option<(Composite<T>, Contact<T>)>> {
    let bound = q.qprime0_abs();
    if beta > bound * (T::one() + lit::<T>(1e-12)) {
        return Err(Error::BetaTooLarge {
            beta: beta.to_f64_lossy(),
            bound: bound.to_f64_lossy(),
        });
    }
    for _ in 0..64 {
        let gain = lit::<T>(rng.gen_range(1.05..=3.0f64));
        let c = Complex::new(beta / gain, T::zero()) / q.qprime0();
        let inner = SchwarzFunction::random(n, c, rng)?;
        let p = Composite { map: *q, inner, gain };
        if let Some(contact) = first_contact(&p, q, r_max, CIRCLE_SAMPLES) {
            return Ok(Some((p, contact)));
        }
    }
    Ok(None)
}

/// Draws a random unimodular-or-smaller complex number `sqrt(U) e^{i phi}`.
pub fn random_disk_point<T: Real, R: Rng + ?Sized>(rng: &mut R, max_modulus: f64) -> Cx<T> {
    let r = rng.gen::<f64>().sqrt() * max_modulus;
    let phi = rng.gen::<f64>() * std::f64::consts::TAU;
    Complex::new(lit::<T>(r * phi.cos()), lit::<T>(r * phi.sin()))
}
