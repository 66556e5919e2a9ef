//! Truncated complex power series and the fixed-coefficient classes they
//! populate.
//!
//! A [`Series`] of degree `N` stores `c_0..=c_N`. Binary operations work at the
//! larger of the two operand degrees and silently drop terms above it; no tail
//! bound is tracked.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use num_traits::{One, Zero};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, lit, real, Cx, Real};

/// Truncation degree used when the caller does not choose one.
pub const DEFAULT_DEGREE: usize = 64;

/// Value and first two derivatives of an analytic function at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Jet<T> {
    pub value: Cx<T>,
    pub d1: Cx<T>,
    pub d2: Cx<T>,
}

impl<T: Real> Jet<T> {
    /// The triple `(p(z), z p'(z), z^2 p''(z))` fed to `psi`.
    pub fn orbit(&self, z: Cx<T>) -> (Cx<T>, Cx<T>, Cx<T>) {
        (self.value, z * self.d1, z * z * self.d2)
    }
}

/// Anything that can be evaluated together with its first two derivatives
/// inside the closed unit disk.
///
/// Truncated [`Series`] implement this, and so do closed-form composites
/// whose truncated expansions converge too slowly near the boundary.
pub trait Analytic<T: Real>: Send + Sync {
    fn jet(&self, z: Cx<T>) -> Jet<T>;

    fn value(&self, z: Cx<T>) -> Cx<T> {
        self.jet(z).value
    }

    fn orbit(&self, z: Cx<T>) -> (Cx<T>, Cx<T>, Cx<T>) {
        self.jet(z).orbit(z)
    }
}

impl<T: Real, A: Analytic<T> + ?Sized> Analytic<T> for &A {
    fn jet(&self, z: Cx<T>) -> Jet<T> {
        (**self).jet(z)
    }
}

/// The class `H_beta[a, n]`: functions `a + beta z^n + ...` whose first
/// nonconstant coefficient sits at index `n` with modulus `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FixedClassSpec<T> {
    pub a: Cx<T>,
    pub n: usize,
    pub beta: T,
}

impl<T: Real> FixedClassSpec<T> {
    pub fn new(a: Cx<T>, n: usize, beta: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidClass("n must be at least 1".into()));
        }
        if !(beta >= T::zero()) || !beta.is_finite() {
            return Err(Error::InvalidClass(format!(
                "beta must be a finite nonnegative real, got {beta}"
            )));
        }
        if !is_finite(a) {
            return Err(Error::InvalidClass("a must be finite".into()));
        }
        Ok(Self { a, n, beta })
    }

    /// Whether `s` belongs to the class up to `tol`: `c_0 = a`, `c_k = 0` for
    /// `0 < k < n` and `|c_n| = beta`.
    pub fn admits(&self, s: &Series<T>, tol: T) -> bool {
        if (s.coeff(0) - self.a).norm() > tol {
            return false;
        }
        if (1..self.n).any(|k| s.coeff(k).norm() > tol) {
            return false;
        }
        (s.coeff(self.n).norm() - self.beta).abs() <= tol
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Series<T> {
    coeffs: Vec<Cx<T>>,
}

impl<T: Real> Series<T> {
    pub fn new(coeffs: Vec<Cx<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if let Some(index) = coeffs.iter().position(|c| !is_finite(*c)) {
            return Err(Error::NonFiniteCoefficient { index });
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&x| real(x)).collect())
    }

    fn raw(coeffs: Vec<Cx<T>>) -> Self {
        debug_assert!(!coeffs.is_empty());
        Self { coeffs }
    }

    pub fn zero(degree: usize) -> Self {
        Self::raw(vec![Cx::zero(); degree + 1])
    }

    pub fn constant(c: Cx<T>) -> Self {
        Self::raw(vec![c])
    }

    /// The identity map `z`.
    pub fn identity() -> Self {
        Self::raw(vec![Cx::zero(), Cx::one()])
    }

    /// `c z^k`.
    pub fn monomial(c: Cx<T>, k: usize) -> Self {
        let mut s = Self::zero(k);
        s.coeffs[k] = c;
        s
    }

    /// Builds the member `a + beta z^n + tail_0 z^{n+1} + tail_1 z^{n+2} + ...`
    /// of `H_beta[a, n]`.
    pub fn member(spec: &FixedClassSpec<T>, tail: &[Cx<T>]) -> Result<Self> {
        let mut coeffs = vec![Cx::zero(); spec.n + 1 + tail.len()];
        coeffs[0] = spec.a;
        coeffs[spec.n] = coeffs[spec.n] + real(spec.beta);
        coeffs[spec.n + 1..].copy_from_slice(tail);
        Self::new(coeffs)
    }

    /// Like [`Series::member`] but with explicitly indexed free coefficients.
    /// Indices at or below `n` are owned by the class and are rejected.
    pub fn member_from_terms(spec: &FixedClassSpec<T>, terms: &[(usize, Cx<T>)]) -> Result<Self> {
        let top = terms.iter().map(|&(k, _)| k).max().unwrap_or(spec.n);
        let mut tail = vec![Cx::zero(); top.saturating_sub(spec.n)];
        for &(k, c) in terms {
            if k <= spec.n {
                return Err(Error::FixedIndex {
                    index: k,
                    first_free: spec.n + 1,
                });
            }
            tail[k - spec.n - 1] = tail[k - spec.n - 1] + c;
        }
        Self::member(spec, &tail)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Cx<T>] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Cx<T>> {
        self.coeffs
    }

    /// Coefficient `c_k`; zero above the degree.
    pub fn coeff(&self, k: usize) -> Cx<T> {
        self.coeffs.get(k).copied().unwrap_or_else(Cx::zero)
    }

    /// Pads with zeros or truncates to the requested degree.
    pub fn with_degree(&self, degree: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(degree + 1, Cx::zero());
        Self::raw(coeffs)
    }

    /// Index of the first coefficient above `tol` in modulus, ignoring `c_0`.
    pub fn leading_index(&self, tol: T) -> Option<usize> {
        (1..self.coeffs.len()).find(|&k| self.coeffs[k].norm() > tol)
    }

    /// Horner evaluation.
    pub fn evaluate(&self, z: Cx<T>) -> Cx<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Cx::zero(), |acc, &c| acc * z + c)
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() == 1 {
            return Self::constant(Cx::zero());
        }
        Self::raw(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, &c)| c * lit::<T>(k as f64))
                .collect(),
        )
    }

    /// `(p(z), z p'(z), z^2 p''(z))`.
    pub fn orbit(&self, z: Cx<T>) -> (Cx<T>, Cx<T>, Cx<T>) {
        self.jet(z).orbit(z)
    }

    /// Multiplies the argument: `c_k -> c_k s^k`, i.e. `z -> f(s z)`.
    pub fn rescale_argument(&self, s: Cx<T>) -> Self {
        let mut power = Cx::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                let out = c * power;
                power = power * s;
                out
            })
            .collect();
        Self::raw(coeffs)
    }

    pub fn scale(&self, k: Cx<T>) -> Self {
        Self::raw(self.coeffs.iter().map(|&c| c * k).collect())
    }

    /// `z f(z)`, keeping the degree (the top coefficient is dropped).
    pub fn mul_z(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        coeffs.push(Cx::zero());
        coeffs.extend_from_slice(&self.coeffs[..self.coeffs.len() - 1]);
        Self::raw(coeffs)
    }

    /// `f(z) / z` for `f(0) = 0`; the freed top slot is zero.
    pub fn div_z(&self, tol: T) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() > tol {
            return Err(Error::InnerNotCentered {
                re: c0.re.to_f64_lossy(),
                im: c0.im.to_f64_lossy(),
            });
        }
        let mut coeffs = self.coeffs[1..].to_vec();
        coeffs.push(Cx::zero());
        Ok(Self::raw(coeffs))
    }

    /// Truncated product at the larger operand degree.
    pub fn mul_trunc(&self, other: &Self) -> Self {
        let degree = self.degree().max(other.degree());
        let mut out = vec![Cx::zero(); degree + 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate().take(degree + 1 - i) {
                out[i + j] = out[i + j] + a * b;
            }
        }
        Self::raw(out)
    }

    /// Truncated quotient. A common power of `z` is cancelled first; the
    /// divisor must not vanish identically.
    pub fn div_trunc(&self, divisor: &Self) -> Result<Self> {
        let degree = self.degree().max(divisor.degree());
        let shift = divisor
            .coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(Error::DivisionByZeroSeries)?;
        if self.coeffs.iter().take(shift).any(|c| !c.is_zero()) {
            return Err(Error::DivisionByZeroSeries);
        }
        let num: Vec<Cx<T>> = (shift..=degree + shift).map(|k| self.coeff(k)).collect();
        let den: Vec<Cx<T>> = (shift..=degree + shift).map(|k| divisor.coeff(k)).collect();
        let lead_inv = den[0].inv();
        let mut out = vec![Cx::zero(); degree + 1];
        for k in 0..=degree {
            let mut acc = num[k];
            for j in 1..=k {
                acc = acc - den[j] * out[k - j];
            }
            out[k] = acc * lead_inv;
        }
        Self::new(out)
    }

    /// Truncated composition `outer(inner(z))` via Horner's scheme in series
    /// arithmetic, carried out at the larger of the two degrees.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let c0 = inner.coeffs[0];
        if !c0.is_zero() {
            return Err(Error::InnerNotCentered {
                re: c0.re.to_f64_lossy(),
                im: c0.im.to_f64_lossy(),
            });
        }
        let degree = self.degree().max(inner.degree());
        let inner = inner.with_degree(degree);
        let mut acc = Self::zero(degree);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul_trunc(&inner);
            acc.coeffs[0] = acc.coeffs[0] + c;
        }
        Ok(acc)
    }

    /// Principal square root anchored at `r(0) = 1`.
    pub fn sqrt(&self) -> Result<Self> {
        let c0 = self.coeffs[0];
        let tol = lit::<T>(1e-12);
        if (c0 - Cx::one()).norm() > tol {
            return Err(Error::SqrtAnchor {
                re: c0.re.to_f64_lossy(),
                im: c0.im.to_f64_lossy(),
            });
        }
        let n = self.degree();
        let mut r = vec![Cx::zero(); n + 1];
        r[0] = Cx::one();
        let half = lit::<T>(0.5);
        for k in 1..=n {
            let mut acc = self.coeffs[k];
            for j in 1..k {
                acc = acc - r[j] * r[k - j];
            }
            r[k] = acc * half;
        }
        Self::new(r)
    }

    /// `exp(f)` by the recurrence `k r_k = sum_j j f_j r_{k-j}`.
    pub fn exp(&self) -> Result<Self> {
        let n = self.degree();
        let mut r = vec![Cx::zero(); n + 1];
        r[0] = self.coeffs[0].exp();
        for k in 1..=n {
            let mut acc = Cx::zero();
            for j in 1..=k {
                acc = acc + self.coeffs[j] * r[k - j] * lit::<T>(j as f64);
            }
            r[k] = acc / lit::<T>(k as f64);
        }
        Self::new(r)
    }

    pub fn powi(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::constant(Cx::one()).with_degree(self.degree());
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_trunc(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_trunc(&base);
            }
        }
        acc
    }

    /// `z f'(z)`: coefficient `k` scaled by `k`.
    pub fn alexander(&self) -> Self {
        Self::raw(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, &c)| c * lit::<T>(k as f64))
                .collect(),
        )
    }

    /// Inverse of [`Series::alexander`] on series with `c_0 = 0`.
    pub fn inverse_alexander(&self, tol: T) -> Result<Self> {
        let c0 = self.coeffs[0];
        if c0.norm() > tol {
            return Err(Error::InnerNotCentered {
                re: c0.re.to_f64_lossy(),
                im: c0.im.to_f64_lossy(),
            });
        }
        let mut coeffs = vec![Cx::zero(); self.coeffs.len()];
        for (k, &c) in self.coeffs.iter().enumerate().skip(1) {
            coeffs[k] = c / lit::<T>(k as f64);
        }
        Ok(Self::raw(coeffs))
    }
}

impl<T: Real> Analytic<T> for Series<T> {
    /// Simultaneous Horner recurrences for `p`, `p'` and `p''/2`.
    fn jet(&self, z: Cx<T>) -> Jet<T> {
        let (mut p0, mut p1, mut p2) = (Cx::zero(), Cx::zero(), Cx::zero());
        for &c in self.coeffs.iter().rev() {
            p2 = p2 * z + p1;
            p1 = p1 * z + p0;
            p0 = p0 * z + c;
        }
        Jet {
            value: p0,
            d1: p1,
            d2: p2 * lit::<T>(2.0),
        }
    }

    fn value(&self, z: Cx<T>) -> Cx<T> {
        self.evaluate(z)
    }
}

impl<T: Real> Add for &Series<T> {
    type Output = Series<T>;

    fn add(self, rhs: Self) -> Series<T> {
        let degree = self.degree().max(rhs.degree());
        Series::raw((0..=degree).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl<T: Real> Sub for &Series<T> {
    type Output = Series<T>;

    fn sub(self, rhs: Self) -> Series<T> {
        let degree = self.degree().max(rhs.degree());
        Series::raw((0..=degree).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl<T: Real> Mul for &Series<T> {
    type Output = Series<T>;

    fn mul(self, rhs: Self) -> Series<T> {
        self.mul_trunc(rhs)
    }
}

impl<T: Real> Neg for &Series<T> {
    type Output = Series<T>;

    fn neg(self) -> Series<T> {
        Series::raw(self.coeffs.iter().map(|&c| -c).collect())
    }
}

/// Coefficients of `exp(z)` up to `degree`, handy as a reference series.
pub fn exp_series<T: Real>(degree: usize) -> Series<T> {
    let mut coeffs = Vec::with_capacity(degree + 1);
    let mut term = T::one();
    for k in 0..=degree {
        if k > 0 {
            term = term / lit::<T>(k as f64);
        }
        coeffs.push(Complex::new(term, T::zero()));
    }
    Series::raw(coeffs)
}
