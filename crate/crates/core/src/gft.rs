//! Orders of starlikeness and of the square-root functionals for convex and
//! starlike functions with a given second coefficient, and their numerical
//! verification on explicit families.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{lit, polar, Cx, Real};
use crate::search::bisect;
use crate::series::{Analytic, Jet, Series};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderResult<T> {
    pub a2_mag: T,
    pub alpha: T,
    pub bracket: (T, T),
    pub iterations: usize,
    /// Residual of the defining equation at `alpha`.
    pub residual: T,
}

fn check_range<T: Real>(a2: T, max: f64) -> Result<()> {
    if !(a2 >= T::zero() && a2 <= lit::<T>(max)) {
        return Err(Error::OutOfRange(format!("|a2| = {a2} must lie in [0, {max}]")));
    }
    Ok(())
}

/// `g(alpha) = 2 alpha^3 - |a2| alpha^2 - 4 alpha + 2`.
pub fn starlike_cubic<T: Real>(a2: T, alpha: T) -> T {
    let two = lit::<T>(2.0);
    ((two * alpha - a2) * alpha - lit::<T>(4.0)) * alpha + two
}

/// Order of starlikeness of a convex function with `|a2|` given: the root of
/// [`starlike_cubic`] in `[1/2, 2/3]`, found by bisection.
pub fn starlike_order_of_convex<T: Real>(a2_mag: T) -> Result<OrderResult<T>> {
    check_range(a2_mag, 1.0)?;
    let lo = lit::<T>(0.5);
    let hi = lit::<T>(2.0 / 3.0);
    let g = |a: T| starlike_cubic(a2_mag, a);
    let (g_lo, g_hi) = (g(lo), g(hi));
    // g(1/2) = (1 - |a2|)/4 >= 0 and g(2/3) < 0
    if g_lo < T::zero() || g_hi > T::zero() {
        return Err(Error::NotBracketed {
            g_lo: g_lo.to_f64_lossy(),
            g_hi: g_hi.to_f64_lossy(),
        });
    }
    // g' = 6 a^2 - 2 |a2| a - 4 < 0 on the bracket, so the root is unique
    debug_assert!(lit::<T>(6.0) * hi * hi - lit::<T>(4.0) < T::zero());
    let (alpha, iterations) = bisect(g, lo, hi, lit::<T>(1e-12), 200).ok_or(Error::NotBracketed {
        g_lo: g_lo.to_f64_lossy(),
        g_hi: g_hi.to_f64_lossy(),
    })?;
    Ok(OrderResult {
        a2_mag,
        alpha,
        bracket: (lo, hi),
        iterations,
        residual: g(alpha).abs(),
    })
}

/// Lower bound for `Re sqrt(f')`, `f` convex:
/// `(10 + b - sqrt(b^2 + 20 b + 4)) / 12`.
pub fn sqrt_deriv_order<T: Real>(a2_mag: T) -> Result<T> {
    check_range(a2_mag, 1.0)?;
    Ok(sqrt_deriv_formula(a2_mag))
}

fn sqrt_deriv_formula<T: Real>(b: T) -> T {
    (lit::<T>(10.0) + b - (b * b + lit::<T>(20.0) * b + lit::<T>(4.0)).sqrt()) / lit::<T>(12.0)
}

/// Residual of `6 alpha^2 - (10 + b) alpha + 4 = 0`.
pub fn sqrt_deriv_residual<T: Real>(a2_mag: T, alpha: T) -> T {
    (lit::<T>(6.0) * alpha * alpha - (lit::<T>(10.0) + a2_mag) * alpha + lit::<T>(4.0)).abs()
}

/// Lower bound for `Re sqrt(f(z)/z)`, `f` starlike:
/// `(20 + b - sqrt(16 + b^2 + 40 b)) / 24`.
pub fn sqrt_ratio_order<T: Real>(a2_mag: T) -> Result<T> {
    check_range(a2_mag, 2.0)?;
    let b = a2_mag;
    Ok((lit::<T>(20.0) + b - (lit::<T>(16.0) + b * b + lit::<T>(40.0) * b).sqrt()) / lit::<T>(24.0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderTheorem {
    /// `Re(z f'/f) > alpha` for convex `f`.
    Starlike,
    /// `Re sqrt(f') > alpha` for convex `f`.
    SqrtDerivative,
    /// `Re sqrt(f/z) > alpha` for starlike `f`.
    SqrtRatio,
}

impl OrderTheorem {
    pub const ALL: [OrderTheorem; 3] = [OrderTheorem::Starlike, OrderTheorem::SqrtDerivative, OrderTheorem::SqrtRatio];

    pub fn label(self) -> &'static str {
        match self {
            OrderTheorem::Starlike => "5.1",
            OrderTheorem::SqrtDerivative => "5.2",
            OrderTheorem::SqrtRatio => "5.3",
        }
    }

    /// Largest `|a2|` in the class the statement is about.
    pub fn a2_max(self) -> f64 {
        match self {
            OrderTheorem::SqrtRatio => 2.0,
            _ => 1.0,
        }
    }

    pub fn order<T: Real>(self, a2_mag: T) -> Result<T> {
        match self {
            OrderTheorem::Starlike => starlike_order_of_convex(a2_mag).map(|r| r.alpha),
            OrderTheorem::SqrtDerivative => sqrt_deriv_order(a2_mag),
            OrderTheorem::SqrtRatio => sqrt_ratio_order(a2_mag),
        }
    }
}

impl fmt::Display for OrderTheorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for OrderTheorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
        OrderTheorem::ALL
            .into_iter()
            .find(|t| t.label() == key || format!("{t:?}").to_ascii_lowercase() == key)
            .ok_or_else(|| Error::OutOfRange(format!("unknown order statement '{s}'")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ConvexKind {
    /// `z / (1 - c z)`, `a2 = c`.
    HalfPlaneType,
    /// `-log(1 - c z) / c`, `a2 = c/2`.
    LogType,
    /// `z`.
    Identity,
}

/// A member of an explicit convex family, with closed-form derivatives.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConvexFunction<T> {
    pub kind: ConvexKind,
    pub c: Cx<T>,
}

impl<T: Real> ConvexFunction<T> {
    /// `f, f', f'', f'''` at `z`.
    pub fn jet3(&self, z: Cx<T>) -> [Cx<T>; 4] {
        let c = self.c;
        let one = Cx::<T>::one();
        let u = one - c * z;
        match self.kind {
            ConvexKind::HalfPlaneType => [
                z / u,
                one / (u * u),
                c * lit::<T>(2.0) / (u * u * u),
                c * c * lit::<T>(6.0) / (u * u * u * u),
            ],
            ConvexKind::LogType => [
                -u.ln() / c,
                one / u,
                c / (u * u),
                c * c * lit::<T>(2.0) / (u * u * u),
            ],
            ConvexKind::Identity => [z, one, Cx::zero(), Cx::zero()],
        }
    }

    pub fn a2(&self) -> Cx<T> {
        match self.kind {
            ConvexKind::HalfPlaneType => self.c,
            ConvexKind::LogType => self.c * lit::<T>(0.5),
            ConvexKind::Identity => Cx::zero(),
        }
    }

    pub fn to_series(&self, degree: usize) -> Series<T> {
        let mut coeffs = vec![Cx::zero(); degree.max(1) + 1];
        match self.kind {
            ConvexKind::Identity => coeffs[1] = Cx::one(),
            ConvexKind::HalfPlaneType | ConvexKind::LogType => {
                let mut power = Cx::<T>::one();
                for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
                    *slot = match self.kind {
                        ConvexKind::LogType => power / lit::<T>(k as f64),
                        _ => power,
                    };
                    power = power * self.c;
                }
            }
        }
        Series::new(coeffs).expect("finite coefficients")
    }

    /// `z f'(z)`, starlike when `f` is convex.
    pub fn alexander(&self) -> AlexanderTransform<T> {
        AlexanderTransform { f: *self }
    }
}

impl<T: Real> Analytic<T> for ConvexFunction<T> {
    fn jet(&self, z: Cx<T>) -> Jet<T> {
        let [f, f1, f2, _] = self.jet3(z);
        Jet { value: f, d1: f1, d2: f2 }
    }
}

/// `g(z) = z f'(z)` for a convex family member `f`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlexanderTransform<T> {
    pub f: ConvexFunction<T>,
}

impl<T: Real> Analytic<T> for AlexanderTransform<T> {
    fn jet(&self, z: Cx<T>) -> Jet<T> {
        let [_, f1, f2, f3] = self.f.jet3(z);
        Jet {
            value: z * f1,
            d1: f1 + z * f2,
            d2: f2 * lit::<T>(2.0) + z * f3,
        }
    }
}

/// Builds a family member after a numerical convexity screen.
pub fn convex_family<T: Real>(kind: ConvexKind, c: Cx<T>) -> Result<ConvexFunction<T>> {
    if !(c.norm() <= T::one() + lit::<T>(1e-12)) {
        return Err(Error::OutOfRange(format!("|c| = {} exceeds 1", c.norm())));
    }
    if kind == ConvexKind::LogType && c.norm() == T::zero() {
        return Err(Error::OutOfRange("log-type member needs c != 0".into()));
    }
    let f = ConvexFunction { kind, c };
    let grid = OrderGrid::default();
    let worst = grid.infimum(|z| {
        let j = f.jet(z);
        (z * j.d2 / j.d1 + T::one()).re
    });
    if !(worst.0 > lit::<T>(grid.screen_margin)) {
        return Err(Error::HypothesisScreen(format!(
            "Re(1 + z f''/f') = {} on the grid",
            worst.0
        )));
    }
    Ok(f)
}

/// Polar grid for the order checks. Includes radii close to 1 so that
/// boundary infima are approached.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrderGrid {
    pub radii: Vec<f64>,
    pub angles: usize,
    /// Positivity margin of the class screens.
    pub screen_margin: f64,
}

impl Default for OrderGrid {
    fn default() -> Self {
        let mut radii: Vec<f64> = (1..=9).map(|k| k as f64 / 10.0).collect();
        radii.extend([0.95, 0.98, 0.99, 0.995, 0.999]);
        Self {
            radii,
            angles: 512,
            screen_margin: 1e-6,
        }
    }
}

impl OrderGrid {
    fn angle<T: Real>(&self, k: usize) -> T {
        lit::<T>(std::f64::consts::TAU * k as f64 / self.angles as f64)
    }

    /// Minimum of `f` over the grid and where it occurs.
    fn infimum<T: Real>(&self, f: impl Fn(Cx<T>) -> T) -> (T, Cx<T>) {
        let mut best = (T::infinity(), Cx::zero());
        for &r in &self.radii {
            for k in 0..self.angles {
                let z = polar(lit::<T>(r), self.angle(k));
                let v = f(z);
                if !(v >= best.0) {
                    best = (v, z);
                }
            }
        }
        best
    }

    /// Minimum of `Re sqrt(v(z))` with the branch continued outward along
    /// each ray from `sqrt(1) = 1` at the origin.
    fn sqrt_infimum<T: Real>(&self, v: impl Fn(Cx<T>) -> Cx<T>) -> (T, Cx<T>) {
        let mut radii = self.radii.clone();
        radii.sort_by(|a, b| a.total_cmp(b));
        let mut best = (T::infinity(), Cx::zero());
        for k in 0..self.angles {
            let mut prev = Cx::<T>::one();
            for &r in &radii {
                let z = polar(lit::<T>(r), self.angle(k));
                let mut w = v(z).sqrt();
                if (w - prev).norm() > (w + prev).norm() {
                    w = -w;
                }
                prev = w;
                if !(w.re >= best.0) {
                    best = (w.re, z);
                }
            }
        }
        best
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderReport<T> {
    pub theorem: OrderTheorem,
    pub a2_mag: T,
    pub alpha: T,
    /// Grid infimum of the functional.
    pub infimum: T,
    pub at: Cx<T>,
    pub tol: T,
    pub pass: bool,
}

/// Checks the lower bound of the functional named by `theorem` on the grid.
/// The class hypothesis (convexity, or starlikeness for the ratio form) is
/// screened first; a failing screen rejects the run.
pub fn verify_order_theorem<T: Real>(
    theorem: OrderTheorem,
    f: &impl Analytic<T>,
    grid: &OrderGrid,
    tol: T,
) -> Result<OrderReport<T>> {
    let screen_margin = lit::<T>(grid.screen_margin);
    let f0 = f.jet(Cx::zero());
    if f0.value.norm() > lit::<T>(1e-12) || (f0.d1 - Cx::one()).norm() > lit::<T>(1e-12) {
        return Err(Error::HypothesisScreen("f must satisfy f(0) = 0, f'(0) = 1".into()));
    }
    let (screen, what) = match theorem {
        OrderTheorem::SqrtRatio => (
            grid.infimum(|z| {
                let j = f.jet(z);
                (z * j.d1 / j.value).re
            }),
            "Re(z f'/f)",
        ),
        _ => (
            grid.infimum(|z| {
                let j = f.jet(z);
                (z * j.d2 / j.d1 + T::one()).re
            }),
            "Re(1 + z f''/f')",
        ),
    };
    if !(screen.0 > screen_margin) {
        return Err(Error::HypothesisScreen(format!("{what} = {} at {}", screen.0, screen.1)));
    }
    let a2_mag = (f0.d2 * lit::<T>(0.5)).norm();
    // clamp rounding above the class bound
    let a2_mag = a2_mag.min(lit::<T>(theorem.a2_max()));
    let alpha = theorem.order(a2_mag)?;
    let (infimum, at) = match theorem {
        OrderTheorem::Starlike => grid.infimum(|z| {
            let j = f.jet(z);
            (z * j.d1 / j.value).re
        }),
        OrderTheorem::SqrtDerivative => grid.sqrt_infimum(|z| f.jet(z).d1),
        OrderTheorem::SqrtRatio => grid.sqrt_infimum(|z| f.value(z) / z),
    };
    Ok(OrderReport {
        theorem,
        a2_mag,
        alpha,
        infimum,
        at,
        tol,
        pass: infimum >= alpha - tol,
    })
}

/// Series route for the ratio form: `g = z F'` by coefficient scaling, its
/// inverse recovering `F`, and `Re sqrt(g/z)` from the series square root.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlexanderCheck<T> {
    /// `max |coeff(inverse(g)) - coeff(F)|`.
    pub round_trip: T,
    /// Largest gap between the series and closed-form values of `g`.
    pub series_gap: T,
    pub infimum: T,
    pub alpha: T,
    pub pass: bool,
}

pub fn alexander_cross_check<T: Real>(f: &ConvexFunction<T>, degree: usize, radii: &[f64], angles: usize, tol: T) -> Result<AlexanderCheck<T>> {
    let series = f.to_series(degree);
    let g = series.alexander();
    let back = g.inverse_alexander(lit::<T>(1e-14))?;
    let round_trip = (0..=degree).fold(T::zero(), |m, k| m.max((back.coeff(k) - series.coeff(k)).norm()));
    let ratio = g.div_z(lit::<T>(1e-14))?.sqrt()?;
    let closed = f.alexander();
    let mut series_gap = T::zero();
    let mut infimum = T::infinity();
    for &r in radii {
        for k in 0..angles {
            let z = polar(lit::<T>(r), lit::<T>(std::f64::consts::TAU * k as f64 / angles as f64));
            series_gap = series_gap.max((g.evaluate(z) - closed.value(z)).norm());
            infimum = infimum.min(ratio.evaluate(z).re);
        }
    }
    let a2 = (g.coeff(2)).norm().min(lit::<T>(2.0));
    let alpha = sqrt_ratio_order(a2)?;
    Ok(AlexanderCheck {
        round_trip,
        series_gap,
        infimum,
        alpha,
        pass: infimum >= alpha - tol,
    })
}

/// The test corpus: both families at `|c|` in `{0.25, 0.5, 0.75, 1}` and
/// phases `1`, `e^{i pi/4}`, plus the identity.
pub fn standard_corpus<T: Real>() -> Result<Vec<ConvexFunction<T>>> {
    let mut out = vec![convex_family(ConvexKind::Identity, Cx::zero())?];
    for kind in [ConvexKind::HalfPlaneType, ConvexKind::LogType] {
        for mag in [0.25, 0.5, 0.75, 1.0] {
            for phase in [0.0, std::f64::consts::FRAC_PI_4] {
                out.push(convex_family(kind, Complex::from_polar(lit::<T>(mag), lit::<T>(phase)))?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn starlike_order_examples() {
        let r = starlike_order_of_convex(1.0f64).unwrap();
        assert_abs_diff_eq!(r.alpha, 0.5, epsilon = 1e-12);
        let r = starlike_order_of_convex(0.0f64).unwrap();
        assert_abs_diff_eq!(r.alpha, (5f64.sqrt() - 1.0) / 2.0, epsilon = 1e-11);
        // independent high-precision root
        let r = starlike_order_of_convex(0.25f64).unwrap();
        assert_abs_diff_eq!(r.alpha, 0.573_943_491_920_244_8, epsilon = 1e-11);
        assert!(r.residual < 1e-10);
        let r = starlike_order_of_convex(0.5f64).unwrap();
        assert_abs_diff_eq!(r.alpha, 0.543_281_816_718_718_1, epsilon = 1e-11);
        assert!(starlike_order_of_convex(1.1f64).is_err());
        assert!(starlike_order_of_convex(-0.1f64).is_err());
    }

    #[test]
    fn sqrt_order_examples() {
        assert_abs_diff_eq!(sqrt_deriv_order(1.0f64).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(sqrt_deriv_order(0.0f64).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(sqrt_deriv_order(0.5f64).unwrap(), 0.560_423_565_197_052_1, epsilon = 1e-12);
        assert_abs_diff_eq!(sqrt_ratio_order(2.0f64).unwrap(), 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(sqrt_ratio_order(0.0f64).unwrap(), 2.0 / 3.0, epsilon = 1e-15);
        assert!(sqrt_deriv_order(1.5f64).is_err());
        assert!(sqrt_ratio_order(2.5f64).is_err());
        for k in 0..=100 {
            let b = k as f64 / 100.0;
            assert!(sqrt_deriv_residual(b, sqrt_deriv_order(b).unwrap()) < 1e-12);
        }
    }

    #[test]
    fn ratio_order_is_derivative_order_at_half() {
        for k in 0..=200 {
            let b = 2.0 * k as f64 / 200.0;
            let lhs = sqrt_ratio_order(b).unwrap();
            let rhs = sqrt_deriv_order(b / 2.0).unwrap();
            assert!((lhs - rhs).abs() < 1e-12);
        }
    }

    #[test]
    fn orders_decrease_and_exceed_half() {
        for t in OrderTheorem::ALL {
            let max = t.a2_max();
            let mut prev = f64::INFINITY;
            for k in 0..=100 {
                let b = max * k as f64 / 100.0;
                let a = t.order(b).unwrap();
                assert!(a < prev);
                assert!(a >= 0.5 - 1e-12);
                if k < 100 {
                    assert!(a > 0.5);
                }
                prev = a;
            }
        }
    }

    #[test]
    fn family_coefficients() {
        let f = convex_family(ConvexKind::HalfPlaneType, Complex::new(1.0f64, 0.0)).unwrap();
        assert_eq!(f.a2(), Complex::new(1.0, 0.0));
        let s = f.to_series(6);
        assert!((1..=6).all(|k| (s.coeff(k) - Complex::new(1.0, 0.0)).norm() < 1e-15));
        let f = convex_family(ConvexKind::LogType, Complex::new(1.0f64, 0.0)).unwrap();
        assert_abs_diff_eq!(f.a2().re, 0.5, epsilon = 1e-15);
        assert_abs_diff_eq!(f.to_series(4).coeff(3).re, 1.0 / 3.0, epsilon = 1e-15);
        let f = convex_family(ConvexKind::Identity, Complex::new(0.0f64, 0.0)).unwrap();
        assert_eq!(f.a2(), Complex::new(0.0, 0.0));
        assert!(convex_family(ConvexKind::LogType, Complex::new(0.0f64, 0.0)).is_err());
        assert!(convex_family(ConvexKind::HalfPlaneType, Complex::new(1.2f64, 0.0)).is_err());
    }

    #[test]
    fn jets_match_series() {
        for f in standard_corpus::<f64>().unwrap() {
            let s = f.to_series(200);
            let z = Complex::new(0.3, 0.4);
            let a = f.jet(z);
            let b = s.jet(z);
            assert!((a.value - b.value).norm() < 1e-12);
            assert!((a.d1 - b.d1).norm() < 1e-12);
            assert!((a.d2 - b.d2).norm() < 1e-11);
            let g = s.alexander();
            let gj = f.alexander().jet(z);
            let gs = g.jet(z);
            assert!((gj.value - gs.value).norm() < 1e-12);
            assert!((gj.d2 - gs.d2).norm() < 1e-10);
        }
    }

    #[test]
    fn order_checks_on_examples() {
        let grid = OrderGrid::default();
        let f = convex_family(ConvexKind::HalfPlaneType, Complex::new(1.0f64, 0.0)).unwrap();
        let r = verify_order_theorem(OrderTheorem::Starlike, &f, &grid, 1e-3).unwrap();
        assert!(r.pass);
        assert_abs_diff_eq!(r.infimum, 0.5, epsilon = 1e-3);
        let id = convex_family(ConvexKind::Identity, Complex::new(0.0f64, 0.0)).unwrap();
        let r = verify_order_theorem(OrderTheorem::SqrtDerivative, &id, &grid, 1e-3).unwrap();
        assert_abs_diff_eq!(r.infimum, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(r.alpha, 2.0 / 3.0, epsilon = 1e-15);
        // z/(1-z) as the Alexander image of -log(1-z)
        let log = convex_family(ConvexKind::LogType, Complex::new(1.0f64, 0.0)).unwrap();
        let g = log.alexander();
        let r = verify_order_theorem(OrderTheorem::SqrtRatio, &g, &grid, 1e-3).unwrap();
        assert_abs_diff_eq!(r.a2_mag, 1.0, epsilon = 1e-15);
        assert!(r.pass);
        assert!(r.infimum > 0.7);
    }

    #[test]
    fn screen_rejects_nonconvex() {
        // z/(1-z)^2 is starlike but not convex
        let f = convex_family(ConvexKind::HalfPlaneType, Complex::new(1.0f64, 0.0)).unwrap().alexander();
        assert!(matches!(
            verify_order_theorem(OrderTheorem::Starlike, &f, &OrderGrid::default(), 1e-3),
            Err(Error::HypothesisScreen(_))
        ));
    }

    #[test]
    fn alexander_route_agrees() {
        for f in standard_corpus::<f64>().unwrap() {
            let check = alexander_cross_check(&f, 400, &[0.3, 0.6, 0.9], 256, 1e-3).unwrap();
            assert!(check.round_trip < 1e-14);
            assert!(check.series_gap < 1e-9, "{check:?}");
            assert!(check.pass);
        }
    }

    #[test]
    fn corpus_passes_both_checks() {
        let grid = OrderGrid::default();
        for f in standard_corpus::<f64>().unwrap() {
            for t in [OrderTheorem::Starlike, OrderTheorem::SqrtDerivative] {
                assert!(verify_order_theorem(t, &f, &grid, 1e-3).unwrap().pass);
            }
            assert!(verify_order_theorem(OrderTheorem::SqrtRatio, &f.alexander(), &grid, 1e-3).unwrap().pass);
        }
    }

    #[test]
    fn labels_parse() {
        assert_eq!("5.2".parse::<OrderTheorem>().unwrap(), OrderTheorem::SqrtDerivative);
        assert_eq!("sqrt-ratio".parse::<OrderTheorem>().unwrap(), OrderTheorem::SqrtRatio);
        assert!("5.4".parse::<OrderTheorem>().is_err());
    }
}
