//! Canonical univalent maps of the unit disk: onto a disk of radius `M`, onto
//! a half-plane `Re w > alpha`, and affine maps, optionally dilated
//! (`q_rho(z) = q(rho z)`).
//!
//! Every supported map is Möbius, so each is stored as its coefficient
//! matrix `(A z + B) / (C z + D)`. Evaluation, derivatives and the inverse all
//! come from that matrix.

use num_traits::{One, Zero};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, lit, real, unit, Cx, Real};
use crate::series::{Analytic, Jet, Series};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MapKind<T> {
    /// `q(z) = M (M z + a) / (M + conj(a) z)`, onto `|w| < M`.
    Disk { m: T, a: Cx<T> },
    /// `q(z) = (a - (2 alpha - conj(a)) z) / (1 - z)`, onto `Re w > alpha`.
    HalfPlane { alpha: T, a: Cx<T> },
    /// `q(z) = a0 + a1 z`.
    Affine { a0: Cx<T>, a1: Cx<T> },
}

/// A canonical map together with a dilation factor `rho` in `(0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CanonicalMap<T> {
    kind: MapKind<T>,
    rho: T,
}

/// Geometry of `q(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum ImageShape<T> {
    Disk { center: Cx<T>, radius: T },
    /// `{ w : Re(e^{-i gamma} (w - w0)) > 0 }`.
    HalfPlane { gamma: T, w0: Cx<T> },
}

/// Result of a membership query: inside iff `margin > 0`, where
/// `margin = 1 - |q^{-1}(w)|`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Membership<T> {
    pub inside: bool,
    pub margin: T,
}

impl<T: Real> CanonicalMap<T> {
    pub fn disk(m: T, a: Cx<T>) -> Result<Self> {
        if !(m > T::zero()) || !m.is_finite() {
            return Err(Error::InvalidMap(format!("disk radius must be positive, got {m}")));
        }
        if !is_finite(a) || !(a.norm() < m) {
            return Err(Error::InvalidMap("disk centre must satisfy |a| < M".into()));
        }
        Ok(Self::from_kind(MapKind::Disk { m, a }))
    }

    pub fn half_plane(alpha: T, a: Cx<T>) -> Result<Self> {
        if !alpha.is_finite() || !is_finite(a) || !(a.re > alpha) {
            return Err(Error::InvalidMap("half-plane map needs Re a > alpha".into()));
        }
        Ok(Self::from_kind(MapKind::HalfPlane { alpha, a }))
    }

    pub fn affine(a0: Cx<T>, a1: Cx<T>) -> Result<Self> {
        if !is_finite(a0) || !is_finite(a1) || a1.is_zero() {
            return Err(Error::InvalidMap("affine map needs finite a0 and nonzero a1".into()));
        }
        Ok(Self::from_kind(MapKind::Affine { a0, a1 }))
    }

    fn from_kind(kind: MapKind<T>) -> Self {
        Self { kind, rho: T::one() }
    }

    pub fn kind(&self) -> MapKind<T> {
        self.kind
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    /// `q_rho(z) = q(rho z)` for `0 < rho < 1`. Dilations compose
    /// multiplicatively.
    pub fn dilate(&self, rho: T) -> Result<Self> {
        if !(rho > T::zero() && rho < T::one()) {
            return Err(Error::OutOfRange(format!("dilation must lie in (0, 1), got {rho}")));
        }
        Ok(Self {
            kind: self.kind,
            rho: self.rho * rho,
        })
    }

    /// `(A, B, C, D)` with `q(z) = (A z + B) / (C z + D)`, dilation included.
    pub fn mobius(&self) -> [Cx<T>; 4] {
        let two = lit::<T>(2.0);
        let [a, b, c, d] = match self.kind {
            MapKind::Disk { m, a } => [real(m * m), a * m, a.conj(), real(m)],
            MapKind::HalfPlane { alpha, a } => {
                [-(real(two * alpha) - a.conj()), a, -Cx::one(), Cx::one()]
            }
            MapKind::Affine { a0, a1 } => [a1, a0, Cx::zero(), Cx::one()],
        };
        [a * self.rho, b, c * self.rho, d]
    }

    /// The point of the closed plane sent to infinity, if finite.
    pub fn pole(&self) -> Option<Cx<T>> {
        let [_, _, c, d] = self.mobius();
        (!c.is_zero()).then(|| -d / c)
    }

    /// Pole on the unit circle (the exceptional set `E(q)`), if any.
    pub fn boundary_pole(&self) -> Option<Cx<T>> {
        self.pole()
            .filter(|p| (p.norm() - T::one()).abs() <= lit::<T>(1e-12))
    }

    pub fn q0(&self) -> Cx<T> {
        let [_, b, _, d] = self.mobius();
        b / d
    }

    fn check_pole(&self, z: Cx<T>) -> Result<Cx<T>> {
        let [_, _, c, d] = self.mobius();
        let den = c * z + d;
        let scale = c.norm() * z.norm() + d.norm();
        if den.norm() <= lit::<T>(1e-14) * scale {
            return Err(Error::Pole {
                re: z.re.to_f64_lossy(),
                im: z.im.to_f64_lossy(),
            });
        }
        Ok(den)
    }

    pub fn eval(&self, z: Cx<T>) -> Result<Cx<T>> {
        let [a, b, _, _] = self.mobius();
        let den = self.check_pole(z)?;
        Ok((a * z + b) / den)
    }

    /// `(q'(z), q''(z))`.
    pub fn derivatives(&self, z: Cx<T>) -> Result<(Cx<T>, Cx<T>)> {
        let [a, b, c, d] = self.mobius();
        let den = self.check_pole(z)?;
        let det = a * d - b * c;
        let d1 = det / (den * den);
        let d2 = -(c * lit::<T>(2.0)) * d1 / den;
        Ok((d1, d2))
    }

    /// `|q'(0)|`.
    pub fn qprime0_abs(&self) -> T {
        let [a, b, c, d] = self.mobius();
        ((a * d - b * c) / (d * d)).norm()
    }

    /// `q'(0)` as a complex number.
    pub fn qprime0(&self) -> Cx<T> {
        let [a, b, c, d] = self.mobius();
        (a * d - b * c) / (d * d)
    }

    /// The unique `z` with `q(z) = w`.
    pub fn invert(&self, w: Cx<T>) -> Result<Cx<T>> {
        let [a, b, c, d] = self.mobius();
        let den = a - c * w;
        let scale = a.norm() + c.norm() * w.norm();
        if den.norm() <= lit::<T>(1e-14) * scale {
            return Err(Error::OmittedValue {
                re: w.re.to_f64_lossy(),
                im: w.im.to_f64_lossy(),
            });
        }
        Ok((d * w - b) / den)
    }

    /// Membership in `q(D)` measured in the preimage.
    pub fn contains(&self, w: Cx<T>) -> Membership<T> {
        match self.invert(w) {
            Ok(z) if is_finite(z) => {
                let margin = T::one() - z.norm();
                Membership {
                    inside: margin > T::zero(),
                    margin,
                }
            }
            _ => Membership {
                inside: false,
                margin: T::neg_infinity(),
            },
        }
    }

    /// `q(e^{i theta})`, `zeta q'(zeta)` and `Re(zeta q''/q' + 1)` at a
    /// boundary point.
    pub fn boundary_data(&self, theta: T) -> Result<BoundaryData<T>> {
        let zeta = unit(theta);
        let q = self.eval(zeta)?;
        let (d1, d2) = self.derivatives(zeta)?;
        Ok(BoundaryData {
            zeta,
            q,
            zeta_qprime: zeta * d1,
            curvature: (zeta * d2 / d1 + T::one()).re,
        })
    }

    /// `q(D)` as a disk or a half-plane.
    pub fn image(&self) -> ImageShape<T> {
        if let (MapKind::HalfPlane { alpha, .. }, true) = (self.kind, self.rho == T::one()) {
            return ImageShape::HalfPlane {
                gamma: T::zero(),
                w0: real(alpha),
            };
        }
        // Image of |z| = rho_eff = 1 under the Möbius matrix; the pole lies
        // outside the closed disk here, so the interior maps to the disk.
        let [a, b, c, d] = self.mobius();
        let k = d.norm_sqr() - c.norm_sqr();
        let centre = (d.conj() * b - c.conj() * a) / k;
        let radius = (centre.norm_sqr() - (b.norm_sqr() - a.norm_sqr()) / k)
            .max(T::zero())
            .sqrt();
        ImageShape::Disk {
            center: centre,
            radius,
        }
    }

    /// Truncated Taylor expansion about the origin.
    pub fn to_series(&self, degree: usize) -> Series<T> {
        self.compose_series(&Series::identity().with_degree(degree.max(1)))
            .expect("identity is centred")
            .with_degree(degree)
    }

    /// `q(w(z))` as a truncated series, for `w(0) = 0`.
    pub fn compose_series(&self, w: &Series<T>) -> Result<Series<T>> {
        let c0 = w.coeff(0);
        if !c0.is_zero() {
            return Err(Error::InnerNotCentered {
                re: c0.re.to_f64_lossy(),
                im: c0.im.to_f64_lossy(),
            });
        }
        let [a, b, c, d] = self.mobius();
        let degree = w.degree();
        let num = &w.scale(a) + &Series::constant(b).with_degree(degree);
        let den = &w.scale(c) + &Series::constant(d).with_degree(degree);
        num.div_trunc(&den)
    }
}

impl<T: Real> Analytic<T> for CanonicalMap<T> {
    /// Non-finite at the pole.
    fn jet(&self, z: Cx<T>) -> Jet<T> {
        let [a, b, c, d] = self.mobius();
        let den = c * z + d;
        let d1 = (a * d - b * c) / (den * den);
        Jet {
            value: (a * z + b) / den,
            d1,
            d2: -(c * lit::<T>(2.0)) * d1 / den,
        }
    }
}

/// Boundary quantities entering the admissibility condition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundaryData<T> {
    pub zeta: Cx<T>,
    pub q: Cx<T>,
    pub zeta_qprime: Cx<T>,
    /// `Re(zeta q''(zeta) / q'(zeta) + 1)`.
    pub curvature: T,
}

/// Sample angles on the unit circle that keep clear of a boundary pole by at
/// least one grid step.
pub fn circle_grid<T: Real>(map: &CanonicalMap<T>, points: usize) -> Vec<T> {
    let tau = T::PI() + T::PI();
    match map.boundary_pole() {
        Some(pole) => {
            let start = pole.im.atan2(pole.re);
            let step = tau / lit::<T>((points + 2) as f64);
            (0..points)
                .map(|k| start + step * lit::<T>((k + 1) as f64))
                .collect()
        }
        None => {
            let step = tau / lit::<T>(points as f64);
            (0..points).map(|k| step * lit::<T>(k as f64)).collect()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex;
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type M = CanonicalMap<f64>;

    fn c(re: f64, im: f64) -> Cx<f64> {
        Complex::new(re, im)
    }

    fn close(a: Cx<f64>, b: Cx<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    fn sample_maps() -> Vec<M> {
        vec![
            M::disk(1.0, c(0.0, 0.0)).unwrap(),
            M::disk(2.0, c(0.7, -0.9)).unwrap(),
            M::half_plane(0.0, c(1.0, 0.0)).unwrap(),
            M::half_plane(-0.3, c(0.5, 1.2)).unwrap(),
            M::affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap(),
            M::affine(c(-0.2, 0.4), c(0.3, -2.0)).unwrap(),
        ]
    }

    #[test]
    fn eval_examples() {
        let id = M::disk(1.0, c(0.0, 0.0)).unwrap();
        assert!(close(id.eval(c(0.3, 0.0)).unwrap(), c(0.3, 0.0), 1e-15));
        let hp = M::half_plane(0.0, c(1.0, 0.0)).unwrap();
        assert!(close(hp.eval(c(0.0, 0.0)).unwrap(), c(1.0, 0.0), 1e-15));
        // (1 + z) / (1 - z)
        let z = c(0.3, 0.4);
        assert!(close(hp.eval(z).unwrap(), (c(1.0, 0.0) + z) / (c(1.0, 0.0) - z), 1e-14));
        let af = M::affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(af.eval(c(0.0, 1.0)).unwrap(), c(1.0, 1.0), 1e-15));
        assert!(matches!(hp.eval(c(1.0, 0.0)), Err(Error::Pole { .. })));
    }

    #[test]
    fn closed_form_matches_case_formulas() {
        // disk: M (M z + a) / (M + conj(a) z)
        let (m, a) = (1.7, c(0.4, -0.6));
        let q = M::disk(m, a).unwrap();
        let z = c(-0.2, 0.5);
        let expected = (z * m + a) * m / (a.conj() * z + m);
        assert!(close(q.eval(z).unwrap(), expected, 1e-14));
        let expected_d1 = m * (m * m - a.norm_sqr()) / ((a.conj() * z + m) * (a.conj() * z + m));
        assert!(close(q.derivatives(z).unwrap().0, expected_d1, 1e-13));
        // half-plane: (a - (2 alpha - conj(a)) z) / (1 - z)
        let (alpha, a) = (-0.3, c(0.5, 1.2));
        let q = M::half_plane(alpha, a).unwrap();
        let expected = (a - (c(2.0 * alpha, 0.0) - a.conj()) * z) / (c(1.0, 0.0) - z);
        assert!(close(q.eval(z).unwrap(), expected, 1e-14));
        let one_minus = c(1.0, 0.0) - z;
        let expected_d1 = c(2.0 * (a.re - alpha), 0.0) / (one_minus * one_minus);
        assert!(close(q.derivatives(z).unwrap().0, expected_d1, 1e-13));
    }

    #[test]
    fn derivative_at_origin_examples() {
        let (m, a) = (1.5, c(0.3, 0.8));
        let q = M::disk(m, a).unwrap();
        assert_abs_diff_eq!(q.qprime0_abs(), (m * m - a.norm_sqr()) / m, epsilon = 1e-14);
        let (alpha, a) = (0.2, c(1.1, -0.4));
        let q = M::half_plane(alpha, a).unwrap();
        assert!(close(q.derivatives(c(0.0, 0.0)).unwrap().0, c(2.0 * (a.re - alpha), 0.0), 1e-14));
        let q = M::affine(c(0.5, 0.5), c(2.0, -1.0)).unwrap();
        for z in [c(0.0, 0.0), c(0.3, -0.7)] {
            let (d1, d2) = q.derivatives(z).unwrap();
            assert_eq!(d1, c(2.0, -1.0));
            assert_eq!(d2, c(0.0, 0.0));
        }
    }

    #[test]
    fn invert_examples() {
        let id = M::disk(1.0, c(0.0, 0.0)).unwrap();
        assert!(close(id.invert(c(0.5, 0.0)).unwrap(), c(0.5, 0.0), 1e-15));
        let hp = M::half_plane(0.0, c(1.0, 0.0)).unwrap();
        assert!(close(hp.invert(c(1.0, 0.0)).unwrap(), c(0.0, 0.0), 1e-15));
        let af = M::affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        assert!(close(af.invert(c(1.5, 0.5)).unwrap(), c(0.5, 0.5), 1e-15));
        // the omitted value of (1 + z)/(1 - z) is -1
        assert!(matches!(hp.invert(c(-1.0, 0.0)), Err(Error::OmittedValue { .. })));
    }

    #[test]
    fn contains_examples() {
        let d = M::disk(2.0, c(0.0, 0.0)).unwrap();
        let m = d.contains(c(1.0, 0.0));
        assert!(m.inside);
        assert_abs_diff_eq!(m.margin, 0.5, epsilon = 1e-15);
        let hp = M::half_plane(0.0, c(1.0, 0.0)).unwrap();
        assert!(!hp.contains(c(-1.0, 0.0)).inside);
        assert!(!hp.contains(c(-0.5, 3.0)).inside);
        let af = M::affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap();
        let m = af.contains(c(1.99, 0.0));
        assert!(m.inside);
        assert_abs_diff_eq!(m.margin, 0.01, epsilon = 1e-14);
    }

    #[test]
    fn dilate_examples() {
        let id = M::disk(1.0, c(0.0, 0.0)).unwrap();
        let half = id.dilate(0.5).unwrap();
        assert!(close(half.eval(c(0.4, 0.2)).unwrap(), c(0.2, 0.1), 1e-15));
        for q in sample_maps() {
            let qr = q.dilate(0.7).unwrap();
            assert!(close(qr.qprime0(), q.qprime0() * 0.7, 1e-14));
            let z = c(0.3, -0.5);
            let (d1, d2) = qr.derivatives(z).unwrap();
            let (e1, e2) = q.derivatives(z * 0.7).unwrap();
            assert!(close(d1, e1 * 0.7, 1e-13));
            assert!(close(d2, e2 * 0.49, 1e-13));
            let w = qr.eval(z).unwrap();
            assert!(close(qr.invert(w).unwrap(), z, 1e-12));
        }
        let af = M::affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap().dilate(0.9).unwrap();
        match af.image() {
            ImageShape::Disk { center, radius } => {
                assert!(close(center, c(1.0, 0.0), 1e-14));
                assert_abs_diff_eq!(radius, 0.9, epsilon = 1e-14);
            }
            other => panic!("unexpected image {other:?}"),
        }
        assert!(id.dilate(1.0).is_err());
        assert!(id.dilate(0.0).is_err());
    }

    #[test]
    fn invalid_parameters() {
        assert!(M::disk(1.0, c(1.0, 0.0)).is_err());
        assert!(M::disk(-1.0, c(0.0, 0.0)).is_err());
        assert!(M::half_plane(1.0, c(1.0, 0.0)).is_err());
        assert!(M::affine(c(0.0, 0.0), c(0.0, 0.0)).is_err());
    }

    #[test]
    fn inverse_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for q in sample_maps() {
            for _ in 0..1000 {
                let r: f64 = rng.gen::<f64>().sqrt() * 0.999;
                let t: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
                let z = Complex::from_polar(r, t);
                let back = q.invert(q.eval(z).unwrap()).unwrap();
                assert!(close(back, z, 1e-12), "{q:?} z={z} back={back}");
            }
        }
    }

    #[test]
    fn boundary_images() {
        let q = M::disk(1.7, c(0.4, -0.6)).unwrap();
        for k in 0..360 {
            let t = k as f64 * std::f64::consts::TAU / 360.0;
            assert_abs_diff_eq!(q.eval(unit(t)).unwrap().norm(), 1.7, epsilon = 1e-12);
        }
        let q = M::half_plane(-0.3, c(0.5, 1.2)).unwrap();
        for t in circle_grid(&q, 720) {
            assert_abs_diff_eq!(q.eval(unit(t)).unwrap().re, -0.3, epsilon = 1e-10);
        }
    }

    #[test]
    fn dilated_image_strictly_inside() {
        for q in sample_maps() {
            for rho in [0.5, 0.9, 0.99] {
                let qr = q.dilate(rho).unwrap();
                for k in 0..256 {
                    let t = k as f64 * std::f64::consts::TAU / 256.0;
                    let w = qr.eval(unit(t)).unwrap();
                    assert!(q.contains(w).inside, "{q:?} rho={rho} t={t}");
                }
            }
        }
    }

    #[test]
    fn image_shape_matches_membership() {
        let q = M::disk(2.0, c(0.7, -0.9)).unwrap();
        match q.image() {
            ImageShape::Disk { center, radius } => {
                assert!(close(center, c(0.0, 0.0), 1e-12));
                assert_abs_diff_eq!(radius, 2.0, epsilon = 1e-12);
            }
            other => panic!("unexpected image {other:?}"),
        }
        let q = M::half_plane(0.25, c(1.0, 0.0)).unwrap();
        assert_eq!(q.image(), ImageShape::HalfPlane { gamma: 0.0, w0: c(0.25, 0.0) });
    }

    #[test]
    fn grid_avoids_boundary_pole() {
        let q = M::half_plane(0.0, c(1.0, 0.0)).unwrap();
        let grid = circle_grid(&q, 4096);
        let step = std::f64::consts::TAU / 4098.0;
        assert!(grid.iter().all(|&t| t >= step * 0.999 && t <= std::f64::consts::TAU - step * 0.999));
        assert!(grid.iter().any(|&t| (t - std::f64::consts::PI).abs() < 1e-12));
        let d = M::disk(1.0, c(0.0, 0.0)).unwrap();
        assert_eq!(circle_grid(&d, 8)[0], 0.0);
    }

    #[test]
    fn series_expansion() {
        let hp = M::half_plane(0.0, c(1.0, 0.0)).unwrap();
        let s = hp.to_series(10);
        assert!(close(s.coeff(0), c(1.0, 0.0), 1e-15));
        for k in 1..=10 {
            assert!(close(s.coeff(k), c(2.0, 0.0), 1e-14));
        }
        let q = M::disk(1.7, c(0.4, -0.6)).unwrap();
        let s = q.to_series(48);
        let z = c(0.2, 0.1);
        assert!(close(s.evaluate(z), q.eval(z).unwrap(), 1e-13));
    }
}
