//! The worked examples: each pairs a structured `psi`, a dominant `q`, a
//! region `Omega` and the class `H_beta[a, n]`, together with the closed-form
//! constants they were derived with.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_traits::Zero;
use serde::Serialize;

use crate::admissibility::{OmegaRegion, StructuredPsi};
use crate::error::{Error, Result};
use crate::maps::CanonicalMap;
use crate::scalar::{lit, Cx, Real};
use crate::series::FixedClassSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Example {
    /// `|p + z p' + z^2 p''| < R` implies `|p| < M`, `p(0) = 0`.
    SumDisk,
    /// `|z^2 p'' + 5 z p' - p^2 + 1| < R` implies `Re p > 0`.
    QuadraticDisk,
    /// `Re(p + z p' + 1 - p^2) > 0` implies `Re p > 0`.
    FirstOrderHalfPlane,
    /// `Re(2 - p^2 + 3 z p' + z^2 p'') > 0` implies `Re p > 0`.
    SecondOrderHalfPlane,
    /// `|z^2 p'' + 3 z p' - p^2 + 1| < R` implies `|p - 1| < 1`.
    AffineDisk,
}

impl Example {
    pub const ALL: [Example; 5] = [
        Example::SumDisk,
        Example::QuadraticDisk,
        Example::FirstOrderHalfPlane,
        Example::SecondOrderHalfPlane,
        Example::AffineDisk,
    ];

    /// Short numeric label used on the command line.
    pub fn label(self) -> &'static str {
        match self {
            Example::SumDisk => "4.1",
            Example::QuadraticDisk => "4.2",
            Example::FirstOrderHalfPlane => "4.3",
            Example::SecondOrderHalfPlane => "4.4",
            Example::AffineDisk => "4.5",
        }
    }

    /// Index used when none is given.
    pub fn default_n(self) -> usize {
        match self {
            Example::AffineDisk | Example::FirstOrderHalfPlane | Example::SecondOrderHalfPlane => 2,
            _ => 1,
        }
    }

    /// Whether `Omega` is a disk about the origin, so that a sharp radius
    /// exists.
    pub fn has_radius(self) -> bool {
        matches!(self, Example::SumDisk | Example::QuadraticDisk | Example::AffineDisk)
    }
}

impl fmt::Display for Example {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for Example {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim();
        Example::ALL
            .into_iter()
            .find(|e| e.label() == key || format!("{e:?}").eq_ignore_ascii_case(&key.replace(['-', '_'], "")))
            .ok_or_else(|| Error::OutOfRange(format!("unknown example '{s}'")))
    }
}

/// A fully instantiated example.
#[derive(Debug, Clone)]
pub struct ExampleSetup<T> {
    pub example: Example,
    pub psi: StructuredPsi<T>,
    pub q: CanonicalMap<T>,
    pub omega: OmegaRegion<T>,
    /// `Omega = h(D)` in Möbius form.
    pub h: CanonicalMap<T>,
    pub spec: FixedClassSpec<T>,
    /// Disk radius as stated with the example (for disk regions).
    pub stated_radius: Option<T>,
    /// Closed form of the sharp radius `inf |psi|` (for disk regions).
    pub sharp_radius: Option<T>,
    /// Smallest real `n` for which the example is admissible (half-plane
    /// regions).
    pub n_threshold: Option<T>,
}

impl<T: Real> ExampleSetup<T> {
    /// `big_m` is the disk radius `M` of the dominant; only the sum-disk
    /// example uses it.
    pub fn new(example: Example, n: usize, beta: T, big_m: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::OutOfRange("n must be at least 1".into()));
        }
        let one = T::one();
        let two = lit::<T>(2.0);
        let nf = lit::<T>(n as f64);
        let re = |x: f64| Complex::new(lit::<T>(x), T::zero());
        let (psi, q, a) = match example {
            Example::SumDisk => (
                StructuredPsi::real([0.0, 1.0, 0.0, 1.0, 1.0]),
                CanonicalMap::disk(big_m, Cx::zero())?,
                Cx::zero(),
            ),
            Example::QuadraticDisk => (
                StructuredPsi::real([1.0, 0.0, -1.0, 5.0, 1.0]),
                CanonicalMap::half_plane(T::zero(), re(1.0))?,
                re(1.0),
            ),
            Example::FirstOrderHalfPlane => (
                StructuredPsi::real([1.0, 1.0, -1.0, 1.0, 0.0]),
                CanonicalMap::half_plane(T::zero(), re(1.0))?,
                re(1.0),
            ),
            Example::SecondOrderHalfPlane => (
                StructuredPsi::real([2.0, 0.0, -1.0, 3.0, 1.0]),
                CanonicalMap::half_plane(T::zero(), re(1.0))?,
                re(1.0),
            ),
            Example::AffineDisk => (
                StructuredPsi::real([1.0, 0.0, -1.0, 3.0, 1.0]),
                CanonicalMap::affine(re(1.0), re(1.0))?,
                re(1.0),
            ),
        };
        let bound = q.qprime0_abs();
        if !(beta >= T::zero()) || beta > bound * (one + lit::<T>(1e-12)) {
            return Err(Error::BetaTooLarge {
                beta: beta.to_f64_lossy(),
                bound: bound.to_f64_lossy(),
            });
        }
        let spec = FixedClassSpec::new(a, n, beta)?;
        let m = nf + (bound - beta) / (bound + beta);
        let (stated_radius, sharp_radius, n_threshold) = match example {
            Example::SumDisk => (Some((m * m + one) * big_m), Some((m * m + one) * big_m), None),
            Example::QuadraticDisk => (
                Some((lit::<T>(6.0) - beta) / (two + beta)),
                Some(two * m - one),
                None,
            ),
            Example::AffineDisk => (
                Some(lit::<T>(4.0) * (lit::<T>(3.0) + two * beta) / ((one + beta) * (one + beta))),
                Some((m + lit::<T>(3.0)) * (m - one)),
                None,
            ),
            Example::FirstOrderHalfPlane | Example::SecondOrderHalfPlane => {
                (None, None, Some((two + lit::<T>(3.0) * beta) / (two + beta)))
            }
        };
        let (omega, h) = match stated_radius {
            Some(r) => (
                OmegaRegion::disk(Cx::zero(), r)?,
                CanonicalMap::affine(Cx::zero(), Complex::new(r, T::zero()))?,
            ),
            None => (
                OmegaRegion::right_half_plane(),
                CanonicalMap::half_plane(T::zero(), re(1.0))?,
            ),
        };
        Ok(Self {
            example,
            psi,
            q,
            omega,
            h,
            spec,
            stated_radius,
            sharp_radius,
            n_threshold,
        })
    }

    /// Replaces the region by a disk of the given radius about the origin.
    pub fn with_radius(mut self, radius: T) -> Result<Self> {
        self.omega = OmegaRegion::disk(Cx::zero(), radius)?;
        self.h = CanonicalMap::affine(Cx::zero(), Complex::new(radius, T::zero()))?;
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissibility::{check_admissible, sharp_disk_radius, SearchConfig, VerdictStatus};
    use approx::assert_abs_diff_eq;

    #[test]
    fn labels_round_trip() {
        for e in Example::ALL {
            assert_eq!(e.label().parse::<Example>().unwrap(), e);
        }
        assert_eq!("sum-disk".parse::<Example>().unwrap(), Example::SumDisk);
        assert!("4.9".parse::<Example>().is_err());
    }

    #[test]
    fn stated_constants() {
        let e = ExampleSetup::<f64>::new(Example::SumDisk, 1, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(e.sharp_radius.unwrap(), 2.0, epsilon = 1e-15);
        let e = ExampleSetup::<f64>::new(Example::QuadraticDisk, 1, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(e.stated_radius.unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.sharp_radius.unwrap(), 1.0, epsilon = 1e-15);
        let e = ExampleSetup::<f64>::new(Example::AffineDisk, 2, 1.0, 1.0).unwrap();
        assert_abs_diff_eq!(e.stated_radius.unwrap(), 5.0, epsilon = 1e-15);
        assert_abs_diff_eq!(e.sharp_radius.unwrap(), 5.0, epsilon = 1e-15);
        let e = ExampleSetup::<f64>::new(Example::FirstOrderHalfPlane, 1, 2.0, 1.0).unwrap();
        assert_abs_diff_eq!(e.n_threshold.unwrap(), 2.0, epsilon = 1e-15);
        assert!(ExampleSetup::<f64>::new(Example::AffineDisk, 2, 1.5, 1.0).is_err());
    }

    #[test]
    fn every_example_admissible_at_stated_parameters() {
        let cfg = SearchConfig::coarse();
        for e in Example::ALL {
            let setup = ExampleSetup::<f64>::new(e, e.default_n(), 0.5, 1.0).unwrap();
            let v = check_admissible(&setup.psi.into(), &setup.omega, &setup.q, setup.spec.n, 0.5, &cfg).unwrap();
            assert_eq!(v.status, VerdictStatus::AdmissibleExact, "{e}");
            if let Some(closed) = setup.sharp_radius {
                let r = sharp_disk_radius(&setup.psi, &setup.q, setup.spec.n, 0.5, &cfg).unwrap();
                assert_abs_diff_eq!(r.radius, closed, epsilon = 1e-9);
            }
        }
    }
}
