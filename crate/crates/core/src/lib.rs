//! Numerical toolkit for second-order differential subordination of analytic
//! functions whose `n`-th coefficient is fixed.
//!
//! The numerical core is generic over the scalar type (`f32` or `f64`) through
//! [`scalar::Real`]; the aliases below fix it to `f64`.

pub mod admissibility;
pub mod catalog;
pub mod error;
pub mod gft;
pub mod lemmas;
pub mod maps;
pub mod scalar;
pub mod search;
pub mod series;
pub mod verifier;

pub use error::{Error, Result};
pub use scalar::{Cx, Real};
pub use series::Analytic;

pub type C64 = num_complex::Complex<f64>;
pub type Series64 = series::Series<f64>;
pub type ClassSpec64 = series::FixedClassSpec<f64>;
pub type Map64 = maps::CanonicalMap<f64>;
pub type Psi64 = admissibility::PsiSpec<f64>;
pub type StructuredPsi64 = admissibility::StructuredPsi<f64>;
pub type Omega64 = admissibility::OmegaRegion<f64>;
pub type Verdict64 = admissibility::AdmissibilityVerdict<f64>;
pub type Report64 = verifier::FalsificationReport<f64>;
pub type Example64 = catalog::ExampleSetup<f64>;
