use num_complex::Complex;
use subord_core::admissibility::{OmegaRegion, PsiSpec};
use subord_core::catalog::{Example, ExampleSetup};
use subord_core::maps::CanonicalMap;
use subord_core::series::{FixedClassSpec, Series};
use subord_core::verifier::{
    falsify_implication, falsify_subordination_form, hypothesis_sampler, is_subordinate, sample_rng,
    sample_subordinate, FalsifyConfig, GridConfig, ShrinkConfig,
};

fn c(re: f64, im: f64) -> Complex<f64> {
    Complex::new(re, im)
}

fn all_maps() -> Vec<CanonicalMap<f64>> {
    vec![
        CanonicalMap::disk(1.0, c(0.0, 0.0)).unwrap(),
        CanonicalMap::disk(2.5, c(1.0, -0.5)).unwrap(),
        CanonicalMap::half_plane(0.0, c(1.0, 0.0)).unwrap(),
        CanonicalMap::half_plane(0.7, c(1.5, 2.0)).unwrap(),
        CanonicalMap::affine(c(1.0, 0.0), c(1.0, 0.0)).unwrap(),
        CanonicalMap::affine(c(0.0, 1.0), c(0.5, 0.5)).unwrap(),
    ]
}

#[test]
fn seeded_subordinates_pass_the_grid_check() {
    let grid = GridConfig {
        angles: 128,
        ..GridConfig::default()
    };
    let maps = all_maps();
    for seed in 0..1000u64 {
        let q = maps[seed as usize % maps.len()];
        let n = 1 + (seed as usize / maps.len()) % 3;
        let beta = q.qprime0_abs() * (0.1 + 0.9 * ((seed * 37 % 101) as f64 / 100.0));
        let spec = FixedClassSpec::new(q.q0(), n, beta).unwrap();
        let p = sample_subordinate(&spec, &q, seed).unwrap();
        let check = is_subordinate(&p, &q, 0.99, &grid).unwrap();
        assert!(check.subordinate, "seed {seed}: {check:?}");
        let s = p.to_series(64).unwrap();
        assert!(spec.admits(&s, 1e-9), "seed {seed}");
    }
}

#[test]
fn beta_above_derivative_bound_rejected() {
    let q = CanonicalMap::disk(1.0, c(0.0, 0.0)).unwrap();
    let spec = FixedClassSpec::new(c(0.0, 0.0), 1, 1.5).unwrap();
    assert!(sample_subordinate(&spec, &q, 0).is_err());
}

#[test]
fn not_comparable_is_an_error() {
    let q = CanonicalMap::disk(1.0, c(0.0, 0.0)).unwrap();
    let p = Series::constant(c(0.5, 0.0));
    assert!(is_subordinate(&p, &q, 0.9, &GridConfig::default()).is_err());
}

#[test]
fn zero_samples_is_vacuous() {
    let s = ExampleSetup::<f64>::new(Example::SumDisk, 1, 1.0, 1.0).unwrap();
    let cfg = FalsifyConfig {
        samples: 0,
        ..FalsifyConfig::default()
    };
    let r = falsify_implication(&s.psi.into(), &s.omega, &s.q, &s.spec, &cfg).unwrap();
    assert!(r.vacuous && !r.passed());
}

#[test]
fn shrunken_conclusion_yields_counterexample() {
    let s = ExampleSetup::<f64>::new(Example::SumDisk, 1, 1.0, 1.0).unwrap();
    let small = CanonicalMap::disk(0.5, c(0.0, 0.0)).unwrap();
    let spec = FixedClassSpec::new(c(0.0, 0.0), 1, 0.5).unwrap();
    let cfg = FalsifyConfig {
        samples: 50,
        seed: 3,
        ..FalsifyConfig::default()
    };
    let r = falsify_implication(&s.psi.into(), &s.omega, &small, &spec, &cfg).unwrap();
    assert!(r.exploratory);
    assert!(!r.counterexamples.is_empty());
    for ce in &r.counterexamples {
        assert!(ce.hypothesis_margin > 0.0);
        assert!(ce.conclusion_margin < -1e-9);
    }
}

#[test]
fn omega_and_h_forms_agree() {
    let s = ExampleSetup::<f64>::new(Example::AffineDisk, 2, 0.5, 1.0).unwrap();
    let cfg = FalsifyConfig {
        samples: 60,
        seed: 11,
        ..FalsifyConfig::default()
    };
    let psi: PsiSpec<f64> = s.psi.into();
    let a = falsify_implication(&psi, &s.omega, &s.q, &s.spec, &cfg).unwrap();
    let b = falsify_subordination_form(&psi, &s.h, &s.q, &s.spec, &cfg).unwrap();
    assert_eq!(a.hypothesis_holds_count, b.hypothesis_holds_count);
    assert_eq!(a.counterexamples.len(), b.counterexamples.len());
    assert!(!a.vacuous);
}

#[test]
fn normalization_mismatch_rejected() {
    let s = ExampleSetup::<f64>::new(Example::SumDisk, 1, 1.0, 1.0).unwrap();
    let h = CanonicalMap::affine(c(0.3, 0.0), c(2.0, 0.0)).unwrap();
    let cfg = FalsifyConfig {
        samples: 1,
        ..FalsifyConfig::default()
    };
    assert!(falsify_subordination_form(&s.psi.into(), &h, &s.q, &s.spec, &cfg).is_err());
}

#[test]
fn dilated_dominants_still_hold() {
    let s = ExampleSetup::<f64>::new(Example::SumDisk, 1, 1.0, 1.0).unwrap();
    let cfg = FalsifyConfig {
        samples: 40,
        seed: 5,
        ..FalsifyConfig::default()
    };
    for rho in [0.9, 0.99] {
        let q_rho = s.q.dilate(rho).unwrap();
        // the region psi(q_rho boundary data) is the disk of the dilated radius
        let beta = q_rho.qprime0_abs();
        let spec = FixedClassSpec::new(c(0.0, 0.0), 1, beta).unwrap();
        let m = 1.0;
        let radius = (m * m + 1.0) * rho;
        let omega = OmegaRegion::disk(c(0.0, 0.0), radius).unwrap();
        let r = falsify_implication(&s.psi.into(), &omega, &q_rho, &spec, &cfg).unwrap();
        assert!(r.passed(), "rho {rho}: {} counterexamples", r.counterexamples.len());
        let r = falsify_implication(&s.psi.into(), &omega, &s.q, &spec, &cfg).unwrap();
        assert!(r.passed());
    }
}

#[test]
fn sampler_base_case_and_shrinking() {
    let s = ExampleSetup::<f64>::new(Example::QuadraticDisk, 1, 0.5, 1.0).unwrap();
    let psi: PsiSpec<f64> = s.psi.into();
    let grid = GridConfig {
        angles: 64,
        ..GridConfig::default()
    };
    let no_tail = ShrinkConfig {
        initial: 0.0,
        ..ShrinkConfig::default()
    };
    let p = hypothesis_sampler(&s.spec, &psi, &s.omega, &mut sample_rng(0, 0), &grid, &no_tail).unwrap();
    assert_eq!(p.coeff(1), c(0.5, 0.0));
    assert!(p.coeffs().iter().skip(2).all(|x| x.norm() == 0.0));
    let huge = ShrinkConfig {
        initial: 1e3,
        ..ShrinkConfig::default()
    };
    let p = hypothesis_sampler(&s.spec, &psi, &s.omega, &mut sample_rng(0, 1), &grid, &huge).unwrap();
    assert_eq!(p.coeff(1), c(0.5, 0.0));
    let tail = p.coeffs().iter().skip(2).map(|x| x.norm()).fold(0.0, f64::max);
    assert!(tail < 1e3 * 0.7);
}

#[test]
fn examples_produce_no_counterexamples() {
    let params = [
        (Example::SumDisk, 1, 1.0),
        (Example::QuadraticDisk, 1, 0.5),
        (Example::FirstOrderHalfPlane, 2, 0.5),
        (Example::SecondOrderHalfPlane, 2, 0.1),
        (Example::AffineDisk, 2, 0.5),
    ];
    for (e, n, beta) in params {
        let s = ExampleSetup::<f64>::new(e, n, beta, 1.0).unwrap();
        let cfg = FalsifyConfig {
            samples: 150,
            seed: 21,
            ..FalsifyConfig::default()
        };
        let r = falsify_implication(&s.psi.into(), &s.omega, &s.q, &s.spec, &cfg).unwrap();
        assert!(!r.exploratory, "{e}");
        assert!(r.hypothesis_holds_count >= 100, "{e}: {}", r.hypothesis_holds_count);
        assert!(r.counterexamples.is_empty(), "{e}");
    }
}
