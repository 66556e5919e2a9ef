//! Acceptance suite: one pass/fail line per criterion. Exits nonzero if any
//! criterion fails.

use std::time::{Duration, Instant};

use num_complex::Complex;
use subord_cli::commands::lemma::{contact_suite, extremal_gap, schwarz_suite, EXTREMAL_TOL, SCHWARZ_TOL};
use subord_cli::commands::reproduce::FALSIFY_PARAMS;
use subord_core::admissibility::{
    check_admissible, is_admissible_triple, sharp_disk_radius, PsiSpec, SearchConfig, VerdictStatus,
};
use subord_core::catalog::{Example, ExampleSetup};
use subord_core::gft::{
    convex_family, sqrt_deriv_order, sqrt_ratio_order, standard_corpus, starlike_order_of_convex, verify_order_theorem,
    ConvexKind, OrderGrid, OrderTheorem,
};
use subord_core::maps::CanonicalMap;
use subord_core::verifier::{falsify_implication, FalsifyConfig};

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg)
    }
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(
        elapsed <= Duration::from_secs(limit_s),
        format!("took {:.1} s, limit {limit_s} s", elapsed.as_secs_f64()),
    )
}

fn sharp(e: Example, n: usize, beta: f64, m: f64) -> Result<(f64, f64), String> {
    let s = ExampleSetup::<f64>::new(e, n, beta, m).map_err(|x| x.to_string())?;
    let r = sharp_disk_radius(&s.psi, &s.q, n, beta, &SearchConfig::default()).map_err(|x| x.to_string())?;
    Ok((r.radius, s.sharp_radius.unwrap_or(f64::NAN)))
}

fn sum_disk_constants() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in [1, 2, 3] {
        for m in [0.5, 1.0, 2.0] {
            for ratio in [0.25, 0.5, 1.0] {
                let beta = ratio * m;
                let (got, _) = sharp(Example::SumDisk, n, beta, m)?;
                let nu = n as f64 + (m - beta) / (m + beta);
                let closed = (nu * nu + 1.0) * m;
                worst = worst.max((got - closed).abs());
            }
        }
    }
    ensure(worst <= 1e-6, format!("max deviation {worst:e}"))?;
    let (at_one, _) = sharp(Example::SumDisk, 1, 1.0, 1.0)?;
    ensure(at_one == 2.0, format!("R*(n=1, M=beta=1) = {at_one:.17}"))?;
    within(start.elapsed(), 10)?;
    Ok(format!("27 grid points, max deviation {worst:.2e}; R* = 2 at n=1, M=beta=1"))
}

fn quadratic_disk_constants() -> Outcome {
    let mut worst = 0.0f64;
    for beta in [0.5, 1.0, 2.0] {
        let (got, _) = sharp(Example::QuadraticDisk, 1, beta, 1.0)?;
        worst = worst.max((got - (6.0 - beta) / (2.0 + beta)).abs());
    }
    ensure(worst <= 1e-6, format!("max deviation {worst:e}"))?;
    let (at_two, _) = sharp(Example::QuadraticDisk, 1, 2.0, 1.0)?;
    ensure((at_two - 1.0).abs() <= 1e-6, format!("R*(beta=2) = {at_two}"))?;
    Ok(format!("max deviation {worst:.2e}; R*(beta=2) = {at_two:.10}"))
}

fn affine_disk_constants() -> Outcome {
    let mut worst = 0.0f64;
    for beta in [0.25, 0.5, 1.0] {
        let (got, _) = sharp(Example::AffineDisk, 2, beta, 1.0)?;
        worst = worst.max((got - 4.0 * (3.0 + 2.0 * beta) / ((1.0 + beta) * (1.0 + beta))).abs());
    }
    ensure(worst <= 1e-6, format!("max deviation {worst:e}"))?;
    let (at_one, _) = sharp(Example::AffineDisk, 2, 1.0, 1.0)?;
    ensure((at_one - 5.0).abs() <= 1e-6, format!("R*(beta=1) = {at_one}"))?;
    Ok(format!("max deviation {worst:.2e}; R*(beta=1) = {at_one:.10}"))
}

fn half_plane_thresholds() -> Outcome {
    let search = SearchConfig::default();
    let mut decided = 0;
    for e in [Example::FirstOrderHalfPlane, Example::SecondOrderHalfPlane] {
        for beta in [0.5, 1.0, 2.0] {
            for n in [1, 2, 3] {
                let s = ExampleSetup::<f64>::new(e, n, beta, 1.0).map_err(|x| x.to_string())?;
                let v = check_admissible(&s.psi.into(), &s.omega, &s.q, n, beta, &search).map_err(|x| x.to_string())?;
                let threshold = (2.0 + 3.0 * beta) / (2.0 + beta);
                let expected = n as f64 >= threshold - 1e-12;
                ensure(
                    v.is_admissible() == expected,
                    format!("{e:?} n={n} beta={beta}: got {:?}", v.status),
                )?;
                if beta == 2.0 {
                    ensure(expected == (n >= 2), "threshold at beta=2 is not n=2".into())?;
                }
                if n == 1 && beta == 2.0 {
                    let VerdictStatus::Violation { witness: w, psi_value } = v.status else {
                        return Err(format!("{e:?} n=1 beta=2: no violation witness"));
                    };
                    ensure(
                        is_admissible_triple(&s.q, 1, 2.0, w.r0, w.s0, w.t0, 1e-9) && s.omega.contains(psi_value),
                        format!("{e:?}: witness does not check out"),
                    )?;
                }
                decided += 1;
            }
        }
    }
    Ok(format!("{decided} decisions match n >= (2+3 beta)/(2+beta); witnesses at n=1, beta=2 verified"))
}

fn order_formulas() -> Outcome {
    let e = |x: subord_core::Error| x.to_string();
    let a1: f64 = starlike_order_of_convex(1.0).map_err(e)?.alpha;
    ensure((a1 - 0.5).abs() <= 1e-10, format!("starlike order at 1: {a1}"))?;
    let a2: f64 = sqrt_deriv_order(1.0).map_err(e)?;
    ensure((a2 - 0.5).abs() <= 1e-12, format!("sqrt-derivative order at 1: {a2}"))?;
    let a3: f64 = sqrt_ratio_order(2.0).map_err(e)?;
    ensure((a3 - 0.5).abs() <= 1e-12, format!("sqrt-ratio order at 2: {a3}"))?;
    let mut identity = 0.0f64;
    for k in 0..100 {
        let b = 2.0 * k as f64 / 99.0;
        identity = identity.max((sqrt_ratio_order(b).map_err(e)? - sqrt_deriv_order(b / 2.0).map_err(e)?).abs());
    }
    ensure(identity <= 1e-12, format!("identity gap {identity:e}"))?;
    for t in OrderTheorem::ALL {
        let alphas = (0..=200)
            .map(|k| t.order(t.a2_max() * k as f64 / 200.0))
            .collect::<Result<Vec<f64>, _>>()
            .map_err(e)?;
        ensure(alphas.windows(2).all(|w| w[1] < w[0]), format!("{t:?} not strictly decreasing"))?;
    }
    Ok(format!("endpoints 0.5; identity gap {identity:.1e} over 100 values; all sweeps strictly decreasing"))
}

fn lemma_suites() -> Outcome {
    let start = Instant::now();
    let e = |x: subord_cli::CliError| x.to_string();
    let schwarz = schwarz_suite(1000, 1).map_err(e)?;
    ensure(
        schwarz.checked == 1000 && schwarz.failures == 0 && schwarz.min_slack >= -SCHWARZ_TOL,
        format!("Schwarz suite {schwarz:?}"),
    )?;
    let gap = extremal_gap().map_err(e)?;
    ensure(gap <= EXTREMAL_TOL, format!("extremal gap {gap:e}"))?;
    let contact = contact_suite(500, 2).map_err(e)?;
    ensure(
        contact.checked == 500 && contact.failures == 0,
        format!("contact suite {contact:?}"),
    )?;
    within(start.elapsed(), 60)?;
    Ok(format!(
        "1000 Schwarz functions (min slack {:.1e}), extremal gap {gap:.1e}, 500 contact pairs (min slack {:.1e}), {:.1} s",
        schwarz.min_slack,
        contact.min_slack,
        start.elapsed().as_secs_f64()
    ))
}

fn falsification_suites() -> Outcome {
    let start = Instant::now();
    let cfg = FalsifyConfig {
        samples: 1000,
        seed: 2024,
        ..FalsifyConfig::default()
    };
    let mut held = Vec::new();
    for (ex, n, beta) in FALSIFY_PARAMS {
        let s = ExampleSetup::<f64>::new(ex, n, beta, 1.0).map_err(|x| x.to_string())?;
        let r = falsify_implication(&s.psi.into(), &s.omega, &s.q, &s.spec, &cfg).map_err(|x| x.to_string())?;
        ensure(!r.exploratory, format!("{ex:?}: admissibility not confirmed"))?;
        ensure(
            r.hypothesis_holds_count >= 1000,
            format!("{ex:?}: only {} hypothesis-satisfying samples", r.hypothesis_holds_count),
        )?;
        ensure(
            r.counterexamples.is_empty(),
            format!("{ex:?}: {} counterexamples", r.counterexamples.len()),
        )?;
        held.push(r.hypothesis_holds_count);
    }
    let s = ExampleSetup::<f64>::new(Example::SumDisk, 1, 1.0, 1.0).map_err(|x| x.to_string())?;
    let small = CanonicalMap::disk(0.5, Complex::new(0.0, 0.0)).map_err(|x| x.to_string())?;
    let control = FalsifyConfig { samples: 100, ..cfg };
    let psi: PsiSpec<f64> = s.psi.into();
    let r = falsify_implication(&psi, &s.omega, &small, &s.spec, &control).map_err(|x| x.to_string())?;
    ensure(!r.counterexamples.is_empty(), "negative control found no counterexample".into())?;
    within(start.elapsed(), 300)?;
    Ok(format!(
        "hypothesis-satisfying samples {held:?}, 0 counterexamples; control found {}; {:.1} s",
        r.counterexamples.len(),
        start.elapsed().as_secs_f64()
    ))
}

fn order_corpus() -> Outcome {
    let grid = OrderGrid::default();
    let corpus = standard_corpus::<f64>().map_err(|x| x.to_string())?;
    let mut worst = f64::INFINITY;
    for f in &corpus {
        for t in [OrderTheorem::Starlike, OrderTheorem::SqrtDerivative] {
            let r = verify_order_theorem(t, f, &grid, 1e-3).map_err(|x| x.to_string())?;
            ensure(r.pass, format!("{t:?} fails on {f:?}: {r:?}"))?;
            worst = worst.min(r.infimum - r.alpha);
        }
    }
    let f = convex_family(ConvexKind::HalfPlaneType, Complex::new(1.0, 0.0)).map_err(|x| x.to_string())?;
    let r = verify_order_theorem(OrderTheorem::Starlike, &f, &grid, 1e-3).map_err(|x| x.to_string())?;
    ensure((r.infimum - 0.5f64).abs() <= 1e-3, format!("sharp case infimum {}", r.infimum))?;
    Ok(format!(
        "{} functions pass both bounds (min margin {worst:.2e}); z/(1-z) infimum {:.6}",
        corpus.len(),
        r.infimum
    ))
}

fn reproduce_determinism() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let run = |name: &str| -> Result<(i32, Vec<u8>, Vec<u8>), String> {
        let path = dir.path().join(name);
        let mut out = Vec::new();
        let args = ["subord", "reproduce", "--seed", "9", "--samples", "100", "--trials", "100", "--output"];
        let code = subord_cli::run(
            args.iter().map(|s| s.to_string()).chain([path.display().to_string()]),
            &mut out,
        );
        let report = std::fs::read(&path).map_err(|e| e.to_string())?;
        Ok((code, report, out))
    };
    let (c1, r1, o1) = run("first.json")?;
    let (c2, r2, o2) = run("second.json")?;
    ensure(c1 == c2, format!("exit codes differ: {c1} vs {c2}"))?;
    ensure(r1 == r2, "report files differ".into())?;
    ensure(o1 == o2, "stdout tables differ".into())?;
    ensure(c1 == 0, format!("reproduce exited with {c1}"))?;
    Ok(format!("two runs produced identical {}-byte reports", r1.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("sum-disk sharp constants", sum_disk_constants),
        ("quadratic-disk constant", quadratic_disk_constants),
        ("affine-disk constant", affine_disk_constants),
        ("half-plane admissibility thresholds", half_plane_thresholds),
        ("order formulas", order_formulas),
        ("lemma property suites", lemma_suites),
        ("falsification suites", falsification_suites),
        ("order bounds on the convex corpus", order_corpus),
        ("reproduce determinism", reproduce_determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL  {name}: {why}", k + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
