//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any
//! failure. Every check is computed here from the library and binary
//! rather than read from a stored answer.

mod common;

use std::f64::consts::SQRT_2;
use std::process::{Command, ExitCode};

use darboux::frame::{gram_deviation, CurveClass, SurfaceCurve};
use darboux::io::VerifyOutput;
use darboux::presets::{preset_curve, PRESETS};
use darboux::smarandache::{construct, corollary, ClosedFormContext, Quantity, SmarandacheKind};
use darboux::verify::{audit, oracle, registry_for, standard_grid, FormulaId, Verdict, VerificationReport};
use darboux::{Error, Vec3};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn presets() -> Vec<(&'static str, SurfaceCurve)> {
    PRESETS
        .iter()
        .map(|p| (p.name, p.build(false).expect("preset builds")))
        .collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn err<E: std::fmt::Display>(ctx: &str) -> impl Fn(E) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn frame_validity() -> Outcome {
    let mut worst = (0.0f64, 0.0f64);
    for (name, c) in presets() {
        for s in c.uniform_s(500) {
            let gram = gram_deviation(c.darboux_frame(s).map_err(err(name))?);
            let res = c.darboux_residual(s).map_err(err(name))?;
            ensure(gram < 1e-8 && res < 1e-8, || {
                format!("{name} at s={s}: gram {gram:e}, system residual {res:e}")
            })?;
            worst = (worst.0.max(gram), worst.1.max(res));
        }
    }
    Ok(format!(
        "max gram deviation {:.1e}, max system residual {:.1e}",
        worst.0, worst.1
    ))
}

fn classification_table() -> Outcome {
    use CurveClass::*;
    let expected: [(&str, &[CurveClass]); 5] = [
        ("equator", &[Geodesic, PrincipalLine]),
        ("latitude", &[PrincipalLine]),
        ("ruling", &[Geodesic, AsymptoticLine, PrincipalLine]),
        ("circle", &[AsymptoticLine, PrincipalLine]),
        ("helix", &[Geodesic]),
    ];
    for (name, labels) in expected {
        let got = preset_curve(name)
            .and_then(|c| c.classify(1e-8))
            .map_err(err(name))?
            .labels();
        ensure(got == labels, || format!("{name}: expected {labels:?}, got {got:?}"))?;
    }
    let latitude = preset_curve("latitude").map_err(err("latitude"))?;
    for s in latitude.uniform_s(64) {
        let (k_g, _, _) = latitude.darboux_invariants(s).map_err(err("latitude"))?;
        ensure((k_g - 1.0).abs() < 1e-8, || format!("latitude k_g = {k_g} at s={s}"))?;
    }
    Ok("equator, latitude, ruling, circle and helix labelled as expected; latitude k_g = 1".into())
}

fn sphere_membership() -> Outcome {
    let mut worst = 0.0f64;
    for (name, c) in presets() {
        for kind in SmarandacheKind::ALL {
            let beta = construct(kind, &c).map_err(err(name))?;
            for s in c.uniform_s(1000) {
                let dev = (beta.beta(s).map_err(err(name))?.norm() - 1.0).abs();
                ensure(dev < 1e-9, || format!("{kind} on {name}: | |beta|-1 | = {dev:e}"))?;
                worst = worst.max(dev);
            }
        }
    }
    Ok(format!("max | |beta|-1 | = {worst:.1e} over 1000 samples"))
}

fn audits(tol: f64) -> Result<Vec<(&'static str, SurfaceCurve, SmarandacheKind, VerificationReport)>, String> {
    let mut out = Vec::new();
    for (name, c) in presets() {
        let grid = standard_grid(&c, 128);
        for kind in SmarandacheKind::ALL {
            let report = audit(kind, &c, &grid, tol, None).map_err(err(name))?;
            out.push((name, c.clone(), kind, report));
        }
    }
    Ok(out)
}

fn rate_formulas() -> Outcome {
    let reports = audits(1e-9)?;
    for (name, _, kind, r) in &reports {
        let v = r.verdict(&format!("rate-{kind}"));
        ensure(v == Some(Verdict::Confirmed), || {
            format!("rate-{kind} on {name}: {v:?}")
        })?;
    }
    Ok(format!(
        "rate CONFIRMED at tol 1e-9 in {} kind/preset pairs",
        reports.len()
    ))
}

/// A pair is degenerate when beta is stationary: both sides are undefined
/// at every sample.
fn all_undefined(r: &VerificationReport, id: &str) -> bool {
    r.formula(id)
        .is_some_and(|f| f.samples.iter().all(|s| s.closed_form.is_none() && s.oracle.is_none()))
}

fn tangent_formulas() -> Outcome {
    let (mut regular, mut degenerate) = (0, 0);
    for (name, _, kind, r) in audits(1e-8)? {
        let id = format!("tangent-{kind}");
        let f = r.formula(&id).ok_or_else(|| format!("{id} missing"))?;
        match f.verdict {
            Verdict::Confirmed | Verdict::SignOnly => {
                // SignOnly on a vector means one global flip.
                ensure(f.max_rel_up_to_sign.is_some_and(|e| e < 1e-8), || {
                    format!("{id} on {name}: residual {:?}", f.max_rel_up_to_sign)
                })?;
                regular += 1;
            }
            Verdict::Undefined if all_undefined(&r, &id) => degenerate += 1,
            v => return Err(format!("{id} on {name}: {v:?}")),
        }
    }
    Ok(format!(
        "{regular} pairs agree up to a global sign; {degenerate} degenerate pairs undefined on both sides"
    ))
}

fn tg_on_equator() -> Outcome {
    let c = preset_curve("equator").map_err(err("equator"))?;
    let beta = construct(SmarandacheKind::Tg, &c).map_err(err("equator"))?;
    for s in c.uniform_s(200) {
        let want = Vec3::new(-s.sin(), s.cos(), 1.0) / SQRT_2;
        let got = beta.beta(s).map_err(err("equator"))?;
        ensure((got - want).max_abs() < 1e-12, || {
            format!("beta({s}) = {got:?}, expected {want:?}")
        })?;
        let o = oracle(&beta, s).map_err(err("equator"))?;
        let tau = o.tau.ok_or("torsion undefined")?;
        ensure((o.kappa - SQRT_2).abs() < 1e-9 && tau.abs() < 1e-9, || {
            format!("kappa = {}, tau = {tau} at s={s}", o.kappa)
        })?;
    }
    Ok("beta explicit within 1e-12; kappa = sqrt 2 and tau = 0 within 1e-9".into())
}

fn carrier_sphere() -> Outcome {
    let (mut regular, mut degenerate) = (0, 0);
    for (name, c) in presets() {
        for kind in SmarandacheKind::ALL {
            let beta = construct(kind, &c).map_err(err(name))?;
            let grid = standard_grid(&c, 200);
            let first = oracle(&beta, grid[0]);
            if let Err(Error::NonRegularSmarandache { .. }) = first {
                for &s in &grid {
                    ensure(
                        matches!(oracle(&beta, s), Err(Error::NonRegularSmarandache { .. })),
                        || format!("{kind} on {name} is regular only at some samples (s={s})"),
                    )?;
                }
                degenerate += 1;
                continue;
            }
            for &s in &grid {
                let o = oracle(&beta, s).map_err(err(name))?;
                let split = o.kappa * o.kappa - (o.k_g * o.k_g + o.k_n * o.k_n);
                ensure(
                    (o.k_n + 1.0).abs() < 1e-8 && o.tau_g.abs() < 1e-8 && split.abs() < 1e-8,
                    || {
                        format!(
                            "{kind} on {name} at s={s}: k_n* = {}, tau_g* = {}, split {split:e}",
                            o.k_n, o.tau_g
                        )
                    },
                )?;
                if let (Some(tau), Some(dphi)) = (o.tau, o.dphi_star_ds_star) {
                    let gap = o.tau_g - (tau + dphi);
                    ensure(gap.abs() < 1e-6, || format!("{kind} on {name}: torsion split {gap:e}"))?;
                }
            }
            regular += 1;
        }
    }
    Ok(format!("k_n* = -1, tau_g* = 0 and the curvature split hold on {regular} regular pairs; {degenerate} degenerate pairs rejected"))
}

fn audit_completeness() -> Outcome {
    let mut discrepant = 0;
    for p in PRESETS.iter() {
        let run = || {
            Command::new(env!("CARGO_BIN_EXE_darboux"))
                .args(["verify", "--preset", p.name])
                .output()
                .map_err(|e| format!("cannot run binary: {e}"))
        };
        let (a, b) = (run()?, run()?);
        ensure(a.status.success(), || String::from_utf8_lossy(&a.stderr).into_owned())?;
        ensure(a.stdout == b.stdout, || format!("{}: runs differ", p.name))?;
        let text = String::from_utf8(a.stdout).map_err(err(p.name))?;
        let out = VerifyOutput::from_json(&text).map_err(err(p.name))?;
        ensure(out.reports.len() == SmarandacheKind::ALL.len(), || {
            format!("{}: report count", p.name)
        })?;
        for r in &out.reports {
            let kind: SmarandacheKind = r.metadata.kind.parse().map_err(err(p.name))?;
            let mut want: Vec<String> = registry_for(kind).iter().map(FormulaId::to_string).collect();
            let mut got: Vec<String> = r.formulas.iter().map(|f| f.id.clone()).collect();
            want.sort();
            got.sort();
            ensure(want == got, || format!("{kind} on {}: ids {got:?}", p.name))?;
            for f in r.formulas.iter().filter(|f| f.verdict == Verdict::Discrepant) {
                discrepant += 1;
                ensure(
                    !f.samples.is_empty() && f.samples.iter().any(|s| s.abs.is_some() || s.note.is_some()),
                    || format!("{} on {} lacks per-sample residuals", f.id, p.name),
                )?;
            }
        }
    }
    Ok(format!(
        "one verdict per id, byte-identical reruns, {discrepant} DISCREPANT verdicts carry samples"
    ))
}

fn corollary_gating() -> Outcome {
    let ctx = ClosedFormContext {
        phi_star: 0.0,
        dphi_star_ds_star: 0.0,
    };
    let helix = preset_curve("helix").map_err(err("helix"))?;
    let equator = preset_curve("equator").map_err(err("equator"))?;
    for (kind, base, name) in [
        (SmarandacheKind::Tn, &helix, "helix"),
        (SmarandacheKind::Gn, &helix, "helix"),
        (SmarandacheKind::Tn, &equator, "equator"),
    ] {
        let r = corollary(kind, base, 0.5, &ctx);
        ensure(matches!(r, Err(Error::ClassificationMismatch { .. })), || {
            format!("{kind} corollary on {name}: {r:?}")
        })?;
    }
    let beta = construct(SmarandacheKind::Tg, &equator).map_err(err("equator"))?;
    let s = 1.0;
    let printed = corollary(SmarandacheKind::Tg, &equator, s, &ctx)
        .map_err(err("equator"))?
        .kappa_star;
    let kappa = oracle(&beta, s).map_err(err("equator"))?.kappa;
    ensure(
        (printed.abs() - kappa).abs() < 1e-8 && (kappa - SQRT_2).abs() < 1e-8,
        || format!("printed {printed}, oracle {kappa}"),
    )?;
    let report =
        audit(SmarandacheKind::Tg, &equator, &standard_grid(&equator, 32), 1e-8, None).map_err(err("audit"))?;
    let id = format!(
        "{}",
        FormulaId {
            kind: SmarandacheKind::Tg,
            quantity: Quantity::Curvature,
            corollary: Some(1)
        }
    );
    let f = report.formula(&id).ok_or_else(|| format!("{id} missing"))?;
    let flags: Vec<_> = f.samples.iter().map(|s| s.sign_agrees).collect();
    ensure(
        f.verdict == Verdict::SignOnly && flags.iter().all(|&b| b == Some(false)),
        || format!("{id}: {:?}, flags {flags:?}", f.verdict),
    )?;
    Ok(format!(
        "mismatches raised; corollary 1 kappa* = {printed:.12} vs oracle {kappa:.12}, sign_agrees = false"
    ))
}

fn dsl_properties() -> Outcome {
    let runner = || {
        let config = Config {
            cases: 200,
            failure_persistence: None,
            ..Config::default()
        };
        TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
    };
    runner()
        .run(&common::smooth_expr(), |e| common::check_derivative(&e))
        .map_err(|e| format!("derivative: {e}"))?;
    runner()
        .run(&common::raw_tree(), |e| common::check_round_trip(&e))
        .map_err(|e| format!("round trip: {e}"))?;
    Ok(format!(
        "derivative within {:.0e} of finite differences and parse round trip on 200 cases each",
        common::DERIVATIVE_REL_TOL
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("frame validity", frame_validity),
        ("classification truth table", classification_table),
        ("sphere membership", sphere_membership),
        ("rate formulas", rate_formulas),
        ("tangent formulas", tangent_formulas),
        ("Tg on the equator", tg_on_equator),
        ("carrier-sphere oracle", carrier_sphere),
        ("audit completeness and determinism", audit_completeness),
        ("corollary gating", corollary_gating),
        ("expression DSL", dsl_properties),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("[PASS] criterion {}: {name} ({detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("[FAIL] criterion {}: {name} ({why})", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
