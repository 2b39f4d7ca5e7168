//! Acceptance criteria 1-9. Prints one PASS/FAIL line per criterion with its
//! runtime and exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fiscap_core::elite::{
    morality_threshold_aligned, optimal_allocation, threshold_comparative_statics,
};
use fiscap_core::fiscal::{laffer_curve, laffer_peak_rate, laffer_peak_revenue, revenue_root};
use fiscap_core::oracle::{
    brute_force_allocation, brute_force_peak, brute_force_report, brute_force_threshold, verify_pbe,
};
use fiscap_core::signaling::{classify_model, jump_factor, threshold_set};
use fiscap_core::sim::{run_timeline, trajectory_jump};
use fiscap_core::{
    optimal_report, validate, Corner, EquilibriumTag, GridSpec, ModelParams, Policy, Regime,
    Scenario, State, ValidatedModel, ValueConfig,
};

// Pinned tolerances.
const GRID_TOL: f64 = 1e-3;
const ORACLE_TOL: f64 = 1e-6;
const BISECTION_TOL: f64 = 1e-9;
const IDENTITY_TOL: f64 = 1e-12;
const HAND_TOL: f64 = 1e-9;
const DERIVATIVE_TOL: f64 = 1e-6;

// Pinned runtime budgets.
const BUDGET_PEAKS: Duration = Duration::from_secs(1);
const BUDGET_REPORTS: Duration = Duration::from_secs(10);
const BUDGET_SIM: Duration = Duration::from_millis(100);
const BUDGET_VERIFY: Duration = Duration::from_secs(60);

const SEED: u64 = 42;

type Check = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn close(what: &str, got: f64, want: f64, tol: f64) -> Check {
    ensure((got - want).abs() <= tol, || {
        format!("{what}: got {got}, want {want} (tol {tol:e})")
    })
}

fn within(budget: Duration, f: impl FnOnce() -> Check) -> (Check, Duration) {
    let start = Instant::now();
    let res = f();
    let took = start.elapsed();
    let res = res.and_then(|_| {
        ensure(took <= budget, || {
            format!("took {took:?}, budget {budget:?}")
        })
    });
    (res, took)
}

fn model(w: f64, c: f64, sigma: f64, kappa: f64, values: ValueConfig) -> ValidatedModel {
    validate(ModelParams::new(w, c, sigma, kappa), values).expect("valid acceptance parameters")
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    lo + (hi - lo) * rng.gen_range(0.01..0.99)
}

/// Six reference curves: w = c = 1, sigma = 0.1, alpha = 1.5.
fn c1_reference_peaks() -> Check {
    let s = 0.1 / 1.1;
    for g in [0.0, 1.0] {
        for kappa in [0.0, 0.1, 0.2] {
            let m = model(1.0, 1.0, 0.1, kappa, ValueConfig::Aligned { alpha: 1.5 });
            let phi = g * 1.5 + (1.0 - g) * s;
            let (t_hat, top) = (0.5 / (1.0 - kappa * phi), 1.0 / (4.0 * (1.0 - kappa * phi)));
            let tag = format!("g={g} kappa={kappa}");
            close(
                &format!("{tag} peak rate"),
                laffer_peak_rate(&m, g, 1.5).unwrap(),
                t_hat,
                IDENTITY_TOL,
            )?;
            close(
                &format!("{tag} peak revenue"),
                laffer_peak_revenue(&m, g, 1.5).unwrap(),
                top,
                IDENTITY_TOL,
            )?;

            let curve =
                laffer_curve(&m, g, 1.5, 0.0, revenue_root(&m, g, 1.5).unwrap(), 1001).unwrap();
            let best = curve
                .iter()
                .max_by(|a, b| a.revenue.total_cmp(&b.revenue))
                .unwrap();
            close(&format!("{tag} sampled rate"), best.t, t_hat, GRID_TOL)?;
            close(
                &format!("{tag} sampled revenue"),
                best.revenue,
                top,
                GRID_TOL,
            )?;

            let grid = GridSpec::peak(&m, g, 1.5).unwrap();
            let (bt, btop) = brute_force_peak(&m, g, 1.5, &grid).unwrap();
            close(&format!("{tag} oracle rate"), bt, t_hat, ORACLE_TOL)?;
            close(&format!("{tag} oracle revenue"), btop, top, ORACLE_TOL)?;
        }
    }
    Ok(())
}

fn c2_report_oracle() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..1000 {
        let alpha = uniform(&mut rng, 0.1, 2.0);
        let kappa = uniform(&mut rng, 0.0, 1.0f64.min(1.0 / alpha));
        let m = model(
            uniform(&mut rng, 0.5, 2.0),
            uniform(&mut rng, 0.5, 2.0),
            uniform(&mut rng, 0.0, 1.0),
            kappa,
            ValueConfig::Aligned { alpha },
        );
        let p = Policy::new(
            uniform(&mut rng, 0.0, 2.0 * m.c()),
            uniform(&mut rng, 0.0, 1.0),
        )
        .unwrap();
        let closed = optimal_report(&m, &p, alpha).report;
        let oracle = brute_force_report(&m, &p, alpha, &GridSpec::report(&m)).unwrap();
        close(&format!("draw {i}"), oracle, closed, ORACLE_TOL)?;
    }
    Ok(())
}

fn c3_aligned_threshold() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..100 {
        let sigma = uniform(&mut rng, 0.0, 1.0);
        let th = 1.0 / (1.0 + sigma);
        // The cutoff lies below 1 only for alpha above 1/2.
        let alpha = uniform(&mut rng, 0.5, th);
        let m = model(1.0, 1.0, sigma, 0.0, ValueConfig::Aligned { alpha });
        let oracle =
            brute_force_threshold(&m, alpha, alpha, 0.0, 1.0 - 1e-12).map_err(|e| e.to_string())?;
        let hand = (1.0 / alpha - 1.0 - sigma) / (1.0 - sigma);
        let closed = morality_threshold_aligned(alpha, sigma).unwrap();
        close(
            &format!("draw {i} closed vs hand"),
            closed,
            hand,
            IDENTITY_TOL,
        )?;
        close(
            &format!("draw {i} bisection"),
            oracle,
            closed,
            BISECTION_TOL,
        )?;
        let above = model(
            1.0,
            1.0,
            sigma,
            (closed + 1e-6).min(0.999_999),
            ValueConfig::Aligned { alpha },
        );
        ensure(
            brute_force_allocation(&above, alpha, alpha).unwrap() == Corner::Provision,
            || format!("draw {i}: no provision just above the cutoff"),
        )?;
    }
    // Finite differences at 20 points on each side of alpha = 1/2.
    let sigma = 0.3;
    for k in 1..=20 {
        for alpha in [0.5 - 0.0125 * k as f64, 0.5 + 0.0125 * k as f64] {
            let (d_alpha, d_sigma) = threshold_comparative_statics(alpha, sigma, 1e-5).unwrap();
            ensure(d_alpha < 0.0, || {
                format!("alpha={alpha}: d/d alpha = {d_alpha} not negative")
            })?;
            let sign_ok = if alpha < 0.5 {
                d_sigma > 0.0
            } else {
                d_sigma < 0.0
            };
            ensure(sign_ok, || {
                format!("alpha={alpha}: d/d sigma = {d_sigma} has the wrong sign")
            })?;
            close(
                "d/d alpha",
                d_alpha,
                -1.0 / (alpha * alpha * (1.0 - sigma)),
                DERIVATIVE_TOL,
            )?;
            close(
                "d/d sigma",
                d_sigma,
                (1.0 / alpha - 2.0) / (1.0 - sigma).powi(2),
                DERIVATIVE_TOL,
            )?;
        }
    }
    Ok(())
}

fn c4_jump_identities() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..1000 {
        let sigma = uniform(&mut rng, 0.0, 1.0);
        let s = sigma / (1.0 + sigma);
        let alpha_l = uniform(&mut rng, 0.0, s);
        let alpha_h = uniform(&mut rng, s, 2.0);
        let kappa = uniform(&mut rng, 0.0, 1.0 / alpha_h);
        let m = model(
            uniform(&mut rng, 0.5, 2.0),
            uniform(&mut rng, 0.5, 2.0),
            sigma,
            kappa,
            ValueConfig::TwoState {
                alpha_l,
                alpha_h,
                rho: 0.5,
            },
        );
        let j = jump_factor(&m, alpha_h).unwrap();
        let ratio = laffer_peak_revenue(&m, 1.0, alpha_h).unwrap()
            / laffer_peak_revenue(&m, 0.0, alpha_h).unwrap();
        close(&format!("draw {i} T1/T0"), ratio, j, IDENTITY_TOL)?;
        ensure(j > 1.0, || {
            format!("draw {i}: J = {j} with kappa = {kappa} > 0")
        })?;
    }
    let base = model(
        1.0,
        1.0,
        0.5,
        0.0,
        ValueConfig::TwoState {
            alpha_l: 0.2,
            alpha_h: 0.6,
            rho: 0.5,
        },
    );
    let mut prev = f64::NEG_INFINITY;
    for i in 0..100 {
        let kappa = 1.6 * i as f64 / 100.0;
        let j = jump_factor(&base.with_kappa(kappa).unwrap(), 0.6).unwrap();
        ensure(j > prev, || format!("J not increasing at kappa = {kappa}"))?;
        prev = j;
    }
    Ok(())
}

fn game(kappa: f64, alpha_h: f64) -> ValidatedModel {
    model(
        1.0,
        1.0,
        0.5,
        kappa,
        ValueConfig::TwoState {
            alpha_l: 0.2,
            alpha_h,
            rho: 0.5,
        },
    )
}

fn c5_weak_high_classification() -> Check {
    for (kappa, want) in [
        (0.2, EquilibriumTag::PoolingRents),
        (0.5, EquilibriumTag::Separation),
        (1.5, EquilibriumTag::NoPureEquilibrium),
    ] {
        let m = game(kappa, 0.6);
        let class = classify_model(&m).unwrap();
        ensure(class.tag == want, || {
            format!("kappa={kappa}: {:?}, want {want:?}", class.tag)
        })?;
        let rows = verify_pbe(&class, &m, 0.2, 0.6, 0.5).unwrap();
        ensure(!rows.is_empty() && rows.iter().all(|r| r.passed), || {
            format!("kappa={kappa}: incentive rows failed: {rows:?}")
        })?;
    }
    // theta = 2/3 and sigma theta = 1/3, substituted by hand.
    let t = threshold_set(0.2, 0.6, 0.5, 0.5).unwrap();
    close("kappa_min_h", t.kappa_min_h.unwrap(), 1.0 / 3.0, HAND_TOL)?;
    close("kappa_max_l", t.kappa_max_l.unwrap(), 1.4, HAND_TOL)?;
    close("kappa_pool", t.kappa_pool.unwrap(), 7.0 / 3.0, HAND_TOL)?;
    close("kappa_h_min", t.kappa_h_min.unwrap(), 1.0, HAND_TOL)?;
    Ok(())
}

fn c6_strong_high_separation() -> Check {
    let ceiling = threshold_set(0.2, 1.2, 0.5, 0.5)
        .unwrap()
        .kappa_max_l
        .unwrap();
    close("kappa_max_l", ceiling, 7.0 / 11.0, HAND_TOL)?;
    close("kappa_max_l (6 d.p.)", ceiling, 0.636364, 5e-7)?;
    for i in 0..50 {
        let kappa = ceiling * i as f64 / 50.0;
        let m = game(kappa, 1.2);
        let c = classify_model(&m).unwrap();
        ensure(
            c.regime == Regime::StrongHigh && c.tag == EquilibriumTag::Separation,
            || format!("kappa={kappa}: {:?} {:?}", c.regime, c.tag),
        )?;
        let d = c.diagnostics;
        ensure(d.high_separating >= 0.0 && d.low_deviation < 0.0, || {
            format!(
                "kappa={kappa}: incentive signs {} / {}",
                d.high_separating, d.low_deviation
            )
        })?;
        ensure(
            verify_pbe(&c, &m, 0.2, 1.2, 0.5)
                .unwrap()
                .iter()
                .all(|r| r.passed),
            || format!("kappa={kappa}: oracle rejects separation"),
        )?;
    }
    Ok(())
}

fn c7_direction_conflict() -> Check {
    let m = model(
        1.0,
        1.0,
        0.5,
        0.0,
        ValueConfig::Unaligned {
            alpha_e: 1.0,
            alpha_c: 0.2,
        },
    );
    let oracle = brute_force_allocation(&m, 1.0, 0.2).unwrap();
    ensure(oracle == Corner::Provision, || {
        format!("oracle picks {oracle:?}")
    })?;
    let d = optimal_allocation(&m, 1.0, 0.2).unwrap();
    ensure(d.g_star == Corner::Provision, || {
        format!("library picks {:?}", d.g_star)
    })?;
    ensure(d.stated_g_star == Some(Corner::Rents), || {
        format!("stated case gives {:?}", d.stated_g_star)
    })?;
    ensure(d.direction_conflict, || "conflict not flagged".into())
}

fn c8_shock_trajectory() -> Check {
    let sc = Scenario::new(game(0.5, 0.6), 6, Some(3), State::Low).unwrap();
    let traj = run_timeline(&sc).unwrap();
    let t0 = 1.0 / (4.0 * (5.0 / 6.0));
    let t1 = 1.0 / (4.0 * 0.7);
    for (r, want) in traj.records.iter().zip([t0, t0, t0, t1, t1, t1]) {
        close(
            &format!("period {}", r.period),
            r.tax_base,
            want,
            IDENTITY_TOL,
        )?;
    }
    close("period 0 (printed)", traj.records[0].tax_base, 0.3, 5e-7)?;
    close(
        "period 3 (printed)",
        traj.records[3].tax_base,
        0.357143,
        5e-7,
    )?;
    let j = trajectory_jump(&traj, 3).unwrap();
    close("jump", j, 25.0 / 21.0, BISECTION_TOL)?;
    close("jump (printed)", j, 1.190476, 5e-7)
}

fn c9_verify_binary() -> Check {
    let out = Command::new(env!("CARGO_BIN_EXE_fiscap"))
        .args([
            "verify", "--seed", "42", "--draws", "1000", "--format", "csv",
        ])
        .env_remove("FISCAP_FORMAT")
        .output()
        .map_err(|e| e.to_string())?;
    ensure(out.status.code() == Some(0), || {
        format!("exit status {:?}", out.status)
    })?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    ensure(
        lines.next() == Some("target,closed_form,oracle,abs_err,passed"),
        || "unexpected header".into(),
    )?;
    let rows: Vec<&str> = lines.collect();
    ensure(rows.len() >= 1000, || format!("only {} rows", rows.len()))?;
    ensure(rows.iter().all(|l| l.ends_with(",true")), || {
        "a row did not pass".into()
    })
}

fn main() {
    let criteria: Vec<Criterion> = vec![
        (
            "reference Laffer peaks: closed form, sampled curve, oracle",
            BUDGET_PEAKS,
            c1_reference_peaks,
        ),
        (
            "citizen report matches brute force on 1000 draws",
            BUDGET_REPORTS,
            c2_report_oracle,
        ),
        (
            "aligned morality cutoff by bisection; comparative-statics signs",
            Duration::MAX,
            c3_aligned_threshold,
        ),
        (
            "jump factor equals tax-base ratio, exceeds 1, rises with morality",
            Duration::MAX,
            c4_jump_identities,
        ),
        (
            "weak-high classification and thresholds",
            Duration::MAX,
            c5_weak_high_classification,
        ),
        (
            "strong-high separation without morality",
            Duration::MAX,
            c6_strong_high_separation,
        ),
        (
            "contested common interest: direction conflict flagged",
            Duration::MAX,
            c7_direction_conflict,
        ),
        (
            "shock trajectory and same-period jump",
            BUDGET_SIM,
            c8_shock_trajectory,
        ),
        (
            "verify --seed 42 --draws 1000 exits 0",
            BUDGET_VERIFY,
            c9_verify_binary,
        ),
    ];
    let mut failures = 0;
    for (i, (name, budget, check)) in criteria.into_iter().enumerate() {
        let (res, took) = within(budget, check);
        match res {
            Ok(()) => println!(
                "PASS [{}] {name} ({:.1} ms)",
                i + 1,
                took.as_secs_f64() * 1e3
            ),
            Err(why) => {
                failures += 1;
                println!(
                    "FAIL [{}] {name} ({:.1} ms): {why}",
                    i + 1,
                    took.as_secs_f64() * 1e3
                );
            }
        }
    }
    println!("{} of 9 criteria passed", 9 - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
