//! Seeded closed-form versus oracle comparison over random valid draws.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{
    brute_base, brute_force_allocation, brute_force_peak, brute_force_report,
    brute_force_threshold, verify_pbe, GridSpec, OracleReport, THRESHOLD_ITERATIONS,
    THRESHOLD_TOLERANCE,
};
use crate::citizen::optimal_report;
use crate::elite::{morality_threshold_aligned, optimal_allocation, Corner};
use crate::error::Result;
use crate::fiscal::{laffer_peak_rate, laffer_peak_revenue};
use crate::model::{validate, ModelParams, Policy, ValidatedModel, ValueConfig};
use crate::signaling::{classify_model, jump_factor};

/// Keeps draws 1% away from every edge of their box.
const MARGIN: f64 = 0.01;

/// Top of the morality range bisected for the aligned threshold.
const KAPPA_CEILING: f64 = 1.0 - 1e-12;

fn inside(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u: f64 = rng.gen_range(MARGIN..1.0 - MARGIN);
    lo + (hi - lo) * u
}

fn static_model(rng: &mut ChaCha8Rng, values: ValueConfig) -> Result<ValidatedModel> {
    let w = inside(rng, 0.5, 2.0);
    let c = inside(rng, 0.5, 2.0);
    let sigma = inside(rng, 0.0, 1.0);
    let kappa = inside(rng, 0.0, 1.0f64.min(1.0 / values.relevant_alpha()));
    validate(ModelParams::new(w, c, sigma, kappa), values)
}

fn report_rows(rng: &mut ChaCha8Rng, rows: &mut Vec<OracleReport>) -> Result<()> {
    let alpha = inside(rng, 0.1, 2.0);
    let m = static_model(rng, ValueConfig::Aligned { alpha })?;
    let policy = Policy::new(inside(rng, 0.0, 2.0 * m.c()), inside(rng, 0.0, 1.0))?;
    let grid = GridSpec::report(&m);
    let closed = optimal_report(&m, &policy, alpha).report;
    rows.push(OracleReport::new(
        "report",
        closed,
        brute_force_report(&m, &policy, alpha, &grid)?,
        grid,
    ));

    let g = inside(rng, 0.0, 1.0);
    let grid = GridSpec::peak(&m, g, alpha)?;
    let (t, top) = brute_force_peak(&m, g, alpha, &grid)?;
    rows.push(OracleReport::new(
        "peak_rate",
        laffer_peak_rate(&m, g, alpha)?,
        t,
        grid,
    ));
    rows.push(OracleReport::new(
        "peak_revenue",
        laffer_peak_revenue(&m, g, alpha)?,
        top,
        grid,
    ));
    Ok(())
}

fn allocation_rows(rng: &mut ChaCha8Rng, rows: &mut Vec<OracleReport>) -> Result<()> {
    let alpha_e = inside(rng, 0.1, 2.0);
    let alpha_c = inside(rng, 0.1, 2.0);
    let m = static_model(rng, ValueConfig::Unaligned { alpha_e, alpha_c })?;
    let closed = optimal_allocation(&m, alpha_e, alpha_c)?.g_star;
    let oracle = brute_force_allocation(&m, alpha_e, alpha_c)?;
    let grid = GridSpec::peak(&m, 1.0, alpha_c)?.with_tolerance(0.0);
    rows.push(OracleReport::new(
        "allocation",
        closed.share(),
        oracle.share(),
        grid,
    ));
    Ok(())
}

/// Weak-provision draws with `alpha > 1/2`, the part of the region where the
/// threshold lies inside `[0, 1)` and a crossing can actually be observed.
fn threshold_rows(rng: &mut ChaCha8Rng, rows: &mut Vec<OracleReport>) -> Result<()> {
    let sigma = inside(rng, 0.0, 1.0);
    let th = 1.0 / (1.0 + sigma);
    let alpha = inside(rng, 0.5f64.max(sigma * th), th);
    let m = validate(
        ModelParams::new(inside(rng, 0.5, 2.0), inside(rng, 0.5, 2.0), sigma, 0.0),
        ValueConfig::Aligned { alpha },
    )?;
    let oracle = brute_force_threshold(&m, alpha, alpha, 0.0, KAPPA_CEILING)?;
    let grid = GridSpec {
        lo: 0.0,
        hi: KAPPA_CEILING,
        step: KAPPA_CEILING,
        iterations: THRESHOLD_ITERATIONS,
        tolerance: THRESHOLD_TOLERANCE,
    };
    rows.push(OracleReport::new(
        "kappa_bar",
        morality_threshold_aligned(alpha, sigma)?,
        oracle,
        grid,
    ));
    Ok(())
}

/// Two-state draws spanning both regimes, checked incentive by incentive.
fn game_rows(rng: &mut ChaCha8Rng, rows: &mut Vec<OracleReport>) -> Result<()> {
    let sigma = inside(rng, 0.0, 1.0);
    let s = sigma / (1.0 + sigma);
    let alpha_l = inside(rng, 0.0, s);
    let alpha_h = inside(rng, s, 2.0);
    let rho = inside(rng, 0.0, 1.0);
    let kappa = inside(rng, 0.0, 1.0 / alpha_h);
    let m = validate(
        ModelParams::new(inside(rng, 0.5, 2.0), inside(rng, 0.5, 2.0), sigma, kappa),
        ValueConfig::TwoState {
            alpha_l,
            alpha_h,
            rho,
        },
    )?;
    let class = classify_model(&m)?;
    rows.extend(verify_pbe(&class, &m, alpha_l, alpha_h, rho)?);

    let ratio =
        brute_base(&m, Corner::Provision, alpha_h)? / brute_base(&m, Corner::Rents, alpha_h)?;
    rows.push(OracleReport::new(
        "jump_factor",
        jump_factor(&m, alpha_h)?,
        ratio,
        GridSpec::peak(&m, 1.0, alpha_h)?,
    ));
    Ok(())
}

/// Runs `draws` independent draws from a ChaCha8 stream seeded with `seed`.
///
/// Each draw contributes, in order: report and peak rows, an allocation row,
/// an aligned-threshold row, the incentive rows of a two-state game and its
/// jump factor. The output depends only on `(seed, draws)`.
pub fn agreement_suite(seed: u64, draws: usize) -> Result<Vec<OracleReport>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut rows = Vec::with_capacity(draws * 14);
    for _ in 0..draws {
        report_rows(&mut rng, &mut rows)?;
        allocation_rows(&mut rng, &mut rows)?;
        threshold_rows(&mut rng, &mut rows)?;
        game_rows(&mut rng, &mut rows)?;
    }
    Ok(rows)
}
