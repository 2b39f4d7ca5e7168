//! Per-capita revenue as a function of the tax rate (the moral Laffer curve).
//!
//! Revenue is `T(t) = (t w / c) * [c - t (1 - kappa phi)]`, a downward parabola
//! with roots at `0` and `c / (1 - kappa phi)`. Past the second root no income
//! is reported, so the economic curve is clamped at zero there; the raw
//! parabola is available as [`revenue_parabola`].
//!
//! The tax base `t * report` uses the report implied by this revenue function,
//! `w * (1 - (t / c) (1 - kappa phi))`. It coincides with
//! [`crate::citizen::optimal_report`] when `w = 1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{Policy, ValidatedModel};

/// One sampled point of a Laffer curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LafferPoint {
    pub t: f64,
    pub revenue: f64,
    pub report: f64,
}

fn check_share(g: f64) -> Result<()> {
    if (0.0..=1.0).contains(&g) {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "allocation share g = {g} outside [0, 1]"
        )))
    }
}

/// `(t w / c) * [c - t (1 - kappa phi)]`, without clamping.
pub fn revenue_parabola(model: &ValidatedModel, policy: &Policy, alpha: f64) -> f64 {
    let slack = 1.0 - model.kappa() * model.phi(policy.g(), alpha);
    policy.t() * model.w() / model.c() * (model.c() - policy.t() * slack)
}

/// Report underlying the revenue function, clamped at zero.
pub fn implied_report(model: &ValidatedModel, policy: &Policy, alpha: f64) -> f64 {
    let slack = 1.0 - model.kappa() * model.phi(policy.g(), alpha);
    (model.w() * (1.0 - policy.t() / model.c() * slack)).max(0.0)
}

/// Per-capita tax revenue; zero once the report is driven to its corner.
pub fn revenue(model: &ValidatedModel, policy: &Policy, alpha: f64) -> f64 {
    policy.t() * implied_report(model, policy, alpha)
}

fn compliance_slack(model: &ValidatedModel, g: f64, alpha: f64) -> Result<f64> {
    check_share(g)?;
    let phi = model.phi(g, alpha);
    model.require_compliance_bound(phi)?;
    Ok(1.0 - model.kappa() * phi)
}

/// Revenue-maximizing tax rate `(c / 2) / (1 - kappa phi)`.
pub fn laffer_peak_rate(model: &ValidatedModel, g: f64, alpha: f64) -> Result<f64> {
    Ok(0.5 * model.c() / compliance_slack(model, g, alpha)?)
}

/// Peak revenue `w c / (4 (1 - kappa phi))`.
pub fn laffer_peak_revenue(model: &ValidatedModel, g: f64, alpha: f64) -> Result<f64> {
    Ok(model.w() * model.c() / (4.0 * compliance_slack(model, g, alpha)?))
}

/// The peak as a curve point.
pub fn laffer_peak(model: &ValidatedModel, g: f64, alpha: f64) -> Result<LafferPoint> {
    let t = laffer_peak_rate(model, g, alpha)?;
    let revenue = laffer_peak_revenue(model, g, alpha)?;
    Ok(LafferPoint {
        t,
        revenue,
        report: revenue / t,
    })
}

/// Second root of the parabola, `c / (1 - kappa phi)`.
pub fn revenue_root(model: &ValidatedModel, g: f64, alpha: f64) -> Result<f64> {
    Ok(model.c() / compliance_slack(model, g, alpha)?)
}

/// Samples `n_points` uniformly spaced rates on `[t_min, t_max]`.
pub fn laffer_curve(
    model: &ValidatedModel,
    g: f64,
    alpha: f64,
    t_min: f64,
    t_max: f64,
    n_points: usize,
) -> Result<Vec<LafferPoint>> {
    check_share(g)?;
    if !(t_min >= 0.0 && t_min < t_max && t_max.is_finite()) {
        return Err(Error::domain(format!(
            "rate range [{t_min}, {t_max}] must satisfy 0 <= t_min < t_max"
        )));
    }
    if n_points < 2 {
        return Err(Error::domain(format!(
            "n_points = {n_points} must be at least 2"
        )));
    }
    let step = (t_max - t_min) / (n_points - 1) as f64;
    (0..n_points)
        .map(|i| {
            let t = if i + 1 == n_points {
                t_max
            } else {
                t_min + step * i as f64
            };
            let policy = Policy::new(t, g)?;
            Ok(LafferPoint {
                t,
                revenue: revenue(model, &policy, alpha),
                report: implied_report(model, &policy, alpha),
            })
        })
        .collect()
}
