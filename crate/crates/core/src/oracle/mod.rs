//! Brute-force verification.
//!
//! Everything here recomputes its answer from primitive payoffs (citizen
//! utility, the revenue function, elite values) and generic numerical search.
//! None of it calls the closed-form peak rate, the aligned morality threshold
//! or the signaling threshold set, so agreement with those is meaningful.

mod optimize;
mod suite;

use serde::Serialize;

pub use optimize::{bisect, maximize};
pub use suite::agreement_suite;

use crate::citizen::{hm_utility, Ambient};
use crate::elite::Corner;
use crate::error::{Error, Result};
use crate::fiscal::revenue;
use crate::model::{Policy, ValidatedModel};
use crate::signaling::{elite_payoff, posterior, EquilibriumClass, EquilibriumTag, Strategy};

/// Search interval and accuracy of a numerical check.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GridSpec {
    pub lo: f64,
    pub hi: f64,
    pub step: f64,
    /// Golden-section (or bisection) iterations after the scan.
    pub iterations: u32,
    /// Largest `abs_err` counted as agreement.
    pub tolerance: f64,
}

impl GridSpec {
    pub const STEP: f64 = 1e-3;
    pub const ITERATIONS: u32 = 60;
    pub const TOLERANCE: f64 = 1e-6;
    /// Scans wider than this many points coarsen the step instead.
    pub const MAX_POINTS: f64 = 1e5;

    /// Default grid on `[lo, hi]`: step `1e-3`, coarsened to at most `1e5` points.
    pub fn covering(lo: f64, hi: f64) -> Self {
        let step = Self::STEP.max((hi - lo) / Self::MAX_POINTS);
        GridSpec {
            lo,
            hi,
            step,
            iterations: Self::ITERATIONS,
            tolerance: Self::TOLERANCE,
        }
    }

    /// `[0, 2w]`, where every report of interest lies.
    pub fn report(model: &ValidatedModel) -> Self {
        Self::covering(0.0, 2.0 * model.w())
    }

    /// `[0, c / (1 - kappa phi)]`, from zero to the second revenue root.
    pub fn peak(model: &ValidatedModel, g: f64, alpha: f64) -> Result<Self> {
        Ok(Self::covering(0.0, revenue_root(model, g, alpha)?))
    }

    pub fn with_tolerance(self, tolerance: f64) -> Self {
        GridSpec { tolerance, ..self }
    }

    /// Number of scanned points, including both ends.
    pub fn points(&self) -> Result<usize> {
        if !(self.lo.is_finite() && self.hi.is_finite() && self.lo < self.hi) {
            return Err(Error::GridTooCoarse(format!(
                "empty interval [{}, {}]",
                self.lo, self.hi
            )));
        }
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::GridTooCoarse(format!(
                "step {} must be positive",
                self.step
            )));
        }
        let n = ((self.hi - self.lo) / self.step).ceil() as usize + 1;
        if n < 3 {
            return Err(Error::GridTooCoarse(format!(
                "step {} leaves fewer than 3 points on [{}, {}]",
                self.step, self.lo, self.hi
            )));
        }
        Ok(n)
    }

    fn covers(&self, lo: f64, hi: f64) -> bool {
        self.lo <= lo && self.hi >= hi
    }
}

/// One closed form checked against its oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleReport {
    pub target: String,
    pub closed_form: f64,
    pub oracle_value: f64,
    pub abs_err: f64,
    pub grid: GridSpec,
    /// For incentive rows: whether the oracle's margin has the required sign.
    pub ic_holds: Option<bool>,
    pub passed: bool,
}

impl OracleReport {
    pub fn new(
        target: impl Into<String>,
        closed_form: f64,
        oracle_value: f64,
        grid: GridSpec,
    ) -> Self {
        let abs_err = (closed_form - oracle_value).abs();
        OracleReport {
            target: target.into(),
            closed_form,
            oracle_value,
            abs_err,
            grid,
            ic_holds: None,
            passed: abs_err <= grid.tolerance,
        }
    }

    pub fn with_ic(mut self, holds: bool) -> Self {
        self.ic_holds = Some(holds);
        self.passed = self.abs_err <= self.grid.tolerance && holds;
        self
    }
}

/// Second root of the revenue parabola from its coefficients.
fn revenue_root(model: &ValidatedModel, g: f64, alpha: f64) -> Result<f64> {
    let kphi = model.kappa() * model.phi(g, alpha);
    if kphi >= 1.0 {
        return Err(Error::PhiInfeasible {
            kappa: model.kappa(),
            phi: model.phi(g, alpha),
            product: kphi,
        });
    }
    Ok(model.c() / (1.0 - kphi))
}

/// Report maximizing Homo Moralis utility, found numerically.
pub fn brute_force_report(
    model: &ValidatedModel,
    policy: &Policy,
    alpha: f64,
    grid: &GridSpec,
) -> Result<f64> {
    if !grid.covers(0.0, 2.0 * model.w()) {
        return Err(Error::GridTooCoarse(format!(
            "report grid must cover [0, {}]",
            2.0 * model.w()
        )));
    }
    maximize(
        |x| hm_utility(x, model, policy, alpha, Ambient::default()),
        grid,
    )
    .map(|(x, _)| x)
}

/// Revenue-maximizing rate and the maximum revenue, found numerically.
pub fn brute_force_peak(
    model: &ValidatedModel,
    g: f64,
    alpha: f64,
    grid: &GridSpec,
) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&g) {
        return Err(Error::domain(format!(
            "allocation share g = {g} outside [0, 1]"
        )));
    }
    let root = revenue_root(model, g, alpha)?;
    if !grid.covers(0.0, root) {
        return Err(Error::GridTooCoarse(format!(
            "rate grid must cover [0, {root}]"
        )));
    }
    maximize(
        |t| Policy::new(t, g).map_or(f64::NAN, |p| revenue(model, &p, alpha)),
        grid,
    )
}

/// Numerical maximum revenue at a corner with default grid.
fn brute_base(model: &ValidatedModel, g: Corner, alpha: f64) -> Result<f64> {
    let grid = GridSpec::peak(model, g.share(), alpha)?;
    brute_force_peak(model, g.share(), alpha, &grid).map(|(_, top)| top)
}

/// Elite values `(V(0), V(1))` from numerically maximized tax bases.
pub fn brute_force_values(
    model: &ValidatedModel,
    alpha_e: f64,
    alpha_c: f64,
) -> Result<(f64, f64)> {
    let v0 = brute_base(model, Corner::Rents, alpha_c)? * model.theta();
    let v1 = brute_base(model, Corner::Provision, alpha_c)? * alpha_e;
    Ok((v0, v1))
}

/// Better corner by direct comparison of numerically computed values;
/// near-ties go to provision.
pub fn brute_force_allocation(
    model: &ValidatedModel,
    alpha_e: f64,
    alpha_c: f64,
) -> Result<Corner> {
    let (v0, v1) = brute_force_values(model, alpha_e, alpha_c)?;
    Ok(if v1 >= v0 - 1e-12 * v0.abs().max(1.0) {
        Corner::Provision
    } else {
        Corner::Rents
    })
}

/// Morality at which the elite's corner values cross, found by bisection on
/// `V(1) - V(0)` over `[kappa_lo, kappa_hi]`.
pub fn brute_force_threshold(
    model: &ValidatedModel,
    alpha_e: f64,
    alpha_c: f64,
    kappa_lo: f64,
    kappa_hi: f64,
) -> Result<f64> {
    let gap = |k: f64| -> Result<f64> {
        let m = model.with_kappa(k)?;
        let (v0, v1) = brute_force_values(&m, alpha_e, alpha_c)?;
        Ok(v1 - v0)
    };
    bisect(
        gap,
        kappa_lo,
        kappa_hi,
        THRESHOLD_WIDTH,
        THRESHOLD_ITERATIONS,
    )
}

pub(crate) const THRESHOLD_WIDTH: f64 = 1e-13;
pub(crate) const THRESHOLD_ITERATIONS: u32 = 200;
pub(crate) const THRESHOLD_TOLERANCE: f64 = 1e-9;

fn strategy_name(s: Strategy) -> &'static str {
    match s {
        Strategy::Separating => "separation",
        Strategy::PoolingRents => "pooling_rents",
        Strategy::PoolingProvision => "pooling_provision",
    }
}

fn action(s: Strategy, high: bool) -> Corner {
    match s {
        Strategy::Separating if high => Corner::Provision,
        Strategy::Separating | Strategy::PoolingRents => Corner::Rents,
        Strategy::PoolingProvision => Corner::Provision,
    }
}

fn other(g: Corner) -> Corner {
    match g {
        Corner::Rents => Corner::Provision,
        Corner::Provision => Corner::Rents,
    }
}

/// One type's incentive check under a strategy profile.
struct TypeCheck {
    on_closed: f64,
    on_oracle: f64,
    dev_closed: f64,
    dev_oracle: f64,
    /// Types on rents must strictly prefer them; provision wins ties.
    strict: bool,
}

impl TypeCheck {
    fn margin(&self) -> (f64, f64) {
        (
            self.on_closed - self.dev_closed,
            self.on_oracle - self.dev_oracle,
        )
    }

    fn holds(&self) -> bool {
        let m = self.margin().1;
        if self.strict {
            m > 0.0
        } else {
            m >= 0.0
        }
    }
}

fn type_check(
    model: &ValidatedModel,
    strategy: Strategy,
    alpha: f64,
    high: bool,
    alpha_l: f64,
    alpha_h: f64,
    rho: f64,
) -> Result<TypeCheck> {
    let payoff = |g: Corner| -> Result<(f64, f64)> {
        let p = posterior(strategy, g, alpha_l, alpha_h, rho);
        let weight = match g {
            Corner::Provision => alpha,
            Corner::Rents => model.theta(),
        };
        Ok((
            elite_payoff(model, alpha, g, p)?,
            brute_base(model, g, p)? * weight,
        ))
    };
    let on = action(strategy, high);
    let (on_closed, on_oracle) = payoff(on)?;
    let (dev_closed, dev_oracle) = payoff(other(on))?;
    Ok(TypeCheck {
        on_closed,
        on_oracle,
        dev_closed,
        dev_oracle,
        strict: on == Corner::Rents,
    })
}

/// Checks every incentive constraint of `candidate`'s strategy profile using
/// tax bases maximized numerically.
///
/// Each type yields three rows: its on-path payoff, its best deviation payoff
/// and the margin between them; the margin row carries the sign requirement.
/// A `NoPureEquilibrium` candidate instead yields one row per pure profile,
/// passing when that profile is broken.
pub fn verify_pbe(
    candidate: &EquilibriumClass,
    model: &ValidatedModel,
    alpha_l: f64,
    alpha_h: f64,
    rho: f64,
) -> Result<Vec<OracleReport>> {
    let grid = GridSpec::peak(model, 1.0, alpha_h)?;
    let mut rows = Vec::new();
    match candidate.tag.strategy() {
        Some(strategy) => {
            let name = strategy_name(strategy);
            for (label, alpha, high) in [("low", alpha_l, false), ("high", alpha_h, true)] {
                let check = type_check(model, strategy, alpha, high, alpha_l, alpha_h, rho)?;
                let prefix = format!("pbe.{name}.{label}");
                rows.push(OracleReport::new(
                    format!("{prefix}.on_path"),
                    check.on_closed,
                    check.on_oracle,
                    grid,
                ));
                rows.push(OracleReport::new(
                    format!("{prefix}.deviation"),
                    check.dev_closed,
                    check.dev_oracle,
                    grid,
                ));
                let (mc, mo) = check.margin();
                rows.push(
                    OracleReport::new(format!("{prefix}.ic"), mc, mo, grid).with_ic(check.holds()),
                );
            }
        }
        None => {
            for strategy in [
                Strategy::Separating,
                Strategy::PoolingRents,
                Strategy::PoolingProvision,
            ] {
                let low = type_check(model, strategy, alpha_l, false, alpha_l, alpha_h, rho)?;
                let high = type_check(model, strategy, alpha_h, true, alpha_l, alpha_h, rho)?;
                let (lc, lo) = low.margin();
                let (hc, ho) = high.margin();
                let broken = !(low.holds() && high.holds());
                rows.push(
                    OracleReport::new(
                        format!(
                            "pbe.{}.excludes_{}",
                            EquilibriumTag::NoPureEquilibrium.as_str(),
                            strategy_name(strategy)
                        ),
                        lc.min(hc),
                        lo.min(ho),
                        grid,
                    )
                    .with_ic(broken),
                );
            }
        }
    }
    Ok(rows)
}
