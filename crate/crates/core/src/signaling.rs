//! The two-type signaling game.
//!
//! The elite privately knows whether public spending is worth `alpha_l` or
//! `alpha_h` and picks a corner allocation; citizens observe it, update their
//! belief about `alpha` and comply accordingly. Because compliance under
//! provision depends on the believed valuation `p`, the elite's payoff is
//! `T(g | p) * [alpha g + theta (1 - g)]` and the relevant object is the gain
//! from provision
//!
//! ```text
//! Delta(alpha | p) = (w c / 4) * [alpha / (1 - kappa p) - theta / (1 - kappa s)]
//! ```
//!
//! Off-path beliefs are fixed: an unexpected `g = 1` is attributed to the
//! high type, an unexpected `g = 0` to the low type.
//!
//! Two orderings are supported, both with `alpha_l < sigma theta < alpha_h`:
//! the weak-high regime (`alpha_h <= theta`), where provision needs moral
//! support, and the strong-high regime (`alpha_h > theta`).

use serde::{Deserialize, Serialize};

use crate::elite::Corner;
use crate::error::{Error, Result};
use crate::fiscal::laffer_peak_revenue;
use crate::model::{theta, ValidatedModel, ValueConfig};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Regime {
    WeakHigh,
    StrongHigh,
}

/// Citizens' conjecture about the elite's strategy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    Separating,
    PoolingRents,
    PoolingProvision,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EquilibriumTag {
    PoolingRents,
    Separation,
    PoolingProvision,
    NoPureEquilibrium,
}

impl EquilibriumTag {
    pub fn as_str(self) -> &'static str {
        match self {
            EquilibriumTag::PoolingRents => "pooling_rents",
            EquilibriumTag::Separation => "separation",
            EquilibriumTag::PoolingProvision => "pooling_provision",
            EquilibriumTag::NoPureEquilibrium => "no_pure_equilibrium",
        }
    }

    pub fn strategy(self) -> Option<Strategy> {
        match self {
            EquilibriumTag::PoolingRents => Some(Strategy::PoolingRents),
            EquilibriumTag::Separation => Some(Strategy::Separating),
            EquilibriumTag::PoolingProvision => Some(Strategy::PoolingProvision),
            EquilibriumTag::NoPureEquilibrium => None,
        }
    }

    /// Action of a given type under the tag's strategy profile.
    pub fn action(self, high: bool) -> Option<Corner> {
        match self.strategy()? {
            Strategy::Separating => Some(if high {
                Corner::Provision
            } else {
                Corner::Rents
            }),
            Strategy::PoolingRents => Some(Corner::Rents),
            Strategy::PoolingProvision => Some(Corner::Provision),
        }
    }
}

/// Prior and the posterior mean citizens hold after observing an allocation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Beliefs {
    pub rho: f64,
    pub posterior_mean: f64,
}

impl Beliefs {
    pub fn after(
        strategy: Strategy,
        observed: Corner,
        alpha_l: f64,
        alpha_h: f64,
        rho: f64,
    ) -> Self {
        Beliefs {
            rho,
            posterior_mean: posterior(strategy, observed, alpha_l, alpha_h, rho),
        }
    }
}

/// `rho alpha_h + (1 - rho) alpha_l`.
pub fn prior_mean(alpha_l: f64, alpha_h: f64, rho: f64) -> f64 {
    rho * alpha_h + (1.0 - rho) * alpha_l
}

/// Posterior mean of `alpha` after observing `observed` under `strategy`.
pub fn posterior(
    strategy: Strategy,
    observed: Corner,
    alpha_l: f64,
    alpha_h: f64,
    rho: f64,
) -> f64 {
    match (strategy, observed) {
        (Strategy::Separating, Corner::Provision) => alpha_h,
        (Strategy::Separating, Corner::Rents) => alpha_l,
        (Strategy::PoolingRents, Corner::Rents) => prior_mean(alpha_l, alpha_h, rho),
        (Strategy::PoolingRents, Corner::Provision) => alpha_h,
        (Strategy::PoolingProvision, Corner::Provision) => prior_mean(alpha_l, alpha_h, rho),
        (Strategy::PoolingProvision, Corner::Rents) => alpha_l,
    }
}

/// Morality thresholds of the signaling game. Absent entries do not apply to
/// the regime (or, for `kappa_h_min`, make pooling at provision infeasible).
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct ThresholdSet {
    /// High type provides under separation iff `kappa >= kappa_min_h` (weak-high only).
    pub kappa_min_h: Option<f64>,
    /// Low type stays with rents under separation iff `kappa < kappa_max_l`.
    pub kappa_max_l: Option<f64>,
    /// Low type provides under pooling iff `kappa >= kappa_pool`.
    pub kappa_pool: Option<f64>,
    /// High type provides under pooling iff `kappa >= kappa_h_min` (weak-high).
    pub kappa_h_min: Option<f64>,
    /// High type provides under pooling iff `kappa <= kappa_h_max` (strong-high,
    /// only when `alpha_h sigma > alpha_bar`; otherwise unbounded).
    pub kappa_h_max: Option<f64>,
    pub alpha_bar: Option<f64>,
}

impl ThresholdSet {
    fn merge(self, other: ThresholdSet) -> ThresholdSet {
        ThresholdSet {
            kappa_min_h: self.kappa_min_h.or(other.kappa_min_h),
            kappa_max_l: self.kappa_max_l.or(other.kappa_max_l),
            kappa_pool: self.kappa_pool.or(other.kappa_pool),
            kappa_h_min: self.kappa_h_min.or(other.kappa_h_min),
            kappa_h_max: self.kappa_h_max.or(other.kappa_h_max),
            alpha_bar: self.alpha_bar.or(other.alpha_bar),
        }
    }
}

/// Signs of the provision gain under the relevant beliefs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IcDiagnostics {
    /// `Delta(alpha_h | alpha_h)`: high type, provision believed high.
    pub high_separating: f64,
    /// `Delta(alpha_l | alpha_h)`: low type mimicking provision.
    pub low_deviation: f64,
    /// `Delta(alpha_h | alpha_bar)`.
    pub high_pooling: f64,
    /// `Delta(alpha_l | alpha_bar)`.
    pub low_pooling: f64,
    /// Tag rebuilt from these signs alone.
    pub ic_tag: EquilibriumTag,
    /// Threshold classification and sign reconstruction agree.
    pub consistent: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquilibriumClass {
    pub tag: EquilibriumTag,
    pub regime: Regime,
    pub kappa: f64,
    pub thresholds: ThresholdSet,
    /// On-path tax base after observing rents; `None` if rents are off path.
    pub tax_base_g0: Option<f64>,
    /// On-path tax base after observing provision; `None` if provision is off path.
    pub tax_base_g1: Option<f64>,
    pub diagnostics: IcDiagnostics,
}

fn sigma_parts(sigma: f64) -> Result<(f64, f64)> {
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(Error::domain(format!("sigma = {sigma} outside (0, 1)")));
    }
    let th = theta(sigma)?;
    Ok((th, sigma * th))
}

/// Regime implied by the ordering of `alpha_l`, `sigma theta`, `theta`, `alpha_h`.
pub fn regime(alpha_l: f64, alpha_h: f64, sigma: f64) -> Result<Regime> {
    let (th, s) = sigma_parts(sigma)?;
    if !(alpha_l > 0.0 && alpha_l < s && s < alpha_h && alpha_h.is_finite()) {
        return Err(Error::region(format!(
            "two-state game needs 0 < alpha_l = {alpha_l} < sigma*theta = {s} < alpha_h = {alpha_h}"
        )));
    }
    Ok(if alpha_h <= th {
        Regime::WeakHigh
    } else {
        Regime::StrongHigh
    })
}

/// `(theta - alpha_l) / (theta alpha_h - alpha_l sigma theta)`, valid in both regimes.
pub fn separation_ceiling(alpha_l: f64, alpha_h: f64, sigma: f64) -> Result<f64> {
    regime(alpha_l, alpha_h, sigma)?;
    let (th, s) = sigma_parts(sigma)?;
    Ok((th - alpha_l) / (th * alpha_h - alpha_l * s))
}

/// `kappa_min_h` and `kappa_max_l` for the weak-high regime.
pub fn weak_high_thresholds(alpha_l: f64, alpha_h: f64, sigma: f64) -> Result<ThresholdSet> {
    if regime(alpha_l, alpha_h, sigma)? != Regime::WeakHigh {
        return Err(Error::region(format!(
            "alpha_h = {alpha_h} exceeds theta; weak-high thresholds do not apply"
        )));
    }
    let (th, _) = sigma_parts(sigma)?;
    Ok(ThresholdSet {
        kappa_min_h: Some((th - alpha_h) / (th * alpha_h * (1.0 - sigma))),
        kappa_max_l: Some(separation_ceiling(alpha_l, alpha_h, sigma)?),
        ..ThresholdSet::default()
    })
}

/// Thresholds governing pooling at provision with on-path belief `alpha_bar`.
pub fn pooling_thresholds(
    alpha_l: f64,
    alpha_h: f64,
    rho: f64,
    sigma: f64,
) -> Result<ThresholdSet> {
    let regime = regime(alpha_l, alpha_h, sigma)?;
    check_rho(rho)?;
    let (th, _) = sigma_parts(sigma)?;
    let alpha_bar = prior_mean(alpha_l, alpha_h, rho);
    let kappa_pool = (th - alpha_l) / (th * (alpha_bar - alpha_l * sigma));
    // Sign of (alpha_h sigma - alpha_bar) decides whether the high type's pooling
    // constraint is a lower bound, an upper bound, or vacuous.
    let high_excess = alpha_h * sigma - alpha_bar;
    let (kappa_h_min, kappa_h_max) = match regime {
        Regime::WeakHigh if high_excess < 0.0 => (
            Some((th - alpha_h) / (th * (alpha_bar - alpha_h * sigma))),
            None,
        ),
        Regime::WeakHigh if high_excess == 0.0 && alpha_h == th => (Some(0.0), None),
        Regime::WeakHigh => (None, None),
        Regime::StrongHigh if high_excess > 0.0 => {
            (None, Some((alpha_h - th) / (th * high_excess)))
        }
        Regime::StrongHigh => (None, None),
    };
    Ok(ThresholdSet {
        kappa_pool: Some(kappa_pool),
        kappa_h_min,
        kappa_h_max,
        alpha_bar: Some(alpha_bar),
        ..ThresholdSet::default()
    })
}

/// Every threshold relevant to the regime.
pub fn threshold_set(alpha_l: f64, alpha_h: f64, rho: f64, sigma: f64) -> Result<ThresholdSet> {
    let separation = match regime(alpha_l, alpha_h, sigma)? {
        Regime::WeakHigh => weak_high_thresholds(alpha_l, alpha_h, sigma)?,
        Regime::StrongHigh => ThresholdSet {
            kappa_max_l: Some(separation_ceiling(alpha_l, alpha_h, sigma)?),
            ..ThresholdSet::default()
        },
    };
    Ok(separation.merge(pooling_thresholds(alpha_l, alpha_h, rho, sigma)?))
}

fn check_rho(rho: f64) -> Result<()> {
    if (0.0..=1.0).contains(&rho) {
        Ok(())
    } else {
        Err(Error::domain(format!("prior rho = {rho} outside [0, 1]")))
    }
}

/// Tax base when citizens see allocation `g` and believe the valuation is `p`.
pub fn belief_tax_base(model: &ValidatedModel, g: Corner, p: f64) -> Result<f64> {
    laffer_peak_revenue(model, g.share(), p)
}

/// Elite payoff `T(g | p) * [alpha g + theta (1 - g)]`.
pub fn elite_payoff(model: &ValidatedModel, alpha: f64, g: Corner, p: f64) -> Result<f64> {
    let weight = match g {
        Corner::Provision => alpha,
        Corner::Rents => model.theta(),
    };
    Ok(belief_tax_base(model, g, p)? * weight)
}

/// `Delta(alpha | p)`: payoff gain from provision for a type-`alpha` elite
/// when provision is read as valuation `p`.
pub fn provision_gain(model: &ValidatedModel, alpha: f64, p: f64) -> Result<f64> {
    model.require_compliance_bound(p)?;
    let k = model.kappa();
    let scale = model.w() * model.c() / 4.0;
    Ok(scale * (alpha / (1.0 - k * p) - model.theta() / (1.0 - k * model.s())))
}

/// Same-period tax-base multiplier when credible provision reveals `alpha_h`:
/// `(1 - kappa sigma theta) / (1 - kappa alpha_h)`.
pub fn jump_factor(model: &ValidatedModel, alpha_h: f64) -> Result<f64> {
    model.require_compliance_bound(alpha_h)?;
    let k = model.kappa();
    Ok((1.0 - k * model.s()) / (1.0 - k * alpha_h))
}

/// Incentive gains under the fixed belief rules.
fn gains(model: &ValidatedModel, alpha_l: f64, alpha_h: f64, alpha_bar: f64) -> Result<[f64; 4]> {
    Ok([
        provision_gain(model, alpha_h, alpha_h)?,
        provision_gain(model, alpha_l, alpha_h)?,
        provision_gain(model, alpha_h, alpha_bar)?,
        provision_gain(model, alpha_l, alpha_bar)?,
    ])
}

/// Rebuilds the equilibrium tag from incentive signs only.
///
/// Separation needs the high type to weakly prefer provision when believed
/// high and the low type to strictly prefer rents over mimicking. Pooling at
/// rents needs both types strictly unwilling to deviate to provision (read as
/// high). Pooling at provision needs both types weakly preferring provision at
/// the prior mean over rents.
pub fn tag_from_incentives(
    model: &ValidatedModel,
    alpha_l: f64,
    alpha_h: f64,
    rho: f64,
) -> Result<EquilibriumTag> {
    let [high_sep, low_dev, high_pool, low_pool] =
        gains(model, alpha_l, alpha_h, prior_mean(alpha_l, alpha_h, rho))?;
    Ok(tag_from_gains(high_sep, low_dev, high_pool, low_pool))
}

fn tag_from_gains(high_sep: f64, low_dev: f64, high_pool: f64, low_pool: f64) -> EquilibriumTag {
    if high_sep < 0.0 && low_dev < 0.0 {
        EquilibriumTag::PoolingRents
    } else if high_sep >= 0.0 && low_dev < 0.0 {
        EquilibriumTag::Separation
    } else if high_pool >= 0.0 && low_pool >= 0.0 {
        EquilibriumTag::PoolingProvision
    } else {
        EquilibriumTag::NoPureEquilibrium
    }
}

fn tag_from_thresholds(regime: Regime, kappa: f64, t: &ThresholdSet) -> EquilibriumTag {
    let kappa_max_l = t.kappa_max_l.unwrap_or(f64::INFINITY);
    let kappa_pool = t.kappa_pool.unwrap_or(f64::INFINITY);
    match regime {
        Regime::WeakHigh => {
            if kappa < t.kappa_min_h.unwrap_or(0.0) {
                EquilibriumTag::PoolingRents
            } else if kappa < kappa_max_l {
                EquilibriumTag::Separation
            } else if t.kappa_h_min.is_some_and(|h| kappa >= kappa_pool.max(h)) {
                EquilibriumTag::PoolingProvision
            } else {
                EquilibriumTag::NoPureEquilibrium
            }
        }
        Regime::StrongHigh => {
            if kappa < kappa_max_l {
                EquilibriumTag::Separation
            } else if kappa >= kappa_pool && t.kappa_h_max.is_none_or(|h| kappa <= h) {
                EquilibriumTag::PoolingProvision
            } else {
                EquilibriumTag::NoPureEquilibrium
            }
        }
    }
}

/// Classifies the pure-strategy equilibrium of the signaling game by the
/// morality thresholds, then re-derives it from incentive signs.
///
/// Only `w`, `c`, `sigma` and `kappa` are taken from `model`; the valuations
/// are explicit so that sweeps can vary them.
pub fn classify_equilibrium(
    model: &ValidatedModel,
    alpha_l: f64,
    alpha_h: f64,
    rho: f64,
) -> Result<EquilibriumClass> {
    check_rho(rho)?;
    let regime = regime(alpha_l, alpha_h, model.sigma())?;
    let kappa = model.kappa();
    if kappa >= 1.0 / alpha_h {
        return Err(Error::KappaInfeasible {
            kappa,
            bound: 1.0 / alpha_h,
        });
    }
    let thresholds = threshold_set(alpha_l, alpha_h, rho, model.sigma())?;
    let tag = tag_from_thresholds(regime, kappa, &thresholds);

    let alpha_bar = prior_mean(alpha_l, alpha_h, rho);
    let [high_separating, low_deviation, high_pooling, low_pooling] =
        gains(model, alpha_l, alpha_h, alpha_bar)?;
    let ic_tag = tag_from_gains(high_separating, low_deviation, high_pooling, low_pooling);

    let on_path = |g: Corner| -> Result<Option<f64>> {
        let strategy = match tag.strategy() {
            Some(s) => s,
            None => return Ok(None),
        };
        let played = tag.action(true) == Some(g) || tag.action(false) == Some(g);
        if !played {
            return Ok(None);
        }
        let p = posterior(strategy, g, alpha_l, alpha_h, rho);
        belief_tax_base(model, g, p).map(Some)
    };

    Ok(EquilibriumClass {
        tag,
        regime,
        kappa,
        thresholds,
        tax_base_g0: on_path(Corner::Rents)?,
        tax_base_g1: on_path(Corner::Provision)?,
        diagnostics: IcDiagnostics {
            high_separating,
            low_deviation,
            high_pooling,
            low_pooling,
            ic_tag,
            consistent: ic_tag == tag,
        },
    })
}

/// [`classify_equilibrium`] with valuations and prior read from a two-state model.
pub fn classify_model(model: &ValidatedModel) -> Result<EquilibriumClass> {
    match *model.values() {
        ValueConfig::TwoState {
            alpha_l,
            alpha_h,
            rho,
        } => classify_equilibrium(model, alpha_l, alpha_h, rho),
        other => Err(Error::region(format!(
            "signaling game needs a two-state valuation, got {other:?}"
        ))),
    }
}
