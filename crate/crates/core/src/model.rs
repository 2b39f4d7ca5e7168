//! Economy primitives and their feasibility restrictions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The elite's effective share of residual revenue, `1 / (1 + sigma)`.
///
/// Accepts the closed interval `[0, 1]` so that the reference values
/// `theta(0) = 1` and `theta(1) = 1/2` can be checked; models themselves
/// require `sigma` in the open interval.
pub fn theta(sigma: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&sigma) {
        return Err(Error::domain(format!("sigma = {sigma} outside [0, 1]")));
    }
    Ok(1.0 / (1.0 + sigma))
}

/// Effective moral return to reporting: `g * alpha + (1 - g) * sigma * theta(sigma)`.
pub fn phi(g: f64, alpha: f64, sigma: f64) -> Result<f64> {
    check_share(g)?;
    check_positive("alpha", alpha)?;
    check_sigma(sigma)?;
    Ok(moral_return(g, alpha, sigma * theta(sigma)?))
}

#[inline]
pub(crate) fn moral_return(g: f64, alpha: f64, s: f64) -> f64 {
    g * alpha + (1.0 - g) * s
}

fn check_positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{name} = {x} must be positive and finite"
        )))
    }
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma < 1.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("sigma = {sigma} outside (0, 1)")))
    }
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

/// Raw economy primitives. Nothing is checked until [`validate`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Income level.
    pub w: f64,
    /// Enforcement intensity.
    pub c: f64,
    /// Institutional strength.
    pub sigma: f64,
    /// Degree of morality.
    pub kappa: f64,
}

impl ModelParams {
    pub fn new(w: f64, c: f64, sigma: f64, kappa: f64) -> Self {
        ModelParams { w, c, sigma, kappa }
    }
}

/// How citizens and the elite value public spending.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ValueConfig {
    /// Citizens and elite share the valuation `alpha`.
    Aligned { alpha: f64 },
    /// Elite valuation `alpha_e`, citizen valuation `alpha_c`.
    Unaligned { alpha_e: f64, alpha_c: f64 },
    /// Privately known state: `alpha_l` or `alpha_h`, with `rho = Pr(alpha_h)`.
    TwoState {
        alpha_l: f64,
        alpha_h: f64,
        rho: f64,
    },
}

impl ValueConfig {
    /// The valuation that bounds morality from above (`kappa < 1 / alpha`).
    pub fn relevant_alpha(&self) -> f64 {
        match *self {
            ValueConfig::Aligned { alpha } => alpha,
            ValueConfig::Unaligned { alpha_c, .. } => alpha_c,
            ValueConfig::TwoState { alpha_h, .. } => alpha_h,
        }
    }

    fn check(&self) -> Result<()> {
        match *self {
            ValueConfig::Aligned { alpha } => check_positive("alpha", alpha),
            ValueConfig::Unaligned { alpha_e, alpha_c } => {
                check_positive("alpha_e", alpha_e)?;
                check_positive("alpha_c", alpha_c)
            }
            ValueConfig::TwoState {
                alpha_l,
                alpha_h,
                rho,
            } => {
                check_positive("alpha_l", alpha_l)?;
                check_positive("alpha_h", alpha_h)?;
                if alpha_l >= alpha_h {
                    return Err(Error::domain(format!(
                        "alpha_l = {alpha_l} must be below alpha_h = {alpha_h}"
                    )));
                }
                if !(0.0..=1.0).contains(&rho) {
                    return Err(Error::domain(format!("prior rho = {rho} outside [0, 1]")));
                }
                Ok(())
            }
        }
    }
}

/// An economy whose primitives passed [`validate`], with `theta` and `s` cached.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidatedModel {
    params: ModelParams,
    values: ValueConfig,
    theta: f64,
    s: f64,
}

/// Checks every domain restriction and the no-over-compliance bound.
///
/// Static configurations (aligned and unaligned) keep morality in `[0, 1)`;
/// the two-state configuration of the signaling game only bounds it by
/// `1 / alpha_h`.
pub fn validate(params: ModelParams, values: ValueConfig) -> Result<ValidatedModel> {
    let ModelParams { w, c, sigma, kappa } = params;
    check_positive("w", w)?;
    check_positive("c", c)?;
    check_sigma(sigma)?;
    if !(kappa.is_finite() && kappa >= 0.0) {
        return Err(Error::domain(format!(
            "kappa = {kappa} must be non-negative"
        )));
    }
    values.check()?;
    if !matches!(values, ValueConfig::TwoState { .. }) && kappa >= 1.0 {
        return Err(Error::domain(format!("kappa = {kappa} outside [0, 1)")));
    }
    let bound = 1.0 / values.relevant_alpha();
    if kappa >= bound {
        return Err(Error::KappaInfeasible { kappa, bound });
    }
    let theta = 1.0 / (1.0 + sigma);
    Ok(ValidatedModel {
        params,
        values,
        theta,
        s: sigma * theta,
    })
}

impl ValidatedModel {
    pub fn params(&self) -> &ModelParams {
        &self.params
    }

    pub fn values(&self) -> &ValueConfig {
        &self.values
    }

    pub fn w(&self) -> f64 {
        self.params.w
    }

    pub fn c(&self) -> f64 {
        self.params.c
    }

    pub fn sigma(&self) -> f64 {
        self.params.sigma
    }

    pub fn kappa(&self) -> f64 {
        self.params.kappa
    }

    /// `theta(sigma)`, the elite's residual share.
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// `sigma * theta(sigma)`, the citizens' matching share of rents.
    pub fn s(&self) -> f64 {
        self.s
    }

    /// `phi(g, alpha, sigma)` using the cached `s`.
    pub fn phi(&self, g: f64, alpha: f64) -> f64 {
        moral_return(g, alpha, self.s)
    }

    /// Same economy with a different degree of morality, re-validated.
    pub fn with_kappa(&self, kappa: f64) -> Result<Self> {
        validate(
            ModelParams {
                kappa,
                ..self.params
            },
            self.values,
        )
    }

    /// Same economy with a different value configuration, re-validated.
    pub fn with_values(&self, values: ValueConfig) -> Result<Self> {
        validate(self.params, values)
    }

    /// Fails with `PhiInfeasible` unless `kappa * phi < 1`.
    pub(crate) fn require_compliance_bound(&self, phi: f64) -> Result<()> {
        let product = self.kappa() * phi;
        if product < 1.0 {
            Ok(())
        } else {
            Err(Error::PhiInfeasible {
                kappa: self.kappa(),
                phi,
                product,
            })
        }
    }
}

/// A tax rate and the share of revenue spent on the public good.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Policy {
    t: f64,
    g: f64,
}

impl Policy {
    pub fn new(t: f64, g: f64) -> Result<Self> {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Error::domain(format!(
                "tax rate t = {t} must be non-negative"
            )));
        }
        check_share(g)?;
        Ok(Policy { t, g })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn g(&self) -> f64 {
        self.g
    }
}
