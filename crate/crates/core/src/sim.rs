//! Period-by-period play of the signaling game.
//!
//! Each period the elite takes its equilibrium action for the realized state,
//! citizens update to the strategy-consistent posterior, the rate is set at the
//! Laffer peak for that posterior and the resulting tax base is recorded.
//! Play is myopic: the continuation value does not depend on today's action.
//!
//! The valuation is fixed in the base game. A scenario may add a one-time
//! switch from the low to the high state at `shock_period`; trajectories built
//! that way are marked with `extension = true`.

use serde::Serialize;

use crate::elite::Corner;
use crate::error::{Error, Result};
use crate::fiscal::{implied_report, laffer_peak_rate, laffer_peak_revenue};
use crate::model::{Policy, ValidatedModel, ValueConfig};
use crate::signaling::{classify_model, posterior, EquilibriumTag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum State {
    Low,
    High,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scenario {
    model: ValidatedModel,
    alpha_l: f64,
    alpha_h: f64,
    rho: f64,
    horizon: usize,
    shock_period: Option<usize>,
    initial_state: State,
}

impl Scenario {
    /// `model` must carry a two-state valuation. A shock moves the state from
    /// `Low` to `High`, so it requires `initial_state = Low` and
    /// `shock_period < horizon`.
    pub fn new(
        model: ValidatedModel,
        horizon: usize,
        shock_period: Option<usize>,
        initial_state: State,
    ) -> Result<Self> {
        let ValueConfig::TwoState {
            alpha_l,
            alpha_h,
            rho,
        } = *model.values()
        else {
            return Err(Error::InfeasibleScenario(
                "simulation needs a two-state valuation".into(),
            ));
        };
        if horizon == 0 {
            return Err(Error::InfeasibleScenario(
                "horizon must be at least 1".into(),
            ));
        }
        if let Some(tau) = shock_period {
            if tau >= horizon {
                return Err(Error::InfeasibleScenario(format!(
                    "shock period {tau} must be below the horizon {horizon}"
                )));
            }
            if initial_state == State::High {
                return Err(Error::InfeasibleScenario(
                    "a shock needs the low initial state".into(),
                ));
            }
        }
        Ok(Scenario {
            model,
            alpha_l,
            alpha_h,
            rho,
            horizon,
            shock_period,
            initial_state,
        })
    }

    pub fn model(&self) -> &ValidatedModel {
        &self.model
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn shock_period(&self) -> Option<usize> {
        self.shock_period
    }

    pub fn state_at(&self, period: usize) -> State {
        match self.shock_period {
            Some(tau) if period >= tau => State::High,
            _ => self.initial_state,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Record {
    pub period: usize,
    pub realized_alpha: f64,
    pub g: Corner,
    pub posterior: f64,
    pub tax_rate: f64,
    pub report: f64,
    pub tax_base: f64,
    pub tag: EquilibriumTag,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Trajectory {
    pub tag: EquilibriumTag,
    /// The path includes an exogenous state switch not present in the base game.
    pub extension: bool,
    pub records: Vec<Record>,
}

pub fn run_timeline(scenario: &Scenario) -> Result<Trajectory> {
    let model = &scenario.model;
    let class = classify_model(model)?;
    let strategy = class.tag.strategy().ok_or(Error::NoEquilibrium)?;
    let records = (0..scenario.horizon)
        .map(|period| {
            let high = scenario.state_at(period) == State::High;
            let g = class.tag.action(high).ok_or(Error::NoEquilibrium)?;
            let p = posterior(
                strategy,
                g,
                scenario.alpha_l,
                scenario.alpha_h,
                scenario.rho,
            );
            let tax_rate = laffer_peak_rate(model, g.share(), p)?;
            let tax_base = laffer_peak_revenue(model, g.share(), p)?;
            let report = implied_report(model, &Policy::new(tax_rate, g.share())?, p);
            Ok(Record {
                period,
                realized_alpha: if high {
                    scenario.alpha_h
                } else {
                    scenario.alpha_l
                },
                g,
                posterior: p,
                tax_rate,
                report,
                tax_base,
                tag: class.tag,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Trajectory {
        tag: class.tag,
        extension: scenario.shock_period.is_some(),
        records,
    })
}

/// `tax_base[period] / tax_base[period - 1]`.
pub fn trajectory_jump(traj: &Trajectory, period: usize) -> Result<f64> {
    let len = traj.records.len();
    if period == 0 || period >= len {
        return Err(Error::IndexOutOfRange { index: period, len });
    }
    Ok(traj.records[period].tax_base / traj.records[period - 1].tax_base)
}
