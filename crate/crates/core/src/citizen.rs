//! Citizen side: payoffs, Homo Moralis utility and the optimal income report.
//!
//! Concealment costs are quadratic, `c * C(d)` with `C(d) = d^2 / 2` and
//! `d = report - w`. Under that cost the citizen's problem is a concave
//! quadratic in the report, so the first-order condition gives the maximizer
//! directly; the only corner is the non-negativity constraint on the report.

use serde::Serialize;

use crate::model::{Policy, ValidatedModel};

/// Optimal report together with the quantities derived from it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReportOutcome {
    /// Reported income, clamped at zero.
    pub report: f64,
    /// Whether the unconstrained solution was already non-negative.
    pub interior: bool,
    /// `report - w`.
    pub deviation: f64,
    /// Post-tax, pre-transfer income `z(report)`.
    pub net_income: f64,
    /// `c * C(report - w)`.
    pub concealment_cost: f64,
}

/// Per-capita aggregates if every citizen filed the same report.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Universalized {
    pub tax_revenue: f64,
    pub public_good: f64,
    pub transfers: f64,
    pub net_income: f64,
}

/// Aggregates a citizen takes as given in the selfish part of the utility.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize)]
pub struct Ambient {
    pub public_good: f64,
    pub transfers: f64,
}

impl Ambient {
    /// Aggregates when every citizen files [`optimal_report`].
    pub fn fixed_point(model: &ValidatedModel, policy: &Policy, alpha: f64) -> Self {
        let report = optimal_report(model, policy, alpha).report;
        let u = universalized_components(report, policy, model);
        Ambient {
            public_good: u.public_good,
            transfers: u.transfers,
        }
    }
}

/// `c * d^2 / 2`.
pub fn concealment_cost(c: f64, deviation: f64) -> f64 {
    0.5 * c * deviation * deviation
}

/// `z(report) = w - t * report - c * C(report - w)`.
pub fn net_income(report: f64, policy: &Policy, model: &ValidatedModel) -> f64 {
    model.w() - policy.t() * report - concealment_cost(model.c(), report - model.w())
}

/// The report maximizing Homo Moralis utility:
/// `max(0, w + (t / c) * (kappa * phi(g, alpha, sigma) - 1))`.
///
/// `alpha` is whatever valuation the citizen uses: the common `alpha`,
/// the citizens' `alpha_c`, or a posterior mean in the signaling game.
pub fn optimal_report(model: &ValidatedModel, policy: &Policy, alpha: f64) -> ReportOutcome {
    let phi = model.phi(policy.g(), alpha);
    let unclamped = model.w() + policy.t() / model.c() * (model.kappa() * phi - 1.0);
    let interior = unclamped >= 0.0;
    let report = unclamped.max(0.0);
    let deviation = report - model.w();
    ReportOutcome {
        report,
        interior,
        deviation,
        net_income: net_income(report, policy, model),
        concealment_cost: concealment_cost(model.c(), deviation),
    }
}

pub fn universalized_components(
    report: f64,
    policy: &Policy,
    model: &ValidatedModel,
) -> Universalized {
    let tax_revenue = policy.t() * report;
    Universalized {
        tax_revenue,
        public_good: policy.g() * tax_revenue,
        transfers: model.s() * (1.0 - policy.g()) * tax_revenue,
        net_income: net_income(report, policy, model),
    }
}

/// Homo Moralis utility of filing `report`:
/// `(1 - kappa) * pi(ambient G, ambient b + z) + kappa * pi(G^M, b^M + z^M)`
/// with material payoff `pi(G, y) = alpha * G + y`.
pub fn hm_utility(
    report: f64,
    model: &ValidatedModel,
    policy: &Policy,
    alpha: f64,
    ambient: Ambient,
) -> f64 {
    let kappa = model.kappa();
    let z = net_income(report, policy, model);
    let selfish = alpha * ambient.public_good + ambient.transfers + z;
    let u = universalized_components(report, policy, model);
    let universal = alpha * u.public_good + u.transfers + u.net_income;
    (1.0 - kappa) * selfish + kappa * universal
}
