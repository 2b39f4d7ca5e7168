//! Solvers for a tax-compliance economy in which citizens hold Homo Moralis
//! preferences and a selfish elite chooses between public goods and rents.
//!
//! The crate is organised bottom-up:
//!
//! * [`model`]: parameter containers, feasibility checks, `theta` and `phi`.
//! * [`citizen`]: the citizen's utility and optimal income report.
//! * [`fiscal`]: Laffer curves and revenue-maximizing taxation.
//! * [`elite`]: the static allocation problem and its morality thresholds.
//! * [`signaling`]: the two-type signaling game and its equilibrium classifier.
//! * [`sim`]: a period-by-period timeline of the dynamic game.
//! * [`oracle`]: brute-force maximizers and incentive checks that verify the
//!   closed forms without reusing them.

pub mod citizen;
pub mod elite;
mod error;
pub mod fiscal;
pub mod model;
pub mod oracle;
pub mod signaling;
pub mod sim;

pub use citizen::{
    hm_utility, optimal_report, universalized_components, ReportOutcome, Universalized,
};
pub use elite::{AllocationDecision, Corner, StaticRegion};
pub use error::{Error, Result};
pub use fiscal::LafferPoint;
pub use model::{phi, theta, validate, ModelParams, Policy, ValidatedModel, ValueConfig};
pub use oracle::{GridSpec, OracleReport};
pub use signaling::{EquilibriumClass, EquilibriumTag, Regime, Strategy, ThresholdSet};
pub use sim::{Scenario, State, Trajectory};
