use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain violation: {0}")]
    DomainViolation(String),

    /// Assumption 1 style feasibility: morality must stay below `1 / alpha`.
    #[error("kappa = {kappa} is infeasible: it must be below {bound}")]
    KappaInfeasible { kappa: f64, bound: f64 },

    #[error("kappa * phi = {product} must be below 1 (kappa = {kappa}, phi = {phi})")]
    PhiInfeasible { kappa: f64, phi: f64, product: f64 },

    #[error("parameters outside the region where this quantity is defined: {0}")]
    RegionMismatch(String),

    #[error("grid too coarse: {0}")]
    GridTooCoarse(String),

    #[error("no pure-strategy equilibrium exists for these parameters")]
    NoEquilibrium,

    #[error("infeasible scenario: {0}")]
    InfeasibleScenario(String),

    #[error("index {index} out of range (valid: 1..{len})")]
    IndexOutOfRange { index: usize, len: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::DomainViolation(msg.into())
    }

    pub(crate) fn region(msg: impl Into<String>) -> Self {
        Error::RegionMismatch(msg.into())
    }
}
