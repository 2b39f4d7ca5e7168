use serde_json::{json, Value};

use fiscap_core::elite::{equilibrium_tax_base, optimal_allocation, Corner};
use fiscap_core::fiscal::{laffer_curve, laffer_peak, laffer_peak_revenue, revenue_root};
use fiscap_core::oracle::agreement_suite;
use fiscap_core::signaling::{classify_model, jump_factor};
use fiscap_core::sim::run_timeline;
use fiscap_core::{
    optimal_report, validate, EquilibriumTag, ModelParams, Policy, Scenario, State, ValidatedModel,
    ValueConfig,
};

use crate::args::{ClassifyArgs, Command, Initial, LafferArgs, Params, VerifyArgs};
use crate::output::{Column, Output};
use crate::{sweep, CliError};

/// How a successful evaluation should end the process.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Status {
    Ok,
    /// A verification row failed.
    Failed,
    /// Strict classification found no pure-strategy equilibrium.
    NoPure,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Failed => 1,
            Status::NoPure => 2,
        }
    }
}

pub struct Outcome {
    pub output: Output,
    pub status: Status,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Outcome {
            output,
            status: Status::Ok,
        }
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing parameter --{flag}")))
}

fn model(p: &Params, values: ValueConfig) -> Result<ValidatedModel, CliError> {
    let params = ModelParams::new(
        p.w.unwrap_or(1.0),
        p.c.unwrap_or(1.0),
        need(p.sigma, "sigma")?,
        need(p.kappa, "kappa")?,
    );
    Ok(validate(params, values)?)
}

fn two_state(p: &Params) -> Result<ValueConfig, CliError> {
    Ok(ValueConfig::TwoState {
        alpha_l: need(p.alpha_l, "alpha-l")?,
        alpha_h: need(p.alpha_h, "alpha-h")?,
        rho: need(p.rho, "rho")?,
    })
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("library types serialize to JSON")
}

pub fn execute(command: &Command, p: &Params) -> Result<Outcome, CliError> {
    match command {
        Command::Report => report(p),
        Command::Laffer(args) => laffer(args, p),
        Command::Elite => elite(p),
        Command::Classify(args) => classify(args, p),
        Command::Jump => jump(p),
        Command::Simulate => simulate(p),
        Command::Verify(args) => verify(args),
        Command::Sweep(args) => sweep::run(args, p),
    }
}

fn report(p: &Params) -> Result<Outcome, CliError> {
    let alpha = need(p.alpha, "alpha")?;
    let m = model(p, ValueConfig::Aligned { alpha })?;
    let policy = Policy::new(need(p.t, "t")?, need(p.g, "g")?)?;
    let out = optimal_report(&m, &policy, alpha);
    let cols = [
        "report",
        "interior",
        "deviation",
        "net_income",
        "concealment_cost",
    ];
    Ok(Output::single(
        to_value(&out),
        cols.iter().map(|c| Column::plain(c)).collect(),
    )
    .into())
}

fn laffer(args: &LafferArgs, p: &Params) -> Result<Outcome, CliError> {
    let alpha = need(p.alpha, "alpha")?;
    let g = need(p.g, "g")?;
    let m = model(p, ValueConfig::Aligned { alpha })?;
    let cols = vec![
        Column::plain("t"),
        Column::plain("revenue"),
        Column::plain("report"),
    ];
    if args.peak {
        return Ok(Output::single(to_value(&laffer_peak(&m, g, alpha)?), cols).into());
    }
    let t_max = match args.t_max {
        Some(t) => t,
        None => revenue_root(&m, g, alpha)?,
    };
    let points = laffer_curve(&m, g, alpha, args.t_min.unwrap_or(0.0), t_max, args.points)?;
    Ok(Output::list(points.iter().map(to_value).collect(), cols).into())
}

fn elite(p: &Params) -> Result<Outcome, CliError> {
    let (values, alpha_e, alpha_c) = match (p.alpha_e, p.alpha_c, p.alpha) {
        (Some(e), Some(c), _) => (
            ValueConfig::Unaligned {
                alpha_e: e,
                alpha_c: c,
            },
            e,
            c,
        ),
        (None, None, Some(a)) => (ValueConfig::Aligned { alpha: a }, a, a),
        _ => {
            return Err(CliError::Usage(
                "elite needs --alpha, or both --alpha-e and --alpha-c".into(),
            ))
        }
    };
    let m = model(p, values)?;
    let decision = optimal_allocation(&m, alpha_e, alpha_c)?;
    let mut json = to_value(&decision);
    json["tax_base"] = json!(equilibrium_tax_base(&m, decision.g_star, alpha_c)?);
    let cols = [
        "g_star",
        "tie",
        "v0",
        "v1",
        "tax_base",
        "region",
        "threshold",
        "stated_g_star",
        "direction_conflict",
    ];
    Ok(Output::single(json, cols.iter().map(|c| Column::plain(c)).collect()).into())
}

pub fn classify_columns() -> Vec<Column> {
    let mut cols = vec![
        Column::plain("tag"),
        Column::plain("regime"),
        Column::plain("kappa"),
    ];
    for t in [
        "kappa_min_h",
        "kappa_max_l",
        "kappa_pool",
        "kappa_h_min",
        "kappa_h_max",
        "alpha_bar",
    ] {
        cols.push(Column::new(t, &format!("thresholds.{t}")));
    }
    cols.push(Column::plain("tax_base_g0"));
    cols.push(Column::plain("tax_base_g1"));
    cols.push(Column::new("consistent", "diagnostics.consistent"));
    cols
}

fn classify(args: &ClassifyArgs, p: &Params) -> Result<Outcome, CliError> {
    let m = model(p, two_state(p)?)?;
    let class = classify_model(&m)?;
    let status = if args.strict && class.tag == EquilibriumTag::NoPureEquilibrium {
        Status::NoPure
    } else {
        Status::Ok
    };
    Ok(Outcome {
        output: Output::single(to_value(&class), classify_columns()),
        status,
    })
}

/// Uses the two-state model when `--alpha-l` and `--rho` are given, otherwise
/// an aligned economy at `alpha_h` (which keeps `kappa` below 1).
fn jump(p: &Params) -> Result<Outcome, CliError> {
    let alpha_h = need(p.alpha_h, "alpha-h")?;
    let values = match (p.alpha_l, p.rho) {
        (Some(_), Some(_)) => two_state(p)?,
        _ => ValueConfig::Aligned { alpha: alpha_h },
    };
    let m = model(p, values)?;
    let json = json!({
        "jump_factor": jump_factor(&m, alpha_h)?,
        "tax_base_rents": laffer_peak_revenue(&m, Corner::Rents.share(), alpha_h)?,
        "tax_base_provision": laffer_peak_revenue(&m, Corner::Provision.share(), alpha_h)?,
    });
    let cols = ["jump_factor", "tax_base_rents", "tax_base_provision"];
    Ok(Output::single(json, cols.iter().map(|c| Column::plain(c)).collect()).into())
}

fn simulate(p: &Params) -> Result<Outcome, CliError> {
    let m = model(p, two_state(p)?)?;
    let initial = match p.initial.unwrap_or(Initial::Low) {
        Initial::Low => State::Low,
        Initial::High => State::High,
    };
    let scenario = Scenario::new(m, need(p.horizon, "horizon")?, p.shock, initial)?;
    let traj = run_timeline(&scenario)?;
    let cols = vec![
        Column::plain("period"),
        Column::new("alpha", "realized_alpha"),
        Column::plain("g"),
        Column::plain("posterior"),
        Column::plain("report"),
        Column::plain("tax_base"),
        Column::plain("tag"),
    ];
    Ok(Output {
        json: to_value(&traj),
        rows: traj.records.iter().map(to_value).collect(),
        columns: cols,
    }
    .into())
}

fn verify(args: &VerifyArgs) -> Result<Outcome, CliError> {
    let rows = agreement_suite(args.seed, args.draws)?;
    let status = if rows.iter().all(|r| r.passed) {
        Status::Ok
    } else {
        Status::Failed
    };
    let cols = vec![
        Column::plain("target"),
        Column::plain("closed_form"),
        Column::new("oracle", "oracle_value"),
        Column::plain("abs_err"),
        Column::plain("passed"),
    ];
    Ok(Outcome {
        output: Output::list(rows.iter().map(to_value).collect(), cols),
        status,
    })
}
