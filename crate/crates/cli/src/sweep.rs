//! Cross-product evaluation of a subcommand over one or two parameter axes.

use serde_json::{Map, Value};

use fiscap_core::Error;

use crate::args::{Command, Params, SweepArgs};
use crate::commands::{execute, Outcome, Status};
use crate::output::{Column, Output};
use crate::CliError;

#[derive(Debug, Clone, PartialEq)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

fn invalid(msg: String) -> CliError {
    CliError::Model(Error::DomainViolation(msg))
}

/// Parses `name:lo:hi:n` into `n` evenly spaced values from `lo` to `hi`.
pub fn parse_axis(text: &str) -> Result<Axis, CliError> {
    let parts: Vec<&str> = text.split(':').collect();
    let [name, lo, hi, n] = parts[..] else {
        return Err(invalid(format!(
            "axis `{text}` must look like name:lo:hi:n"
        )));
    };
    let name = name.replace('-', "_");
    if Params::default().real_mut(&name).is_none() {
        return Err(invalid(format!(
            "axis `{text}`: `{name}` is not a real-valued parameter"
        )));
    }
    let num = |s: &str| s.parse::<f64>().ok().filter(|x| x.is_finite());
    let (Some(lo), Some(hi)) = (num(lo), num(hi)) else {
        return Err(invalid(format!(
            "axis `{text}`: bounds must be finite numbers"
        )));
    };
    let n: usize = n
        .parse()
        .map_err(|_| invalid(format!("axis `{text}`: n must be an integer")))?;
    if n < 2 {
        return Err(invalid(format!(
            "axis `{text}`: n = {n} must be at least 2"
        )));
    }
    if lo >= hi {
        return Err(invalid(format!("axis `{text}`: lo must be below hi")));
    }
    let step = (hi - lo) / (n - 1) as f64;
    let values = (0..n)
        .map(|i| if i + 1 == n { hi } else { lo + step * i as f64 })
        .collect();
    Ok(Axis { name, values })
}

fn grid(axes: &[Axis]) -> Vec<Vec<f64>> {
    axes.iter().fold(vec![vec![]], |acc, axis| {
        acc.iter()
            .flat_map(|prefix| {
                axis.values.iter().map(move |&v| {
                    let mut point = prefix.clone();
                    point.push(v);
                    point
                })
            })
            .collect()
    })
}

pub fn run(args: &SweepArgs, base: &Params) -> Result<Outcome, CliError> {
    if !(1..=2).contains(&args.axes.len()) {
        return Err(invalid(format!(
            "sweep takes one or two axes, got {}",
            args.axes.len()
        )));
    }
    let axes = args
        .axes
        .iter()
        .map(|s| parse_axis(s))
        .collect::<Result<Vec<_>, _>>()?;
    if axes.len() == 2 && axes[0].name == axes[1].name {
        return Err(invalid(format!("axis `{}` given twice", axes[0].name)));
    }
    let target = Command::from(args.target.clone());

    let mut columns: Vec<Column> = axes.iter().map(|a| Column::plain(&a.name)).collect();
    let mut rows = Vec::new();
    let mut status = Status::Ok;
    for point in grid(&axes) {
        let mut params = base.clone();
        for (axis, &v) in axes.iter().zip(&point) {
            *params.real_mut(&axis.name).expect("axis names are checked") = Some(v);
        }
        let inner = execute(&target, &params)?;
        status = status.max(inner.status);
        let inner_cols: Vec<&Column> = inner
            .output
            .columns
            .iter()
            .filter(|c| !axes.iter().any(|a| a.name == c.header))
            .collect();
        if columns.len() == axes.len() {
            columns.extend(inner_cols.iter().map(|c| Column::plain(&c.header)));
        }
        for flat in inner.output.flat_rows() {
            let mut row = Map::new();
            for (axis, &v) in axes.iter().zip(&point) {
                row.insert(axis.name.clone(), Value::from(v));
            }
            for c in &inner_cols {
                row.insert(c.header.clone(), flat[&c.header].clone());
            }
            rows.push(Value::Object(row));
        }
    }
    Ok(Outcome {
        output: Output::list(rows, columns),
        status,
    })
}
