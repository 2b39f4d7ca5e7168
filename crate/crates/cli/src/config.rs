//! Flat `key = value` parameter files.
//!
//! One binding per line; blank lines and lines starting with `#` are ignored.
//! Section headers and structured values are rejected.

use crate::args::{Initial, Params};
use crate::CliError;

pub fn parse(text: &str) -> Result<Params, CliError> {
    let mut params = Params::default();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |why: &str| CliError::Usage(format!("config line {}: {why}: `{line}`", i + 1));
        let Some((key, value)) = line.split_once('=') else {
            return Err(bad("expected key = value"));
        };
        let (key, value) = (key.trim(), value.trim());
        if value.is_empty() || value.contains(['[', ']', '{', '}', '=']) || key.contains(['[', '.'])
        {
            return Err(bad("only flat scalar bindings are allowed"));
        }
        match key.replace('-', "_").as_str() {
            "horizon" => {
                params.horizon = Some(value.parse().map_err(|_| bad("expected an integer"))?)
            }
            "shock" => params.shock = Some(value.parse().map_err(|_| bad("expected an integer"))?),
            "initial" => {
                params.initial = Some(match value {
                    "low" => Initial::Low,
                    "high" => Initial::High,
                    _ => return Err(bad("expected low or high")),
                })
            }
            name => {
                let slot = params.real_mut(name).ok_or_else(|| bad("unknown key"))?;
                *slot = Some(value.parse().map_err(|_| bad("expected a number"))?);
            }
        }
    }
    Ok(params)
}
