use std::io::Read;
use std::path::PathBuf;

use clap::{Args, ValueEnum};
use jtheta::estimation::{estimate, EstimatorMethod};
use jtheta::sampling::SampleSet;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::output::{open_sink, write_json_value};
use crate::Globals;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Root of the exact CDF at the empirical u-quantile.
    Exact,
    /// Closed form through the Lambert W function.
    Asymptotic,
    /// Log-normal maximum likelihood.
    Lognormal,
    All,
}

#[derive(Args)]
pub struct FitArgs {
    /// File of values, one per line; `-` reads standard input.
    input: PathBuf,
    #[arg(long, value_enum, default_value_t = Method::All)]
    method: Method,
    /// Quantile level used by the exact and asymptotic estimators.
    #[arg(long, default_value_t = 0.5)]
    u: f64,
}

/// Parses one positive value per line; blank lines and `#` comments are
/// skipped.
pub fn parse_values(text: &str) -> CliResult<Vec<f64>> {
    let mut values = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let v: f64 = line
            .parse()
            .map_err(|_| CliError::Parse(format!("line {}: cannot parse '{line}' as a number", i + 1)))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(CliError::Domain(format!(
                "line {}: value {line} is not a positive finite real",
                i + 1
            )));
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(CliError::Domain("no values in input".into()));
    }
    Ok(values)
}

pub fn run(g: &Globals, a: FitArgs) -> CliResult<()> {
    let mut text = String::new();
    if a.input.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut text)?;
    } else {
        text = std::fs::read_to_string(&a.input).map_err(|e| CliError::Io(format!("{}: {e}", a.input.display())))?;
    }
    let values = parse_values(&text).map_err(|e| e.context(a.input.display()))?;
    let n = values.len();
    let sample = SampleSet::new(values)?;
    let methods: Vec<EstimatorMethod> = match a.method {
        Method::Exact => vec![EstimatorMethod::ExactCdfRoot],
        Method::Asymptotic => vec![EstimatorMethod::AsymptoticLambert],
        Method::Lognormal => vec![EstimatorMethod::LognormalMle],
        Method::All => EstimatorMethod::ALL.to_vec(),
    };
    let reports = methods
        .into_iter()
        .map(|m| estimate(&sample, m, a.u).map_err(|e| CliError::from(e).context(m.name())))
        .collect::<CliResult<Vec<_>>>()?;
    let doc = json!({ "n": n, "estimates": reports });
    write_json_value(open_sink(g.output.as_deref())?, &doc)?;
    g.note(format_args!("fit: {n} values"));
    Ok(())
}
