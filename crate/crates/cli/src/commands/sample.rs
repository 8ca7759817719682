use std::io::Write;

use clap::{Args, ValueEnum};
use jtheta::sampling::{sample_many, SamplerMethod, SeriesSamplerConfig};
use jtheta::{JacobiTheta, TailPolicy};

use crate::error::{CliError, CliResult};
use crate::output::{num, open_sink};
use crate::{Globals, SeedArg};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// Truncated exponential series.
    Series,
    /// Numerical inversion of the CDF.
    Inverse,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tail {
    Drop,
    Compensate,
}

#[derive(Args)]
pub struct SampleArgs {
    #[arg(long)]
    m: f64,
    /// Number of draws.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Method::Series)]
    method: Method,
    /// Series truncation.
    #[arg(long, default_value_t = 10_000)]
    k: u64,
    /// Treatment of the dropped series tail.
    #[arg(long, value_enum, default_value_t = Tail::Compensate)]
    tail: Tail,
    #[command(flatten)]
    seed: SeedArg,
}

pub fn run(g: &Globals, a: SampleArgs) -> CliResult<()> {
    if a.n == 0 {
        return Err(CliError::Usage("--n must be at least 1".into()));
    }
    if a.k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    let p = JacobiTheta::new(a.m)?;
    let method = match a.method {
        Method::Inverse => SamplerMethod::Inverse,
        Method::Series => {
            let tail = match a.tail {
                Tail::Drop => TailPolicy::Drop,
                Tail::Compensate => TailPolicy::MeanCompensate,
            };
            SamplerMethod::Series(SeriesSamplerConfig::new(a.k, tail)?)
        }
    };
    let values = sample_many(&p, a.n, method, a.seed.seed)?;
    let mut out = open_sink(g.output.as_deref())?;
    for v in &values {
        writeln!(out, "{}", num(*v))?;
    }
    out.flush()?;
    g.note(format_args!("sample: {} draws, seed {}", values.len(), a.seed.seed));
    Ok(())
}
