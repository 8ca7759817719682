use clap::{Args, ValueEnum};
use jtheta::approx::{asymptotic_cdf, asymptotic_pdf, asymptotic_upper_limit, LogNormal};
use jtheta::JacobiTheta;

use super::grid;
use crate::error::{CliError, CliResult};
use crate::output::{open_sink, Table};
use crate::{Format, Globals};

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum What {
    Pdf,
    Cdf,
    Quantile,
    Laplace,
    Mgf,
    Spectrum,
}

#[derive(Args)]
pub struct EvalArgs {
    /// Scale parameter.
    #[arg(long)]
    m: f64,
    #[arg(long, value_enum)]
    what: What,
    /// First grid point (a probability for `quantile`).
    #[arg(long, allow_hyphen_values = true)]
    from: f64,
    #[arg(long, allow_hyphen_values = true)]
    to: f64,
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Log-spaced grid.
    #[arg(long)]
    log: bool,
    /// Add the first-order asymptotic column (pdf, cdf); empty beyond its range.
    #[arg(long)]
    with_asymptotic: bool,
    /// Add the moment-matched log-normal column (pdf, cdf, quantile).
    #[arg(long)]
    with_lognormal: bool,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

pub fn run(g: &Globals, a: EvalArgs) -> CliResult<()> {
    let p = JacobiTheta::new(a.m)?;
    let xs = grid(a.from, a.to, a.points, a.log)?;
    if a.with_asymptotic && !matches!(a.what, What::Pdf | What::Cdf) {
        return Err(CliError::Usage("--with-asymptotic applies to pdf and cdf".into()));
    }
    if a.with_lognormal && !matches!(a.what, What::Pdf | What::Cdf | What::Quantile) {
        return Err(CliError::Usage(
            "--with-lognormal applies to pdf, cdf and quantile".into(),
        ));
    }
    let ln = LogNormal::matching(&p);
    let limit = asymptotic_upper_limit(&p);

    let input = match a.what {
        What::Pdf | What::Cdf => "x",
        What::Quantile => "u",
        What::Laplace => "alpha",
        What::Mgf => "t",
        What::Spectrum => "omega",
    };
    let mut headers = vec![input];
    if a.what == What::Spectrum {
        headers.extend(["magnitude_sq", "phase"]);
    } else {
        headers.push("exact");
    }
    if a.with_asymptotic {
        headers.push("asymptotic");
    }
    if a.with_lognormal {
        headers.push("lognormal");
    }
    let mut table = Table::new(headers);

    for (i, &x) in xs.iter().enumerate() {
        let at = |e: jtheta::Error| CliError::from(e).context(format!("row {} ({input} = {x})", i + 1));
        let in_range = x > 0.0 && x <= limit;
        let row = match a.what {
            What::Pdf => {
                let mut r = vec![Some(x), Some(p.pdf(x))];
                if a.with_asymptotic {
                    r.push(in_range.then(|| asymptotic_pdf(&p, x)).transpose().map_err(at)?);
                }
                if a.with_lognormal {
                    r.push(Some(ln.pdf(x)));
                }
                r
            }
            What::Cdf => {
                let mut r = vec![Some(x), Some(p.cdf(x))];
                if a.with_asymptotic {
                    r.push(in_range.then(|| asymptotic_cdf(&p, x)).transpose().map_err(at)?);
                }
                if a.with_lognormal {
                    r.push(Some(ln.cdf(x)));
                }
                r
            }
            What::Quantile => {
                let mut r = vec![Some(x), Some(p.quantile(x).map_err(at)?)];
                if a.with_lognormal {
                    r.push(Some(ln.quantile(x).map_err(at)?));
                }
                r
            }
            What::Laplace => vec![Some(x), Some(p.laplace_transform(x).map_err(at)?)],
            What::Mgf => vec![Some(x), Some(p.mgf(x).map_err(at)?)],
            What::Spectrum => vec![Some(x), Some(p.spectrum_magnitude_sq(x)), Some(p.spectrum_phase(x))],
        };
        table.push(row);
    }

    let out = open_sink(g.output.as_deref())?;
    match a.format {
        Format::Csv => table.write_csv(out)?,
        Format::Json => table.write_json(out)?,
    }
    g.note(format_args!("eval: {} rows", table.rows.len()));
    Ok(())
}
