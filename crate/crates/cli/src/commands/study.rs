use std::path::{Path, PathBuf};

use clap::Args;
use jtheta::estimation::{run_estimator_study, StudyConfig};
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::output::{num, open_sink, write_json_value};
use crate::{Globals, SeedArg};

#[derive(Args)]
pub struct StudyArgs {
    /// True scale parameter.
    #[arg(long, default_value_t = 7.0)]
    m: f64,
    /// Size of each simulated sample.
    #[arg(long, default_value_t = 100)]
    n: usize,
    #[arg(long, default_value_t = 10_000)]
    replicates: usize,
    #[arg(long, default_value_t = 0.5)]
    u: f64,
    /// Histogram bins per method.
    #[arg(long, default_value_t = 100)]
    bins: usize,
    /// One row per replicate.
    #[arg(long, default_value = "study_estimates.csv")]
    estimates: PathBuf,
    /// Per-method statistics with one row per histogram bin.
    #[arg(long, default_value = "study_summary.csv")]
    summary: PathBuf,
    #[command(flatten)]
    seed: SeedArg,
}

fn cell(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

fn writer(path: &Path) -> CliResult<csv::Writer<Box<dyn std::io::Write>>> {
    Ok(csv::Writer::from_writer(
        open_sink(Some(path)).map_err(|e| e.context("study"))?,
    ))
}

pub fn run(g: &Globals, a: StudyArgs) -> CliResult<()> {
    let cfg = StudyConfig {
        true_m: a.m,
        n_per_sample: a.n,
        replicates: a.replicates,
        seed: a.seed.seed,
        u: a.u,
        bins: a.bins,
    };
    cfg.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    let result = run_estimator_study(&cfg)?;
    let best = result.smallest_variance();

    let mut w = writer(&a.estimates)?;
    w.write_record(["replicate", "exact_cdf_root", "asymptotic_lambert", "lognormal_mle"])?;
    for r in &result.estimates {
        w.write_record([
            r.replicate.to_string(),
            cell(r.exact_cdf_root),
            cell(r.asymptotic_lambert),
            cell(r.lognormal_mle),
        ])?;
    }
    w.flush()?;

    let mut w = writer(&a.summary)?;
    w.write_record([
        "method",
        "successes",
        "failures",
        "mean",
        "variance",
        "smallest_variance",
        "bin",
        "bin_lo",
        "bin_hi",
        "count",
    ])?;
    for s in &result.summaries {
        for (b, count) in s.histogram.counts.iter().enumerate() {
            w.write_record([
                s.method.name().to_string(),
                s.successes.to_string(),
                s.failures.to_string(),
                num(s.mean),
                num(s.variance),
                (best == Some(s.method)).to_string(),
                b.to_string(),
                num(s.histogram.edges[b]),
                num(s.histogram.edges[b + 1]),
                count.to_string(),
            ])?;
        }
    }
    w.flush()?;

    let methods: Vec<_> = result
        .summaries
        .iter()
        .map(|s| {
            json!({
                "method": s.method.name(),
                "successes": s.successes,
                "failures": s.failures,
                "mean": s.mean,
                "variance": s.variance,
            })
        })
        .collect();
    let doc = json!({
        "config": cfg,
        "smallest_variance": best.map(|m| m.name()),
        "methods": methods,
        "estimates_file": a.estimates,
        "summary_file": a.summary,
    });
    write_json_value(open_sink(g.output.as_deref())?, &doc)?;
    g.note(format_args!(
        "study: wrote {} and {}",
        a.estimates.display(),
        a.summary.display()
    ));
    Ok(())
}
