use std::path::PathBuf;

use clap::{Args, Subcommand, ValueEnum};
use jtheta::applications::*;
use jtheta::sampling::{stream_rng, SeriesSamplerConfig};
use jtheta::{JacobiTheta, TailPolicy};

use super::grid;
use crate::config::ScenarioConfig;
use crate::error::{CliError, CliResult};
use crate::output::{open_sink, Table};
use crate::{Globals, SeedArg};

/// Vacuum permittivity in F/m.
const EPSILON0_SI: f64 = 8.8541878128e-12;

#[derive(Subcommand)]
pub enum AppCommand {
    /// Interference at the origin from a grid of exponential-power interferers.
    Rf(RfArgs),
    /// Coverage probability P(SINR > t) curves.
    Coverage(CoverageArgs),
    /// Moments of the SINR ratio.
    Sinr(SinrArgs),
    /// Grid point locations with uniform random angles.
    Points(PointsArgs),
    /// Total trade flow with the origin in the gravity model.
    Gravity(GravityArgs),
    /// Total charge at the origin of a grid of exponential charges.
    Efield(EfieldArgs),
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Radii d, 2d, 3d, ...
    Constant,
    /// Radii √(t·x)·d for x = 1, ..., t.
    Sqrt,
}

impl std::str::FromStr for Kind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        <Kind as ValueEnum>::from_str(s, true)
    }
}

impl From<Kind> for GridKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::Constant => GridKind::ConstantSpacing,
            Kind::Sqrt => GridKind::SqrtSpacing,
        }
    }
}

#[derive(Args)]
pub struct ConfigArg {
    /// Scenario file of `key = value` lines (d, lambda, kind, t, z, m, epsilon0);
    /// flags take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl ConfigArg {
    fn load(&self) -> CliResult<ScenarioConfig> {
        ScenarioConfig::load(self.config.as_deref())
    }
}

#[derive(Args)]
pub struct RfArgs {
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    /// Horizon of the square-root grid.
    #[arg(long)]
    t: Option<u64>,
    /// Also simulate this many field realizations.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Interferers per realization on the constant grid.
    #[arg(long, default_value_t = 10_000)]
    k: u64,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
pub struct CoverageArgs {
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    /// One or more comma-separated values.
    #[arg(long, value_delimiter = ',')]
    m: Vec<f64>,
    #[arg(long, default_value_t = 0.01)]
    t_from: f64,
    #[arg(long, default_value_t = 100.0)]
    t_to: f64,
    /// Log-spaced thresholds.
    #[arg(long, default_value_t = 100)]
    points: usize,
    /// Use the exact interference law instead of the log-normal surrogate.
    #[arg(long)]
    exact: bool,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
pub struct SinrArgs {
    #[arg(long)]
    z: Option<f64>,
    #[arg(long)]
    m: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
pub struct PointsArgs {
    #[arg(long)]
    count: u64,
    #[arg(long, value_enum)]
    kind: Option<Kind>,
    #[arg(long)]
    d: Option<f64>,
    /// Horizon of the square-root grid; defaults to the count.
    #[arg(long)]
    t: Option<u64>,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
pub struct GravityArgs {
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    /// Also simulate this many total flows.
    #[arg(long, default_value_t = 0)]
    samples: usize,
    /// Partners per simulated total.
    #[arg(long, default_value_t = 10_000)]
    k: u64,
    #[command(flatten)]
    seed: SeedArg,
    #[command(flatten)]
    config: ConfigArg,
}

#[derive(Args)]
pub struct EfieldArgs {
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long)]
    d: Option<f64>,
    /// Permittivity; defaults to the SI vacuum value.
    #[arg(long)]
    epsilon0: Option<f64>,
    #[command(flatten)]
    config: ConfigArg,
}

pub fn run(g: &Globals, cmd: AppCommand) -> CliResult<()> {
    let table = match cmd {
        AppCommand::Rf(a) => rf(a)?,
        AppCommand::Coverage(a) => coverage(a)?,
        AppCommand::Sinr(a) => sinr(a)?,
        AppCommand::Points(a) => points(a)?,
        AppCommand::Gravity(a) => gravity(a)?,
        AppCommand::Efield(a) => efield(a)?,
    };
    table.write_csv(open_sink(g.output.as_deref())?)?;
    g.note(format_args!("app: {} rows", table.rows.len()));
    Ok(())
}

fn param_row(table: &mut Table, lead: Vec<Option<f64>>, p: &JacobiTheta) {
    let mut row = lead;
    row.extend([Some(p.m()), Some(p.mean()), Some(p.variance())]);
    table.push(row);
}

fn series(k: u64) -> CliResult<SeriesSamplerConfig> {
    if k == 0 {
        return Err(CliError::Usage("--k must be at least 1".into()));
    }
    Ok(SeriesSamplerConfig::new(k, TailPolicy::MeanCompensate)?)
}

fn rf(a: RfArgs) -> CliResult<Table> {
    let c = a.config.load()?;
    let d = c.require(a.d, "d")?;
    let lambda = c.require(a.lambda, "lambda")?;
    let kind = c.or(a.kind, "kind", Kind::Constant)?;
    let t = match kind {
        Kind::Constant => c.or(a.t, "t", 0)?,
        Kind::Sqrt => c.require(a.t, "t")?,
    };
    let sc = GridScenario::new(d, lambda, kind.into(), t)?;
    if a.samples > 0 {
        let cfg = series(a.k)?;
        let mut table = Table::new(["interference"]);
        for j in 0..a.samples {
            let mut rng = stream_rng(a.seed.seed, j as u64);
            let v = match kind {
                Kind::Constant => simulate_field(&mut rng, &sc, cfg)?,
                Kind::Sqrt => simulate_altered_field(&mut rng, &sc)?,
            };
            table.push(vec![Some(v)]);
        }
        return Ok(table);
    }
    let p = sc.param()?;
    match kind {
        Kind::Constant => {
            let mut table = Table::new(["d", "lambda", "m", "mean", "variance"]);
            param_row(&mut table, vec![Some(d), Some(lambda)], &p);
            Ok(table)
        }
        Kind::Sqrt => {
            let (mean, variance) = altered_grid_moments(&sc)?;
            let mut table = Table::new(["d", "lambda", "t", "m", "mean", "variance"]);
            table.push(vec![
                Some(d),
                Some(lambda),
                Some(t as f64),
                Some(p.m()),
                Some(mean),
                Some(variance),
            ]);
            Ok(table)
        }
    }
}

fn coverage(a: CoverageArgs) -> CliResult<Table> {
    let c = a.config.load()?;
    let z = c.require(a.z, "z")?;
    let lambda = c.require(a.lambda, "lambda")?;
    let d = c.require(a.d, "d")?;
    let ms = if a.m.is_empty() {
        c.get_list::<f64>("m")?
            .ok_or_else(|| CliError::Usage("missing --m (or 'm' in the config file)".into()))?
    } else {
        a.m
    };
    if a.t_from <= 0.0 {
        return Err(CliError::Usage("--t-from must be positive".into()));
    }
    let ts = grid(a.t_from, a.t_to, a.points, true)?;
    let mut table = Table::new(["m", "t", "probability"]);
    for &m in &ms {
        let sc = SinrScenario::new(z, m, d, lambda)?;
        for &t in &ts {
            let at = |e: jtheta::Error| CliError::from(e).context(format!("m = {m}, t = {t}"));
            let p = if a.exact {
                coverage_probability_exact(&sc, t)
            } else {
                coverage_probability(&sc, t)
            }
            .map_err(at)?;
            table.push(vec![Some(m), Some(t), Some(p)]);
        }
    }
    Ok(table)
}

fn sinr(a: SinrArgs) -> CliResult<Table> {
    let c = a.config.load()?;
    let sc = SinrScenario::new(
        c.require(a.z, "z")?,
        c.require(a.m, "m")?,
        c.require(a.d, "d")?,
        c.require(a.lambda, "lambda")?,
    )?;
    let reference = sinr_moments(&sc);
    let model = sinr_moments_from_model(&sc)?;
    let mut table = Table::new([
        "z",
        "m",
        "d",
        "lambda",
        "mean",
        "variance",
        "snr_ratio",
        "model_mean",
        "model_variance",
    ]);
    table.push(vec![
        Some(sc.z),
        Some(sc.m),
        Some(sc.d),
        Some(sc.lambda),
        Some(reference.mean),
        Some(reference.variance),
        Some(reference.snr_ratio),
        Some(model.mean),
        Some(model.variance),
    ]);
    Ok(table)
}

fn points(a: PointsArgs) -> CliResult<Table> {
    if a.count == 0 {
        return Err(CliError::Usage("--count must be at least 1".into()));
    }
    let c = a.config.load()?;
    let kind = c.or(a.kind, "kind", Kind::Constant)?;
    let d = c.or(a.d, "d", 1.0)?;
    let t = c.or(a.t, "t", a.count)?;
    // The rate does not affect placement.
    let sc = GridScenario::new(d, c.or(None, "lambda", 1.0)?, kind.into(), t)?;
    let pts = place_points(&mut stream_rng(a.seed.seed, 0), a.count, &sc)?;
    let mut table = Table::new(["x", "y"]);
    for (x, y) in pts {
        table.push(vec![Some(x), Some(y)]);
    }
    Ok(table)
}

fn gravity(a: GravityArgs) -> CliResult<Table> {
    let c = a.config.load()?;
    let lambda = c.require(a.lambda, "lambda")?;
    let d = c.require(a.d, "d")?;
    let p = gravity_trade_param(lambda, d)?;
    if a.samples > 0 {
        let cfg = series(a.k)?;
        let mut table = Table::new(["total"]);
        for j in 0..a.samples {
            let v = simulate_trade_total(&mut stream_rng(a.seed.seed, j as u64), lambda, d, cfg)?;
            table.push(vec![Some(v)]);
        }
        return Ok(table);
    }
    let mut table = Table::new(["lambda", "d", "m", "mean", "variance"]);
    param_row(&mut table, vec![Some(lambda), Some(d)], &p);
    Ok(table)
}

fn efield(a: EfieldArgs) -> CliResult<Table> {
    let c = a.config.load()?;
    let lambda = c.require(a.lambda, "lambda")?;
    let d = c.require(a.d, "d")?;
    let eps = c.or(a.epsilon0, "epsilon0", EPSILON0_SI)?;
    let p = electric_field_param(lambda, d, eps)?;
    let mut table = Table::new(["lambda", "d", "epsilon0", "m", "mean", "variance"]);
    param_row(&mut table, vec![Some(lambda), Some(d), Some(eps)], &p);
    Ok(table)
}
