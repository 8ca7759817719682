pub mod app;
pub mod eval;
pub mod fit;
pub mod sample;
pub mod study;

use crate::error::{CliError, CliResult};

/// Evenly (or log-evenly) spaced points from `from` to `to` inclusive.
pub fn grid(from: f64, to: f64, points: usize, log: bool) -> CliResult<Vec<f64>> {
    if !(from.is_finite() && to.is_finite()) {
        return Err(CliError::Usage(format!("range {from}..{to} is not finite")));
    }
    if points == 0 {
        return Err(CliError::Usage("--points must be at least 1".into()));
    }
    if from > to {
        return Err(CliError::Usage(format!("--from {from} exceeds --to {to}")));
    }
    if log && from <= 0.0 {
        return Err(CliError::Usage("--log needs a positive range".into()));
    }
    if points == 1 {
        return Ok(vec![from]);
    }
    let (a, b) = if log { (from.ln(), to.ln()) } else { (from, to) };
    let step = (b - a) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| match i {
            0 => from,
            i if i == points - 1 => to,
            i if log => (a + step * i as f64).exp().clamp(from, to),
            i => (a + step * i as f64).clamp(from, to),
        })
        .collect())
}
