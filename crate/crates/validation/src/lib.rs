//! Acceptance checks for `jtheta`, each a pass/fail verdict with a detail line.

pub mod criteria;
#[path = "../../core/tests/common/oracles.rs"]
pub mod oracles;
