//! The Jacobi theta distribution: exact evaluation, sampling, approximations,
//! estimators and applications.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod applications;
pub mod approx;
pub mod distribution;
pub mod error;
pub mod estimation;
pub mod gof;
pub mod numerics;
pub mod sampling;
pub mod specfun;

pub use approx::LogNormal;
pub use distribution::{DistributionStats, JacobiTheta};
pub use error::{Error, Result};
pub use estimation::{EstimateReport, EstimatorMethod, StudyConfig};
pub use sampling::{SampleSet, SeriesSamplerConfig, TailPolicy, ThetaRng};
