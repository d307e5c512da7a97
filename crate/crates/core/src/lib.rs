pub mod discretization;
pub mod error;
pub mod graph;
pub mod harness;
pub mod linalg;
pub mod metrics;
pub mod penalty;
pub mod quadrature;
pub mod regularization;

pub use error::{Error, Result};
