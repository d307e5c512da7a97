//! Test problems, experiment orchestration and report I/O.

pub mod commands;
pub mod config;
pub mod experiment;
pub mod figures;
pub mod noise;
pub mod problems;
pub mod report;
pub mod tables;

pub use config::{ExperimentConfig, ForwardMethod};
pub use experiment::{run_cell, CellOutcome, PreparedCell};
pub use figures::emit_figure_data;
pub use noise::{add_noise, NoiseModel};
pub use problems::{synthesize_data, ExampleId, SynthesisMode, TestFunction};
pub use report::{Dataset, ExperimentReport};
pub use tables::run_table;
