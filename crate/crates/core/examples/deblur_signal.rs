//! One restoration with the oracle α sweep, written as CSV next to the truth.
//!
//! `cargo run --release --example deblur_signal -- out.csv`

use graphtik::harness::commands::deblur;
use graphtik::harness::{ExampleId, ExperimentConfig, TestFunction};
use graphtik::penalty::PenaltyKind;

fn main() -> graphtik::Result<()> {
    let config = ExperimentConfig {
        example: ExampleId::Example1,
        test_function: TestFunction::F4,
        epsilon: 0.01,
        penalty: PenaltyKind::DataGraph,
        seeds: (0..5).collect(),
        ..Default::default()
    };
    let out = deblur(&config)?;
    println!("{}", out.summary);
    let report = out.report.as_ref().expect("deblur keeps a report");
    println!("per-seed rre: {:?}", report.cells[0].per_seed);
    match std::env::args().nth(1) {
        Some(path) => out.write(Some(path.as_ref()), None)?,
        None => print!("{}", out.csv().lines().take(6).collect::<Vec<_>>().join("\n") + "\n...\n"),
    }
    Ok(())
}
