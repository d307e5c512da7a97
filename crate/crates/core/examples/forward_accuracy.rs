//! Forward error `max_i |(K f)_i − K[f](x_i)|` for every test function, both
//! examples and both discretizations.

use graphtik::harness::config::{ExperimentConfig, ForwardMethod};
use graphtik::harness::tables::approximation_error_for;
use graphtik::harness::{ExampleId, TestFunction};

fn main() -> graphtik::Result<()> {
    let base = ExperimentConfig::default();
    for example in [ExampleId::Example1, ExampleId::Example2] {
        println!("{example}");
        for f in TestFunction::ALL {
            for n in [50, 200] {
                let errs: Vec<String> = ForwardMethod::BOTH
                    .iter()
                    .map(|&m| Ok(format!("{}={:.3e}", m.label(), approximation_error_for(&base, example, f, m, n)?)))
                    .collect::<graphtik::Result<_>>()?;
                println!("  {f} n={n:<4} {}", errs.join("  "));
            }
        }
    }
    Ok(())
}
