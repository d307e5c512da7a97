//! LSRE and MSRE of the graph and Galerkin discretizations against the
//! continuous eigenvalues `1/(m²π² − 1)`.

use graphtik::harness::config::{ExperimentConfig, ForwardMethod};
use graphtik::harness::tables::spectral_error;
use graphtik::harness::ExampleId;

fn main() -> graphtik::Result<()> {
    let base = ExperimentConfig::default();
    println!("{:>6} {:>9} {:>12} {:>12} {:>12} {:>12}", "n", "method", "lsre m=1", "lsre m=10", "lsre m=50", "msre");
    for n in [100, 200, 400] {
        for method in ForwardMethod::BOTH {
            let r = spectral_error(&base, ExampleId::Example2, method, n)?;
            println!(
                "{n:>6} {:>9} {:>12.4e} {:>12.4e} {:>12.4e} {:>12.4e}",
                method.label(),
                r.at(1),
                r.at(10),
                r.at(50),
                r.msre
            );
        }
    }
    Ok(())
}
