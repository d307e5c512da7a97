//! Standard-form Tikhonov through SVD filter factors `s²/(s² + α)`, checked
//! against the normal-equations solve.

use graphtik::harness::config::ExperimentConfig;
use graphtik::harness::experiment::{forward_operator, sample, OperatorKey};
use graphtik::harness::{add_noise, synthesize_data, ExampleId, NoiseModel, SynthesisMode, TestFunction};
use graphtik::linalg::{norm2, SvdFactors};
use graphtik::metrics::rre;
use graphtik::penalty::identity_penalty;
use graphtik::regularization::{filter_factor, filter_solution, tikhonov_solve, TikhonovProblem};

fn main() -> graphtik::Result<()> {
    let config = ExperimentConfig {
        example: ExampleId::Example2,
        n: 100,
        ..Default::default()
    };
    let k = forward_operator(OperatorKey::from_config(&config))?;
    let svd = SvdFactors::of(&k.matrix)?;
    let s = &svd.singular_values;
    println!("singular values: first {:.3e}, 10th {:.3e}, last {:.3e}", s[0], s[9], s[s.len() - 1]);

    let clean = synthesize_data(config.example, TestFunction::F3, &k.grid, SynthesisMode::Quadrature)?;
    let g = add_noise(&clean, &NoiseModel { epsilon: 0.02, seed: 0 })?;
    let truth = sample(TestFunction::F3, &k.grid);
    let problem = TikhonovProblem::new(k.as_ref().clone(), identity_penalty(config.n)?, g.clone())?;

    for alpha in [1e-4, 1e-6, 1e-8, 1e-10] {
        let filtered = filter_solution(&svd, &g, alpha);
        let direct = tikhonov_solve(&problem, alpha)?.solution;
        let gap: Vec<f64> = filtered.iter().zip(&direct).map(|(a, b)| a - b).collect();
        let passed = s.iter().filter(|&&si| filter_factor(si, alpha) > 0.5).count();
        println!(
            "alpha {alpha:.0e}: {passed:>3} factors > 1/2, rre {:.4}, |filter − direct|/|filter| {:.1e}",
            rre(&filtered, &truth)?,
            norm2(&gap) / norm2(&filtered)
        );
    }
    Ok(())
}
