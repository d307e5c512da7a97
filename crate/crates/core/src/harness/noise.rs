//! Seeded relative Gaussian noise.
//!
//! `η` is drawn from ChaCha8 seeded with the 64-bit seed through
//! `SeedableRng::seed_from_u64`, mapped to standard normals by the ziggurat
//! sampler of `rand_distr`. The stream is part of the report format.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NoiseModel {
    pub epsilon: f64,
    pub seed: u64,
}

pub fn standard_normal_vector(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| StandardNormal.sample(&mut rng)).collect()
}

/// `g + ε‖g‖·η/‖η‖`
pub fn add_noise(g: &[f64], model: &NoiseModel) -> Result<Vec<f64>> {
    if !(model.epsilon >= 0.0 && model.epsilon.is_finite()) {
        return Err(Error::Parameter(format!("noise level must be nonnegative, got {}", model.epsilon)));
    }
    if model.epsilon == 0.0 || g.is_empty() {
        return Ok(g.to_vec());
    }
    let eta = standard_normal_vector(g.len(), model.seed);
    let scale = model.epsilon * norm2(g) / norm2(&eta);
    Ok(g.iter().zip(&eta).map(|(gi, e)| gi + scale * e).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_noise_is_identity() {
        let g = vec![0.3, -1.0, 2.0];
        assert_eq!(add_noise(&g, &NoiseModel { epsilon: 0.0, seed: 9 }).unwrap(), g);
    }

    #[test]
    fn relative_level_is_exact_and_seeded() {
        let g: Vec<f64> = (0..100).map(|i| (i as f64 * 0.1).cos()).collect();
        let m = NoiseModel { epsilon: 0.02, seed: 42 };
        let a = add_noise(&g, &m).unwrap();
        let diff: Vec<f64> = a.iter().zip(&g).map(|(x, y)| x - y).collect();
        assert!((norm2(&diff) / norm2(&g) - 0.02).abs() < 1e-14);
        assert_eq!(a, add_noise(&g, &m).unwrap());
        assert_ne!(a, add_noise(&g, &NoiseModel { seed: 43, ..m }).unwrap());
    }

    #[test]
    fn negative_level_is_rejected() {
        assert!(add_noise(&[1.0], &NoiseModel { epsilon: -0.1, seed: 0 }).is_err());
    }
}
