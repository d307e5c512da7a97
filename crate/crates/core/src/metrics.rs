//! Spectral and restoration error functionals.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::norm2;

/// Local spectral relative error `|λ⁽ⁿ⁾_m/λ_m − 1|` at the 1-based index `m`.
pub fn lsre(discrete: &[f64], continuous: &[f64], m: usize) -> Result<f64> {
    if m == 0 || m > discrete.len() || m > continuous.len() {
        return Err(Error::Parameter(format!(
            "index m = {m} outside 1..={}",
            discrete.len().min(continuous.len())
        )));
    }
    let reference = continuous[m - 1];
    if reference == 0.0 {
        return Err(Error::Division(format!("continuous eigenvalue {m} is zero")));
    }
    Ok((discrete[m - 1] / reference - 1.0).abs())
}

/// Maximum spectral relative error over `m = 1..n`.
pub fn msre(discrete: &[f64], continuous: &[f64]) -> Result<f64> {
    Ok(SpectralErrorReport::new(discrete, continuous)?.msre)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectralErrorReport {
    pub n: usize,
    /// `lsre[m − 1]` for `m = 1..n`
    pub lsre: Vec<f64>,
    pub msre: f64,
}

impl SpectralErrorReport {
    pub fn new(discrete: &[f64], continuous: &[f64]) -> Result<Self> {
        if discrete.len() != continuous.len() {
            return Err(Error::Parameter(format!(
                "spectra have different lengths ({} and {})",
                discrete.len(),
                continuous.len()
            )));
        }
        let lsre = (1..=discrete.len())
            .map(|m| lsre(discrete, continuous, m))
            .collect::<Result<Vec<_>>>()?;
        let msre = lsre.iter().copied().fold(0.0, f64::max);
        Ok(Self {
            n: discrete.len(),
            lsre,
            msre,
        })
    }

    pub fn at(&self, m: usize) -> f64 {
        self.lsre[m - 1]
    }
}

/// Relative restoration error `‖f − f†‖/‖f†‖`.
pub fn rre(f: &[f64], f_true: &[f64]) -> Result<f64> {
    if f.len() != f_true.len() {
        return Err(Error::Parameter(format!("vectors have lengths {} and {}", f.len(), f_true.len())));
    }
    let denom = norm2(f_true);
    if denom == 0.0 {
        return Err(Error::Division("true solution has zero norm".into()));
    }
    let diff: Vec<f64> = f.iter().zip(f_true).map(|(a, b)| a - b).collect();
    Ok(norm2(&diff) / denom)
}

/// `max_i |a_i − b_i|`
pub fn max_abs_error(approx: &[f64], exact: &[f64]) -> Result<f64> {
    if approx.len() != exact.len() {
        return Err(Error::Parameter(format!("vectors have lengths {} and {}", approx.len(), exact.len())));
    }
    Ok(approx.iter().zip(exact).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
}
