//! Mean-field Poisson approximation for large group sizes.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ApproxResult {
    pub d: usize,
    pub mu: f64,
    /// `mu^m e^{-mu} / m!` for `m = 0..d-1`, not renormalized.
    pub p_approx: Vec<f64>,
}

/// Asymptotic expected number of internal equilibria, `sqrt(2d - 1) / 2`.
pub fn expected_asymptotic(d: usize) -> Result<f64> {
    if d < 2 {
        return Err(domain("group size d must be at least 2"));
    }
    Ok(((2 * d - 1) as f64).sqrt() / 2.0)
}

pub fn poisson_approx(d: usize) -> Result<ApproxResult> {
    let mu = expected_asymptotic(d)?;
    let mut p_approx = Vec::with_capacity(d);
    let mut term = (-mu).exp();
    for m in 0..d {
        p_approx.push(term);
        term *= mu / (m + 1) as f64;
    }
    Ok(ApproxResult { d, mu, p_approx })
}
