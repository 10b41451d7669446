//! Coefficient distribution families and the equilibrium-count distribution.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// How the payoff gaps `β_k` are drawn.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// `β_k` i.i.d. normal with standard deviation `scale`.
    Gaussian,
    /// `β_k` i.i.d. uniform on `[-scale, scale]`.
    UniformBeta,
    /// `β_k = a_k - b_k` with `a_k, b_k` i.i.d. uniform on `[-scale, scale]`.
    UniformPayoffs,
}

impl Family {
    pub const ALL: [Family; 3] = [
        Family::Gaussian,
        Family::UniformBeta,
        Family::UniformPayoffs,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Family::Gaussian => "gaussian",
            Family::UniformBeta => "uniform-beta",
            Family::UniformPayoffs => "uniform-payoffs",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "gaussian" => Ok(Family::Gaussian),
            "uniform-beta" => Ok(Family::UniformBeta),
            "uniform-payoffs" => Ok(Family::UniformPayoffs),
            other => Err(Error::InvalidParameter(format!(
                "unknown distribution '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DistributionSpec {
    pub family: Family,
    pub scale: f64,
}

impl DistributionSpec {
    pub fn new(family: Family, scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "scale must be positive and finite, got {scale}"
            )));
        }
        Ok(Self { family, scale })
    }

    /// Unit scale.
    pub fn standard(family: Family) -> Self {
        Self { family, scale: 1.0 }
    }

    /// Probability that a single gap is positive. All three families are
    /// symmetric about zero.
    pub fn sign_probability(&self) -> f64 {
        0.5
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Sampling,
    ClosedForm,
    Bounds,
    Approximation,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Sampling => "sampling",
            Method::ClosedForm => "closed-form",
            Method::Bounds => "bounds",
            Method::Approximation => "approximation",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// `p[m]` is the probability of exactly `m` internal equilibria.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumDistribution {
    pub d: usize,
    pub p: Vec<f64>,
    pub stderr: Vec<f64>,
    /// Number of samples drawn; zero for analytic methods.
    pub n_samples: u64,
    /// Samples whose gap vector was identically zero.
    pub n_degenerate: u64,
    pub method: Method,
}

impl EquilibriumDistribution {
    pub fn total(&self) -> f64 {
        self.p.iter().sum()
    }

    /// `Σ m p[m]`.
    pub fn expected(&self) -> f64 {
        self.p.iter().enumerate().map(|(m, p)| m as f64 * p).sum()
    }

    /// Index of the largest entry (first one on ties).
    pub fn argmax(&self) -> usize {
        let mut best = 0;
        for (m, &p) in self.p.iter().enumerate() {
            if p > self.p[best] {
                best = m;
            }
        }
        best
    }
}
