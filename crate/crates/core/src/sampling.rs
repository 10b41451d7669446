//! Monte Carlo estimation of the equilibrium-count distribution.
//!
//! Sample `i` draws from its own ChaCha8 stream (key from the seed, stream id
//! `i`), so the estimate depends only on `(spec, d, n, seed)` and never on
//! how the work is split across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal, Uniform};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::{DistributionSpec, EquilibriumDistribution, Family, Method};
use crate::error::{domain, Error, Result};
use crate::game::{build_game_polynomial, GapVector};
use crate::polynomial::{count_positive_roots, tally_roots_eigen, DEFAULT_IMAG_TOL};

/// Recorded in run metadata so results can be reproduced.
pub const GENERATOR: &str = "ChaCha8Rng (rand_chacha 0.9), key = seed, stream = sample index";

const CHUNK: u64 = 4096;

/// Draw one gap vector of length `d`.
pub fn sample_gaps<R: Rng + ?Sized>(spec: &DistributionSpec, d: usize, rng: &mut R) -> GapVector {
    let s = spec.scale;
    let beta = match spec.family {
        Family::Gaussian => (0..d)
            .map(|_| {
                let z: f64 = StandardNormal.sample(rng);
                s * z
            })
            .collect::<Vec<f64>>(),
        Family::UniformBeta => {
            let u = Uniform::new_inclusive(-s, s).expect("positive scale");
            (0..d).map(|_| u.sample(rng)).collect()
        }
        Family::UniformPayoffs => {
            let u = Uniform::new_inclusive(-s, s).expect("positive scale");
            (0..d).map(|_| u.sample(rng) - u.sample(rng)).collect()
        }
    };
    GapVector { beta }
}

/// The generator used for sample `index` under `seed`.
pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// What happened to a single sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SampleOutcome {
    Count(usize),
    Degenerate,
    Failed,
}

/// Count the internal equilibria of one gap vector. An ill-conditioned
/// Sturm chain falls back to the eigenvalue classification.
pub fn classify_gaps(g: &GapVector) -> (SampleOutcome, bool) {
    let p = match build_game_polynomial(g) {
        Ok(p) => p,
        Err(Error::AllZero) => return (SampleOutcome::Degenerate, false),
        Err(_) => return (SampleOutcome::Failed, false),
    };
    match count_positive_roots(&p) {
        Ok(n) => (SampleOutcome::Count(n), false),
        Err(_) if p.degree() >= 1 => match tally_roots_eigen(&p, DEFAULT_IMAG_TOL) {
            Ok(t) => (SampleOutcome::Count(t.positive), true),
            Err(_) => (SampleOutcome::Failed, true),
        },
        Err(_) => (SampleOutcome::Failed, false),
    }
}

/// Integer tallies from a batch of samples; merging is plain addition.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SampleTally {
    pub counts: Vec<u64>,
    pub n_samples: u64,
    pub n_degenerate: u64,
    /// Samples that needed the eigenvalue fallback.
    pub n_fallback: u64,
    /// Samples neither method could classify.
    pub n_failed: u64,
}

impl SampleTally {
    fn empty(d: usize) -> Self {
        Self {
            counts: vec![0; d],
            ..Default::default()
        }
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.n_samples += other.n_samples;
        self.n_degenerate += other.n_degenerate;
        self.n_fallback += other.n_fallback;
        self.n_failed += other.n_failed;
        self
    }

    /// Samples that contributed to the frequencies.
    pub fn n_effective(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Empirical frequencies with binomial standard errors.
    pub fn to_distribution(&self) -> EquilibriumDistribution {
        let d = self.counts.len();
        let n_eff = self.n_effective();
        let (p, stderr) = if n_eff == 0 {
            (vec![0.0; d], vec![0.0; d])
        } else {
            let n = n_eff as f64;
            let p: Vec<f64> = self.counts.iter().map(|&c| c as f64 / n).collect();
            let se = p.iter().map(|&q| (q * (1.0 - q) / n).sqrt()).collect();
            (p, se)
        };
        EquilibriumDistribution {
            d,
            p,
            stderr,
            n_samples: self.n_samples,
            n_degenerate: self.n_degenerate,
            method: Method::Sampling,
        }
    }
}

/// Run `n` samples and return the raw tallies.
pub fn sample_tally(spec: &DistributionSpec, d: usize, n: u64, seed: u64) -> Result<SampleTally> {
    if d < 2 {
        return Err(domain("group size d must be at least 2"));
    }
    if n == 0 {
        return Err(domain("sample count must be at least 1"));
    }
    let chunks = n.div_ceil(CHUNK);
    let tally = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut t = SampleTally::empty(d);
            for i in c * CHUNK..((c + 1) * CHUNK).min(n) {
                let mut rng = sample_rng(seed, i);
                let g = sample_gaps(spec, d, &mut rng);
                let (outcome, fallback) = classify_gaps(&g);
                t.n_samples += 1;
                t.n_fallback += u64::from(fallback);
                match outcome {
                    SampleOutcome::Count(m) => t.counts[m.min(d - 1)] += 1,
                    SampleOutcome::Degenerate => t.n_degenerate += 1,
                    SampleOutcome::Failed => t.n_failed += 1,
                }
            }
            t
        })
        .reduce(|| SampleTally::empty(d), SampleTally::merge);
    if tally.n_fallback > 0 || tally.n_failed > 0 {
        log::debug!(
            "d={d}: {} eigenvalue fallbacks, {} unclassified samples",
            tally.n_fallback,
            tally.n_failed
        );
    }
    Ok(tally)
}

pub fn estimate_distribution(
    spec: &DistributionSpec,
    d: usize,
    n: u64,
    seed: u64,
) -> Result<EquilibriumDistribution> {
    Ok(sample_tally(spec, d, n, seed)?.to_distribution())
}

/// Expected number of internal equilibria and of stable ones.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Moments {
    pub expected: f64,
    pub expected_stable: f64,
    /// Standard error of `expected` from the sample variance of the count.
    pub stderr: f64,
}

/// `E = Σ m p[m]` and `SE = E / 2`.
pub fn moments(dist: &EquilibriumDistribution) -> Moments {
    let e = dist.expected();
    let second: f64 = dist
        .p
        .iter()
        .enumerate()
        .map(|(m, p)| (m * m) as f64 * p)
        .sum();
    let n = dist.n_samples.saturating_sub(dist.n_degenerate);
    let stderr = if n > 0 {
        ((second - e * e).max(0.0) / n as f64).sqrt()
    } else {
        0.0
    };
    Moments {
        expected: e,
        expected_stable: e / 2.0,
        stderr,
    }
}

pub fn estimate_moments(spec: &DistributionSpec, d: usize, n: u64, seed: u64) -> Result<Moments> {
    Ok(moments(&estimate_distribution(spec, d, n, seed)?))
}
