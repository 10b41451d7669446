//! Fixtures shared by the benchmarks in `benches/`.

use eqdist_core::sampling::{sample_gaps, sample_rng};
use eqdist_core::{build_game_polynomial, DistributionSpec, Family, RealPolynomial};

/// `count` gaussian game polynomials for group size `d`, reproducible from `seed`.
pub fn game_polynomials(d: usize, count: u64, seed: u64) -> Vec<RealPolynomial> {
    let spec = DistributionSpec::standard(Family::Gaussian);
    (0..count)
        .filter_map(|i| {
            build_game_polynomial(&sample_gaps(&spec, d, &mut sample_rng(seed, i))).ok()
        })
        .collect()
}
