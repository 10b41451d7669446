//! Distribution of the number of internal equilibria in random d-player
//! two-strategy evolutionary games, computed three ways: sampling payoff
//! tables and counting positive roots exactly, integrating closed-form root
//! densities, and bounding through sign-change combinatorics.

pub mod approx;
pub mod distribution;
pub mod error;
pub mod game;
pub mod integrals;
pub mod numeric;
pub mod polynomial;
pub mod sampling;
pub mod signs;

pub use approx::{expected_asymptotic, poisson_approx, ApproxResult};
pub use distribution::{DistributionSpec, EquilibriumDistribution, Family, Method};
pub use error::{Error, Result};
pub use game::{
    build_game_polynomial, count_internal_equilibria, equilibrium_frequencies, gaps, GapVector,
    PayoffTable,
};
pub use integrals::{
    default_points, distribution_closed, p_config, p_m_closed, symmetric_functions,
    vandermonde_abs, ClosedForm, ConfigTerm, IntegralEstimate, IntegrationOptions, MixedRootPoint,
    PointSet, RootConfiguration, INTEGRATION_GENERATOR,
};
pub use polynomial::{
    count_positive_roots, normalize, sign_changes, square_free, tally_roots_eigen,
    tally_roots_sturm, RealPolynomial, RootTally, SturmChain,
};
pub use sampling::{estimate_distribution, estimate_moments, sample_gaps, Moments, GENERATOR};
pub use signs::{
    descartes_bounds, entropy_bounds, p_kn_explicit, p_kn_initial, p_kn_oracle, p_kn_recursive,
    p_kn_symmetric, partial_binomial_sums, BoundSet, EntropyBounds, SignBias, SignChangeTable,
    SignMethod,
};
