//! Exact equilibrium-count probabilities as integrals over root positions.
//!
//! A degree-`n` polynomial with `m` positive roots, `k` complex-conjugate
//! pairs and `l = n - m - 2k` negative roots is parametrized by its roots
//! and a leading factor `a`. Changing variables from the coefficients to
//! `(a, roots)` gives a density proportional to `|a|^n |Δ|` times the product
//! of the coefficient densities, where `Δ` is the Vandermonde product. The
//! `a`-integral has a closed form for each distribution family; the root
//! integral is done by Monte Carlo after mapping the unbounded domain to the
//! unit cube.

use std::f64::consts::PI;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distribution::{DistributionSpec, EquilibriumDistribution, Family, Method};
use crate::error::{domain, Error, Result};
use crate::numeric::{binomial_row, compensated_sum, factorial, gamma_half, mix_seed};

const BLOCK: u64 = 1024;

/// Recorded in run metadata so integration results can be reproduced.
pub const INTEGRATION_GENERATOR: &str =
    "ChaCha8Rng (rand_chacha 0.9), key = seed mixed with (m, k), stream = block of 1024 points";

/// Default integration points: `10^6` up to `d = 3`, `10^7` beyond.
pub fn default_points(d: usize) -> u64 {
    if d <= 3 {
        1_000_000
    } else {
        10_000_000
    }
}

/// Root counts of a degree-`n` polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootConfiguration {
    pub n: usize,
    pub m: usize,
    pub k: usize,
}

impl RootConfiguration {
    pub fn new(n: usize, m: usize, k: usize) -> Result<Self> {
        if m > n || m + 2 * k > n {
            return Err(domain(format!(
                "no degree-{n} configuration with {m} positive roots and {k} complex pairs"
            )));
        }
        Ok(Self { n, m, k })
    }

    pub fn negatives(&self) -> usize {
        self.n - self.m - 2 * self.k
    }

    /// Real roots first (positive, then negative), then `(r, angle)` pairs.
    pub fn dimension(&self) -> usize {
        self.n
    }

    /// All configurations of degree `n`, ordered by `(m, k)`.
    pub fn all(n: usize) -> Vec<Self> {
        (0..=n)
            .flat_map(|m| (0..=(n - m) / 2).map(move |k| Self { n, m, k }))
            .collect()
    }

    /// `2^k / (m! k! l!)`: accounts for labelling the roots within each class.
    pub fn combinatorial_weight(&self) -> f64 {
        2f64.powi(self.k as i32)
            / (factorial(self.m) * factorial(self.k) * factorial(self.negatives()))
    }
}

/// Real roots `xs` (positives first) and complex roots `r e^{±iα}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixedRootPoint {
    pub xs: Vec<f64>,
    pub rs: Vec<f64>,
    pub alphas: Vec<f64>,
}

impl MixedRootPoint {
    pub fn new(xs: Vec<f64>, rs: Vec<f64>, alphas: Vec<f64>) -> Result<Self> {
        if rs.len() != alphas.len() {
            return Err(domain("each complex pair needs a modulus and an angle"));
        }
        Ok(Self { xs, rs, alphas })
    }

    pub fn degree(&self) -> usize {
        self.xs.len() + 2 * self.rs.len()
    }

    /// Whether the point lies in the open region of `cfg`.
    pub fn fits(&self, cfg: &RootConfiguration) -> bool {
        self.degree() == cfg.n
            && self.rs.len() == cfg.k
            && self.xs[..cfg.m].iter().all(|&x| x > 0.0)
            && self.xs[cfg.m..].iter().all(|&x| x < 0.0)
            && self.rs.iter().all(|&r| r > 0.0)
            && self.alphas.iter().all(|&a| a > 0.0 && a < PI)
    }
}

/// Elementary symmetric functions `σ_0 = 1, σ_1, ..., σ_n` of all roots.
pub fn symmetric_functions(p: &MixedRootPoint) -> Vec<f64> {
    let mut e = Vec::with_capacity(p.degree() + 1);
    symmetric_functions_into(p, &mut e);
    e
}

fn symmetric_functions_into(p: &MixedRootPoint, e: &mut Vec<f64>) {
    e.clear();
    e.push(1.0);
    for &x in &p.xs {
        e.push(0.0);
        for j in (1..e.len()).rev() {
            e[j] += x * e[j - 1];
        }
    }
    for (&r, &a) in p.rs.iter().zip(&p.alphas) {
        let s = 2.0 * r * a.cos();
        let q = r * r;
        e.push(0.0);
        e.push(0.0);
        for j in (1..e.len()).rev() {
            let two_back = if j >= 2 { e[j - 2] } else { 0.0 };
            e[j] += s * e[j - 1] + q * two_back;
        }
    }
}

/// `Π_{i<j} |z_i - z_j|` over all roots, conjugates included.
pub fn vandermonde_abs(p: &MixedRootPoint) -> f64 {
    let mut v = 1.0;
    for (i, &x) in p.xs.iter().enumerate() {
        for &y in &p.xs[i + 1..] {
            v *= (x - y).abs();
        }
        for (&r, &a) in p.rs.iter().zip(&p.alphas) {
            // |x - z| |x - z̄|
            v *= r * r - 2.0 * x * r * a.cos() + x * x;
        }
    }
    let zs: Vec<Complex64> =
        p.rs.iter()
            .zip(&p.alphas)
            .map(|(&r, &a)| Complex64::from_polar(r, a))
            .collect();
    for (i, z) in zs.iter().enumerate() {
        v *= 2.0 * z.im.abs();
        for w in &zs[i + 1..] {
            v *= ((z - w).norm() * (z - w.conj()).norm()).powi(2);
        }
    }
    v
}

/// Constant in front of the root integral after the `a`-integration, before
/// the combinatorial weight. `deltas` are `C(d-1, i)`.
pub fn family_constant(family: Family, d: usize) -> f64 {
    let deltas = binomial_row(d - 1);
    let prod: f64 = deltas.iter().product();
    match family {
        Family::Gaussian => gamma_half(d) / (PI.powf(d as f64 / 2.0) * prod),
        Family::UniformBeta => 2f64.powi(1 - d as i32) / (d as f64 * prod),
        Family::UniformPayoffs => 2.0 / (prod * prod),
    }
}

/// Root-dependent factor of the `a`-integral, given `σ` and `δ`.
///
/// Gaussian: `(Σ σ_i²/δ_i²)^{-d/2}`. Uniform gaps: `M^d` with
/// `M = min δ_i/|σ_i|` over nonzero `σ_i`. Uniform payoffs (triangular gaps):
/// `(-1)^d Σ_i (-1)^i K_i M^{2d-i} / (2d-i)` where `K_i` is the coefficient
/// of `x^i` in `Π_j (|σ_j| + δ_j x)`; this equals
/// `∫_0^M a^{d-1} Π_j (δ_j - a|σ_j|) da`.
pub fn a_integral(family: Family, sigma: &[f64], deltas: &[f64]) -> f64 {
    let d = sigma.len();
    match family {
        Family::Gaussian => {
            let s: f64 = sigma
                .iter()
                .zip(deltas)
                .map(|(s, dl)| (s / dl) * (s / dl))
                .sum();
            s.powf(-(d as f64) / 2.0)
        }
        Family::UniformBeta => truncation(sigma, deltas).powi(d as i32),
        Family::UniformPayoffs => {
            let m = truncation(sigma, deltas);
            let mut kc = vec![0.0; d + 1];
            kc[0] = 1.0;
            for (j, (&s, &dl)) in sigma.iter().zip(deltas).enumerate() {
                for i in (0..=j + 1).rev() {
                    let lower = if i > 0 { kc[i - 1] * dl } else { 0.0 };
                    kc[i] = kc[i] * s.abs() + lower;
                }
            }
            let mut terms: Vec<f64> = (0..=d)
                .map(|i| {
                    let sign = if (d + i) % 2 == 0 { 1.0 } else { -1.0 };
                    sign * kc[i] * m.powi((2 * d - i) as i32) / (2 * d - i) as f64
                })
                .collect();
            compensated_sum(&mut terms).max(0.0)
        }
    }
}

/// `min δ_i / |σ_i|` over `σ_i ≠ 0`; `σ_0 = 1` keeps it finite.
fn truncation(sigma: &[f64], deltas: &[f64]) -> f64 {
    sigma
        .iter()
        .zip(deltas)
        .filter(|(s, _)| **s != 0.0)
        .map(|(s, d)| d / s.abs())
        .fold(f64::INFINITY, f64::min)
}

/// `r_1 ⋯ r_k · A(σ) · Δ` with `A` from [`a_integral`]; constants excluded.
pub fn integrand(cfg: &RootConfiguration, family: Family, p: &MixedRootPoint) -> Result<f64> {
    if p.degree() != cfg.n || p.rs.len() != cfg.k {
        return Err(domain("root point does not match the configuration"));
    }
    let sigma = symmetric_functions(p);
    let deltas = binomial_row(cfg.n);
    let v = p.rs.iter().product::<f64>() * a_integral(family, &sigma, &deltas) * vandermonde_abs(p);
    if !v.is_finite() {
        return Err(Error::NumericOverflow("root-space integrand"));
    }
    Ok(v)
}

/// Map `u ∈ [0,1)^n` to a root point of `cfg` and return the Jacobian:
/// `x = ±t/(1-t)`, `r = t/(1-t)`, `α = π t`.
pub fn map_unit_point(cfg: &RootConfiguration, u: &[f64]) -> (MixedRootPoint, f64) {
    let mut p = MixedRootPoint {
        xs: Vec::with_capacity(cfg.n - 2 * cfg.k),
        rs: Vec::with_capacity(cfg.k),
        alphas: Vec::with_capacity(cfg.k),
    };
    let jac = map_into(cfg, u, &mut p);
    (p, jac)
}

fn map_into(cfg: &RootConfiguration, u: &[f64], p: &mut MixedRootPoint) -> f64 {
    p.xs.clear();
    p.rs.clear();
    p.alphas.clear();
    let real = cfg.n - 2 * cfg.k;
    let mut jac = 1.0;
    for (i, &t) in u[..real].iter().enumerate() {
        let w = 1.0 / (1.0 - t);
        let x = t * w;
        p.xs.push(if i < cfg.m { x } else { -x });
        jac *= w * w;
    }
    for pair in u[real..cfg.n].chunks_exact(2) {
        let w = 1.0 / (1.0 - pair[0]);
        p.rs.push(pair[0] * w);
        p.alphas.push(PI * pair[1]);
        jac *= w * w * PI;
    }
    jac
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointSet {
    /// Independent uniform points.
    #[default]
    Random,
    /// Additive recurrence with the generalized golden ratio, randomly shifted.
    Kronecker,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegrationOptions {
    pub n_points: u64,
    pub seed: u64,
    pub point_set: PointSet,
}

impl IntegrationOptions {
    pub fn new(n_points: u64, seed: u64) -> Self {
        Self {
            n_points,
            seed,
            point_set: PointSet::Random,
        }
    }

    pub fn with_point_set(mut self, point_set: PointSet) -> Self {
        self.point_set = point_set;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IntegralEstimate {
    pub value: f64,
    pub stderr: f64,
    pub n_points: u64,
    /// Points whose integrand overflowed and were left out.
    pub n_discarded: u64,
    /// Set when `stderr > value / 10`.
    pub insufficient_points: bool,
}

impl IntegralEstimate {
    fn exact(value: f64) -> Self {
        Self {
            value,
            stderr: 0.0,
            n_points: 0,
            n_discarded: 0,
            insufficient_points: false,
        }
    }

    /// Fraction of points discarded for numeric overflow.
    pub fn discard_rate(&self) -> f64 {
        if self.n_points == 0 {
            0.0
        } else {
            self.n_discarded as f64 / self.n_points as f64
        }
    }
}

/// Running mean and sum of squared deviations.
#[derive(Debug, Clone, Copy, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
    discarded: u64,
}

impl Moments {
    fn push(&mut self, x: f64) {
        self.count += 1;
        let delta = x - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (x - self.mean);
    }

    fn merge(self, other: Self) -> Self {
        if other.count == 0 {
            return Self {
                discarded: self.discarded + other.discarded,
                ..self
            };
        }
        if self.count == 0 {
            return Self {
                discarded: self.discarded + other.discarded,
                ..other
            };
        }
        let n = self.count + other.count;
        let delta = other.mean - self.mean;
        Self {
            count: n,
            mean: self.mean + delta * other.count as f64 / n as f64,
            m2: self.m2
                + other.m2
                + delta * delta * (self.count as f64 * other.count as f64) / n as f64,
            discarded: self.discarded + other.discarded,
        }
    }
}

/// Additive-recurrence directions `φ_n^{-(j+1)}` with `φ_n^{n+1} = φ_n + 1`.
fn kronecker_directions(dim: usize) -> Vec<f64> {
    let mut phi = 2.0f64;
    for _ in 0..64 {
        phi = (1.0 + phi).powf(1.0 / (dim as f64 + 1.0));
    }
    (1..=dim).map(|j| phi.powi(-(j as i32))).collect()
}

/// Monte Carlo estimate of `p_{m,2k,l}`.
pub fn p_config(
    cfg: &RootConfiguration,
    spec: &DistributionSpec,
    opts: &IntegrationOptions,
) -> Result<IntegralEstimate> {
    let n = cfg.n;
    if n == 0 {
        return Err(domain("group size d must be at least 2"));
    }
    if opts.n_points == 0 {
        return Err(domain("integration needs at least one point"));
    }
    let d = n + 1;
    // The scale drops out analytically; only the family enters.
    let family = spec.family;
    let weight = cfg.combinatorial_weight() * family_constant(family, d);
    let deltas = binomial_row(n);
    let blocks = opts.n_points.div_ceil(BLOCK);
    let directions = kronecker_directions(n);
    let shift: Vec<f64> = {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(u64::MAX);
        (0..n).map(|_| rng.random::<f64>()).collect()
    };

    let partials: Vec<Moments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
            rng.set_stream(b);
            let mut u = vec![0.0; n];
            let mut point = MixedRootPoint {
                xs: Vec::with_capacity(n),
                rs: Vec::with_capacity(cfg.k),
                alphas: Vec::with_capacity(cfg.k),
            };
            let mut sigma = Vec::with_capacity(n + 1);
            let mut acc = Moments::default();
            for i in b * BLOCK..((b + 1) * BLOCK).min(opts.n_points) {
                match opts.point_set {
                    PointSet::Random => u.iter_mut().for_each(|x| *x = rng.random::<f64>()),
                    PointSet::Kronecker => {
                        for (j, x) in u.iter_mut().enumerate() {
                            *x = (shift[j] + (i + 1) as f64 * directions[j]).fract();
                        }
                    }
                }
                let jac = map_into(cfg, &u, &mut point);
                symmetric_functions_into(&point, &mut sigma);
                let v = point.rs.iter().product::<f64>()
                    * a_integral(family, &sigma, &deltas)
                    * vandermonde_abs(&point)
                    * jac
                    * weight;
                if v.is_finite() {
                    acc.push(v);
                } else {
                    acc.discarded += 1;
                }
            }
            acc
        })
        .collect();

    let total = partials
        .into_iter()
        .fold(Moments::default(), Moments::merge);
    if total.count == 0 {
        return Err(Error::NumericOverflow("every integration point"));
    }
    let stderr = if total.count > 1 {
        (total.m2 / (total.count - 1) as f64 / total.count as f64).sqrt()
    } else {
        0.0
    };
    // discarded points carry zero weight in the mean
    let value = total.mean * total.count as f64 / (total.count + total.discarded) as f64;
    if total.discarded > 0 {
        log::warn!(
            "configuration (m={}, k={}): {} of {} points overflowed",
            cfg.m,
            cfg.k,
            total.discarded,
            opts.n_points
        );
    }
    Ok(IntegralEstimate {
        value,
        stderr,
        n_points: opts.n_points,
        n_discarded: total.discarded,
        insufficient_points: stderr > value / 10.0,
    })
}

/// Seed for configuration `(m, k)` derived from the run seed.
pub fn config_seed(seed: u64, m: usize, k: usize) -> u64 {
    mix_seed(seed, ((m as u64) << 32 | k as u64) + 1)
}

/// One `p_{m,2k,l}` term of a closed-form run.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigTerm {
    pub m: usize,
    pub k: usize,
    pub negatives: usize,
    pub estimate: IntegralEstimate,
}

/// `p_m = Σ_k p_{m,2k,d-1-m-2k}` with stderr combined in quadrature.
pub fn p_m_closed(
    d: usize,
    m: usize,
    spec: &DistributionSpec,
    opts: &IntegrationOptions,
) -> Result<IntegralEstimate> {
    Ok(combine(&config_terms(d, m, spec, opts)?))
}

fn config_terms(
    d: usize,
    m: usize,
    spec: &DistributionSpec,
    opts: &IntegrationOptions,
) -> Result<Vec<ConfigTerm>> {
    if d < 2 {
        return Err(domain("group size d must be at least 2"));
    }
    if m >= d {
        return Err(domain(format!("m = {m} exceeds d - 1 = {}", d - 1)));
    }
    let n = d - 1;
    (0..=(n - m) / 2)
        .map(|k| {
            let cfg = RootConfiguration::new(n, m, k)?;
            let o = IntegrationOptions {
                seed: config_seed(opts.seed, m, k),
                ..*opts
            };
            Ok(ConfigTerm {
                m,
                k,
                negatives: cfg.negatives(),
                estimate: p_config(&cfg, spec, &o)?,
            })
        })
        .collect()
}

fn combine(terms: &[ConfigTerm]) -> IntegralEstimate {
    let value = terms.iter().map(|t| t.estimate.value).sum();
    let stderr = terms
        .iter()
        .map(|t| t.estimate.stderr.powi(2))
        .sum::<f64>()
        .sqrt();
    IntegralEstimate {
        value,
        stderr,
        n_points: terms.iter().map(|t| t.estimate.n_points).sum(),
        n_discarded: terms.iter().map(|t| t.estimate.n_discarded).sum(),
        insufficient_points: stderr > value / 10.0,
    }
}

/// Full closed-form result with per-configuration detail.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClosedForm {
    /// `p[0]` is the complement `1 - Σ_{m>=1} p[m]`.
    pub distribution: EquilibriumDistribution,
    pub terms: Vec<ConfigTerm>,
    /// `p_0` integrated directly.
    pub p0_direct: IntegralEstimate,
    /// `p0_direct - p[0]`.
    pub p0_discrepancy: f64,
}

impl ClosedForm {
    pub fn term(&self, m: usize, k: usize) -> Option<&ConfigTerm> {
        self.terms.iter().find(|t| t.m == m && t.k == k)
    }

    /// Total over every configuration, including the direct `p_0`.
    pub fn total_probability(&self) -> IntegralEstimate {
        combine(&self.terms)
    }

    /// Points discarded across all configurations, as a fraction.
    pub fn discard_rate(&self) -> f64 {
        self.total_probability().discard_rate()
    }
}

pub fn distribution_closed(
    d: usize,
    spec: &DistributionSpec,
    opts: &IntegrationOptions,
) -> Result<ClosedForm> {
    if d < 2 {
        return Err(domain("group size d must be at least 2"));
    }
    let mut terms = Vec::new();
    let mut per_m = Vec::with_capacity(d);
    for m in 0..d {
        let t = config_terms(d, m, spec, opts)?;
        per_m.push(combine(&t));
        terms.extend(t);
    }
    let p0_direct = per_m[0];
    let rest: f64 = per_m[1..].iter().map(|e| e.value).sum();
    let rest_var: f64 = per_m[1..].iter().map(|e| e.stderr.powi(2)).sum();
    let p0 = IntegralEstimate {
        value: 1.0 - rest,
        stderr: rest_var.sqrt(),
        ..IntegralEstimate::exact(0.0)
    };
    let mut p = vec![p0.value];
    let mut stderr = vec![p0.stderr];
    for e in &per_m[1..] {
        p.push(e.value);
        stderr.push(e.stderr);
    }
    Ok(ClosedForm {
        distribution: EquilibriumDistribution {
            d,
            p,
            stderr,
            n_samples: 0,
            n_degenerate: 0,
            method: Method::ClosedForm,
        },
        terms,
        p0_direct,
        p0_discrepancy: p0_direct.value - p0.value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use ::approx::assert_abs_diff_eq;
    use proptest::prelude::{prop_assert, proptest, Just, Strategy};

    fn point(xs: &[f64], rs: &[f64], alphas: &[f64]) -> MixedRootPoint {
        MixedRootPoint::new(xs.to_vec(), rs.to_vec(), alphas.to_vec()).unwrap()
    }

    #[test]
    fn configurations() {
        let all = RootConfiguration::all(3);
        assert_eq!(all.len(), 6);
        assert!(RootConfiguration::new(3, 2, 1).is_err());
        assert_eq!(RootConfiguration::new(3, 1, 1).unwrap().negatives(), 0);
        assert_eq!(
            RootConfiguration::new(4, 1, 1)
                .unwrap()
                .combinatorial_weight(),
            2.0
        );
    }

    #[test]
    fn symmetric_function_examples() {
        let s = symmetric_functions(&point(&[], &[1.0], &[PI / 2.0]));
        assert_abs_diff_eq!(s[0], 1.0);
        assert_abs_diff_eq!(s[1], 0.0, epsilon = 1e-15);
        assert_abs_diff_eq!(s[2], 1.0);
        assert_eq!(
            symmetric_functions(&point(&[1.0, 2.0], &[], &[])),
            vec![1.0, 3.0, 2.0]
        );
        let s = symmetric_functions(&point(&[1.0], &[1.0], &[PI / 3.0]));
        for (a, b) in s.iter().zip([1.0, 2.0, 2.0, 1.0]) {
            assert_abs_diff_eq!(*a, b, epsilon = 1e-14);
        }
    }

    #[test]
    fn vandermonde_examples() {
        assert_eq!(vandermonde_abs(&point(&[1.0, 3.0], &[], &[])), 2.0);
        assert_abs_diff_eq!(
            vandermonde_abs(&point(&[], &[1.0], &[PI / 2.0])),
            2.0,
            epsilon = 1e-15
        );
        assert_abs_diff_eq!(
            vandermonde_abs(&point(&[0.0], &[1.0], &[PI / 2.0])),
            2.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn integrand_examples() {
        let cfg = RootConfiguration::new(2, 2, 0).unwrap();
        assert_eq!(
            integrand(&cfg, Family::Gaussian, &point(&[1.0, 1.0], &[], &[])).unwrap(),
            0.0
        );
        let v = integrand(&cfg, Family::Gaussian, &point(&[1.0, 2.0], &[], &[])).unwrap();
        assert_abs_diff_eq!(v, 7.25f64.powf(-1.5), epsilon = 1e-15);
        // σ_1 = 0 is excluded from the truncation minimum
        let cfg = RootConfiguration::new(2, 0, 1).unwrap();
        let p = point(&[], &[0.5], &[PI / 2.0]);
        assert!(symmetric_functions(&p)[1].abs() < 1e-15);
        let v = integrand(&cfg, Family::UniformBeta, &p).unwrap();
        assert!(v.is_finite() && v > 0.0);
    }

    /// `∫_0^M a^{d-1} Π (δ_j - a|σ_j|) da` by Gauss-Legendre, exact for this
    /// polynomial degree.
    fn triangular_by_quadrature(sigma: &[f64], deltas: &[f64]) -> f64 {
        let d = sigma.len();
        let m = truncation(sigma, deltas);
        // 8-point rule is exact up to degree 15 (2d - 1 for d <= 8)
        let nodes = [
            (0.183_434_642_495_649_8, 0.362_683_783_378_362),
            (0.525_532_409_916_329, 0.313_706_645_877_887_3),
            (0.796_666_477_413_626_7, 0.222_381_034_453_374_5),
            (0.960_289_856_497_536_3, 0.101_228_536_290_376_3),
        ];
        let f = |a: f64| {
            a.powi(d as i32 - 1)
                * sigma
                    .iter()
                    .zip(deltas)
                    .map(|(s, dl)| dl - a * s.abs())
                    .product::<f64>()
        };
        let mut acc = 0.0;
        for (x, w) in nodes {
            for s in [-x, x] {
                acc += w * f(0.5 * m * (s + 1.0));
            }
        }
        0.5 * m * acc
    }

    #[test]
    fn alternating_sum_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 2..=6 {
            let deltas = binomial_row(d - 1);
            for _ in 0..2000 {
                let sigma: Vec<f64> = (0..d)
                    .map(|i| {
                        if i == 0 {
                            1.0
                        } else {
                            rng.random_range(-8.0..8.0)
                        }
                    })
                    .collect();
                let a = a_integral(Family::UniformPayoffs, &sigma, &deltas);
                let b = triangular_by_quadrature(&sigma, &deltas);
                assert!((a - b).abs() <= 1e-9 * b.abs() + 1e-15, "d={d} {a} {b}");
            }
        }
    }

    #[test]
    fn scale_never_enters() {
        let cfg = RootConfiguration::new(2, 1, 0).unwrap();
        let opts = IntegrationOptions::new(20_000, 3);
        for family in Family::ALL {
            let a = p_config(&cfg, &DistributionSpec::new(family, 1.0).unwrap(), &opts).unwrap();
            let b = p_config(&cfg, &DistributionSpec::new(family, 7.0).unwrap(), &opts).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn linear_case_is_one_half() {
        for family in Family::ALL {
            let spec = DistributionSpec::standard(family);
            let cf = distribution_closed(2, &spec, &IntegrationOptions::new(200_000, 1)).unwrap();
            let p = &cf.distribution.p;
            assert!(
                (p[1] - 0.5).abs() < 5.0 * cf.distribution.stderr[1],
                "{family}: {p:?}"
            );
            assert!((cf.p0_direct.value - 0.5).abs() < 5.0 * cf.p0_direct.stderr);
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let cfg = RootConfiguration::new(3, 1, 1).unwrap();
        let spec = DistributionSpec::standard(Family::Gaussian);
        for ps in [PointSet::Random, PointSet::Kronecker] {
            let opts = IntegrationOptions::new(50_000, 11).with_point_set(ps);
            let run = |t| {
                rayon::ThreadPoolBuilder::new()
                    .num_threads(t)
                    .build()
                    .unwrap()
                    .install(|| p_config(&cfg, &spec, &opts).unwrap())
            };
            let (a, b) = (run(1), run(3));
            assert_eq!(a.value.to_bits(), b.value.to_bits());
            assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        }
    }

    #[test]
    fn kronecker_directions_are_irrational_steps() {
        let g = kronecker_directions(1);
        assert_abs_diff_eq!(g[0], 2.0 / (1.0 + 5f64.sqrt()), epsilon = 1e-12);
        let g = kronecker_directions(4);
        assert!(g.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn mapping_lands_in_the_configuration() {
        let cfg = RootConfiguration::new(5, 2, 1).unwrap();
        let (p, jac) = map_unit_point(&cfg, &[0.2, 0.7, 0.4, 0.5, 0.5]);
        assert!(p.fits(&cfg));
        assert!(jac > 0.0);
        assert_abs_diff_eq!(p.xs[1], 7.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.xs[2], -2.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.rs[0], 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(p.alphas[0], PI / 2.0, epsilon = 1e-12);
    }

    fn arb_point() -> impl Strategy<Value = (RootConfiguration, Vec<f64>)> {
        (1usize..=5)
            .prop_flat_map(|n| (Just(n), 0..=n))
            .prop_flat_map(|(n, m)| (Just(n), Just(m), 0..=(n - m) / 2))
            .prop_flat_map(|(n, m, k)| {
                (
                    Just(RootConfiguration { n, m, k }),
                    proptest::collection::vec(0.01f64..0.99, n),
                )
            })
    }

    proptest! {
        #[test]
        fn integrand_is_nonnegative((cfg, u) in arb_point()) {
            let (p, _) = map_unit_point(&cfg, &u);
            for family in Family::ALL {
                prop_assert!(integrand(&cfg, family, &p).unwrap() >= 0.0);
            }
        }

        #[test]
        fn integrand_is_permutation_symmetric((cfg, u) in arb_point(), seed in 0u64..1000) {
            let (p, _) = map_unit_point(&cfg, &u);
            let mut q = p.clone();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let m = cfg.m;
            // shuffle positives, negatives and pairs separately
            for i in (1..m).rev() {
                q.xs.swap(i, rng.random_range(0..=i));
            }
            let real = q.xs.len();
            for i in (m + 1..real).rev() {
                q.xs.swap(i, rng.random_range(m..=i));
            }
            for i in (1..cfg.k).rev() {
                let j = rng.random_range(0..=i);
                q.rs.swap(i, j);
                q.alphas.swap(i, j);
            }
            for family in Family::ALL {
                let a = integrand(&cfg, family, &p).unwrap();
                let b = integrand(&cfg, family, &q).unwrap();
                prop_assert!((a - b).abs() <= 1e-9 * a.abs().max(1e-300));
            }
        }
    }
}
