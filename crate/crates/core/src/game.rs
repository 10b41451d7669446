//! d-player two-strategy games and their equilibrium polynomial.
//!
//! With `x` the frequency of strategy A and `y = x / (1 - x)`, the internal
//! rest points of the replicator dynamics are the positive roots of
//! `P(y) = Σ β_k C(d-1, k) y^k` where `β_k = a_k - b_k`.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::binomial;
use crate::polynomial::{count_positive_roots, normalize, positive_roots, RealPolynomial};

/// Payoffs of an A- and a B-strategist facing `k = 0..d-1` other A-strategists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PayoffTable {
    d: usize,
    a: Vec<f64>,
    b: Vec<f64>,
}

/// Payoff differences `β_k = a_k - b_k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GapVector {
    pub beta: Vec<f64>,
}

impl PayoffTable {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(domain(format!(
                "payoff rows differ in length ({} vs {})",
                a.len(),
                b.len()
            )));
        }
        if a.len() < 2 {
            return Err(domain("group size d must be at least 2"));
        }
        Ok(Self { d: a.len(), a, b })
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }
}

impl GapVector {
    pub fn new(beta: Vec<f64>) -> Result<Self> {
        if beta.len() < 2 {
            return Err(domain("group size d must be at least 2"));
        }
        Ok(Self { beta })
    }

    pub fn d(&self) -> usize {
        self.beta.len()
    }

    /// A table with the same gaps: `a = β`, `b = 0`.
    pub fn to_table(&self) -> PayoffTable {
        PayoffTable {
            d: self.d(),
            a: self.beta.clone(),
            b: vec![0.0; self.d()],
        }
    }
}

pub fn gaps(t: &PayoffTable) -> GapVector {
    GapVector {
        beta: t.a.iter().zip(&t.b).map(|(a, b)| a - b).collect(),
    }
}

/// Coefficients `β_k C(d-1, k)`, normalized.
pub fn build_game_polynomial(g: &GapVector) -> Result<RealPolynomial> {
    let n = g.d() - 1;
    let coeffs: Vec<f64> = g
        .beta
        .iter()
        .enumerate()
        .map(|(k, b)| b * binomial(n, k))
        .collect();
    normalize(&coeffs)
}

fn game_polynomial(t: &PayoffTable) -> Result<RealPolynomial> {
    build_game_polynomial(&gaps(t)).map_err(|e| match e {
        Error::AllZero => Error::Degenerate,
        other => other,
    })
}

pub fn count_internal_equilibria(t: &PayoffTable) -> Result<usize> {
    count_positive_roots(&game_polynomial(t)?)
}

/// Interior rest points `x* ∈ (0, 1)`, ascending.
pub fn equilibrium_frequencies(t: &PayoffTable) -> Result<Vec<f64>> {
    let p = game_polynomial(t)?;
    Ok(positive_roots(&p)?
        .into_iter()
        .map(|y| y / (1.0 + y))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn from_beta(beta: &[f64]) -> PayoffTable {
        GapVector::new(beta.to_vec()).unwrap().to_table()
    }

    #[test]
    fn gap_examples() {
        let t = PayoffTable::new(vec![1.0, 1.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(gaps(&t).beta, vec![0.0, 0.0]);
        let t = PayoffTable::new(vec![2.0, 0.0, 1.0], vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(gaps(&t).beta, vec![1.0, -1.0, 0.0]);
        assert!(PayoffTable::new(vec![1.0], vec![1.0]).is_err());
        assert!(PayoffTable::new(vec![1.0, 2.0], vec![1.0]).is_err());
    }

    #[test]
    fn polynomial_examples() {
        let g = GapVector::new(vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(
            build_game_polynomial(&g).unwrap().coeffs(),
            &[1.0, 2.0, 1.0]
        );
        let g = GapVector::new(vec![1.0, 0.0, 0.0, -1.0]).unwrap();
        assert_eq!(
            build_game_polynomial(&g).unwrap().coeffs(),
            &[1.0, 0.0, 0.0, -1.0]
        );
        let g = GapVector::new(vec![2.0, -1.0, 2.0]).unwrap();
        let p = build_game_polynomial(&g).unwrap();
        assert_eq!(p.coeffs(), &[2.0, -2.0, 2.0]);
        assert_eq!(crate::polynomial::sign_changes(p.coeffs()).unwrap(), 2);
        assert_eq!(count_positive_roots(&p).unwrap(), 0);
    }

    #[test]
    fn equilibrium_count_examples() {
        let t = PayoffTable::new(vec![0.0, 2.0], vec![1.0, 0.0]).unwrap();
        assert_eq!(count_internal_equilibria(&t).unwrap(), 1);
        let t = PayoffTable::new(vec![2.0, 3.0], vec![1.0, 0.0]).unwrap();
        assert_eq!(count_internal_equilibria(&t).unwrap(), 0);
        assert_eq!(
            count_internal_equilibria(&from_beta(&[1.0, -3.0, 1.0])).unwrap(),
            2
        );
    }

    #[test]
    fn degenerate_game_is_reported() {
        let t = PayoffTable::new(vec![1.0, 1.0, 1.0], vec![1.0, 1.0, 1.0]).unwrap();
        assert_eq!(count_internal_equilibria(&t), Err(Error::Degenerate));
        assert_eq!(equilibrium_frequencies(&t), Err(Error::Degenerate));
    }

    #[test]
    fn frequency_examples() {
        let x = equilibrium_frequencies(&from_beta(&[-1.0, 2.0])).unwrap();
        assert_eq!(x.len(), 1);
        assert!((x[0] - 1.0 / 3.0).abs() < 1e-12);
        assert!(equilibrium_frequencies(&from_beta(&[1.0, 3.0]))
            .unwrap()
            .is_empty());
        let x = equilibrium_frequencies(&from_beta(&[1.0, -3.0, 1.0])).unwrap();
        let s = 2.0 * 2f64.sqrt();
        let expect = [(3.0 - s) / (4.0 - s), (3.0 + s) / (4.0 + s)];
        assert!((x[0] - expect[0]).abs() < 1e-10 && (x[1] - expect[1]).abs() < 1e-10);
        assert!((x[0] - 0.1464).abs() < 1e-4 && (x[1] - 0.8536).abs() < 1e-4);
    }

    fn beta_strategy() -> impl Strategy<Value = Vec<f64>> {
        (2usize..=9).prop_flat_map(|d| proptest::collection::vec(-5.0f64..5.0, d))
    }

    proptest! {
        #[test]
        fn count_is_within_degree(beta in beta_strategy()) {
            if let Ok(n) = count_internal_equilibria(&from_beta(&beta)) {
                prop_assert!(n < beta.len());
            }
        }

        #[test]
        fn shift_invariance(beta in beta_strategy(), shift in -10.0f64..10.0) {
            let a: Vec<f64> = beta.iter().map(|b| b + shift).collect();
            let b = vec![shift; beta.len()];
            let shifted = PayoffTable::new(a, b).unwrap();
            let base = from_beta(&beta);
            if let (Ok(x), Ok(y)) = (count_internal_equilibria(&base), count_internal_equilibria(&shifted)) {
                prop_assert_eq!(x, y);
            }
        }

        #[test]
        fn positive_scaling_invariance(beta in beta_strategy(), c in 1e-3f64..1e3) {
            let scaled: Vec<f64> = beta.iter().map(|b| b * c).collect();
            if let (Ok(x), Ok(y)) = (
                count_internal_equilibria(&from_beta(&beta)),
                count_internal_equilibria(&from_beta(&scaled)),
            ) {
                prop_assert_eq!(x, y);
            }
        }

        #[test]
        fn frequencies_are_interior_and_increasing(beta in beta_strategy()) {
            let t = from_beta(&beta);
            if let (Ok(n), Ok(x)) = (count_internal_equilibria(&t), equilibrium_frequencies(&t)) {
                prop_assert_eq!(x.len(), n);
                for w in x.windows(2) {
                    prop_assert!(w[0] < w[1]);
                }
                let p = build_game_polynomial(&gaps(&t)).unwrap();
                for &xi in &x {
                    prop_assert!(xi > 0.0 && xi < 1.0);
                    let y = xi / (1.0 - xi);
                    // residual relative to the local scale of the terms
                    let scale: f64 = p.coeffs().iter().enumerate()
                        .map(|(k, c)| (c * y.powi(k as i32)).abs()).sum();
                    prop_assert!(p.eval(y).abs() <= 1e-8 * scale.max(p.max_abs()));
                }
            }
        }
    }
}
