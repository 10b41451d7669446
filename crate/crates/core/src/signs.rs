//! Probability that a random sign sequence has a given number of sign
//! changes, and the bounds on equilibrium counts that follow from Descartes'
//! rule of signs.
//!
//! `p_{k,n}` is the probability that `n + 1` independent signs, each positive
//! with probability `alpha`, show exactly `k` changes.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::numeric::{binary_entropy, binomial, binomial_signed, binomial_u128, multinomial3};

/// Largest `n` for exhaustive enumeration (`2^{n+1}` patterns).
pub const ORACLE_MAX_N: usize = 24;

/// Multiplicative slack in the upper entropy bound.
pub const ENTROPY_DELTA: f64 = 0.98;

const SERIES_BAND: f64 = 1e-6;

/// Probability that a single coefficient is positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SignBias {
    alpha: f64,
}

impl SignBias {
    pub fn new(alpha: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&alpha) {
            return Err(domain(format!("alpha must lie in [0, 1], got {alpha}")));
        }
        Ok(Self { alpha })
    }

    pub fn symmetric() -> Self {
        Self { alpha: 0.5 }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn is_symmetric(&self) -> bool {
        self.alpha == 0.5
    }

    fn is_degenerate(&self) -> bool {
        self.alpha == 0.0 || self.alpha == 1.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignMethod {
    Symmetric,
    Initial,
    Recursive,
    Explicit,
    Oracle,
}

impl SignMethod {
    pub fn as_str(self) -> &'static str {
        match self {
            SignMethod::Symmetric => "symmetric",
            SignMethod::Initial => "initial",
            SignMethod::Recursive => "recursive",
            SignMethod::Explicit => "explicit",
            SignMethod::Oracle => "oracle",
        }
    }
}

/// Triangular table `p_{k,n}` for `0 <= k <= n <= n_max`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignChangeTable {
    pub n_max: usize,
    pub alpha: SignBias,
    pub method: SignMethod,
    rows: Vec<Vec<f64>>,
}

impl SignChangeTable {
    /// Fill the table with one of the direct methods. The `Initial` method
    /// only covers `k ∈ {0, 1, n-1, n}` and is rejected here.
    pub fn build(alpha: SignBias, n_max: usize, method: SignMethod) -> Result<Self> {
        let rows = match method {
            SignMethod::Recursive => return Ok(p_kn_recursive(alpha, n_max)),
            SignMethod::Symmetric => {
                if !alpha.is_symmetric() {
                    return Err(domain("the symmetric table requires alpha = 1/2"));
                }
                (0..=n_max)
                    .map(|n| (0..=n).map(|k| p_kn_symmetric(k, n).unwrap()).collect())
                    .collect()
            }
            SignMethod::Explicit => (0..=n_max)
                .map(|n| (0..=n).map(|k| p_kn_explicit(alpha, k, n)).collect())
                .collect::<Result<Vec<Vec<f64>>>>()?,
            SignMethod::Oracle if n_max > ORACLE_MAX_N => {
                return Err(Error::TooLarge {
                    n: n_max,
                    cap: ORACLE_MAX_N,
                });
            }
            SignMethod::Oracle => (0..=n_max)
                .map(|n| oracle_row(alpha, n))
                .collect::<Result<Vec<Vec<f64>>>>()?,
            SignMethod::Initial => {
                return Err(domain("initial values do not fill a full table"));
            }
        };
        Ok(Self {
            n_max,
            alpha,
            method,
            rows,
        })
    }

    /// `p_{k,n}`, zero outside `0 <= k <= n`.
    pub fn get(&self, k: usize, n: usize) -> f64 {
        self.rows
            .get(n)
            .and_then(|row| row.get(k))
            .copied()
            .unwrap_or(0.0)
    }

    pub fn row(&self, n: usize) -> &[f64] {
        &self.rows[n]
    }
}

/// `C(n, k) / 2^n`.
pub fn p_kn_symmetric(k: usize, n: usize) -> Result<f64> {
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    Ok(binomial(n, k) / 2f64.powi(n as i32))
}

/// Closed forms for `k ∈ {0, 1, n-1, n}`.
pub fn p_kn_initial(alpha: SignBias, n: usize, k: usize) -> Result<f64> {
    if n == 0 {
        return Err(domain("initial values are defined for n >= 1"));
    }
    let a = alpha.alpha;
    let b = 1.0 - a;
    let ab = a * b;
    if k == 0 {
        return Ok(a.powi(n as i32 + 1) + b.powi(n as i32 + 1));
    }
    if k == 1 {
        return Ok(p_one_change(a, n));
    }
    if k == n {
        return Ok(if n % 2 == 0 {
            ab.powi(n as i32 / 2)
        } else {
            2.0 * ab.powi((n as i32 + 1) / 2)
        });
    }
    if k + 1 == n {
        if n % 2 == 0 {
            return Ok(n as f64 * ab.powi(n as i32 / 2));
        }
        let h = (n as i32 + 1) / 2;
        // a^h b^h [h (a/b + b/a) + (n - 1)] with the ratios multiplied through
        let sym = h as f64 * ab.powi(h - 1) * (a * a + b * b);
        return Ok(sym + (n as f64 - 1.0) * ab.powi(h));
    }
    Err(domain(format!(
        "initial values cover k in {{0, 1, n-1, n}}, got k = {k}, n = {n}"
    )))
}

/// `2ab((1-a)^n - a^n)/(1-2a)`, with the removable singularity at `a = 1/2`
/// resolved by the exact odd-power expansion in `eps = 1/2 - a`.
fn p_one_change(a: f64, n: usize) -> f64 {
    let b = 1.0 - a;
    if (1.0 - 2.0 * a).abs() < SERIES_BAND {
        let eps = 0.5 - a;
        let mut s = 0.0;
        for j in (1..=n).step_by(2) {
            s += binomial(n, j) * 0.5f64.powi((n - j) as i32) * eps.powi(j as i32 - 1);
        }
        2.0 * a * b * s
    } else {
        2.0 * a * b * (b.powi(n as i32) - a.powi(n as i32)) / (1.0 - 2.0 * a)
    }
}

/// Fill `p_{k,n}` for `n <= n_max` with
/// `p_{k,n} = a(1-a)(p_{k-2,n-2} - p_{k,n-2}) + p_{k,n-1}`.
pub fn p_kn_recursive(alpha: SignBias, n_max: usize) -> SignChangeTable {
    let a = alpha.alpha;
    let ab = a * (1.0 - a);
    let mut rows: Vec<Vec<f64>> = vec![vec![1.0]];
    if n_max >= 1 {
        rows.push(vec![a * a + (1.0 - a) * (1.0 - a), 2.0 * ab]);
    }
    let at = |rows: &Vec<Vec<f64>>, k: isize, n: usize| -> f64 {
        if k < 0 {
            return 0.0;
        }
        rows[n].get(k as usize).copied().unwrap_or(0.0)
    };
    for n in 2..=n_max {
        let row: Vec<f64> = (0..=n as isize)
            .map(|k| ab * (at(&rows, k - 2, n - 2) - at(&rows, k, n - 2)) + at(&rows, k, n - 1))
            .collect();
        rows.push(row);
    }
    SignChangeTable {
        n_max,
        alpha,
        method: SignMethod::Recursive,
        rows,
    }
}

/// Alternating multinomial-sum closed form in `β = a(1-a)`.
pub fn p_kn_explicit(alpha: SignBias, k: usize, n: usize) -> Result<f64> {
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    if alpha.is_degenerate() {
        return Ok(if k == 0 { 1.0 } else { 0.0 });
    }
    if alpha.is_symmetric() {
        return p_kn_symmetric(k, n);
    }
    let beta = alpha.alpha * (1.0 - alpha.alpha);
    let (n_i, k_i) = (n as i64, k as i64);
    let sign = |e: i64| if e.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    let mut terms = Vec::new();
    if k % 2 == 0 {
        let kp = k_i / 2;
        for m in (n_i + 1) / 2..=n_i {
            let c = multinomial3(m, kp, n_i - kp - m, 2 * m - n_i);
            if c == 0.0 {
                continue;
            }
            let w = (n_i - k_i + 1) as f64 / (2 * m - n_i + 1) as f64;
            terms.push(w * c * sign(n_i - kp - m) * beta.powi((n_i - m) as i32));
        }
        if n % 2 == 1 {
            let c = (n_i - 1) / 2;
            let binom = binomial_signed(c, kp) as f64;
            terms.push(2.0 * binom * sign(c - kp + 1) * beta.powi(((n_i + 1) / 2) as i32));
        }
    } else {
        let kp = (k_i - 1) / 2;
        for m in n_i / 2..=n_i {
            let c = multinomial3(m, kp, n_i - kp - m - 1, 2 * m - n_i + 1);
            if c == 0.0 {
                continue;
            }
            terms.push(2.0 * c * sign(n_i - kp - m - 1) * beta.powi((n_i - m) as i32));
        }
    }
    Ok(crate::numeric::compensated_sum(&mut terms))
}

/// Enumerate every sign pattern of length `n + 1` and bin by change count.
pub fn oracle_row(alpha: SignBias, n: usize) -> Result<Vec<f64>> {
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge {
            n,
            cap: ORACLE_MAX_N,
        });
    }
    let a = alpha.alpha;
    let pos_pow: Vec<f64> = (0..=n + 1).map(|i| a.powi(i as i32)).collect();
    let neg_pow: Vec<f64> = (0..=n + 1).map(|i| (1.0 - a).powi(i as i32)).collect();
    let len = n as u32 + 1;
    let change_mask: u32 = if n == 0 { 0 } else { (1u32 << n) - 1 };
    // bin by (changes, positives) with integer counts, then weight
    let mut bins = vec![vec![0u64; n + 2]; n + 1];
    for bits in 0u32..(1u32 << len) {
        let changes = ((bits ^ (bits >> 1)) & change_mask).count_ones() as usize;
        let positives = bits.count_ones() as usize;
        bins[changes][positives] += 1;
    }
    Ok(bins
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(pos, &c)| c as f64 * pos_pow[pos] * neg_pow[n + 1 - pos])
                .sum()
        })
        .collect())
}

/// `p_{k,n}` by exhaustive enumeration.
pub fn p_kn_oracle(alpha: SignBias, k: usize, n: usize) -> Result<f64> {
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    Ok(oracle_row(alpha, n)?[k])
}

/// `(Σ_{j>=k, j even} C(n,j), Σ_{j>=k, j odd} C(n,j))`.
pub fn partial_binomial_sums(n: usize, k: usize) -> Result<(u128, u128)> {
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    let head: i128 = (0..=n - k)
        .map(|j| binomial_u128(n as u64, j as u64) as i128)
        .sum();
    let tail = binomial_signed(n as i64 - 1, k as i64 - 1);
    let signed = if k % 2 == 0 { tail } else { -tail };
    let even = (head + signed) / 2;
    let odd = (head - signed) / 2;
    Ok((even as u128, odd as u128))
}

/// Two-sided bounds on `Σ_{j<=k} C(n, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EntropyBounds {
    pub lower: f64,
    pub upper: f64,
    /// When `n` is even and `1 <= k <= n/2`: an upper bound on `Σ_{j<k} C(n, j)`.
    pub lovasz_upper: Option<f64>,
}

/// Entropy bounds for `k <= n/2`; for larger `k` the same bounds applied to
/// the complementary sum `2^n - Σ_{j<=n-k-1} C(n, j)`. Endpoints where the
/// bound degenerates (an empty or single-term sum) are returned exactly.
pub fn entropy_bounds(n: usize, k: usize) -> Result<EntropyBounds> {
    if k > n {
        return Err(domain(format!("k = {k} exceeds n = {n}")));
    }
    let total = 2f64.powi(n as i32);
    let (lower, upper) = if 2 * k <= n {
        lower_half_bounds(n, k)
    } else {
        let (lo, hi) = if k == n {
            (0.0, 0.0)
        } else {
            lower_half_bounds(n, n - k - 1)
        };
        (total - hi, total - lo)
    };
    let lovasz_upper = (n % 2 == 0 && k >= 1 && 2 * k <= n)
        .then(|| total / 2.0 * binomial(n, k) / binomial(n, n / 2));
    Ok(EntropyBounds {
        lower,
        upper,
        lovasz_upper,
    })
}

fn lower_half_bounds(n: usize, k: usize) -> (f64, f64) {
    if k == 0 {
        return (1.0, 1.0);
    }
    let s = k as f64 / n as f64;
    let h = 2f64.powf(n as f64 * binary_entropy(s));
    let lower = h / (8.0 * k as f64 * (1.0 - s)).sqrt();
    (lower, ENTROPY_DELTA * h)
}

/// Bounds on `p_m` implied by Descartes' rule of signs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundSet {
    pub d: usize,
    pub alpha: SignBias,
    /// `upper[m]`: probability that the sign changes number `m, m+2, ...`.
    pub upper: Vec<f64>,
    pub lower_p0: f64,
    pub lower_p1: f64,
    pub upper_pd2: f64,
    pub upper_pd1: f64,
}

impl BoundSet {
    /// Lower bound for every `m` (zero where none applies).
    pub fn lower(&self) -> Vec<f64> {
        let mut lo = vec![0.0; self.d];
        lo[0] = self.lower_p0;
        lo[1] = lo[1].max(self.lower_p1);
        lo
    }

    /// Tightest upper bound for every `m`.
    pub fn upper_tight(&self) -> Vec<f64> {
        let mut up = self.upper.clone();
        let d = self.d;
        up[d - 1] = up[d - 1].min(self.upper_pd1);
        up[d - 2] = up[d - 2].min(self.upper_pd2);
        up
    }

    /// `Some(value)` where the lower and upper bound coincide.
    pub fn pinned(&self, m: usize) -> Option<f64> {
        let lo = self.lower()[m];
        let up = self.upper_tight()[m];
        ((up - lo).abs() <= 1e-12 * up.max(1.0)).then_some(up)
    }
}

pub fn descartes_bounds(d: usize, alpha: SignBias) -> Result<BoundSet> {
    if d < 2 {
        return Err(domain("group size d must be at least 2"));
    }
    let n = d - 1;
    let table = p_kn_recursive(alpha, n);
    let upper: Vec<f64> = if alpha.is_symmetric() {
        let scale = 2f64.powi(d as i32);
        (0..d)
            .map(|m| {
                let head: f64 = (0..=n - m).map(|j| binomial(n, j)).sum();
                let tail = binomial_signed(d as i64 - 2, m as i64 - 1) as f64;
                (head + tail) / scale
            })
            .collect()
    } else {
        (0..d)
            .map(|m| (m..=n).step_by(2).map(|j| table.get(j, n)).sum())
            .collect()
    };
    let clamp = |x: f64| x.clamp(0.0, 1.0);
    Ok(BoundSet {
        d,
        alpha,
        upper: upper.into_iter().map(clamp).collect(),
        lower_p0: clamp(table.get(0, n)),
        lower_p1: clamp(table.get(1, n)),
        upper_pd2: clamp(table.get(n - 1, n)),
        upper_pd1: clamp(table.get(n, n)),
    })
}
