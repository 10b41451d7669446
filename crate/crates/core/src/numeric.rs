//! Small numeric helpers shared by the modules: exact binomials, half-integer
//! gamma values, compensated summation and seed mixing.

/// Exact binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binomial_u128(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step
        acc = acc * u128::from(n - i) / u128::from(i + 1);
    }
    acc
}

/// Binomial coefficient as `f64`; exact while the value fits in 53 bits.
pub fn binomial(n: usize, k: usize) -> f64 {
    binomial_u128(n as u64, k as u64) as f64
}

/// Binomial with the integer-index convention `C(n, k) = 0` for `k < 0`
/// and `C(-1, -1) = 1` (Pascal's rule extended to the corner).
pub fn binomial_signed(n: i64, k: i64) -> i128 {
    if n == -1 && k == -1 {
        return 1;
    }
    if k < 0 || n < 0 {
        return 0;
    }
    binomial_u128(n as u64, k as u64) as i128
}

/// The row `C(n, 0), ..., C(n, n)` as floats.
pub fn binomial_row(n: usize) -> Vec<f64> {
    (0..=n).map(|k| binomial(n, k)).collect()
}

/// Multinomial coefficient `m! / (i! j! l!)`, zero if any part is negative
/// or the parts do not sum to `m`.
pub fn multinomial3(m: i64, i: i64, j: i64, l: i64) -> f64 {
    if i < 0 || j < 0 || l < 0 || i + j + l != m {
        return 0.0;
    }
    let a = binomial_u128(m as u64, i as u64);
    let b = binomial_u128((m - i) as u64, j as u64);
    (a * b) as f64
}

/// `n!` as a float.
pub fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

/// `Γ(d / 2)` for a positive integer `d`.
pub fn gamma_half(d: usize) -> f64 {
    assert!(d > 0, "gamma_half requires d > 0");
    let mut value = if d % 2 == 0 {
        1.0
    } else {
        std::f64::consts::PI.sqrt()
    };
    let mut x = if d % 2 == 0 { 1.0 } else { 0.5 };
    let target = d as f64 / 2.0;
    while x < target - 0.25 {
        value *= x;
        x += 1.0;
    }
    value
}

/// Neumaier-compensated sum of the terms, accumulated in descending order of
/// magnitude.
pub fn compensated_sum(terms: &mut [f64]) -> f64 {
    terms.sort_by(|a, b| b.abs().total_cmp(&a.abs()));
    let mut sum = 0.0_f64;
    let mut comp = 0.0_f64;
    for &t in terms.iter() {
        let s = sum + t;
        if sum.abs() >= t.abs() {
            comp += (sum - s) + t;
        } else {
            comp += (t - s) + sum;
        }
        sum = s;
    }
    sum + comp
}

/// SplitMix64 finalizer; used to derive independent sub-seeds.
pub fn mix_seed(seed: u64, salt: u64) -> u64 {
    let mut z = seed ^ salt.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Binary entropy `H(s) = -s log2 s - (1-s) log2 (1-s)`, with `H(0) = H(1) = 0`.
pub fn binary_entropy(s: f64) -> f64 {
    if s <= 0.0 || s >= 1.0 {
        return 0.0;
    }
    -s * s.log2() - (1.0 - s) * (1.0 - s).log2()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn binomials() {
        assert_eq!(binomial_u128(10, 3), 120);
        assert_eq!(binomial_u128(3, 5), 0);
        assert_eq!(binomial_u128(60, 30), 118_264_581_564_861_424);
        assert_eq!(binomial_row(4), vec![1.0, 4.0, 6.0, 4.0, 1.0]);
        assert_eq!(binomial_signed(4, -1), 0);
    }

    #[test]
    fn multinomials() {
        assert_eq!(multinomial3(4, 1, 1, 2), 12.0);
        assert_eq!(multinomial3(3, -1, 2, 2), 0.0);
        assert_eq!(multinomial3(0, 0, 0, 0), 1.0);
    }

    #[test]
    fn half_gamma() {
        let pi = std::f64::consts::PI;
        assert_relative_eq!(gamma_half(1), pi.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(gamma_half(2), 1.0);
        assert_relative_eq!(gamma_half(3), pi.sqrt() / 2.0, epsilon = 1e-15);
        assert_relative_eq!(gamma_half(4), 1.0);
        assert_relative_eq!(gamma_half(5), 0.75 * pi.sqrt(), epsilon = 1e-15);
        assert_relative_eq!(gamma_half(8), 6.0);
    }

    #[test]
    fn compensated_sum_recovers_cancellation() {
        let mut terms = vec![1e16, 1.0, -1e16, 1.0];
        assert_eq!(compensated_sum(&mut terms), 2.0);
    }

    #[test]
    fn entropy_endpoints() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert_relative_eq!(binary_entropy(0.5), 1.0);
    }
}
