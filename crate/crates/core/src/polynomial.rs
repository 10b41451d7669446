//! Real univariate polynomials and root counting by sign.
//!
//! Positive roots are counted exactly with a Sturm chain built on the
//! square-free part of the polynomial. An independent classification of all
//! roots through the eigenvalues of the companion matrix serves as an oracle.
//!
//! Coefficients are stored in increasing degree order: index `i` holds the
//! coefficient of `y^i`.

use nalgebra::{linalg::balancing, DMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use twofloat::TwoFloat;

use crate::error::{domain, Error, Result};

/// Relative magnitude below which a coefficient is treated as zero.
pub const ZERO_SNAP: f64 = 1e-12;

/// Default relative imaginary-part tolerance for the eigenvalue oracle.
pub const DEFAULT_IMAG_TOL: f64 = 1e-8;

/// Per-operation relative error allowed for double-double arithmetic.
const DD_ROUNDOFF: f64 = 1.0 / (1u64 << 50) as f64 / (1u64 << 50) as f64;
/// A remainder whose bounds are all below this (relative to the quotient)
/// is treated as exactly zero.
const GCD_NOISE: f64 = 1e-20;
const SCHUR_MAX_ITER: usize = 10_000;
const BISECTION_MAX_ITER: usize = 100;
const BISECTION_WIDTH: f64 = 1e-12;

/// A real polynomial in canonical form: the top coefficient is nonzero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealPolynomial {
    coeffs: Vec<f64>,
}

/// Counts of the distinct roots of a polynomial, split by location.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RootTally {
    pub positive: usize,
    pub negative: usize,
    pub complex_pairs: usize,
    /// Whether zero is a root.
    pub zero: bool,
    /// Degree of the square-free part the counts were taken on.
    pub counted_degree: usize,
}

impl RootTally {
    /// `positive + negative + 2 complex_pairs + [zero] == counted_degree`.
    pub fn is_consistent(&self) -> bool {
        self.positive + self.negative + 2 * self.complex_pairs + usize::from(self.zero)
            == self.counted_degree
    }
}

/// Snap near-zero coefficients and drop vanishing top coefficients.
pub fn normalize(coeffs: &[f64]) -> Result<RealPolynomial> {
    if coeffs.iter().any(|c| !c.is_finite()) {
        return Err(domain("polynomial coefficients must be finite"));
    }
    let max = max_abs(coeffs);
    if max == 0.0 {
        return Err(Error::AllZero);
    }
    let band = ZERO_SNAP * max;
    let mut out: Vec<f64> = coeffs
        .iter()
        .map(|&c| if c.abs() < band { 0.0 } else { c })
        .collect();
    trim_top(&mut out);
    Ok(RealPolynomial { coeffs: out })
}

impl RealPolynomial {
    /// Same as [`normalize`].
    pub fn new(coeffs: &[f64]) -> Result<Self> {
        normalize(coeffs)
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> f64 {
        self.coeffs[self.degree()]
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.coeffs)
    }

    /// Horner evaluation.
    pub fn eval(&self, y: f64) -> f64 {
        horner(&self.coeffs, y)
    }

    /// Multiply every coefficient by `c`.
    pub fn scaled(&self, c: f64) -> Result<Self> {
        let v: Vec<f64> = self.coeffs.iter().map(|x| x * c).collect();
        normalize(&v)
    }

    /// The polynomial `p(-y)`.
    pub fn reflected(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c })
            .collect();
        Self { coeffs }
    }

    /// `p'`, or `None` for a constant.
    pub fn derivative(&self) -> Option<Self> {
        if self.degree() == 0 {
            return None;
        }
        let d = derivative(&self.coeffs);
        Some(Self { coeffs: d })
    }

    /// All complex roots, with multiplicity, from the balanced companion matrix.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        companion_eigenvalues(&self.coeffs)
    }
}

/// `p / gcd(p, p')`: the same roots, each with multiplicity one.
///
/// Returns `p` unchanged when it is already square-free; otherwise the
/// quotient keeps the sign of `p`'s leading coefficient.
pub fn square_free(p: &RealPolynomial) -> Result<RealPolynomial> {
    if p.degree() == 0 {
        return Ok(p.clone());
    }
    let a = unit(&p.coeffs);
    let b = unit(&derivative(&p.coeffs));
    let g = euclid_gcd(a, b);
    if g.len() == 1 {
        return Ok(p.clone());
    }
    let lead = *g.last().unwrap();
    let monic: Vec<f64> = g.iter().map(|c| c / lead).collect();
    let (quot, rem, _) = div_rem(&p.coeffs, &monic);
    if max_abs(&rem) > 1e-6 * p.max_abs() {
        return Err(Error::IllConditioned);
    }
    normalize(&quot)
}

/// Sturm chain `p, p', -rem(p, p'), ...` built in double-double arithmetic.
///
/// Members are rescaled by powers of two, which is exact, and every
/// coefficient carries a first-order bound on its accumulated rounding error.
/// A sign the root count depends on (a leading coefficient, or the
/// lowest-order coefficient used at `0±`) that is not larger than its bound
/// makes the chain ill-conditioned. Coefficients that are exactly zero with a
/// zero bound are structural and skipped.
#[derive(Debug, Clone)]
pub struct SturmChain {
    polys: Vec<Vec<TwoFloat>>,
    errs: Vec<Vec<f64>>,
    approx: Vec<Vec<f64>>,
}

impl SturmChain {
    pub fn new(p: &RealPolynomial) -> Result<Self> {
        let first: Vec<TwoFloat> = p.coeffs.iter().map(|&c| TwoFloat::from(c)).collect();
        let e_first = vec![0.0; first.len()];
        let (first, e_first) = rescale(&first, &e_first, 1.0);
        let mut polys = vec![first];
        let mut errs = vec![e_first];
        if polys[0].len() > 1 {
            let (d, ed) = derivative_tracked(&polys[0], &errs[0]);
            let (second, e_second) = rescale(&d, &ed, 1.0);
            polys.push(second);
            errs.push(e_second);
            loop {
                let n = polys.len();
                let (mut rem, mut erem, qmax) =
                    div_rem_tracked(&polys[n - 2], &errs[n - 2], &polys[n - 1], &errs[n - 1]);
                let within = rem.iter().zip(&erem).all(|(r, e)| r.hi().abs() <= *e);
                if within {
                    let noise = erem.iter().fold(0.0_f64, |m, e| m.max(*e));
                    if noise <= GCD_NOISE * qmax.max(1.0) {
                        // remainder vanishes to working precision: the last
                        // member is gcd(p, p')
                        break;
                    }
                    return Err(Error::IllConditioned);
                }
                while rem.len() > 1
                    && rem.last().unwrap().hi() == 0.0
                    && *erem.last().unwrap() == 0.0
                {
                    rem.pop();
                    erem.pop();
                }
                if rem.last().unwrap().hi().abs() <= *erem.last().unwrap() {
                    return Err(Error::IllConditioned);
                }
                let (next, e_next) = rescale(&rem, &erem, -1.0);
                let done = next.len() == 1;
                polys.push(next);
                errs.push(e_next);
                if done {
                    break;
                }
            }
        }
        let approx = polys
            .iter()
            .map(|p| p.iter().map(|c| c.hi()).collect())
            .collect();
        Ok(Self {
            polys,
            errs,
            approx,
        })
    }

    /// Degree of `gcd(p, p')`: zero when every root is simple.
    pub fn gcd_degree(&self) -> usize {
        self.polys.last().unwrap().len() - 1
    }

    pub fn len(&self) -> usize {
        self.polys.len()
    }

    pub fn is_empty(&self) -> bool {
        self.polys.is_empty()
    }

    /// Degree of the square-free part of the polynomial.
    pub fn degree(&self) -> usize {
        self.polys[0].len() - 1 - self.gcd_degree()
    }

    /// Certified lowest-order nonzero coefficient of each member, with the
    /// sign adjusted for evaluation just left of zero when `left` is set.
    fn signs_near_zero(&self, left: bool) -> Result<Vec<f64>> {
        self.approx
            .iter()
            .zip(&self.errs)
            .map(|(p, e)| {
                for (j, (&c, &err)) in p.iter().zip(e).enumerate() {
                    if c == 0.0 && err == 0.0 {
                        continue;
                    }
                    if c.abs() <= err {
                        return Err(Error::IllConditioned);
                    }
                    return Ok(if left && j % 2 == 1 { -c } else { c });
                }
                Ok(0.0)
            })
            .collect()
    }

    fn variations<I: Iterator<Item = f64>>(signs: I) -> usize {
        let mut last = 0.0_f64;
        let mut count = 0;
        for s in signs {
            if s == 0.0 {
                continue;
            }
            if last != 0.0 && s.signum() != last.signum() {
                count += 1;
            }
            last = s;
        }
        count
    }

    pub fn variations_at(&self, x: f64) -> usize {
        Self::variations(self.approx.iter().map(|p| horner(p, x)))
    }

    pub fn variations_at_pos_inf(&self) -> usize {
        Self::variations(self.approx.iter().map(|p| *p.last().unwrap()))
    }

    pub fn variations_at_neg_inf(&self) -> usize {
        Self::variations(self.approx.iter().map(|p| {
            let lead = *p.last().unwrap();
            if (p.len() - 1) % 2 == 1 {
                -lead
            } else {
                lead
            }
        }))
    }

    /// Signs just to the right of zero: the lowest-order nonzero coefficient.
    pub fn variations_at_zero_plus(&self) -> Result<usize> {
        Ok(Self::variations(self.signs_near_zero(false)?.into_iter()))
    }

    /// Signs just to the left of zero.
    pub fn variations_at_zero_minus(&self) -> Result<usize> {
        Ok(Self::variations(self.signs_near_zero(true)?.into_iter()))
    }

    /// Distinct roots in `(0, +inf)`. A negative difference can only come
    /// from rounding and is reported as ill-conditioned.
    pub fn positive_roots(&self) -> Result<usize> {
        self.variations_at_zero_plus()?
            .checked_sub(self.variations_at_pos_inf())
            .ok_or(Error::IllConditioned)
    }

    /// Distinct roots in `(-inf, 0)`.
    pub fn negative_roots(&self) -> Result<usize> {
        self.variations_at_neg_inf()
            .checked_sub(self.variations_at_zero_minus()?)
            .ok_or(Error::IllConditioned)
    }

    /// Distinct roots in `(a, b]` for `a < b`, neither a root.
    pub fn roots_between(&self, a: f64, b: f64) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    /// The input polynomial rescaled by a power of two, rounded to `f64`.
    pub fn head(&self) -> &[f64] {
        &self.approx[0]
    }
}

/// Number of distinct roots in `(0, +inf)`.
pub fn count_positive_roots(p: &RealPolynomial) -> Result<usize> {
    Ok(tally_roots_sturm(p)?.positive)
}

/// Full root classification through the Sturm chain.
///
/// The counts are certified before they are returned: real roots must fit the
/// degree with matching parity, and each sign must respect Descartes' bound
/// (with matching parity when no root is repeated). A chain that fails any
/// check has been corrupted by rounding and is reported as ill-conditioned.
pub fn tally_roots_sturm(p: &RealPolynomial) -> Result<RootTally> {
    let chain = SturmChain::new(p)?;
    let positive = chain.positive_roots()?;
    let negative = chain.negative_roots()?;
    let zero = chain.head()[0] == 0.0;
    let counted_degree = chain.degree();
    let real = positive + negative + usize::from(zero);
    if real > counted_degree || (counted_degree - real) % 2 == 1 {
        return Err(Error::IllConditioned);
    }
    let simple = chain.gcd_degree() == 0;
    let descartes = |count: usize, coeffs: &[f64]| {
        let v = SturmChain::variations(coeffs.iter().copied());
        count <= v && (!simple || (v - count) % 2 == 0)
    };
    if !descartes(positive, p.coeffs()) || !descartes(negative, p.reflected().coeffs()) {
        return Err(Error::IllConditioned);
    }
    Ok(RootTally {
        positive,
        negative,
        complex_pairs: (counted_degree - real) / 2,
        zero,
        counted_degree,
    })
}

/// Classify the roots of the square-free part from companion-matrix
/// eigenvalues. An eigenvalue is real when `|Im| <= imag_tol * |λ|`.
pub fn tally_roots_eigen(p: &RealPolynomial, imag_tol: f64) -> Result<RootTally> {
    if p.degree() == 0 {
        return Err(domain("root tally requires degree >= 1"));
    }
    // a spurious numerical common factor only means the roots are close;
    // the eigenvalues of p itself still classify them
    let sf = match square_free(p) {
        Err(Error::IllConditioned) => p.clone(),
        other => other?,
    };
    let counted_degree = sf.degree();
    let zero = sf.coeffs[0] == 0.0;
    let start = sf.coeffs.iter().position(|&c| c != 0.0).unwrap();
    let roots = companion_eigenvalues(&sf.coeffs[start..])?;

    let mut positive = 0;
    let mut negative = 0;
    let mut nonreal: Vec<Complex64> = Vec::new();
    for z in &roots {
        if z.im.abs() <= imag_tol * z.norm() {
            if z.re > 0.0 {
                positive += 1;
            } else {
                negative += 1;
            }
        } else {
            nonreal.push(*z);
        }
    }
    if nonreal.len() % 2 == 1 {
        // one conjugate partner was judged real: reclassify the nearest-to-real
        let (idx, z) = nonreal
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1.im.abs() / a.1.norm()).total_cmp(&(b.1.im.abs() / b.1.norm())))
            .map(|(i, z)| (i, *z))
            .unwrap();
        nonreal.remove(idx);
        if z.re > 0.0 {
            positive += 1;
        } else {
            negative += 1;
        }
    }
    Ok(RootTally {
        positive,
        negative,
        complex_pairs: nonreal.len() / 2,
        zero,
        counted_degree,
    })
}

/// Sign alternations in the nonzero entries of a coefficient sequence.
pub fn sign_changes(coeffs: &[f64]) -> Result<usize> {
    if coeffs.iter().all(|&c| c == 0.0) {
        return Err(Error::AllZero);
    }
    Ok(SturmChain::variations(coeffs.iter().copied()))
}

/// The distinct positive roots, ascending, located by bisection on intervals
/// isolated with the Sturm chain.
pub fn positive_roots(p: &RealPolynomial) -> Result<Vec<f64>> {
    let sf = match square_free(p) {
        Err(Error::IllConditioned) => p.clone(),
        other => other?,
    };
    let chain = SturmChain::new(&sf)?;
    let total = chain.positive_roots()?;
    if total == 0 {
        return Ok(Vec::new());
    }
    let head = chain.head().to_vec();
    let lead = *head.last().unwrap();
    let cauchy = 1.0 + head.iter().map(|c| (c / lead).abs()).fold(0.0, f64::max);

    // lower end strictly above zero but below every positive root
    let (j, _) = lowest_nonzero(&head);
    let tail = &head[j..];
    let c0 = tail[0];
    let lower = {
        let m = tail[1..].iter().map(|c| c.abs()).fold(0.0, f64::max);
        (c0.abs() / (c0.abs() + m)) * 0.5
    };

    let mut roots = Vec::with_capacity(total);
    let mut stack = vec![(lower, cauchy, total)];
    while let Some((a, b, n)) = stack.pop() {
        if n == 0 {
            continue;
        }
        if n == 1 {
            roots.push(bisect(&head, a, b));
            continue;
        }
        let mid = 0.5 * (a + b);
        if (b - a) <= BISECTION_WIDTH * b.max(1.0) {
            // cluster narrower than the resolution; report once
            roots.push(mid);
            continue;
        }
        let mut split = mid;
        if horner(&head, split) == 0.0 {
            split = mid + 0.25 * (b - mid);
        }
        let left = chain.roots_between(a, split);
        stack.push((split, b, n.saturating_sub(left)));
        stack.push((a, split, left));
    }
    roots.sort_by(f64::total_cmp);
    Ok(roots)
}

fn bisect(p: &[f64], mut a: f64, mut b: f64) -> f64 {
    let mut fa = horner(p, a);
    for _ in 0..BISECTION_MAX_ITER {
        let mid = 0.5 * (a + b);
        if b - a <= BISECTION_WIDTH * mid.abs().max(1.0) {
            return mid;
        }
        let fm = horner(p, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == fa.signum() {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    0.5 * (a + b)
}

fn companion_eigenvalues(coeffs: &[f64]) -> Result<Vec<Complex64>> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[n];
    if n == 1 {
        return Ok(vec![Complex64::new(-coeffs[0] / lead, 0.0)]);
    }
    let mut m = DMatrix::<f64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = 1.0;
    }
    for i in 0..n {
        m[(i, n - 1)] = -coeffs[i] / lead;
    }
    if m.iter().any(|v| !v.is_finite()) {
        return Err(Error::NumericOverflow("companion matrix"));
    }
    balancing::balance_parlett_reinsch(&mut m);
    // the QR iteration can stall on some companion matrices; the
    // transpose has the same spectrum and usually breaks the cycle
    let schur = Schur::try_new(m.clone(), f64::EPSILON, SCHUR_MAX_ITER)
        .or_else(|| Schur::try_new(m.transpose(), f64::EPSILON, SCHUR_MAX_ITER))
        .ok_or(Error::EigenFailure)?;
    let eig = schur.complex_eigenvalues();
    if eig.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::EigenFailure);
    }
    Ok(eig.iter().copied().collect())
}

/// Long division propagating first-order error bounds; returns the
/// remainder, its bounds and the largest quotient coefficient.
fn div_rem_tracked(
    a: &[TwoFloat],
    ea: &[f64],
    b: &[TwoFloat],
    eb: &[f64],
) -> (Vec<TwoFloat>, Vec<f64>, f64) {
    let db = b.len() - 1;
    let (lead, e_lead) = (b[db], eb[db]);
    let lead_abs = lead.hi().abs();
    let mut r = a.to_vec();
    let mut er = ea.to_vec();
    let mut qmax = 0.0_f64;
    for i in (db..a.len()).rev() {
        let coef = dd_div(r[i], lead);
        let c_abs = coef.hi().abs();
        let e_coef = (er[i] + c_abs * e_lead) / lead_abs + DD_ROUNDOFF * c_abs;
        qmax = qmax.max(c_abs);
        for j in 0..db {
            let next = r[i - db + j] - coef * b[j];
            er[i - db + j] += c_abs * eb[j]
                + e_coef * b[j].hi().abs()
                + DD_ROUNDOFF * (c_abs * b[j].hi().abs() + next.hi().abs());
            r[i - db + j] = next;
        }
        r[i] = TwoFloat::from(0.0);
    }
    let keep = db.max(1);
    r.truncate(keep);
    er.truncate(keep);
    if db == 0 {
        r[0] = TwoFloat::from(0.0);
        er[0] = 0.0;
    }
    (r, er, qmax)
}

/// Double-double quotient with two correction steps. The library operator
/// loses the low word of the reciprocal, so it only has `f64` accuracy.
fn dd_div(a: TwoFloat, b: TwoFloat) -> TwoFloat {
    let q0 = a.hi() / b.hi();
    let r = a - b * q0;
    let q1 = r.hi() / b.hi();
    let r = r - b * q1;
    let q2 = r.hi() / b.hi();
    TwoFloat::from(q0) + q1 + q2
}

fn derivative_tracked(c: &[TwoFloat], e: &[f64]) -> (Vec<TwoFloat>, Vec<f64>) {
    let d: Vec<TwoFloat> = c
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, &v)| v * i as f64)
        .collect();
    let ed = d
        .iter()
        .enumerate()
        .map(|(i, v)| (i + 1) as f64 * e[i + 1] + DD_ROUNDOFF * v.hi().abs())
        .collect();
    (d, ed)
}

/// Scale by a power of two so the largest coefficient lies in `[1, 2)`,
/// multiplying by `sign`. Exact, so the bounds scale with it.
fn rescale(c: &[TwoFloat], e: &[f64], sign: f64) -> (Vec<TwoFloat>, Vec<f64>) {
    let m = c.iter().fold(0.0_f64, |m, v| m.max(v.hi().abs()));
    if m == 0.0 {
        return (c.to_vec(), e.to_vec());
    }
    let s = sign * (-(m.log2().floor())).exp2();
    let out = c.iter().map(|&v| v * s).collect();
    let err = e.iter().map(|&x| x * s.abs()).collect();
    (out, err)
}

fn euclid_gcd(mut a: Vec<f64>, mut b: Vec<f64>) -> Vec<f64> {
    loop {
        if b.len() == 1 {
            return b;
        }
        let (_, rem, qmax) = div_rem(&a, &b);
        let tol = ZERO_SNAP * qmax.max(1.0);
        if max_abs(&rem) <= tol {
            return b;
        }
        let mut r: Vec<f64> = rem
            .iter()
            .map(|&c| if c.abs() <= tol { 0.0 } else { c })
            .collect();
        trim_top(&mut r);
        a = b;
        b = unit(&r);
    }
}

/// Long division; returns `(quotient, remainder, max |quotient coefficient|)`.
/// The remainder always has length `len(b) - 1` (at least one entry).
fn div_rem(a: &[f64], b: &[f64]) -> (Vec<f64>, Vec<f64>, f64) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        let mut r = a.to_vec();
        r.resize(db.max(1), 0.0);
        return (vec![0.0], r, 0.0);
    }
    let lead = b[db];
    let mut r = a.to_vec();
    let mut q = vec![0.0; a.len() - db];
    let mut qmax = 0.0_f64;
    for i in (db..a.len()).rev() {
        let coef = r[i] / lead;
        q[i - db] = coef;
        qmax = qmax.max(coef.abs());
        for (j, &bj) in b.iter().enumerate() {
            r[i - db + j] -= coef * bj;
        }
        r[i] = 0.0;
    }
    r.truncate(db.max(1));
    if db == 0 {
        r[0] = 0.0;
    }
    (q, r, qmax)
}

fn derivative(c: &[f64]) -> Vec<f64> {
    if c.len() <= 1 {
        return vec![0.0];
    }
    c.iter()
        .enumerate()
        .skip(1)
        .map(|(i, &v)| v * i as f64)
        .collect()
}

fn horner(c: &[f64], y: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, &v| acc * y + v)
}

fn max_abs(c: &[f64]) -> f64 {
    c.iter().fold(0.0_f64, |m, v| m.max(v.abs()))
}

fn unit(c: &[f64]) -> Vec<f64> {
    let m = max_abs(c);
    if m == 0.0 {
        return c.to_vec();
    }
    c.iter().map(|v| v / m).collect()
}

fn trim_top(c: &mut Vec<f64>) {
    while c.len() > 1 && *c.last().unwrap() == 0.0 {
        c.pop();
    }
}

fn lowest_nonzero(c: &[f64]) -> (usize, f64) {
    c.iter()
        .copied()
        .enumerate()
        .find(|(_, v)| *v != 0.0)
        .unwrap_or((0, 0.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[f64]) -> RealPolynomial {
        normalize(c).unwrap()
    }

    fn proportional(a: &RealPolynomial, b: &[f64]) -> bool {
        if a.coeffs().len() != b.len() {
            return false;
        }
        let ratio = a.leading() / b[b.len() - 1];
        ratio > 0.0
            && a.coeffs()
                .iter()
                .zip(b)
                .all(|(x, y)| (x - ratio * y).abs() < 1e-9 * ratio.abs())
    }

    #[test]
    fn normalize_examples() {
        let p = poly(&[2.0, 0.0, 0.0]);
        assert_eq!(p.degree(), 0);
        assert_eq!(p.coeffs(), &[2.0]);
        assert_eq!(poly(&[1.0, -3.0, 2.0]).degree(), 2);
        assert_eq!(normalize(&[0.0, 0.0, 0.0]), Err(Error::AllZero));
    }

    #[test]
    fn normalize_snaps_relative_noise() {
        let p = poly(&[1.0, 1e-14, 3.0, 1e-13]);
        assert_eq!(p.coeffs(), &[1.0, 0.0, 3.0]);
        assert!(normalize(&[f64::NAN, 1.0]).is_err());
    }

    #[test]
    fn square_free_examples() {
        let p = square_free(&poly(&[1.0, -2.0, 1.0])).unwrap();
        assert!(proportional(&p, &[-1.0, 1.0]), "{p:?}");
        let p = square_free(&poly(&[1.0, 0.0, 1.0])).unwrap();
        assert_eq!(p.coeffs(), &[1.0, 0.0, 1.0]);
        let p = square_free(&poly(&[1.0, -1.0, -1.0, 1.0])).unwrap();
        assert!(proportional(&p, &[-1.0, 0.0, 1.0]), "{p:?}");
    }

    #[test]
    fn count_positive_examples() {
        assert_eq!(count_positive_roots(&poly(&[2.0, -3.0, 1.0])).unwrap(), 2);
        assert_eq!(count_positive_roots(&poly(&[1.0, 0.0, 1.0])).unwrap(), 0);
        assert_eq!(
            count_positive_roots(&poly(&[1.0, -1.0, -1.0, 1.0])).unwrap(),
            1
        );
    }

    #[test]
    fn count_handles_sparse_and_zero_roots() {
        // 1 - y^3: the chain has a structural degree drop
        assert_eq!(
            count_positive_roots(&poly(&[1.0, 0.0, 0.0, -1.0])).unwrap(),
            1
        );
        // y (y - 1)(y - 2): zero is not positive
        assert_eq!(
            count_positive_roots(&poly(&[0.0, 2.0, -3.0, 1.0])).unwrap(),
            2
        );
        // constants have no roots
        assert_eq!(count_positive_roots(&poly(&[-4.0])).unwrap(), 0);
        // (y - 1)^3 (y + 2)
        let p = poly(&[-2.0, 5.0, -3.0, -1.0, 1.0]);
        assert_eq!(count_positive_roots(&p).unwrap(), 1);
    }

    #[test]
    fn eigen_tally_examples() {
        let t = tally_roots_eigen(&poly(&[2.0, -3.0, 1.0]), DEFAULT_IMAG_TOL).unwrap();
        assert_eq!((t.positive, t.negative, t.complex_pairs), (2, 0, 0));
        let t = tally_roots_eigen(&poly(&[1.0, 0.0, 1.0]), DEFAULT_IMAG_TOL).unwrap();
        assert_eq!((t.positive, t.negative, t.complex_pairs), (0, 0, 1));
        let t = tally_roots_eigen(&poly(&[1.0, -1.0, -1.0, 1.0]), DEFAULT_IMAG_TOL).unwrap();
        assert_eq!((t.positive, t.negative, t.complex_pairs), (1, 1, 0));
        assert_eq!(t.counted_degree, 2);
        assert!(t.is_consistent());
    }

    #[test]
    fn eigen_tally_with_zero_root() {
        let t = tally_roots_eigen(&poly(&[0.0, 1.0, 0.0, 1.0]), DEFAULT_IMAG_TOL).unwrap();
        assert!(t.zero);
        assert_eq!(t.complex_pairs, 1);
        assert!(t.is_consistent());
        assert!(tally_roots_eigen(&poly(&[3.0]), DEFAULT_IMAG_TOL).is_err());
    }

    #[test]
    fn sturm_tally_matches_eigen_on_small_cases() {
        for c in [
            vec![2.0, -3.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![-6.0, 11.0, -6.0, 1.0],
            vec![6.0, 11.0, 6.0, 1.0],
            vec![1.0, 2.0, -1.0, 0.5, 3.0],
        ] {
            let p = poly(&c);
            let a = tally_roots_sturm(&p).unwrap();
            let b = tally_roots_eigen(&p, DEFAULT_IMAG_TOL).unwrap();
            assert_eq!(a, b, "{c:?}");
        }
    }

    #[test]
    fn sign_change_examples() {
        assert_eq!(sign_changes(&[1.0, -1.0, -1.0, 1.0]).unwrap(), 2);
        assert_eq!(sign_changes(&[1.0, 2.0, 3.0]).unwrap(), 0);
        assert_eq!(sign_changes(&[0.0, -1.0, 0.0, 2.0, -5.0]).unwrap(), 2);
        assert_eq!(sign_changes(&[0.0, 0.0]), Err(Error::AllZero));
    }

    #[test]
    fn positive_root_locations() {
        let r = positive_roots(&poly(&[2.0, -3.0, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0] - 1.0).abs() < 1e-10 && (r[1] - 2.0).abs() < 1e-10);
        // roots 3 ± 2√2
        let r = positive_roots(&poly(&[1.0, -6.0, 1.0])).unwrap();
        let s = 2.0 * 2f64.sqrt();
        assert!((r[0] - (3.0 - s)).abs() < 1e-10 && (r[1] - (3.0 + s)).abs() < 1e-10);
        assert!(positive_roots(&poly(&[1.0, 0.0, 1.0])).unwrap().is_empty());
        // closely spaced roots 1.0 and 1.001
        let r = positive_roots(&poly(&[1.001, -2.001, 1.0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[1] - r[0] - 0.001).abs() < 1e-9);
    }

    #[test]
    fn reflected_counts_negative_roots() {
        let p = poly(&[6.0, 11.0, 6.0, 1.0]);
        assert_eq!(count_positive_roots(&p.reflected()).unwrap(), 3);
    }

    #[test]
    fn roots_with_multiplicity() {
        // (y - 1)^2 (y + 3)
        let p = poly(&[3.0, -5.0, 1.0, 1.0]);
        let mut r: Vec<f64> = p.roots().unwrap().iter().map(|z| z.re).collect();
        r.sort_by(f64::total_cmp);
        assert!((r[0] + 3.0).abs() < 1e-9);
        assert!((r[1] - 1.0).abs() < 1e-6 && (r[2] - 1.0).abs() < 1e-6);
    }
}
