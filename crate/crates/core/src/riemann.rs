//! Numerical oracles over the rationals: the Riemann zeta function and its
//! derivative by Euler-Maclaurin, the two representations of
//! `f(s) = sum_rho Re 2/(s - rho)`, and the prime sums behind the contour
//! estimates.

use serde::{Deserialize, Serialize};

use crate::bounds::{contour_term_bound, unit_window_count_bound, ContourParams, ContourTermKind};
use crate::cert::{CertComplex, CertValue};
use crate::error::{domain, Error, Result};
use crate::field::FieldInvariants;
use crate::scalar::Scalar;
use crate::specfun::digamma_complex;
use crate::zerodata::ZeroTable;

/// Largest sieve supported by [`PrimeTable::new`].
pub const MAX_SIEVE: usize = 10_000_000;

/// Von Mangoldt function `Lambda(n)` for `n <= limit`.
#[derive(Debug, Clone, PartialEq)]
pub struct PrimeTable {
    limit: usize,
    mangoldt: Vec<f64>,
}

impl PrimeTable {
    /// Linear sieve of smallest prime factors, then `Lambda(p^k) = log p`.
    pub fn new(limit: usize) -> Result<Self> {
        if limit < 1 || limit > MAX_SIEVE {
            return Err(Error::Range(format!("sieve limit must lie in [1, {MAX_SIEVE}], got {limit}")));
        }
        let mut spf = vec![0u32; limit + 1];
        let mut primes: Vec<u32> = Vec::new();
        for n in 2..=limit {
            if spf[n] == 0 {
                spf[n] = n as u32;
                primes.push(n as u32);
            }
            for &p in &primes {
                let m = n * p as usize;
                if p > spf[n] || m > limit {
                    break;
                }
                spf[m] = p;
            }
        }
        let mut mangoldt = vec![0.0; limit + 1];
        for n in 2..=limit {
            let p = spf[n] as usize;
            let mut m = n;
            while m % p == 0 {
                m /= p;
            }
            if m == 1 {
                mangoldt[n] = (p as f64).ln();
            }
        }
        Ok(Self { limit, mangoldt })
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    /// `Lambda(n)`; zero outside `2..=limit`.
    pub fn mangoldt(&self, n: usize) -> f64 {
        self.mangoldt.get(n).copied().unwrap_or(0.0)
    }
}

/// `zeta(s)` and optionally `zeta'(s)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaValue<S> {
    pub value: CertComplex<S>,
    pub derivative: Option<CertComplex<S>>,
}

/// Largest `|t|` accepted by [`zeta_em`].
pub const ZETA_MAX_T: f64 = 1000.0;

const BERNOULLI: [f64; 5] = [1.0 / 6.0, -1.0 / 30.0, 1.0 / 42.0, -1.0 / 30.0, 5.0 / 66.0];

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

/// `(s)_j = s (s+1) ... (s+j-1)` and its derivative in `s`.
fn pochhammer<S: Scalar>(s: CertComplex<S>, j: usize) -> (CertComplex<S>, CertComplex<S>) {
    let one = CertComplex::exact(S::one(), S::zero());
    let mut p = one;
    let mut dp = CertComplex::exact(S::zero(), S::zero());
    for i in 0..j {
        let f = s + CertValue::exact(S::from_usize_lossy(i));
        dp = dp * f + p;
        p = p * f;
    }
    (p, dp)
}

/// Euler-Maclaurin evaluation with `N = max(50, 2|t|)` terms and the
/// Bernoulli corrections `B_2 .. B_8`.
///
/// The remainder after `B_8` is the `B_10` term plus the integral of the
/// periodic Bernoulli function against `(s)_10 x^(-s-10)`; both are bounded
/// in modulus and added to the radius, and likewise for the derivative.
/// The radius stays below `1e-8` for `sigma >= 1/2`. Further left, with
/// large `|t|`, rounding of the phases `t log n` over terms of size
/// `n^(-sigma)` limits it to roughly `1e-8 |zeta|`.
pub fn zeta_em<S: Scalar>(sigma: S, t: S, want_derivative: bool) -> Result<ZetaValue<S>> {
    if !sigma.is_finite() || !t.is_finite() || sigma < -S::one() || t.abs() > S::lit(ZETA_MAX_T) {
        return Err(Error::Range(format!("zeta oracle supports sigma >= -1, |t| <= {ZETA_MAX_T}; got ({sigma}, {t})")));
    }
    if sigma == S::one() && t == S::zero() {
        return Err(Error::Pole("zeta has a pole at s = 1".into()));
    }
    let s = CertComplex::exact(sigma, t);

    // |(s)_j| and sum_i prod_{l != i} |s + l|, which bounds |(s)_j'|
    let shifted: Vec<S> = (0..10).map(|l| (s + CertValue::exact(S::from_usize_lossy(l))).abs().hi()).collect();
    let abs_poch = |j: usize| shifted[..j].iter().fold(S::one(), |p, &x| p * x);
    let abs_dpoch = |j: usize| {
        (0..j).fold(S::zero(), |total, i| {
            total + (0..j).filter(|&l| l != i).fold(S::one(), |p, l| p * shifted[l])
        })
    };
    let b10 = S::lit(BERNOULLI[4].abs() / factorial(10));
    let tail_den = sigma + S::lit(9.0);
    let remainders = |n: usize| {
        let big_n = S::from_usize_lossy(n);
        let decay = big_n.powf(-sigma - S::lit(9.0)) * (S::one() + S::lit(16.0) * S::epsilon());
        let ln_hi = big_n.ln() * (S::one() + S::lit(4.0) * S::epsilon());
        let rem = b10 * decay * (abs_poch(9) + abs_poch(10) / tail_den);
        let drem = b10
            * decay
            * (abs_dpoch(9) + abs_poch(9) * ln_hi + abs_dpoch(10) / tail_den
                + abs_poch(10) * (ln_hi / tail_den + (tail_den * tail_den).recip()));
        (rem, drem)
    };
    let n_terms = (S::lit(2.0) * t.abs()).ceil().to_usize().unwrap_or(0).max(50);
    let (rem, drem) = remainders(n_terms);

    let minus_s = -s;
    let zero = CertComplex::exact(S::zero(), S::zero());
    let mut sum = zero;
    let mut dsum = zero;
    for n in 1..n_terms {
        let ln_n = CertValue::exact(S::from_usize_lossy(n)).ln();
        let term = (minus_s * ln_n).exp();
        sum = sum + term;
        if want_derivative {
            dsum = dsum - term * ln_n;
        }
    }
    let big_n = S::from_usize_lossy(n_terms);
    let ln_big = CertValue::exact(big_n).ln();
    let n_pow = (minus_s * ln_big).exp(); // N^-s
    let inv = (s + CertValue::exact(-S::one())).recip();
    let head = n_pow * CertValue::exact(big_n) * inv; // N^(1-s) / (s-1)
    let half = n_pow.scale(S::lit(0.5));
    sum = sum + head + half;
    if want_derivative {
        let d_head = head * (CertComplex::from_real(-ln_big) - inv);
        dsum = dsum + d_head - half * ln_big;
    }
    // B_2k / (2k)! (s)_(2k-1) N^(-s-2k+1)
    for (k, &b) in BERNOULLI.iter().take(4).enumerate() {
        let j = 2 * k + 1;
        let (p, dp) = pochhammer(s, j);
        let npow = n_pow * CertValue::exact(big_n).powi(-(j as i32));
        let c = S::lit(b / factorial(2 * k as u32 + 2));
        sum = sum + (p * npow).scale(c);
        if want_derivative {
            dsum = dsum + (dp * npow - p * npow * ln_big).scale(c);
        }
    }
    let value = CertComplex::new(sum.mid, sum.rad + rem);
    let derivative = want_derivative.then(|| CertComplex::new(dsum.mid, dsum.rad + drem));
    Ok(ZetaValue { value, derivative })
}

/// `zeta'/zeta(s)`; fails with `PoleError` if the enclosure of `zeta(s)`
/// contains 0.
pub fn zeta_logderiv<S: Scalar>(sigma: S, t: S) -> Result<CertComplex<S>> {
    let z = zeta_em(sigma, t, true)?;
    if z.value.abs().lo() <= S::zero() {
        return Err(Error::Pole(format!("zeta({sigma} + {t}i) cannot be separated from 0")));
    }
    Ok(z.derivative.unwrap() / z.value)
}

/// `f(s)` from the explicit formula
/// `2 Re zeta'/zeta + log(disc / pi^n) + Re(2/s + 2/(s-1)) + (r1+r2) Re psi(s/2) + r2 Re psi((s+1)/2)`.
///
/// Only the rationals are supported, since the oracle needs `zeta_K'/zeta_K`.
pub fn f_explicit<S: Scalar>(field: &FieldInvariants<S>, sigma: S, t: S) -> Result<CertValue<S>> {
    if field.degree() > 1 {
        return Err(Error::UnsupportedField(format!("explicit f needs the rationals, got degree {}", field.degree())));
    }
    if !(sigma > S::zero() && sigma <= S::lit(2.0)) || !(t.abs() <= S::lit(ZETA_MAX_T)) {
        return Err(domain(format!("explicit f needs sigma in (0, 2] and |t| <= {ZETA_MAX_T}, got ({sigma}, {t})")));
    }
    if t == S::zero() && sigma == S::one() {
        return Err(Error::Pole("s = 1".into()));
    }
    let ld = zeta_logderiv(sigma, t)?;
    let two = S::lit(2.0);
    let s = CertComplex::exact(sigma, t);
    let poles = s.recip() + (s + CertValue::exact(-S::one())).recip();
    let pi_ln = CertValue::exact(S::PI()).ln();
    let mut total = ld.re() * two + CertValue::exact(field.log_disc()) - pi_ln * field.n() + poles.re() * two;
    let r12 = S::from_u32(field.r1() + field.r2()).unwrap();
    if r12 > S::zero() {
        total += digamma_complex(sigma / two, t / two)?.re() * r12;
    }
    if field.r2() > 0 {
        let r2 = S::from_u32(field.r2()).unwrap();
        total += digamma_complex((sigma + S::one()) / two, t / two)?.re() * r2;
    }
    Ok(total)
}

/// `f(s) = sum_rho Re 2/(s - rho)` over the zeros in a table, assuming they
/// lie on the critical line.
///
/// Zeros with `|gamma - t| <= cutoff` (both conjugates) are summed; the rest
/// are covered by windows `[t +- k - 1, t +- k + 1]`, `k = floor(cutoff) + 1,
/// + 3, ...`, each holding at most `unit_window_count_bound` zeros at
/// distance at least `k - 1`. The result encloses `[partial, partial + tail]`.
pub fn f_from_zeros(table: &ZeroTable, sigma: f64, t: f64, cutoff: f64) -> Result<CertValue<f64>> {
    if !(sigma > 0.5) || !sigma.is_finite() || !t.is_finite() {
        return Err(domain(format!("zero-sum f needs sigma > 1/2, got {sigma}")));
    }
    if !(cutoff >= 2.0) || !cutoff.is_finite() {
        return Err(domain(format!("cutoff must be at least 2, got {cutoff}")));
    }
    if t.abs() + cutoff > table.height {
        return Err(Error::InsufficientTable(format!(
            "need zeros up to {}, table covers {}",
            t.abs() + cutoff,
            table.height
        )));
    }
    let alpha = sigma - 0.5;
    let a2 = alpha * alpha;
    let term = |d: f64| 2.0 * alpha / (a2 + d * d);
    // |d term / d gamma| <= 2 alpha * 2|d| / (a^2 + d^2)^2 <= 3 sqrt 3 / (4 alpha^2) at most
    let slope = 3.0 * 3f64.sqrt() / (4.0 * a2);
    let mut partial = 0.0;
    let mut count = 0usize;
    for &g in table.between(t - cutoff, t + cutoff) {
        partial += term(g - t);
        count += 1;
    }
    for &g in table.between(-t - cutoff, -t + cutoff) {
        partial += term(-g - t);
        count += 1;
    }
    let rounding = 4.0 * f64::EPSILON * (count as f64 + 4.0) * partial;
    let data_err = count as f64 * slope * table.ordinate_error;

    // tail over both sides, stride 2
    let field = &table.field;
    let k0 = cutoff.floor() + 1.0;
    let k_max = k0 + 2.0e6;
    let mut tail = 0.0;
    let mut k = k0;
    while k < k_max {
        let weight = term(k - 1.0);
        tail += weight * (unit_window_count_bound(field, t + k)? + unit_window_count_bound(field, t - k)?);
        k += 2.0;
    }
    // beyond k_max: the count is at most A + B log(|t| + k) with
    // (k - 1)^2 >= k^2 / 4, and the stride-2 sum is at most half the integral
    let n = field.n();
    let a_const = 0.636 * (field.log_disc() - n * std::f64::consts::TAU.ln()) + 6.92 * n + 3.49;
    let b_const = 0.636 * n;
    let m = k_max - 2.0;
    let shift = (t.abs() / m).ln_1p();
    let integral = (a_const.max(0.0) + b_const * (shift + m.ln() + 1.0)) / m;
    tail += 2.0 * 0.5 * 2.0 * alpha * 4.0 * integral;
    tail *= 1.0 + 1e-12;

    let lo = partial - rounding - data_err;
    let hi = partial + rounding + data_err + tail;
    Ok(CertValue::from_bounds(lo, hi))
}

/// `psi_1(x) = sum_{n <= x} Lambda(n) (x - n)` and the check
/// `|psi_1(x) - x^2/2| <= 0.0462 x^(3/2) + 1.838 x`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Psi1Check {
    pub x: f64,
    pub value: f64,
    pub bound: f64,
    pub bound_holds: bool,
}

fn psi1_bound(x: f64) -> f64 {
    0.0462 * x.powf(1.5) + 1.838 * x
}

pub fn chebyshev_psi1(x: f64, table: &PrimeTable) -> Result<Psi1Check> {
    if !(x >= 1.0) || x > table.limit() as f64 {
        return Err(Error::Range(format!("x must lie in [1, {}], got {x}", table.limit())));
    }
    let top = x.floor() as usize;
    let value: f64 = (2..=top).map(|n| table.mangoldt(n) * (x - n as f64)).sum();
    let bound = psi1_bound(x);
    Ok(Psi1Check { x, value, bound, bound_holds: (value - x * x / 2.0).abs() <= bound })
}

/// Checks every integer `x` in `[1, max_x]` incrementally, using
/// `psi_1(x) = x psi(x) - sum_{n <= x} n Lambda(n)`. Returns the first
/// failure, or the check with the least relative margin.
pub fn chebyshev_psi1_sweep(max_x: usize, table: &PrimeTable) -> Result<Psi1Check> {
    if max_x < 1 || max_x > table.limit() {
        return Err(Error::Range(format!("sweep end must lie in [1, {}], got {max_x}", table.limit())));
    }
    let (mut psi, mut weighted) = (0.0f64, 0.0f64);
    let mut worst: Option<(f64, Psi1Check)> = None;
    for n in 1..=max_x {
        let l = table.mangoldt(n);
        psi += l;
        weighted += n as f64 * l;
        let x = n as f64;
        let value = x * psi - weighted;
        let bound = psi1_bound(x);
        let dev = (value - x * x / 2.0).abs();
        let c = Psi1Check { x, value, bound, bound_holds: dev <= bound };
        if !c.bound_holds {
            return Ok(c);
        }
        let ratio = dev / bound;
        if worst.map_or(true, |(r, _)| ratio > r) {
            worst = Some((ratio, c));
        }
    }
    Ok(worst.unwrap().1)
}

/// Both sides of the smoothed prime-sum estimate over the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrimeSumCheck {
    pub lhs: CertValue<f64>,
    pub rhs: f64,
    pub holds: bool,
}

/// `sum_n Lambda(n) n^(-sigma) e^(-delta n)` against
/// `delta^(sigma - 1)/(1 - sigma) + 0.07/(2 sigma - 1) + 4`.
///
/// The sum runs to the table limit, which must be at least `50/delta`; the
/// rest is bounded by `L^(-sigma) int_L^inf log x e^(-delta x) dx`.
pub fn prime_exp_sum(sigma: f64, delta: f64, table: &PrimeTable) -> Result<PrimeSumCheck> {
    let q = FieldInvariants::rationals();
    let rhs = contour_term_bound(ContourTermKind::TermI, ContourParams { sigma, t: 0.0, delta }, &q)?;
    let need = 50.0 / delta;
    if (table.limit() as f64) < need {
        return Err(Error::Range(format!("prime table to {} is shorter than 50/delta = {need}", table.limit())));
    }
    let mut sum = 0.0;
    let mut terms = 0usize;
    for n in 2..=table.limit() {
        let l = table.mangoldt(n);
        if l > 0.0 {
            let x = n as f64;
            sum += l * (-sigma * x.ln() - delta * x).exp();
            terms += 1;
        }
    }
    let big_l = table.limit() as f64;
    let tail = big_l.powf(-sigma) * (-delta * big_l).exp() * (big_l.ln() / delta + 1.0 / (delta * delta * big_l));
    let rounding = 8.0 * f64::EPSILON * (terms as f64 + 8.0) * sum;
    let lhs = CertValue::from_bounds(sum - rounding, sum + rounding + tail);
    Ok(PrimeSumCheck { lhs, rhs, holds: lhs.hi() <= rhs })
}

/// `|Lambda(s)| = |pi^(-s/2) Gamma(s/2) zeta(s)|`, for checking the
/// functional equation `Lambda(s) = Lambda(1 - s)` in modulus.
pub fn completed_zeta_abs(sigma: f64, t: f64) -> Result<CertValue<f64>> {
    let z = zeta_em(sigma, t, false)?.value.abs();
    let lg = crate::specfun::ln_abs_gamma(sigma / 2.0, t / 2.0)?;
    let scale = (lg - CertValue::exact(std::f64::consts::PI).ln() * (sigma / 2.0)).exp();
    Ok(z * scale)
}
