//! Explicit zero-counting bounds: the unconditional count, the short-window
//! estimates, the contour terms of the critical-strip bound for
//! `zeta_K'/zeta_K`, and the GRH bounds built from `f~_K`.
//!
//! Everything here is plain floating point: each bound carries far more
//! slack than the rounding of a handful of operations.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::field::{conductor_q, w_term, FieldInvariants};
use crate::scalar::Scalar;
use crate::types::{BoundBreakdown, BoundParams};

/// Constants of the unconditional estimate
/// `|N_K(T) - (T/pi) log((T/2 pi e)^n disc)| <= d1 W_K(T) + d2 n + d3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrudgianConstants {
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
}

pub const TRUDGIAN: TrudgianConstants = TrudgianConstants { d1: 0.317, d2: 6.9157, d3: 3.482 };

fn d<S: Scalar>(x: f64) -> S {
    S::lit(x)
}

fn check_sigma<S: Scalar>(sigma: S) -> Result<()> {
    if !(sigma > S::lit(0.5) && sigma < S::one()) {
        return Err(domain(format!("sigma must lie in (1/2, 1), got {sigma}")));
    }
    Ok(())
}

/// Main term and error radius of the unconditional zero count `N_K(T)`
/// (zeros with `|gamma| <= T`, both signs).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrudgianCount<S> {
    pub main: S,
    pub remainder_bound: S,
}

impl<S: Scalar> TrudgianCount<S> {
    pub fn lower(&self) -> S {
        self.main - self.remainder_bound
    }

    pub fn upper(&self) -> S {
        self.main + self.remainder_bound
    }
}

pub fn trudgian_count<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<TrudgianCount<S>> {
    if !(t >= S::one()) || !t.is_finite() {
        return Err(domain(format!("the unconditional count needs T >= 1, got {t}")));
    }
    let n = field.n();
    let main = t / S::PI() * (n * (t / (S::TAU() * S::E())).ln() + field.log_disc());
    let remainder_bound = d::<S>(TRUDGIAN.d1) * w_term(field, t)? + d::<S>(TRUDGIAN.d2) * n + d::<S>(TRUDGIAN.d3);
    Ok(TrudgianCount { main, remainder_bound })
}

/// Upper bound for `n_K(t; 1)`, the number of zeros with `|gamma - t| <= 1`.
pub fn unit_window_count_bound<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<S> {
    let n = field.n();
    if t.abs() > S::one() {
        Ok(d::<S>(0.636) * w_term(field, t.abs())? + d::<S>(6.92) * n + d::<S>(3.49))
    } else if t.is_finite() {
        Ok(d::<S>(0.954) * field.log_disc() + d::<S>(5.19) * n + d::<S>(3.49))
    } else {
        Err(domain("height must be finite"))
    }
}

/// Upper bound for `sum_{|gamma - t| <= c} 1/|u + i(gamma - t)|`.
pub fn zero_sum_bound<S: Scalar>(field: &FieldInvariants<S>, c: S, t: S, u: S) -> Result<S> {
    if !(c > S::zero()) || !(u > S::zero()) || !(t.abs() > c + S::one()) || !t.is_finite() {
        return Err(domain(format!("zero sum bound needs c > 0, u > 0, |t| > c + 1; got c={c}, t={t}, u={u}")));
    }
    let k = TRUDGIAN;
    let coeff = (c / u).asinh() / S::PI() + d::<S>(k.d1) / u;
    Ok(coeff * w_term(field, t.abs())? + (d::<S>(k.d2) * field.n() + d::<S>(k.d3)) / u)
}

/// The pieces of the contour decomposition of `-zeta_K'/zeta_K(s)`:
/// the smoothed prime sum, the pole at 1, the zeros, and the shifted
/// integral (split as the `IVa` part and the whole of `IV`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ContourTermKind {
    TermI,
    TermII,
    /// Zero sum, as simplified with `log(1/(2 sigma - 1))`.
    TermIII,
    /// Zero sum before the `asinh` simplification.
    TermIIIAsinh,
    TermIVa,
    TermIV,
}

/// Parameters of a contour term: `s = sigma + i t` and the smoothing `delta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContourParams<S> {
    pub sigma: S,
    pub t: S,
    pub delta: S,
}

pub fn contour_term_bound<S: Scalar>(kind: ContourTermKind, p: ContourParams<S>, field: &FieldInvariants<S>) -> Result<S> {
    let ContourParams { sigma, t, delta } = p;
    check_sigma(sigma)?;
    if !(delta > S::zero() && delta < S::one()) {
        return Err(domain(format!("delta must lie in (0, 1), got {delta}")));
    }
    let at = t.abs();
    let min_t = match kind {
        ContourTermKind::TermI => S::zero(),
        ContourTermKind::TermII => d(2.0),
        _ => d(10.0),
    };
    if !(at >= min_t) || !t.is_finite() {
        return Err(domain(format!("{kind:?} needs |t| >= {min_t}, got {t}")));
    }
    let n = field.n();
    let ld = field.log_disc();
    let one = S::one();
    let eps = sigma + sigma - one;
    let value = match kind {
        ContourTermKind::TermI => (delta.powf(sigma - one) / (one - sigma) + d::<S>(0.07) / eps + d(4.0)) * n,
        ContourTermKind::TermII => S::TAU().sqrt() * (-S::FRAC_PI_2() * at).exp() * delta.powf(sigma - one),
        ContourTermKind::TermIII => {
            let w = w_term(field, at)?;
            let coeff = (one / eps).ln() / S::PI() + d::<S>(0.64) / eps + d(0.82);
            delta.powf(sigma - d(0.5))
                * (coeff * w + (d::<S>(13.9) / eps + d(1.6)) * n + d::<S>(6.9) / eps + d(0.8))
        }
        ContourTermKind::TermIIIAsinh => {
            let w = w_term(field, at)?;
            let k = TRUDGIAN;
            let near = ((d::<S>(4.0) / eps).asinh() / S::PI() + d::<S>(2.0 * k.d1) / eps) * w
                + (d::<S>(2.0 * k.d2) * n + d::<S>(2.0 * k.d3)) / eps;
            let far = d::<S>(0.15) * w + d::<S>(1.6) * n + d(0.8);
            delta.powf(sigma - d(0.5)) * (near + far)
        }
        ContourTermKind::TermIVa => {
            delta.powf(sigma - d(0.25)) / S::TAU()
                * (d::<S>(9.16) * ld + (d::<S>(9.16) * (at + one).ln() + d(114.03)) * n + d(65.88))
        }
        ContourTermKind::TermIV => {
            (d::<S>(3.11) * ld + (d::<S>(3.11) * at.ln() + d(35.0)) * n + d(20.0)) * delta.powf(sigma - d(0.25))
        }
    };
    Ok(value)
}

/// Sum of the four contour terms at `delta`, before any simplification.
pub fn contour_sum<S: Scalar>(field: &FieldInvariants<S>, sigma: S, t: S, delta: S) -> Result<S> {
    let p = ContourParams { sigma, t, delta };
    Ok(contour_term_bound(ContourTermKind::TermI, p, field)?
        + contour_term_bound(ContourTermKind::TermII, p, field)?
        + contour_term_bound(ContourTermKind::TermIII, p, field)?
        + contour_term_bound(ContourTermKind::TermIV, p, field)?)
}

/// The coefficient of `Q^(2 - 2 sigma)` shared by the critical-strip bound
/// and `f~_K`.
fn strip_coefficient<S: Scalar>(n: S, sigma: S) -> S {
    let one = S::one();
    let eps = sigma + sigma - one;
    n / (one - sigma) + (one / eps).ln() / S::PI() + d::<S>(0.64) / eps + d(1.37)
}

/// Upper bound for `|zeta_K'/zeta_K(sigma + i t)|` in the critical strip,
/// assuming GRH, with `Q` taken at `|t|`.
pub fn zeta_logderiv_bound<S: Scalar>(field: &FieldInvariants<S>, sigma: S, t: S) -> Result<BoundBreakdown<S>> {
    check_sigma(sigma)?;
    if !(t.abs() >= d(10.0)) || !t.is_finite() {
        return Err(domain(format!("critical-strip bound needs |t| >= 10, got {t}")));
    }
    let q = conductor_q(field, t.abs())?;
    let n = field.n();
    let eps = sigma + sigma - S::one();
    let middle = strip_coefficient(n, sigma) * q.powf(d::<S>(2.0) - sigma - sigma);
    let degree = (d::<S>(0.07) / eps + d(4.0)) * n;
    let params = BoundParams { sigma, t, a: S::zero(), q };
    Ok(BoundBreakdown::from_terms(S::zero(), middle, degree, params))
}

/// `f~_K(sigma + i T) = Q + 2 c(sigma) Q^(2 - 2 sigma) + (0.14/(2 sigma - 1) - 20) n_K`.
pub fn f_tilde<S: Scalar>(field: &FieldInvariants<S>, sigma: S, t: S) -> Result<BoundBreakdown<S>> {
    check_sigma(sigma)?;
    if !(t >= d(10.0)) || !t.is_finite() {
        return Err(domain(format!("f~ needs T >= 10, got {t}")));
    }
    let q = conductor_q(field, t)?;
    f_tilde_at_q(field.n(), sigma, q, t)
}

/// `f~` with `Q` given directly, for sweeps over synthetic conductors.
pub fn f_tilde_at_q<S: Scalar>(n: S, sigma: S, q: S, t: S) -> Result<BoundBreakdown<S>> {
    check_sigma(sigma)?;
    if !(q > S::one()) {
        return Err(domain(format!("Q must exceed 1, got {q}")));
    }
    let eps = sigma + sigma - S::one();
    let middle = d::<S>(2.0) * strip_coefficient(n, sigma) * q.powf(d::<S>(2.0) - sigma - sigma);
    let degree = (d::<S>(0.14) / eps - d(20.0)) * n;
    let params = BoundParams { sigma, t, a: S::zero(), q };
    Ok(BoundBreakdown::from_terms(q, middle, degree, params))
}

/// The explicit formula for `f_K` with the digamma terms replaced by
/// `Re psi(z) <= log|z - 1/2|` and `zeta_K'/zeta_K` by its strip bound.
///
/// Needs `|t| >= sigma + 4` so that the digamma estimate applies at `s/2`.
pub fn f_assembled_bound<S: Scalar>(field: &FieldInvariants<S>, sigma: S, t: S) -> Result<S> {
    if !(t.abs() >= sigma + d(4.0)) {
        return Err(domain(format!("assembly needs |t| >= sigma + 4, got t = {t}")));
    }
    let zl = zeta_logderiv_bound(field, sigma, t)?.total;
    let one = S::one();
    let two = d::<S>(2.0);
    let n = field.n();
    let m0 = sigma * sigma + t * t;
    let m1 = (sigma - one) * (sigma - one) + t * t;
    // Re(2/s) + Re(2/(s-1))
    let poles = two * sigma / m0 + two * (sigma - one) / m1;
    let r12 = S::from_u32(field.r1() + field.r2()).unwrap();
    let r2 = S::from_u32(field.r2()).unwrap();
    // log|s/2 - 1/2| and log|(s+1)/2 - 1/2| = log|s/2|
    let psi_half = (m1.sqrt() / two).ln();
    let psi_shift = (m0.sqrt() / two).ln();
    Ok(two * zl + field.log_disc() - n * S::PI().ln() + poles + r12 * psi_half + r2 * psi_shift)
}

/// `(a/2) f~_K(1/2 + a/4 + i T)`: at most this many zeros have ordinates in
/// `[T - a, T + a]`, assuming GRH.
pub fn bound_window<S: Scalar>(field: &FieldInvariants<S>, t: S, a: S) -> Result<BoundBreakdown<S>> {
    if !(a > S::zero() && a < d(2.0)) {
        return Err(domain(format!("window half-width must lie in (0, 2), got {a}")));
    }
    if !(t >= d::<S>(10.0) + a) || !t.is_finite() {
        return Err(domain(format!("window bound needs T >= 10 + a, got T = {t}, a = {a}")));
    }
    let sigma = d::<S>(0.5) + a / d(4.0);
    let f = f_tilde(field, sigma, t)?;
    let mut params = f.params;
    params.a = a;
    Ok(f.scaled(a / d(2.0)).with_params(params))
}

/// Limit of [`bound_window`] as `a -> 0+`: `1.28 Q + 0.14 n_K`.
pub fn bound_window_limit<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<S> {
    let q = conductor_q(field, t)?;
    Ok(d::<S>(1.28) * q + d::<S>(0.14) * field.n())
}

/// `(3/10)(2 sigma - 1) f~_K(sigma + i T)`: a bound for the multiplicity of
/// a zero at `1/2 + i T`, assuming GRH.
pub fn bound_multiplicity<S: Scalar>(field: &FieldInvariants<S>, t: S, sigma: S) -> Result<BoundBreakdown<S>> {
    let f = f_tilde(field, sigma, t)?;
    Ok(f.scaled(d::<S>(0.3) * (sigma + sigma - S::one())))
}

/// Multiplicity bound with `sigma` chosen so that `2 sigma - 1 = log L / log Q`.
pub fn corollary1_bound<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<S> {
    if !(t >= d(10.0)) || !t.is_finite() {
        return Err(domain(format!("the corollary needs T >= 10, got {t}")));
    }
    let q = conductor_q(field, t)?;
    let l = q.ln();
    let ll = l.ln();
    let eps = ll / l;
    debug_assert!(eps <= d(0.36), "log L / log Q = {eps} for Q = {q}");
    let coeff = d::<S>(0.3) * ll + d(0.4) + d::<S>(0.2) * ll * ll / l + eps * (d::<S>(1.9) * field.n() + d(0.9));
    Ok(coeff * q / l)
}

/// The value of `sigma` used by [`corollary1_bound`].
pub fn corollary1_sigma<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<S> {
    let l = conductor_q(field, t)?.ln();
    Ok((S::one() + l.ln() / l) / d(2.0))
}

/// Height given either as `log T` or as `L = log(log T + 31)`.
///
/// The second form reaches `log T` far beyond the floating point range.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LogHeight {
    LogT(f64),
    L(f64),
}

/// Outcome of the three sufficient conditions for
/// `n(T; 0+) <= 4 log T / log log T` over the Riemann zeta function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Corollary2Margin {
    /// Left side over right side of the target inequality; at most 1 when it holds.
    pub bound_ratio: f64,
    /// `A(L) <= 2`.
    pub subcheck1: bool,
    /// `Q / log Q <= 2 log T / log log T`.
    pub subcheck2: bool,
    /// `A(L) <= 4 (1 - 1e-10)`.
    pub l_threshold_ok: bool,
    pub l: f64,
}

/// `A(L) = 0.3 log L + 2.8 log L / L + 0.2 log^2 L / L + 0.4`.
pub fn corollary2_coefficient(l: f64) -> f64 {
    let ll = l.ln();
    0.3 * ll + 2.8 * ll / l + 0.2 * ll * ll / l + 0.4
}

pub const COROLLARY2_SHIFT: f64 = 31.0;

pub fn corollary2_margin(h: LogHeight) -> Result<Corollary2Margin> {
    let l = match h {
        LogHeight::LogT(x) => {
            if !(x >= 23.0) || !x.is_finite() {
                return Err(domain(format!("log T must be at least 23, got {x}")));
            }
            (x + COROLLARY2_SHIFT).ln()
        }
        LogHeight::L(l) => {
            if !(l >= (23.0f64 + COROLLARY2_SHIFT).ln()) || !l.is_finite() {
                return Err(domain(format!("L must be at least log 54, got {l}")));
            }
            l
        }
    };
    // Q = e^L, log T = Q - 31; `rel = 31 / Q` underflows harmlessly.
    let rel = COROLLARY2_SHIFT * (-l).exp();
    let log_log_t = l + (-rel).ln_1p();
    let a = corollary2_coefficient(l);
    // (Q / log Q) / (log T / log log T)
    let growth = log_log_t / (l * (1.0 - rel));
    Ok(Corollary2Margin {
        bound_ratio: a / 4.0 * growth,
        subcheck1: a <= 2.0,
        subcheck2: growth <= 2.0,
        l_threshold_ok: a <= 4.0 * (1.0 - 1e-10),
        l,
    })
}

/// Convenience wrapper taking `log T` directly.
pub fn corollary2_margin_log_t(log_t: f64) -> Result<Corollary2Margin> {
    corollary2_margin(LogHeight::LogT(log_t))
}

/// Largest `L` (by bisection on `[lo, hi]`) with `A(L) <= level`, assuming
/// `A` is increasing on the bracket.
pub fn corollary2_boundary(level: f64, lo: f64, hi: f64) -> f64 {
    let (mut lo, mut hi) = (lo, hi);
    debug_assert!(corollary2_coefficient(lo) <= level && corollary2_coefficient(hi) > level);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if corollary2_coefficient(mid) <= level {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;
    use proptest::prelude::*;

    fn q() -> FieldInvariants<f64> {
        FieldInvariants::rationals()
    }

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn trudgian_examples() {
        let c = trudgian_count(&q(), 100.0).unwrap();
        assert!(close(c.main, 56.26, 0.01) && close(c.remainder_bound, 11.27, 0.01), "{c:?}");
        assert!(c.lower() <= 58.0 && 58.0 <= c.upper());
        let e = std::f64::consts::TAU * std::f64::consts::E;
        assert!(trudgian_count(&q(), e).unwrap().main.abs() < 1e-13);
        let k = build_field(2, 2, 0, 5f64.ln()).unwrap();
        let want = 50.0 / std::f64::consts::PI * (2.0 * (50.0 / e).ln() + 5f64.ln());
        assert!(close(trudgian_count(&k, 50.0).unwrap().main, want, 1e-12));
        assert!(trudgian_count(&q(), 0.5).is_err());
    }

    #[test]
    fn window_count_examples() {
        assert!(close(unit_window_count_bound(&q(), 100.0).unwrap(), 12.17, 0.005));
        assert!(close(unit_window_count_bound(&q(), 0.5).unwrap(), 8.68, 1e-12));
        assert!(close(unit_window_count_bound(&q(), -100.0).unwrap(), 12.17, 0.005));
    }

    #[test]
    fn zero_sum_examples() {
        assert!(close(zero_sum_bound(&q(), 2.0, 100.0, 0.25).unwrap(), 47.55, 0.005));
        let w = w_term(&q(), 50.0).unwrap();
        let want = (1f64.asinh() / std::f64::consts::PI + 0.317) * w + 10.3977;
        assert!(close(zero_sum_bound(&q(), 1.0, 50.0, 1.0).unwrap(), want, 1e-12));
        assert!(zero_sum_bound(&q(), 2.0, 2.5, 0.25).is_err());
        assert!(zero_sum_bound(&q(), 2.0, 100.0, 0.0).is_err());
    }

    #[test]
    fn contour_examples() {
        let f = q();
        let p = |sigma, t, delta| ContourParams { sigma, t, delta };
        let ii = contour_term_bound(ContourTermKind::TermII, p(0.75, 100.0, 1e-3), &f).unwrap();
        assert!(ii < 1e-60);
        let i = contour_term_bound(ContourTermKind::TermI, p(0.75, 0.0, 0.01), &f).unwrap();
        assert!(close(i, 16.79, 0.005), "{i}");
        let qq = conductor_q(&f, 100.0).unwrap();
        let iv = contour_term_bound(ContourTermKind::TermIV, p(0.75, 100.0, qq.powi(-2)), &f).unwrap();
        assert!(close(iv, 1.947, 0.001), "{iv}");
        assert!(contour_term_bound(ContourTermKind::TermIII, p(0.75, 5.0, 0.1), &f).is_err());
        assert!(contour_term_bound(ContourTermKind::TermI, p(1.0, 50.0, 0.1), &f).is_err());
        assert!(contour_term_bound(ContourTermKind::TermI, p(0.75, 50.0, 1.0), &f).is_err());
    }

    #[test]
    fn simplified_term_three_dominates_asinh_form() {
        let f = build_field(3, 1, 1, 4.2).unwrap();
        for &sigma in &[0.51, 0.6, 0.75, 0.9, 0.99] {
            for &t in &[10.0, 100.0, 1e6] {
                let p = ContourParams { sigma, t, delta: 0.01 };
                let a = contour_term_bound(ContourTermKind::TermIIIAsinh, p, &f).unwrap();
                let b = contour_term_bound(ContourTermKind::TermIII, p, &f).unwrap();
                assert!(b >= a, "sigma = {sigma}, t = {t}: {b} < {a}");
            }
        }
    }

    #[test]
    fn strip_bound_examples() {
        let b = zeta_logderiv_bound(&q(), 0.75, 100.0).unwrap();
        assert!(close(b.total, 45.14, 0.005) && close(b.middle_term, 41.00, 0.005) && close(b.degree_term, 4.14, 1e-12));
        let b = zeta_logderiv_bound(&q(), 0.6, 10.0).unwrap();
        let coeff = b.middle_term / b.params.q.powf(0.8);
        assert!(close(coeff - 1.0 / 0.4 - 0.64 / 0.2 - 1.37, 0.5123, 1e-4));
    }

    #[test]
    fn strip_bound_dominates_contour_sum() {
        // the simplification with delta = Q^-2 loses nothing it needs
        for f in [q(), build_field(2, 2, 0, 5f64.ln()).unwrap(), build_field(4, 0, 2, 12.0).unwrap()] {
            for &sigma in &[0.55, 0.75, 0.95] {
                for &t in &[10.0, 100.0, 1e5] {
                    let qq = conductor_q(&f, t).unwrap();
                    let sum = contour_sum(&f, sigma, t, qq.powi(-2)).unwrap();
                    let b = zeta_logderiv_bound(&f, sigma, t).unwrap().total;
                    assert!(b >= sum, "{f}, sigma = {sigma}, t = {t}: {b} < {sum}");
                }
            }
        }
    }

    #[test]
    fn f_tilde_examples() {
        let f = f_tilde(&q(), 0.75, 10.0).unwrap();
        // exact: Q = 33.302585, 2 (4 + ln 2/pi + 1.28 + 1.37) sqrt Q = 79.298667
        let qq = 31.0 + 10f64.ln();
        let middle = 2.0 * (4.0 + 2f64.ln() / std::f64::consts::PI + 2.65) * qq.sqrt();
        assert!(close(f.main_term, qq, 1e-12) && close(f.middle_term, middle, 1e-11) && close(f.degree_term, -19.72, 1e-12));
        assert!(close(middle, 79.298_667, 1e-6));
        // quoted to two decimals with the middle term rounded up
        assert!(close(f.total, 92.89, 0.01) && close(f.middle_term, 79.31, 0.015), "{f:?}");
        let g = f_tilde_at_q(1.0, 0.75, 100.0, 69f64.exp()).unwrap();
        assert!(close(g.total, 217.69, 0.01), "{g:?}");
        assert!(close(conductor_q(&q(), 69f64.exp()).unwrap(), 100.0, 1e-12));
        assert!(f_tilde(&q(), 0.75, 9.0).is_err());
    }

    #[test]
    fn f_tilde_dominates_assembly() {
        // over the rationals f~ - assembly = 11 + log 2 pi - 8 > 0
        let f = q();
        for &sigma in &[0.55, 0.75, 0.95] {
            for &t in &[10.0, 100.0, 1e4] {
                let a = f_assembled_bound(&f, sigma, t).unwrap();
                let b = f_tilde(&f, sigma, t).unwrap().total;
                assert!(b >= a, "{sigma} + {t}i: {b} < {a}");
            }
        }
        let a = f_assembled_bound(&f, 0.75, 100.0).unwrap();
        assert!(f_tilde(&f, 0.75, 100.0).unwrap().total - a > 4.0);
    }

    #[test]
    fn window_examples() {
        let b = bound_window(&q(), 11.0, 1.0).unwrap();
        let qq = b.params.q;
        assert!(close(b.total, 46.55, 0.01), "{b:?}");
        assert!(b.total <= qq / 2.0 + 6.9 * qq.sqrt() - 9.0);
        let h = bound_window(&q(), 10.5, 0.5).unwrap();
        let qh = h.params.q;
        assert!(h.total <= qh / 4.0 + 3.6 * qh.powf(0.75) - 4.0, "{h:?}");
        assert!(bound_window(&q(), 9.0, 1.0).is_err());
        assert!(bound_window(&q(), 20.0, 2.0).is_err());
        assert!(bound_window(&q(), 20.0, 0.0).is_err());
    }

    #[test]
    fn window_displays_for_all_fields() {
        // n(T;1) <= Q/2 + (4n + 2.9) sqrt Q - 9n and
        // n(T;1/2) <= Q/4 + (1.4n + 2.2) Q^(3/4) - 4n
        for deg in 1..8u32 {
            let f = if deg == 1 { q() } else { build_field(deg, deg, 0, 2.0 * deg as f64).unwrap() };
            let n = deg as f64;
            for &t in &[11.0, 50.0, 1e3, 1e8] {
                let b = bound_window(&f, t, 1.0).unwrap();
                let qq = b.params.q;
                assert!(b.total <= qq / 2.0 + (4.0 * n + 2.9) * qq.sqrt() - 9.0 * n);
                let h = bound_window(&f, t, 0.5).unwrap();
                assert!(h.total <= qq / 4.0 + (1.4 * n + 2.2) * qq.powf(0.75) - 4.0 * n);
            }
        }
    }

    #[test]
    fn multiplicity_examples() {
        let m = bound_multiplicity(&q(), 10.0, 0.75).unwrap();
        let qq = m.params.q;
        assert!(close(m.total, 13.93, 0.005), "{m:?}");
        assert!(m.total <= 3.0 * qq / 20.0 + 2.1 * qq.sqrt() - 2.9);
        let near = bound_multiplicity(&q(), 10.0, 0.51).unwrap();
        assert!(near.total.is_finite() && near.total > 0.0);
        let grid: Vec<f64> = (51..100).map(|k| k as f64 / 100.0).collect();
        let vals: Vec<f64> = grid.iter().map(|&s| bound_multiplicity(&q(), 10.0, s).unwrap().total).collect();
        let (imin, _) = vals.iter().enumerate().fold((0, f64::INFINITY), |acc, (i, &v)| if v < acc.1 { (i, v) } else { acc });
        assert!(imin > 0 && imin < grid.len() - 1);
    }

    #[test]
    fn corollary1_examples() {
        let c = corollary1_bound(&q(), 10.0).unwrap();
        assert!(close(c, 17.74, 0.01), "{c}");
        let sigma = corollary1_sigma(&q(), 10.0).unwrap();
        assert!(c >= bound_multiplicity(&q(), 10.0, sigma).unwrap().total);
        let k = build_field(2, 2, 0, 5f64.ln()).unwrap();
        assert!(corollary1_bound(&k, 100.0).unwrap().is_finite());
        assert!(corollary1_bound(&q(), 9.0).is_err());
    }

    #[test]
    fn corollary2_ranges() {
        for &x in &[23.0, 1e3, 1e10, 1e30, 1e55] {
            let m = corollary2_margin_log_t(x).unwrap();
            assert!(m.subcheck1 && m.subcheck2 && m.bound_ratio <= 1.0, "{x}: {m:?}");
        }
        assert!(corollary2_margin_log_t(22.0).is_err());
        let edge = corollary2_boundary(4.0 * (1.0 - 1e-10), 1e3, 1e6);
        assert!((edge - 162_546.6).abs() < 0.1, "{edge}");
        assert!(corollary2_margin(LogHeight::L(edge - 0.05)).unwrap().l_threshold_ok);
        assert!(!corollary2_margin(LogHeight::L(edge + 0.05)).unwrap().l_threshold_ok);
        let first = corollary2_boundary(2.0, 10.0, 1e3);
        assert!(first.exp() > 1e55, "subcheck1 boundary at log T = {}", first.exp());
    }

    proptest! {
        #[test]
        fn monotone_in_log_disc(ld in 0.5f64..100.0, dd in 0.01f64..20.0, t in 12.0f64..1e6, sigma in 0.51f64..0.99, a in 0.05f64..1.95) {
            let f = build_field(3, 1, 1, ld).unwrap();
            let g = f.with_log_disc(ld + dd).unwrap();
            prop_assert!(trudgian_count(&g, t).unwrap().main > trudgian_count(&f, t).unwrap().main);
            prop_assert!(unit_window_count_bound(&g, t).unwrap() > unit_window_count_bound(&f, t).unwrap());
            prop_assert!(zeta_logderiv_bound(&g, sigma, t).unwrap().total > zeta_logderiv_bound(&f, sigma, t).unwrap().total);
            prop_assert!(f_tilde(&g, sigma, t).unwrap().total > f_tilde(&f, sigma, t).unwrap().total);
            prop_assert!(bound_window(&g, t, a).unwrap().total > bound_window(&f, t, a).unwrap().total);
            prop_assert!(bound_multiplicity(&g, t, sigma).unwrap().total > bound_multiplicity(&f, t, sigma).unwrap().total);
            prop_assert!(corollary1_bound(&g, t).unwrap() > corollary1_bound(&f, t).unwrap());
        }

        #[test]
        fn breakdown_adds_up(t in 10.0f64..1e9, sigma in 0.501f64..0.999) {
            let b = f_tilde(&q(), sigma, t).unwrap();
            let sum = b.main_term + b.middle_term + b.degree_term;
            prop_assert!((b.total - sum).abs() <= 4.0 * f64::EPSILON * (b.main_term.abs() + b.middle_term.abs() + b.degree_term.abs()));
        }

        #[test]
        fn window_tends_to_limit(t in 11.0f64..1e6) {
            // the a -> 0+ limit, extrapolated from a = 0.2, 0.1, 0.05
            let w = |a: f64| bound_window(&q(), t, a).unwrap().total;
            let r1 = 2.0 * w(0.1) - w(0.2);
            let r2 = 2.0 * w(0.05) - w(0.1);
            let rich = (4.0 * r2 - r1) / 3.0;
            let lim = bound_window_limit(&q(), t).unwrap();
            prop_assert!((rich - lim).abs() <= 0.05 * lim, "{rich} vs {lim}");
        }
    }
}
