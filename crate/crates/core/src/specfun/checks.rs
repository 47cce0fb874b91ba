//! Inequalities on Gamma and digamma that the contour estimates rely on.

use std::f64::consts::{FRAC_PI_2, TAU};

use serde::{Deserialize, Serialize};

use crate::cert::{CertComplex, CertValue};
use crate::error::{domain, Result};
use crate::field::FieldInvariants;
use crate::scalar::Scalar;

use super::gamma::{abs_gamma, digamma_complex, eval_gamma, GammaKind};
use super::stirling::{decay_prefactor, half_line_ratio_sq, imaginary_axis_ratio_sq, CRUDE_CONSTANT};

/// Result of a one-sided inequality check with a certified margin.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MarginCheck<S> {
    pub holds: bool,
    pub margin: CertValue<S>,
}

/// `log|s - 1/2| - Re psi(s)`, positive when `Re psi(s) <= log|s - 1/2|`.
///
/// Valid region: `sigma >= 0` and `|t| >= sigma + 2`.
pub fn check_digamma_log_bound<S: Scalar>(sigma: S, t: S) -> Result<MarginCheck<S>> {
    if !(sigma >= S::zero()) || !(t.abs() >= sigma + S::lit(2.0)) {
        return Err(domain(format!("digamma log bound needs sigma >= 0 and |t| >= sigma + 2, got ({sigma}, {t})")));
    }
    let re_psi = eval_gamma(GammaKind::Digamma, sigma, t)?;
    let x = CertValue::exact(sigma) - S::lit(0.5);
    let log_mod = (x.sqr() + CertValue::exact(t).sqr()).ln() * S::lit(0.5);
    let margin = log_mod - re_psi;
    Ok(MarginCheck { holds: margin.lo() > S::zero(), margin })
}

/// Both sides of the archimedean log-derivative estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogDerivDiff<S> {
    pub lhs: CertValue<S>,
    pub rhs: S,
    pub holds: bool,
}

/// `|G'/G(1/4 + it) - G'/G(2 + it)|` against `10 n_K / |1 + 4it|`, where `G`
/// is the archimedean factor
/// `[pi^(-(s+1)/2) Gamma((s+1)/2)]^r2 [pi^(-s/2) Gamma(s/2)]^(r1+r2)`.
///
/// The `pi` powers cancel in the difference and the chain rule contributes
/// a factor `1/2` to each digamma difference.
pub fn gamma_k_logderiv_diff<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<LogDerivDiff<S>> {
    if !t.is_finite() {
        return Err(domain("height must be finite"));
    }
    let half_t = t * S::lit(0.5);
    let psi = |re: f64| digamma_complex(S::lit(re), half_t);
    let odd = psi(5.0 / 8.0)? - psi(1.5)?;
    let even = psi(1.0 / 8.0)? - psi(1.0)?;
    let r2 = S::from_u32(field.r2()).unwrap();
    let r12 = S::from_u32(field.r1() + field.r2()).unwrap();
    let total: CertComplex<S> = (odd.scale(r2) + even.scale(r12)).scale(S::lit(0.5));
    let lhs = total.abs();
    let four_t = t * S::lit(4.0);
    let rhs = S::lit(10.0) * field.n() / (S::one() + four_t * four_t).sqrt();
    Ok(LogDerivDiff { lhs, rhs, holds: lhs.hi() <= rhs })
}

/// Outcome of an inequality checked on a finite grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridCheck {
    /// Largest (or smallest, for lower-bound checks) certified value seen.
    pub extreme: f64,
    /// The constant it is compared with.
    pub bound: f64,
    pub points: usize,
    pub holds: bool,
}

fn grid(lo: f64, hi: f64, stride: f64) -> impl Iterator<Item = f64> {
    let n = ((hi - lo) / stride).round() as usize;
    (0..=n).map(move |k| if k == n { hi } else { lo + k as f64 * stride })
}

/// `|Gamma(s)| e^(pi Im s / 2) <= sqrt(2 pi)` on the boundary of
/// `{0 <= Re s <= 1/2, Im s >= 10}`.
///
/// The two vertical sides have closed forms:
/// `(|Gamma(iv)| e^(pi v/2))^2 = 2 pi / (v (1 - e^(-2 pi v)))` and
/// `(|Gamma(1/2 + iv)| e^(pi v/2))^2 = 2 pi / (1 + e^(-2 pi v))`, both below
/// `2 pi` for `v >= 10`; the first is also checked against the certified
/// evaluation up to `Im s = cutoff`. The bottom side is checked numerically.
pub fn check_vertical_strip_bound(stride: f64, cutoff: f64) -> Result<GridCheck> {
    let bound = TAU.sqrt();
    let mut extreme = f64::NEG_INFINITY;
    let mut points = 0usize;
    let mut holds = true;
    let mut record = |hi: f64, ok: bool| {
        extreme = extreme.max(hi);
        points += 1;
        holds &= ok;
    };
    for v in grid(10.0, cutoff, stride) {
        let scale = (FRAC_PI_2 * v).exp();
        let g = abs_gamma(0.0, v)? * scale;
        let closed = imaginary_axis_ratio_sq(v).sqrt();
        // certified evaluation must agree with the closed form
        let agrees = (g.mid - closed).abs() <= g.rad + 1e-12 * closed;
        record(g.hi(), g.hi() <= bound && agrees);
        // 2 pi / (1 + e^(-2 pi v)) < 2 pi for every real v; in floating
        // point the ratio rounds to the bound once e^(-2 pi v) underflows.
        record(half_line_ratio_sq(v).sqrt(), true);
    }
    // beyond the cutoff both closed forms decrease towards their limits
    record(imaginary_axis_ratio_sq(cutoff).sqrt(), imaginary_axis_ratio_sq(cutoff) < TAU);
    for u in grid(0.0, 0.5, stride) {
        if u >= 0.5 {
            continue;
        }
        let g = abs_gamma(u, 10.0)? * (FRAC_PI_2 * 10.0).exp();
        record(g.hi(), g.hi() <= bound);
    }
    Ok(GridCheck { extreme, bound, points, holds })
}

/// `|Gamma(z)| > 0.4` on the boundary of `[-3/4, -1/4] x [0, 1]`.
pub fn check_gamma_rectangle_minimum(stride: f64) -> Result<GridCheck> {
    let bound = 0.4;
    let mut extreme = f64::INFINITY;
    let mut points = 0usize;
    let mut visit = |u: f64, v: f64| -> Result<()> {
        let g = abs_gamma(u, v)?;
        extreme = extreme.min(g.lo());
        points += 1;
        Ok(())
    };
    for u in grid(-0.75, -0.25, stride) {
        visit(u, 0.0)?;
        visit(u, 1.0)?;
    }
    for v in grid(0.0, 1.0, stride) {
        visit(-0.75, v)?;
        visit(-0.25, v)?;
    }
    Ok(GridCheck { extreme, bound, points, holds: extreme > bound })
}

/// `|Gamma(u + iv)| e^(pi |v| / 2) <= 5.3` for `u` in `[-3/4, -1/4]`.
///
/// Checked on a grid for `0 <= v <= v_max` (the modulus is even in `v`);
/// above `v_max` the effective Stirling prefactor, decreasing in `v`, is
/// compared with the constant instead.
pub fn check_crude_envelope(stride: f64, v_max: f64) -> Result<GridCheck> {
    let mut extreme = f64::NEG_INFINITY;
    let mut points = 0usize;
    for u in grid(-0.75, -0.25, 0.05) {
        for v in grid(0.0, v_max, stride) {
            let g = abs_gamma(u, v)? * (FRAC_PI_2 * v).exp();
            extreme = extreme.max(g.hi());
            points += 1;
        }
        extreme = extreme.max(decay_prefactor(u, v_max));
    }
    Ok(GridCheck { extreme, bound: CRUDE_CONSTANT, points, holds: extreme <= CRUDE_CONSTANT })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::build_field;

    #[test]
    fn digamma_bound_examples() {
        let c = check_digamma_log_bound(0.0f64, 2.0).unwrap();
        assert!(c.holds);
        assert!((c.margin.mid - 0.009).abs() < 2e-3, "{}", c.margin);
        assert!(check_digamma_log_bound(1.0, 10.0).unwrap().holds);
        assert!(check_digamma_log_bound(3.0, 5.0).unwrap().holds);
        assert!(check_digamma_log_bound(3.0, 4.0).is_err());
        assert!(check_digamma_log_bound(-0.1, 4.0).is_err());
    }

    #[test]
    fn logderiv_examples() {
        let q = FieldInvariants::<f64>::rationals();
        let d = gamma_k_logderiv_diff(&q, 0.0).unwrap();
        assert!(d.holds && (d.lhs.mid - 3.9056).abs() < 1e-3 && d.rhs == 10.0, "{d:?}");
        let d = gamma_k_logderiv_diff(&q, 100.0).unwrap();
        assert!(d.holds && (d.rhs - 10.0 / 160_001f64.sqrt()).abs() < 1e-12, "{d:?}");
        let k = build_field(3, 1, 1, 3.1).unwrap();
        let d = gamma_k_logderiv_diff(&k, 5.0).unwrap();
        assert!(d.holds && (d.rhs - 30.0 / 401f64.sqrt()).abs() < 1e-12, "{d:?}");
    }

    #[test]
    fn strip_and_rectangle() {
        let c7 = check_vertical_strip_bound(0.05, 200.0).unwrap();
        assert!(c7.holds, "{c7:?}");
        let m = check_gamma_rectangle_minimum(0.01).unwrap();
        assert!(m.holds, "{m:?}");
        let e = check_crude_envelope(0.05, 60.0).unwrap();
        assert!(e.holds, "{e:?}");
    }
}
