//! Effective Stirling upper bounds for `|Gamma(u + i v)|` with `u < 0`.

use std::f64::consts::{FRAC_PI_2, TAU};

use crate::cert::CertValue;
use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// Constant of the crude envelope `|Gamma(u + i v)| <= 5.3 exp(-pi |v| / 2)`.
pub const CRUDE_CONSTANT: f64 = 5.3;

fn in_crude_strip(u: f64) -> bool {
    (-0.75..=-0.25).contains(&u)
}

/// `sqrt(2 pi) |z|^(u - 1/2) exp(-pi v / 2) exp(-u + v atan(u / v)) exp(|R|)`
/// with `|R| <= (pi/2 - atan(u/v)) / (8 v)`.
fn effective(u: f64, v: f64) -> f64 {
    let r = (FRAC_PI_2 - (u / v).atan()) / (8.0 * v);
    let log = 0.5 * TAU.ln() + (u - 0.5) * u.hypot(v).ln() - FRAC_PI_2 * v - u + v * (u / v).atan() + r;
    log.exp()
}

/// `5.3 exp(-pi |v| / 2)`.
pub fn crude_envelope(v: f64) -> f64 {
    CRUDE_CONSTANT * (-FRAC_PI_2 * v.abs()).exp()
}

/// Certified upper bound for `|Gamma(u + i v)|`.
///
/// The effective form needs `u < 0` and `v > 0`; inside the strip
/// `-3/4 <= u <= -1/4` the crude envelope is also available for any `v`
/// and the smaller of the two is returned.
pub fn stirling_envelope<S: Scalar>(u: S, v: S) -> Result<CertValue<S>> {
    let (uf, vf) = (u.to_f64_lossy(), v.to_f64_lossy());
    if !uf.is_finite() || !vf.is_finite() {
        return Err(domain("envelope arguments must be finite"));
    }
    let crude = in_crude_strip(uf).then(|| crude_envelope(vf));
    let bound = if uf < 0.0 && vf > 0.0 {
        let e = effective(uf, vf);
        crude.map_or(e, |c| c.min(e))
    } else if let Some(c) = crude {
        c
    } else {
        return Err(domain(format!("effective Stirling bound needs u < 0 and v > 0, got ({uf}, {vf})")));
    };
    // Upper bound only: a few ulps of headroom on top of the value.
    let hi = bound * (1.0 + 1.0e-12);
    Ok(CertValue::from_bounds(S::zero(), S::lit(hi)))
}

/// `M(Y)` with `|Gamma(u + i v)| <= M(Y) exp(-pi v / 2)` for every `v >= Y`,
/// `u < 0`, `Y > 0`.
pub fn decay_prefactor(u: f64, y: f64) -> f64 {
    let a = u.abs();
    let log = 0.5 * TAU.ln() + (u - 0.5) * y.ln() + a.powi(3) / (3.0 * y * y) + (FRAC_PI_2 + a / y) / (8.0 * y);
    log.exp() * (1.0 + 1.0e-12)
}

/// Upper bound for `int_Y^inf (A + B v) |Gamma(u + i v)| dv` with `A + B Y >= 0`, `B >= 0`.
pub fn linear_weight_tail(u: f64, y: f64, a: f64, b: f64) -> f64 {
    debug_assert!(a + b * y >= 0.0 && b >= 0.0);
    let c = FRAC_PI_2;
    decay_prefactor(u, y) * (-c * y).exp() * ((a + b * y) / c + b / (c * c)) * (1.0 + 1.0e-12)
}

/// Upper bound for `int_Y^inf |Gamma(u + i v)| dv`.
pub fn abs_tail(u: f64, y: f64) -> f64 {
    linear_weight_tail(u, y, 1.0, 0.0)
}

/// `2 pi / (v sinh(pi v)) * e^(pi v)`, i.e. `(|Gamma(i v)| e^(pi v / 2))^2`.
pub(crate) fn imaginary_axis_ratio_sq(v: f64) -> f64 {
    TAU / (v * (1.0 - (-TAU * v).exp()))
}

/// `(|Gamma(1/2 + i v)| e^(pi v / 2))^2 = 2 pi / (1 + e^(-2 pi v))`.
pub(crate) fn half_line_ratio_sq(v: f64) -> f64 {
    TAU / (1.0 + (-TAU * v).exp())
}
