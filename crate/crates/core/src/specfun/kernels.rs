//! Integrals of `|Gamma(u + i v)|` against the four weights used by the
//! contour estimates, and the exponential envelopes that dominate them.

use std::f64::consts::{FRAC_2_PI, FRAC_PI_2, PI};

use serde::{Deserialize, Serialize};

use crate::cert::CertValue;
use crate::error::{domain, Result};
use crate::scalar::Scalar;

use super::gamma::abs_gamma;
use super::quad::{integrate, QuadOptions};
use super::stirling::{abs_tail, linear_weight_tail, CRUDE_CONSTANT};

/// Weight of a kernel integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KernelKind {
    /// `int |Gamma(u + i y)| dy`.
    AbsLine,
    /// `int |Gamma(u + i(t - y))| log(1 + |y|) dy`.
    LogWeight,
    /// `int |Gamma(u + i(t - y))| / |1 + 4 i y| dy`.
    QuarterPole,
    /// `int |Gamma(u + i(t - y))| / (1 + alpha y^2) dy`, `alpha` in {1, 2}.
    Lorentz { alpha: u32 },
}

impl KernelKind {
    fn validate(&self) -> Result<()> {
        match self {
            KernelKind::Lorentz { alpha } if *alpha != 1 && *alpha != 2 => {
                Err(domain(format!("Lorentz weight needs alpha in {{1, 2}}, got {alpha}")))
            }
            _ => Ok(()),
        }
    }

    fn needs_height(&self) -> bool {
        !matches!(self, KernelKind::AbsLine)
    }

    /// Stated upper bound for the integral at height `t`.
    pub fn stated_constant(&self, t: f64) -> f64 {
        match self {
            KernelKind::AbsLine => 4.73,
            KernelKind::LogWeight => 4.73 * (1.0 + t.abs()).ln(),
            KernelKind::QuarterPole => 0.171,
            KernelKind::Lorentz { alpha: 1 } => 0.013,
            KernelKind::Lorentz { .. } => 0.007,
        }
    }

    /// The weight as a function of `y`, as a plain float.
    fn weight_f64(&self, y: f64) -> f64 {
        match self {
            KernelKind::AbsLine => 1.0,
            KernelKind::LogWeight => y.abs().ln_1p(),
            KernelKind::QuarterPole => 1.0 / (1.0 + 16.0 * y * y).sqrt(),
            KernelKind::Lorentz { alpha } => 1.0 / (1.0 + *alpha as f64 * y * y),
        }
    }

    fn weight<S: Scalar>(&self, y: CertValue<S>) -> CertValue<S> {
        let one = CertValue::exact(S::one());
        match self {
            KernelKind::AbsLine => one,
            KernelKind::LogWeight => (y.abs() + one).ln(),
            KernelKind::QuarterPole => (y.sqr() * S::lit(16.0) + one).sqrt().recip(),
            KernelKind::Lorentz { alpha } => (y.sqr() * S::lit(*alpha as f64) + one).recip(),
        }
    }
}

/// Half-width of the truncated integration range around the Gamma peak.
const GAMMA_CUTOFF: f64 = 30.0;
/// Half-width of the truncated range for the exponential envelopes.
const ENVELOPE_CUTOFF: f64 = 40.0;

fn quad_opts() -> QuadOptions {
    QuadOptions { abs_tol: 1e-12, max_depth: 30, initial_panel: 1.0 }
}

fn check_strip(u: f64) -> Result<()> {
    if !(-0.75..=-0.25).contains(&u) {
        return Err(domain(format!("kernel integrals need u in [-3/4, -1/4], got {u}")));
    }
    Ok(())
}

/// Certified value of the kernel integral of `kind` at `(u, t)`.
///
/// The integral is taken in `v = t - y` over `|v| <= 30`; the two tails are
/// bounded with the effective Stirling formula and added to the radius.
pub fn kernel_integral<S: Scalar>(kind: KernelKind, u: S, t: S) -> Result<CertValue<S>> {
    kind.validate()?;
    let uf = u.to_f64_lossy();
    check_strip(uf)?;
    let tf = if kind.needs_height() {
        let tf = t.to_f64_lossy();
        if !(tf.abs() >= 10.0) || !tf.is_finite() {
            return Err(domain(format!("kernel integral needs |t| >= 10, got {tf}")));
        }
        tf.abs()
    } else {
        0.0
    };
    let tt = S::lit(tf);
    let y_cut = GAMMA_CUTOFF;
    let body = integrate(
        |v: S| {
            let g = abs_gamma(u, v)?;
            let y = CertValue::exact(tt) - v;
            Ok(g * kind.weight(y))
        },
        S::lit(-y_cut),
        S::lit(y_cut),
        &[S::zero(), tt],
        quad_opts(),
    )?;
    let tail = match kind {
        KernelKind::LogWeight => {
            let b = 1.0 / (1.0 + tf + y_cut);
            let a = (1.0 + tf + y_cut).ln() - y_cut * b;
            2.0 * linear_weight_tail(uf, y_cut, a, b)
        }
        _ => 2.0 * abs_tail(uf, y_cut),
    };
    Ok(body.inflate(S::lit(tail)))
}

/// `int_R exp(-pi |t - y| / 2) w(y) dy` for the quarter-pole and Lorentz
/// weights: the envelopes `F(t)` and `F_alpha(t)`.
pub fn exp_envelope<S: Scalar>(kind: KernelKind, t: S) -> Result<CertValue<S>> {
    kind.validate()?;
    if !matches!(kind, KernelKind::QuarterPole | KernelKind::Lorentz { .. }) {
        return Err(domain("exponential envelopes exist for the quarter-pole and Lorentz weights only"));
    }
    if !t.is_finite() {
        return Err(domain("envelope height must be finite"));
    }
    let c = S::lit(FRAC_PI_2);
    let cut = S::lit(ENVELOPE_CUTOFF);
    let body = integrate(
        |y: S| {
            let d = (CertValue::exact(t) - y).abs();
            Ok((-(d * c)).exp() * kind.weight(CertValue::exact(y)))
        },
        t - cut,
        t + cut,
        &[S::zero(), t],
        quad_opts(),
    )?;
    // weights are at most one
    let tail = 2.0 * FRAC_2_PI * (-FRAC_PI_2 * ENVELOPE_CUTOFF).exp();
    Ok(body.inflate(S::lit(tail)))
}

/// The maximum-principle certificate for an envelope: if
/// `F(10) > (4 / pi) w(10)` then `F(10)` is the maximum of `F` on `[10, inf)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EnvelopeCertificate {
    pub at_ten: CertValue<f64>,
    pub threshold: f64,
    pub holds: bool,
    /// `5.3 F(10)`: the resulting bound for the kernel integral.
    pub kernel_bound: f64,
}

pub fn envelope_certificate(kind: KernelKind) -> Result<EnvelopeCertificate> {
    let at_ten = exp_envelope(kind, 10.0f64)?;
    let threshold = 4.0 / PI * kind.weight_f64(10.0);
    Ok(EnvelopeCertificate {
        at_ten,
        threshold,
        holds: at_ten.lo() > threshold,
        kernel_bound: CRUDE_CONSTANT * at_ten.hi(),
    })
}

/// `int_v^inf |Gamma(u + i w)| dw` (`order = 1`) or
/// `int_v^inf (w - v) |Gamma(u + i w)| dw` (`order = 2`), for `v >= 0`.
///
/// These are `-F_1(u, v)` and `F_2(u, v)`, the iterated tails used in the
/// log-weight reduction.
pub fn gamma_tail_moment(u: f64, v: f64, order: u32) -> Result<CertValue<f64>> {
    if !(u < 0.0) || !(v >= 0.0) || !(order == 1 || order == 2) {
        return Err(domain(format!("tail moment needs u < 0, v >= 0, order 1 or 2; got ({u}, {v}, {order})")));
    }
    let hi = v + GAMMA_CUTOFF;
    let body = integrate(
        |w: f64| {
            let g = abs_gamma(u, w)?;
            Ok(if order == 1 { g } else { g * (CertValue::exact(w) - v) })
        },
        v,
        hi,
        &[],
        quad_opts(),
    )?;
    let tail = if order == 1 { abs_tail(u, hi) } else { linear_weight_tail(u, hi, -v, 1.0) };
    Ok(body.inflate(tail))
}

/// Both sides of `2 (1 + t)^2 F_2(u, t) <= int_0^t F_2(u, y) dy`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogWeightReduction {
    pub lhs: CertValue<f64>,
    pub rhs: CertValue<f64>,
    pub holds: bool,
}

/// Checks the inequality whose truth makes the log-weighted kernel at most
/// `4.73 log(1 + t)`.
///
/// The right side is evaluated as
/// `1/2 int_0^t w^2 |Gamma| dw + int_t^inf (t w - t^2/2) |Gamma| dw`.
pub fn log_weight_reduction(u: f64, t: f64) -> Result<LogWeightReduction> {
    check_strip(u)?;
    if !(t >= 10.0) || !t.is_finite() {
        return Err(domain(format!("log-weight reduction needs t >= 10, got {t}")));
    }
    let f2 = gamma_tail_moment(u, t, 2)?;
    let lhs = f2 * ((1.0 + t) * (1.0 + t) * 2.0);
    let near = integrate(
        |w: f64| Ok(abs_gamma(u, w)? * (CertValue::exact(w).sqr() * 0.5)),
        0.0,
        t,
        &[],
        quad_opts(),
    )?;
    let hi = t + GAMMA_CUTOFF;
    let far = integrate(
        |w: f64| Ok(abs_gamma(u, w)? * (CertValue::exact(w) * t - t * t * 0.5)),
        t,
        hi,
        &[],
        quad_opts(),
    )?
    .inflate(linear_weight_tail(u, hi, -t * t / 2.0, t));
    let rhs = near + far;
    Ok(LogWeightReduction { lhs, rhs, holds: lhs.hi() < rhs.lo() })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn abs_line_endpoints() {
        let q = kernel_integral(KernelKind::AbsLine, -0.25f64, 0.0).unwrap();
        assert!(q.hi() <= 4.73, "{q}");
        assert!((q.mid - 4.72183).abs() < 1e-4, "{q}");
        let r = kernel_integral(KernelKind::AbsLine, -0.75f64, 0.0).unwrap();
        assert!(r.hi() <= 4.43, "{r}");
        assert!(q.rad < 1e-9 && r.rad < 1e-9);
    }

    #[test]
    fn quarter_pole_below_constant() {
        let k = kernel_integral(KernelKind::QuarterPole, -0.25f64, 10.0).unwrap();
        assert!(k.hi() <= 0.171, "{k}");
        let f = exp_envelope(KernelKind::QuarterPole, 10.0f64).unwrap();
        assert!((f.mid - 0.032093).abs() < 1e-5, "{f}");
        assert!(k.hi() <= 5.3 * f.hi());
    }

    #[test]
    fn envelope_values() {
        let f1 = exp_envelope(KernelKind::Lorentz { alpha: 1 }, 10.0f64).unwrap();
        let f2 = exp_envelope(KernelKind::Lorentz { alpha: 2 }, 10.0f64).unwrap();
        assert!((f1.mid - 0.012935).abs() < 1e-5, "{f1}");
        assert!((f2.mid - 0.006502).abs() < 1e-5, "{f2}");
        for kind in [KernelKind::QuarterPole, KernelKind::Lorentz { alpha: 1 }, KernelKind::Lorentz { alpha: 2 }] {
            assert!(envelope_certificate(kind).unwrap().holds, "{kind:?}");
        }
    }

    #[test]
    fn lorentz_reference_values() {
        // high precision reference values of the Lorentz kernels at t = 10
        for &(alpha, u, want) in &[(1, -0.25, 0.0473), (1, -0.5, 0.0404), (2, -0.25, 0.0238), (2, -0.75, 0.0222)] {
            let k = kernel_integral(KernelKind::Lorentz { alpha }, u, 10.0f64).unwrap();
            assert!((k.mid - want).abs() < 1e-4, "alpha = {alpha}, u = {u}: {k}");
        }
    }

    #[test]
    fn log_weight_value() {
        let k = kernel_integral(KernelKind::LogWeight, -0.25f64, 10.0).unwrap();
        assert!(k.hi() <= 4.73 * 11f64.ln(), "{k}");
    }

    #[test]
    fn reduction_inequality() {
        for &u in &[-0.75, -0.5, -0.25] {
            let r = log_weight_reduction(u, 10.0).unwrap();
            assert!(r.holds, "{r:?}");
            assert!(r.lhs.hi() < 2e-5 && r.rhs.lo() > 0.06, "{r:?}");
        }
    }

    #[test]
    fn domains() {
        assert!(kernel_integral(KernelKind::AbsLine, -0.8f64, 0.0).is_err());
        assert!(kernel_integral(KernelKind::QuarterPole, -0.5f64, 5.0).is_err());
        assert!(kernel_integral(KernelKind::Lorentz { alpha: 3 }, -0.5f64, 10.0).is_err());
        assert!(exp_envelope(KernelKind::AbsLine, 10.0f64).is_err());
    }

    #[test]
    fn kernels_decrease_past_ten() {
        for kind in [KernelKind::QuarterPole, KernelKind::Lorentz { alpha: 1 }, KernelKind::Lorentz { alpha: 2 }] {
            let at10 = kernel_integral(kind, -0.5f64, 10.0).unwrap();
            for &t in &[15.0, 20.0, 50.0] {
                let k = kernel_integral(kind, -0.5f64, t).unwrap();
                assert!(k.hi() <= at10.hi(), "{kind:?} at {t}");
                let e = exp_envelope(kind, t).unwrap();
                assert!(e.hi() <= exp_envelope(kind, 10.0f64).unwrap().hi());
            }
        }
    }

    #[test]
    fn tail_moments_consistent() {
        // F_2(v) - F_2(v + h) ~ h F_1(v)
        let (u, v, h) = (-0.5, 10.0, 1e-3);
        let a = gamma_tail_moment(u, v, 2).unwrap();
        let b = gamma_tail_moment(u, v + h, 2).unwrap();
        let f1 = gamma_tail_moment(u, v, 1).unwrap();
        assert!(((a.mid - b.mid) / h - f1.mid).abs() < 1e-3 * f1.mid);
    }
}
