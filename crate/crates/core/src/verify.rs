//! Named property checks, grouped into suites, for command-line
//! verification and the acceptance run.
//!
//! Every check is deterministic: random inputs come from a seeded ChaCha
//! generator. A check that hits an error reports it as a failure.

use std::f64::consts::SQRT_2;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bounds::{
    bound_multiplicity, bound_window, corollary2_boundary, corollary2_margin, corollary2_margin_log_t, f_tilde,
    trudgian_count, LogHeight,
};
use crate::error::{Error, Result};
use crate::field::{build_field, FieldInvariants};
use crate::measures::{Polynomial, SturmChain};
use crate::measures::{covering_slack, solve_five_delta, three_delta, three_delta_cost, three_delta_extra_root_sq};
use crate::riemann::{chebyshev_psi1_sweep, completed_zeta_abs, f_explicit, f_from_zeros, prime_exp_sum, zeta_em, PrimeTable};
use crate::specfun::{
    check_crude_envelope, check_digamma_log_bound, check_gamma_rectangle_minimum, check_vertical_strip_bound,
    envelope_certificate, exp_envelope, gamma_k_logderiv_diff, kernel_integral, log_weight_reduction, KernelKind,
};
use crate::zerodata::{comparison_table, ZeroTable};

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: &'static str, passed: bool, detail: impl Into<String>) -> Self {
        Self { name, passed, detail: detail.into() }
    }

    /// Runs `f`, turning an error into a failed check.
    pub fn run(name: &'static str, f: impl FnOnce() -> Result<(bool, String)>) -> Self {
        match f() {
            Ok((passed, detail)) => Self::new(name, passed, detail),
            Err(e) => Self::new(name, false, e.to_string()),
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}: {}", if self.passed { "PASS" } else { "FAIL" }, self.name, self.detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Suite {
    Specfun,
    Lemmas,
    Measures,
    Riemann,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Specfun, Suite::Lemmas, Suite::Measures, Suite::Riemann];

    pub fn name(&self) -> &'static str {
        match self {
            Suite::Specfun => "specfun",
            Suite::Lemmas => "lemmas",
            Suite::Measures => "measures",
            Suite::Riemann => "riemann",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s}; expected specfun, lemmas, measures or riemann")))
    }
}

/// Runs every check of `suite`. The riemann suite needs the zeta zero table
/// for its zero-based checks and omits them when `zeros` is `None`.
pub fn run_suite(suite: Suite, zeros: Option<&ZeroTable>) -> Vec<Check> {
    match suite {
        Suite::Specfun => vec![
            abs_line_kernels(),
            quarter_pole_kernel(),
            lorentz_kernels(),
            envelopes(),
            envelope_certificates(),
            crude_envelope(),
            gamma_rectangle_minimum(),
            log_weight_kernel(),
        ],
        Suite::Lemmas => vec![
            digamma_log_bound_grid(),
            vertical_strip_bound(),
            gamma_k_logderiv_random(1000),
            psi1_sweep(100_000),
            prime_sum_grid(),
            corollary2_range(1000),
            corollary2_threshold(),
            window_displays(50),
        ],
        Suite::Measures => vec![five_delta(), three_delta_cost_display(100), three_delta_extra_roots(100), three_delta_cost_limit()],
        Suite::Riemann => {
            let mut v = vec![zeta_special_values(), functional_equation(10), explicit_below_f_tilde()];
            if let Some(t) = zeros {
                v.push(dual_oracle(t));
                v.push(empirical_sweep(t));
            }
            v
        }
    }
}

/// Largest allowed width of a certified kernel constant.
pub const KERNEL_WIDTH: f64 = 1e-3;
const STRIP: [f64; 3] = [-0.75, -0.5, -0.25];

pub fn abs_line_kernels() -> Check {
    Check::run("abs_line_kernels", || {
        let q = kernel_integral(KernelKind::AbsLine, -0.25, 0.0)?;
        let r = kernel_integral(KernelKind::AbsLine, -0.75, 0.0)?;
        let ok = q.hi() <= 4.73 && r.hi() <= 4.43 && q.width() <= KERNEL_WIDTH && r.width() <= KERNEL_WIDTH;
        Ok((ok, format!("u=-1/4: {q} <= 4.73; u=-3/4: {r} <= 4.43")))
    })
}

/// Largest kernel value over the strip `u` in {-3/4, -1/2, -1/4} at `t = 10`.
fn strip_max(kind: KernelKind) -> Result<(f64, f64)> {
    let mut hi = f64::NEG_INFINITY;
    let mut width: f64 = 0.0;
    for u in STRIP {
        let k = kernel_integral(kind, u, 10.0)?;
        hi = hi.max(k.hi());
        width = width.max(k.width());
    }
    Ok((hi, width))
}

pub fn quarter_pole_kernel() -> Check {
    Check::run("quarter_pole_kernel", || {
        let (hi, w) = strip_max(KernelKind::QuarterPole)?;
        Ok((hi <= 0.171 && w <= KERNEL_WIDTH, format!("max over u at t=10: {hi:.6} <= 0.171, width {w:.1e}")))
    })
}

/// The stated Lorentz constants; these fail (see the README).
pub fn lorentz_kernels() -> Check {
    Check::run("lorentz_kernels", || {
        let (h1, w1) = strip_max(KernelKind::Lorentz { alpha: 1 })?;
        let (h2, w2) = strip_max(KernelKind::Lorentz { alpha: 2 })?;
        let ok = h1 <= 0.013 && h2 <= 0.007 && w1.max(w2) <= KERNEL_WIDTH;
        Ok((ok, format!("alpha=1: {h1:.6} vs 0.013; alpha=2: {h2:.6} vs 0.007")))
    })
}

pub fn envelopes() -> Check {
    Check::run("envelopes_at_ten", || {
        let f = exp_envelope(KernelKind::QuarterPole, 10.0)?;
        let f1 = exp_envelope(KernelKind::Lorentz { alpha: 1 }, 10.0)?;
        let f2 = exp_envelope(KernelKind::Lorentz { alpha: 2 }, 10.0)?;
        let inside = |x: crate::Cert, lo: f64, hi: f64| x.lo() >= lo && x.hi() <= hi;
        let ok = inside(f, 0.0315, 0.0325) && inside(f1, 0.0125, 0.0131) && inside(f2, 0.0063, 0.0067);
        Ok((ok, format!("F(10) = {f}, F_1(10) = {f1}, F_2(10) = {f2}")))
    })
}

pub fn envelope_certificates() -> Check {
    Check::run("envelope_maximum_at_ten", || {
        let mut ok = true;
        let mut parts = Vec::new();
        for kind in [KernelKind::QuarterPole, KernelKind::Lorentz { alpha: 1 }, KernelKind::Lorentz { alpha: 2 }] {
            let c = envelope_certificate(kind)?;
            ok &= c.holds;
            parts.push(format!("{kind:?}: {:.6} > {:.6}", c.at_ten.lo(), c.threshold));
        }
        Ok((ok, parts.join("; ")))
    })
}

pub fn crude_envelope() -> Check {
    Check::run("crude_gamma_envelope", || {
        let g = check_crude_envelope(0.05, 60.0)?;
        Ok((g.holds, format!("max {:.4} <= {} over {} points", g.extreme, g.bound, g.points)))
    })
}

pub fn gamma_rectangle_minimum() -> Check {
    Check::run("gamma_rectangle_minimum", || {
        let g = check_gamma_rectangle_minimum(0.01)?;
        Ok((g.holds, format!("min {:.4} > {} over {} points", g.extreme, g.bound, g.points)))
    })
}

pub fn log_weight_kernel() -> Check {
    Check::run("log_weight_kernel", || {
        let mut ok = true;
        for u in STRIP {
            ok &= log_weight_reduction(u, 10.0)?.holds;
            ok &= kernel_integral(KernelKind::LogWeight, u, 10.0)?.hi() <= KernelKind::LogWeight.stated_constant(10.0);
        }
        Ok((ok, "reduction inequality and 4.73 log 11 at t = 10".to_string()))
    })
}

fn stride_grid(lo: f64, hi: f64, stride: f64) -> impl Iterator<Item = f64> {
    let n = ((hi - lo) / stride + 1e-9).floor() as usize;
    (0..=n).map(move |k| lo + k as f64 * stride)
}

pub fn digamma_log_bound_grid() -> Check {
    Check::run("digamma_log_bound_grid", || {
        let (mut points, mut worst) = (0usize, f64::INFINITY);
        let mut ok = true;
        for sigma in stride_grid(0.0, 5.0, 0.25) {
            for t in stride_grid(sigma + 2.0, 50.0, 0.25) {
                let c = check_digamma_log_bound(sigma, t)?;
                ok &= c.holds;
                worst = worst.min(c.margin.lo());
                points += 1;
            }
        }
        Ok((ok, format!("{points} points, least margin {worst:.3e}")))
    })
}

pub fn vertical_strip_bound() -> Check {
    Check::run("gamma_strip_boundary", || {
        let g = check_vertical_strip_bound(0.05, 200.0)?;
        Ok((g.holds, format!("max {:.6} <= sqrt(2 pi) over {} points", g.extreme, g.points)))
    })
}

/// A random field of degree at most `max_degree`.
fn random_field(rng: &mut ChaCha8Rng, max_degree: u32, max_log_disc: f64) -> Result<FieldInvariants<f64>> {
    let degree = rng.gen_range(1..=max_degree);
    if degree == 1 {
        return Ok(FieldInvariants::rationals());
    }
    let r2 = rng.gen_range(0..=degree / 2);
    build_field(degree, degree - 2 * r2, r2, rng.gen_range(0.5..=max_log_disc))
}

pub fn gamma_k_logderiv_random(samples: usize) -> Check {
    Check::run("gamma_k_logderiv_diff_random", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0001);
        let mut ok = true;
        for _ in 0..samples {
            let f = random_field(&mut rng, 10, 100.0)?;
            let t = rng.gen_range(-1000.0..1000.0);
            ok &= gamma_k_logderiv_diff(&f, t)?.holds;
        }
        Ok((ok, format!("{samples} random (field, t)")))
    })
}

pub fn psi1_sweep(max_x: usize) -> Check {
    Check::run("chebyshev_psi1_sweep", || {
        let table = PrimeTable::new(max_x)?;
        let c = chebyshev_psi1_sweep(max_x, &table)?;
        Ok((c.bound_holds, format!("all integers x <= {max_x}; tightest at x = {} ({:.4} vs {:.4})", c.x, (c.value - c.x * c.x / 2.0).abs(), c.bound)))
    })
}

pub const PRIME_SUM_SIGMAS: [f64; 5] = [0.55, 0.65, 0.75, 0.85, 0.95];
pub const PRIME_SUM_DELTAS: [f64; 5] = [0.005, 0.01, 0.02, 0.05, 0.1];

pub fn prime_sum_grid() -> Check {
    Check::run("prime_exp_sum_grid", || {
        let table = PrimeTable::new(200_000)?;
        let mut ok = true;
        let mut least = f64::INFINITY;
        for &s in &PRIME_SUM_SIGMAS {
            for &d in &PRIME_SUM_DELTAS {
                let c = prime_exp_sum(s, d, &table)?;
                ok &= c.holds;
                least = least.min(c.rhs - c.lhs.hi());
            }
        }
        Ok((ok, format!("5x5 (sigma, delta) grid, least slack {least:.4}")))
    })
}

pub fn corollary2_range(samples: usize) -> Check {
    Check::run("corollary2_range", || {
        let (lo, hi) = (23f64.ln(), 1e55f64.ln());
        let mut ok = true;
        for k in 0..samples {
            let x = (lo + (hi - lo) * k as f64 / (samples - 1) as f64).exp();
            let m = corollary2_margin_log_t(x)?;
            ok &= m.subcheck1 && m.subcheck2;
        }
        Ok((ok, format!("{samples} log-uniform points, log T in [23, 1e55]")))
    })
}

/// Tolerance on the located `L` threshold.
pub const L_THRESHOLD_TOL: f64 = 0.1;

pub fn corollary2_threshold() -> Check {
    Check::run("corollary2_l_threshold", || {
        let edge = corollary2_boundary(4.0 * (1.0 - 1e-10), 1e3, 1e6);
        let below = corollary2_margin(LogHeight::L(edge - 0.05))?.l_threshold_ok;
        let above = corollary2_margin(LogHeight::L(edge + 0.05))?.l_threshold_ok;
        let ok = (edge - 162_546.6).abs() <= L_THRESHOLD_TOL && below && !above;
        Ok((ok, format!("L threshold at {edge:.4}")))
    })
}

/// The rounded displays for `n(T; 1)`, `n(T; 1/2)` and `n(T; 0+)` dominate
/// the exact bounds, for the rationals and random fields.
pub fn window_displays(samples: usize) -> Check {
    Check::run("rounded_displays", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0002);
        let mut fields = vec![FieldInvariants::rationals()];
        for _ in 0..samples {
            fields.push(random_field(&mut rng, 10, 100.0)?);
        }
        let mut least = f64::INFINITY;
        for f in &fields {
            let n = f.n();
            let one = bound_window(f, 11.0, 1.0)?;
            let q = one.params.q;
            least = least.min(q / 2.0 + (4.0 * n + 2.9) * q.sqrt() - 9.0 * n - one.total);
            let half = bound_window(f, 10.5, 0.5)?;
            let q = half.params.q;
            least = least.min(q / 4.0 + (1.4 * n + 2.2) * q.powf(0.75) - 4.0 * n - half.total);
            let mult = bound_multiplicity(f, 10.0, 0.75)?;
            let q = mult.params.q;
            least = least.min(3.0 * q / 20.0 + (1.2 * n + 0.9) * q.sqrt() - 2.9 * n - mult.total);
        }
        Ok((least >= 0.0, format!("{} fields, least slack {least:.4}", fields.len())))
    })
}

pub fn five_delta() -> Check {
    Check::run("five_delta_optimum", || {
        let m = solve_five_delta()?;
        let (b1, b2) = (m.centers[1], m.centers[2]);
        let mut w = m.weights.clone();
        w.sort_by(f64::total_cmp);
        let weights_ok = w.iter().zip([0.0200, 0.0491, 0.0651]).all(|(x, y)| (x - y).abs() < 1e-4);
        let rep = covering_slack(&m)?;
        let ok = (0.355..=0.356).contains(&b1)
            && (0.875..=0.876).contains(&b2)
            && weights_ok
            && m.cost() <= 0.5
            && rep.holds
            && rep.root_certificate.accounted() == 10;
        Ok((ok, format!("b1 = {b1:.8}, b2 = {b2:.8}, weights {:?}, cost {:.5}; {}", m.weights, m.cost(), rep.root_certificate)))
    })
}

fn random_pairs(seed: u64, samples: usize) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples).map(|_| (rng.gen_range(0.05..3.0), rng.gen_range(0.05..2.0))).collect()
}

pub fn three_delta_cost_display(samples: usize) -> Check {
    Check::run("three_delta_cost_display", || {
        let mut worst: f64 = 0.0;
        for (a, al) in random_pairs(0x5eed_0003, samples) {
            let m = three_delta(a, al, a / SQRT_2)?;
            let c = three_delta_cost(a, al);
            worst = worst.max((m.cost() - c).abs() / c.max(1.0));
        }
        Ok((worst <= 1e-12, format!("largest difference {worst:.2e}")))
    })
}

/// Compares the closed-form extra roots with the roots of the numerically
/// assembled sextic: isolated by Sturm bisection when real, read off the
/// quotient by `g^2 (g^2 - a^2)` otherwise.
pub fn three_delta_extra_roots(samples: usize) -> Check {
    Check::run("three_delta_extra_roots", || {
        let mut worst: f64 = 0.0;
        for (a, al) in random_pairs(0x5eed_0004, samples) {
            let m = three_delta(a, al, a / SQRT_2)?;
            let (_, _, d) = m.covering_polynomials();
            let s = three_delta_extra_root_sq(a, al);
            let forced = Polynomial::new(vec![0.0, 0.0, -a * a, 0.0, 1.0]);
            let (quot, _) = d.div_rem(&forced);
            // quotient is -(g^2 - s)
            let numeric_sq = quot.coeffs()[0] / -quot.leading();
            let scale = s.abs().max(a * a);
            worst = worst.max((numeric_sq - s).abs() / scale);
            let g = s.sqrt();
            if s > 0.0 && (g - a).abs() > 1e-3 && g > 1e-3 {
                // bracket away from the forced roots 0 and a
                let (lo, hi) = if g < a { (g / 2.0, (g + a) / 2.0) } else { ((g + a) / 2.0, 2.0 * g) };
                let roots = SturmChain::new(&d, 1e-13).isolate(lo, hi, 1e-13);
                if roots.len() != 1 {
                    return Ok((false, format!("a = {a}, alpha = {al}: {} roots in ({lo}, {hi}]", roots.len())));
                }
                let nearest = roots.iter().map(|r| (r - g).abs()).fold(f64::INFINITY, f64::min);
                worst = worst.max(nearest / g.max(1.0));
            }
        }
        Ok((worst <= 1e-10, format!("largest relative difference {worst:.2e}")))
    })
}

pub fn three_delta_cost_limit() -> Check {
    Check::run("three_delta_cost_limit", || {
        let al = 0.25;
        let a = 1e-3;
        let cost = |a: f64| -> Result<f64> { Ok(three_delta(a, al, a / SQRT_2)?.cost()) };
        // cost(a) = 0.6 alpha + c a^2 + O(a^4)
        let extrapolated = (4.0 * cost(a)? - cost(2.0 * a)?) / 3.0;
        let err = (extrapolated - 0.6 * al).abs();
        Ok((err < 1e-4, format!("extrapolated {extrapolated:.10} vs {:.10}", 0.6 * al)))
    })
}

pub fn zeta_special_values() -> Check {
    Check::run("zeta_special_values", || {
        let two = zeta_em(2.0, 0.0, true)?;
        let pi2 = std::f64::consts::PI.powi(2) / 6.0;
        let d = two.derivative.expect("derivative requested");
        let zero = zeta_em(0.5, 14.134_725_141_734_693, false)?;
        let ok = two.value.contains(num_complex::Complex::new(pi2, 0.0))
            && (d.mid.re + 0.937_548_254_3).abs() <= d.rad + 1e-9
            && zero.value.abs().hi() <= 1e-5;
        Ok((ok, format!("zeta(2) = {}, zeta'(2) = {d}, |zeta(rho_1)| <= {:.1e}", two.value, zero.value.abs().hi())))
    })
}

pub fn functional_equation(samples: usize) -> Check {
    Check::run("zeta_functional_equation", || {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0005);
        let mut ok = true;
        for _ in 0..samples {
            let s = rng.gen_range(0.05..0.95);
            let t = rng.gen_range(1.0..300.0);
            ok &= completed_zeta_abs(s, t)?.overlaps(&completed_zeta_abs(1.0 - s, t)?);
        }
        Ok((ok, format!("{samples} random points in the strip")))
    })
}

pub const ORACLE_SIGMAS: [f64; 3] = [0.6, 0.75, 0.9];
pub const ORACLE_HEIGHTS: [f64; 5] = [10.0, 20.0, 50.0, 100.0, 500.0];
/// Zero-sum cutoff for the dual oracle.
pub const ORACLE_CUTOFF: f64 = 70_000.0;

pub fn explicit_below_f_tilde() -> Check {
    Check::run("explicit_f_below_f_tilde", || {
        let q = FieldInvariants::rationals();
        let mut least = f64::INFINITY;
        for &s in &ORACLE_SIGMAS {
            for &t in &ORACLE_HEIGHTS {
                least = least.min(f_tilde(&q, s, t)?.total - f_explicit(&q, s, t)?.hi());
            }
        }
        Ok((least >= 0.0, format!("least slack {least:.4}")))
    })
}

pub fn dual_oracle(table: &ZeroTable) -> Check {
    Check::run("dual_oracle", || {
        let q = FieldInvariants::rationals();
        let mut ok = true;
        let mut worst: f64 = 0.0;
        let mut points = 0;
        for &s in &ORACLE_SIGMAS {
            for &t in &ORACLE_HEIGHTS {
                if t + ORACLE_CUTOFF > table.height {
                    continue;
                }
                let a = f_explicit(&q, s, t)?;
                let b = f_from_zeros(table, s, t, ORACLE_CUTOFF)?;
                ok &= (a.mid - b.mid).abs() <= a.rad + b.rad;
                worst = worst.max((a.mid - b.mid).abs());
                points += 1;
            }
        }
        Ok((ok && points > 0, format!("{points} points, largest midpoint gap {worst:.2e}")))
    })
}

/// Window counts against both window bounds, and `2 N(T)` against the
/// unconditional bracket, for `T` in `[11, 1000]` at stride 1/2.
pub fn empirical_sweep(table: &ZeroTable) -> Check {
    Check::run("empirical_sweep", || {
        let grid: Vec<f64> = stride_grid(11.0, 1000.0, 0.5).collect();
        let rows = comparison_table(table, &grid, &[0.5, 1.0, 1.9])?;
        let mut violations = rows.iter().filter(|r| r.violated()).count();
        for &t in &grid {
            let c = trudgian_count(&table.field, t)?;
            let n = 2.0 * table.count_between(0.0, t) as f64;
            if n < c.lower() || n > c.upper() {
                violations += 1;
            }
        }
        Ok((violations == 0, format!("{} rows, {violations} violations", rows.len())))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in Suite::ALL {
            assert_eq!(s.name().parse::<Suite>().unwrap(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn measures_suite_passes() {
        for c in run_suite(Suite::Measures, None) {
            assert!(c.passed, "{c}");
        }
    }

    #[test]
    fn failures_are_reported() {
        let c = Check::run("x", || Err(Error::Domain("bad".into())));
        assert!(!c.passed && c.to_string() == "FAIL x: DomainError: bad");
    }

    #[test]
    fn lorentz_constants_fail_as_stated() {
        let c = lorentz_kernels();
        assert!(!c.passed, "{c}");
    }
}
