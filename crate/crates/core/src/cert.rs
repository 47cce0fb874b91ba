//! Midpoint-radius enclosures over a floating point scalar.
//!
//! Every elementary operation returns a ball containing the exact image of
//! its input balls. Rounding is accounted for by inflating the radius by a
//! few ulps of the computed midpoint instead of switching rounding modes.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Certified real: the interval `[mid - rad, mid + rad]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CertValue<S> {
    pub mid: S,
    pub rad: S,
}

impl<S: Scalar> CertValue<S> {
    pub fn new(mid: S, rad: S) -> Self {
        debug_assert!(rad >= S::zero() || rad.is_nan());
        Self { mid, rad }
    }

    /// An exactly representable value.
    pub fn exact(x: S) -> Self {
        Self { mid: x, rad: S::zero() }
    }

    /// A decimal constant that may not be representable: one ulp of slack.
    pub fn lit(x: f64) -> Self {
        let m = S::lit(x);
        Self { mid: m, rad: m.ulp() }
    }

    /// Smallest ball containing `[lo, hi]`.
    pub fn from_bounds(lo: S, hi: S) -> Self {
        let two = S::lit(2.0);
        let mid = lo / two + hi / two;
        let rad = (hi - mid).max(mid - lo);
        Self { mid, rad: rad + mid.ulp() }
    }

    pub fn lo(&self) -> S {
        self.mid - self.rad
    }

    pub fn hi(&self) -> S {
        self.mid + self.rad
    }

    pub fn width(&self) -> S {
        self.rad + self.rad
    }

    pub fn contains(&self, x: S) -> bool {
        (x - self.mid).abs() <= self.rad
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        (self.mid - other.mid).abs() <= self.rad + other.rad
    }

    pub fn is_finite(&self) -> bool {
        self.mid.is_finite() && self.rad.is_finite()
    }

    /// True when every point of the ball is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.lo() > S::zero()
    }

    /// Widens the radius by `extra`.
    pub fn inflate(self, extra: S) -> Self {
        Self { mid: self.mid, rad: self.rad + extra.abs() }
    }

    /// Smallest ball containing both.
    pub fn hull(self, other: Self) -> Self {
        Self::from_bounds(self.lo().min(other.lo()), self.hi().max(other.hi()))
    }

    pub fn abs(self) -> Self {
        if self.mid.abs() >= self.rad {
            Self { mid: self.mid.abs(), rad: self.rad }
        } else {
            Self::from_bounds(S::zero(), self.mid.abs() + self.rad)
        }
    }

    pub fn max(self, other: Self) -> Self {
        Self::from_bounds(self.lo().max(other.lo()), self.hi().max(other.hi()))
    }

    pub fn min(self, other: Self) -> Self {
        Self::from_bounds(self.lo().min(other.lo()), self.hi().min(other.hi()))
    }

    pub fn recip(self) -> Self {
        Self::exact(S::one()) / self
    }

    pub fn sqr(self) -> Self {
        self * self
    }

    /// Square root; the ball must not contain negative numbers.
    pub fn sqrt(self) -> Self {
        let lo = self.lo().max(S::zero());
        let m = self.mid.max(S::zero()).sqrt();
        let denom = lo.sqrt() + m;
        let rad = if denom > S::zero() { self.rad / denom } else { self.rad.sqrt() };
        Self { mid: m, rad: rad + m.ulp() }
    }

    pub fn exp(self) -> Self {
        let m = self.mid.exp();
        Self { mid: m, rad: m * self.rad.exp_m1() + m.ulp() + m.ulp() }
    }

    /// Natural logarithm; the ball must be strictly positive.
    pub fn ln(self) -> Self {
        let m = self.mid.ln();
        let rel = self.rad / self.mid;
        let rad = if rel < S::one() { -(-rel).ln_1p() } else { S::infinity() };
        Self { mid: m, rad: rad + m.ulp() + m.ulp() }
    }

    /// `self^p` for a strictly positive ball and exact exponent.
    pub fn powf(self, p: S) -> Self {
        (self.ln() * p).exp()
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::exact(S::one());
        }
        let mut base = if n < 0 { self.recip() } else { self };
        let mut k = n.unsigned_abs();
        let mut acc = Self::exact(S::one());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            k >>= 1;
        }
        acc
    }

    /// Functions with derivative bounded by one in modulus.
    fn lipschitz1(self, m: S) -> Self {
        Self { mid: m, rad: self.rad + m.ulp() + m.ulp() }
    }

    pub fn sin(self) -> Self {
        self.lipschitz1(self.mid.sin())
    }

    pub fn cos(self) -> Self {
        self.lipschitz1(self.mid.cos())
    }

    pub fn atan(self) -> Self {
        self.lipschitz1(self.mid.atan())
    }

    /// `asinh(x)`; derivative `1/sqrt(1+x^2) <= 1`.
    pub fn asinh(self) -> Self {
        self.lipschitz1(self.mid.asinh())
    }

    /// Fixed-order sum.
    pub fn sum<I: IntoIterator<Item = Self>>(iter: I) -> Self {
        iter.into_iter().fold(Self::exact(S::zero()), |a, b| a + b)
    }
}

impl<S: Scalar> fmt::Display for CertValue<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {:e}", self.mid, self.rad.to_f64_lossy())
    }
}

impl<S: Scalar> Add for CertValue<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let m = self.mid + o.mid;
        Self { mid: m, rad: self.rad + o.rad + m.ulp() }
    }
}

impl<S: Scalar> Sub for CertValue<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let m = self.mid - o.mid;
        Self { mid: m, rad: self.rad + o.rad + m.ulp() }
    }
}

impl<S: Scalar> Neg for CertValue<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mid: -self.mid, rad: self.rad }
    }
}

impl<S: Scalar> Mul for CertValue<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = self.mid * o.mid;
        let rad = self.mid.abs() * o.rad + o.mid.abs() * self.rad + self.rad * o.rad;
        Self { mid: m, rad: rad + m.ulp() }
    }
}

impl<S: Scalar> Div for CertValue<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let b = o.mid.abs();
        if b <= o.rad {
            return Self { mid: S::nan(), rad: S::infinity() };
        }
        let m = self.mid / o.mid;
        let rad = (self.rad * b + self.mid.abs() * o.rad) / (b * (b - o.rad));
        Self { mid: m, rad: rad + m.ulp() + m.ulp() }
    }
}

impl<S: Scalar> Add<S> for CertValue<S> {
    type Output = Self;
    fn add(self, o: S) -> Self {
        self + Self::exact(o)
    }
}

impl<S: Scalar> Sub<S> for CertValue<S> {
    type Output = Self;
    fn sub(self, o: S) -> Self {
        self - Self::exact(o)
    }
}

impl<S: Scalar> Mul<S> for CertValue<S> {
    type Output = Self;
    fn mul(self, o: S) -> Self {
        let m = self.mid * o;
        Self { mid: m, rad: self.rad * o.abs() + m.ulp() }
    }
}

impl<S: Scalar> Div<S> for CertValue<S> {
    type Output = Self;
    fn div(self, o: S) -> Self {
        self / Self::exact(o)
    }
}

impl<S: Scalar> AddAssign for CertValue<S> {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl<S: Scalar> SubAssign for CertValue<S> {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

/// Certified complex number: the closed disc of radius `rad` around `mid`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CertComplex<S> {
    pub mid: Complex<S>,
    pub rad: S,
}

impl<S: Scalar> CertComplex<S> {
    pub fn new(mid: Complex<S>, rad: S) -> Self {
        Self { mid, rad }
    }

    pub fn exact(re: S, im: S) -> Self {
        Self { mid: Complex::new(re, im), rad: S::zero() }
    }

    pub fn from_real(x: CertValue<S>) -> Self {
        Self { mid: Complex::new(x.mid, S::zero()), rad: x.rad }
    }

    /// Real and imaginary parts given as independent balls.
    pub fn from_parts(re: CertValue<S>, im: CertValue<S>) -> Self {
        Self { mid: Complex::new(re.mid, im.mid), rad: re.rad.hypot(im.rad) }
    }

    fn round_err(m: Complex<S>) -> S {
        S::lit(4.0) * S::epsilon() * m.norm() + S::min_positive_value()
    }

    pub fn re(&self) -> CertValue<S> {
        CertValue::new(self.mid.re, self.rad)
    }

    pub fn im(&self) -> CertValue<S> {
        CertValue::new(self.mid.im, self.rad)
    }

    pub fn abs(&self) -> CertValue<S> {
        let n = self.mid.norm();
        if n >= self.rad {
            CertValue::new(n, self.rad + n.ulp() + n.ulp())
        } else {
            CertValue::from_bounds(S::zero(), n + self.rad)
        }
    }

    pub fn contains(&self, z: Complex<S>) -> bool {
        (z - self.mid).norm() <= self.rad
    }

    pub fn scale(self, k: S) -> Self {
        let m = self.mid * k;
        Self { mid: m, rad: self.rad * k.abs() + Self::round_err(m) }
    }

    pub fn conj(self) -> Self {
        Self { mid: self.mid.conj(), rad: self.rad }
    }

    pub fn recip(self) -> Self {
        let n = self.mid.norm();
        if n <= self.rad {
            return Self { mid: Complex::new(S::nan(), S::nan()), rad: S::infinity() };
        }
        let m = self.mid.inv();
        Self { mid: m, rad: self.rad / (n * (n - self.rad)) + Self::round_err(m) }
    }

    pub fn exp(self) -> Self {
        let m = self.mid.exp();
        let n = m.norm();
        Self { mid: m, rad: n * self.rad.exp_m1() + Self::round_err(m) }
    }

    /// Principal logarithm; the disc must avoid the origin. The branch cut
    /// is not checked: callers keep the disc inside the right half plane or
    /// away from the negative real axis.
    pub fn ln(self) -> Self {
        let n = self.mid.norm();
        let rel = self.rad / n;
        let rad = if rel < S::one() { -(-rel).ln_1p() } else { S::infinity() };
        let m = self.mid.ln();
        Self { mid: m, rad: rad + Self::round_err(m) + n.ln().abs().ulp() }
    }

    pub fn powi(self, n: u32) -> Self {
        let mut acc = Self::exact(S::one(), S::zero());
        for _ in 0..n {
            acc = acc * self;
        }
        acc
    }
}

impl<S: Scalar> fmt::Display for CertComplex<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}i) ± {:e}", self.mid.re, self.mid.im, self.rad.to_f64_lossy())
    }
}

impl<S: Scalar> Add for CertComplex<S> {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let m = self.mid + o.mid;
        Self { mid: m, rad: self.rad + o.rad + Self::round_err(m) }
    }
}

impl<S: Scalar> Sub for CertComplex<S> {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        let m = self.mid - o.mid;
        Self { mid: m, rad: self.rad + o.rad + Self::round_err(m) }
    }
}

impl<S: Scalar> Neg for CertComplex<S> {
    type Output = Self;
    fn neg(self) -> Self {
        Self { mid: -self.mid, rad: self.rad }
    }
}

impl<S: Scalar> Mul for CertComplex<S> {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let m = self.mid * o.mid;
        let rad = self.mid.norm() * o.rad + o.mid.norm() * self.rad + self.rad * o.rad;
        Self { mid: m, rad: rad + Self::round_err(m) }
    }
}

impl<S: Scalar> Div for CertComplex<S> {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        self * o.recip()
    }
}

impl<S: Scalar> Add<CertValue<S>> for CertComplex<S> {
    type Output = Self;
    fn add(self, o: CertValue<S>) -> Self {
        self + CertComplex::from_real(o)
    }
}

impl<S: Scalar> Mul<CertValue<S>> for CertComplex<S> {
    type Output = Self;
    fn mul(self, o: CertValue<S>) -> Self {
        self * CertComplex::from_real(o)
    }
}
