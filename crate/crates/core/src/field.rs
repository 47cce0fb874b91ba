//! Number field invariants and the two scalar quantities every bound is
//! expressed in: the conductor-like `Q` and the zero density `W_K`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::scalar::Scalar;

/// Degree, signature and log-discriminant of a number field `K`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FieldInvariants<S> {
    degree: u32,
    r1: u32,
    r2: u32,
    log_disc: S,
}

impl<S: Scalar> FieldInvariants<S> {
    /// The rational field.
    pub fn rationals() -> Self {
        Self { degree: 1, r1: 1, r2: 0, log_disc: S::zero() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn r1(&self) -> u32 {
        self.r1
    }

    pub fn r2(&self) -> u32 {
        self.r2
    }

    pub fn log_disc(&self) -> S {
        self.log_disc
    }

    /// `n_K` as a scalar.
    pub fn n(&self) -> S {
        S::from_u32(self.degree).unwrap()
    }

    pub fn is_rational(&self) -> bool {
        self.degree == 1
    }

    /// Same signature, different discriminant. Used for monotonicity sweeps.
    pub fn with_log_disc(&self, log_disc: S) -> Result<Self> {
        build_field(self.degree, self.r1, self.r2, log_disc)
    }
}

impl<S: Scalar> fmt::Display for FieldInvariants<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "degree={} r1={} r2={} log_disc={}",
            self.degree, self.r1, self.r2, self.log_disc
        )
    }
}

/// Validates a field descriptor.
///
/// The rational field is the only one with `log_disc = 0`; every other
/// field has `|disc| >= 3`.
pub fn build_field<S: Scalar>(degree: u32, r1: u32, r2: u32, log_disc: S) -> Result<FieldInvariants<S>> {
    if degree == 0 {
        return Err(domain("degree must be at least 1"));
    }
    if !log_disc.is_finite() {
        return Err(domain("log_disc must be finite"));
    }
    let got = r1 + 2 * r2;
    if got != degree {
        return Err(Error::SignatureMismatch { degree, got });
    }
    if log_disc < S::zero() {
        return Err(Error::NegativeDiscriminant(log_disc.to_f64_lossy()));
    }
    if degree == 1 && log_disc != S::zero() {
        return Err(Error::DiscriminantMismatch("the rational field has log_disc = 0".into()));
    }
    if degree > 1 && log_disc == S::zero() {
        return Err(Error::DiscriminantMismatch(format!("degree {degree} requires log_disc > 0")));
    }
    Ok(FieldInvariants { degree, r1, r2, log_disc })
}

/// `Q = log disc_K + (log T + 20) n_K + 11`.
pub fn conductor_q<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<S> {
    if !(t > S::one()) || !t.is_finite() {
        return Err(domain(format!("conductor_q needs T > 1, got {t}")));
    }
    Ok(field.log_disc + (t.ln() + S::lit(20.0)) * field.n() + S::lit(11.0))
}

/// `W_K(T) = log disc_K + n_K log(T / 2 pi)`.
pub fn w_term<S: Scalar>(field: &FieldInvariants<S>, t: S) -> Result<S> {
    if !(t > S::zero()) || !t.is_finite() {
        return Err(domain(format!("w_term needs T > 0, got {t}")));
    }
    Ok(field.log_disc + field.n() * (t / S::TAU()).ln())
}

/// Parses the `key = value` field descriptor format.
///
/// Keys are `degree`, `r1`, `r2`, `log_disc`; `#` starts a comment and
/// unknown keys are rejected.
pub fn parse_field_descriptor<S: Scalar>(text: &str) -> Result<FieldInvariants<S>> {
    let mut degree = None;
    let mut r1 = None;
    let mut r2 = None;
    let mut log_disc: Option<S> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| Error::Parse {
            line: line_no,
            msg: format!("expected `key = value`, got `{line}`"),
        })?;
        let key = key.trim();
        let value = value.trim();
        let bad = |what: &str| Error::Parse { line: line_no, msg: format!("invalid {what} `{value}`") };
        match key {
            "degree" => degree = Some(u32::from_str(value).map_err(|_| bad("degree"))?),
            "r1" => r1 = Some(u32::from_str(value).map_err(|_| bad("r1"))?),
            "r2" => r2 = Some(u32::from_str(value).map_err(|_| bad("r2"))?),
            "log_disc" => {
                let x = f64::from_str(value).map_err(|_| bad("log_disc"))?;
                log_disc = Some(S::lit(x));
            }
            other => {
                return Err(Error::Parse { line: line_no, msg: format!("unknown key `{other}`") });
            }
        }
    }
    let missing = |k: &str| Error::Meta(format!("field descriptor is missing `{k}`"));
    build_field(
        degree.ok_or_else(|| missing("degree"))?,
        r1.ok_or_else(|| missing("r1"))?,
        r2.ok_or_else(|| missing("r2"))?,
        log_disc.ok_or_else(|| missing("log_disc"))?,
    )
}
