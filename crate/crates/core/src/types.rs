use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};
use crate::scalar::Scalar;

/// A point `s = sigma + i t` of the complex plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EvalPoint<S> {
    pub sigma: S,
    pub t: S,
}

impl<S: Scalar> EvalPoint<S> {
    pub fn new(sigma: S, t: S) -> Result<Self> {
        if !sigma.is_finite() || !t.is_finite() {
            return Err(domain("evaluation point must be finite"));
        }
        Ok(Self { sigma, t })
    }

    /// Distance from the critical line, `sigma - 1/2`.
    pub fn alpha(&self) -> S {
        self.sigma - S::lit(0.5)
    }
}

/// The ordinate window `[T - a, T + a]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WindowQuery<S> {
    pub center: S,
    pub half_width: S,
}

impl<S: Scalar> WindowQuery<S> {
    pub fn new(center: S, half_width: S) -> Result<Self> {
        if !center.is_finite() || !half_width.is_finite() || half_width < S::zero() {
            return Err(domain("window needs finite center and half-width >= 0"));
        }
        Ok(Self { center, half_width })
    }

    pub fn lo(&self) -> S {
        self.center - self.half_width
    }

    pub fn hi(&self) -> S {
        self.center + self.half_width
    }
}

/// Parameters a bound was evaluated at.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundParams<S> {
    pub sigma: S,
    pub t: S,
    /// Window half-width; zero for pointwise bounds.
    pub a: S,
    pub q: S,
}

/// A bound split into its `Q`, `Q^(2 - 2 sigma)` and `n_K` parts.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundBreakdown<S> {
    pub total: S,
    pub main_term: S,
    pub middle_term: S,
    pub degree_term: S,
    pub params: BoundParams<S>,
}

impl<S: Scalar> BoundBreakdown<S> {
    pub fn from_terms(main_term: S, middle_term: S, degree_term: S, params: BoundParams<S>) -> Self {
        Self { total: main_term + middle_term + degree_term, main_term, middle_term, degree_term, params }
    }

    /// Multiplies every term by `k` and recomputes the total.
    pub fn scaled(&self, k: S) -> Self {
        Self::from_terms(self.main_term * k, self.middle_term * k, self.degree_term * k, self.params)
    }

    pub fn with_params(mut self, params: BoundParams<S>) -> Self {
        self.params = params;
        self
    }
}
