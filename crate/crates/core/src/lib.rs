//! Explicit bounds for the number of zeros of Dedekind zeta functions in
//! short windows, with the certified numerics needed to check them.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at
//! the bottom fix the scalar to `f64`.

pub mod bounds;
pub mod cert;
pub mod error;
pub mod field;
pub mod measures;
pub mod riemann;
pub mod scalar;
pub mod specfun;
pub mod types;
pub mod verify;
pub mod zerodata;

pub use cert::{CertComplex, CertValue};
pub use error::{Error, Result};
pub use field::{build_field, conductor_q, parse_field_descriptor, w_term, FieldInvariants};
pub use scalar::Scalar;
pub use types::{BoundBreakdown, BoundParams, EvalPoint, WindowQuery};

pub type Cert = CertValue<f64>;
pub type Field = FieldInvariants<f64>;
pub type Breakdown = BoundBreakdown<f64>;
