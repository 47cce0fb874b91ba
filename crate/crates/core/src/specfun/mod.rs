//! Certified Gamma-family evaluation, Stirling envelopes and the Gamma
//! kernel integrals.

mod checks;
mod gamma;
mod kernels;
pub mod quad;
mod stirling;

pub use checks::{
    check_crude_envelope, check_digamma_log_bound, check_gamma_rectangle_minimum, check_vertical_strip_bound,
    gamma_k_logderiv_diff, GridCheck, LogDerivDiff, MarginCheck,
};
pub use gamma::{abs_gamma, digamma_complex, eval_gamma, ln_abs_gamma, GammaKind};
pub use kernels::{
    envelope_certificate, exp_envelope, gamma_tail_moment, kernel_integral, log_weight_reduction,
    EnvelopeCertificate, KernelKind, LogWeightReduction,
};
pub use stirling::{abs_tail, crude_envelope, decay_prefactor, linear_weight_tail, stirling_envelope, CRUDE_CONSTANT};
