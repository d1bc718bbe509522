//! Digamma and polygamma functions computed from the Pochhammer-product
//! series
//!
//! ```text
//! ψ(z) = −γ − Σ_{n≥1} (1−z)_n / (n·n!),        Re(z) > 0
//!      = −γ − (1−z) ₃F₂(2−z, 1, 1; 2, 2; 1)
//! ```
//!
//! together with the Beta/Gamma machinery that leads to it, and an
//! independent set of reference evaluators used to check every route.
//!
//! Modules:
//! - [`pochhammer`]: rising factorials and the stable term recurrence.
//! - [`beta_gamma`]: Beta identities, truncated Beta expansions, the
//!   Weierstrass product near zero and the finite-`h` derivative quotient.
//! - [`digamma_series`]: partial sums, adaptive truncation, tail correction
//!   and argument reduction.
//! - [`hypergeometric`]: unit-argument ₃F₂ and the digamma route through it.
//! - [`polygamma`]: exact z-derivatives of the series.
//! - [`oracle`]: reference routes and constants.
//! - [`verify`]: the cross-route invariant suite behind `derivgamma verify`.

pub mod beta_gamma;
pub mod digamma_series;
pub mod error;
pub mod hypergeometric;
pub mod oracle;
pub mod pochhammer;
pub mod polygamma;
pub mod summation;
pub mod verify;

/// Complex double-precision scalar used for arguments and values.
pub type ComplexScalar = num_complex::Complex64;

/// Non-negative integer index: series index, truncation bound or derivative order.
pub type TermIndex = usize;

pub use beta_gamma::{
    beta_exact, beta_recurrence_residual, beta_series, beta_series_shifted, gamma_small,
    psi_via_limit, LimitProbe,
};
pub use digamma_series::{
    digamma, digamma_eq11_partial, digamma_partial, tail_estimate, EvalConfig, PartialSums,
    SeriesResult, TailModel, EQ11_MAX_TERMS,
};
pub use error::{Error, Result};
pub use hypergeometric::{digamma_via_3f2, hyp3f2_unit, Hyp3F2Params};
pub use oracle::{
    digamma_classical, known_values, reference_digamma, reference_gamma, reference_polygamma,
    ConstantStore, KnownValue, CONSTANTS, EULER_GAMMA,
};
pub use pochhammer::{falling_product, pochhammer, series_term, term_ratio, SeriesTerms};
pub use polygamma::{pochhammer_derivs, polygamma, DerivStack, MAX_ORDER};
pub use verify::{log_log_slope, run_checks, CheckResult, Suite, VerificationReport};

#[inline]
pub(crate) fn is_finite(z: ComplexScalar) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

/// True when `z` is exactly one of 0, −1, −2, ...
#[inline]
pub(crate) fn is_nonpositive_integer(z: ComplexScalar) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

#[cfg(test)]
pub(crate) fn c(x: f64) -> ComplexScalar {
    ComplexScalar::new(x, 0.0)
}
