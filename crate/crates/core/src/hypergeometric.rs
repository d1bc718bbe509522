//! Generalized hypergeometric ₃F₂ at unit argument, and the digamma route
//!
//! ```text
//! ψ(z) = −γ − (1−z) ₃F₂(2−z, 1, 1; 2, 2; 1)
//! ```
//!
//! whose terms coincide one-for-one with the Pochhammer series once the
//! prefactor is folded in: `(1−z)·T_j = t_{j+1}`.

use crate::digamma_series::{
    growth_guard, sum_adaptive, EvalConfig, SeriesResult, Summand, TailModel,
};
use crate::error::{Error, Result};
use crate::oracle::EULER_GAMMA;
use crate::{is_finite, is_nonpositive_integer, ComplexScalar, TermIndex};

/// Parameters of `₃F₂(a1, a2, a3; b1, b2; 1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Hyp3F2Params {
    pub a1: ComplexScalar,
    pub a2: ComplexScalar,
    pub a3: ComplexScalar,
    pub b1: ComplexScalar,
    pub b2: ComplexScalar,
}

impl Hyp3F2Params {
    pub fn new(
        a1: ComplexScalar,
        a2: ComplexScalar,
        a3: ComplexScalar,
        b1: ComplexScalar,
        b2: ComplexScalar,
    ) -> Self {
        Self { a1, a2, a3, b1, b2 }
    }

    /// Convenience constructor for real parameters.
    pub fn real(a1: f64, a2: f64, a3: f64, b1: f64, b2: f64) -> Self {
        let r = |x| ComplexScalar::new(x, 0.0);
        Self::new(r(a1), r(a2), r(a3), r(b1), r(b2))
    }

    /// Convergence margin `s = b1 + b2 − a1 − a2 − a3`.
    pub fn margin(&self) -> ComplexScalar {
        self.b1 + self.b2 - self.a1 - self.a2 - self.a3
    }

    /// True when some numerator parameter is exactly 0, −1, −2, ...
    ///
    /// Near-integers are not rounded: only exact values terminate.
    pub fn is_terminating(&self) -> bool {
        [self.a1, self.a2, self.a3]
            .into_iter()
            .any(is_nonpositive_integer)
    }

    pub fn validate(&self) -> Result<()> {
        for (name, b) in [("b1", self.b1), ("b2", self.b2)] {
            if is_nonpositive_integer(b) {
                return Err(Error::domain(format!(
                    "{name} = {b} is a non-positive integer"
                )));
            }
        }
        if !self.is_terminating() && self.margin().re <= 0.0 {
            return Err(Error::domain(format!(
                "unit-argument series diverges: Re(b1+b2-a1-a2-a3) = {} <= 0",
                self.margin().re
            )));
        }
        Ok(())
    }

    fn terms(&self) -> Hyp3F2Terms {
        Hyp3F2Terms {
            p: *self,
            j: 0,
            term: ComplexScalar::new(1.0, 0.0),
        }
    }
}

/// `(j+1, T_j)` for `T_j = (a1)_j (a2)_j (a3)_j / ((b1)_j (b2)_j j!)`.
struct Hyp3F2Terms {
    p: Hyp3F2Params,
    j: TermIndex,
    term: ComplexScalar,
}

impl Iterator for Hyp3F2Terms {
    type Item = (TermIndex, ComplexScalar);

    fn next(&mut self) -> Option<Self::Item> {
        if self.j > 0 {
            let k = (self.j - 1) as f64;
            let p = &self.p;
            let num = (p.a1 + k) * (p.a2 + k) * (p.a3 + k);
            let den = (p.b1 + k) * (p.b2 + k) * (k + 1.0);
            self.term *= num / den;
        }
        self.j += 1;
        is_finite(self.term).then_some((self.j, self.term))
    }
}

fn evaluate(
    params: &Hyp3F2Params,
    decay: ComplexScalar,
    guard: TermIndex,
    config: &EvalConfig,
    abs_tol: f64,
) -> Result<SeriesResult> {
    let s = sum_adaptive(
        params.terms().map(Summand::plain),
        decay,
        guard,
        config.max_terms,
        abs_tol,
        config.tail_correction,
        true,
    )?;
    Ok(SeriesResult {
        value: s.sum,
        terms_used: s.terms_used,
        last_term_mag: s.last_term_mag,
        tail_estimate: s.tail_estimate,
        converged: s.converged,
        tail_model: if s.terminated {
            TailModel::Terminated
        } else {
            TailModel::PowerLaw
        },
    })
}

/// `₃F₂(a1, a2, a3; b1, b2; 1)` by direct summation with ratio-recurrent
/// terms. Terminating parameter sets are summed exactly; otherwise the sum
/// stops once `|T|·m/Re(s) <= abs_tol`.
pub fn hyp3f2_unit(params: &Hyp3F2Params, config: &EvalConfig) -> Result<SeriesResult> {
    config.validate()?;
    params.validate()?;
    let largest = [params.a1, params.a2, params.a3]
        .iter()
        .map(|a| a.norm())
        .fold(0.0, f64::max);
    let decay = if params.is_terminating() {
        // Unused when the series terminates, but must be well defined.
        ComplexScalar::new(1.0, 0.0)
    } else {
        params.margin()
    };
    evaluate(params, decay, growth_guard(largest), config, config.abs_tol)
}

/// ψ(z) = −γ − (1−z)·₃F₂(2−z, 1, 1; 2, 2; 1) for `Re(z) > 0`.
///
/// Diagnostics are reported in units of ψ. No argument reduction is applied.
pub fn digamma_via_3f2(z: ComplexScalar, config: &EvalConfig) -> Result<SeriesResult> {
    config.validate()?;
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "digamma_via_3f2 needs Re(z) > 0, got z = {z}"
        )));
    }
    let prefactor = 1.0 - z;
    if prefactor == ComplexScalar::new(0.0, 0.0) {
        return Ok(SeriesResult {
            value: ComplexScalar::new(-EULER_GAMMA, 0.0),
            terms_used: 1,
            last_term_mag: 0.0,
            tail_estimate: 0.0,
            converged: true,
            tail_model: TailModel::Terminated,
        });
    }
    let one = ComplexScalar::new(1.0, 0.0);
    let two = ComplexScalar::new(2.0, 0.0);
    let params = Hyp3F2Params::new(2.0 - z, one, one, two, two);
    params.validate()?;
    let scale = prefactor.norm();
    let f = evaluate(
        &params,
        z,
        growth_guard(z.re),
        config,
        config.abs_tol / scale,
    )?;
    Ok(SeriesResult {
        value: -EULER_GAMMA - prefactor * f.value,
        last_term_mag: f.last_term_mag * scale,
        tail_estimate: f.tail_estimate * scale,
        ..f
    })
}
