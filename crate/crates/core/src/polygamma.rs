//! Polygamma functions as exact z-derivatives of the Pochhammer series:
//!
//! ```text
//! ψ⁽ˡ⁾(z) = −Σ_{n≥1} [dˡ/dzˡ (1−z)_n] / (n·n!)
//! ```
//!
//! The derivatives come from the product rule applied to
//! `(1−z)_{n+1} = (1−z)_n·(n+1−z)`:
//!
//! ```text
//! p⁽ʲ⁾_{n+1} = (n+1−z)·p⁽ʲ⁾_n − j·p⁽ʲ⁻¹⁾_n,   p⁽⁰⁾_0 = 1,  p⁽ʲ⁾_0 = 0
//! ```
//!
//! which never divides, so integer `z` needs no special handling.

use crate::digamma_series::{
    digamma, growth_guard, reduce_argument, sum_adaptive, EvalConfig, SeriesResult, Summand,
    TailModel,
};
use crate::error::{Error, Result};
use crate::oracle::factorial;
use crate::summation::ComplexSum;
use crate::{is_finite, ComplexScalar, TermIndex};

/// Highest supported derivative order.
pub const MAX_ORDER: TermIndex = 8;

/// `[p⁽⁰⁾, p⁽¹⁾, ..., p⁽ˡ⁾]` for one Pochhammer symbol `(1−z)_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct DerivStack {
    derivs: Vec<ComplexScalar>,
}

impl DerivStack {
    pub fn order(&self) -> TermIndex {
        self.derivs.len() - 1
    }

    pub fn get(&self, j: TermIndex) -> Option<ComplexScalar> {
        self.derivs.get(j).copied()
    }

    pub fn as_slice(&self) -> &[ComplexScalar] {
        &self.derivs
    }
}

fn check_order(l: TermIndex) -> Result<()> {
    if l > MAX_ORDER {
        Err(Error::UnsupportedOrder {
            order: l,
            max: MAX_ORDER,
        })
    } else {
        Ok(())
    }
}

// One product-rule step: multiply by (k+1−z), scale by `factor`.
#[inline]
fn advance(stack: &mut [ComplexScalar], linear: ComplexScalar, factor: f64) {
    for j in (0..stack.len()).rev() {
        let lower = if j > 0 {
            stack[j - 1] * j as f64
        } else {
            ComplexScalar::new(0.0, 0.0)
        };
        stack[j] = (linear * stack[j] - lower) * factor;
    }
}

/// All derivatives `dʲ/dzʲ (1−z)_n` for `j = 0..=l`.
pub fn pochhammer_derivs(z: ComplexScalar, n: TermIndex, l: TermIndex) -> Result<DerivStack> {
    check_order(l)?;
    let mut derivs = vec![ComplexScalar::new(0.0, 0.0); l + 1];
    derivs[0] = ComplexScalar::new(1.0, 0.0);
    for k in 0..n {
        advance(&mut derivs, (k + 1) as f64 - z, 1.0);
        if !derivs.iter().all(|d| is_finite(*d)) {
            return Err(Error::Overflow {
                what: "pochhammer_derivs",
                index: k + 1,
            });
        }
    }
    Ok(DerivStack { derivs })
}

/// `(n, p⁽ˡ⁾_n / (n·n!))` for `n = 1, 2, ...`, carried in normalized form so
/// no factorial is ever formed.
///
/// Individual derivative terms have isolated zeros (for z = 3.5 and l = 1
/// the sixth term vanishes exactly), so the reported envelope is
/// `max_j |q⁽ʲ⁾_n|·(ln n)^{l−j}`, which tracks the leading `(ln n)^l n^{−1−z}`
/// behaviour and does not vanish.
struct DerivativeTerms {
    z: ComplexScalar,
    n: TermIndex,
    stack: Vec<ComplexScalar>,
}

impl DerivativeTerms {
    fn new(z: ComplexScalar, l: TermIndex) -> Self {
        Self {
            z,
            n: 0,
            stack: vec![ComplexScalar::new(0.0, 0.0); l + 1],
        }
    }
}

impl Iterator for DerivativeTerms {
    type Item = Summand;

    fn next(&mut self) -> Option<Self::Item> {
        if self.n == 0 {
            // (1−z)_1 / (1·1!) and its derivatives
            self.stack[0] = 1.0 - self.z;
            if self.stack.len() > 1 {
                self.stack[1] = ComplexScalar::new(-1.0, 0.0);
            }
        } else {
            let nf = self.n as f64;
            let np1 = nf + 1.0;
            advance(&mut self.stack, np1 - self.z, nf / (np1 * np1));
        }
        self.n += 1;
        let l = self.stack.len() - 1;
        let top = self.stack[l];
        if !is_finite(top) {
            return None;
        }
        let log_n = (self.n as f64).ln().max(1.0);
        let envelope = self
            .stack
            .iter()
            .enumerate()
            .map(|(j, q)| q.norm() * log_n.powi((l - j) as i32))
            .fold(0.0, f64::max);
        Some(Summand {
            count: self.n,
            value: top,
            envelope,
        })
    }
}

/// ψ⁽ˡ⁾(z) for `Re(z) > 0`, `0 <= l <= 8`.
///
/// `l = 0` is [`digamma`] itself. For `l >= 1` the same stopping rule and
/// tail correction are used, with the digamma decay exponent `Re(z)`; the
/// derivative terms carry extra `ln n` factors, so the reported tail is
/// marked [`TailModel::PowerLawWithLogs`].
pub fn polygamma(z: ComplexScalar, l: TermIndex, config: &EvalConfig) -> Result<SeriesResult> {
    check_order(l)?;
    if l == 0 {
        return digamma(z, config);
    }
    config.validate()?;
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "polygamma needs Re(z) > 0, got z = {z}"
        )));
    }
    let (w, steps) = reduce_argument(z, config)?;
    let series = sum_adaptive(
        DerivativeTerms::new(w, l),
        w,
        growth_guard(w.re),
        config.max_terms - steps,
        config.abs_tol,
        config.tail_correction,
        false,
    )?;

    let mut total = ComplexSum::new();
    total.add(-series.sum);
    // ψ⁽ˡ⁾(w + k) = ψ⁽ˡ⁾(w) + (−1)ˡ l! Σ_{j<k} (w + j)^{−(l+1)}
    let scale = if l.is_multiple_of(2) {
        factorial(l)
    } else {
        -factorial(l)
    };
    for j in 0..steps {
        total.add((w + j as f64).powi(-(l as i32 + 1)) * scale);
    }
    Ok(SeriesResult {
        value: total.total(),
        terms_used: series.terms_used + steps,
        last_term_mag: series.last_term_mag,
        tail_estimate: series.tail_estimate,
        converged: series.converged,
        tail_model: TailModel::PowerLawWithLogs,
    })
}
