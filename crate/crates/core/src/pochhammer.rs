//! Rising factorials, the falling product `Π (z − i)`, and the per-term
//! recurrence of the digamma series `Σ (1−z)_n / (n·n!)`.
//!
//! Factorials are never formed: every term is built from its predecessor by
//! a bounded ratio, so indices far past 170 stay representable.

use crate::error::{Error, Result};
use crate::{is_finite, ComplexScalar, TermIndex};

/// Rising factorial `(a)_n = a (a+1) ··· (a+n−1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: ComplexScalar, n: TermIndex) -> Result<ComplexScalar> {
    let mut acc = ComplexScalar::new(1.0, 0.0);
    for k in 0..n {
        acc *= a + k as f64;
        if !is_finite(acc) {
            return Err(Error::Overflow {
                what: "pochhammer",
                index: k + 1,
            });
        }
    }
    Ok(acc)
}

/// `Π_{i=1..n} (z − i)`; equal to `(−1)^n (1−z)_n`.
pub fn falling_product(z: ComplexScalar, n: TermIndex) -> Result<ComplexScalar> {
    if n == 0 {
        return Err(Error::domain("falling_product requires n >= 1"));
    }
    let mut acc = ComplexScalar::new(1.0, 0.0);
    for i in 1..=n {
        acc *= z - i as f64;
        if !is_finite(acc) {
            return Err(Error::Overflow {
                what: "falling_product",
                index: i,
            });
        }
    }
    Ok(acc)
}

/// Ratio `t_{n+1} / t_n = (n+1−z)·n / (n+1)²` of consecutive series terms.
///
/// Real-valued `n`, so the ratio only depends on `z` through `n+1−z`.
#[inline]
pub fn term_ratio(z: ComplexScalar, n: TermIndex) -> ComplexScalar {
    let nf = n as f64;
    let np1 = nf + 1.0;
    (np1 - z) * (nf / (np1 * np1))
}

/// The `n`-th digamma series term `t_n = (1−z)_n / (n·n!)`, `n ≥ 1`.
pub fn series_term(z: ComplexScalar, n: TermIndex) -> Result<ComplexScalar> {
    if n == 0 {
        return Err(Error::domain("series_term requires n >= 1"));
    }
    SeriesTerms::new(z)
        .nth(n - 1)
        .map(|(_, t)| t)
        .ok_or(Error::Overflow {
            what: "series_term",
            index: n,
        })
}

/// Iterator over `(n, t_n)` for `n = 1, 2, ...`.
///
/// Once a term is exactly zero (positive-integer `z`) every later term is
/// zero too; the iterator keeps yielding zeros and leaves stopping to the
/// caller. Iteration ends early only if a term becomes non-finite.
#[derive(Debug, Clone)]
pub struct SeriesTerms {
    z: ComplexScalar,
    n: TermIndex,
    term: ComplexScalar,
}

impl SeriesTerms {
    pub fn new(z: ComplexScalar) -> Self {
        Self {
            z,
            n: 0,
            term: ComplexScalar::new(0.0, 0.0),
        }
    }
}

impl Iterator for SeriesTerms {
    type Item = (TermIndex, ComplexScalar);

    #[inline]
    fn next(&mut self) -> Option<Self::Item> {
        self.term = if self.n == 0 {
            1.0 - self.z
        } else {
            self.term * term_ratio(self.z, self.n)
        };
        self.n += 1;
        is_finite(self.term).then_some((self.n, self.term))
    }
}
