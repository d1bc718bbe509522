//! Beta/Gamma machinery behind the derivative-quotient construction of ψ.
//!
//! ```text
//! ψ(z) = lim_{h→0} [Γ(h) − B(z,h)] / ((z+h)·B(z,h+1))
//! ```
//!
//! The truncated expansions of `B(z,h)` and `B(z,h+1)` and the Weierstrass
//! product for Γ near zero are exposed separately so each step of the
//! construction can be checked numerically. Truncation orders are always
//! supplied by the caller.

use num_complex::ComplexFloat;

use crate::error::{Error, Result};
use crate::oracle::{reference_gamma, EULER_GAMMA};
use crate::summation::ComplexSum;
use crate::{is_finite, is_nonpositive_integer, ComplexScalar, TermIndex};

fn check_not_pole(name: &str, v: ComplexScalar) -> Result<()> {
    if is_nonpositive_integer(v) {
        Err(Error::domain(format!("{name} = {v} is a pole of Gamma")))
    } else {
        Ok(())
    }
}

/// `B(z,h) = Γ(z)Γ(h)/Γ(z+h)` from the reference Gamma.
pub fn beta_exact(z: ComplexScalar, h: ComplexScalar) -> Result<ComplexScalar> {
    check_not_pole("z", z)?;
    check_not_pole("h", h)?;
    check_not_pole("z+h", z + h)?;
    Ok(reference_gamma(z)? * reference_gamma(h)? / reference_gamma(z + h)?)
}

/// `Σ_{k<terms} (1−z)_k / (k!·(h+k))`, the binomial expansion of `B(z,h)`.
pub fn beta_series(z: ComplexScalar, h: ComplexScalar, terms: TermIndex) -> Result<ComplexScalar> {
    if z.re <= 0.0 || h.re <= 0.0 {
        return Err(Error::domain(format!(
            "beta_series needs Re(z) > 0 and Re(h) > 0, got z={z}, h={h}"
        )));
    }
    if terms == 0 {
        return Err(Error::domain("beta_series needs terms >= 1"));
    }
    Ok(binomial_expansion(1.0 - z, h, terms))
}

/// `Σ_{k<terms} (−h)_k / (k!·(z+k))`, the expansion of `B(z,h+1)`.
pub fn beta_series_shifted(
    z: ComplexScalar,
    h: ComplexScalar,
    terms: TermIndex,
) -> Result<ComplexScalar> {
    if z.re <= 0.0 || h.re <= -1.0 {
        return Err(Error::domain(format!(
            "beta_series_shifted needs Re(z) > 0 and Re(h) > -1, got z={z}, h={h}"
        )));
    }
    if terms == 0 {
        return Err(Error::domain("beta_series_shifted needs terms >= 1"));
    }
    Ok(binomial_expansion(-h, z, terms))
}

// Σ_{k<terms} (a)_k / (k!·(b+k)); stops early once the coefficient is zero.
fn binomial_expansion(a: ComplexScalar, b: ComplexScalar, terms: TermIndex) -> ComplexScalar {
    let mut coeff = ComplexScalar::new(1.0, 0.0);
    let mut sum = ComplexSum::new();
    for k in 0..terms {
        if coeff == ComplexScalar::new(0.0, 0.0) {
            break;
        }
        let kf = k as f64;
        sum.add(coeff / (b + kf));
        coeff *= (a + kf) / (kf + 1.0);
    }
    sum.total()
}

/// Relative residual `|B(z,h) − (z+h)/h · B(z,h+1)| / |B(z,h)|`.
pub fn beta_recurrence_residual(z: ComplexScalar, h: ComplexScalar) -> Result<f64> {
    let lhs = beta_exact(z, h)?;
    let rhs = (z + h) / h * beta_exact(z, h + 1.0)?;
    Ok((lhs - rhs).norm() / lhs.norm())
}

/// Γ(h) from the Weierstrass product truncated after `product_factors`
/// factors: `(1/h) e^{−γh} Π_{n=1..N} (1 + h/n)^{−1} e^{h/n}`.
///
/// Each factor carries its own exponential, so the running product stays
/// near 1 instead of growing like `N^h`.
pub fn gamma_small(h: ComplexScalar, product_factors: TermIndex) -> Result<ComplexScalar> {
    check_not_pole("h", h)?;
    if product_factors == 0 {
        return Err(Error::domain("gamma_small needs product_factors >= 1"));
    }
    let mut prod = (-EULER_GAMMA * h).exp() / h;
    for n in 1..=product_factors {
        let w = h / n as f64;
        prod *= w.exp() / (1.0 + w);
    }
    if !is_finite(prod) {
        return Err(Error::Overflow {
            what: "gamma_small",
            index: product_factors,
        });
    }
    Ok(prod)
}

/// Finite-`h` value of the derivative quotient for ψ(z), with the Beta
/// values taken from [`beta_exact`]. The error is `O(h)`.
pub fn psi_via_limit(z: ComplexScalar, h: ComplexScalar) -> Result<ComplexScalar> {
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "psi_via_limit needs Re(z) > 0, got z={z}"
        )));
    }
    if h == ComplexScalar::new(0.0, 0.0) || h.abs() > 0.1 {
        return Err(Error::domain(format!(
            "psi_via_limit needs 0 < |h| <= 0.1, got h={h}"
        )));
    }
    check_not_pole("z+h", z + h)?;
    let numer = reference_gamma(h)? - beta_exact(z, h)?;
    let denom = (z + h) * beta_exact(z, h + 1.0)?;
    Ok(numer / denom)
}

/// The derivative quotient evaluated entirely from truncated expansions:
/// Weierstrass Γ(h), the series for `B(z,h)` and for `B(z,h+1)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LimitProbe {
    h: ComplexScalar,
    product_factors: TermIndex,
    expansion_terms: TermIndex,
}

impl LimitProbe {
    pub fn new(
        h: ComplexScalar,
        product_factors: TermIndex,
        expansion_terms: TermIndex,
    ) -> Result<Self> {
        if h == ComplexScalar::new(0.0, 0.0) {
            return Err(Error::domain("LimitProbe needs h != 0"));
        }
        if product_factors == 0 || expansion_terms == 0 {
            return Err(Error::domain(
                "LimitProbe needs product_factors >= 1 and expansion_terms >= 1",
            ));
        }
        Ok(Self {
            h,
            product_factors,
            expansion_terms,
        })
    }

    pub fn h(&self) -> ComplexScalar {
        self.h
    }

    pub fn evaluate(&self, z: ComplexScalar) -> Result<ComplexScalar> {
        let gamma_h = gamma_small(self.h, self.product_factors)?;
        let b = beta_series(z, self.h, self.expansion_terms)?;
        let b_shift = beta_series_shifted(z, self.h, self.expansion_terms)?;
        Ok((gamma_h - b) / ((z + self.h) * b_shift))
    }
}
