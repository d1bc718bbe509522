//! Reference routes that share no machinery with the Pochhammer series:
//! the classical Euler series for ψ, recurrence plus asymptotic expansion,
//! a direct p-series for polygamma, and a Lanczos Gamma.
//!
//! Everything else in the crate is checked against these.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::summation::ComplexSum;
use crate::{is_nonpositive_integer, ComplexScalar, TermIndex};

/// Immutable numeric constants used across the crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantStore {
    pub euler_gamma: f64,
    pub ln2: f64,
    pub pi: f64,
    pub zeta3: f64,
    /// `B_2, B_4, ..., B_14`.
    pub bernoulli_even: [f64; 7],
}

/// Euler–Mascheroni constant, 0.57721566490153286060651209... (OEIS A001620).
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Apéry's constant ζ(3) = 1.20205690315959428539973816... (OEIS A002117).
pub const ZETA3: f64 = 1.202_056_903_159_594_3;

pub const CONSTANTS: ConstantStore = ConstantStore {
    euler_gamma: EULER_GAMMA,
    ln2: std::f64::consts::LN_2,
    pi: PI,
    zeta3: ZETA3,
    bernoulli_even: [
        1.0 / 6.0,
        -1.0 / 30.0,
        1.0 / 42.0,
        -1.0 / 30.0,
        5.0 / 66.0,
        -691.0 / 2730.0,
        7.0 / 6.0,
    ],
};

/// Argument above which the asymptotic expansion of ψ is used directly.
const ASYMPTOTIC_THRESHOLD: f64 = 10.0;

/// ψ(z) from the classical series `−γ + Σ (z−1)/(n(n+z−1))`, truncated after
/// `terms` summands plus the first-order remainder `(z−1)/terms`.
pub fn digamma_classical(z: ComplexScalar, terms: TermIndex) -> Result<ComplexScalar> {
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "digamma_classical needs Re(z) > 0, got {z}"
        )));
    }
    if terms == 0 {
        return Err(Error::domain("digamma_classical needs terms >= 1"));
    }
    let w = z - 1.0;
    let mut sum = ComplexSum::new();
    sum.add(ComplexScalar::new(-EULER_GAMMA, 0.0));
    for n in 1..=terms {
        let nf = n as f64;
        sum.add(w / (nf * (nf + w)));
    }
    sum.add(w / terms as f64);
    Ok(sum.total())
}

/// High-accuracy ψ(z) for `Re(z) > 0`: upward recurrence to `Re(z) ≥ 10`,
/// then `ln z − 1/(2z) − Σ_{k=1..4} B_{2k} / (2k z^{2k})`.
pub fn reference_digamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "reference_digamma needs Re(z) > 0, got {z}"
        )));
    }
    let mut shift = ComplexSum::new();
    let mut x = z;
    while x.re < ASYMPTOTIC_THRESHOLD {
        shift.add(x.inv());
        x += 1.0;
    }
    let inv2 = (x * x).inv();
    let mut series = ComplexScalar::new(0.0, 0.0);
    let mut pow = inv2;
    for (k, b) in CONSTANTS.bernoulli_even.iter().enumerate() {
        series += pow * (b / (2.0 * (k + 1) as f64));
        pow *= inv2;
    }
    Ok(x.ln() - 0.5 * x.inv() - series - shift.total())
}

/// ψ⁽ˡ⁾(z) for `1 ≤ l ≤ 8` from `(−1)^{l+1} l! Σ_{k≥0} (z+k)^{−(l+1)}`, with
/// the remainder after `K` terms replaced by its integral and the first two
/// Euler–Maclaurin corrections.
pub fn reference_polygamma(z: ComplexScalar, l: TermIndex) -> Result<ComplexScalar> {
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "reference_polygamma needs Re(z) > 0, got {z}"
        )));
    }
    if l == 0 {
        return reference_digamma(z);
    }
    if l > crate::polygamma::MAX_ORDER {
        return Err(Error::UnsupportedOrder {
            order: l,
            max: crate::polygamma::MAX_ORDER,
        });
    }
    let lf = l as f64;
    let fact = factorial(l);
    // Size K so the first neglected Euler–Maclaurin term, f'''(K)/720, is
    // below 1e-13 after scaling by l!.
    let coef = fact * (lf + 1.0) * (lf + 2.0) * (lf + 3.0) / 720.0;
    let x_min = (coef / 1e-13).powf(1.0 / (lf + 4.0));
    let k_max = (x_min - z.re).ceil().max(1.0) as usize;

    let power = -(lf + 1.0);
    let mut sum = ComplexSum::new();
    for k in 0..k_max {
        sum.add((z + k as f64).powf(power));
    }
    let tail_at = z + k_max as f64;
    sum.add(tail_at.powf(-lf) / lf);
    sum.add(0.5 * tail_at.powf(power));
    sum.add((lf + 1.0) / 12.0 * tail_at.powf(power - 1.0));

    let sign = if l % 2 == 1 { 1.0 } else { -1.0 };
    Ok(sum.total() * (sign * fact))
}

const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Γ(z) by the Lanczos approximation (g = 7, 9 coefficients), with the
/// reflection formula for `Re(z) < 0.5`.
pub fn reference_gamma(z: ComplexScalar) -> Result<ComplexScalar> {
    if is_nonpositive_integer(z) {
        return Err(Error::domain(format!("Gamma has a pole at {z}")));
    }
    if z.re < 0.5 {
        let s = (PI * z).sin();
        return Ok(PI / (s * lanczos(1.0 - z)));
    }
    Ok(lanczos(z))
}

fn lanczos(z: ComplexScalar) -> ComplexScalar {
    let z = z - 1.0;
    let mut a = ComplexScalar::new(LANCZOS_COEFFS[0], 0.0);
    for (i, &p) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        a += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    ((z + 0.5) * t.ln() - t).exp() * a * (2.0 * PI).sqrt()
}

pub(crate) fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// A golden value of ψ⁽ᵒʳᵈᵉʳ⁾ at a point.
#[derive(Debug, Clone, PartialEq)]
pub struct KnownValue {
    pub argument: ComplexScalar,
    pub order: TermIndex,
    pub value: ComplexScalar,
    pub provenance: &'static str,
}

pub fn known_values() -> Vec<KnownValue> {
    let g = EULER_GAMMA;
    let r = |x: f64| ComplexScalar::new(x, 0.0);
    vec![
        KnownValue {
            argument: r(1.0),
            order: 0,
            value: r(-g),
            provenance: "psi(1) = -gamma",
        },
        KnownValue {
            argument: r(2.0),
            order: 0,
            value: r(1.0 - g),
            provenance: "psi(2) = 1 - gamma",
        },
        KnownValue {
            argument: r(3.0),
            order: 0,
            value: r(1.5 - g),
            provenance: "psi(3) = 3/2 - gamma",
        },
        KnownValue {
            argument: r(0.5),
            order: 0,
            value: r(-g - 2.0 * CONSTANTS.ln2),
            provenance: "psi(1/2) = -gamma - 2 ln 2",
        },
        KnownValue {
            argument: r(1.0),
            order: 1,
            value: r(PI * PI / 6.0),
            provenance: "psi'(1) = zeta(2)",
        },
        KnownValue {
            argument: r(1.0),
            order: 2,
            value: r(-2.0 * ZETA3),
            provenance: "psi''(1) = -2 zeta(3)",
        },
    ]
}
