//! ψ(z) from the Pochhammer-product series
//!
//! ```text
//! ψ_m(z) = −γ − Σ_{n=1..m} (1−z)_n / (n·n!)
//! ```
//!
//! and its equivalent signed-product form `−γ + Σ (−1)^{n+1} Π_{i≤n}(z−i) / (n·n!)`.
//!
//! The terms grow while `n < Re(z)` and only then decay like `n^{−1−Re(z)}`,
//! so the stopping rule refuses to look at the tail estimate before
//! `n ≥ ⌈|Re z|⌉ + 2`. The infinite series converges for every `Re(z) > 0`;
//! `m ≥ Re(z)` is a truncation-quality requirement, not a convergence one.
//!
//! For large `Re(z)` the terms reach `~binom(z−1, z/2)/z` before cancelling
//! down to `ψ(z) ≈ ln z`, so [`digamma`] steps the argument down with
//! `ψ(z) = ψ(z−1) + 1/(z−1)` until it lies in the configured band.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::EULER_GAMMA;
use crate::pochhammer::SeriesTerms;
use crate::summation::ComplexSum;
use crate::{is_finite, is_nonpositive_integer, ComplexScalar, TermIndex};

/// Largest `m` accepted by [`digamma_eq11_partial`], which forms `n!`.
pub const EQ11_MAX_TERMS: TermIndex = 150;

/// Truncation and accuracy controls shared by every adaptive evaluator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    /// Upper bound on summands, recurrence corrections included.
    pub max_terms: TermIndex,
    /// Target for the estimated truncation remainder.
    pub abs_tol: f64,
    /// Add the integral-comparison estimate of the remainder to the sum.
    pub tail_correction: bool,
    /// Step large arguments down into `reduction_band`.
    pub argument_reduction: bool,
    /// `(low, high)`: arguments with `Re(z) > high` are reduced by unit steps
    /// until `Re(z) <= high`, never below `low`.
    pub reduction_band: (f64, f64),
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            max_terms: 1_000_000,
            abs_tol: 1e-10,
            tail_correction: true,
            argument_reduction: true,
            reduction_band: (4.0, 8.0),
        }
    }
}

impl EvalConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_terms == 0 {
            return Err(Error::InvalidConfig("max_terms must be >= 1".into()));
        }
        if self.abs_tol.is_nan() || self.abs_tol < 0.0 {
            return Err(Error::InvalidConfig(format!(
                "abs_tol must be >= 0, got {}",
                self.abs_tol
            )));
        }
        let (low, high) = self.reduction_band;
        if !(0.0 < low && low < high) {
            return Err(Error::InvalidConfig(format!(
                "reduction band must satisfy 0 < low < high, got ({low}, {high})"
            )));
        }
        Ok(())
    }

    pub fn with_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn with_max_terms(mut self, max_terms: TermIndex) -> Self {
        self.max_terms = max_terms;
        self
    }

    pub fn with_tail_correction(mut self, on: bool) -> Self {
        self.tail_correction = on;
        self
    }

    pub fn with_reduction(mut self, on: bool) -> Self {
        self.argument_reduction = on;
        self
    }
}

/// How the reported `tail_estimate` was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TailModel {
    /// The series terminated; the value is exact up to rounding.
    Terminated,
    /// `|t_m|·m/Re(s)` for terms decaying like `n^{−1−s}`.
    PowerLaw,
    /// Same estimate applied to derivative terms, which carry extra
    /// `ln n` factors; indicative only.
    PowerLawWithLogs,
}

/// A series value with its convergence diagnostics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SeriesResult {
    pub value: ComplexScalar,
    /// Summands accumulated, including argument-reduction corrections.
    pub terms_used: TermIndex,
    pub last_term_mag: f64,
    pub tail_estimate: f64,
    pub converged: bool,
    pub tail_model: TailModel,
}

/// Index from which the tail estimate may be trusted for terms with decay
/// exponent `re`.
#[inline]
pub(crate) fn growth_guard(re: f64) -> TermIndex {
    re.abs().ceil() as TermIndex + 2
}

/// Estimate of `|Σ_{n>m} t_n|` from the last retained term, assuming
/// `|t_n| ~ C·n^{−1−Re(z)}`: `|t_m|·m/Re(z)`.
pub fn tail_estimate(z: ComplexScalar, t_m: ComplexScalar, m: TermIndex) -> Result<f64> {
    if z.re <= 0.0 {
        return Err(Error::domain(format!(
            "tail_estimate needs Re(z) > 0, got {z}"
        )));
    }
    let guard = growth_guard(z.re);
    if m < guard {
        return Err(Error::domain(format!(
            "tail_estimate needs m >= {guard} for z = {z} (terms still growing), got m = {m}"
        )));
    }
    Ok(t_m.norm() * m as f64 / z.re)
}

/// One step of [`PartialSums`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartialSum {
    pub n: TermIndex,
    pub term: ComplexScalar,
    /// `ψ_n(z)`.
    pub value: ComplexScalar,
}

/// Running partial sums `ψ_1(z), ψ_2(z), ...` with compensated accumulation.
#[derive(Debug, Clone)]
pub struct PartialSums {
    terms: SeriesTerms,
    sum: ComplexSum,
}

impl PartialSums {
    pub fn new(z: ComplexScalar) -> Self {
        Self {
            terms: SeriesTerms::new(z),
            sum: ComplexSum::new(),
        }
    }
}

impl Iterator for PartialSums {
    type Item = PartialSum;

    fn next(&mut self) -> Option<PartialSum> {
        let (n, term) = self.terms.next()?;
        self.sum.add(term);
        Some(PartialSum {
            n,
            term,
            value: -EULER_GAMMA - self.sum.total(),
        })
    }
}

fn check_domain(z: ComplexScalar, what: &str) -> Result<()> {
    if z.re > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "{what} needs Re(z) > 0, got z = {z}"
        )))
    }
}

/// Plain truncation `ψ_m(z)`: no tail correction, no argument reduction.
pub fn digamma_partial(z: ComplexScalar, m: TermIndex) -> Result<ComplexScalar> {
    check_domain(z, "digamma_partial")?;
    if m == 0 {
        return Err(Error::domain("digamma_partial needs m >= 1"));
    }
    PartialSums::new(z)
        .nth(m - 1)
        .map(|p| p.value)
        .ok_or(Error::Overflow {
            what: "digamma_partial",
            index: m,
        })
}

/// `ψ_m(z)` from the signed falling-product form. Forms `n!` explicitly, so
/// `m` is limited to [`EQ11_MAX_TERMS`].
pub fn digamma_eq11_partial(z: ComplexScalar, m: TermIndex) -> Result<ComplexScalar> {
    check_domain(z, "digamma_eq11_partial")?;
    if m == 0 || m > EQ11_MAX_TERMS {
        return Err(Error::domain(format!(
            "digamma_eq11_partial needs 1 <= m <= {EQ11_MAX_TERMS}, got {m}"
        )));
    }
    let mut product = ComplexScalar::new(1.0, 0.0);
    let mut fact = 1.0;
    let mut sum = ComplexSum::new();
    for n in 1..=m {
        let nf = n as f64;
        product *= z - nf;
        fact *= nf;
        let sign = if n % 2 == 1 { 1.0 } else { -1.0 };
        let term = product * sign / (nf * fact);
        if !is_finite(term) {
            return Err(Error::Overflow {
                what: "digamma_eq11_partial",
                index: n,
            });
        }
        sum.add(term);
    }
    Ok(-EULER_GAMMA + sum.total())
}

/// Result of [`sum_adaptive`] before it is turned into a [`SeriesResult`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct AdaptiveSum {
    pub sum: ComplexScalar,
    pub terms_used: TermIndex,
    pub last_term_mag: f64,
    pub tail_estimate: f64,
    pub converged: bool,
    pub terminated: bool,
}

/// One summand fed to [`sum_adaptive`].
#[derive(Debug, Clone, Copy)]
pub(crate) struct Summand {
    /// 1-based position, the multiplier in the tail estimate.
    pub count: TermIndex,
    pub value: ComplexScalar,
    /// Magnitude used for the tail estimate. Equal to `|value|` for series
    /// whose terms have no zeros; an envelope for those that do.
    pub envelope: f64,
}

impl Summand {
    pub fn plain((count, value): (TermIndex, ComplexScalar)) -> Self {
        Self {
            count,
            value,
            envelope: value.norm(),
        }
    }
}

/// Stopping rule shared by the digamma, ₃F₂ and polygamma evaluators.
///
/// Sums until `envelope·count/Re(decay) <= abs_tol` at some `count >= guard`
/// or the budget runs out. With `zero_terminates`, an exactly-zero term ends
/// the series.
pub(crate) fn sum_adaptive<I>(
    terms: I,
    decay: ComplexScalar,
    guard: TermIndex,
    budget: TermIndex,
    abs_tol: f64,
    tail_correction: bool,
    zero_terminates: bool,
) -> Result<AdaptiveSum>
where
    I: Iterator<Item = Summand>,
{
    let zero = ComplexScalar::new(0.0, 0.0);
    let mut sum = ComplexSum::new();
    let mut consumed = 0;
    let mut last: Option<Summand> = None;
    let mut estimate = f64::INFINITY;

    for term in terms.take(budget) {
        consumed += 1;
        if zero_terminates && term.value == zero {
            return Ok(AdaptiveSum {
                sum: sum.total(),
                terms_used: last.map_or(1, |t| t.count),
                last_term_mag: 0.0,
                tail_estimate: 0.0,
                converged: true,
                terminated: true,
            });
        }
        sum.add(term.value);
        last = Some(term);
        if term.count >= guard {
            estimate = term.envelope * term.count as f64 / decay.re;
            if estimate <= abs_tol {
                break;
            }
        }
    }
    let Some(last) = last else {
        return Err(Error::InvalidConfig("no term budget left".into()));
    };
    if estimate.is_infinite() && consumed == budget {
        // Budget exhausted inside the growth region; report the raw formula.
        estimate = last.envelope * last.count as f64 / decay.re;
    }
    if consumed < budget && estimate > abs_tol {
        return Err(Error::Overflow {
            what: "series term",
            index: last.count + 1,
        });
    }
    if tail_correction {
        sum.add(last.value * last.count as f64 / decay);
    }
    Ok(AdaptiveSum {
        sum: sum.total(),
        terms_used: last.count,
        last_term_mag: last.value.norm(),
        tail_estimate: estimate,
        converged: estimate <= abs_tol,
        terminated: false,
    })
}

/// Downward argument reduction: the reduced argument `w` and the number of
/// unit steps `k`, so that `z = w + k`.
pub(crate) fn reduce_argument(
    z: ComplexScalar,
    config: &EvalConfig,
) -> Result<(ComplexScalar, TermIndex)> {
    if !config.argument_reduction {
        return Ok((z, 0));
    }
    let (low, high) = config.reduction_band;
    let steps = if z.re > high {
        // Largest k with Re(z) - k >= low, capped where Re(z) - k <= high.
        let to_band = (z.re - high).ceil();
        let to_floor = (z.re - low).floor();
        to_band.min(to_floor).max(0.0) as TermIndex
    } else {
        0
    };
    if steps >= config.max_terms {
        return Err(Error::domain(format!(
            "argument {z} needs {steps} reduction steps, more than max_terms = {}",
            config.max_terms
        )));
    }
    let w = z - steps as f64;
    if is_nonpositive_integer(w) {
        return Err(Error::domain(format!("reduced argument {w} is a pole")));
    }
    Ok((w, steps))
}

/// Adaptive ψ(z) for `Re(z) > 0`.
///
/// Sums until the tail estimate drops below `abs_tol` or the budget runs
/// out; positive-integer arguments terminate exactly after `z−1` terms.
/// Non-convergence is reported through `converged`, not as an error.
pub fn digamma(z: ComplexScalar, config: &EvalConfig) -> Result<SeriesResult> {
    config.validate()?;
    check_domain(z, "digamma")?;
    let (w, steps) = reduce_argument(z, config)?;
    let budget = config.max_terms - steps;
    let series = sum_adaptive(
        SeriesTerms::new(w).map(Summand::plain),
        w,
        growth_guard(w.re),
        budget,
        config.abs_tol,
        config.tail_correction,
        true,
    )?;

    let mut total = ComplexSum::new();
    total.add(ComplexScalar::new(-EULER_GAMMA, 0.0));
    total.add(-series.sum);
    // ψ(w + k) = ψ(w) + Σ_{j<k} 1/(w + j)
    for j in 0..steps {
        total.add((w + j as f64).inv());
    }
    Ok(SeriesResult {
        value: total.total(),
        terms_used: series.terms_used + steps,
        last_term_mag: series.last_term_mag,
        tail_estimate: series.tail_estimate,
        converged: series.converged,
        tail_model: if series.terminated {
            TailModel::Terminated
        } else {
            TailModel::PowerLaw
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c;
    use crate::oracle::reference_digamma;
    use crate::pochhammer::series_term;
    use proptest::prelude::*;

    const PSI_HALF: f64 = -1.963_510_026_021_423_5;

    fn harmonic(n: usize) -> f64 {
        (1..=n).map(|k| 1.0 / k as f64).sum()
    }

    #[test]
    fn config_validation() {
        assert!(EvalConfig::default().validate().is_ok());
        assert!(EvalConfig::default().with_max_terms(0).validate().is_err());
        assert!(EvalConfig::default().with_tol(-1.0).validate().is_err());
        assert!(EvalConfig::default().with_tol(f64::NAN).validate().is_err());
        for reduction_band in [(8.0, 4.0), (0.0, 4.0)] {
            let cfg = EvalConfig {
                reduction_band,
                ..EvalConfig::default()
            };
            assert!(cfg.validate().is_err());
        }
    }

    #[test]
    fn partial_examples() {
        for m in [1, 2, 10, 1000] {
            assert_eq!(digamma_partial(c(1.0), m).unwrap(), c(-EULER_GAMMA));
        }
        for m in [2, 3, 50] {
            assert_eq!(digamma_partial(c(2.0), m).unwrap(), c(1.0 - EULER_GAMMA));
        }
        let v = digamma_partial(c(0.5), 1_000_000).unwrap();
        assert!((v.re - PSI_HALF).abs() < 2e-3);
        assert!(digamma_partial(c(0.0), 3).is_err());
        assert!(digamma_partial(c(-1.5), 3).is_err());
        assert!(digamma_partial(c(1.5), 0).is_err());
    }

    #[test]
    fn eq11_examples() {
        assert_eq!(digamma_eq11_partial(c(1.0), 10).unwrap(), c(-EULER_GAMMA));
        let v = digamma_eq11_partial(c(3.0), 5).unwrap();
        assert!((v.re - (1.5 - EULER_GAMMA)).abs() < 1e-15);
        let a = digamma_eq11_partial(c(2.5), 50).unwrap();
        let b = digamma_partial(c(2.5), 50).unwrap();
        assert!((a - b).norm() < 1e-12);
        assert!(digamma_eq11_partial(c(2.5), 151).is_err());
        assert!(digamma_eq11_partial(c(2.5), 0).is_err());
    }

    #[test]
    fn tail_estimate_examples() {
        let z = c(2.5);
        let m = 100_000;
        let est = tail_estimate(z, series_term(z, m).unwrap(), m).unwrap();
        assert!(est <= 1e-12, "{est}");

        let z = c(0.5);
        let m = 1_000_000;
        let est = tail_estimate(z, series_term(z, m).unwrap(), m).unwrap();
        assert!((est - 1.128e-3).abs() < 0.01e-3, "{est}");

        assert_eq!(tail_estimate(c(3.0), c(0.0), 10).unwrap(), 0.0);
        assert!(tail_estimate(c(3.0), c(1.0), 4).is_err());
        assert!(tail_estimate(c(-3.0), c(1.0), 40).is_err());
    }

    #[test]
    fn terminating_integer_arguments() {
        let cfg = EvalConfig::default();
        let r = digamma(c(3.0), &cfg).unwrap();
        assert!((r.value.re - (1.5 - EULER_GAMMA)).abs() < 1e-15);
        assert_eq!(r.terms_used, 2);
        assert!(r.converged);
        assert_eq!(r.tail_model, TailModel::Terminated);
        for k in 1..=20usize {
            let expect = harmonic(k - 1) - EULER_GAMMA;
            let z = c(k as f64);
            let v = digamma_partial(z, (k - 1).max(1)).unwrap().re;
            // Without reduction the terms reach binom(k-1, k/2)/k; past k = 15
            // their rounding alone exceeds 1e-13.
            let biggest = (1..k)
                .map(|n| series_term(z, n).unwrap().norm())
                .fold(0.0, f64::max);
            let tol = if k <= 15 {
                1e-13
            } else {
                1e-13 + 8.0 * f64::EPSILON * biggest
            };
            assert!((v - expect).abs() <= tol, "k={k}");
            let r = digamma(z, &EvalConfig::default()).unwrap();
            assert!((r.value.re - expect).abs() <= 1e-13, "k={k}");
            assert_eq!(r.terms_used, (k - 1).max(1));
            for n in k..k + 5 {
                assert_eq!(series_term(z, n).unwrap(), c(0.0));
            }
        }
    }

    #[test]
    fn slow_half_argument_with_tail_correction() {
        let cfg = EvalConfig::default().with_tol(1e-5);
        let r = digamma(c(0.5), &cfg).unwrap();
        assert!(!r.converged);
        assert_eq!(r.terms_used, 1_000_000);
        assert!((r.value.re - PSI_HALF).abs() < 1e-4);
        assert!(r.tail_estimate > 1e-3);
    }

    #[test]
    fn argument_reduction_avoids_cancellation() {
        let expect = harmonic(29) - EULER_GAMMA;
        let r = digamma(c(30.0), &EvalConfig::default()).unwrap();
        assert!((r.value.re - expect).abs() < 1e-8);
        assert!((r.value.re - 3.384_438_13).abs() < 1e-8);
        assert_eq!(r.terms_used, 29);
    }

    #[test]
    fn reduction_respects_band_floor() {
        let cfg = EvalConfig {
            reduction_band: (4.0, 4.5),
            ..EvalConfig::default()
        };
        let r = digamma(c(10.0), &cfg).unwrap();
        let expect = harmonic(9) - EULER_GAMMA;
        assert!((r.value.re - expect).abs() < 1e-12);
    }

    #[test]
    fn term_growth_hump_at_ten() {
        let mags: Vec<f64> = (1..=30)
            .map(|n| series_term(c(10.0), n).unwrap().norm())
            .collect();
        let argmax = mags
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .unwrap()
            .0
            + 1;
        assert!((4..=5).contains(&argmax), "argmax={argmax}");
        for n in 1..argmax {
            assert!(mags[n] > mags[n - 1]);
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let cfg = EvalConfig::default().with_tol(1e-8);
        for &z in &[
            ComplexScalar::new(1.5, 1.0),
            ComplexScalar::new(3.7, -2.0),
            ComplexScalar::new(12.0, 0.5),
        ] {
            let a = digamma(z.conj(), &cfg).unwrap().value;
            let b = digamma(z, &cfg).unwrap().value.conj();
            assert!((a - b).norm() <= 1e-12);
        }
    }

    #[test]
    fn domain_errors() {
        let cfg = EvalConfig::default();
        assert!(matches!(digamma(c(0.0), &cfg), Err(Error::Domain(_))));
        assert!(matches!(
            digamma(ComplexScalar::new(-0.5, 2.0), &cfg),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            digamma(c(1.5), &cfg.with_max_terms(0)),
            Err(Error::InvalidConfig(_))
        ));
    }

    #[test]
    fn tiny_budget_reports_non_convergence() {
        let r = digamma(c(2.5), &EvalConfig::default().with_max_terms(3)).unwrap();
        assert!(!r.converged);
        assert_eq!(r.terms_used, 3);
        assert!(r.tail_estimate > 0.0);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn forms_agree(re in 0.2f64..8.0, im in -2.0f64..2.0, m in 1usize..=100) {
            let z = ComplexScalar::new(re, im);
            let a = digamma_partial(z, m).unwrap();
            let b = digamma_eq11_partial(z, m).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * (1.0 + a.norm()));
        }

        #[test]
        fn adaptive_matches_reference(re in 1.0f64..7.0, im in -3.0f64..3.0) {
            let z = ComplexScalar::new(re, im);
            let cfg = EvalConfig::default().with_tol(1e-10);
            let r = digamma(z, &cfg).unwrap();
            let truth = reference_digamma(z).unwrap();
            prop_assert!((r.value - truth).norm() <= (10.0 * cfg.abs_tol).max(r.tail_estimate));
            prop_assert!(r.terms_used <= cfg.max_terms);
            prop_assert!(!r.converged || r.tail_estimate <= cfg.abs_tol);
        }
    }
}
