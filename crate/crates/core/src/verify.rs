//! Cross-route invariant suite.
//!
//! Each check computes a residual (a maximum over its samples) and compares
//! it against a fixed tolerance. Random samples come from a seeded ChaCha
//! stream, so reports are reproducible bit for bit.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::beta_gamma::{
    beta_exact, beta_recurrence_residual, beta_series, beta_series_shifted, gamma_small,
    psi_via_limit,
};
use crate::digamma_series::{digamma, digamma_eq11_partial, digamma_partial, EvalConfig};
use crate::error::{Error, Result};
use crate::hypergeometric::{digamma_via_3f2, hyp3f2_unit, Hyp3F2Params};
use crate::oracle::{
    digamma_classical, factorial, known_values, reference_digamma, reference_gamma,
    reference_polygamma, EULER_GAMMA,
};
use crate::pochhammer::{falling_product, pochhammer, series_term, term_ratio};
use crate::polygamma::polygamma;
use crate::ComplexScalar;

/// Module whose invariants a check exercises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Suite {
    Pochhammer,
    Beta,
    Digamma,
    Hypergeometric,
    Polygamma,
    Oracle,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Pochhammer,
        Suite::Beta,
        Suite::Digamma,
        Suite::Hypergeometric,
        Suite::Polygamma,
        Suite::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Pochhammer => "pochhammer",
            Suite::Beta => "beta",
            Suite::Digamma => "digamma",
            Suite::Hypergeometric => "hypergeometric",
            Suite::Polygamma => "polygamma",
            Suite::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pochhammer" | "pochhammer_core" => Ok(Suite::Pochhammer),
            "beta" | "beta_gamma" => Ok(Suite::Beta),
            "digamma" | "digamma_series" => Ok(Suite::Digamma),
            "hypergeometric" | "hyp3f2" | "3f2" => Ok(Suite::Hypergeometric),
            "polygamma" => Ok(Suite::Polygamma),
            "oracle" => Ok(Suite::Oracle),
            other => Err(Error::domain(format!("unknown suite '{other}'"))),
        }
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<CheckResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

struct Runner {
    report: VerificationReport,
    suite: Suite,
}

impl Runner {
    fn check(&mut self, name: &'static str, tolerance: f64, f: impl FnOnce() -> Result<f64>) {
        // An evaluator error counts as an infinite residual.
        let residual = f().unwrap_or(f64::INFINITY);
        self.report.checks.push(CheckResult {
            suite: self.suite,
            name,
            residual,
            tolerance,
            pass: residual <= tolerance,
        });
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn real(x: f64) -> ComplexScalar {
    ComplexScalar::new(x, 0.0)
}

fn harmonic(n: usize) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

/// Runs every suite, or only `only` when given.
pub fn run_checks(only: Option<Suite>) -> VerificationReport {
    let mut runner = Runner {
        report: VerificationReport::default(),
        suite: Suite::Pochhammer,
    };
    for suite in Suite::ALL {
        if only.is_some_and(|s| s != suite) {
            continue;
        }
        runner.suite = suite;
        match suite {
            Suite::Pochhammer => pochhammer_checks(&mut runner),
            Suite::Beta => beta_checks(&mut runner),
            Suite::Digamma => digamma_checks(&mut runner),
            Suite::Hypergeometric => hypergeometric_checks(&mut runner),
            Suite::Polygamma => polygamma_checks(&mut runner),
            Suite::Oracle => oracle_checks(&mut runner),
        }
    }
    runner.report
}

fn pochhammer_checks(r: &mut Runner) {
    r.check("falling_product_identity", 1e-10, || {
        let mut g = rng(101);
        let mut worst = 0.0f64;
        let mut done = 0;
        while done < 200 {
            let z = ComplexScalar::new(g.random_range(-20.0..20.0), g.random_range(-20.0..20.0));
            if z.norm() > 20.0 {
                continue;
            }
            let n = g.random_range(1..=30);
            let p = pochhammer(1.0 - z, n)?;
            let sign = if (n + 1) % 2 == 0 { 1.0 } else { -1.0 };
            worst = worst.max((falling_product(z, n)? + sign * p).norm() / (1.0 + p.norm()));
            done += 1;
        }
        Ok(worst)
    });
    r.check("term_recurrence_vs_direct", 1e-12, || {
        let mut g = rng(102);
        let mut worst = 0.0f64;
        for _ in 0..50 {
            let z = ComplexScalar::new(g.random_range(0.1..10.0), g.random_range(-3.0..3.0));
            let mut fact = 1.0;
            for n in 1..=15 {
                fact *= n as f64;
                let direct = pochhammer(1.0 - z, n)? / (n as f64 * fact);
                worst = worst.max((series_term(z, n)? - direct).norm() / direct.norm().max(1e-300));
            }
        }
        Ok(worst)
    });
    r.check("decay_onset_ratio_below_one", 1.0 - f64::EPSILON, || {
        let mut g = rng(103);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let z: f64 = g.random_range(0.01..30.0);
            let start = (z.ceil() as usize).max(1);
            for n in start..start + 1000 {
                worst = worst.max(term_ratio(real(z), n).norm());
            }
        }
        Ok(worst)
    });
    r.check("pochhammer_additive_split", 1e-12, || {
        let mut g = rng(104);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let a = ComplexScalar::new(g.random_range(-5.0..5.0), g.random_range(-3.0..3.0));
            let (n, m) = (g.random_range(0..12), g.random_range(0..12));
            let lhs = pochhammer(a, n + m)?;
            let rhs = pochhammer(a, n)? * pochhammer(a + n as f64, m)?;
            worst = worst.max((lhs - rhs).norm() / (1.0 + lhs.norm()));
        }
        Ok(worst)
    });
}

fn beta_checks(r: &mut Runner) {
    r.check("beta_recurrence_residual", 1e-9, || {
        let mut g = rng(201);
        let mut worst = 0.0f64;
        let mut done = 0;
        while done < 100 {
            let z = ComplexScalar::new(g.random_range(0.2..10.0), g.random_range(-10.0..10.0));
            let h = ComplexScalar::new(g.random_range(0.2..10.0), g.random_range(-10.0..10.0));
            if z.norm() > 10.0 || h.norm() > 10.0 {
                continue;
            }
            worst = worst.max(beta_recurrence_residual(z, h)?);
            done += 1;
        }
        Ok(worst)
    });
    r.check("expansion_terminates_for_integer_z", 1e-10, || {
        let mut worst = 0.0f64;
        for h in [real(0.3), ComplexScalar::new(1.7, -0.9), real(4.2)] {
            for z in 1..=8usize {
                let s = beta_series(real(z as f64), h, z)?;
                let e = beta_exact(real(z as f64), h)?;
                worst = worst.max((s - e).norm() / e.norm());
            }
        }
        Ok(worst)
    });
    r.check("shifted_expansion_terminates_for_integer_h", 1e-10, || {
        let mut worst = 0.0f64;
        for z in [real(0.4), ComplexScalar::new(2.5, 1.1), real(6.0)] {
            for h in 0..=7usize {
                let s = beta_series_shifted(z, real(h as f64), h + 1)?;
                let e = beta_exact(z, real(h as f64 + 1.0))?;
                worst = worst.max((s - e).norm() / e.norm());
            }
        }
        Ok(worst)
    });
    r.check("weierstrass_residual_shrinks", 0.5, || {
        // largest ratio |hΓ(h) − 1| at h/10 versus at h
        let res = [1e-2, 1e-3, 1e-4]
            .iter()
            .map(|&h| Ok((real(h) * gamma_small(real(h), 1_000_000)? - 1.0).norm()))
            .collect::<Result<Vec<f64>>>()?;
        Ok(res.windows(2).map(|w| w[1] / w[0]).fold(0.0, f64::max))
    });
    r.check("limit_convergence_order", 0.2, || {
        // |fitted order − 1| over h = 2^-6 .. 2^-12
        let mut worst = 0.0f64;
        for z in [1.0, 2.0, 3.3] {
            let truth = reference_digamma(real(z))?;
            let mut pts = Vec::new();
            for k in 6..=12 {
                let h = 2f64.powi(-k);
                pts.push((
                    h.ln(),
                    (psi_via_limit(real(z), real(h))? - truth).norm().ln(),
                ));
            }
            worst = worst.max((log_log_slope(&pts) - 1.0).abs());
        }
        Ok(worst)
    });
}

/// Least-squares slope of `y` against `x`.
pub fn log_log_slope(pts: &[(f64, f64)]) -> f64 {
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    sxy / sxx
}

fn digamma_checks(r: &mut Runner) {
    r.check("eq11_eq12_form_equivalence", 1e-12, || {
        let mut g = rng(301);
        let mut worst = 0.0f64;
        for _ in 0..100 {
            let z = ComplexScalar::new(g.random_range(0.2..8.0), g.random_range(-2.0..2.0));
            let m = g.random_range(1..=100);
            let a = digamma_partial(z, m)?;
            let b = digamma_eq11_partial(z, m)?;
            worst = worst.max((a - b).norm() / (1.0 + a.norm()));
        }
        Ok(worst)
    });
    r.check("integer_termination", 1e-13, || {
        let cfg = EvalConfig::default();
        let mut worst = 0.0f64;
        for k in 1..=20usize {
            let z = real(k as f64);
            let expect = harmonic(k - 1) - EULER_GAMMA;
            let res = digamma(z, &cfg)?;
            if res.terms_used != (k - 1).max(1) {
                return Ok(f64::INFINITY);
            }
            worst = worst.max((res.value.re - expect).abs());
            if (k..k + 10).any(|n| series_term(z, n).map_or(true, |t| t != real(0.0))) {
                return Ok(f64::INFINITY);
            }
        }
        Ok(worst)
    });
    r.check("integer_termination_plain_partial_sum", 1.0, || {
        // error / (1e-13 + 8 eps max|t_n|): the plain sum cannot beat the
        // rounding of its largest term
        let mut worst = 0.0f64;
        for k in 1..=20usize {
            let z = real(k as f64);
            let expect = harmonic(k - 1) - EULER_GAMMA;
            let biggest = (1..k.max(2))
                .map(|n| series_term(z, n).map(|t| t.norm()))
                .collect::<Result<Vec<_>>>();
            let biggest = biggest?.into_iter().fold(0.0, f64::max);
            let allowed = 1e-13 + 8.0 * f64::EPSILON * biggest;
            worst = worst.max((digamma_partial(z, (k - 1).max(1))?.re - expect).abs() / allowed);
        }
        Ok(worst)
    });
    r.check("shift_recurrence", 10.0 * 1e-8, || {
        let cfg = EvalConfig::default().with_tol(1e-8).with_reduction(false);
        let mut g = rng(302);
        let mut worst = 0.0f64;
        for i in 0..100 {
            let im = if i % 2 == 0 {
                0.0
            } else {
                g.random_range(-2.0..2.0)
            };
            let z = ComplexScalar::new(g.random_range(0.5..6.0), im);
            let d = digamma(z + 1.0, &cfg)?.value - digamma(z, &cfg)?.value - z.inv();
            worst = worst.max(d.norm());
        }
        Ok(worst)
    });
    r.check("oracle_agreement_grid", 1.0, || {
        // error / max(10 abs_tol, tail_estimate)
        let cfg = EvalConfig::default();
        let mut worst = 0.0f64;
        for re in [0.5, 1.5, 2.5, 3.7, 5.2] {
            for im in [0.0, 1.0] {
                let z = ComplexScalar::new(re, im);
                let res = digamma(z, &cfg)?;
                let err = (res.value - reference_digamma(z)?).norm();
                worst = worst.max(err / (10.0 * cfg.abs_tol).max(res.tail_estimate));
            }
        }
        Ok(worst)
    });
    r.check("conjugate_symmetry", 1e-12, || {
        let cfg = EvalConfig::default().with_tol(1e-8);
        let mut g = rng(303);
        let mut worst = 0.0f64;
        for _ in 0..20 {
            let z = ComplexScalar::new(g.random_range(0.5..20.0), g.random_range(-4.0..4.0));
            let a = digamma(z.conj(), &cfg)?.value;
            let b = digamma(z, &cfg)?.value.conj();
            worst = worst.max((a - b).norm());
        }
        Ok(worst)
    });
    r.check("term_growth_hump_at_ten", 0.0, || {
        // number of violated conditions
        let z = real(10.0);
        let mags = (1..=60)
            .map(|n| series_term(z, n).map(|t| t.norm()))
            .collect::<Result<Vec<_>>>()?;
        let argmax = mags
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |p| p.0 + 1);
        let mut violations = 0.0;
        if !(4..=5).contains(&argmax) {
            violations += 1.0;
        }
        // strictly decreasing from the peak until the series terminates at n = 10
        for n in argmax..9 {
            if mags[n] >= mags[n - 1] {
                violations += 1.0;
            }
        }
        for n in 10..=60 {
            if term_ratio(z, n).norm() >= 1.0 || mags[n - 1] != 0.0 {
                violations += 1.0;
            }
        }
        Ok(violations)
    });
}

fn hypergeometric_checks(r: &mut Runner) {
    r.check("route_equivalence", 1e-12, || {
        let cfg = EvalConfig::default().with_tol(1e-8).with_reduction(false);
        let mut worst = 0.0f64;
        for re in [0.5, 1.5, 2.5, 3.7, 5.2] {
            for im in [0.0, 1.0] {
                let z = ComplexScalar::new(re, im);
                let a = digamma_via_3f2(z, &cfg)?.value;
                let b = digamma(z, &cfg)?.value;
                worst = worst.max((a - b).norm() / (1.0 + b.norm()));
            }
        }
        Ok(worst)
    });
    r.check("terminating_matches_direct_sum", 1e-14, || {
        let cfg = EvalConfig::default();
        let (a2, a3, b1, b2) = (1.5, 0.7, 2.2, 3.1);
        let poch = |a: f64, n: usize| (0..n).map(|i| a + i as f64).product::<f64>();
        let mut worst = 0.0f64;
        for k in 0..=10usize {
            let a1 = -(k as f64);
            let v = hyp3f2_unit(&Hyp3F2Params::real(a1, a2, a3, b1, b2), &cfg)?
                .value
                .re;
            let direct: f64 = (0..=k)
                .map(|n| {
                    poch(a1, n) * poch(a2, n) * poch(a3, n)
                        / (poch(b1, n) * poch(b2, n) * factorial(n))
                })
                .sum();
            worst = worst.max((v - direct).abs() / direct.abs().max(1.0));
        }
        Ok(worst)
    });
    r.check("parameter_symmetry", 1e-13, || {
        let cfg = EvalConfig::default().with_tol(1e-12);
        let sets = [
            (
                [real(0.3), ComplexScalar::new(1.1, 0.4), real(-2.0)],
                [real(2.5), ComplexScalar::new(3.3, -0.2)],
            ),
            ([real(0.3), real(1.1), real(0.4)], [real(2.5), real(1.8)]),
        ];
        let perms = [
            [0, 1, 2],
            [0, 2, 1],
            [1, 0, 2],
            [1, 2, 0],
            [2, 0, 1],
            [2, 1, 0],
        ];
        let mut worst = 0.0f64;
        for (a, b) in sets {
            let base = hyp3f2_unit(&Hyp3F2Params::new(a[0], a[1], a[2], b[0], b[1]), &cfg)?.value;
            for p in perms {
                for (i, j) in [(0, 1), (1, 0)] {
                    let v = hyp3f2_unit(
                        &Hyp3F2Params::new(a[p[0]], a[p[1]], a[p[2]], b[i], b[j]),
                        &cfg,
                    )?
                    .value;
                    worst = worst.max((v - base).norm() / (1.0 + base.norm()));
                }
            }
        }
        Ok(worst)
    });
}

fn polygamma_checks(r: &mut Runner) {
    r.check("order_zero_is_digamma", 0.0, || {
        let cfg = EvalConfig::default();
        let mut worst = 0.0f64;
        for z in [real(0.5), real(3.0), ComplexScalar::new(12.5, 2.0)] {
            worst = worst.max((polygamma(z, 0, &cfg)?.value - digamma(z, &cfg)?.value).norm());
        }
        Ok(worst)
    });
    r.check("finite_difference_of_digamma", 1e-4, || {
        let cfg = EvalConfig::default().with_tol(1e-13).with_reduction(false);
        let psi = |z: f64| digamma(real(z), &cfg).map(|r| r.value.re);
        let h = 1e-3;
        let mut worst = 0.0f64;
        for z in [1.5, 2.5, 4.0] {
            let (lo, mid, hi) = (psi(z - h)?, psi(z)?, psi(z + h)?);
            let fd1 = (hi - lo) / (2.0 * h);
            let fd2 = (hi - 2.0 * mid + lo) / (h * h);
            worst = worst.max((polygamma(real(z), 1, &cfg)?.value.re - fd1).abs());
            worst = worst.max((polygamma(real(z), 2, &cfg)?.value.re - fd2).abs());
        }
        Ok(worst)
    });
    r.check("shift_recurrence", 1e-4, || {
        let cfg = EvalConfig::default();
        let mut worst = 0.0f64;
        for l in 1..=2usize {
            let sign = if l % 2 == 0 { 1.0 } else { -1.0 };
            for z in [1.0, 1.7, 3.2] {
                let d =
                    polygamma(real(z + 1.0), l, &cfg)?.value - polygamma(real(z), l, &cfg)?.value;
                worst = worst.max((d - sign * factorial(l) / z.powi(l as i32 + 1)).norm());
            }
        }
        Ok(worst)
    });
    r.check("oracle_agreement_grid", 1.0, || {
        // error / max(10 abs_tol, 2 tail_estimate)
        let cfg = EvalConfig::default();
        let mut worst = 0.0f64;
        for (z, l) in [(1.0, 1), (2.0, 1), (1.0, 2), (2.5, 1), (3.7, 2), (5.2, 3)] {
            let res = polygamma(real(z), l, &cfg)?;
            let err = (res.value - reference_polygamma(real(z), l)?).norm();
            worst = worst.max(err / (10.0 * cfg.abs_tol).max(2.0 * res.tail_estimate));
        }
        Ok(worst)
    });
}

fn oracle_checks(r: &mut Runner) {
    r.check("classical_series_vs_reference", 1e-5, || {
        let mut worst = 0.0f64;
        for z in [0.5, 1.0, 2.5, 7.0] {
            worst = worst
                .max((digamma_classical(real(z), 1_000_000)? - reference_digamma(real(z))?).norm());
        }
        Ok(worst)
    });
    r.check("reference_digamma_recurrence", 1e-11, || {
        let mut g = rng(601);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let z = ComplexScalar::new(g.random_range(0.2..20.0), g.random_range(-5.0..5.0));
            let d = reference_digamma(z + 1.0)? - reference_digamma(z)? - z.inv();
            worst = worst.max(d.norm());
        }
        Ok(worst)
    });
    r.check("reference_gamma_recurrence", 1e-11, || {
        let mut g = rng(602);
        let mut worst = 0.0f64;
        for _ in 0..200 {
            let z = ComplexScalar::new(g.random_range(0.2..20.0), g.random_range(-5.0..5.0));
            let g1 = reference_gamma(z + 1.0)?;
            worst = worst.max((g1 - z * reference_gamma(z)?).norm() / g1.norm());
        }
        Ok(worst)
    });
    r.check("reference_trigamma_vs_finite_difference", 1e-6, || {
        let h = 1e-4;
        let mut worst = 0.0f64;
        for z in [
            real(0.7),
            real(1.0),
            real(3.3),
            ComplexScalar::new(2.0, 1.5),
        ] {
            let fd = (reference_digamma(z + h)? - reference_digamma(z - h)?) / (2.0 * h);
            worst = worst.max((fd - reference_polygamma(z, 1)?).norm());
        }
        Ok(worst)
    });
    r.check("known_values_reproduced", 1e-12, || {
        let mut worst = 0.0f64;
        for k in known_values() {
            worst = worst.max((reference_polygamma(k.argument, k.order)? - k.value).norm());
        }
        Ok(worst)
    });
}
