//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fail.
//!
//! Run with `cargo test -p derivgamma-cli --test acceptance`.

mod common;

use std::f64::consts::PI;
use std::panic;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::{code, column, csv_table, run};
use derivgamma_core::{
    beta_exact, beta_recurrence_residual, beta_series, beta_series_shifted, digamma,
    digamma_eq11_partial, digamma_partial, digamma_via_3f2, gamma_small, hyp3f2_unit,
    log_log_slope, polygamma, psi_via_limit, reference_digamma, series_term, term_ratio,
    ComplexScalar, EvalConfig, Hyp3F2Params, EULER_GAMMA,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const ZETA3: f64 = 1.202_056_903_159_594_3;

fn c(re: f64) -> ComplexScalar {
    ComplexScalar::new(re, 0.0)
}

fn harmonic(n: usize) -> f64 {
    (1..=n).rev().map(|k| 1.0 / k as f64).sum()
}

/// Collects named sub-checks; the criterion passes iff all of them do.
#[derive(Default)]
struct Outcome {
    notes: Vec<String>,
    pass: bool,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            notes: Vec::new(),
            pass: true,
        }
    }

    fn check(&mut self, ok: bool, note: String) {
        self.pass &= ok;
        self.notes.push(if ok {
            note
        } else {
            format!("{note} [violated]")
        });
    }

    /// `value <= bound`, reported as `label=value (<= bound)`.
    fn le(&mut self, label: &str, value: f64, bound: f64) {
        self.check(
            value <= bound,
            format!("{label}={value:.3e} (<= {bound:.0e})"),
        );
    }
}

fn exact_terminating_values() -> Outcome {
    let mut o = Outcome::new();
    let cfg = EvalConfig::default();
    let (mut worst, mut terms_ok) = (0.0f64, true);
    for k in 1..=20usize {
        let r = digamma(c(k as f64), &cfg).unwrap();
        worst = worst.max((r.value - (harmonic(k - 1) - EULER_GAMMA)).norm());
        terms_ok &= r.terms_used == (k - 1).max(1);
    }
    o.le("max abs err", worst, 1e-13);
    o.check(terms_ok, "terms_used = max(z-1,1)".into());
    o
}

fn form_equivalence() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let z = ComplexScalar::new(rng.random_range(0.2..8.0), rng.random_range(-2.0..2.0));
        let m = rng.random_range(1..=100);
        let a = digamma_partial(z, m).unwrap();
        let b = digamma_eq11_partial(z, m).unwrap();
        worst = worst.max((a - b).norm() / (1.0 + a.norm()));
    }
    o.le("max |diff|/(1+|psi_m|)", worst, 1e-12);
    o
}

fn oracle_agreement() -> Outcome {
    let mut o = Outcome::new();
    let cfg = EvalConfig::default()
        .with_tol(1e-8)
        .with_max_terms(1_000_000)
        .with_tail_correction(true);
    let start = Instant::now();
    let mut worst = 0.0f64;
    for re in [0.5, 1.5, 2.5, 3.7, 5.2] {
        for im in [0.0, 1.0] {
            let z = ComplexScalar::new(re, im);
            let r = digamma(z, &cfg).unwrap();
            let err = (r.value - reference_digamma(z).unwrap()).norm();
            worst = worst.max(err / 1e-7f64.max(2.0 * r.tail_estimate));
        }
    }
    let elapsed = start.elapsed();
    o.le("max err/max(1e-7, 2 tail)", worst, 1.0);
    let truth = reference_digamma(c(0.5)).unwrap();
    let raw = (digamma_partial(c(0.5), 1_000_000).unwrap() - truth).norm();
    o.check(
        (5e-4..=5e-3).contains(&raw),
        format!("z=0.5 raw err at m=1e6 {raw:.3e} in [5e-4, 5e-3]"),
    );
    let corrected = (digamma(c(0.5), &cfg).unwrap().value - truth).norm();
    o.le("z=0.5 corrected err", corrected, 1e-4);
    o.check(
        elapsed <= Duration::from_secs(5),
        format!("grid runtime {:.2}s (<= 5s)", elapsed.as_secs_f64()),
    );
    o
}

fn hypergeometric_route() -> Outcome {
    let mut o = Outcome::new();
    let cfg = EvalConfig::default().with_tol(1e-8).with_reduction(false);
    let mut worst = 0.0f64;
    for re in [0.5, 1.5, 2.5, 3.7, 5.2] {
        for im in [0.0, 1.0] {
            let z = ComplexScalar::new(re, im);
            let a = digamma_via_3f2(z, &cfg).unwrap().value;
            let b = digamma(z, &cfg).unwrap().value;
            worst = worst.max((a - b).norm() / (1.0 + b.norm()));
        }
    }
    o.le("route diff/(1+|psi|)", worst, 1e-12);
    let basel_cfg = EvalConfig::default()
        .with_max_terms(1_000_000)
        .with_tail_correction(true);
    let f = hyp3f2_unit(&Hyp3F2Params::real(1.0, 1.0, 1.0, 2.0, 2.0), &basel_cfg).unwrap();
    o.le(
        "|3F2(1,1,1;2,2;1) - pi^2/6|",
        (f.value - PI * PI / 6.0).norm(),
        1e-6,
    );
    o
}

fn limit_construction() -> Outcome {
    let mut o = Outcome::new();
    for z in [1.0, 2.0, 3.3] {
        let truth = reference_digamma(c(z)).unwrap();
        let errs: Vec<(f64, f64)> = (6..=12)
            .map(|k| {
                let h = 2f64.powi(-k);
                (h, (psi_via_limit(c(z), c(h)).unwrap() - truth).norm())
            })
            .collect();
        let pts: Vec<(f64, f64)> = errs.iter().map(|&(h, e)| (h.ln(), e.ln())).collect();
        let order = log_log_slope(&pts);
        o.check(
            (0.8..=1.2).contains(&order),
            format!("z={z} order {order:.3} in [0.8, 1.2]"),
        );
        o.le(&format!("z={z} err at 2^-12"), errs.last().unwrap().1, 5e-4);
    }
    o
}

fn weierstrass_limit() -> Outcome {
    let mut o = Outcome::new();
    let start = Instant::now();
    let small = gamma_small(c(1e-3), 1_000_000).unwrap();
    let one = gamma_small(c(1.0), 1_000_000).unwrap();
    let elapsed = start.elapsed();
    o.le(
        "|Gamma(1e-3) - (1e3 - gamma)|",
        (small - (1e3 - EULER_GAMMA)).norm(),
        5e-3,
    );
    o.le("|Gamma(1) - 1|", (one - 1.0).norm(), 1e-5);
    o.check(
        elapsed <= Duration::from_secs(2),
        format!("runtime {:.2}s (<= 2s)", elapsed.as_secs_f64()),
    );
    o
}

fn beta_expansions() -> Outcome {
    let mut o = Outcome::new();
    let mut worst = 0.0f64;
    for k in 1..=8usize {
        for x in [0.3, 1.7, 4.2] {
            let s = beta_series(c(k as f64), c(x), k).unwrap();
            let e = beta_exact(c(k as f64), c(x)).unwrap();
            worst = worst.max((s - e).norm() / e.norm());
            let s = beta_series_shifted(c(x), c((k - 1) as f64), k).unwrap();
            let e = beta_exact(c(x), c(k as f64)).unwrap();
            worst = worst.max((s - e).norm() / e.norm());
        }
    }
    o.le("terminating rel err", worst, 1e-10);
    o.le(
        "|B-series(0.5,0.5) - pi|",
        (beta_series(c(0.5), c(0.5), 1_000_000).unwrap() - PI).norm(),
        5e-3,
    );
    o.le(
        "|shifted(0.5,0.5) - pi/2|",
        (beta_series_shifted(c(0.5), c(0.5), 1_000_000).unwrap() - PI / 2.0).norm(),
        5e-3,
    );
    o
}

fn beta_identities() -> Outcome {
    let mut o = Outcome::new();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut sample = || loop {
        let w = ComplexScalar::new(rng.random_range(0.2..10.0), rng.random_range(-10.0..10.0));
        if w.norm() <= 10.0 {
            return w;
        }
    };
    let mut worst = 0.0f64;
    for _ in 0..100 {
        let (z, h) = (sample(), sample());
        worst = worst.max(beta_recurrence_residual(z, h).unwrap());
    }
    o.le("max residual", worst, 1e-9);
    o
}

fn polygamma_values() -> Outcome {
    let mut o = Outcome::new();
    let cfg = EvalConfig::default();
    let pg = |z: f64, l: usize| polygamma(c(z), l, &cfg).unwrap().value;
    let pi2_6 = PI * PI / 6.0;
    o.le("|psi1(1) - pi^2/6|", (pg(1.0, 1) - pi2_6).norm(), 1e-5);
    o.le(
        "|psi1(2) - (pi^2/6-1)|",
        (pg(2.0, 1) - (pi2_6 - 1.0)).norm(),
        1e-5,
    );
    o.le(
        "|psi2(1) + 2 zeta(3)|",
        (pg(1.0, 2) + 2.0 * ZETA3).norm(),
        1e-4,
    );
    let h = 1e-4;
    let mut worst = 0.0f64;
    for z in [1.5, 2.5, 4.0] {
        let psi = |x: f64| digamma(c(x), &cfg).unwrap().value;
        let fd = (psi(z + h) - psi(z - h)) / (2.0 * h);
        worst = worst.max((pg(z, 1) - fd).norm());
    }
    o.le("order-1 finite difference", worst, 1e-4);
    o
}

fn recurrence_property() -> Outcome {
    let mut o = Outcome::new();
    let cfg = EvalConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut worst = 0.0f64;
    for i in 0..100 {
        let im = if i % 2 == 0 {
            0.0
        } else {
            rng.random_range(-2.0..2.0)
        };
        let z = ComplexScalar::new(rng.random_range(0.5..6.0), im);
        let d = digamma(z + 1.0, &cfg).unwrap().value - digamma(z, &cfg).unwrap().value - z.inv();
        worst = worst.max(d.norm());
    }
    o.le("max |psi(z+1)-psi(z)-1/z|", worst, 1e-7);
    o
}

fn cancellation_guard() -> Outcome {
    let mut o = Outcome::new();
    let truth = harmonic(29) - EULER_GAMMA;
    let on = digamma(c(30.0), &EvalConfig::default()).unwrap().value;
    let off = digamma(c(30.0), &EvalConfig::default().with_reduction(false))
        .unwrap()
        .value;
    o.le("reduction on err", (on - truth).norm(), 1e-8);
    let err_off = (off - truth).norm();
    o.check(
        err_off > 1e-8,
        format!("reduction off err={err_off:.3e} (> 1e-8)"),
    );
    o
}

fn term_growth() -> Outcome {
    let mut o = Outcome::new();
    let z = c(10.0);
    let mags: Vec<f64> = (1..=200)
        .map(|n| series_term(z, n).unwrap().norm())
        .collect();
    let argmax = (0..mags.len())
        .max_by(|&a, &b| mags[a].total_cmp(&mags[b]))
        .unwrap()
        + 1;
    o.check(argmax < 10, format!("max |t_n| at n={argmax} (< 10)"));
    // the series terminates at n = 10, so the magnitudes there are exactly zero
    let ratios_ok = (10..=200).all(|n| term_ratio(z, n).norm() < 1.0);
    let nonincreasing = mags[9..].windows(2).all(|w| w[1] <= w[0]);
    o.check(
        ratios_ok && nonincreasing,
        "n>=10: |ratio|<1, magnitudes non-increasing".into(),
    );
    let near: Vec<f64> = (10..=200)
        .map(|n| series_term(c(10.5), n).unwrap().norm())
        .collect();
    o.check(
        near.windows(2).all(|w| w[1] < w[0]),
        "z=10.5: strictly decreasing for n>=11".into(),
    );
    let out = run(&["table", "--z", "10", "--m", "1..20"]);
    let (h, rows) = csv_table(&String::from_utf8_lossy(&out.stdout));
    let col = column(&h, &rows, "term_mag");
    let peak = (0..col.len())
        .max_by(|&a, &b| col[a].total_cmp(&col[b]))
        .unwrap()
        + 1;
    let falls = col[9..].windows(2).all(|w| w[1] <= w[0]);
    o.check(
        code(&out) == 0 && peak < 10 && col[0] < col[peak - 1] && falls,
        format!("table: rises to m={peak}, then falls"),
    );
    o
}

fn cli_contract() -> Outcome {
    let mut o = Outcome::new();
    let codes = [
        (code(&run(&["eval", "--z", "1"])), 0),
        (
            code(&run(&[
                "verify",
                "--only",
                "pochhammer",
                "--tol-scale",
                "0",
            ])),
            1,
        ),
        (code(&run(&["eval", "--z", "not-a-number"])), 2),
        (code(&run(&["eval", "--z", "-3"])), 3),
    ];
    o.check(
        codes.iter().all(|(got, want)| got == want),
        format!("exit codes {:?} (want 0,1,2,3)", codes.map(|p| p.0)),
    );
    o.check(code(&run(&["verify"])) == 0, "verify passes".into());
    let mut deterministic = true;
    for args in [
        &[
            "eval",
            "--z",
            "0.5",
            "--z",
            "2+1i",
            "--z",
            "12",
            "--compare",
            "--format",
            "csv",
        ][..],
        &[
            "eval",
            "--z",
            "0.5",
            "--z",
            "2+1i",
            "--z",
            "12",
            "--compare",
            "--format",
            "json",
        ],
        &["table", "--z", "0.5", "--m", "log:1:100000:10"],
        &["limit-demo", "--z", "2", "--format", "json"],
        &["verify", "--only", "digamma", "--format", "csv"],
    ] {
        deterministic &= run(args).stdout == run(args).stdout;
    }
    o.check(deterministic, "CSV/JSON byte-identical across runs".into());
    o
}

fn main() -> ExitCode {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 13] = [
        ("exact terminating values", exact_terminating_values),
        ("form equivalence", form_equivalence),
        ("oracle agreement", oracle_agreement),
        ("3F2 route", hypergeometric_route),
        ("limit construction", limit_construction),
        ("Weierstrass limit", weierstrass_limit),
        ("Beta expansions", beta_expansions),
        ("Beta identities", beta_identities),
        ("polygamma", polygamma_values),
        ("recurrence property", recurrence_property),
        ("cancellation guard", cancellation_guard),
        ("term growth", term_growth),
        ("CLI contract", cli_contract),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(f).unwrap_or_else(|_| Outcome {
            notes: vec!["panicked".into()],
            pass: false,
        });
        if !outcome.pass {
            failed += 1;
        }
        println!(
            "{} {:>2} {}: {}",
            if outcome.pass { "PASS" } else { "FAIL" },
            i + 1,
            name,
            outcome.notes.join("; ")
        );
    }
    println!(
        "acceptance: {} passed, {} failed",
        criteria.len() - failed,
        failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
