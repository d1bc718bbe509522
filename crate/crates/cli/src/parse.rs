//! Locale-independent parsers for command-line values.

use derivgamma_core::ComplexScalar;

/// Parses `a`, `a+bi`, `a-bi`, `bi`, `i` or `-i`. Exponents are allowed in
/// either part (`1e-3+2.5e1i`).
pub fn parse_complex(s: &str) -> Result<ComplexScalar, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty complex number".into());
    }
    let bad = || format!("cannot parse '{s}' as a complex number (expected a+bi)");
    let Some(body) = t.strip_suffix(['i', 'j']) else {
        return match t.parse::<f64>() {
            Ok(re) if re.is_finite() => Ok(ComplexScalar::new(re, 0.0)),
            _ => Err(bad()),
        };
    };
    // split before the last sign that is not a leading sign or an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| matches!(bytes[k], b'+' | b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        other => other.parse::<f64>().map_err(|_| bad())?,
    };
    let re = re.parse::<f64>().map_err(|_| bad())?;
    if !re.is_finite() || !im.is_finite() {
        return Err(bad());
    }
    Ok(ComplexScalar::new(re, im))
}

/// Truncation orders `m`, in the order requested.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schedule(pub Vec<usize>);

/// Parses a truncation schedule: `a..b` (inclusive), `a,b,c`, or
/// `log:a:b:count` (log-spaced, rounded, duplicates dropped).
pub fn parse_schedule(s: &str) -> Result<Schedule, String> {
    let num = |x: &str| {
        x.trim()
            .parse::<usize>()
            .map_err(|_| format!("'{x}' is not a non-negative integer"))
    };
    let out: Vec<usize> = if let Some(rest) = s.strip_prefix("log:") {
        let parts: Vec<&str> = rest.split(':').collect();
        let [a, b, count] = parts[..] else {
            return Err(format!("log schedule must be log:a:b:count, got '{s}'"));
        };
        let (a, b, count) = (num(a)?, num(b)?, num(count)?);
        if a == 0 || b < a || count < 2 {
            return Err(format!(
                "log schedule needs 1 <= a <= b and count >= 2, got '{s}'"
            ));
        }
        let (la, lb) = ((a as f64).ln(), (b as f64).ln());
        let mut v: Vec<usize> = (0..count)
            .map(|k| {
                (la + (lb - la) * k as f64 / (count - 1) as f64)
                    .exp()
                    .round() as usize
            })
            .collect();
        v.dedup();
        v
    } else if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (num(a)?, num(b.trim_start_matches('='))?);
        if b < a {
            return Err(format!("empty range '{s}'"));
        }
        (a..=b).collect()
    } else {
        s.split(',').map(num).collect::<Result<_, _>>()?
    };
    if out.is_empty() || out.contains(&0) {
        return Err(format!("schedule '{s}' must list truncation orders m >= 1"));
    }
    Ok(Schedule(out))
}
