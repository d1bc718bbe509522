//! Record types and the plain/CSV/JSON-lines writers.

use std::io::{self, Write};

use clap::ValueEnum;
use derivgamma_core::ComplexScalar;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Adaptive Pochhammer series (polygamma for order > 0).
    Series,
    /// Signed falling-product partial sum with `--m` terms.
    Eq11,
    /// ₃F₂ at unit argument.
    F32,
    /// Finite-h Beta/Gamma construction with h = `--h0`.
    Limit,
    /// Independent reference implementation.
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Complex {
    pub re: f64,
    pub im: f64,
}

impl From<ComplexScalar> for Complex {
    fn from(z: ComplexScalar) -> Self {
        Complex { re: z.re, im: z.im }
    }
}

/// One evaluation, as emitted by `eval` and `poly`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub method: Method,
    pub z: Complex,
    pub order: usize,
    pub value: Complex,
    pub terms_used: usize,
    pub tail_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_err_vs_oracle: Option<f64>,
}

/// CSV cannot nest, so complex fields are split into columns.
#[derive(Serialize)]
struct FlatRecord {
    method: Method,
    z_re: f64,
    z_im: f64,
    order: usize,
    value_re: f64,
    value_im: f64,
    terms_used: usize,
    tail_estimate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    abs_err_vs_oracle: Option<f64>,
}

impl From<&OutputRecord> for FlatRecord {
    fn from(r: &OutputRecord) -> Self {
        FlatRecord {
            method: r.method,
            z_re: r.z.re,
            z_im: r.z.im,
            order: r.order,
            value_re: r.value.re,
            value_im: r.value.im,
            terms_used: r.terms_used,
            tail_estimate: r.tail_estimate,
            abs_err_vs_oracle: r.abs_err_vs_oracle,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TableRow {
    pub m: usize,
    pub partial_sum_re: f64,
    pub partial_sum_im: f64,
    pub term_mag: f64,
    /// Empty while the terms are still growing.
    pub tail_estimate: Option<f64>,
    pub abs_err_vs_oracle: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LimitRow {
    pub h: f64,
    pub psi_re: f64,
    pub psi_im: f64,
    pub abs_err_vs_oracle: f64,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Series => "series",
            Method::Eq11 => "eq11",
            Method::F32 => "f32",
            Method::Limit => "limit",
            Method::Oracle => "oracle",
        }
    }
}

pub fn fmt_complex(z: Complex) -> String {
    format!("{}{:+}i", z.re, z.im)
}

pub fn write_records(
    out: &mut impl Write,
    format: Format,
    records: &[OutputRecord],
) -> io::Result<()> {
    match format {
        Format::Plain => {
            for r in records {
                write!(
                    out,
                    "{} z={} order={} value={} terms_used={} tail_estimate={:e}",
                    r.method.name(),
                    fmt_complex(r.z),
                    r.order,
                    fmt_complex(r.value),
                    r.terms_used,
                    r.tail_estimate
                )?;
                if let Some(e) = r.abs_err_vs_oracle {
                    write!(out, " abs_err_vs_oracle={e:e}")?;
                }
                writeln!(out)?;
            }
            Ok(())
        }
        Format::Csv => write_csv(out, records.iter().map(FlatRecord::from)),
        Format::Json => write_json(out, records),
    }
}

/// Rows of a sweep. `Plain` falls back to CSV, which is already readable.
pub fn write_rows<T: Serialize>(
    out: &mut impl Write,
    format: Format,
    rows: &[T],
) -> io::Result<()> {
    match format {
        Format::Plain | Format::Csv => write_csv(out, rows),
        Format::Json => write_json(out, rows),
    }
}

pub fn write_csv<T: Serialize>(
    out: &mut impl Write,
    rows: impl IntoIterator<Item = T>,
) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()
}

pub fn write_json<T: Serialize>(
    out: &mut impl Write,
    rows: impl IntoIterator<Item = T>,
) -> io::Result<()> {
    for row in rows {
        serde_json::to_writer(&mut *out, &row)?;
        writeln!(out)?;
    }
    Ok(())
}
