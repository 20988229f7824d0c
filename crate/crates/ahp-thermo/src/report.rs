//! Report types and their serialization.
//!
//! Every floating-point field is written with 17 significant digits in
//! scientific notation, enough to reproduce the exact double on re-parse.
//! Fields that can be undefined (temperature at β = 0, finite differences at
//! scan endpoints) are nullable rather than omitted, so the field set of each
//! report is fixed. Criterion and step indices in reports are 1-based.

use crate::{Error, Result};
use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter, Serializer};
use std::io::{self, Write};

/// Pretty JSON with full-precision floats.
struct FullPrecision<'a> {
    inner: PrettyFormatter<'a>,
}

impl Formatter for FullPrecision<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn begin_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_array(writer)
    }

    fn end_array<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array(writer)
    }

    fn begin_array_value<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_array_value(writer, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_array_value(writer)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object(writer)
    }

    fn end_object<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object(writer)
    }

    fn begin_object_key<W: ?Sized + Write>(
        &mut self,
        writer: &mut W,
        first: bool,
    ) -> io::Result<()> {
        self.inner.begin_object_key(writer, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.begin_object_value(writer)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, writer: &mut W) -> io::Result<()> {
        self.inner.end_object_value(writer)
    }
}

/// Serializes any report (or an instance document) as indented JSON with
/// lossless floats. No trailing newline.
pub fn to_json_pretty<T: Serialize>(value: &T) -> Result<String> {
    let mut out = Vec::new();
    let formatter = FullPrecision {
        inner: PrettyFormatter::new(),
    };
    let mut serializer = Serializer::with_formatter(&mut out, formatter);
    value
        .serialize(&mut serializer)
        .map_err(|e| Error::InvalidArgument(format!("serialization failed: {e}")))?;
    String::from_utf8(out)
        .map_err(|e| Error::InvalidArgument(format!("serialization produced invalid UTF-8: {e}")))
}

/// One judgment triple whose transitivity deviation exceeds the threshold.
/// Indices are 1-based.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleDeviation {
    pub nu: usize,
    pub rho: usize,
    pub mu: usize,
    pub deviation: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecomposeReport {
    pub schema_version: String,
    pub criteria: Vec<String>,
    pub skew: Vec<Vec<f64>>,
    pub commission: Vec<Vec<f64>>,
    pub costs: Vec<Vec<f64>>,
    pub priorities: Vec<f64>,
    pub deviation_threshold: f64,
    pub intransitive_triples: Vec<TripleDeviation>,
}

/// Per-step profit attribution: the return collected at the held criterion
/// minus the cost of the transition that reached it. 1-based step and
/// criterion numbers.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StepBreakdown {
    pub step: usize,
    pub criterion: usize,
    pub previous: usize,
    pub log_return: f64,
    pub switch_cost: f64,
    pub net: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProfitReport {
    pub schema_version: String,
    pub criteria: Vec<String>,
    pub strategy: Vec<usize>,
    pub profit: f64,
    pub spin_profit: f64,
    pub spin_consistent: bool,
    pub steps: Vec<StepBreakdown>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BruteForceCheck {
    pub log_z: f64,
    pub relative_gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub schema_version: String,
    pub criteria: Vec<String>,
    pub beta: f64,
    pub log_z: f64,
    pub expected_profit: f64,
    pub variance: f64,
    pub entropy: f64,
    /// 1/β; null at β = 0.
    pub temperature: Option<f64>,
    /// Relative residual of T·ln Z + E(H) = T·S; null at β = 0.
    pub identity_residual: Option<f64>,
    /// Present when the enumeration cross-check was requested.
    pub brute_force: Option<BruteForceCheck>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OptimizeReport {
    pub schema_version: String,
    pub criteria: Vec<String>,
    pub max_profit: f64,
    pub strategy: Vec<usize>,
    pub steps: Vec<StepBreakdown>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FisherInformationReport {
    pub schema_version: String,
    pub criteria: Vec<String>,
    pub strategy: Vec<usize>,
    pub per_criterion: Vec<f64>,
    pub total: f64,
    pub switch_count: usize,
    /// The shared off-diagonal cost when the resolved cost matrix is
    /// uniform; null otherwise or when no costs are resolvable.
    pub uniform_cost: Option<f64>,
    /// uniform_cost · total / 2, the switching cost the strategy pays.
    pub cost_of_information: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanRow {
    pub beta: f64,
    pub log_z: f64,
    pub expected_profit: f64,
    pub variance: f64,
    pub entropy: f64,
    /// 1/β; null at β = 0 (written as `inf` in CSV).
    pub temperature: Option<f64>,
    /// Centered finite difference ΔE(H)/ΔS across the two neighbours; null
    /// at the grid ends and wherever ΔS vanishes.
    pub de_ds: Option<f64>,
    /// −T·ln Z, the β → −∞ probe that converges to the clairvoyant profit;
    /// null at β = 0.
    pub minus_t_log_z: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub schema_version: String,
    pub criteria: Vec<String>,
    pub rows: Vec<ScanRow>,
}

fn csv_cell(value: Option<f64>, undefined: &str) -> String {
    match value {
        Some(v) => format!("{v:.16e}"),
        None => undefined.to_string(),
    }
}

/// CSV rendering of a scan: header row, one data row per β, '.' decimal
/// separator, `inf` for the β = 0 temperature, empty cells for undefined
/// finite differences.
pub fn scan_to_csv(report: &ScanReport) -> String {
    let mut out = String::from(
        "beta,log_z,expected_profit,variance,entropy,temperature,de_ds,minus_t_log_z\n",
    );
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            csv_cell(Some(row.beta), ""),
            csv_cell(Some(row.log_z), ""),
            csv_cell(Some(row.expected_profit), ""),
            csv_cell(Some(row.variance), ""),
            csv_cell(Some(row.entropy), ""),
            csv_cell(row.temperature, "inf"),
            csv_cell(row.de_ds, ""),
            csv_cell(row.minus_t_log_z, ""),
        ));
    }
    out
}
