//! The JSON instance file shared by every subcommand.
//!
//! One document carries the criterion names plus whichever blocks the caller
//! has: a judgment matrix, a quotation history, precomputed log returns, an
//! explicit cost matrix. Analyses resolve what they need with a fixed
//! precedence: an explicit `costs` block wins over costs derived from
//! `judgments`, and `log_returns` wins over `quotations`.

use crate::market::{
    cost_matrix, decompose, log_returns, CostMatrix, JudgmentMatrix, QuotationHistory, ReturnSeries,
};
use crate::{Error, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub schema_version: String,
    pub criteria: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub judgments: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotations: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_returns: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub costs: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numeraire: Option<String>,
}

impl InstanceDocument {
    /// Parses and fully validates a document.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: InstanceDocument = serde_json::from_str(text)
            .map_err(|e| Error::InvalidInstance(format!("malformed JSON: {e}")))?;
        doc.validate()?;
        Ok(doc)
    }

    pub fn n(&self) -> usize {
        self.criteria.len()
    }

    /// Checks shapes and invariants of every present block.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(Error::InvalidInstance(format!(
                "unsupported schema_version {:?}, expected {SCHEMA_VERSION:?}",
                self.schema_version
            )));
        }
        let n = self.criteria.len();
        if n == 0 {
            return Err(Error::InvalidInstance(
                "criteria list must not be empty".into(),
            ));
        }
        for (i, name) in self.criteria.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::InvalidInstance(format!("criterion {i} has no name")));
            }
            if self.criteria[..i].contains(name) {
                return Err(Error::InvalidInstance(format!(
                    "duplicate criterion name {name:?}"
                )));
            }
        }
        if let Some(rows) = &self.judgments {
            Self::check_rows("judgments", rows, n)?;
            JudgmentMatrix::from_rows(rows)?;
        }
        if let Some(rows) = &self.quotations {
            Self::check_rows("quotations", rows, n)?;
            QuotationHistory::from_rows(rows)?;
        }
        if let Some(rows) = &self.log_returns {
            Self::check_rows("log_returns", rows, n)?;
            ReturnSeries::from_rows(rows)?;
        }
        if let (Some(q), Some(r)) = (&self.quotations, &self.log_returns) {
            if q[0].len() != r[0].len() + 1 {
                return Err(Error::InvalidInstance(format!(
                    "quotations cover {} steps but log_returns cover {}",
                    q[0].len() - 1,
                    r[0].len()
                )));
            }
        }
        if let Some(rows) = &self.costs {
            Self::check_rows("costs", rows, n)?;
            CostMatrix::from_rows(rows)?;
        }
        Ok(())
    }

    fn check_rows(block: &str, rows: &[Vec<f64>], n: usize) -> Result<()> {
        if rows.len() != n {
            return Err(Error::InvalidInstance(format!(
                "{block} has {} rows for {n} criteria",
                rows.len()
            )));
        }
        Ok(())
    }

    /// The judgment matrix; an error when the block is absent.
    pub fn judgment_matrix(&self) -> Result<JudgmentMatrix> {
        match &self.judgments {
            Some(rows) => JudgmentMatrix::from_rows(rows),
            None => Err(Error::MissingField("judgments")),
        }
    }

    /// Log returns, from the `log_returns` block when present, otherwise
    /// from `quotations`.
    pub fn return_series(&self) -> Result<ReturnSeries> {
        if let Some(rows) = &self.log_returns {
            return ReturnSeries::from_rows(rows);
        }
        if let Some(rows) = &self.quotations {
            return Ok(log_returns(&QuotationHistory::from_rows(rows)?));
        }
        Err(Error::MissingField("log_returns or quotations"))
    }

    /// Transaction costs, from the `costs` block when present, otherwise
    /// derived from the judgment decomposition.
    pub fn resolve_costs(&self) -> Result<CostMatrix> {
        if let Some(rows) = &self.costs {
            return CostMatrix::from_rows(rows);
        }
        if self.judgments.is_some() {
            return Ok(cost_matrix(&decompose(&self.judgment_matrix()?)));
        }
        Err(Error::MissingField("costs or judgments"))
    }
}

/// Deterministic random instance for a seed: zero-mean normal log returns,
/// symmetric nonnegative costs, and a judgment matrix whose decomposition
/// reproduces those costs. Criteria are named c1…cN.
pub fn generate_instance(
    n: usize,
    k: usize,
    seed: u64,
    cost_scale: f64,
    return_scale: f64,
) -> Result<InstanceDocument> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "criterion count must be at least 1".into(),
        ));
    }
    if k == 0 {
        return Err(Error::InvalidArgument(
            "step count must be at least 1".into(),
        ));
    }
    for (name, value) in [("cost-scale", cost_scale), ("return-scale", return_scale)] {
        if !(value.is_finite() && value >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "{name} must be a nonnegative finite number, got {value}"
            )));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let log_return_rows: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            (0..k)
                .map(|_| {
                    let z: f64 = rng.sample(StandardNormal);
                    z * return_scale
                })
                .collect()
        })
        .collect();

    let mut costs = vec![vec![0.0; n]; n];
    // triangle order fixes the RNG stream; the mirror write keeps symmetry
    #[allow(clippy::needless_range_loop)]
    for nu in 0..n {
        for mu in (nu + 1)..n {
            let cost = rng.random::<f64>() * cost_scale;
            costs[nu][mu] = cost;
            costs[mu][nu] = cost;
        }
    }

    // judgments exp(a − cost) with antisymmetric a: decomposing them yields
    // commissions −cost, so judgment-derived costs agree with the block above
    let mut judgments = vec![vec![1.0; n]; n];
    for nu in 0..n {
        for mu in (nu + 1)..n {
            let z: f64 = rng.sample(StandardNormal);
            let a = 0.5 * z;
            judgments[nu][mu] = (a - costs[nu][mu]).exp();
            judgments[mu][nu] = (-a - costs[mu][nu]).exp();
        }
    }

    let doc = InstanceDocument {
        schema_version: SCHEMA_VERSION.to_string(),
        criteria: (1..=n).map(|i| format!("c{i}")).collect(),
        judgments: Some(judgments),
        quotations: None,
        log_returns: Some(log_return_rows),
        costs: Some(costs),
        numeraire: None,
    };
    doc.validate()?;
    Ok(doc)
}
