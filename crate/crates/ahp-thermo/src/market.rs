//! Judgment matrices, baskets, and the commission decomposition.
//!
//! A judgment matrix `u` holds the relative price of one unit of criterion μ
//! expressed in units of criterion ν. Perfectly consistent judgments are
//! reciprocal (`u[μ][ν] = 1 / u[ν][μ]`) and transitive
//! (`u[ν][ρ] · u[ρ][μ] = u[ν][μ]`). Real judgments are neither, and the gap
//! carries information: the log-rate matrix splits uniquely into
//!
//! ```text
//! ln u[ν][μ] = a[ν][μ] + ε[ν][μ]
//! ```
//!
//! with `a` antisymmetric (the consistent part) and `ε` symmetric (the
//! commission, half the round-trip log loss of converting ν → μ → ν). A
//! genuine bid/ask spread gives ε < 0, so the cost matrix consumed by the
//! profit Hamiltonian is the negation of ε.

use crate::{Error, Result};

const DIAGONAL_TOLERANCE: f64 = 1e-9;

fn validate_positive(row: usize, col: usize, value: f64) -> Result<()> {
    if !(value.is_finite() && value > 0.0) {
        return Err(Error::NonPositiveEntry { row, col, value });
    }
    Ok(())
}

/// N×N positive matrix of pairwise rates: entry (ν, μ) prices one unit of
/// criterion μ in units of criterion ν. Diagonal entries are validated to 1
/// within 1e-9 and then snapped to exactly 1.
#[derive(Debug, Clone, PartialEq)]
pub struct JudgmentMatrix {
    n: usize,
    entries: Vec<f64>, // row-major, entries[nu * n + mu]
}

impl JudgmentMatrix {
    pub fn new(n: usize, mut entries: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix must be at least 1×1".into()));
        }
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: entries.len(),
            });
        }
        for nu in 0..n {
            for mu in 0..n {
                validate_positive(nu, mu, entries[nu * n + mu])?;
            }
        }
        for nu in 0..n {
            let d = entries[nu * n + nu];
            if (d - 1.0).abs() > DIAGONAL_TOLERANCE {
                return Err(Error::BadDiagonal {
                    index: nu,
                    expected: 1.0,
                    value: d,
                });
            }
            entries[nu * n + nu] = 1.0;
        }
        Ok(Self { n, entries })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        Self::new(n, rows.concat())
    }

    /// Builds the fully consistent matrix `u[ν][μ] = w[ν] / w[μ]` from a
    /// positive weight vector.
    pub fn consistent_from_weights(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        for (i, &w) in weights.iter().enumerate() {
            validate_positive(i, i, w)?;
        }
        let mut entries = vec![0.0; n * n];
        for nu in 0..n {
            for mu in 0..n {
                entries[nu * n + mu] = weights[nu] / weights[mu];
            }
        }
        Self::new(n, entries)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, nu: usize, mu: usize) -> f64 {
        self.entries[nu * self.n + mu]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|nu| self.entries[nu * self.n..(nu + 1) * self.n].to_vec())
            .collect()
    }

    fn check_index(&self, index: usize) -> Result<()> {
        if index >= self.n {
            return Err(Error::IndexOutOfRange { index, n: self.n });
        }
        Ok(())
    }
}

/// A bundle of goods/criteria; coordinates may be negative (obligations).
#[derive(Debug, Clone, PartialEq)]
pub struct Basket {
    pub coordinates: Vec<f64>,
}

impl Basket {
    pub fn new(coordinates: Vec<f64>) -> Self {
        Self { coordinates }
    }
}

/// Split of the log-rate matrix into an antisymmetric consistent part and a
/// symmetric commission part, `ln u = skew + commission` entrywise.
#[derive(Debug, Clone, PartialEq)]
pub struct CommissionDecomposition {
    n: usize,
    skew: Vec<f64>,
    commission: Vec<f64>,
}

impl CommissionDecomposition {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Consistent log-rate part, `(ln u[ν][μ] − ln u[μ][ν]) / 2`.
    pub fn skew(&self, nu: usize, mu: usize) -> f64 {
        self.skew[nu * self.n + mu]
    }

    /// Commission, `(ln u[ν][μ] + ln u[μ][ν]) / 2`; negative for a genuine
    /// spread, zero iff the pair is reciprocal.
    pub fn commission(&self, nu: usize, mu: usize) -> f64 {
        self.commission[nu * self.n + mu]
    }

    pub fn skew_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|nu| self.skew[nu * self.n..(nu + 1) * self.n].to_vec())
            .collect()
    }

    pub fn commission_rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|nu| self.commission[nu * self.n..(nu + 1) * self.n].to_vec())
            .collect()
    }

    /// Rebuilds the judgment matrix as `exp(skew + commission)`.
    pub fn reconstruct(&self) -> JudgmentMatrix {
        let n = self.n;
        let entries = (0..n * n)
            .map(|i| (self.skew[i] + self.commission[i]).exp())
            .collect();
        JudgmentMatrix::new(n, entries).expect("reconstruction of a valid decomposition")
    }
}

/// Relative prices of the N criteria in units of a fixed numéraire, sampled
/// at times t = 0…k (so k+1 columns).
#[derive(Debug, Clone, PartialEq)]
pub struct QuotationHistory {
    n: usize,
    steps: usize,
    quotes: Vec<f64>, // row-major, quotes[mu * (steps + 1) + t]
}

impl QuotationHistory {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "quotation history needs at least one criterion".into(),
            ));
        }
        let cols = rows[0].len();
        if cols < 2 {
            return Err(Error::InvalidArgument(
                "quotation history needs at least two time points".into(),
            ));
        }
        for (mu, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch {
                    expected: cols,
                    actual: row.len(),
                });
            }
            for (t, &q) in row.iter().enumerate() {
                validate_positive(mu, t, q)?;
            }
        }
        Ok(Self {
            n,
            steps: cols - 1,
            quotes: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    /// Quote of criterion μ at time t (t = 0…k).
    pub fn quote(&self, mu: usize, t: usize) -> f64 {
        self.quotes[mu * (self.steps + 1) + t]
    }
}

/// Logarithmic rates of return `h[μ][t] = ln(quote[μ][t] / quote[μ][t−1])`
/// for t = 1…k, stored as an N×k matrix indexed by 0-based step.
#[derive(Debug, Clone, PartialEq)]
pub struct ReturnSeries {
    n: usize,
    steps: usize,
    h: Vec<f64>, // row-major, h[mu * steps + t]
}

impl ReturnSeries {
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::InvalidArgument(
                "return series needs at least one criterion".into(),
            ));
        }
        let steps = rows[0].len();
        if steps == 0 {
            return Err(Error::InvalidArgument(
                "return series needs at least one step".into(),
            ));
        }
        for (mu, row) in rows.iter().enumerate() {
            if row.len() != steps {
                return Err(Error::DimensionMismatch {
                    expected: steps,
                    actual: row.len(),
                });
            }
            for (t, &v) in row.iter().enumerate() {
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry {
                        row: mu,
                        col: t,
                        value: v,
                    });
                }
            }
        }
        Ok(Self {
            n,
            steps,
            h: rows.concat(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn get(&self, mu: usize, t: usize) -> f64 {
        self.h[mu * self.steps + t]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|mu| self.h[mu * self.steps..(mu + 1) * self.steps].to_vec())
            .collect()
    }
}

/// Transaction costs as consumed by the profit Hamiltonian: entry (μ, ν) is
/// charged when converting the ν-th criterion (held at t−1) into the μ-th
/// (held at t). Zero diagonal; negative entries are legal (round-trip gains).
#[derive(Debug, Clone, PartialEq)]
pub struct CostMatrix {
    n: usize,
    costs: Vec<f64>, // row-major, costs[mu * n + nu]
}

impl CostMatrix {
    pub fn new(n: usize, mut costs: Vec<f64>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("matrix must be at least 1×1".into()));
        }
        if costs.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                actual: costs.len(),
            });
        }
        for mu in 0..n {
            for nu in 0..n {
                let v = costs[mu * n + nu];
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry {
                        row: mu,
                        col: nu,
                        value: v,
                    });
                }
            }
        }
        for mu in 0..n {
            let d = costs[mu * n + mu];
            if d.abs() > DIAGONAL_TOLERANCE {
                return Err(Error::BadDiagonal {
                    index: mu,
                    expected: 0.0,
                    value: d,
                });
            }
            costs[mu * n + mu] = 0.0;
        }
        Ok(Self { n, costs })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let n = rows.len();
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    actual: row.len(),
                });
            }
        }
        Self::new(n, rows.concat())
    }

    pub fn zeros(n: usize) -> Self {
        Self {
            n,
            costs: vec![0.0; n * n],
        }
    }

    /// Same cost for every distinct pair, zero diagonal.
    pub fn uniform(n: usize, flat_cost: f64) -> Self {
        let mut costs = vec![flat_cost; n * n];
        for mu in 0..n {
            costs[mu * n + mu] = 0.0;
        }
        Self { n, costs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Cost of the transition ν (held at t−1) → μ (held at t).
    pub fn get(&self, mu: usize, nu: usize) -> f64 {
        self.costs[mu * self.n + nu]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.n)
            .map(|mu| self.costs[mu * self.n..(mu + 1) * self.n].to_vec())
            .collect()
    }

    /// True when every off-diagonal entry is the same value; returns it.
    pub fn uniform_off_diagonal(&self) -> Option<f64> {
        if self.n == 1 {
            return Some(0.0);
        }
        let first = self.costs[1]; // entry (0, 1)
        for mu in 0..self.n {
            for nu in 0..self.n {
                if mu != nu && self.costs[mu * self.n + nu] != first {
                    return None;
                }
            }
        }
        Some(first)
    }
}

/// Commission implied by a bid/ask pair: `(ln bid − ln ask) / 2`, the
/// expected log rate when both directions of the exchange are equally likely.
/// Negative for a genuine spread (bid < ask).
pub fn commission_from_bid_ask(bid: f64, ask: f64) -> Result<f64> {
    if !(bid.is_finite() && bid > 0.0) {
        return Err(Error::NonPositiveEntry {
            row: 0,
            col: 0,
            value: bid,
        });
    }
    if !(ask.is_finite() && ask > 0.0) {
        return Err(Error::NonPositiveEntry {
            row: 0,
            col: 1,
            value: ask,
        });
    }
    Ok((bid.ln() - ask.ln()) / 2.0)
}

/// Splits the log-rate matrix into its antisymmetric consistent part and
/// symmetric commission part.
///
/// The commission is computed as `ln(u[ν][μ] · u[μ][ν]) / 2` so that exactly
/// reciprocal pairs (whose product is exactly 1) produce an exactly zero
/// commission. Both halves are mirrored from the upper triangle, making
/// antisymmetry and symmetry hold bit-for-bit.
pub fn decompose(u: &JudgmentMatrix) -> CommissionDecomposition {
    let n = u.n();
    let mut skew = vec![0.0; n * n];
    let mut commission = vec![0.0; n * n];
    for nu in 0..n {
        for mu in (nu + 1)..n {
            let up = u.get(nu, mu);
            let down = u.get(mu, nu);
            let a = (up.ln() - down.ln()) / 2.0;
            let eps = (up * down).ln() / 2.0;
            skew[nu * n + mu] = a;
            skew[mu * n + nu] = -a;
            commission[nu * n + mu] = eps;
            commission[mu * n + nu] = eps;
        }
    }
    CommissionDecomposition {
        n,
        skew,
        commission,
    }
}

/// Cost matrix for the profit Hamiltonian: the negated commission, so a
/// genuine spread becomes a positive switching cost. Negative entries
/// (round-trip gains) pass through unchanged.
pub fn cost_matrix(d: &CommissionDecomposition) -> CostMatrix {
    let n = d.n();
    let costs = d.commission.iter().map(|&e| -e).collect::<Vec<_>>();
    let mut costs = costs;
    for mu in 0..n {
        costs[mu * n + mu] = 0.0;
    }
    CostMatrix { n, costs }
}

/// Log deviation of the triple (ν, ρ, μ) from transitivity:
/// `ln(u[ν][ρ] · u[ρ][μ] / u[ν][μ])`, zero iff the triple is consistent.
pub fn transitivity_deviation(u: &JudgmentMatrix, nu: usize, rho: usize, mu: usize) -> Result<f64> {
    u.check_index(nu)?;
    u.check_index(rho)?;
    u.check_index(mu)?;
    Ok((u.get(nu, rho) * u.get(rho, mu) / u.get(nu, mu)).ln())
}

/// Log returns of every criterion over each interval [t−1, t].
pub fn log_returns(q: &QuotationHistory) -> ReturnSeries {
    let n = q.n();
    let k = q.steps();
    let mut h = vec![0.0; n * k];
    for mu in 0..n {
        for t in 0..k {
            h[mu * k + t] = (q.quote(mu, t + 1) / q.quote(mu, t)).ln();
        }
    }
    ReturnSeries { n, steps: k, h }
}

/// Value of the basket in units of criterion ν: `Σ_μ u[ν][μ] · p[μ]`.
pub fn value_basket(u: &JudgmentMatrix, p: &Basket, nu: usize) -> Result<f64> {
    u.check_index(nu)?;
    if p.coordinates.len() != u.n() {
        return Err(Error::DimensionMismatch {
            expected: u.n(),
            actual: p.coordinates.len(),
        });
    }
    Ok(p.coordinates
        .iter()
        .enumerate()
        .map(|(mu, &pm)| u.get(nu, mu) * pm)
        .sum())
}

/// Geometric-mean priority weights, normalized to sum 1. Recovers the weight
/// vector exactly (up to rounding) when the matrix is consistent.
pub fn priority_vector(u: &JudgmentMatrix) -> Vec<f64> {
    let n = u.n();
    let mut w: Vec<f64> = (0..n)
        .map(|nu| {
            let mean_log = (0..n).map(|mu| u.get(nu, mu).ln()).sum::<f64>() / n as f64;
            mean_log.exp()
        })
        .collect();
    let total: f64 = w.iter().sum();
    for v in &mut w {
        *v /= total;
    }
    w
}
