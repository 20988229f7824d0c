//! (max,+) matrix algebra and the clairvoyant optimum.
//!
//! Replacing (×, +) with (+, max) in the transfer-matrix trace turns the
//! partition function into the best achievable profit: the product
//! `M̃(1) ⊗ … ⊗ M̃(k)` of log-domain step matrices has, on its diagonal, the
//! best profit of every periodic path through a fixed closure state, and the
//! diagonal maximum is the clairvoyant value H₊.
//!
//! A per-closure-state Viterbi sweep with a predecessor table reconstructs a
//! strategy attaining H₊. Every maximum is taken by scanning indices in
//! ascending order and replacing only on strict improvement, so argmax ties
//! resolve to the smallest index and the output is deterministic; the sweep
//! and the matrix product fold additions in the same association, so both
//! report bit-identical values.

use crate::market::{CostMatrix, ReturnSeries};
use crate::strategy::PureStrategy;
use crate::{Error, Result};

/// Stand-in for the tropical −∞ (the additive identity that annihilates ⊗).
/// User data may not come within ten orders of magnitude of it.
pub const NEG_SENTINEL: f64 = -1.0e300;

const SENTINEL_GUARD: f64 = -1.0e290;

fn t_add(a: f64, b: f64) -> f64 {
    if a == NEG_SENTINEL || b == NEG_SENTINEL {
        NEG_SENTINEL
    } else {
        a + b
    }
}

/// Square matrix over the (max,+) semiring.
#[derive(Debug, Clone, PartialEq)]
pub struct TropicalMatrix {
    n: usize,
    entries: Vec<f64>, // row-major, entries[nu * n + mu]
}

impl TropicalMatrix {
    pub fn new(n: usize, entries: Vec<f64>) -> Result<Self> {
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
                let v = entries[nu * n + mu];
                if v == NEG_SENTINEL {
                    continue;
                }
                if !v.is_finite() {
                    return Err(Error::NonFiniteEntry {
                        row: nu,
                        col: mu,
                        value: v,
                    });
                }
                if v <= SENTINEL_GUARD {
                    return Err(Error::InvalidArgument(format!(
                        "entry ({nu}, {mu}) = {v} encroaches on the tropical sentinel"
                    )));
                }
            }
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

    /// ⊗-identity: zero diagonal, sentinel elsewhere.
    pub fn identity(n: usize) -> Self {
        let mut entries = vec![NEG_SENTINEL; n * n];
        for i in 0..n {
            entries[i * n + i] = 0.0;
        }
        Self { n, entries }
    }

    /// Log-domain step matrix: entry (ν, μ) is the profit gained by moving
    /// from criterion ν to criterion μ at step t, `h[μ][t] − c[μ][ν]`.
    pub fn from_step(h: &ReturnSeries, c: &CostMatrix, t: usize) -> Result<Self> {
        if c.n() != h.n() {
            return Err(Error::DimensionMismatch {
                expected: h.n(),
                actual: c.n(),
            });
        }
        if t >= h.steps() {
            return Err(Error::IndexOutOfRange {
                index: t,
                n: h.steps(),
            });
        }
        let n = h.n();
        let mut entries = vec![0.0; n * n];
        for nu in 0..n {
            for mu in 0..n {
                entries[nu * n + mu] = h.get(mu, t) - c.get(mu, nu);
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
}

/// Semiring product `(a ⊗ b)[ν][θ] = max_μ (a[ν][μ] + b[μ][θ])`.
pub fn tropical_product(a: &TropicalMatrix, b: &TropicalMatrix) -> Result<TropicalMatrix> {
    if a.n != b.n {
        return Err(Error::DimensionMismatch {
            expected: a.n,
            actual: b.n,
        });
    }
    let n = a.n;
    let mut entries = vec![NEG_SENTINEL; n * n];
    for nu in 0..n {
        for theta in 0..n {
            let mut best = NEG_SENTINEL;
            for mid in 0..n {
                let candidate = t_add(a.get(nu, mid), b.get(mid, theta));
                if candidate > best {
                    best = candidate;
                }
            }
            entries[nu * n + theta] = best;
        }
    }
    Ok(TropicalMatrix { n, entries })
}

fn step_product(h: &ReturnSeries, c: &CostMatrix) -> Result<TropicalMatrix> {
    let mut product = TropicalMatrix::from_step(h, c, 0)?;
    for t in 1..h.steps() {
        product = tropical_product(&product, &TropicalMatrix::from_step(h, c, t)?)?;
    }
    Ok(product)
}

/// Best profit over all pure strategies: the diagonal maximum of the full
/// step product, closing the chain periodically.
pub fn max_profit(h: &ReturnSeries, c: &CostMatrix) -> Result<f64> {
    let product = step_product(h, c)?;
    let mut best = NEG_SENTINEL;
    for mu in 0..product.n() {
        let d = product.get(mu, mu);
        if d > best {
            best = d;
        }
    }
    Ok(best)
}

/// Optimal value with a strategy attaining it and the argmax trail that
/// produced the strategy.
#[derive(Debug, Clone, PartialEq)]
pub struct ClairvoyantResult {
    /// H₊, the diagonal maximum of the step product.
    pub max_profit: f64,
    /// A profit-maximizing strategy; smallest-index tie resolution makes it
    /// the unique deterministic representative.
    pub strategy: PureStrategy,
    /// `predecessor_table[t][μ]` is the criterion held at step t−1 on the
    /// best path that holds μ at step t (the closure state for t = 0).
    pub predecessor_table: Vec<Vec<usize>>,
}

/// Finds H₊ and reconstructs an attaining strategy by a Viterbi sweep per
/// periodic closure state.
pub fn clairvoyant(h: &ReturnSeries, c: &CostMatrix) -> Result<ClairvoyantResult> {
    let n = h.n();
    let k = h.steps();
    let steps: Vec<TropicalMatrix> = (0..k)
        .map(|t| TropicalMatrix::from_step(h, c, t))
        .collect::<Result<_>>()?;

    let mut best_value = NEG_SENTINEL;
    let mut best_sigma = 0;
    let mut best_table: Vec<Vec<usize>> = Vec::new();

    for sigma in 0..n {
        let mut table = vec![vec![0usize; n]; k];
        let mut delta: Vec<f64> = (0..n).map(|mu| steps[0].get(sigma, mu)).collect();
        table[0] = vec![sigma; n];
        for (t, step) in steps.iter().enumerate().skip(1) {
            let mut next = vec![NEG_SENTINEL; n];
            for mu in 0..n {
                let mut arg = 0;
                let mut best = NEG_SENTINEL;
                for (nu, &d) in delta.iter().enumerate() {
                    let candidate = t_add(d, step.get(nu, mu));
                    if candidate > best {
                        best = candidate;
                        arg = nu;
                    }
                }
                next[mu] = best;
                table[t][mu] = arg;
            }
            delta = next;
        }
        let value = delta[sigma];
        if value > best_value {
            best_value = value;
            best_sigma = sigma;
            best_table = table;
        }
    }

    let mut choices = vec![0usize; k];
    choices[k - 1] = best_sigma;
    for t in (1..k).rev() {
        choices[t - 1] = best_table[t][choices[t]];
    }
    let strategy = PureStrategy::new(choices, n)?;
    Ok(ClairvoyantResult {
        max_profit: best_value,
        strategy,
        predecessor_table: best_table,
    })
}
