//! Discrete Fisher information and switch-counting strategy information.
//!
//! For a pure strategy the per-criterion information counts how often the
//! criterion's occupation indicator toggles around the periodic ring; each
//! switch event toggles exactly two criteria, so the total is twice the
//! switch count and always even. Under a uniform off-diagonal cost matrix
//! this total prices the strategy: half of it times the flat cost is exactly
//! the cost term of the profit.
//!
//! The probability-vector form is the discrete quotient sum
//! `dx⁻¹ Σ (p[μ+1] − p[μ])² / p[μ]`; a zero denominator under a nonzero
//! difference is reported as a typed divergence, not a floating infinity.

use crate::strategy::{iverson, PureStrategy};
use crate::{Error, Result};

/// Per-criterion switch information and its additive total.
#[derive(Debug, Clone, PartialEq)]
pub struct FisherReport {
    /// I_μ: periodic toggle count of criterion μ's indicator row.
    pub per_criterion: Vec<f64>,
    /// I = Σ_μ I_μ; even for every pure strategy.
    pub total: f64,
}

/// Result of the discrete quotient sum: finite, or divergent where a zero
/// probability abuts a nonzero one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DiscreteFisher {
    Finite(f64),
    Divergent,
}

/// Switch information of a strategy over n criteria.
pub fn strategy_fisher(s: &PureStrategy, n: usize) -> Result<FisherReport> {
    let field = iverson(s, n)?;
    let k = field.steps();
    let mut per_criterion = vec![0.0; n];
    for (mu, out) in per_criterion.iter_mut().enumerate() {
        let mut information = 0.0;
        for t in 0..k {
            let here = field.get(mu, t) as f64;
            let next = field.get(mu, (t + 1) % k) as f64;
            if here != next {
                information += (next - here) * (next - here) / (next + here);
            }
        }
        *out = information;
    }
    let total = per_criterion.iter().sum();
    Ok(FisherReport {
        per_criterion,
        total,
    })
}

fn validate_probabilities(p: &[f64]) -> Result<()> {
    if p.is_empty() {
        return Err(Error::InvalidProbabilities(
            "probability vector is empty".into(),
        ));
    }
    for (i, &v) in p.iter().enumerate() {
        if !v.is_finite() || v < 0.0 {
            return Err(Error::InvalidProbabilities(format!(
                "entry {i} is {v}, expected a nonnegative finite value"
            )));
        }
    }
    let sum: f64 = p.iter().sum();
    if (sum - 1.0).abs() > 1e-9 {
        return Err(Error::InvalidProbabilities(format!(
            "entries sum to {sum}, expected 1 within 1e-9"
        )));
    }
    Ok(())
}

fn validate_dx(dx: f64) -> Result<()> {
    if !(dx.is_finite() && dx > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "grid spacing must be a positive finite number, got {dx}"
        )));
    }
    Ok(())
}

/// Discrete Fisher information of a probability vector on a grid with
/// spacing dx. A 0/0 pair contributes nothing; 0 under a nonzero difference
/// diverges.
pub fn discrete_fisher(p: &[f64], dx: f64) -> Result<DiscreteFisher> {
    validate_probabilities(p)?;
    validate_dx(dx)?;
    let mut total = 0.0;
    for pair in p.windows(2) {
        let diff = pair[1] - pair[0];
        if pair[0] == 0.0 {
            if diff != 0.0 {
                return Ok(DiscreteFisher::Divergent);
            }
        } else {
            total += diff * diff / pair[0];
        }
    }
    Ok(DiscreteFisher::Finite(total / dx))
}

/// Shannon entropy `−dx Σ p ln p` with the 0·ln 0 = 0 convention.
pub fn shannon_entropy(p: &[f64], dx: f64) -> Result<f64> {
    validate_probabilities(p)?;
    validate_dx(dx)?;
    let total: f64 = p
        .iter()
        .map(|&v| if v == 0.0 { 0.0 } else { v * v.ln() })
        .sum();
    Ok((-dx * total).max(0.0))
}

/// Switching cost implied by a Fisher report under a uniform off-diagonal
/// cost matrix: `flat_cost · total / 2`, one flat charge per switch event.
pub fn cost_of_information(report: &FisherReport, flat_cost: f64) -> Result<f64> {
    if !flat_cost.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "flat cost must be finite, got {flat_cost}"
        )));
    }
    Ok(flat_cost * report.total / 2.0)
}
