//! Switching strategies over a finite horizon and their profit.
//!
//! A pure strategy holds exactly one of the N criteria during each of the k
//! intervals. Its profit is the collected log return minus the switching
//! costs, with the horizon closed into a ring: the transition into step 0 is
//! charged from the criterion held at the final step.
//!
//! ```text
//! profit(s) = Σ_t h[s_t][t] − Σ_t c[s_t][s_{t−1}],   s_{−1} := s_{k−1}
//! ```
//!
//! The same functional has an exact spin form obtained by writing each
//! occupation indicator as S + 1/2 with S = ±1/2. The quadratic term couples
//! neighbouring time slices through the cost matrix and the linear cost term
//! averages the two transit directions, which keeps the identity exact for
//! asymmetric cost matrices as well.

use crate::market::{CostMatrix, ReturnSeries};
use crate::{Error, Result};

/// Choice of one criterion per step, 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PureStrategy {
    choices: Vec<usize>,
}

impl PureStrategy {
    pub fn new(choices: Vec<usize>, n: usize) -> Result<Self> {
        if choices.is_empty() {
            return Err(Error::EmptyStrategy);
        }
        for &c in &choices {
            if c >= n {
                return Err(Error::IndexOutOfRange { index: c, n });
            }
        }
        Ok(Self { choices })
    }

    pub fn steps(&self) -> usize {
        self.choices.len()
    }

    pub fn choices(&self) -> &[usize] {
        &self.choices
    }

    /// Criterion held during the step preceding t on the ring.
    pub fn previous(&self, t: usize) -> usize {
        let k = self.choices.len();
        self.choices[(t + k - 1) % k]
    }

    /// Number of steps whose predecessor differs, counted around the ring.
    pub fn switch_count(&self) -> usize {
        (0..self.choices.len())
            .filter(|&t| self.choices[t] != self.previous(t))
            .count()
    }
}

/// Occupation indicators `n[μ][t] ∈ {0, 1}`, exactly one per column.
#[derive(Debug, Clone, PartialEq)]
pub struct IversonField {
    n: usize,
    steps: usize,
    values: Vec<u8>, // row-major, values[mu * steps + t]
}

impl IversonField {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn get(&self, mu: usize, t: usize) -> u8 {
        self.values[mu * self.steps + t]
    }
}

/// Spin variables `S[μ][t] ∈ {−1/2, +1/2}`, the shifted occupation indicators.
#[derive(Debug, Clone, PartialEq)]
pub struct SpinField {
    n: usize,
    steps: usize,
    values: Vec<f64>,
}

impl SpinField {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn get(&self, mu: usize, t: usize) -> f64 {
        self.values[mu * self.steps + t]
    }
}

/// Indicator field of a strategy: `n[μ][t] = 1` iff μ is held at step t.
pub fn iverson(s: &PureStrategy, n: usize) -> Result<IversonField> {
    for &c in s.choices() {
        if c >= n {
            return Err(Error::IndexOutOfRange { index: c, n });
        }
    }
    let k = s.steps();
    let mut values = vec![0u8; n * k];
    for (t, &c) in s.choices().iter().enumerate() {
        values[c * k + t] = 1;
    }
    Ok(IversonField {
        n,
        steps: k,
        values,
    })
}

/// Spin field of a strategy: `S[μ][t] = n[μ][t] − 1/2`.
pub fn spins(s: &PureStrategy, n: usize) -> Result<SpinField> {
    let iv = iverson(s, n)?;
    let values = iv.values.iter().map(|&v| v as f64 - 0.5).collect();
    Ok(SpinField {
        n,
        steps: iv.steps,
        values,
    })
}

fn check_shapes(s: &PureStrategy, h: &ReturnSeries, c: &CostMatrix) -> Result<()> {
    if c.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            actual: c.n(),
        });
    }
    if s.steps() != h.steps() {
        return Err(Error::DimensionMismatch {
            expected: h.steps(),
            actual: s.steps(),
        });
    }
    for &choice in s.choices() {
        if choice >= h.n() {
            return Err(Error::IndexOutOfRange {
                index: choice,
                n: h.n(),
            });
        }
    }
    Ok(())
}

/// Profit of a strategy: collected log returns minus ring-closed switching
/// costs.
pub fn profit(s: &PureStrategy, h: &ReturnSeries, c: &CostMatrix) -> Result<f64> {
    check_shapes(s, h, c)?;
    let mut total = 0.0;
    for (t, &mu) in s.choices().iter().enumerate() {
        total += h.get(mu, t);
        total -= c.get(mu, s.previous(t));
    }
    Ok(total)
}

/// Profit evaluated through the spin representation. Agrees with [`profit`]
/// up to rounding for every input, symmetric or not.
pub fn spin_profit(s: &PureStrategy, h: &ReturnSeries, c: &CostMatrix) -> Result<f64> {
    check_shapes(s, h, c)?;
    let n = h.n();
    let k = h.steps();
    let sp = spins(s, n)?;

    let mut linear_return = 0.0;
    let mut sum_h = 0.0;
    for mu in 0..n {
        for t in 0..k {
            linear_return += h.get(mu, t) * sp.get(mu, t);
            sum_h += h.get(mu, t);
        }
    }

    let mut quadratic = 0.0;
    let mut linear_cost = 0.0;
    let mut sum_c = 0.0;
    for mu in 0..n {
        for nu in 0..n {
            let forward = c.get(mu, nu);
            sum_c += forward;
            // both transit directions through μ contribute to its field
            let field = 0.5 * (forward + c.get(nu, mu));
            for t in 0..k {
                let prev = (t + k - 1) % k;
                quadratic += forward * sp.get(nu, prev) * sp.get(mu, t);
                linear_cost += field * sp.get(mu, t);
            }
        }
    }

    Ok(linear_return + 0.5 * sum_h - quadratic - linear_cost - 0.25 * k as f64 * sum_c)
}
