//! Exact Gibbs-ensemble thermodynamics over the strategy space.
//!
//! The ensemble weights every pure strategy by `exp(−β · profit)`. The
//! partition function is the trace of a product of k transfer matrices, one
//! per time step, whose (ν, μ) entry carries the return collected at the
//! destination criterion μ and the cost of the transition ν → μ:
//!
//! ```text
//! M(t)[ν][μ] = exp(−β (h[μ][t] − c[μ][ν])),   Z = Tr Π_t M(t)
//! ```
//!
//! Expanding the trace over index paths reproduces `Σ_s exp(−β profit(s))`
//! exactly, so the N×k enumeration collapses to k matrix products.
//!
//! Every matrix entry is carried as a `(value, ∂/∂β, ∂²/∂β²)` triple, so
//! `E(H) = −∂ ln Z/∂β` and `Var(H) = ∂² ln Z/∂β²` come out of the same
//! product with no finite differencing. The largest entry of each factor and
//! of each running product is divided out into a log accumulator, which keeps
//! the arithmetic in range for any finite β.

use crate::market::{CostMatrix, ReturnSeries};
use crate::strategy::{profit, PureStrategy};
use crate::{Error, Result};
use rayon::prelude::*;

/// Largest pure-strategy count `brute_force_partition` will enumerate.
pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

const CHUNK: u64 = 65_536;

/// One factor of the trace product, stored as `exp(log_scale)` times a
/// matrix whose largest entry is 1. Row ν is the previous choice, column μ
/// the current one.
#[derive(Debug, Clone, PartialEq)]
pub struct TransferMatrix {
    t: usize,
    n: usize,
    scaled: Vec<f64>, // row-major, scaled[nu * n + mu], max entry 1
    log_scale: f64,
}

impl TransferMatrix {
    pub fn t(&self) -> usize {
        self.t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn log_scale(&self) -> f64 {
        self.log_scale
    }

    /// Entry divided by `exp(log_scale)`; always in (0, 1].
    pub fn scaled(&self, nu: usize, mu: usize) -> f64 {
        self.scaled[nu * self.n + mu]
    }

    /// Logarithm of the true entry.
    pub fn log_entry(&self, nu: usize, mu: usize) -> f64 {
        self.log_scale + self.scaled(nu, mu).ln()
    }

    /// True entry value; may overflow to infinity for extreme β, use
    /// [`TransferMatrix::log_entry`] in that regime.
    pub fn entry(&self, nu: usize, mu: usize) -> f64 {
        self.log_entry(nu, mu).exp()
    }
}

/// Thermodynamic summary of the ensemble at one inverse temperature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleObservables {
    pub beta: f64,
    pub log_z: f64,
    /// Ensemble average E(H) of the profit.
    pub expected_profit: f64,
    /// Ensemble variance Var(H) of the profit.
    pub variance: f64,
    /// Boltzmann-Shannon entropy S = ln Z + β E(H).
    pub entropy: f64,
    /// T = 1/β; positive infinity marks the β = 0 ensemble.
    pub temperature: f64,
}

impl EnsembleObservables {
    /// Relative residual of T·ln Z + E(H) = T·S; `None` at β = 0 where the
    /// temperature is infinite.
    pub fn identity_residual(&self) -> Option<f64> {
        if self.beta == 0.0 {
            return None;
        }
        let t = self.temperature;
        let lhs = t * self.log_z + self.expected_profit;
        let rhs = t * self.entropy;
        let scale = lhs.abs().max(rhs.abs()).max(1.0);
        Some((lhs - rhs).abs() / scale)
    }
}

/// Value of an entry together with its first two derivatives in β.
#[derive(Debug, Clone, Copy, PartialEq)]
struct Jet {
    v: f64,
    d1: f64,
    d2: f64,
}

impl Jet {
    const ZERO: Jet = Jet {
        v: 0.0,
        d1: 0.0,
        d2: 0.0,
    };

    fn mul_add(self, other: Jet, acc: Jet) -> Jet {
        Jet {
            v: acc.v + self.v * other.v,
            d1: acc.d1 + self.d1 * other.v + self.v * other.d1,
            d2: acc.d2 + self.d2 * other.v + 2.0 * self.d1 * other.d1 + self.v * other.d2,
        }
    }

    fn scale(self, factor: f64) -> Jet {
        Jet {
            v: self.v * factor,
            d1: self.d1 * factor,
            d2: self.d2 * factor,
        }
    }
}

fn check_pair(h: &ReturnSeries, c: &CostMatrix) -> Result<()> {
    if c.n() != h.n() {
        return Err(Error::DimensionMismatch {
            expected: h.n(),
            actual: c.n(),
        });
    }
    Ok(())
}

fn check_beta(beta: f64) -> Result<()> {
    if !beta.is_finite() {
        return Err(Error::InvalidArgument(format!(
            "inverse temperature must be finite, got {beta}"
        )));
    }
    Ok(())
}

/// Exponent of the (ν, μ) entry at step t, before multiplication by −β.
fn transition_gain(h: &ReturnSeries, c: &CostMatrix, t: usize, nu: usize, mu: usize) -> f64 {
    h.get(mu, t) - c.get(mu, nu)
}

/// Builds one transfer matrix with its largest entry factored out.
pub fn transfer_matrix(
    t: usize,
    beta: f64,
    h: &ReturnSeries,
    c: &CostMatrix,
) -> Result<TransferMatrix> {
    check_pair(h, c)?;
    check_beta(beta)?;
    if t >= h.steps() {
        return Err(Error::IndexOutOfRange {
            index: t,
            n: h.steps(),
        });
    }
    let n = h.n();
    let mut exponents = vec![0.0; n * n];
    let mut m = f64::NEG_INFINITY;
    for nu in 0..n {
        for mu in 0..n {
            let x = -beta * transition_gain(h, c, t, nu, mu);
            exponents[nu * n + mu] = x;
            m = m.max(x);
        }
    }
    let scaled = exponents.iter().map(|&x| (x - m).exp()).collect();
    Ok(TransferMatrix {
        t,
        n,
        scaled,
        log_scale: m,
    })
}

/// Jet matrix for step t with the maximum exponent factored into the
/// returned log scale. The factored constant drops out of every ln Z
/// derivative, so the jets carry only the scaled entries.
fn jet_transfer(h: &ReturnSeries, c: &CostMatrix, beta: f64, t: usize) -> (Vec<Jet>, f64) {
    let n = h.n();
    let mut gains = vec![0.0; n * n];
    let mut m = f64::NEG_INFINITY;
    for nu in 0..n {
        for mu in 0..n {
            let g = transition_gain(h, c, t, nu, mu);
            gains[nu * n + mu] = g;
            m = m.max(-beta * g);
        }
    }
    let jets = gains
        .iter()
        .map(|&g| {
            let e = (-beta * g - m).exp();
            Jet {
                v: e,
                d1: -g * e,
                d2: g * g * e,
            }
        })
        .collect();
    (jets, m)
}

fn jet_matmul(a: &[Jet], b: &[Jet], n: usize) -> Vec<Jet> {
    let mut out = vec![Jet::ZERO; n * n];
    for nu in 0..n {
        for mid in 0..n {
            let left = a[nu * n + mid];
            for mu in 0..n {
                out[nu * n + mu] = left.mul_add(b[mid * n + mu], out[nu * n + mu]);
            }
        }
    }
    out
}

/// Divides the largest value component out of the product, returning its log.
fn renormalize(m: &mut [Jet]) -> f64 {
    let peak = m.iter().map(|j| j.v).fold(0.0f64, f64::max);
    if peak > 0.0 && peak.is_finite() {
        let inv = 1.0 / peak;
        for j in m.iter_mut() {
            *j = j.scale(inv);
        }
        peak.ln()
    } else {
        0.0
    }
}

/// Trace of the full transfer product as a jet, plus the accumulated log
/// scale, so that ln Z = log_scale + ln(trace.v).
fn trace_product(h: &ReturnSeries, c: &CostMatrix, beta: f64) -> (Jet, f64) {
    let n = h.n();
    let (mut product, mut log_scale) = jet_transfer(h, c, beta, 0);
    for t in 1..h.steps() {
        let (step, step_scale) = jet_transfer(h, c, beta, t);
        product = jet_matmul(&product, &step, n);
        log_scale += step_scale;
        log_scale += renormalize(&mut product);
    }
    let mut trace = Jet::ZERO;
    for nu in 0..n {
        let d = product[nu * n + nu];
        trace.v += d.v;
        trace.d1 += d.d1;
        trace.d2 += d.d2;
    }
    (trace, log_scale)
}

/// ln Z via the transfer-matrix trace; exact up to rounding for any finite β.
pub fn partition_function(beta: f64, h: &ReturnSeries, c: &CostMatrix) -> Result<f64> {
    check_pair(h, c)?;
    check_beta(beta)?;
    let (trace, log_scale) = trace_product(h, c, beta);
    Ok(log_scale + trace.v.ln())
}

/// ln Z computed from the symmetrized transfer form, which splits each
/// return between the two time slices it borders:
///
/// ```text
/// M̃(t)[ν][μ] = exp(−β (h[μ][t]/2 + h[ν][t−1]/2 − c[μ][ν]))
/// ```
///
/// Under the periodic boundary each return is counted half on entry and half
/// on exit, so the trace agrees with [`partition_function`]. Kept as an
/// independent cross-check of the destination-weighted form.
pub fn partition_function_symmetrized(beta: f64, h: &ReturnSeries, c: &CostMatrix) -> Result<f64> {
    check_pair(h, c)?;
    check_beta(beta)?;
    let n = h.n();
    let k = h.steps();
    let mut log_scale = 0.0;
    let mut product: Option<Vec<f64>> = None;
    for t in 0..k {
        let prev_t = (t + k - 1) % k;
        let mut exponents = vec![0.0; n * n];
        let mut m = f64::NEG_INFINITY;
        for nu in 0..n {
            for mu in 0..n {
                let field = 0.5 * h.get(mu, t) + 0.5 * h.get(nu, prev_t);
                let x = -beta * (field - c.get(mu, nu));
                exponents[nu * n + mu] = x;
                m = m.max(x);
            }
        }
        let step: Vec<f64> = exponents.iter().map(|&x| (x - m).exp()).collect();
        log_scale += m;
        product = Some(match product {
            None => step,
            Some(p) => {
                let mut out = vec![0.0; n * n];
                for nu in 0..n {
                    for mid in 0..n {
                        let left = p[nu * n + mid];
                        for mu in 0..n {
                            out[nu * n + mu] += left * step[mid * n + mu];
                        }
                    }
                }
                let peak = out.iter().copied().fold(0.0f64, f64::max);
                if peak > 0.0 && peak.is_finite() {
                    for v in &mut out {
                        *v /= peak;
                    }
                    log_scale += peak.ln();
                }
                out
            }
        });
    }
    let p = product.expect("k >= 1 by ReturnSeries invariant");
    let trace: f64 = (0..n).map(|nu| p[nu * n + nu]).sum();
    Ok(log_scale + trace.ln())
}

fn strategy_count(n: usize, k: usize) -> u128 {
    (n as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Running-maximum accumulator for ln Σ exp(x_i).
#[derive(Clone, Copy)]
struct LogSum {
    max: f64,
    sum: f64, // Σ exp(x_i − max)
}

impl LogSum {
    const EMPTY: LogSum = LogSum {
        max: f64::NEG_INFINITY,
        sum: 0.0,
    };

    fn push(&mut self, x: f64) {
        if x <= self.max {
            self.sum += (x - self.max).exp();
        } else {
            self.sum = self.sum * (self.max - x).exp() + 1.0;
            self.max = x;
        }
    }

    fn merge(self, other: LogSum) -> LogSum {
        if other.max <= self.max {
            LogSum {
                max: self.max,
                sum: self.sum + other.sum * (other.max - self.max).exp(),
            }
        } else {
            LogSum {
                max: other.max,
                sum: other.sum + self.sum * (self.max - other.max).exp(),
            }
        }
    }

    fn value(self) -> f64 {
        self.max + self.sum.ln()
    }
}

fn path_profit(index: u64, n: usize, h: &ReturnSeries, c: &CostMatrix) -> f64 {
    let k = h.steps();
    let mut choices = vec![0usize; k];
    let mut rest = index;
    for choice in choices.iter_mut() {
        *choice = (rest % n as u64) as usize;
        rest /= n as u64;
    }
    let mut total = 0.0;
    for (t, &mu) in choices.iter().enumerate() {
        let prev = choices[(t + k - 1) % k];
        total += h.get(mu, t) - c.get(mu, prev);
    }
    total
}

/// ln Σ_s exp(−β profit(s)) by full enumeration, refused above `cap` paths.
///
/// The index space is cut into fixed 65536-strategy chunks; each chunk is
/// reduced sequentially and the chunk results are merged in index order, so
/// the result is bit-identical no matter how many workers participate.
pub fn brute_force_partition_capped(
    beta: f64,
    h: &ReturnSeries,
    c: &CostMatrix,
    cap: u64,
) -> Result<f64> {
    check_pair(h, c)?;
    check_beta(beta)?;
    let paths = strategy_count(h.n(), h.steps());
    if paths > cap as u128 {
        return Err(Error::EnumerationCapExceeded { paths, cap });
    }
    let total = paths as u64;
    let n = h.n();
    let chunk_count = total.div_ceil(CHUNK);
    let chunks: Vec<LogSum> = (0..chunk_count)
        .into_par_iter()
        .map(|chunk| {
            let lo = chunk * CHUNK;
            let hi = (lo + CHUNK).min(total);
            let mut acc = LogSum::EMPTY;
            for index in lo..hi {
                acc.push(-beta * path_profit(index, n, h, c));
            }
            acc
        })
        .collect();
    let merged = chunks.into_iter().fold(LogSum::EMPTY, LogSum::merge);
    Ok(merged.value())
}

/// [`brute_force_partition_capped`] at the default cap.
pub fn brute_force_partition(beta: f64, h: &ReturnSeries, c: &CostMatrix) -> Result<f64> {
    brute_force_partition_capped(beta, h, c, DEFAULT_ENUMERATION_CAP)
}

/// Gibbs probability of one pure strategy, `exp(−β profit(s) − ln Z)`.
pub fn gibbs_weight(s: &PureStrategy, beta: f64, h: &ReturnSeries, c: &CostMatrix) -> Result<f64> {
    let p = profit(s, h, c)?;
    let log_z = partition_function(beta, h, c)?;
    Ok((-beta * p - log_z).exp())
}

fn clamp_tiny_negative(x: f64) -> f64 {
    if x < 0.0 && x > -1e-9 {
        0.0
    } else {
        x
    }
}

/// Full observable set at one β. E(H) and Var(H) come from the first and
/// second β-derivatives of ln Z carried through the transfer product.
pub fn observables(beta: f64, h: &ReturnSeries, c: &CostMatrix) -> Result<EnsembleObservables> {
    check_pair(h, c)?;
    check_beta(beta)?;
    let (trace, log_scale) = trace_product(h, c, beta);
    let log_z = log_scale + trace.v.ln();
    let ratio1 = trace.d1 / trace.v;
    let ratio2 = trace.d2 / trace.v;
    let expected_profit = -ratio1;
    let variance = clamp_tiny_negative(ratio2 - ratio1 * ratio1);
    let entropy = clamp_tiny_negative(log_z + beta * expected_profit);
    let temperature = if beta == 0.0 {
        f64::INFINITY
    } else {
        1.0 / beta
    };
    Ok(EnsembleObservables {
        beta,
        log_z,
        expected_profit,
        variance,
        entropy,
        temperature,
    })
}

/// Observables at every grid point, in grid order. β = 0 is legal and gets
/// the infinite-temperature sentinel.
pub fn temperature_scan(
    beta_grid: &[f64],
    h: &ReturnSeries,
    c: &CostMatrix,
) -> Result<Vec<EnsembleObservables>> {
    beta_grid
        .iter()
        .map(|&beta| observables(beta, h, c))
        .collect()
}
