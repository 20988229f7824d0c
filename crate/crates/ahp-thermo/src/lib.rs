//! Thermodynamics of decision strategies over inconsistent judgment matrices.
//!
//! A pairwise-comparison (or market-rate) matrix records how a decision maker
//! prices every criterion against every other. When those judgments are not
//! reciprocal, the deviation behaves exactly like a broker's commission: the
//! log-rate matrix splits into an antisymmetric consistent part plus a
//! symmetric commission part. Charging those commissions on every switch
//! between criteria turns a sequence of choices into an Ising-chain profit
//! Hamiltonian, and the whole apparatus of statistical mechanics applies:
//!
//! - [`market`]: judgment matrices, basket valuation, the commission
//!   decomposition, transitivity deviations, and log returns.
//! - [`strategy`]: pure switching strategies, their indicator and spin
//!   encodings, and the periodic-chain profit Hamiltonian.
//! - [`ensemble`]: exact canonical-ensemble observables (partition function,
//!   expected profit, variance, entropy, temperature) via transfer matrices,
//!   with a brute-force enumeration cross-check.
//! - [`tropical`]: (max, +) matrix algebra giving the clairvoyant maximum
//!   profit and an optimal strategy reconstruction.
//! - [`fisher`]: discrete Fisher information of strategies and probability
//!   vectors, and its transaction-cost correspondence.
//! - [`instance`] / [`report`] / [`cli`]: the JSON instance-file schema,
//!   report types, and the subcommand implementations behind the `ahp-thermo`
//!   binary.
//!
//! Criterion indices are 0-based throughout the library API and 1-based in
//! all user-facing I/O (CLI flags, JSON reports).
//!
//! ```
//! use ahp_thermo::market::{CostMatrix, ReturnSeries};
//! use ahp_thermo::strategy::{profit, PureStrategy};
//! use ahp_thermo::tropical::clairvoyant;
//!
//! let h = ReturnSeries::from_rows(&[vec![1.0, 2.0], vec![3.0, 4.0]]).unwrap();
//! let c = CostMatrix::uniform(2, 0.5);
//! let best = clairvoyant(&h, &c).unwrap();
//! assert_eq!(best.strategy.choices(), &[1, 1]);
//! assert_eq!(best.max_profit, 7.0);
//! assert_eq!(profit(&best.strategy, &h, &c).unwrap(), 7.0);
//! ```

pub mod cli;
pub mod ensemble;
pub mod fisher;
pub mod instance;
pub mod market;
pub mod report;
pub mod strategy;
pub mod tropical;

/// Errors shared by the library modules.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("entry ({row}, {col}) must be a positive finite number, got {value}")]
    NonPositiveEntry { row: usize, col: usize, value: f64 },
    #[error("entry ({row}, {col}) must be finite, got {value}")]
    NonFiniteEntry { row: usize, col: usize, value: f64 },
    #[error("diagonal entry {index} must equal {expected} within 1e-9, got {value}")]
    BadDiagonal {
        index: usize,
        expected: f64,
        value: f64,
    },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("criterion index {index} out of range for {n} criteria")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("a strategy must choose at least one step")]
    EmptyStrategy,
    #[error("invalid probability vector: {0}")]
    InvalidProbabilities(String),
    #[error("enumerating {paths} pure strategies exceeds the cap of {cap}")]
    EnumerationCapExceeded { paths: u128, cap: u64 },
    #[error("{0} required")]
    MissingField(&'static str),
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
