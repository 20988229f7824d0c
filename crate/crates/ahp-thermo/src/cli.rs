//! Subcommand implementations behind the `ahp-thermo` binary.
//!
//! Every analysis reads one JSON instance file (`--input`), writes one JSON
//! report to standard output or atomically to `--output`, and uses 1-based
//! criterion indices in both directions. Exit codes: 0 success, 2 malformed
//! input or arguments, 3 enumeration-cap refusal.

use crate::ensemble::{brute_force_partition, observables, temperature_scan};
use crate::fisher::{cost_of_information, strategy_fisher};
use crate::instance::{generate_instance, InstanceDocument, SCHEMA_VERSION};
use crate::market::{
    cost_matrix, decompose, priority_vector, transitivity_deviation, CostMatrix, ReturnSeries,
};
use crate::report::{
    scan_to_csv, to_json_pretty, BruteForceCheck, DecomposeReport, EnsembleReport,
    FisherInformationReport, OptimizeReport, ProfitReport, ScanReport, ScanRow, StepBreakdown,
    TripleDeviation,
};
use crate::strategy::{profit, spin_profit, PureStrategy};
use crate::tropical::clairvoyant;
use crate::{Error, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Transitivity deviations smaller than this are treated as arithmetic noise
/// and left out of decompose reports.
const DEVIATION_THRESHOLD: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(
    name = "ahp-thermo",
    version,
    about = "Thermodynamics of switching strategies under inconsistent pairwise judgments"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Split judgments into consistent rates, commissions, and costs
    Decompose(DecomposeArgs),
    /// Evaluate one switching strategy's profit step by step
    Profit(ProfitArgs),
    /// Exact ensemble observables at one inverse temperature
    Ensemble(EnsembleArgs),
    /// Find the clairvoyant maximum-profit strategy
    Optimize(OptimizeArgs),
    /// Switch-counting Fisher information of a strategy
    Fisher(FisherArgs),
    /// Observables over a grid of inverse temperatures
    Scan(ScanArgs),
    /// Emit a deterministic random instance file
    Generate(GenerateArgs),
}

#[derive(Debug, Args)]
pub struct InputArg {
    /// Instance file (JSON)
    #[arg(long, value_name = "PATH")]
    pub input: PathBuf,
}

#[derive(Debug, Args)]
pub struct OutputArg {
    /// Write here instead of standard output (atomic replace)
    #[arg(long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct ProfitArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Comma-separated 1-based criterion index per step, e.g. "2,1,2"
    #[arg(long)]
    pub strategy: String,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct EnsembleArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Inverse temperature (negative values favor profitable strategies)
    #[arg(long, allow_negative_numbers = true)]
    pub beta: f64,
    /// Cross-check ln Z against full enumeration (refused above the cap)
    #[arg(long)]
    pub brute_force: bool,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub input: InputArg,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct FisherArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// Comma-separated 1-based criterion index per step
    #[arg(long)]
    pub strategy: String,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[command(flatten)]
    pub input: InputArg,
    /// First grid value
    #[arg(long, allow_negative_numbers = true)]
    pub beta_from: f64,
    /// Last grid value
    #[arg(long, allow_negative_numbers = true)]
    pub beta_to: f64,
    /// Grid size including both ends
    #[arg(long, default_value_t = 50)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    pub format: OutputFormat,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    /// Criteria count
    #[arg(long)]
    pub n: usize,
    /// Time steps
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Upper bound of the uniform symmetric switching costs
    #[arg(long, default_value_t = 0.1)]
    pub cost_scale: f64,
    /// Standard deviation of the normal log returns
    #[arg(long, default_value_t = 1.0)]
    pub return_scale: f64,
    #[command(flatten)]
    pub output: OutputArg,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Domain(#[from] Error),
    #[error("{}: {source}", path.display())]
    File {
        path: PathBuf,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Domain(Error::EnumerationCapExceeded { .. }) => 3,
            _ => 2,
        }
    }
}

/// Parses arguments from the environment, runs the subcommand, and returns
/// the process exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    match dispatch(&cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: &Command) -> std::result::Result<(), CliError> {
    match command {
        Command::Decompose(args) => cmd_decompose(args),
        Command::Profit(args) => cmd_profit(args),
        Command::Ensemble(args) => cmd_ensemble(args),
        Command::Optimize(args) => cmd_optimize(args),
        Command::Fisher(args) => cmd_fisher(args),
        Command::Scan(args) => cmd_scan(args),
        Command::Generate(args) => cmd_generate(args),
    }
}

fn load_instance(path: &Path) -> std::result::Result<InstanceDocument, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::File {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(InstanceDocument::from_json(&text)?)
}

fn emit(content: &str, output: Option<&Path>) -> std::result::Result<(), CliError> {
    let mut text = content.to_owned();
    if !text.ends_with('\n') {
        text.push('\n');
    }
    match output {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(path) => {
            let fail = |source| CliError::File {
                path: path.to_path_buf(),
                source,
            };
            let dir = match path.parent() {
                Some(parent) if !parent.as_os_str().is_empty() => parent,
                _ => Path::new("."),
            };
            let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(fail)?;
            tmp.write_all(text.as_bytes()).map_err(fail)?;
            tmp.persist(path).map_err(|e| fail(e.error))?;
            Ok(())
        }
    }
}

/// Converts a comma-separated list of 1-based indices into a strategy.
fn parse_strategy(raw: &str, n: usize) -> Result<PureStrategy> {
    let mut choices = Vec::new();
    for part in raw.split(',') {
        let token = part.trim();
        let index: usize = token.parse().map_err(|_| {
            Error::InvalidArgument(format!(
                "strategy entry {token:?} is not a positive integer"
            ))
        })?;
        if index == 0 || index > n {
            return Err(Error::InvalidArgument(format!(
                "strategy index {index} out of range 1..={n} (indices are 1-based)"
            )));
        }
        choices.push(index - 1);
    }
    PureStrategy::new(choices, n)
}

fn one_based(s: &PureStrategy) -> Vec<usize> {
    s.choices().iter().map(|&c| c + 1).collect()
}

fn step_breakdown(s: &PureStrategy, h: &ReturnSeries, c: &CostMatrix) -> Vec<StepBreakdown> {
    (0..s.steps())
        .map(|t| {
            let mu = s.choices()[t];
            let prev = s.previous(t);
            let log_return = h.get(mu, t);
            let switch_cost = c.get(mu, prev);
            StepBreakdown {
                step: t + 1,
                criterion: mu + 1,
                previous: prev + 1,
                log_return,
                switch_cost,
                net: log_return - switch_cost,
            }
        })
        .collect()
}

fn relative_gap(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

fn cmd_decompose(args: &DecomposeArgs) -> std::result::Result<(), CliError> {
    let doc = load_instance(&args.input.input)?;
    let u = doc.judgment_matrix()?;
    let d = decompose(&u);
    let costs = cost_matrix(&d);
    let n = u.n();
    let mut intransitive_triples = Vec::new();
    for nu in 0..n {
        for rho in 0..n {
            for mu in 0..n {
                let deviation = transitivity_deviation(&u, nu, rho, mu)?;
                if deviation.abs() > DEVIATION_THRESHOLD {
                    intransitive_triples.push(TripleDeviation {
                        nu: nu + 1,
                        rho: rho + 1,
                        mu: mu + 1,
                        deviation,
                    });
                }
            }
        }
    }
    let report = DecomposeReport {
        schema_version: SCHEMA_VERSION.to_string(),
        criteria: doc.criteria.clone(),
        skew: d.skew_rows(),
        commission: d.commission_rows(),
        costs: costs.rows(),
        priorities: priority_vector(&u),
        deviation_threshold: DEVIATION_THRESHOLD,
        intransitive_triples,
    };
    emit(&to_json_pretty(&report)?, args.output.output.as_deref())
}

fn cmd_profit(args: &ProfitArgs) -> std::result::Result<(), CliError> {
    let doc = load_instance(&args.input.input)?;
    let h = doc.return_series()?;
    let c = doc.resolve_costs()?;
    let s = parse_strategy(&args.strategy, doc.n())?;
    let direct = profit(&s, &h, &c)?;
    let spin = spin_profit(&s, &h, &c)?;
    let report = ProfitReport {
        schema_version: SCHEMA_VERSION.to_string(),
        criteria: doc.criteria.clone(),
        strategy: one_based(&s),
        profit: direct,
        spin_profit: spin,
        spin_consistent: (direct - spin).abs() <= 1e-9,
        steps: step_breakdown(&s, &h, &c),
    };
    emit(&to_json_pretty(&report)?, args.output.output.as_deref())
}

fn cmd_ensemble(args: &EnsembleArgs) -> std::result::Result<(), CliError> {
    let doc = load_instance(&args.input.input)?;
    let h = doc.return_series()?;
    let c = doc.resolve_costs()?;
    let obs = observables(args.beta, &h, &c)?;
    let brute_force = if args.brute_force {
        let slow = brute_force_partition(args.beta, &h, &c)?;
        Some(BruteForceCheck {
            log_z: slow,
            relative_gap: relative_gap(obs.log_z, slow),
        })
    } else {
        None
    };
    let report = EnsembleReport {
        schema_version: SCHEMA_VERSION.to_string(),
        criteria: doc.criteria.clone(),
        beta: obs.beta,
        log_z: obs.log_z,
        expected_profit: obs.expected_profit,
        variance: obs.variance,
        entropy: obs.entropy,
        temperature: obs.temperature.is_finite().then_some(obs.temperature),
        identity_residual: obs.identity_residual(),
        brute_force,
    };
    emit(&to_json_pretty(&report)?, args.output.output.as_deref())
}

fn cmd_optimize(args: &OptimizeArgs) -> std::result::Result<(), CliError> {
    let doc = load_instance(&args.input.input)?;
    let h = doc.return_series()?;
    let c = doc.resolve_costs()?;
    let best = clairvoyant(&h, &c)?;
    let report = OptimizeReport {
        schema_version: SCHEMA_VERSION.to_string(),
        criteria: doc.criteria.clone(),
        max_profit: best.max_profit,
        strategy: one_based(&best.strategy),
        steps: step_breakdown(&best.strategy, &h, &c),
    };
    emit(&to_json_pretty(&report)?, args.output.output.as_deref())
}

fn cmd_fisher(args: &FisherArgs) -> std::result::Result<(), CliError> {
    let doc = load_instance(&args.input.input)?;
    let s = parse_strategy(&args.strategy, doc.n())?;
    let info = strategy_fisher(&s, doc.n())?;
    let uniform_cost = doc
        .resolve_costs()
        .ok()
        .and_then(|c| c.uniform_off_diagonal());
    let cost = match uniform_cost {
        Some(flat) => Some(cost_of_information(&info, flat)?),
        None => None,
    };
    let report = FisherInformationReport {
        schema_version: SCHEMA_VERSION.to_string(),
        criteria: doc.criteria.clone(),
        strategy: one_based(&s),
        per_criterion: info.per_criterion.clone(),
        total: info.total,
        switch_count: s.switch_count(),
        uniform_cost,
        cost_of_information: cost,
    };
    emit(&to_json_pretty(&report)?, args.output.output.as_deref())
}

fn cmd_scan(args: &ScanArgs) -> std::result::Result<(), CliError> {
    let doc = load_instance(&args.input.input)?;
    let h = doc.return_series()?;
    let c = doc.resolve_costs()?;
    if args.points < 2 {
        return Err(Error::InvalidArgument(format!(
            "a scan needs at least 2 grid points, got {}",
            args.points
        ))
        .into());
    }
    for (name, value) in [("beta-from", args.beta_from), ("beta-to", args.beta_to)] {
        if !value.is_finite() {
            return Err(
                Error::InvalidArgument(format!("{name} must be finite, got {value}")).into(),
            );
        }
    }
    let span = args.beta_to - args.beta_from;
    let grid: Vec<f64> = (0..args.points)
        .map(|i| args.beta_from + span * i as f64 / (args.points - 1) as f64)
        .collect();
    let all = temperature_scan(&grid, &h, &c)?;
    let rows: Vec<ScanRow> = all
        .iter()
        .enumerate()
        .map(|(i, obs)| {
            let de_ds = if i == 0 || i + 1 == all.len() {
                None
            } else {
                let ds = all[i + 1].entropy - all[i - 1].entropy;
                (ds != 0.0).then(|| (all[i + 1].expected_profit - all[i - 1].expected_profit) / ds)
            };
            ScanRow {
                beta: obs.beta,
                log_z: obs.log_z,
                expected_profit: obs.expected_profit,
                variance: obs.variance,
                entropy: obs.entropy,
                temperature: obs.temperature.is_finite().then_some(obs.temperature),
                de_ds,
                minus_t_log_z: (obs.beta != 0.0).then(|| -obs.log_z / obs.beta),
            }
        })
        .collect();
    let report = ScanReport {
        schema_version: SCHEMA_VERSION.to_string(),
        criteria: doc.criteria.clone(),
        rows,
    };
    let content = match args.format {
        OutputFormat::Json => to_json_pretty(&report)?,
        OutputFormat::Csv => scan_to_csv(&report),
    };
    emit(&content, args.output.output.as_deref())
}

fn cmd_generate(args: &GenerateArgs) -> std::result::Result<(), CliError> {
    let doc = generate_instance(
        args.n,
        args.k,
        args.seed,
        args.cost_scale,
        args.return_scale,
    )?;
    emit(&to_json_pretty(&doc)?, args.output.output.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strategies_parse_one_based() {
        let s = parse_strategy("2,1,2", 2).unwrap();
        assert_eq!(s.choices(), &[1, 0, 1]);
        let s = parse_strategy(" 3 , 1 ", 3).unwrap();
        assert_eq!(s.choices(), &[2, 0]);
    }

    #[test]
    fn zero_or_overflowing_indices_are_rejected() {
        assert!(parse_strategy("0,1", 2).is_err());
        assert!(parse_strategy("3", 2).is_err());
        assert!(parse_strategy("", 2).is_err());
        assert!(parse_strategy("1,x", 2).is_err());
        assert!(parse_strategy("-1", 2).is_err());
    }

    #[test]
    fn exit_codes_distinguish_cap_refusals() {
        let cap = CliError::Domain(Error::EnumerationCapExceeded {
            paths: 100,
            cap: 10,
        });
        assert_eq!(cap.exit_code(), 3);
        let other = CliError::Domain(Error::EmptyStrategy);
        assert_eq!(other.exit_code(), 2);
    }

    #[test]
    fn cli_declares_all_subcommands() {
        use clap::CommandFactory;
        let cmd = Cli::command();
        let names: Vec<&str> = cmd.get_subcommands().map(|c| c.get_name()).collect();
        for expected in [
            "decompose",
            "profit",
            "ensemble",
            "optimize",
            "fisher",
            "scan",
            "generate",
        ] {
            assert!(names.contains(&expected), "missing subcommand {expected}");
        }
        cmd.debug_assert();
    }
}
