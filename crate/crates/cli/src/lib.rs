//! Command-line front end for `segre-core`: tower files, flag integrals and
//! verification sweeps.

pub mod spec_file;
pub mod table;
pub mod verify;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use thiserror::Error;

use segre_core::flag::{flag_tower, localization_integral, vandermonde_integral, FlagError};
use segre_core::series::{coefficient_of, ExponentVector, SeriesError};
use segre_core::tower::{
    closed_formula_segre, stepwise_pushforward, TowerError, TruncationRequest, ValidationReport,
};

pub use spec_file::TowerSpecFile;
pub use table::ResultTable;
pub use verify::{run_verify, VerifyConfig, VerifySummary};

/// Environment variable that raises the shift-expansion order.
pub const DEGREE_CAP_ENV: &str = "SEGRE_TOWERS_DEGREE_CAP";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid tower: {0}")]
    Invalid(ValidationReport),
    #[error("cannot parse tower file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("malformed table: {0}")]
    Table(String),
    #[error("coefficient {0} does not fit the file format")]
    CoefficientTooLarge(String),
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Tower(TowerError),
    #[error(transparent)]
    Flag(FlagError),
    #[error(transparent)]
    Series(#[from] SeriesError),
}

impl From<TowerError> for CliError {
    fn from(e: TowerError) -> Self {
        match e {
            TowerError::Invalid(report) => CliError::Invalid(report),
            other => CliError::Tower(other),
        }
    }
}

impl From<FlagError> for CliError {
    fn from(e: FlagError) -> Self {
        match e {
            FlagError::Tower(t) => t.into(),
            FlagError::Arity { .. } | FlagError::InvalidK(_) | FlagError::NoTrials => {
                CliError::Usage(e.to_string())
            }
            other => CliError::Flag(other),
        }
    }
}

impl CliError {
    /// 2 for usage errors, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "segre-towers",
    version,
    about = "Exact Segre series and push-forwards for projective towers"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Table,
    Json,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Method {
    #[default]
    Closed,
    Stepwise,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate c_1^a_1 ... c_k^a_k over the complete flag variety of C^{k+1}.
    FlagIntegral {
        #[arg(long)]
        k: usize,
        /// Comma-separated exponents a_1,...,a_k.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        exps: Vec<u32>,
        /// Also print the Vandermonde and localization values.
        #[arg(short, long)]
        verbose: bool,
        /// Seed for the localization weights.
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Print the coefficients of a tower's Segre series inside a window.
    TowerSegre {
        /// JSON tower file.
        path: PathBuf,
        /// Largest a_i: one number for every level, or a comma-separated list.
        #[arg(long, value_delimiter = ',', default_value = "0")]
        window: Vec<u32>,
        /// Largest exponent order for every aux variable.
        #[arg(long, default_value_t = 0)]
        aux_window: u32,
        #[arg(long, value_enum, default_value_t)]
        method: Method,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Cross-check flag integrals three ways and closed vs stepwise on random towers.
    Verify {
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(0..=verify::MAX_K_CEILING as i64))]
        max_k: u8,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        /// Number of random towers.
        #[arg(long, default_value_t = 50)]
        corpus: usize,
    },
}

/// Reads [`DEGREE_CAP_ENV`]; unset or empty means no override.
pub fn degree_cap_from_env() -> Result<Option<u32>, CliError> {
    match std::env::var(DEGREE_CAP_ENV) {
        Ok(s) if s.trim().is_empty() => Ok(None),
        Ok(s) => s.trim().parse().map(Some).map_err(|_| {
            CliError::Usage(format!(
                "{DEGREE_CAP_ENV} must be a non-negative integer, got {s:?}"
            ))
        }),
        Err(std::env::VarError::NotPresent) => Ok(None),
        Err(e) => Err(CliError::Usage(format!("{DEGREE_CAP_ENV}: {e}"))),
    }
}

/// Runs one command. `Ok(false)` means a cross-check failed.
pub fn run(cli: &Cli, degree_cap: Option<u32>, out: &mut dyn Write) -> Result<bool, CliError> {
    match &cli.command {
        Command::FlagIntegral {
            k,
            exps,
            verbose,
            seed,
            trials,
            format,
        } => flag_integral_cmd(*k, exps, *verbose, *seed, *trials, *format, degree_cap, out),
        Command::TowerSegre {
            path,
            window,
            aux_window,
            method,
            format,
        } => {
            let table = tower_segre_cmd(path, window, *aux_window, *method, degree_cap)?;
            match format {
                Format::Table => write!(out, "{table}")?,
                Format::Json => writeln!(out, "{}", table.to_json())?,
            }
            Ok(true)
        }
        Command::Verify {
            max_k,
            seed,
            trials,
            corpus,
        } => {
            let config = VerifyConfig {
                max_k: usize::from(*max_k),
                seed: *seed,
                trials: *trials,
                corpus_size: *corpus,
                perturb_vandermonde: false,
            };
            Ok(run_verify(&config, out)?.ok())
        }
    }
}

#[derive(Serialize)]
struct FlagIntegralReport {
    k: usize,
    exps: Vec<u32>,
    value: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    vandermonde: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    localization: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    trials: Option<usize>,
}

#[allow(clippy::too_many_arguments)]
fn flag_integral_cmd(
    k: usize,
    exps: &[u32],
    verbose: bool,
    seed: u64,
    trials: usize,
    format: Format,
    degree_cap: Option<u32>,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    if exps.len() != k {
        return Err(CliError::Usage(format!(
            "--exps has {} entries, expected k = {k}",
            exps.len()
        )));
    }
    let spec = flag_tower(k)?;
    let mut req = TruncationRequest::new(exps.to_vec(), BTreeMap::new());
    if let Some(cap) = degree_cap {
        req = req.with_degree_cap(cap);
    }
    let series = closed_formula_segre(&spec, &req)?;
    let target = ExponentVector::from_pairs(
        spec.tower_vars()
            .into_iter()
            .zip(exps)
            .map(|(v, &a)| (v, -i64::from(a) - 1)),
    );
    let value = coefficient_of(&series, &target, &spec.series_vars())?;
    let value = value
        .as_constant()
        .ok_or(CliError::Flag(FlagError::NotRational(value)))?;

    let mut report = FlagIntegralReport {
        k,
        exps: exps.to_vec(),
        value: value.to_string(),
        vandermonde: None,
        localization: None,
        seed: None,
        trials: None,
    };
    let mut ok = true;
    if verbose {
        let vandermonde = vandermonde_integral(k, exps)?;
        let localization = match localization_integral(k, exps, trials, seed) {
            Ok(v) => {
                ok &= v == value;
                v.to_string()
            }
            Err(e @ FlagError::TrialMismatch { .. }) => {
                ok = false;
                e.to_string()
            }
            Err(e) => return Err(e.into()),
        };
        ok &= vandermonde == value;
        report.vandermonde = Some(vandermonde.to_string());
        report.localization = Some(localization);
        report.seed = Some(seed);
        report.trials = Some(trials);
    }
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?,
        Format::Table if verbose => {
            writeln!(out, "closed: {}", report.value)?;
            writeln!(
                out,
                "vandermonde: {}",
                report.vandermonde.as_deref().unwrap_or_default()
            )?;
            writeln!(
                out,
                "localization: {} (seed {seed}, {trials} trials)",
                report.localization.as_deref().unwrap_or_default()
            )?;
            if !ok {
                writeln!(out, "MISMATCH")?;
            }
        }
        Format::Table => writeln!(out, "{}", report.value)?,
    }
    Ok(ok)
}

/// Loads a tower file and tabulates its Segre series inside the window.
pub fn tower_segre_cmd(
    path: &std::path::Path,
    window: &[u32],
    aux_window: u32,
    method: Method,
    degree_cap: Option<u32>,
) -> Result<ResultTable, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Read {
        path: path.to_owned(),
        source,
    })?;
    let spec = TowerSpecFile::from_json(&text)?.to_spec()?;
    let mut req = TruncationRequest::uniform(&spec, 0, aux_window);
    req.tower_orders = match window {
        [n] => vec![*n; spec.k()],
        list if list.len() == spec.k() => list.to_vec(),
        list => {
            return Err(CliError::Usage(format!(
                "--window has {} entries; give one value or k = {}",
                list.len(),
                spec.k()
            )))
        }
    };
    if let Some(cap) = degree_cap {
        req = req.with_degree_cap(cap);
    }
    let series = match method {
        Method::Closed => closed_formula_segre(&spec, &req)?,
        Method::Stepwise => stepwise_pushforward(&spec, &req)?,
    };
    let columns: Vec<_> = spec.tower_vars().into_iter().chain(spec.aux_vars()).collect();
    Ok(ResultTable::from_series(&series, &columns))
}
