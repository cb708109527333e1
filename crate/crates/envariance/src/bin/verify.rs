//! Command-line front end for the verification campaigns.
//!
//! Exit codes: 0 when the suite ran with zero violations, 1 when it ran but
//! found violations, 2 for usage, configuration, or i/o errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::Parser;

use envariance::verify::{emit, run_suite, CampaignConfig, OutputFormat, Suite};
use envariance::{Error, Result};

/// Numerical verification of distinguishability bounds for bipartite states
/// under unital channels.
#[derive(Debug, Parser)]
#[command(name = "verify", version, about, max_term_width = 100)]
struct Cli {
    /// Suite to run
    #[arg(value_enum)]
    suite: Suite,

    /// Smallest dimension sampled per trial [default: 2]
    #[arg(long, value_name = "N")]
    n_min: Option<usize>,

    /// Largest dimension sampled per trial [default: 6]
    #[arg(long, value_name = "N")]
    n_max: Option<usize>,

    /// Number of randomized trials [default: 1000]
    #[arg(long, value_name = "COUNT")]
    trials: Option<usize>,

    /// Master seed; every trial derives its own seed from it [default: 42]
    #[arg(long, value_name = "SEED")]
    seed: Option<u64>,

    /// Numerical tolerance for equality checks [default: 1e-9]
    #[arg(long, value_name = "TOL")]
    tol: Option<f64>,

    /// Write the report here instead of stdout
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,

    /// Report format [default: csv]
    #[arg(long, value_enum, value_name = "FORMAT")]
    format: Option<OutputFormat>,

    /// Read defaults from a key=value file; flags still win
    #[arg(long, value_name = "PATH")]
    config: Option<PathBuf>,
}

#[derive(Debug, Default)]
struct FileSettings {
    n_min: Option<usize>,
    n_max: Option<usize>,
    trials: Option<usize>,
    seed: Option<u64>,
    tol: Option<f64>,
    format: Option<OutputFormat>,
}

fn parse_field<T: FromStr>(key: &str, value: &str, context: &str) -> Result<T> {
    value
        .parse()
        .map_err(|_| Error::InvalidConfig(format!("{context}: invalid value '{value}' for {key}")))
}

/// Key=value lines with kebab-case keys; blank lines and text after '#'
/// are ignored. Unknown keys are errors so typos do not silently fall
/// back to defaults.
fn parse_config_file(path: &Path) -> Result<FileSettings> {
    let text = fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })?;
    let mut settings = FileSettings::default();
    for (index, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let context = format!("{}:{}", path.display(), index + 1);
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::InvalidConfig(format!("{context}: expected key=value, got '{line}'"))
        })?;
        let (key, value) = (key.trim(), value.trim());
        match key {
            "n-min" => settings.n_min = Some(parse_field(key, value, &context)?),
            "n-max" => settings.n_max = Some(parse_field(key, value, &context)?),
            "trials" => settings.trials = Some(parse_field(key, value, &context)?),
            "seed" => settings.seed = Some(parse_field(key, value, &context)?),
            "tol" => settings.tol = Some(parse_field(key, value, &context)?),
            "format" => settings.format = Some(OutputFormat::from_str(value)?),
            other => {
                return Err(Error::InvalidConfig(format!(
                    "{context}: unknown key '{other}'"
                )))
            }
        }
    }
    Ok(settings)
}

fn run(cli: Cli) -> Result<usize> {
    let file = match &cli.config {
        Some(path) => parse_config_file(path)?,
        None => FileSettings::default(),
    };
    let config = CampaignConfig::new(
        cli.suite,
        cli.n_min.or(file.n_min).unwrap_or(CampaignConfig::DEFAULT_N_MIN),
        cli.n_max.or(file.n_max).unwrap_or(CampaignConfig::DEFAULT_N_MAX),
        cli.trials.or(file.trials).unwrap_or(CampaignConfig::DEFAULT_TRIALS),
        cli.seed.or(file.seed).unwrap_or(CampaignConfig::DEFAULT_SEED),
        cli.tol.or(file.tol).unwrap_or(CampaignConfig::DEFAULT_TOL),
        cli.format.or(file.format).unwrap_or(OutputFormat::Csv),
    )?;
    let report = run_suite(&config)?;
    match &cli.out {
        Some(path) => {
            let mut file = fs::File::create(path).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
            emit(&report, config.format, &mut file).map_err(|source| Error::Io {
                path: path.display().to_string(),
                source,
            })?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            emit(&report, config.format, &mut lock).map_err(|source| Error::Io {
                path: "<stdout>".to_string(),
                source,
            })?;
            lock.flush().map_err(|source| Error::Io {
                path: "<stdout>".to_string(),
                source,
            })?;
        }
    }
    eprintln!("{}", report.summary);
    Ok(report.violations)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(2)
        }
    }
}
