//! Command-line flags, the `key=value` config file, and their merge.
//!
//! Flags given on the command line override the config file, which overrides
//! the built-in defaults.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use permqm::perm::Permutation;
use permqm::repstate::Representation;

use crate::error::{CliError, CliResult};

pub const DEFAULT_N: usize = 100;
pub const DEFAULT_CMAX: u64 = 1_000_000;
pub const DEFAULT_TRIALS: usize = 100;
pub const DEFAULT_SEED: u64 = 1;
pub const DEFAULT_PAIRS: usize = 4;

#[derive(Debug, Parser)]
#[command(
    name = "permqm",
    version,
    about = "Dominant evolutions and energy spectra of permutation states"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// One random pair per trial: dominant evolution, base energy, random baseline.
    Dominate,
    /// Probability traces of the dominant evolution's powers.
    Trace,
    /// Cycle type, energy levels and base energy of a permutation.
    Spectrum,
    /// Run the oracle checks; exit status 1 if any fails.
    Verify,
    /// Batch dominance experiment plus energy histograms.
    Mc,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Dominate => "dominate",
            Command::Trace => "trace",
            Command::Spectrum => "spectrum",
            Command::Verify => "verify",
            Command::Mc => "mc",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Rep {
    Nat,
    Std,
}

impl From<Rep> for Representation {
    fn from(r: Rep) -> Self {
        match r {
            Rep::Nat => Representation::Natural,
            Rep::Std => Representation::Standard,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

/// Every flag is optional so that unset flags fall through to the config
/// file.
#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    /// Degree N of the symmetric group.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    /// Components are drawn uniformly from 0..=cmax.
    #[arg(long, global = true)]
    pub cmax: Option<u64>,
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    #[arg(long, value_enum, global = true)]
    pub rep: Option<Rep>,
    /// Last time step of a trace; default min(order, 4N).
    #[arg(long, global = true)]
    pub tmax: Option<u64>,
    /// Output file (dominate, spectrum) or directory (trace, mc).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, global = true)]
    pub format: Option<Format>,
    /// Also render an SVG chart (trace).
    #[arg(long, global = true)]
    pub plot: bool,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Number of random pairs to trace.
    #[arg(long, global = true)]
    pub pairs: Option<usize>,
    /// Permutation in 1-based one-line form, e.g. "3 1 2" (spectrum).
    #[arg(long, global = true)]
    pub perm: Option<String>,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub workers: Option<usize>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub n: usize,
    pub cmax: u64,
    pub trials: usize,
    pub seed: u64,
    pub representation: Representation,
    pub t_max: Option<u64>,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub plot: bool,
    pub pairs: usize,
    pub perm: Option<Permutation>,
    pub workers: Option<usize>,
}

impl RunConfig {
    pub fn defaults(command: Command) -> Self {
        RunConfig {
            command,
            n: DEFAULT_N,
            cmax: DEFAULT_CMAX,
            trials: DEFAULT_TRIALS,
            seed: DEFAULT_SEED,
            representation: Representation::Standard,
            t_max: None,
            out: None,
            format: Format::Csv,
            plot: false,
            pairs: DEFAULT_PAIRS,
            perm: None,
            workers: None,
        }
    }

    /// Defaults, then the config file named by `--config`, then the flags.
    pub fn resolve(command: Command, flags: &Flags) -> CliResult<Self> {
        let mut cfg = RunConfig::defaults(command);
        if let Some(path) = &flags.config {
            let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
            cfg.apply_file(&text, path)?;
        }
        cfg.apply_flags(flags)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_cli(cli: &Cli) -> CliResult<Self> {
        Self::resolve(cli.command, &cli.flags)
    }

    fn apply_file(&mut self, text: &str, path: &Path) -> CliResult<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: String| {
                CliError::BadArgs(format!("{}:{}: {msg}", path.display(), lineno + 1))
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| bad(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            self.set(key, value).map_err(|e| bad(e.to_string()))?;
        }
        Ok(())
    }

    /// Sets one setting from its config-file spelling.
    pub fn set(&mut self, key: &str, value: &str) -> CliResult<()> {
        fn parse<T: FromStr>(key: &str, value: &str) -> CliResult<T> {
            value
                .parse()
                .map_err(|_| CliError::BadArgs(format!("invalid value {value:?} for {key}")))
        }
        match key {
            "n" => self.n = parse(key, value)?,
            "cmax" => self.cmax = parse(key, value)?,
            "trials" => self.trials = parse(key, value)?,
            "seed" => self.seed = parse(key, value)?,
            "rep" => {
                self.representation = match value {
                    "nat" => Representation::Natural,
                    "std" => Representation::Standard,
                    _ => {
                        return Err(CliError::BadArgs(format!(
                            "rep must be nat or std, got {value:?}"
                        )))
                    }
                }
            }
            "tmax" => self.t_max = Some(parse(key, value)?),
            "out" => self.out = Some(PathBuf::from(value)),
            "format" => {
                self.format = match value {
                    "csv" => Format::Csv,
                    "json" => Format::Json,
                    _ => {
                        return Err(CliError::BadArgs(format!(
                            "format must be csv or json, got {value:?}"
                        )))
                    }
                }
            }
            "plot" => self.plot = parse(key, value)?,
            "pairs" => self.pairs = parse(key, value)?,
            "perm" => self.perm = Some(parse_perm(value)?),
            "workers" => self.workers = Some(parse(key, value)?),
            _ => return Err(CliError::BadArgs(format!("unknown setting {key:?}"))),
        }
        Ok(())
    }

    fn apply_flags(&mut self, f: &Flags) -> CliResult<()> {
        if let Some(v) = f.n {
            self.n = v;
        }
        if let Some(v) = f.cmax {
            self.cmax = v;
        }
        if let Some(v) = f.trials {
            self.trials = v;
        }
        if let Some(v) = f.seed {
            self.seed = v;
        }
        if let Some(v) = f.rep {
            self.representation = v.into();
        }
        if let Some(v) = f.tmax {
            self.t_max = Some(v);
        }
        if let Some(v) = &f.out {
            self.out = Some(v.clone());
        }
        if let Some(v) = f.format {
            self.format = v;
        }
        if f.plot {
            self.plot = true;
        }
        if let Some(v) = f.pairs {
            self.pairs = v;
        }
        if let Some(v) = &f.perm {
            self.perm = Some(parse_perm(v)?);
        }
        if let Some(v) = f.workers {
            self.workers = Some(v);
        }
        Ok(())
    }

    pub fn validate(&self) -> CliResult<()> {
        if self.n < 2 {
            return Err(CliError::BadArgs(format!(
                "n must be at least 2, got {}",
                self.n
            )));
        }
        if self.trials < 1 {
            return Err(CliError::BadArgs("trials must be at least 1".into()));
        }
        if self.cmax < 1 {
            return Err(CliError::BadArgs("cmax must be at least 1".into()));
        }
        if self.pairs < 1 {
            return Err(CliError::BadArgs("pairs must be at least 1".into()));
        }
        if self.t_max == Some(0) {
            return Err(CliError::BadArgs("tmax must be at least 1".into()));
        }
        if self.workers == Some(0) {
            return Err(CliError::BadArgs("workers must be at least 1".into()));
        }
        Ok(())
    }
}

fn parse_perm(text: &str) -> CliResult<Permutation> {
    text.parse()
        .map_err(|e| CliError::BadArgs(format!("bad permutation {text:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cli(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("permqm").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn defaults() {
        let c = RunConfig::from_cli(&cli(&["dominate"])).unwrap();
        assert_eq!(c, RunConfig::defaults(Command::Dominate));
        assert_eq!(c.n, 100);
        assert_eq!(c.representation, Representation::Standard);
    }

    #[test]
    fn flags_override_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("run.cfg");
        std::fs::write(
            &path,
            "# archived run\nn = 12\nseed=9\nrep=nat\nformat=json\nplot=true\n",
        )
        .unwrap();
        let p = path.to_str().unwrap();
        let c = RunConfig::from_cli(&cli(&["mc", "--config", p, "--n", "20"])).unwrap();
        assert_eq!(c.n, 20);
        assert_eq!(c.seed, 9);
        assert_eq!(c.representation, Representation::Natural);
        assert_eq!(c.format, Format::Json);
        assert!(c.plot);
        let c = RunConfig::from_cli(&cli(&["mc", "--rep", "std", "--config", p])).unwrap();
        assert_eq!(c.representation, Representation::Standard);
    }

    #[test]
    fn rejects_bad_settings() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.cfg");
        std::fs::write(&path, "colour=blue\n").unwrap();
        let err =
            RunConfig::from_cli(&cli(&["mc", "--config", path.to_str().unwrap()])).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert_eq!(
            RunConfig::from_cli(&cli(&["mc", "--n", "1"]))
                .unwrap_err()
                .exit_code(),
            2
        );
        assert_eq!(
            RunConfig::from_cli(&cli(&["spectrum", "--perm", "1 1 2"]))
                .unwrap_err()
                .exit_code(),
            2
        );
        let missing =
            RunConfig::from_cli(&cli(&["mc", "--config", "/nonexistent/run.cfg"])).unwrap_err();
        assert_eq!(missing.exit_code(), 3);
        assert!(Cli::try_parse_from(["permqm", "mc", "--rep", "both"]).is_err());
    }
}
