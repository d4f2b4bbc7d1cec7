use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use permqm::dynamics::{default_t_max, dominant_evolution, trace_evolution, TrajectoryTrace};
use permqm::perm::Permutation;
use permqm::rng::stream;
use permqm::spectrum::{base_energy, spectrum_of};
use serde::Serialize;

use crate::config::{Command, Format, RunConfig};
use crate::error::{CliError, CliResult};
use crate::experiment::{
    dominant_histogram, random_pair, run_trials, summarize, Summary, TrialSpec,
};
use crate::output::{base_rows, level_rows, trace_rows, write_rows, write_rows_to, DominanceRow};
use crate::svg::{render, Series};
use crate::verify::{run_checks, standard_checks};

/// Window cap for traces, as a multiple of N.
pub const TRACE_CAP_FACTOR: u64 = 4;

pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    match cfg.command {
        Command::Dominate => cmd_dominate(cfg, stdout),
        Command::Trace => cmd_trace(cfg, stdout).map(|_| ()),
        Command::Spectrum => cmd_spectrum(cfg, stdout),
        Command::Verify => run_checks(&standard_checks(cfg.seed), stdout),
        Command::Mc => cmd_mc(cfg, stdout).map(|_| ()),
    }
}

fn spec(cfg: &RunConfig) -> TrialSpec {
    TrialSpec {
        degree: cfg.n,
        cmax: cfg.cmax,
        seed: cfg.seed,
        representation: cfg.representation,
    }
}

fn out_io(e: std::io::Error) -> CliError {
    CliError::io(Path::new("<stdout>"), e)
}

fn print_summary(out: &mut dyn Write, s: &Summary) -> CliResult<()> {
    let ratio = s.median_dominant / s.median_baseline;
    writeln!(out, "trials: {}", s.trials).map_err(out_io)?;
    writeln!(out, "median dominant probability: {:.6}", s.median_dominant).map_err(out_io)?;
    writeln!(
        out,
        "median random-permutation probability: {:.6}",
        s.median_baseline
    )
    .map_err(out_io)?;
    writeln!(out, "ratio of medians: {ratio:.3}").map_err(out_io)?;
    match s.mean_inverse_base {
        Some(m) => writeln!(out, "mean 1/base energy: {m:.3}"),
        None => writeln!(out, "mean 1/base energy: none"),
    }
    .map_err(out_io)
}

/// One row per trial, to `--out` or standard output.
pub fn cmd_dominate(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    let trials = run_trials(&spec(cfg), cfg.trials, cfg.workers)?;
    let rows: Vec<DominanceRow> = trials.iter().map(DominanceRow::from).collect();
    match &cfg.out {
        Some(path) => {
            write_rows_to(path, &rows, &[], cfg.format)?;
            print_summary(stdout, &summarize(&trials))
        }
        None => write_rows(stdout, &rows, &[], cfg.format),
    }
}

fn out_dir(cfg: &RunConfig) -> CliResult<PathBuf> {
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;
    Ok(dir)
}

fn extension(f: Format) -> &'static str {
    match f {
        Format::Csv => "csv",
        Format::Json => "json",
    }
}

/// Traces of `--pairs` random pairs; returns the files written.
pub fn cmd_trace(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<Vec<PathBuf>> {
    let dir = out_dir(cfg)?;
    let spec = spec(cfg);
    let cap = TRACE_CAP_FACTOR * cfg.n as u64;
    let mut written = Vec::new();
    let mut series = Vec::new();
    for pair in 0..cfg.pairs {
        let (n, m) = random_pair(&spec, pair)?;
        let d = dominant_evolution(&n, &m, cfg.representation)?;
        let (t_max, window) = match cfg.t_max {
            Some(t) => (t, "fixed by tmax".to_string()),
            None => (
                default_t_max(&d.dominant, cap),
                format!("min(order, {TRACE_CAP_FACTOR}N) (reconstructed default)"),
            ),
        };
        let trace =
            trace_evolution(&d.dominant, &n, &m, cfg.representation, t_max)?.with_dominance(d);
        let label = trace
            .base_energy
            .map_or_else(|| "none".to_string(), |b| b.to_string());
        let comments = trace_comments(cfg, pair, &trace, &window);
        let path = dir.join(format!("trace_{pair}.{}", extension(cfg.format)));
        write_rows_to(&path, &trace_rows(&trace), &comments, cfg.format)?;
        writeln!(
            stdout,
            "{}  base energy {label}  t_max {t_max}",
            path.display()
        )
        .map_err(out_io)?;
        written.push(path);
        series.push(Series {
            label,
            points: trace
                .times()
                .zip(trace.floats())
                .map(|(t, p)| (t as f64, p))
                .collect(),
        });
    }
    if cfg.plot {
        let path = dir.join("trace.svg");
        let title = format!(
            "Dominant evolutions, N = {}, seed {}: Born probability vs time",
            cfg.n, cfg.seed
        );
        fs::write(&path, render(&series, &title)).map_err(|e| CliError::io(&path, e))?;
        writeln!(stdout, "{}", path.display()).map_err(out_io)?;
        written.push(path);
    }
    Ok(written)
}

fn trace_comments(
    cfg: &RunConfig,
    pair: usize,
    trace: &TrajectoryTrace,
    window: &str,
) -> Vec<(String, String)> {
    let kv = |k: &str, v: String| (k.to_string(), v);
    let d = trace.dominance.as_ref();
    vec![
        kv("N", cfg.n.to_string()),
        kv("seed", cfg.seed.to_string()),
        kv("pair", pair.to_string()),
        kv("representation", cfg.representation.to_string()),
        kv("permutation", trace.permutation.to_string()),
        kv("cycle type", trace.permutation.cycle_type().to_string()),
        kv(
            "base energy",
            trace
                .base_energy
                .map_or_else(|| "none".to_string(), |b| b.to_string()),
        ),
        kv(
            "orientation",
            d.map_or_else(String::new, |d| d.orientation.to_string()),
        ),
        kv("window", window.to_string()),
    ]
}

#[derive(Debug, Serialize)]
struct SpectrumReport {
    permutation: String,
    cycle_type: String,
    spectrum: Vec<(String, usize)>,
    base_energy: String,
}

pub fn cmd_spectrum(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    let p = match &cfg.perm {
        Some(p) => p.clone(),
        None => Permutation::random(cfg.n, &mut stream(cfg.seed, 0))?,
    };
    let spectrum = spectrum_of(&p);
    let report = SpectrumReport {
        permutation: p.to_string(),
        cycle_type: p.cycle_type().to_string(),
        spectrum: spectrum
            .levels()
            .iter()
            .map(|(e, k)| (e.to_string(), *k))
            .collect(),
        base_energy: base_energy(&p).map_or_else(|| "none".to_string(), |b| b.to_string()),
    };
    let text = match cfg.format {
        Format::Csv => format!(
            "permutation: {}\ncycle type: {}\nspectrum: {}\nbase energy: {}\n",
            report.permutation, report.cycle_type, spectrum, report.base_energy
        ),
        Format::Json => {
            serde_json::to_string_pretty(&report).map_err(|e| CliError::Format(e.to_string()))?
                + "\n"
        }
    };
    match &cfg.out {
        Some(path) => fs::write(path, text).map_err(|e| CliError::io(path, e)),
        None => stdout.write_all(text.as_bytes()).map_err(out_io),
    }
}

/// Dominance rows and energy histograms; returns the files written.
pub fn cmd_mc(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<Vec<PathBuf>> {
    let dir = out_dir(cfg)?;
    let trials = run_trials(&spec(cfg), cfg.trials, cfg.workers)?;
    let hist = dominant_histogram(&trials, cfg.workers)?;
    let ext = extension(cfg.format);
    let rows: Vec<DominanceRow> = trials.iter().map(DominanceRow::from).collect();
    let files = [
        dir.join(format!("dominance.{ext}")),
        dir.join(format!("energy_levels.{ext}")),
        dir.join(format!("base_energies.{ext}")),
    ];
    write_rows_to(&files[0], &rows, &[], cfg.format)?;
    write_rows_to(&files[1], &level_rows(&hist), &[], cfg.format)?;
    write_rows_to(&files[2], &base_rows(&hist), &[], cfg.format)?;
    print_summary(stdout, &summarize(&trials))?;
    if let Some(mode) = hist.base_mode() {
        writeln!(stdout, "most frequent base energy: {mode}").map_err(out_io)?;
    }
    for f in &files {
        writeln!(stdout, "{}", f.display()).map_err(out_io)?;
    }
    Ok(files.to_vec())
}
