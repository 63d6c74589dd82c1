//! `optocorr`: sweeps, figure presets, threshold tables and oracle
//! validation for the squeezed-light double-cavity model, as CSV.
//!
//! Exit status: 0 on success, 1 on usage errors, 2 when validation fails.

mod config;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use optocorr::covariance::Subsystem;
use optocorr::parallel::Execution;
use optocorr::sweep::{
    parse_subsystems, run_preset, run_sweep_with, threshold_table, write_csv, write_threshold_csv,
    FigurePreset, FixedParams, Measures, Spacing, SweepSpec, SweepVariable,
};
use optocorr::validation::{validate_with, Fault};

use crate::config::FileConfig;

const DEFAULT_GRID: usize = 101;
const DEFAULT_SEED: u64 = 42;
const DEFAULT_TRIALS: usize = 50;

#[derive(Debug, Parser)]
#[command(
    name = "optocorr",
    version,
    about = "Entanglement and Gaussian discord of a squeezed-light-driven double optomechanical cavity"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Sweep one of T, n_th, beta or r and emit E_N / D per subsystem.
    Sweep {
        /// Swept variable: T, nth, beta or r.
        #[arg(long)]
        vary: Option<String>,
        #[arg(long)]
        from: Option<f64>,
        #[arg(long)]
        to: Option<f64>,
    },
    /// Rows behind one of the figures: fig2 ... fig8.
    Preset { name: String },
    /// T0 and beta0 for the mechanical and optical pairs.
    Thresholds,
    /// Lyapunov oracle and invariant checks on seeded random draws.
    Validate {
        #[arg(long)]
        trials: Option<usize>,
        /// Corrupt one closed-form entry to exercise the failure path.
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

#[derive(Debug, Args)]
struct Common {
    #[arg(long, global = true)]
    alpha: Option<f64>,
    #[arg(long, global = true)]
    beta: Option<f64>,
    #[arg(long, global = true)]
    r: Option<f64>,
    #[arg(long, global = true)]
    nth: Option<f64>,
    #[arg(long, global = true)]
    temp_kelvin: Option<f64>,
    /// Mechanical angular frequency in rad/s.
    #[arg(long, global = true)]
    omega_m: Option<f64>,
    /// Comma separated: mm, oo, hl, hc.
    #[arg(long, global = true)]
    subsystems: Option<String>,
    /// Comma separated: en, discord.
    #[arg(long, global = true)]
    measures: Option<String>,
    /// Number of grid points.
    #[arg(long, global = true)]
    grid: Option<usize>,
    #[arg(long, global = true, conflicts_with = "linear")]
    log: bool,
    #[arg(long, global = true)]
    linear: bool,
    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Evaluate grid points on one thread.
    #[arg(long, global = true)]
    sequential: bool,
    /// TOML file with defaults for any of the flags above.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

/// Flags merged over the config file.
struct Settings {
    cli: Common,
    file: FileConfig,
}

impl Settings {
    fn new(cli: Common) -> Result<Self> {
        let file = match &cli.config {
            Some(path) => FileConfig::load(path)?,
            None => FileConfig::default(),
        };
        Ok(Self { cli, file })
    }

    fn fixed(&self) -> Result<FixedParams> {
        let d = FixedParams::default();
        Ok(FixedParams {
            alpha: self.cli.alpha.or(self.file.alpha).unwrap_or(d.alpha),
            beta: self.cli.beta.or(self.file.beta).unwrap_or(d.beta),
            r: self.cli.r.or(self.file.r).unwrap_or(d.r),
            n_th: self.cli.nth.or(self.file.nth),
            temperature: self.cli.temp_kelvin.or(self.file.temp_kelvin),
            omega_m: self.cli.omega_m.or(self.file.omega_m),
        })
    }

    fn subsystems(&self) -> Result<Vec<Subsystem>> {
        match self
            .cli
            .subsystems
            .as_ref()
            .or(self.file.subsystems.as_ref())
        {
            Some(s) => Ok(parse_subsystems(s)?),
            None => Ok(Subsystem::ALL.to_vec()),
        }
    }

    fn measures(&self) -> Result<Measures> {
        match self.cli.measures.as_ref().or(self.file.measures.as_ref()) {
            Some(s) => Ok(s.parse()?),
            None => Ok(Measures::BOTH),
        }
    }

    fn spacing(&self, variable: SweepVariable) -> Result<Spacing> {
        if self.cli.log {
            return Ok(Spacing::Log);
        }
        if self.cli.linear {
            return Ok(Spacing::Linear);
        }
        match self
            .file
            .spacing
            .as_deref()
            .map(str::to_ascii_lowercase)
            .as_deref()
        {
            Some("log") => Ok(Spacing::Log),
            Some("linear") => Ok(Spacing::Linear),
            Some(other) => bail!("spacing must be `log` or `linear`, got `{other}`"),
            None => Ok(match variable {
                SweepVariable::Temperature | SweepVariable::Occupation => Spacing::Log,
                _ => Spacing::Linear,
            }),
        }
    }

    fn grid(&self) -> Option<usize> {
        self.cli.grid.or(self.file.grid)
    }

    fn execution(&self) -> Execution {
        if self.cli.sequential || self.file.sequential.unwrap_or(false) {
            Execution::Sequential
        } else {
            Execution::Parallel
        }
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        match self.cli.out.as_ref().or(self.file.out.as_ref()) {
            Some(path) => {
                let file =
                    File::create(path).with_context(|| format!("creating {}", path.display()))?;
                Ok(Box::new(BufWriter::new(file)))
            }
            None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        }
    }

    /// Flags that make no sense for a preset, whose parameters are fixed.
    fn physics_flags(&self) -> Vec<&'static str> {
        let c = &self.cli;
        [
            ("--alpha", c.alpha.is_some()),
            ("--beta", c.beta.is_some()),
            ("--r", c.r.is_some()),
            ("--nth", c.nth.is_some()),
            ("--temp-kelvin", c.temp_kelvin.is_some()),
            ("--omega-m", c.omega_m.is_some()),
            ("--subsystems", c.subsystems.is_some()),
            ("--measures", c.measures.is_some()),
            ("--log", c.log),
            ("--linear", c.linear),
        ]
        .into_iter()
        .filter_map(|(name, set)| set.then_some(name))
        .collect()
    }
}

fn sweep(s: &Settings, vary: Option<String>, from: Option<f64>, to: Option<f64>) -> Result<()> {
    let variable: SweepVariable = vary
        .or_else(|| s.file.vary.clone())
        .context("sweep needs --vary (T, nth, beta or r)")?
        .parse()?;
    let start = from.or(s.file.from).context("sweep needs --from")?;
    let end = to.or(s.file.to).context("sweep needs --to")?;
    let spec = SweepSpec {
        label: String::new(),
        variable,
        start,
        end,
        points: s.grid().unwrap_or(DEFAULT_GRID),
        spacing: s.spacing(variable)?,
        fixed: s.fixed()?,
        subsystems: s.subsystems()?,
        measures: s.measures()?,
    };
    let rows = run_sweep_with(&spec, s.execution())?;
    write_csv(&rows, s.output()?)?;
    Ok(())
}

fn preset(s: &Settings, name: &str) -> Result<()> {
    let preset: FigurePreset = name.parse()?;
    let ignored = s.physics_flags();
    if !ignored.is_empty() {
        bail!(
            "preset {preset} fixes its own parameters; drop {}",
            ignored.join(", ")
        );
    }
    let rows = run_preset(preset, s.grid(), s.execution())?;
    write_csv(&rows, s.output()?)?;
    Ok(())
}

fn thresholds(s: &Settings) -> Result<()> {
    let fixed = s.fixed()?;
    let rows = threshold_table(&fixed)?;
    write_threshold_csv(&fixed, &rows, s.output()?)?;
    Ok(())
}

/// Returns whether every check passed.
fn validate(s: &Settings, trials: Option<usize>, inject_fault: bool) -> Result<bool> {
    let trials = trials.or(s.file.trials).unwrap_or(DEFAULT_TRIALS);
    if trials == 0 {
        bail!("--trials must be at least 1");
    }
    let seed = s.cli.seed.or(s.file.seed).unwrap_or(DEFAULT_SEED);
    let fault = if inject_fault {
        Fault::CorruptEntry
    } else {
        Fault::None
    };
    let report = validate_with(trials, seed, fault, s.execution());
    report.write_failures_csv(s.output()?)?;
    eprintln!(
        "validate: {trials} trials, seed {seed}, {} checks, {} failures, max oracle deviation {:.3e}, max residual {:.3e}, {:.3} s",
        report.checks,
        report.failures.len(),
        report.max_oracle_deviation,
        report.max_residual,
        report.elapsed.as_secs_f64()
    );
    for f in &report.failures {
        eprintln!(
            "FAIL {} (trial {}): value {:e}, limit {:e}",
            f.check, f.trial, f.value, f.limit
        );
    }
    Ok(report.passed())
}

fn run(cli: Cli) -> Result<ExitCode> {
    let settings = Settings::new(cli.common)?;
    match cli.command {
        Command::Sweep { vary, from, to } => sweep(&settings, vary, from, to)?,
        Command::Preset { name } => preset(&settings, &name)?,
        Command::Thresholds => thresholds(&settings)?,
        Command::Validate {
            trials,
            inject_fault,
        } => {
            if !validate(&settings, trials, inject_fault)? {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
