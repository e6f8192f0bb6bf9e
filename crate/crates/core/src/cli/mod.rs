//! Batch front end: scenario file in, CSV telemetry and summaries out.

pub mod config;
pub mod output;

use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result};
use crate::sim::{eigen_analysis, integrate_orbit, run_coupled, state_space_at, sweep};
use crate::validation::{validate_all, ValidationContext};
use config::{Mode, RunConfig};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CONFIG: u8 = 2;
pub const EXIT_RUNTIME: u8 = 3;
pub const EXIT_VALIDATION: u8 = 4;

#[derive(Debug, Parser)]
#[command(name = "dualspin", version, about = "Dual-spin satellite attitude simulator")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Scenario file (TOML key/value pairs).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    pub out: PathBuf,

    /// Integration step (s).
    #[arg(long, global = true)]
    pub dt: Option<f64>,

    /// Run length in orbital periods.
    #[arg(long, global = true)]
    pub orbits: Option<f64>,

    #[arg(long, global = true, value_enum)]
    pub mode: Option<Mode>,

    /// Drop the J2 terms from the gravity-gradient strength.
    #[arg(long, global = true)]
    pub no_j2: bool,

    /// Switch gravity-gradient torque off.
    #[arg(long, global = true)]
    pub no_gg: bool,

    /// Worker threads for sweeps (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Propagate the orbit alone and write orbit.csv.
    Orbit,
    /// Run the coupled model and write trajectory.csv and summary.toml.
    Simulate,
    /// Eigenvalues of A at `eig_time_s` into eig.csv.
    Eig,
    /// Run the (e, i) grid and write sweep.csv.
    Sweep,
    /// Run the acceptance checks.
    Validate,
}

impl Cli {
    /// Scenario file with the command-line overrides applied.
    pub fn resolve_config(&self) -> Result<RunConfig> {
        let mut config = match &self.config {
            Some(path) => RunConfig::load(path)?,
            None => RunConfig::default(),
        };
        if let Some(orbits) = self.orbits {
            config.orbits = orbits;
            config.duration_s = None;
        }
        if let Some(mode) = self.mode {
            config.mode = mode;
        }
        if self.no_j2 {
            config.j2_torque = false;
        }
        if self.no_gg {
            config.gravity_gradient = false;
        }
        if let Some(dt) = self.dt {
            match self.command {
                Command::Orbit => config.orbit_dt = dt,
                _ => config.dt = dt,
            }
        }
        Ok(config)
    }
}

fn create(dir: &Path, name: &str) -> Result<BufWriter<File>> {
    std::fs::create_dir_all(dir)?;
    let path = dir.join(name);
    let file = File::create(&path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    log::info!("writing {}", path.display());
    Ok(BufWriter::new(file))
}

/// Runs one command; `Ok(false)` means validation failed.
pub fn execute(cli: &Cli) -> Result<bool> {
    let config = cli.resolve_config()?;
    match cli.command {
        Command::Orbit => {
            let scenario = config.scenario(config.orbit_dt)?;
            let orbit = integrate_orbit(&scenario)?;
            output::write_orbit_csv(create(&cli.out, "orbit.csv")?, &orbit, scenario.orbital_period())?;
        }
        Command::Simulate => {
            let scenario = config.scenario(config.dt)?;
            let trajectory = run_coupled(&scenario)?;
            output::write_trajectory_csv(create(&cli.out, "trajectory.csv")?, &trajectory)?;
            let summary = output::Summary::new(&scenario, &trajectory, config.lookback_orbits).to_toml()?;
            std::io::Write::write_all(&mut create(&cli.out, "summary.toml")?, summary.as_bytes())?;
            print!("{summary}");
        }
        Command::Eig => {
            let scenario = config.scenario(config.dt)?;
            let analysis = eigen_analysis(&state_space_at(&scenario, config.eig_time_s)?.a)?;
            for z in &analysis.values {
                println!("{:+.10e} {:+.10e}j", z.re, z.im);
            }
            output::write_eig_csv(create(&cli.out, "eig.csv")?, &analysis)?;
        }
        Command::Sweep => {
            let template = config.scenario(config.dt)?;
            let rows = sweep(&template, &config.e_values, &config.i_deg_values, cli.jobs)?;
            output::write_sweep_csv(create(&cli.out, "sweep.csv")?, &rows)?;
        }
        Command::Validate => {
            let report = validate_all(&ValidationContext::from_config(&config)?);
            println!("{report}");
            return Ok(report.all_passed());
        }
    }
    Ok(true)
}

/// Process exit code for a parsed command line.
pub fn run(cli: &Cli) -> u8 {
    match execute(cli) {
        Ok(true) => EXIT_OK,
        Ok(false) => EXIT_VALIDATION,
        Err(e) => {
            eprintln!("error: {e}");
            if e.is_config() {
                EXIT_CONFIG
            } else {
                EXIT_RUNTIME
            }
        }
    }
}
