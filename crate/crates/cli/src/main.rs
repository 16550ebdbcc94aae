//! Command-line runner for traveling-wave experiments.
//!
//! Exit codes: 0 on success (a blow-up is a valid scientific result),
//! 2 on configuration errors, 3 on internal errors.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use rdweno::report::RunStatus;
use rdweno::{parse_config_with_overrides, run, run_table, RunError, TableFamily};

#[derive(Parser)]
#[command(name = "rdweno", version, about = "Sixth-order FD/WENO solvers for 1D reaction-diffusion traveling waves", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a single experiment from a TOML config file.
    Solve {
        /// Path to the config document.
        #[arg(long)]
        config: PathBuf,
        /// Override a config key, e.g. --override model.rho=5000.
        #[arg(long = "override", value_name = "KEY=VALUE")]
        overrides: Vec<String>,
        /// Output directory (overrides the config's out_dir).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a whole experiment family and write its aggregated CSV.
    Table {
        /// Family name: fisher, zeldovich, nws, bistable, lotka-volterra,
        /// stability, nws-speed, nws-cfl.
        #[arg(long)]
        family: String,
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
        /// Skip rows with more cells than this (the largest grids take
        /// hours; the qualitative results appear well before them).
        #[arg(long)]
        max_cells: Option<usize>,
    },
    /// List the available presets.
    ListPresets,
}

const EXIT_CONFIG: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                RunError::Config(_) => ExitCode::from(EXIT_CONFIG),
                RunError::Solver(_) | RunError::Io(_) => ExitCode::from(EXIT_INTERNAL),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<(), RunError> {
    match cli.command {
        Command::Solve {
            config,
            overrides,
            out,
        } => {
            let text = std::fs::read_to_string(&config)?;
            let mut cfg = parse_config_with_overrides(&text, &overrides)?;
            if let Some(out) = out {
                cfg.out_dir = Some(out);
            }
            let report = run(&cfg)?;
            print_summary(&report);
            Ok(())
        }
        Command::Table {
            family,
            out,
            max_cells,
        } => {
            let family = TableFamily::parse(&family).ok_or_else(|| {
                rdweno::ConfigError::Invalid {
                    path: "family".into(),
                    message: format!(
                        "unknown family `{family}` (expected one of: {})",
                        TableFamily::ALL.map(|f| f.name()).join(", ")
                    ),
                }
            })?;
            let path = run_table(family, &out, max_cells)?;
            println!("wrote {}", path.display());
            Ok(())
        }
        Command::ListPresets => {
            for info in rdweno::presets::list() {
                println!("{:22} {}", info.name, info.about);
            }
            Ok(())
        }
    }
}

fn print_summary(report: &rdweno::RunReport) {
    let r = &report.record;
    println!(
        "{} | scheme {} | N = {} | cfl = {} | T = {}",
        r.model_kind, r.scheme, r.n_cells, r.cfl, r.t_final
    );
    match r.status {
        RunStatus::Ok => println!("status: completed in {} steps", r.steps),
        RunStatus::BlowUp { t } => println!("status: blew up at t = {t:.6} (step {})", r.steps),
    }
    for (s, sp) in r.species.iter().enumerate() {
        if let Some(n) = sp.norms {
            println!(
                "species {s}: L1 = {:.6e}  L2 = {:.6e}  Linf = {:.6e}",
                n.l1, n.l2, n.linf
            );
        }
        if let Some(c) = sp.front_speed {
            println!("species {s}: trailing front speed = {c:.4}");
        }
    }
    println!("wall clock: {:.3}s", report.duration.as_secs_f64());
}
