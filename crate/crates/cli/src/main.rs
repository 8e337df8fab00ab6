use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use dipole_decoherence_cli::config::RawConfig;
use dipole_decoherence_cli::evaluate::evaluate_rate;
use dipole_decoherence_cli::output::write_table;
use dipole_decoherence_cli::presets::run_preset;
use dipole_decoherence_cli::sweep::{run_sweep, Overlay, Scale, SweepSpec, Target};
use dipole_decoherence_cli::table1::{table1, FieldSource};
use dipole_decoherence_cli::validate::{checks_table, run_checks};
use dipole_decoherence_cli::{CliError, Format, ScenarioConfig, Table};

#[derive(Parser)]
#[command(name = "dipdecoh", version, about = "Dipole-dipole collisional decoherence rates")]
struct Cli {
    /// Scenario file (`section.key = value [unit]` lines)
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    /// Write output here instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Momentum distribution of the gas
    #[arg(long, global = true, value_enum)]
    distribution: Option<DistArg>,

    /// Exit with status 5 if a rate exceeds the budget (`--enforce-budget=HZ` overrides it)
    #[arg(long, global = true, num_args = 0..=1, require_equals = true, value_name = "HZ")]
    enforce_budget: Option<Option<f64>>,

    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistArg {
    Delta,
    Mb,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScaleArg {
    Linear,
    Log,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Rate,
    MaxDipole,
}

#[derive(Subcommand)]
enum Command {
    /// Decoherence rate of the configured scenario
    Rate,
    /// Sweep one configuration key, optionally overlaid with a second
    Sweep {
        #[arg(long)]
        var: String,
        #[arg(long, value_enum, default_value_t = ScaleArg::Log)]
        scale: ScaleArg,
        #[arg(long)]
        from: f64,
        #[arg(long)]
        to: f64,
        #[arg(long, default_value_t = 25)]
        points: usize,
        #[arg(long)]
        overlay_var: Option<String>,
        /// Comma-separated overlay values
        #[arg(long, value_delimiter = ',')]
        overlay_values: Vec<String>,
        #[arg(long, value_enum, default_value_t = TargetArg::Rate)]
        target: TargetArg,
    },
    /// Dipoles induced in the polarizable air components
    Table1 {
        /// Field magnitude (N/C); overrides --d1/--radius
        #[arg(long)]
        field: Option<f64>,
        /// Crystal dipole (C·m)
        #[arg(long, default_value_t = 1e-23)]
        d1: f64,
        /// Crystal radius (m)
        #[arg(long, default_value_t = 1e-6)]
        radius: f64,
    },
    /// Cross-check closed forms against quadrature
    Validate,
    /// Run a built-in study
    Preset {
        #[arg(value_parser = ["fig2", "fig3", "fig4", "table1"])]
        name: String,
    },
}

fn raw_config(cli: &Cli) -> Result<RawConfig, CliError> {
    let path = cli
        .config
        .as_ref()
        .ok_or_else(|| CliError::Validation { field: "--config".into(), reason: "required for this command".into() })?;
    let mut raw = RawConfig::load(path)?;
    if let Some(d) = cli.distribution {
        raw.set("distribution", match d {
            DistArg::Delta => "delta",
            DistArg::Mb => "mb",
        })?;
    }
    if let Some(Some(budget)) = cli.enforce_budget {
        raw.set("budget", &format!("{budget:e}"))?;
    }
    Ok(raw)
}

fn emit(cli: &Cli, table: &Table) -> Result<(), CliError> {
    let format = match cli.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    match &cli.out {
        Some(path) => {
            let f = File::create(path).map_err(|source| CliError::Io { path: path.clone(), source })?;
            let mut w = BufWriter::new(f);
            write_table(table, format, &mut w)?;
            w.flush().map_err(|e| CliError::Output(e.to_string()))
        }
        None => write_table(table, format, io::stdout().lock()),
    }
}

fn check_budget(cli: &Cli, table: &Table) -> Result<(), CliError> {
    if cli.enforce_budget.is_none() {
        return Ok(());
    }
    let (Some(g), Some(b)) = (table.column("gamma_hz"), table.column("budget_hz")) else { return Ok(()) };
    for row in &table.rows {
        if let (dipole_decoherence_cli::Cell::Num(gamma), dipole_decoherence_cli::Cell::Num(budget)) = (&row[g], &row[b]) {
            if gamma > budget {
                return Err(CliError::Budget { gamma: *gamma, budget: *budget });
            }
        }
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Rate => {
            let cfg = ScenarioConfig::from_raw(&raw_config(cli)?)?;
            let table = evaluate_rate(&cfg)?.table();
            emit(cli, &table)?;
            check_budget(cli, &table)
        }
        Command::Sweep { var, scale, from, to, points, overlay_var, overlay_values, target } => {
            let overlay = match overlay_var {
                Some(v) => Some(Overlay { variable: v.clone(), values: overlay_values.clone() }),
                None => None,
            };
            let spec = SweepSpec {
                variable: var.clone(),
                scale: match scale {
                    ScaleArg::Linear => Scale::Linear,
                    ScaleArg::Log => Scale::Log,
                },
                lo: *from,
                hi: *to,
                points: *points,
                overlay,
                target: match target {
                    TargetArg::Rate => Target::Rate,
                    TargetArg::MaxDipole => Target::MaxDipole,
                },
            };
            let table = run_sweep(&raw_config(cli)?, &spec)?;
            emit(cli, &table)?;
            check_budget(cli, &table)
        }
        Command::Table1 { field, d1, radius } => {
            let source = match field {
                Some(e) => FieldSource::Field(*e),
                None => FieldSource::CrystalDipole { d1: *d1, radius: *radius },
            };
            emit(cli, &table1(source)?)
        }
        Command::Validate => {
            let checks = run_checks()?;
            emit(cli, &checks_table(&checks))?;
            let failed = checks.iter().filter(|c| !c.passed()).count();
            if failed > 0 {
                return Err(CliError::ChecksFailed { failed, total: checks.len() });
            }
            Ok(())
        }
        Command::Preset { name } => {
            let table = run_preset(name)?;
            emit(cli, &table)?;
            check_budget(cli, &table)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
