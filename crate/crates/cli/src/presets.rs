//! Built-in scenarios regenerating the published parameter studies.

use crate::config::RawConfig;
use crate::error::{CliError, Result};
use crate::output::Table;
use crate::sweep::{run_sweep, Overlay, Scale, SweepSpec, Target};
use crate::table1::{table1, FieldSource};

/// Helium-like gas with an atomic-scale dipole polarizing a diamond crystal.
pub const INDUCED_CRYSTAL: &str = "\
crystal.radius = 1e-6 m
crystal.relative_permittivity = 5.7
environment.species = custom
environment.name = atomic
environment.mass = 1e-27 kg
environment.dipole = 1e-29 C*m
environment.temperature = 1 K
environment.density = 1e8 m^-3
superposition.delta_x = 1e-5 m
superposition.hold_time = 1 s
channel = environment_induces_crystal
";

/// Permanent crystal dipole against a permanent gas dipole.
pub const PERMANENT: &str = "\
crystal.radius = 1e-6 m
crystal.dipole = 0 C*m
environment.species = custom
environment.name = molecular
environment.mass = 1e-27 kg
environment.dipole = 1 D
environment.temperature = 1 K
environment.density = 1e8 m^-3
superposition.delta_x = 1e-5 m
channel = permanent_permanent
";

/// Permanent crystal dipole polarizing nitrogen.
pub const INDUCED_ENVIRONMENT: &str = "\
crystal.radius = 1e-6 m
crystal.dipole = 1e-23 C*m
environment.species = N2
environment.temperature = 1 K
environment.density = 1e8 m^-3
superposition.delta_x = 1e-5 m
channel = crystal_induces_environment
";

pub const NAMES: [&str; 4] = ["fig2", "fig3", "fig4", "table1"];

pub fn base_config(name: &str) -> Result<RawConfig> {
    let text = match name {
        "fig2" => INDUCED_CRYSTAL,
        "fig3" => PERMANENT,
        "fig4" => INDUCED_ENVIRONMENT,
        _ => return Err(CliError::validation("preset", format!("no configuration for preset `{name}`"))),
    };
    RawConfig::parse(text, name)
}

fn values(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn sweep_spec(name: &str) -> Result<SweepSpec> {
    Ok(match name {
        // rate against temperature at fixed pressures
        "fig2" => SweepSpec {
            variable: "environment.temperature".into(),
            scale: Scale::Log,
            lo: 0.1,
            hi: 10.0,
            points: 41,
            overlay: Some(Overlay {
                variable: "environment.pressure".into(),
                values: values(&["1e-15", "1e-14", "1e-13", "1e-12"]),
            }),
            target: Target::Rate,
        },
        // crystal dipole bound against gas dipole at fixed rate budgets
        "fig3" => SweepSpec {
            variable: "environment.dipole".into(),
            scale: Scale::Log,
            lo: 1e-31,
            hi: 1e-28,
            points: 31,
            overlay: Some(Overlay { variable: "budget".into(), values: values(&["1e-5", "1e-4", "1e-3", "1e-2"]) }),
            target: Target::MaxDipole,
        },
        // rate against crystal dipole for each polarizable air component
        "fig4" => SweepSpec {
            variable: "crystal.dipole".into(),
            scale: Scale::Log,
            lo: 1e-26,
            hi: 1e-23,
            points: 31,
            overlay: Some(Overlay { variable: "environment.species".into(), values: values(&["N2", "O2", "Ar", "CO2"]) }),
            target: Target::Rate,
        },
        _ => return Err(CliError::validation("preset", format!("no sweep for preset `{name}`"))),
    })
}

/// Runs a preset: the sweep for figures, the induced-dipole table for `table1`.
pub fn run_preset(name: &str) -> Result<Table> {
    match name {
        "table1" => table1(FieldSource::default()),
        _ => run_sweep(&base_config(name)?, &sweep_spec(name)?),
    }
}
