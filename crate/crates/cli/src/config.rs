//! Flat `section.key = value [unit]` scenario files.
//!
//! ```text
//! # crystal
//! crystal.radius = 1 um
//! crystal.dipole = 3 D
//! environment.species = N2
//! environment.temperature = 1 K
//! environment.pressure = 1e-15 Pa
//! superposition.delta_x = 1e-5 m
//! channel = crystal_induces_environment
//! ```
//!
//! Values without a unit are SI. Exactly one of `environment.density` and
//! `environment.pressure` must be given; the other follows from the ideal-gas
//! law.

use std::collections::BTreeMap;
use std::path::Path;

use dipole_decoherence::qgem::{species_by_name, DIAMOND_DENSITY, DIAMOND_PERMITTIVITY};
use dipole_decoherence::quantities::{
    number_density_to_pressure, pressure_to_number_density, Dimension, ANGSTROM3, DEBYE,
};
use dipole_decoherence::{
    Channel, CrystalSpec, DistributionKind, EnvironmentSpec, GasSpecies, Scenario, SuperpositionSpec,
};

use crate::error::{CliError, Result};

/// Default decoherence budget (Hz).
pub const DEFAULT_BUDGET: f64 = 1e-2;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    Number(Dimension),
    Text,
}

const MASS_DENSITY: Dimension = Dimension::new(1, -3, 0, 0, 0);

fn key_kind(key: &str) -> Option<Kind> {
    use Kind::*;
    Some(match key {
        "crystal.radius" | "superposition.delta_x" => Number(Dimension::LENGTH),
        "crystal.density" => Number(MASS_DENSITY),
        "crystal.mass" | "environment.mass" => Number(Dimension::MASS),
        "crystal.relative_permittivity" => Number(Dimension::NONE),
        "crystal.dipole" | "environment.dipole" => Number(Dimension::DIPOLE),
        "environment.polarizability" => Number(Dimension::VOLUME),
        "environment.temperature" => Number(Dimension::TEMPERATURE),
        "environment.density" => Number(Dimension::NUMBER_DENSITY),
        "environment.pressure" => Number(Dimension::PRESSURE),
        "superposition.hold_time" => Number(Dimension::TIME),
        "budget" => Number(Dimension::FREQUENCY),
        "environment.species" | "environment.name" | "channel" | "distribution" => Text,
        _ => return None,
    })
}

/// Every recognised key, in a stable order.
pub const KEYS: &[&str] = &[
    "crystal.radius",
    "crystal.density",
    "crystal.mass",
    "crystal.relative_permittivity",
    "crystal.dipole",
    "environment.species",
    "environment.name",
    "environment.mass",
    "environment.dipole",
    "environment.polarizability",
    "environment.temperature",
    "environment.density",
    "environment.pressure",
    "superposition.delta_x",
    "superposition.hold_time",
    "channel",
    "distribution",
    "budget",
];

fn unit(token: &str) -> Option<(Dimension, f64)> {
    Some(match token {
        "m" => (Dimension::LENGTH, 1.0),
        "mm" => (Dimension::LENGTH, 1e-3),
        "um" | "µm" => (Dimension::LENGTH, 1e-6),
        "nm" => (Dimension::LENGTH, 1e-9),
        "kg" => (Dimension::MASS, 1.0),
        "amu" | "u" => (Dimension::MASS, 1.660_539_066_60e-27),
        "K" => (Dimension::TEMPERATURE, 1.0),
        "mK" => (Dimension::TEMPERATURE, 1e-3),
        "Pa" => (Dimension::PRESSURE, 1.0),
        "mbar" => (Dimension::PRESSURE, 100.0),
        "s" => (Dimension::TIME, 1.0),
        "Hz" => (Dimension::FREQUENCY, 1.0),
        "D" | "Debye" | "debye" => (Dimension::DIPOLE, DEBYE),
        "C*m" | "C·m" | "Cm" => (Dimension::DIPOLE, 1.0),
        "angstrom3" | "A3" | "Å3" => (Dimension::VOLUME, ANGSTROM3),
        "m3" | "m^3" => (Dimension::VOLUME, 1.0),
        "m-3" | "m^-3" | "1/m3" => (Dimension::NUMBER_DENSITY, 1.0),
        "kg/m3" | "kg/m^3" => (MASS_DENSITY, 1.0),
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq)]
struct Entry {
    text: String,
    line: usize,
}

/// Parsed but not yet validated key-value pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct RawConfig {
    source_name: String,
    entries: BTreeMap<String, Entry>,
}

impl RawConfig {
    pub fn parse(text: &str, source_name: &str) -> Result<Self> {
        let mut entries = BTreeMap::new();
        let err = |line: usize, column: usize, message: String| CliError::Parse {
            source_name: source_name.to_owned(),
            line,
            column,
            message,
        };
        for (idx, raw_line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            let Some(eq) = content.find('=') else {
                let col = content.len() - content.trim_start().len() + 1;
                return Err(err(line_no, col, "expected `key = value`".into()));
            };
            let key = content[..eq].trim();
            let key_col = content.len() - content.trim_start().len() + 1;
            if key.is_empty() {
                return Err(err(line_no, key_col, "missing key".into()));
            }
            if key_kind(key).is_none() {
                return Err(err(line_no, key_col, format!("unknown key `{key}`")));
            }
            let value = content[eq + 1..].trim();
            if value.is_empty() {
                return Err(err(line_no, eq + 2, format!("missing value for `{key}`")));
            }
            if entries.contains_key(key) {
                return Err(err(line_no, key_col, format!("duplicate key `{key}`")));
            }
            entries.insert(key.to_owned(), Entry { text: value.to_owned(), line: line_no });
        }
        let raw = RawConfig { source_name: source_name.to_owned(), entries };
        // surface value syntax errors with their position
        for (key, entry) in &raw.entries {
            if let Some(Kind::Number(_)) = key_kind(key) {
                raw.number(key)?;
            } else if entry.text.split_whitespace().count() != 1 {
                return Err(err(entry.line, 1, format!("`{key}` takes a single word")));
            }
        }
        Ok(raw)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })?;
        Self::parse(&text, &path.display().to_string())
    }

    pub fn contains(&self, key: &str) -> bool {
        self.entries.contains_key(key)
    }

    /// Overrides (or adds) a key; used by sweeps.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        if key_kind(key).is_none() {
            return Err(CliError::validation(key, "unknown key"));
        }
        self.entries.insert(key.to_owned(), Entry { text: value.to_owned(), line: 0 });
        if let Some(Kind::Number(_)) = key_kind(key) {
            self.number(key)?;
        }
        Ok(())
    }

    pub fn remove(&mut self, key: &str) {
        self.entries.remove(key);
    }

    fn text(&self, key: &str) -> Option<&str> {
        self.entries.get(key).map(|e| e.text.as_str())
    }

    /// Value in SI units.
    pub fn number(&self, key: &str) -> Result<Option<f64>> {
        let Some(entry) = self.entries.get(key) else { return Ok(None) };
        let Some(Kind::Number(expected)) = key_kind(key) else {
            return Err(CliError::validation(key, "not a numeric key"));
        };
        let mut parts = entry.text.split_whitespace();
        let number = parts.next().unwrap_or("");
        let unit_token = parts.next();
        let pos_err = |message: String| {
            if entry.line == 0 {
                CliError::validation(key, message)
            } else {
                let column = 1 + key.len();
                CliError::Parse { source_name: self.source_name.clone(), line: entry.line, column, message }
            }
        };
        if parts.next().is_some() {
            return Err(pos_err(format!("trailing input in `{}`", entry.text)));
        }
        let v: f64 = number.parse().map_err(|_| pos_err(format!("`{number}` is not a number")))?;
        if !v.is_finite() {
            return Err(pos_err(format!("`{number}` is not finite")));
        }
        match unit_token {
            None => Ok(Some(v)),
            Some(tok) => {
                let (dim, factor) = unit(tok).ok_or_else(|| CliError::Unit {
                    field: key.to_owned(),
                    reason: format!("unknown unit `{tok}`"),
                })?;
                if dim != expected {
                    return Err(CliError::Unit {
                        field: key.to_owned(),
                        reason: format!("`{tok}` has dimension {dim}, expected {expected}"),
                    });
                }
                Ok(Some(v * factor))
            }
        }
    }

    fn required(&self, key: &str) -> Result<f64> {
        self.number(key)?.ok_or_else(|| CliError::validation(key, "missing"))
    }
}

/// A fully validated scenario.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    pub distribution: DistributionKind,
    /// Gas pressure (Pa), given or derived.
    pub pressure: f64,
    /// Rate budget (Hz).
    pub budget: f64,
}

fn parse_channel(s: &str) -> Result<Channel> {
    Ok(match s {
        "permanent_permanent" => Channel::PermanentPermanent,
        "environment_induces_crystal" => Channel::EnvironmentInducesCrystal,
        "crystal_induces_environment" => Channel::CrystalInducesEnvironment,
        other => return Err(CliError::validation("channel", format!("unknown channel `{other}`"))),
    })
}

pub fn parse_distribution(s: &str) -> Result<DistributionKind> {
    Ok(match s {
        "delta" => DistributionKind::DeltaAtMean,
        "mb" | "maxwell_boltzmann" => DistributionKind::MaxwellBoltzmann,
        other => return Err(CliError::validation("distribution", format!("unknown distribution `{other}`"))),
    })
}

fn physics(field: &str, e: dipole_decoherence::Error) -> CliError {
    CliError::validation(field, e.to_string())
}

impl ScenarioConfig {
    pub fn from_raw(raw: &RawConfig) -> Result<Self> {
        let radius = raw.required("crystal.radius")?;
        let density = raw.number("crystal.density")?.unwrap_or(DIAMOND_DENSITY);
        let eps_r = raw.number("crystal.relative_permittivity")?.unwrap_or(DIAMOND_PERMITTIVITY);
        let crystal_dipole = raw.number("crystal.dipole")?;
        let crystal = match raw.number("crystal.mass")? {
            Some(m) => CrystalSpec::with_mass(radius, density, m, eps_r, crystal_dipole.unwrap_or(0.0)),
            None => CrystalSpec::new(radius, density, eps_r, crystal_dipole.unwrap_or(0.0)),
        }
        .map_err(|e| physics("crystal", e))?;

        let species_name = raw.text("environment.species").unwrap_or("custom");
        let mut species = if species_name.eq_ignore_ascii_case("custom") {
            let name = raw.text("environment.name").unwrap_or("custom");
            let mass = raw.required("environment.mass")?;
            GasSpecies::new(name, mass, None, 0.0).map_err(|e| physics("environment.mass", e))?
        } else {
            species_by_name(species_name)
                .ok_or_else(|| CliError::validation("environment.species", format!("unknown species `{species_name}`")))?
        };
        if let Some(m) = raw.number("environment.mass")? {
            species.mass = m;
        }
        if let Some(d) = raw.number("environment.dipole")? {
            species.permanent_dipole = Some(d);
        }
        if let Some(a) = raw.number("environment.polarizability")? {
            species.polarizability_volume = a;
        }
        if let Some(n) = raw.text("environment.name") {
            species.name = n.to_owned();
        }
        let species = GasSpecies::new(species.name, species.mass, species.permanent_dipole, species.polarizability_volume)
            .map_err(|e| physics("environment", e))?;

        let temperature = raw.required("environment.temperature")?;
        let (density_n, pressure) = match (raw.number("environment.density")?, raw.number("environment.pressure")?) {
            (Some(_), Some(_)) => {
                return Err(CliError::validation("environment", "give exactly one of density and pressure, not both"))
            }
            (None, None) => return Err(CliError::validation("environment", "one of density or pressure is required")),
            (Some(n), None) => {
                (n, number_density_to_pressure(n, temperature).map_err(|e| physics("environment.density", e))?)
            }
            (None, Some(p)) => {
                (pressure_to_number_density(p, temperature).map_err(|e| physics("environment.pressure", e))?, p)
            }
        };
        let environment =
            EnvironmentSpec::new(species, temperature, density_n).map_err(|e| physics("environment", e))?;

        let delta_x = raw.required("superposition.delta_x")?;
        let hold = raw.number("superposition.hold_time")?.unwrap_or(1.0);
        let superposition = SuperpositionSpec::new(delta_x, hold).map_err(|e| physics("superposition", e))?;

        let channel = parse_channel(raw.text("channel").ok_or_else(|| CliError::validation("channel", "missing"))?)?;
        let sp = &environment.species;
        match channel {
            Channel::PermanentPermanent | Channel::EnvironmentInducesCrystal if sp.permanent_dipole.is_none() => {
                return Err(CliError::validation("environment.dipole", format!("channel needs a permanent dipole for {}", sp.name)))
            }
            Channel::PermanentPermanent | Channel::CrystalInducesEnvironment if crystal_dipole.is_none() => {
                return Err(CliError::validation("crystal.dipole", "channel needs the crystal's permanent dipole"))
            }
            Channel::CrystalInducesEnvironment if sp.polarizability_volume <= 0.0 => {
                return Err(CliError::validation(
                    "environment.polarizability",
                    format!("channel needs a polarizable species, {} has none", sp.name),
                ))
            }
            _ => {}
        }
        let distribution = parse_distribution(raw.text("distribution").unwrap_or("delta"))?;
        let budget = raw.number("budget")?.unwrap_or(DEFAULT_BUDGET);
        if !(budget > 0.0) {
            return Err(CliError::validation("budget", "must be positive"));
        }
        Ok(ScenarioConfig {
            scenario: Scenario { crystal, environment, superposition, channel },
            distribution,
            pressure,
            budget,
        })
    }
}

pub fn load_config(path: &Path) -> Result<ScenarioConfig> {
    ScenarioConfig::from_raw(&RawConfig::load(path)?)
}
