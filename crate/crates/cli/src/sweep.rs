//! Parameter sweeps over any numeric configuration key.

use rayon::prelude::*;

use dipole_decoherence::numeric::{linspace, logspace};

use crate::config::{RawConfig, ScenarioConfig};
use crate::error::{CliError, Result};
use crate::evaluate::{evaluate_max_dipole, evaluate_rate, RateRow};
use crate::output::{Cell, Table};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scale {
    Linear,
    Log,
}

/// What each grid point computes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Target {
    /// The decoherence rate and its diagnostics.
    #[default]
    Rate,
    /// The crystal dipole that saturates the rate budget.
    MaxDipole,
}

/// A second key stepped through discrete values, one block of rows each.
#[derive(Debug, Clone, PartialEq)]
pub struct Overlay {
    pub variable: String,
    pub values: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub variable: String,
    pub scale: Scale,
    pub lo: f64,
    pub hi: f64,
    pub points: usize,
    pub overlay: Option<Overlay>,
    pub target: Target,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.lo < self.hi) {
            return Err(CliError::validation("sweep.range", format!("need lo < hi, got [{}, {}]", self.lo, self.hi)));
        }
        if self.points < 2 {
            return Err(CliError::validation("sweep.points", "need at least two points"));
        }
        if self.scale == Scale::Log && !(self.lo > 0.0) {
            return Err(CliError::validation("sweep.range", "log scale needs a positive lower bound"));
        }
        if let Some(o) = &self.overlay {
            if o.values.is_empty() {
                return Err(CliError::validation("sweep.overlay", "no overlay values"));
            }
            if o.variable == self.variable {
                return Err(CliError::validation("sweep.overlay", "overlay and sweep variable coincide"));
            }
        }
        Ok(())
    }

    pub fn grid(&self) -> Vec<f64> {
        match self.scale {
            Scale::Linear => linspace(self.lo, self.hi, self.points),
            Scale::Log => logspace(self.lo, self.hi, self.points),
        }
    }
}

/// Sets a key, dropping the ideal-gas partner of density/pressure so the
/// swept one takes over.
pub fn apply(raw: &mut RawConfig, key: &str, value: &str) -> Result<()> {
    match key {
        "environment.pressure" => raw.remove("environment.density"),
        "environment.density" => raw.remove("environment.pressure"),
        _ => {}
    }
    raw.set(key, value)
}

fn overlay_cell(v: &str) -> Cell {
    match v.parse::<f64>() {
        Ok(x) => Cell::Num(x),
        Err(_) => Cell::Text(v.to_owned()),
    }
}

/// Runs the sweep. Rows are ordered by overlay value, then grid point,
/// whatever order the parallel workers finish in; the first failing row
/// aborts the sweep.
pub fn run_sweep(base: &RawConfig, spec: &SweepSpec) -> Result<Table> {
    spec.validate()?;
    let overlay_values: Vec<Option<&str>> = match &spec.overlay {
        Some(o) => o.values.iter().map(|v| Some(v.as_str())).collect(),
        None => vec![None],
    };
    let grid = spec.grid();
    let jobs: Vec<(Option<&str>, f64)> =
        overlay_values.iter().flat_map(|ov| grid.iter().map(move |&x| (*ov, x))).collect();

    let results: Vec<Result<Vec<Cell>>> = jobs
        .par_iter()
        .map(|&(ov, x)| {
            let mut raw = base.clone();
            if let (Some(o), Some(v)) = (&spec.overlay, ov) {
                apply(&mut raw, &o.variable, v)?;
            }
            apply(&mut raw, &spec.variable, &format!("{x:e}"))?;
            let cfg = ScenarioConfig::from_raw(&raw)?;
            match spec.target {
                Target::Rate => {
                    let row = evaluate_rate(&cfg)?;
                    if !row.gamma.is_finite() || row.gamma < 0.0 {
                        return Err(CliError::Output(format!("non-finite rate {}", row.gamma)));
                    }
                    Ok(row.cells())
                }
                Target::MaxDipole => Ok(vec![evaluate_max_dipole(&cfg)?.into(), cfg.budget.into()]),
            }
        })
        .collect();

    let mut headers = Vec::new();
    if let Some(o) = &spec.overlay {
        headers.push(o.variable.clone());
    }
    headers.push(spec.variable.clone());
    match spec.target {
        Target::Rate => headers.extend(RateRow::HEADERS.iter().map(|s| s.to_string())),
        Target::MaxDipole => headers.extend(["d1_max_cm".to_string(), "budget_hz".to_string()]),
    }
    let mut table = Table::new(headers);
    for (i, (res, (ov, x))) in results.into_iter().zip(&jobs).enumerate() {
        let cells = res.map_err(|e| CliError::Row {
            row: i,
            context: match ov {
                Some(v) => format!("{} = {v}, {} = {x:e}", spec.overlay.as_ref().map_or("", |o| &o.variable), spec.variable),
                None => format!("{} = {x:e}", spec.variable),
            },
            source: Box::new(e),
        })?;
        let mut row = Vec::with_capacity(cells.len() + 2);
        if let Some(v) = ov {
            row.push(overlay_cell(v));
        }
        row.push(Cell::Num(*x));
        row.extend(cells);
        table.push(row);
    }
    Ok(table)
}
