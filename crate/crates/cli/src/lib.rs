//! Library side of the `dipdecoh` command-line tool: scenario files, rate
//! evaluation, sweeps, presets and self-validation.

pub mod config;
pub mod error;
pub mod evaluate;
pub mod output;
pub mod presets;
pub mod sweep;
pub mod table1;
pub mod validate;

pub use config::{load_config, RawConfig, ScenarioConfig};
pub use error::{CliError, Result};
pub use output::{Cell, Format, Table};
