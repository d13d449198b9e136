//! Command-line front end: presets, TOML run configs, parameter sweeps and
//! deterministic CSV/NDJSON output.

pub mod config;
pub mod error;
pub mod output;
pub mod presets;
pub mod runner;

pub use config::RunConfig;
pub use error::{CliError, CliResult};
pub use runner::{execute, RunOptions, RunReport};
