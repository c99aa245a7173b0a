//! Command-line front end for `ifs-cavity`: sweeps, figure panels, CSV/JSON/SVG output.

pub mod args;
pub mod commands;
pub mod config;
pub mod error;
pub mod fsio;
pub mod manifest;
pub mod svg;
pub mod table;

pub use args::Cli;
pub use commands::run;
pub use error::{CliError, CliResult};
