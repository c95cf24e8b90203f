//! Front end for the `toricnorm` library: expression and lattice parsing,
//! subcommand pipelines and the JSON job report.

pub mod parse;
pub mod report;
pub mod run;

pub use parse::{parse_lattice_spec, parse_series, parse_weights, ParseError};
pub use report::JobReport;
pub use run::{run_from_hj, run_normalize, run_series, CliError, Command, Options};
