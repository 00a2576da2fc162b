//! Batch front end for `ehall-core`: parse a run configuration, execute one
//! verification suite and emit a JSON or CSV report.

mod config;
mod report;
mod run;

pub use config::{
    load_config_file, parse_config_text, parse_window, Command, Format, IntRange, Mode, Params,
    RunConfig, UsageError, MAX_PRIME, MIN_PRIME,
};
pub use report::{Record, Report, Summary};
pub use run::{execute, suite_relators};

/// Exit code for an invalid configuration.
pub const EXIT_USAGE: i32 = 2;
