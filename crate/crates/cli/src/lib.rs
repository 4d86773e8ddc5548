//! Scenario-driven front end for `weilkit`.
//!
//! A scenario file names a kernel (`tower`, `weil`, `forms`, `split2`,
//! `groups`, `surject` or `suite`) and its parameters. Running it produces a
//! [`Report`] of named checks, serialized as canonical JSON, and an exit code:
//! 0 when every check passes, 1 when one fails, 2 for malformed input.

pub mod report;
pub mod runner;
pub mod scenario;
pub mod suite;

pub use report::{Check, Report, Status, SCHEMA_VERSION};
pub use runner::{run_scenario, RunOptions, DEFAULT_SEED};
pub use scenario::{InputError, Kind, Scenario};
pub use suite::{run_suite, run_suite_timed, run_suite_with, Mutation, SuiteOptions};

/// Load, validate and run the scenario at `path`.
pub fn run_path(path: &std::path::Path, opts: RunOptions) -> Result<Report, InputError> {
    run_scenario(&Scenario::load(path)?, opts)
}
