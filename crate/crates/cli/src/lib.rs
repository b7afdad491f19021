//! Command-line front end for `sasaki-core`: JSON manifests, command
//! dispatch and deterministic JSON or text reports.
//!
//! Exit codes: 0 when every check passes (`n/a` counts as passing), 1 when
//! some check fails, 2 on input errors.

pub mod error;
pub mod manifest;
pub mod report;
pub mod run;

pub use error::CliError;
pub use manifest::Manifest;
pub use report::Report;
pub use run::{run, Command, ConnectionKind, Options, Source, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
