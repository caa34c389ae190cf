//! # tempus-cli
//!
//! Command-line front end for the `tempus-core` experiments: builds the
//! configured system, runs one experiment family, and emits a reproducible
//! CSV or JSON table.
//!
//! Guarantees:
//!
//! * identical (config, seed) → byte-identical artifact, at any worker
//!   count (`TEMPUS_THREADS` changes speed, never content);
//! * artifacts round-trip: parse → re-emit → identical bytes;
//! * exit code 0 iff the computation and every internal invariant check
//!   passed, otherwise one `error[category]: message` line on stderr with
//!   category `config` (exit 2), `numeric` (exit 3), or `io` (exit 4).

#![forbid(unsafe_code)]

pub mod cli;
pub mod commands;
pub mod config;
pub mod error;
pub mod gridspec;
pub mod system;
pub mod table;

pub use cli::{execute, init_thread_pool, Cli};
pub use error::CliError;
pub use gridspec::{GridSpec, Scale};
pub use table::{format_float, parse_float, ResultTable, SCHEMA_VERSION};
