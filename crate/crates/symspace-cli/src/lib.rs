//! Command-line front end for `symspace`: JSON documents, subcommands and
//! the self-test battery.

pub mod commands;
pub mod document;
pub mod error;
pub mod report;
pub mod selftest;

pub use error::{CliError, CliResult};
