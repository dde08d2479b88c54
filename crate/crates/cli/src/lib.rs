//! Library side of the `latkit` binary: file parsers, reports and commands.

pub mod commands;
pub mod famfile;
pub mod latfile;
pub mod report;
