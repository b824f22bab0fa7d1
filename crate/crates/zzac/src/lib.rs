//! A node-array simulator for zigzag codes.
//!
//! Each node is a directory `node_<idx>` under a root holding one chunk
//! file. Systematic nodes come first, then the parities. Failing a node
//! renames its directory to `node_<idx>.failed`.

pub mod chunk;
pub mod cli;
pub mod commands;
pub mod error;
pub mod layout;
pub mod specfile;

pub use error::{CliError, CliResult};

#[cfg(doctest)]
#[doc = include_str!("../../../book/src/cli.md")]
mod book_cli {}
