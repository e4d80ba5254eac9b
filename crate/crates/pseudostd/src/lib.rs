//! Command-line front end and text formats for generalized pseudostandard
//! words. The binary is a thin wrapper around [`cli::run`].

pub mod cli;
pub mod literal;
pub mod svg;

pub use literal::{parse, render, SequenceLiteral};
