//! The s-expression input language: declarations, commands and the built-in
//! example scripts.

pub mod commands;
pub mod examples;
pub mod script;
pub mod sexpr;

pub use commands::{run_command, Overrides, Report};
pub use script::{parse, Env, Script, Space};
pub use sexpr::{read_all, Sexp};
