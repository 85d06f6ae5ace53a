//! Command-line front end: expression evaluation, Möbius action, the
//! verification harnesses and the disk function-theory demos.

pub mod app;
pub mod commands;
pub mod expr;

pub use app::{run, Outcome, SEED_ENV};
