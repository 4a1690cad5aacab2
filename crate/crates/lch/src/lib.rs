//! File formats, fixtures and the command-line front end.

pub mod acceptance;
pub mod analysis;
pub mod cli;
pub mod commands;
pub mod error;
pub mod fixtures;
pub mod json;
pub mod text;

pub use error::{Error, Result};
