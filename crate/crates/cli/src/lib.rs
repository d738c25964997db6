//! File formats, reports and command bodies for the `quatplace` tool.
//!
//! All inputs and reports are JSON. Quaternions are `[w, x, y, z]` arrays and
//! matrices are nested row lists of them. Reports are emitted in canonical
//! form (sorted keys, 17 significant digits) and carry a SHA-256 digest of
//! the inputs.

pub mod canonical;
pub mod commands;
pub mod error;
pub mod input;

pub use commands::Outcome;
pub use error::{exit, CliError};
