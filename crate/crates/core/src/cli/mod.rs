//! The document format and the operations behind the `tsa` commands.

mod document;
mod dot;
mod ops;

pub use document::{Document, GroupDocument, Token};
pub use dot::to_dot;
pub use ops::{
    check_laws, determinize, equiv, minimize, run, to_moore, EquivMode, EquivOutcome,
    MinimizeOptions, MinimizeOutcome, MonadKind, StrategyChoice,
};

use crate::engine::DEFAULT_CAP;
use crate::error::{Error, Result};

/// The cap from `TSA_CAP`, or the default.
pub fn cap_from_env() -> Result<usize> {
    match std::env::var("TSA_CAP") {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::input(format!("TSA_CAP must be a positive integer, found `{v}`"))),
        Err(_) => Ok(DEFAULT_CAP),
    }
}
