//! Formula languages: variables, kernel and surface syntax, parsing,
//! elaboration and canonical forms.

pub mod canon;
pub mod elaborate;
pub mod formula;
pub mod parse;
pub mod surface;
pub mod var;

pub use canon::canonicalize;
pub use elaborate::{elaborate, elaborate_avoiding, is_kernel};
pub use formula::Formula;
pub use parse::{parse, parse_in_context, parse_sequent, parse_with, ClassEnv};
pub use surface::{ClassTerm, Pred, Surface, Term};
pub use var::{is_valid_name, NameSupply, Var};

use crate::error::Result;

/// Parses and elaborates in one step.
pub fn kernel(text: &str) -> Result<Formula> {
    elaborate(&parse(text)?)
}
