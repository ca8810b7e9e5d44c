//! Formulas in context over ZF, the syntactic category they form, definable
//! sets and small maps, the internal category `SET`, and a hereditarily
//! finite model oracle for checking the proof obligations the constructions
//! generate.

pub mod axioms;
pub mod dst;
pub mod equivalence;
pub mod error;
pub mod export;
pub mod hforacle;
pub mod internal;
pub mod kernel;
pub mod obligation;
pub mod smallmaps;
pub mod syncat;

pub use axioms::{axiom, AxiomId};
pub use error::{Error, Result};
pub use hforacle::{HfSet, Oracle, Universe, Verdict};
pub use kernel::{Formula, Surface, Var};
pub use obligation::{Obligation, Tag};
pub use export::{parse_fof, to_tptp, ObligationBundle};
pub use syncat::{Arrow, FormulaInContext};
