use thiserror::Error;

use crate::kernel::Var;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at {line}:{col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },

    #[error("unknown identifier `{name}` in operator position at {line}:{col}")]
    UnknownOperator { name: String, line: usize, col: usize },

    #[error("class term `{0}` used where a set is required")]
    ClassEscape(String),

    #[error("free variable {var} escapes its declared context {context}")]
    EscapingVariable { var: Var, context: String },

    #[error("context variable {0} repeated")]
    DuplicateContextVar(Var),

    #[error("context length mismatch: expected {expected}, got {got}")]
    ContextLength { expected: usize, got: usize },

    #[error("codomain of the first arrow does not match domain of the second")]
    NotComposable,

    #[error("arrows do not share domain and codomain")]
    ParallelMismatch,

    #[error("expected a single-variable context, found {0} variables")]
    NotSingleVariable(usize),

    #[error("universe V_{0} is too large to enumerate (at most V_5)")]
    UniverseTooLarge(u32),

    #[error("code prefix of {0} elements is too large to enumerate")]
    PrefixTooLarge(u64),

    #[error("unrecognized universe `{0}` (expected V0..V5 or C<n>)")]
    BadUniverse(String),

    #[error("unbound free variable {0} during evaluation")]
    UnboundVariable(Var),

    #[error("value for {0} lies outside the universe")]
    OutsideUniverse(Var),

    #[error("evaluation budget of {0} steps exhausted")]
    BudgetExhausted(u64),

    #[error("non-kernel formula cannot be exported: {0}")]
    NotKernel(String),

    #[error("malformed global element: {0}")]
    MalformedGlobal(String),

    #[error("cannot read {0}")]
    Io(String),

    #[error("unknown axiom `{0}`")]
    UnknownAxiom(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
