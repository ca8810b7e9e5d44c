//! Inputs shared by the benchmarks.

use zfcat::kernel::kernel;
use zfcat::{Formula, FormulaInContext};

/// Kernel formulas of increasing quantifier depth.
pub fn formulas() -> Vec<(&'static str, Formula)> {
    [
        ("ext", "forall x y. ((forall t. (t in x <-> t in y)) -> x = y)"),
        ("found", "forall x. (x != 0 -> exists z. (z in x /\\ forall t. (t in x -> t notin z)))"),
        ("union", "forall x. exists z. forall t. (t in z <-> exists y. (t in y /\\ y in x))"),
        ("pair", "forall x y. exists z. forall t. (t in z <-> t = x \\/ t = y)"),
    ]
    .into_iter()
    .map(|(n, s)| (n, kernel(s).expect("corpus formula")))
    .collect()
}

pub fn classes() -> Vec<FormulaInContext> {
    ["x |- x = 0", "x |- x = 0 \\/ x = 1", "x |- Fun(x)", "x, y |- x sub y"]
        .into_iter()
        .map(|s| FormulaInContext::parse(s).expect("corpus class"))
        .collect()
}
