#![allow(dead_code)]

use std::collections::BTreeMap;

use proptest::prelude::*;
use zfcat::dst::DefinableClass;
use zfcat::kernel::Formula;
use zfcat::syncat::{from_initial, graph, identity, initial, to_terminal, Arrow};
use zfcat::{FormulaInContext, HfSet, Var};

pub const POOL: [&str; 4] = ["x", "y", "z", "t"];

pub fn pool() -> Vec<Var> {
    POOL.iter().map(|n| Var::new(n)).collect()
}

fn arb_var() -> impl Strategy<Value = Var> {
    (0..POOL.len()).prop_map(|i| Var::new(POOL[i]))
}

/// Kernel formulas over a four-variable pool.
pub fn arb_formula() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![
        6 => (arb_var(), arb_var()).prop_map(|(a, b)| Formula::mem(&a, &b)),
        4 => (arb_var(), arb_var()).prop_map(|(a, b)| Formula::eq(&a, &b)),
        1 => Just(Formula::True),
        1 => Just(Formula::False),
    ];
    leaf.prop_recursive(4, 24, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::And),
            prop::collection::vec(inner.clone(), 2..4).prop_map(Formula::Or),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
            (arb_var(), inner.clone()).prop_map(|(v, f)| Formula::forall(&v, f)),
            (arb_var(), inner).prop_map(|(v, f)| Formula::exists(&v, f)),
        ]
    })
}

/// An environment over `V_4` for the pool.
pub fn arb_env() -> impl Strategy<Value = BTreeMap<Var, HfSet>> {
    prop::array::uniform4(0u64..16).prop_map(|codes| {
        pool().into_iter().zip(codes).map(|(v, c)| (v, HfSet::from_code(c))).collect()
    })
}

/// Renames every binder to a name outside the pool, innermost binders
/// getting larger indices.
pub fn rename_bound(f: &Formula, tag: &str) -> Formula {
    fn go(f: &Formula, tag: &str, env: &BTreeMap<Var, Var>, n: &mut usize) -> Formula {
        let get = |v: &Var| env.get(v).cloned().unwrap_or_else(|| v.clone());
        match f {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Mem(a, b) => Formula::Mem(get(a), get(b)),
            Formula::Eq(a, b) => Formula::Eq(get(a), get(b)),
            Formula::Not(g) => Formula::not(go(g, tag, env, n)),
            Formula::And(gs) => Formula::And(gs.iter().map(|g| go(g, tag, env, n)).collect()),
            Formula::Or(gs) => Formula::Or(gs.iter().map(|g| go(g, tag, env, n)).collect()),
            Formula::Implies(a, b) => Formula::implies(go(a, tag, env, n), go(b, tag, env, n)),
            Formula::Iff(a, b) => Formula::iff(go(a, tag, env, n), go(b, tag, env, n)),
            Formula::Forall(v, g) | Formula::Exists(v, g) => {
                *n += 1;
                let w = Var::new(&format!("{tag}{n}"));
                let mut inner = env.clone();
                inner.insert(v.clone(), w.clone());
                let body = go(g, tag, &inner, n);
                if matches!(f, Formula::Forall(..)) {
                    Formula::forall(&w, body)
                } else {
                    Formula::exists(&w, body)
                }
            }
        }
    }
    go(f, tag, &BTreeMap::new(), &mut 0)
}

pub fn obj(s: &str) -> FormulaInContext {
    FormulaInContext::parse(s).unwrap()
}

pub fn dc(s: &str) -> DefinableClass {
    DefinableClass::parse(s).unwrap()
}

/// Objects of the category-law corpus.
pub fn objects() -> Vec<FormulaInContext> {
    [
        "x |- x = 0",
        "x |- x = 0 \\/ x = 1",
        "x |- x = x",
        "x |- x sub 1",
        "x, y |- x = y",
        "x |- forall t. t notin x",
        "x |- x in 1 \\/ x = 1",
    ]
    .iter()
    .map(|s| obj(s))
    .chain([initial()])
    .collect()
}

fn inclusion(a: &FormulaInContext, b: &FormulaInContext) -> Arrow {
    graph(a, b, |xs, ys, _| Ok(Formula::eqs(xs, ys))).unwrap()
}

fn constant(a: &FormulaInContext, b: &FormulaInContext, value: &str) -> Arrow {
    let c = obj(&format!("v |- v = {value}"));
    graph(a, b, |_, ys, _| Ok(c.at(ys))).unwrap()
}

/// Arrows of the category-law corpus, each with a name.
pub fn arrows() -> Vec<(String, Arrow)> {
    let o = objects();
    let mut out: Vec<(String, Arrow)> = o
        .iter()
        .enumerate()
        .map(|(i, a)| (format!("id{i}"), identity(a)))
        .collect();
    out.push(("inc01".into(), inclusion(&o[0], &o[1])));
    out.push(("inc12".into(), inclusion(&o[1], &o[2])));
    out.push(("inc02".into(), inclusion(&o[0], &o[2])));
    out.push(("inc32".into(), inclusion(&o[3], &o[2])));
    out.push(("inc50".into(), inclusion(&o[5], &o[0])));
    out.push(("inc62".into(), inclusion(&o[6], &o[2])));
    out.push(("zero10".into(), constant(&o[1], &o[0], "0")));
    out.push(("one01".into(), constant(&o[0], &o[1], "1")));
    out.push(("one21".into(), constant(&o[2], &o[1], "1")));
    out.push(("bang1".into(), to_terminal(&o[1]).unwrap()));
    out.push(("bang3".into(), to_terminal(&o[3]).unwrap()));
    out.push(("empty0".into(), from_initial(&o[0]).unwrap()));
    out.push((
        "diag".into(),
        graph(&o[2], &o[4], |xs, ys, _| {
            Ok(Formula::and(vec![Formula::eq(&xs[0], &ys[0]), Formula::eq(&xs[0], &ys[1])]))
        })
        .unwrap(),
    ));
    out.push((
        "fst".into(),
        graph(&o[4], &o[2], |xs, ys, _| Ok(Formula::eq(&xs[0], &ys[0]))).unwrap(),
    ));
    out
}

/// Definable classes used by the small-map and equivalence checks.
pub fn classes() -> Vec<DefinableClass> {
    [
        "x |- x = 0",
        "x |- x = 1",
        "x |- x = 0 \\/ x = 1",
        "x |- x != x",
        "x |- x sub 1",
        "x |- x in 1",
        "x |- forall t. t in x -> t = 0",
        "x |- x = sing(1)",
        "x |- x = <0, 0>",
    ]
    .iter()
    .map(|s| dc(s))
    .collect()
}
