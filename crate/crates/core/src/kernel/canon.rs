//! Canonical forms for kernel formulas.
//!
//! One pass simplifies bottom-up (constants, flattening, deduplication,
//! double negation, existential pulling through conjunctions, the one-point
//! rule) and then renames bound variables by binding depth, ordering each
//! block of like quantifiers by a structural signature and sorting
//! conjunctions and disjunctions. Passes repeat until nothing changes.

use std::collections::{BTreeMap, BTreeSet};

use super::formula::Formula;
use super::var::{NameSupply, Var};

const MAX_PASSES: usize = 16;
const REFINE_ROUNDS: usize = 3;

pub fn canonicalize(f: &Formula) -> Formula {
    let mut cur = f.clone();
    for _ in 0..MAX_PASSES {
        let next = pass(&cur);
        if next == cur {
            break;
        }
        cur = next;
    }
    cur
}

fn pass(f: &Formula) -> Formula {
    let mut supply = NameSupply::avoiding(f.all_vars().iter());
    let s = simplify(f, &mut supply);
    let stem = bound_stem(&s.free_vars());
    Renamer { stem }.rename(&s, 0, &BTreeMap::new())
}

/// A prefix that no free variable starts with.
fn bound_stem(free: &BTreeSet<Var>) -> String {
    let mut stem = String::from("b");
    while free.iter().any(|v| v.name().starts_with(&stem)) {
        stem.push('b');
    }
    stem
}

fn simplify(f: &Formula, supply: &mut NameSupply) -> Formula {
    use Formula::*;
    match f {
        True | False | Mem(..) => f.clone(),
        Eq(a, b) if a == b => True,
        Eq(..) => f.clone(),
        Not(x) => negate(simplify(x, supply)),
        And(xs) => {
            let items = xs.iter().map(|x| simplify(x, supply)).collect();
            block(Vec::new(), items, supply)
        }
        Or(xs) => {
            let mut items = Vec::new();
            for x in xs {
                match simplify(x, supply) {
                    True => return True,
                    False => {}
                    Or(ys) => items.extend(ys),
                    y => items.push(y),
                }
            }
            dedupe(&mut items);
            Formula::or(items)
        }
        Implies(a, b) => {
            let (a, b) = (simplify(a, supply), simplify(b, supply));
            match (&a, &b) {
                (True, _) => b,
                (False, _) | (_, True) => True,
                (_, False) => negate(a),
                _ if a == b => True,
                _ => Formula::implies(a, b),
            }
        }
        Iff(a, b) => {
            let (a, b) = (simplify(a, supply), simplify(b, supply));
            match (&a, &b) {
                _ if a == b => True,
                (True, _) => b,
                (_, True) => a,
                (False, _) => negate(b),
                (_, False) => negate(a),
                _ => Formula::iff(a, b),
            }
        }
        Exists(v, x) => {
            let body = simplify(x, supply);
            block(vec![v.clone()], vec![body], supply)
        }
        Forall(v, x) => {
            let body = simplify(x, supply);
            forall_one_point(v, body, supply)
        }
    }
}

fn negate(f: Formula) -> Formula {
    match f {
        Formula::True => Formula::False,
        Formula::False => Formula::True,
        Formula::Not(x) => *x,
        x => Formula::not(x),
    }
}

fn dedupe(items: &mut Vec<Formula>) {
    let mut seen = BTreeSet::new();
    items.retain(|x| seen.insert(x.clone()));
}

/// Builds `∃vars(⋀items)`, pulling existentials out of the conjuncts and
/// applying the one-point rule to the resulting block.
fn block(mut vars: Vec<Var>, items: Vec<Formula>, supply: &mut NameSupply) -> Formula {
    let mut todo: Vec<Formula> = items;
    let mut done: Vec<Formula> = Vec::new();
    let mut pulled: Vec<(Var, Formula)> = Vec::new();
    while let Some(x) = todo.pop() {
        match x {
            Formula::True => {}
            Formula::False => return Formula::False,
            Formula::And(ys) => todo.extend(ys),
            Formula::Exists(v, body) => pulled.push((v, *body)),
            y => done.push(y),
        }
        if todo.is_empty() && !pulled.is_empty() {
            let taken = std::mem::take(&mut pulled);
            for (k, (v, body)) in taken.iter().cloned().enumerate() {
                let clash = vars.contains(&v)
                    || done.iter().chain(&todo).any(|d| d.has_free(&v))
                    || taken[k + 1..].iter().any(|(_, b)| b.has_free(&v));
                if clash {
                    let w = supply.fresh(v.name());
                    todo.push(body.rename(&v, &w));
                    vars.push(w);
                } else {
                    todo.push(body);
                    vars.push(v);
                }
            }
        }
    }
    done.reverse();

    loop {
        let hit = vars.iter().enumerate().find_map(|(i, v)| {
            done.iter().enumerate().find_map(|(j, d)| match d {
                Formula::Eq(a, b) if a == v && b != v => Some((i, j, b.clone())),
                Formula::Eq(a, b) if b == v && a != v => Some((i, j, a.clone())),
                _ => None,
            })
        });
        let Some((i, j, t)) = hit else { break };
        let v = vars.remove(i);
        done.remove(j);
        let m = BTreeMap::from([(v, t)]);
        let mut next = Vec::new();
        for d in done.drain(..) {
            match d.substitute(&m) {
                Formula::Eq(a, b) if a == b => {}
                y => next.push(y),
            }
        }
        done = next;
    }

    let mut done = merge_equal_vars(done);
    dedupe(&mut done);
    let body = Formula::and(done);
    Formula::exists_all(&vars, body)
}

/// Rewrites the conjuncts to the least variable of each class of the
/// variable equalities among them, keeping one equality per other member.
fn merge_equal_vars(items: Vec<Formula>) -> Vec<Formula> {
    let mut parent: BTreeMap<Var, Var> = BTreeMap::new();
    fn root(parent: &BTreeMap<Var, Var>, v: &Var) -> Var {
        let mut v = v.clone();
        while let Some(p) = parent.get(&v) {
            v = p.clone();
        }
        v
    }
    let mut rest = Vec::new();
    for d in items {
        match d {
            Formula::Eq(a, b) if a != b => {
                let (ra, rb) = (root(&parent, &a), root(&parent, &b));
                if ra != rb {
                    let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                    parent.insert(hi, lo);
                }
            }
            y => rest.push(y),
        }
    }
    if parent.is_empty() {
        return rest;
    }
    let m: BTreeMap<Var, Var> = parent.keys().map(|v| (v.clone(), root(&parent, v))).collect();
    let mut out: Vec<Formula> = m.iter().map(|(v, r)| Formula::eq(r, v)).collect();
    out.extend(rest.iter().map(|d| d.substitute(&m)));
    out
}

/// `∀v((v=t ∧ A) → B)` becomes `(A → B)[t/v]`.
fn forall_one_point(v: &Var, body: Formula, supply: &mut NameSupply) -> Formula {
    if let Formula::Implies(a, b) = &body {
        let conj: Vec<Formula> = match &**a {
            Formula::And(xs) => xs.clone(),
            x => vec![x.clone()],
        };
        let hit = conj.iter().position(|c| match c {
            Formula::Eq(x, y) => (x == v) != (y == v),
            _ => false,
        });
        if let Some(j) = hit {
            let t = match &conj[j] {
                Formula::Eq(x, y) if x == v => y.clone(),
                Formula::Eq(x, _) => x.clone(),
                _ => unreachable!(),
            };
            let rest: Vec<Formula> = conj
                .iter()
                .enumerate()
                .filter(|(k, _)| *k != j)
                .map(|(_, c)| c.clone())
                .collect();
            let m = BTreeMap::from([(v.clone(), t)]);
            let f = Formula::implies(Formula::and(rest), (**b).clone()).substitute(&m);
            return simplify(&f, supply);
        }
    }
    Formula::forall(v, body)
}

struct Renamer {
    stem: String,
}

#[derive(Clone, Copy, PartialEq)]
enum Quant {
    All,
    Some,
}

impl Renamer {
    fn name(&self, depth: usize) -> Var {
        Var::new(&format!("{}{}", self.stem, depth))
    }

    fn placeholder(&self, tag: &str) -> Var {
        Var::new(&format!("{}{}", self.stem, tag))
    }

    fn rename(&self, f: &Formula, depth: usize, env: &BTreeMap<Var, Var>) -> Formula {
        use Formula::*;
        let get = |v: &Var| env.get(v).cloned().unwrap_or_else(|| v.clone());
        match f {
            True => True,
            False => False,
            Mem(a, b) => Mem(get(a), get(b)),
            Eq(a, b) => {
                let (a, b) = (get(a), get(b));
                if b < a {
                    Eq(b, a)
                } else {
                    Eq(a, b)
                }
            }
            Not(x) => Not(Box::new(self.rename(x, depth, env))),
            And(xs) | Or(xs) => {
                let mut ys: Vec<Formula> = xs.iter().map(|x| self.rename(x, depth, env)).collect();
                ys.sort();
                ys.dedup();
                if matches!(f, And(_)) {
                    Formula::and(ys)
                } else {
                    Formula::or(ys)
                }
            }
            Implies(a, b) => Formula::implies(self.rename(a, depth, env), self.rename(b, depth, env)),
            Iff(a, b) => {
                let (x, y) = (self.rename(a, depth, env), self.rename(b, depth, env));
                if y < x {
                    Formula::iff(y, x)
                } else {
                    Formula::iff(x, y)
                }
            }
            Forall(..) | Exists(..) => {
                let q = if matches!(f, Forall(..)) { Quant::All } else { Quant::Some };
                let mut vars = Vec::new();
                let mut body = f;
                while let (Quant::All, Forall(v, b)) | (Quant::Some, Exists(v, b)) = (q, body) {
                    vars.push(v.clone());
                    body = b;
                }
                // Shadowed duplicates keep only the innermost binder; vacuous
                // binders go, the domain being nonempty.
                let mut uniq: Vec<Var> = Vec::new();
                for v in vars.iter().rev() {
                    if !uniq.contains(v) && body.has_free(v) {
                        uniq.push(v.clone());
                    }
                }
                uniq.reverse();
                let order = self.order_block(&uniq, body, depth, env);
                let mut inner = env.clone();
                let mut names = Vec::new();
                for (k, v) in order.iter().enumerate() {
                    let n = self.name(depth + k + 1);
                    inner.insert(v.clone(), n.clone());
                    names.push(n);
                }
                let b = self.rename(body, depth + order.len(), &inner);
                match q {
                    Quant::All => Formula::forall_all(&names, b),
                    Quant::Some => Formula::exists_all(&names, b),
                }
            }
        }
    }

    /// Orders block variables by iterated structural signatures of the body;
    /// ties keep their original order.
    fn order_block(
        &self,
        vars: &[Var],
        body: &Formula,
        depth: usize,
        env: &BTreeMap<Var, Var>,
    ) -> Vec<Var> {
        if vars.len() < 2 {
            return vars.to_vec();
        }
        let inner_depth = depth + vars.len();
        let mut rank: Vec<usize> = vec![0; vars.len()];
        for _ in 0..REFINE_ROUNDS {
            let sigs: Vec<(usize, String)> = (0..vars.len())
                .map(|i| {
                    let mut e = env.clone();
                    for (j, w) in vars.iter().enumerate() {
                        let tag = if i == j {
                            "me".to_string()
                        } else {
                            format!("r{}x", rank[j])
                        };
                        e.insert(w.clone(), self.placeholder(&tag));
                    }
                    (rank[i], self.rename(body, inner_depth, &e).to_string())
                })
                .collect();
            let mut sorted: Vec<&(usize, String)> = sigs.iter().collect();
            sorted.sort();
            sorted.dedup();
            let next: Vec<usize> = sigs
                .iter()
                .map(|s| sorted.iter().position(|t| *t == s).unwrap())
                .collect();
            if next == rank {
                break;
            }
            rank = next;
        }
        let mut idx: Vec<usize> = (0..vars.len()).collect();
        idx.sort_by_key(|&i| (rank[i], i));
        idx.into_iter().map(|i| vars[i].clone()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::elaborate::elaborate;
    use crate::kernel::parse::parse;

    fn k(s: &str) -> Formula {
        elaborate(&parse(s).unwrap()).unwrap()
    }

    #[test]
    fn one_point() {
        let f = k("exists m. m = x /\\ m in y");
        assert_eq!(canonicalize(&f), k("x in y"));
    }

    #[test]
    fn associativity_of_conjunction() {
        let a = canonicalize(&k("(a in b /\\ c in d) /\\ e in f"));
        let b = canonicalize(&k("a in b /\\ (c in d /\\ e in f)"));
        assert_eq!(a, b);
        let c = canonicalize(&k("e in f /\\ a in b /\\ c in d"));
        assert_eq!(a, c);
    }

    #[test]
    fn existential_pull_and_block_order() {
        let a = canonicalize(&k("exists y. (x in y /\\ exists z. (y in z /\\ z in w))"));
        let b = canonicalize(&k("exists z. exists y. (x in y /\\ y in z /\\ z in w)"));
        assert_eq!(a, b);
    }

    #[test]
    fn idempotent_and_closed_under_alpha() {
        for s in [
            "exists y. x = y",
            "forall t. (t in x -> exists s. (t = s /\\ s in y))",
            "x = 0 /\\ y = 1",
            "<x, y> in f \\/ ~~(x = x)",
        ] {
            let c = canonicalize(&k(s));
            assert_eq!(canonicalize(&c), c, "{s}");
            assert!(c.free_vars().is_subset(&k(s).free_vars()));
        }
        let a = canonicalize(&k("exists q. (q in x /\\ forall r. r in q)"));
        let b = canonicalize(&k("exists z. (z in x /\\ forall y. y in z)"));
        assert_eq!(a, b);
    }

    #[test]
    fn forall_one_point() {
        let f = canonicalize(&k("forall v. (v = x -> v in y)"));
        assert_eq!(f, k("x in y"));
    }

    #[test]
    fn stem_avoids_free_names() {
        let f = canonicalize(&k("exists y. (y in b1 /\\ b1 in y)"));
        assert!(f.free_vars().contains(&Var::new("b1")));
        assert!(matches!(f, Formula::Exists(ref v, _) if v.name() == "bb1"));
    }

    #[test]
    fn pulled_binders_do_not_capture() {
        let f = canonicalize(&k("(exists y. z = x) /\\ (exists x. t in x)"));
        assert_eq!(f.free_vars(), [Var::new("t"), Var::new("x"), Var::new("z")].into());
    }

    #[test]
    fn vacuous_binders_drop() {
        let a = canonicalize(&k("forall x. forall x. x in x"));
        let b = canonicalize(&k("forall a. forall c. c in c"));
        assert_eq!(a, b);
    }
}
