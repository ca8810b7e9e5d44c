//! Unfolding of pseudo-terms and defined predicates into kernel formulas.
//!
//! Every pseudo-term occurrence in an atom becomes a fresh existentially
//! bound variable carrying its defining formula, innermost terms outermost:
//! `φ(σ(t))` becomes `∃w(∀u(u∈w ↔ (u∈t ∨ u=t)) ∧ φ(w))`.

use std::collections::{BTreeMap, BTreeSet};

use super::formula::Formula;
use super::surface::{Pred, Surface, Term};
use super::var::{NameSupply, Var};
use crate::error::{Error, Result};

pub fn elaborate(f: &Surface) -> Result<Formula> {
    let mut names = BTreeSet::new();
    surface_vars(f, &mut names);
    Elaborator {
        supply: NameSupply::avoiding(&names),
    }
    .elab(f)
}

/// Elaborates with an explicit name supply, for callers that hold
/// additional variables the output must not capture.
pub fn elaborate_avoiding<'a>(f: &Surface, avoid: impl IntoIterator<Item = &'a Var>) -> Result<Formula> {
    let mut names: BTreeSet<Var> = avoid.into_iter().cloned().collect();
    surface_vars(f, &mut names);
    Elaborator {
        supply: NameSupply::avoiding(&names),
    }
    .elab(f)
}

fn term_vars(t: &Term, out: &mut BTreeSet<Var>) {
    match t {
        Term::Var(v) => {
            out.insert(v.clone());
        }
        Term::Zero | Term::One => {}
        Term::Sigma(a) | Term::Sing(a) | Term::Union(a) | Term::Dom(a) | Term::Ran(a) => {
            term_vars(a, out)
        }
        Term::Pair(a, b) | Term::Upair(a, b) => {
            term_vars(a, out);
            term_vars(b, out);
        }
        Term::Class(c) => {
            out.insert(c.var.clone());
            surface_vars(&c.body, out);
        }
    }
}

pub(crate) fn surface_vars(f: &Surface, out: &mut BTreeSet<Var>) {
    match f {
        Surface::True | Surface::False => {}
        Surface::Mem(a, b) | Surface::Eq(a, b) | Surface::Sub(a, b) => {
            term_vars(a, out);
            term_vars(b, out);
        }
        Surface::Pred(_, t) => term_vars(t, out),
        Surface::Not(x) => surface_vars(x, out),
        Surface::And(xs) | Surface::Or(xs) => xs.iter().for_each(|x| surface_vars(x, out)),
        Surface::Implies(a, b) | Surface::Iff(a, b) => {
            surface_vars(a, out);
            surface_vars(b, out);
        }
        Surface::Forall(v, x) | Surface::Exists(v, x) => {
            out.insert(v.clone());
            surface_vars(x, out);
        }
    }
}

struct Elaborator {
    supply: NameSupply,
}

fn tv(v: &Var) -> Term {
    Term::var(v)
}

impl Elaborator {
    fn elab(&mut self, f: &Surface) -> Result<Formula> {
        Ok(match f {
            Surface::True => Formula::True,
            Surface::False => Formula::False,
            Surface::Not(x) => Formula::not(self.elab(x)?),
            Surface::And(xs) => Formula::And(self.elab_all(xs)?),
            Surface::Or(xs) => Formula::Or(self.elab_all(xs)?),
            Surface::Implies(a, b) => Formula::implies(self.elab(a)?, self.elab(b)?),
            Surface::Iff(a, b) => Formula::iff(self.elab(a)?, self.elab(b)?),
            Surface::Forall(v, x) => Formula::forall(v, self.elab(x)?),
            Surface::Exists(v, x) => Formula::exists(v, self.elab(x)?),
            Surface::Sub(a, b) => {
                let t = self.supply.fresh("t");
                let s = Surface::forall(
                    &t,
                    Surface::implies(
                        Surface::Mem(tv(&t), a.clone()),
                        Surface::Mem(tv(&t), b.clone()),
                    ),
                );
                self.elab(&s)?
            }
            Surface::Mem(a, Term::Class(c)) => {
                let body = self.elab(&c.body)?;
                let mut defs = Vec::new();
                let a = self.flatten(a, &mut defs)?;
                let m = BTreeMap::from([(c.var.clone(), a)]);
                wrap(defs, body.substitute(&m))
            }
            Surface::Mem(a, Term::Dom(g)) => {
                let s = self.supply.fresh("s");
                let p = Surface::Mem(Term::pair(a.clone(), tv(&s)), (**g).clone());
                self.elab(&Surface::exists(&s, p))?
            }
            Surface::Mem(a, Term::Ran(g)) => {
                let s = self.supply.fresh("s");
                let p = Surface::Mem(Term::pair(tv(&s), a.clone()), (**g).clone());
                self.elab(&Surface::exists(&s, p))?
            }
            Surface::Mem(a, b) => {
                let mut defs = Vec::new();
                let a = self.flatten(a, &mut defs)?;
                let b = self.flatten(b, &mut defs)?;
                wrap(defs, Formula::mem(&a, &b))
            }
            Surface::Eq(a, b) => {
                let mut defs = Vec::new();
                let a = self.flatten(a, &mut defs)?;
                let b = self.flatten(b, &mut defs)?;
                wrap(defs, Formula::eq(&a, &b))
            }
            Surface::Pred(p, t) => {
                let mut defs = Vec::new();
                let x = self.flatten(t, &mut defs)?;
                let body = match p {
                    Pred::Fun => self.fun(&x)?,
                    Pred::On => self.ordinal(&x)?,
                    Pred::Nat => self.natural(&x)?,
                };
                wrap(defs, body)
            }
        })
    }

    fn elab_all(&mut self, xs: &[Surface]) -> Result<Vec<Formula>> {
        xs.iter().map(|x| self.elab(x)).collect()
    }

    /// Reduces a pseudo-term to a variable, pushing `(w, definition of w)`
    /// for each compound subterm in dependency order.
    fn flatten(&mut self, t: &Term, defs: &mut Vec<(Var, Formula)>) -> Result<Var> {
        let (w, def) = match t {
            Term::Var(v) => return Ok(v.clone()),
            Term::Class(c) => return Err(Error::ClassEscape(format!("{{{} | {}}}", c.var, c.body))),
            Term::Zero => {
                let w = self.supply.fresh("w");
                let u = self.supply.fresh("u");
                let def = Formula::forall(&u, Formula::not(Formula::mem(&u, &w)));
                (w, def)
            }
            Term::One => return self.flatten(&Term::sigma(Term::Zero), defs),
            Term::Sigma(a) => {
                let a = self.flatten(a, defs)?;
                self.describe(|u| Surface::or(vec![Surface::mem(u, &a), Surface::eq(u, &a)]))?
            }
            Term::Sing(a) => {
                let a = self.flatten(a, defs)?;
                self.describe(|u| Surface::eq(u, &a))?
            }
            Term::Upair(a, b) => {
                let a = self.flatten(a, defs)?;
                let b = self.flatten(b, defs)?;
                self.describe(|u| Surface::or(vec![Surface::eq(u, &a), Surface::eq(u, &b)]))?
            }
            Term::Pair(a, b) => {
                let a = self.flatten(a, defs)?;
                let b = self.flatten(b, defs)?;
                let s = self.flatten(&Term::sing(tv(&a)), defs)?;
                let p = self.flatten(&Term::upair(tv(&a), tv(&b)), defs)?;
                self.describe(|u| Surface::or(vec![Surface::eq(u, &s), Surface::eq(u, &p)]))?
            }
            Term::Union(a) => {
                let a = self.flatten(a, defs)?;
                let v = self.supply.fresh("v");
                self.describe(|u| {
                    Surface::exists(&v, Surface::and(vec![Surface::mem(u, &v), Surface::mem(&v, &a)]))
                })?
            }
            Term::Dom(a) => {
                let a = self.flatten(a, defs)?;
                self.describe(|u| Surface::Mem(tv(u), Term::dom(tv(&a))))?
            }
            Term::Ran(a) => {
                let a = self.flatten(a, defs)?;
                self.describe(|u| Surface::Mem(tv(u), Term::ran(tv(&a))))?
            }
        };
        defs.push((w.clone(), def));
        Ok(w)
    }

    /// `∀u(u∈w ↔ body(u))` for a fresh `w`.
    fn describe(&mut self, body: impl FnOnce(&Var) -> Surface) -> Result<(Var, Formula)> {
        let w = self.supply.fresh("w");
        let u = self.supply.fresh("u");
        let s = Surface::forall(&u, Surface::iff(Surface::mem(&u, &w), body(&u)));
        Ok((w, self.elab(&s)?))
    }

    fn fun(&mut self, f: &Var) -> Result<Formula> {
        let sp = |sup: &mut NameSupply, b| sup.fresh(b);
        let t = sp(&mut self.supply, "t");
        let (s, s1, s2) = (
            sp(&mut self.supply, "s"),
            sp(&mut self.supply, "s"),
            sp(&mut self.supply, "s"),
        );
        let pairs = Surface::forall(
            &t,
            Surface::implies(
                Surface::mem(&t, f),
                Surface::exists_all(&[s.clone(), s1.clone()], Surface::eq(&t, Term::pair(tv(&s), tv(&s1)))),
            ),
        );
        let single = Surface::forall_all(
            &[s.clone(), s1.clone(), s2.clone()],
            Surface::implies(
                Surface::and(vec![
                    Surface::mem(Term::pair(tv(&s), tv(&s1)), f),
                    Surface::mem(Term::pair(tv(&s), tv(&s2)), f),
                ]),
                Surface::eq(&s1, &s2),
            ),
        );
        self.elab(&Surface::and(vec![pairs, single]))
    }

    fn ordinal(&mut self, t: &Var) -> Result<Formula> {
        let s = self.supply.fresh("s");
        let s1 = self.supply.fresh("s");
        let s2 = self.supply.fresh("s");
        let trans_order = Surface::forall_all(
            &[s.clone(), s1.clone(), s2.clone()],
            Surface::implies(
                Surface::and(vec![
                    Surface::mem(&s, t),
                    Surface::mem(&s1, t),
                    Surface::mem(&s2, t),
                    Surface::mem(&s, &s1),
                    Surface::mem(&s1, &s2),
                ]),
                Surface::mem(&s, &s2),
            ),
        );
        let trichotomy = Surface::forall_all(
            &[s.clone(), s1.clone()],
            Surface::implies(
                Surface::and(vec![
                    Surface::mem(&s, t),
                    Surface::mem(&s1, t),
                    Surface::not(Surface::eq(&s, &s1)),
                ]),
                Surface::or(vec![Surface::mem(&s, &s1), Surface::mem(&s1, &s)]),
            ),
        );
        let transitive = Surface::forall(
            &s,
            Surface::implies(Surface::mem(&s, t), Surface::sub(&s, t)),
        );
        self.elab(&Surface::and(vec![trans_order, trichotomy, transitive]))
    }

    fn natural(&mut self, x: &Var) -> Result<Formula> {
        let on = self.ordinal(x)?;
        let s = self.supply.fresh("s");
        let s1 = self.supply.fresh("s");
        let succ = Term::sigma(tv(x));
        let fin = Surface::forall(
            &s,
            Surface::implies(
                Surface::Mem(tv(&s), succ.clone()),
                Surface::or(vec![
                    Surface::eq(&s, Term::Zero),
                    Surface::exists(
                        &s1,
                        Surface::and(vec![
                            Surface::Mem(tv(&s1), succ),
                            Surface::eq(&s, Term::sigma(tv(&s1))),
                        ]),
                    ),
                ]),
            ),
        );
        Ok(Formula::and(vec![on, self.elab(&fin)?]))
    }
}

fn wrap(defs: Vec<(Var, Formula)>, body: Formula) -> Formula {
    defs.into_iter()
        .rev()
        .fold(body, |acc, (w, def)| Formula::exists(&w, Formula::and(vec![def, acc])))
}

/// Checks by traversal that every atom relates two variables.
pub fn is_kernel(f: &Formula) -> bool {
    match f {
        Formula::True | Formula::False | Formula::Mem(..) | Formula::Eq(..) => true,
        Formula::Not(x) | Formula::Forall(_, x) | Formula::Exists(_, x) => is_kernel(x),
        Formula::And(xs) | Formula::Or(xs) => xs.iter().all(is_kernel),
        Formula::Implies(a, b) | Formula::Iff(a, b) => is_kernel(a) && is_kernel(b),
    }
}
