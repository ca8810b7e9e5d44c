use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::var::{NameSupply, Var};

/// First-order formula over `∈` and `=` whose atoms carry variables only.
///
/// Conjunction and disjunction are n-ary; an empty `And` is never built by the
/// smart constructors (they return `True`/`False` instead).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Formula {
    True,
    False,
    Mem(Var, Var),
    Eq(Var, Var),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(Var, Box<Formula>),
    Exists(Var, Box<Formula>),
}

use Formula::*;

impl Formula {
    pub fn mem(a: &Var, b: &Var) -> Formula {
        Mem(a.clone(), b.clone())
    }

    pub fn eq(a: &Var, b: &Var) -> Formula {
        Eq(a.clone(), b.clone())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Not(Box::new(f))
    }

    pub fn and(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => True,
            1 => fs.pop().unwrap(),
            _ => And(fs),
        }
    }

    pub fn or(mut fs: Vec<Formula>) -> Formula {
        match fs.len() {
            0 => False,
            1 => fs.pop().unwrap(),
            _ => Or(fs),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &Var, f: Formula) -> Formula {
        Forall(v.clone(), Box::new(f))
    }

    pub fn exists(v: &Var, f: Formula) -> Formula {
        Exists(v.clone(), Box::new(f))
    }

    pub fn forall_all(vs: &[Var], f: Formula) -> Formula {
        vs.iter().rev().fold(f, |acc, v| Formula::forall(v, acc))
    }

    pub fn exists_all(vs: &[Var], f: Formula) -> Formula {
        vs.iter().rev().fold(f, |acc, v| Formula::exists(v, acc))
    }

    /// `∃!v. f` as `∃v(f ∧ ∀v′(f[v′/v] → v′ = v))`.
    pub fn exists_unique(v: &Var, f: Formula) -> Formula {
        let mut supply = NameSupply::avoiding(f.all_vars().iter());
        supply.avoid(v);
        let v2 = supply.fresh(v.name());
        let renamed = f.substitute(&BTreeMap::from([(v.clone(), v2.clone())]));
        Formula::exists(
            v,
            Formula::and(vec![
                f,
                Formula::forall(&v2, Formula::implies(renamed, Formula::eq(&v2, v))),
            ]),
        )
    }

    /// Pairwise equality of two equally long variable lists.
    pub fn eqs(xs: &[Var], ys: &[Var]) -> Formula {
        assert_eq!(xs.len(), ys.len());
        Formula::and(xs.iter().zip(ys).map(|(a, b)| Formula::eq(a, b)).collect())
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, True | False | Mem(..) | Eq(..))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        let mut note = |v: &Var, bound: &Vec<Var>| {
            if !bound.contains(v) {
                out.insert(v.clone());
            }
        };
        match self {
            True | False => {}
            Mem(a, b) | Eq(a, b) => {
                note(a, bound);
                note(b, bound);
            }
            Not(f) => f.collect_free(bound, out),
            And(fs) | Or(fs) => fs.iter().for_each(|f| f.collect_free(bound, out)),
            Implies(a, b) | Iff(a, b) => {
                a.collect_free(bound, out);
                b.collect_free(bound, out);
            }
            Forall(v, f) | Exists(v, f) => {
                bound.push(v.clone());
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    pub fn has_free(&self, v: &Var) -> bool {
        match self {
            True | False => false,
            Mem(a, b) | Eq(a, b) => a == v || b == v,
            Not(f) => f.has_free(v),
            And(fs) | Or(fs) => fs.iter().any(|f| f.has_free(v)),
            Implies(a, b) | Iff(a, b) => a.has_free(v) || b.has_free(v),
            Forall(w, f) | Exists(w, f) => w != v && f.has_free(v),
        }
    }

    /// Every variable occurring anywhere, bound or free.
    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.visit_vars(&mut |v| {
            out.insert(v.clone());
        });
        out
    }

    fn visit_vars(&self, k: &mut impl FnMut(&Var)) {
        match self {
            True | False => {}
            Mem(a, b) | Eq(a, b) => {
                k(a);
                k(b);
            }
            Not(f) => f.visit_vars(k),
            And(fs) | Or(fs) => fs.iter().for_each(|f| f.visit_vars(k)),
            Implies(a, b) | Iff(a, b) => {
                a.visit_vars(k);
                b.visit_vars(k);
            }
            Forall(v, f) | Exists(v, f) => {
                k(v);
                f.visit_vars(k);
            }
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            True | False | Mem(..) | Eq(..) => 1,
            Not(f) | Forall(_, f) | Exists(_, f) => 1 + f.size(),
            And(fs) | Or(fs) => 1 + fs.iter().map(Formula::size).sum::<usize>(),
            Implies(a, b) | Iff(a, b) => 1 + a.size() + b.size(),
        }
    }

    /// Simultaneous capture-avoiding substitution of free occurrences.
    pub fn substitute(&self, m: &BTreeMap<Var, Var>) -> Formula {
        if m.is_empty() {
            return self.clone();
        }
        let mut supply = NameSupply::avoiding(self.all_vars().iter());
        supply.avoid_all(m.values());
        self.subst_rec(m, &mut supply)
    }

    fn subst_rec(&self, m: &BTreeMap<Var, Var>, supply: &mut NameSupply) -> Formula {
        let get = |v: &Var| m.get(v).cloned().unwrap_or_else(|| v.clone());
        match self {
            True => True,
            False => False,
            Mem(a, b) => Mem(get(a), get(b)),
            Eq(a, b) => Eq(get(a), get(b)),
            Not(f) => Not(Box::new(f.subst_rec(m, supply))),
            And(fs) => And(fs.iter().map(|f| f.subst_rec(m, supply)).collect()),
            Or(fs) => Or(fs.iter().map(|f| f.subst_rec(m, supply)).collect()),
            Implies(a, b) => Implies(
                Box::new(a.subst_rec(m, supply)),
                Box::new(b.subst_rec(m, supply)),
            ),
            Iff(a, b) => Iff(
                Box::new(a.subst_rec(m, supply)),
                Box::new(b.subst_rec(m, supply)),
            ),
            Forall(v, f) | Exists(v, f) => {
                let mut inner = m.clone();
                inner.remove(v);
                // Only mappings that actually fire below can cause capture.
                let captures = inner
                    .iter()
                    .any(|(from, to)| to == v && f.has_free(from));
                let (v2, body) = if captures {
                    let v2 = supply.fresh(v.name());
                    inner.insert(v.clone(), v2.clone());
                    (v2, f.subst_rec(&inner, supply))
                } else if inner.is_empty() {
                    (v.clone(), (**f).clone())
                } else {
                    (v.clone(), f.subst_rec(&inner, supply))
                };
                match self {
                    Forall(..) => Forall(v2, Box::new(body)),
                    _ => Exists(v2, Box::new(body)),
                }
            }
        }
    }

    pub fn rename(&self, from: &Var, to: &Var) -> Formula {
        self.substitute(&BTreeMap::from([(from.clone(), to.clone())]))
    }

    /// Equality up to consistent renaming of bound variables.
    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_rec(self, other, &mut Vec::new())
    }
}

fn alpha_rec(f: &Formula, g: &Formula, env: &mut Vec<(Var, Var)>) -> bool {
    // Innermost binding wins; a variable bound on one side must be bound to
    // its partner on the other.
    let var_eq = |a: &Var, b: &Var, env: &Vec<(Var, Var)>| {
        for (l, r) in env.iter().rev() {
            if l == a || r == b {
                return l == a && r == b;
            }
        }
        a == b
    };
    match (f, g) {
        (True, True) | (False, False) => true,
        (Mem(a, b), Mem(c, d)) | (Eq(a, b), Eq(c, d)) => var_eq(a, c, env) && var_eq(b, d, env),
        (Not(a), Not(b)) => alpha_rec(a, b, env),
        (And(xs), And(ys)) | (Or(xs), Or(ys)) => {
            xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| alpha_rec(a, b, env))
        }
        (Implies(a, b), Implies(c, d)) | (Iff(a, b), Iff(c, d)) => {
            alpha_rec(a, c, env) && alpha_rec(b, d, env)
        }
        (Forall(v, a), Forall(w, b)) | (Exists(v, a), Exists(w, b)) => {
            env.push((v.clone(), w.clone()));
            let r = alpha_rec(a, b, env);
            env.pop();
            r
        }
        _ => false,
    }
}

// Precedence levels shared with the surface printer.
pub(crate) const P_QUANT: u8 = 0;
pub(crate) const P_IFF: u8 = 1;
pub(crate) const P_IMP: u8 = 2;
pub(crate) const P_OR: u8 = 3;
pub(crate) const P_AND: u8 = 4;
pub(crate) const P_NOT: u8 = 5;
pub(crate) const P_ATOM: u8 = 6;

impl Formula {
    fn prec(&self) -> u8 {
        match self {
            Forall(..) | Exists(..) => P_QUANT,
            Iff(..) => P_IFF,
            Implies(..) => P_IMP,
            Or(..) => P_OR,
            And(..) => P_AND,
            Not(..) => P_NOT,
            _ => P_ATOM,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, need: u8) -> fmt::Result {
        let paren = self.prec() < need;
        if paren {
            f.write_str("(")?;
        }
        match self {
            True => f.write_str("true")?,
            False => f.write_str("false")?,
            Mem(a, b) => write!(f, "{a} in {b}")?,
            Eq(a, b) => write!(f, "{a} = {b}")?,
            Not(x) => {
                f.write_str("~")?;
                x.fmt_prec(f, P_NOT)?;
            }
            And(xs) | Or(xs) => {
                let (sep, need) = if matches!(self, And(_)) {
                    (" /\\ ", P_NOT)
                } else {
                    (" \\/ ", P_AND)
                };
                for (i, x) in xs.iter().enumerate() {
                    if i > 0 {
                        f.write_str(sep)?;
                    }
                    x.fmt_prec(f, need)?;
                }
            }
            Implies(a, b) => {
                a.fmt_prec(f, P_OR)?;
                f.write_str(" -> ")?;
                b.fmt_prec(f, P_IMP)?;
            }
            Iff(a, b) => {
                a.fmt_prec(f, P_IMP)?;
                f.write_str(" <-> ")?;
                b.fmt_prec(f, P_IMP)?;
            }
            Forall(v, x) => {
                write!(f, "forall {v}. ")?;
                x.fmt_prec(f, P_QUANT)?;
            }
            Exists(v, x) => {
                write!(f, "exists {v}. ")?;
                x.fmt_prec(f, P_QUANT)?;
            }
        }
        if paren {
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, P_QUANT)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> Var {
        Var::new(s)
    }

    #[test]
    fn free_vars_examples() {
        let m = Formula::mem(&v("t"), &v("x"));
        assert_eq!(m.free_vars(), BTreeSet::from([v("t"), v("x")]));
        assert_eq!(
            Formula::forall(&v("t"), m).free_vars(),
            BTreeSet::from([v("x")])
        );
        let e = Formula::exists(&v("x"), Formula::eq(&v("x"), &v("x")));
        assert!(e.free_vars().is_empty());
    }

    #[test]
    fn substitute_examples() {
        let m = Formula::mem(&v("t"), &v("x"));
        assert_eq!(m.rename(&v("t"), &v("s")), Formula::mem(&v("s"), &v("x")));

        let ex = Formula::exists(&v("x"), Formula::mem(&v("t"), &v("x")));
        let out = ex.rename(&v("t"), &v("x"));
        match &out {
            Exists(b, body) => {
                assert_ne!(b, &v("x"));
                assert_eq!(**body, Formula::mem(&v("x"), b));
            }
            _ => panic!("shape changed: {out}"),
        }
        assert_eq!(out.free_vars(), BTreeSet::from([v("x")]));

        let e = Formula::eq(&v("x"), &v("x"));
        assert_eq!(e.rename(&v("x"), &v("y")), Formula::eq(&v("y"), &v("y")));
    }

    #[test]
    fn simultaneous_swap() {
        let f = Formula::mem(&v("x"), &v("y"));
        let m = BTreeMap::from([(v("x"), v("y")), (v("y"), v("x"))]);
        assert_eq!(f.substitute(&m), Formula::mem(&v("y"), &v("x")));
    }

    #[test]
    fn alpha_examples() {
        let a = Formula::exists(&v("x"), Formula::eq(&v("x"), &v("x")));
        let b = Formula::exists(&v("y"), Formula::eq(&v("y"), &v("y")));
        assert!(a.alpha_eq(&b));
        let c = Formula::exists(&v("x"), Formula::mem(&v("x"), &v("z")));
        let d = Formula::exists(&v("x"), Formula::mem(&v("x"), &v("w")));
        assert!(!c.alpha_eq(&d));
        assert!(c.alpha_eq(&c));
        // A free variable may not be matched against a bound one.
        let e = Formula::exists(&v("x"), Formula::mem(&v("x"), &v("y")));
        let g = Formula::exists(&v("y"), Formula::mem(&v("y"), &v("y")));
        assert!(!e.alpha_eq(&g));
    }

    #[test]
    fn display_parenthesizes() {
        let f = Formula::implies(
            Formula::implies(Formula::mem(&v("a"), &v("b")), True),
            Formula::forall(&v("x"), Formula::eq(&v("x"), &v("x"))),
        );
        assert_eq!(f.to_string(), "(a in b -> true) -> (forall x. x = x)");
    }
}
