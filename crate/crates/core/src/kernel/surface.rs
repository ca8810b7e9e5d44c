//! Surface language: the kernel connectives plus set-theoretic shorthands.

use std::fmt;

use super::formula::{Formula, P_AND, P_ATOM, P_IFF, P_IMP, P_NOT, P_OR, P_QUANT};
use super::var::Var;

/// Pseudo-terms. None of these exist in the object language; elaboration
/// unfolds each occurrence into a definite description.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Term {
    Var(Var),
    Zero,
    One,
    /// Successor `t ∪ {t}`.
    Sigma(Box<Term>),
    /// Kuratowski pair.
    Pair(Box<Term>, Box<Term>),
    Sing(Box<Term>),
    Upair(Box<Term>, Box<Term>),
    Union(Box<Term>),
    Dom(Box<Term>),
    Ran(Box<Term>),
    /// `{x | φ}`; only meaningful on the right of `in`.
    Class(Box<ClassTerm>),
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ClassTerm {
    pub var: Var,
    pub body: Surface,
}

/// Defined predicates on a single pseudo-term.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Pred {
    Fun,
    On,
    Nat,
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Surface {
    True,
    False,
    Mem(Term, Term),
    Eq(Term, Term),
    Sub(Term, Term),
    Pred(Pred, Term),
    Not(Box<Surface>),
    And(Vec<Surface>),
    Or(Vec<Surface>),
    Implies(Box<Surface>, Box<Surface>),
    Iff(Box<Surface>, Box<Surface>),
    Forall(Var, Box<Surface>),
    Exists(Var, Box<Surface>),
}

impl Term {
    pub fn var(v: &Var) -> Term {
        Term::Var(v.clone())
    }

    pub fn pair(a: Term, b: Term) -> Term {
        Term::Pair(Box::new(a), Box::new(b))
    }

    pub fn sing(a: Term) -> Term {
        Term::Sing(Box::new(a))
    }

    pub fn upair(a: Term, b: Term) -> Term {
        Term::Upair(Box::new(a), Box::new(b))
    }

    pub fn sigma(a: Term) -> Term {
        Term::Sigma(Box::new(a))
    }

    pub fn union(a: Term) -> Term {
        Term::Union(Box::new(a))
    }

    pub fn dom(a: Term) -> Term {
        Term::Dom(Box::new(a))
    }

    pub fn ran(a: Term) -> Term {
        Term::Ran(Box::new(a))
    }

    pub fn class(var: &Var, body: Surface) -> Term {
        Term::Class(Box::new(ClassTerm {
            var: var.clone(),
            body,
        }))
    }

    /// Left-nested tuple `⟨⟨…⟨t1,t2⟩,…⟩,tn⟩`. A single component is itself.
    pub fn tuple(mut items: Vec<Term>) -> Term {
        assert!(!items.is_empty());
        let rest = items.split_off(1);
        rest.into_iter()
            .fold(items.pop().unwrap(), Term::pair)
    }
}

impl From<&Var> for Term {
    fn from(v: &Var) -> Term {
        Term::var(v)
    }
}

impl Surface {
    pub fn mem(a: impl Into<Term>, b: impl Into<Term>) -> Surface {
        Surface::Mem(a.into(), b.into())
    }

    pub fn eq(a: impl Into<Term>, b: impl Into<Term>) -> Surface {
        Surface::Eq(a.into(), b.into())
    }

    pub fn sub(a: impl Into<Term>, b: impl Into<Term>) -> Surface {
        Surface::Sub(a.into(), b.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Surface) -> Surface {
        Surface::Not(Box::new(f))
    }

    pub fn and(mut fs: Vec<Surface>) -> Surface {
        match fs.len() {
            0 => Surface::True,
            1 => fs.pop().unwrap(),
            _ => Surface::And(fs),
        }
    }

    pub fn or(mut fs: Vec<Surface>) -> Surface {
        match fs.len() {
            0 => Surface::False,
            1 => fs.pop().unwrap(),
            _ => Surface::Or(fs),
        }
    }

    pub fn implies(a: Surface, b: Surface) -> Surface {
        Surface::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Surface, b: Surface) -> Surface {
        Surface::Iff(Box::new(a), Box::new(b))
    }

    pub fn forall(v: &Var, f: Surface) -> Surface {
        Surface::Forall(v.clone(), Box::new(f))
    }

    pub fn exists(v: &Var, f: Surface) -> Surface {
        Surface::Exists(v.clone(), Box::new(f))
    }

    pub fn forall_all(vs: &[Var], f: Surface) -> Surface {
        vs.iter().rev().fold(f, |acc, v| Surface::forall(v, acc))
    }

    pub fn exists_all(vs: &[Var], f: Surface) -> Surface {
        vs.iter().rev().fold(f, |acc, v| Surface::exists(v, acc))
    }

    /// `t ∈ {x | body}` for a kernel class body.
    pub fn in_class(t: impl Into<Term>, x: &Var, body: &Formula) -> Surface {
        Surface::mem(t, Term::class(x, Surface::from(body)))
    }
}

/// Every kernel formula is a surface formula.
impl From<&Formula> for Surface {
    fn from(f: &Formula) -> Surface {
        match f {
            Formula::True => Surface::True,
            Formula::False => Surface::False,
            Formula::Mem(a, b) => Surface::mem(a, b),
            Formula::Eq(a, b) => Surface::eq(a, b),
            Formula::Not(x) => Surface::not(Surface::from(&**x)),
            Formula::And(xs) => Surface::And(xs.iter().map(Surface::from).collect()),
            Formula::Or(xs) => Surface::Or(xs.iter().map(Surface::from).collect()),
            Formula::Implies(a, b) => Surface::implies(Surface::from(&**a), Surface::from(&**b)),
            Formula::Iff(a, b) => Surface::iff(Surface::from(&**a), Surface::from(&**b)),
            Formula::Forall(v, x) => Surface::forall(v, Surface::from(&**x)),
            Formula::Exists(v, x) => Surface::exists(v, Surface::from(&**x)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::Sigma(t) => write!(f, "sigma({t})"),
            Term::Pair(a, b) => write!(f, "<{a},{b}>"),
            Term::Sing(t) => write!(f, "sing({t})"),
            Term::Upair(a, b) => write!(f, "upair({a},{b})"),
            Term::Union(t) => write!(f, "Un({t})"),
            Term::Dom(t) => write!(f, "dom({t})"),
            Term::Ran(t) => write!(f, "ran({t})"),
            Term::Class(c) => write!(f, "{{{} | {}}}", c.var, c.body),
        }
    }
}

impl fmt::Display for Pred {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pred::Fun => "Fun",
            Pred::On => "ON",
            Pred::Nat => "Nat",
        })
    }
}

impl Surface {
    fn prec(&self) -> u8 {
        match self {
            Surface::Forall(..) | Surface::Exists(..) => P_QUANT,
            Surface::Iff(..) => P_IFF,
            Surface::Implies(..) => P_IMP,
            Surface::Or(..) => P_OR,
            Surface::And(..) => P_AND,
            Surface::Not(..) => P_NOT,
            _ => P_ATOM,
        }
    }

    fn fmt_prec(&self, f: &mut fmt::Formatter<'_>, need: u8) -> fmt::Result {
        let paren = self.prec() < need;
        if paren {
            f.write_str("(")?;
        }
        match self {
            Surface::True => f.write_str("true")?,
            Surface::False => f.write_str("false")?,
            Surface::Mem(a, b) => write!(f, "{a} in {b}")?,
            Surface::Eq(a, b) => write!(f, "{a} = {b}")?,
            Surface::Sub(a, b) => write!(f, "{a} sub {b}")?,
            Surface::Pred(p, t) => write!(f, "{p}({t})")?,
            Surface::Not(x) => {
                f.write_str("~")?;
                x.fmt_prec(f, P_NOT)?;
            }
            Surface::And(xs) | Surface::Or(xs) => {
                let (sep, need) = if matches!(self, Surface::And(_)) {
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
            Surface::Implies(a, b) => {
                a.fmt_prec(f, P_OR)?;
                f.write_str(" -> ")?;
                b.fmt_prec(f, P_IMP)?;
            }
            Surface::Iff(a, b) => {
                a.fmt_prec(f, P_IMP)?;
                f.write_str(" <-> ")?;
                b.fmt_prec(f, P_IMP)?;
            }
            Surface::Forall(v, x) => {
                write!(f, "forall {v}. ")?;
                x.fmt_prec(f, P_QUANT)?;
            }
            Surface::Exists(v, x) => {
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

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_prec(f, P_QUANT)
    }
}
