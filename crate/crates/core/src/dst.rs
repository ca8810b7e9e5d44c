//! Definable sets: one-variable classes, the set-hood obligation, and the
//! terminal object, products and exponentials of the topos they form.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{elaborate_avoiding, Formula, NameSupply, Pred, Surface, Term, Var};
use crate::obligation::Obligation;
use crate::syncat::{graph, Arrow, FormulaInContext};

pub use crate::syncat::subobject_classifier;

/// A formula in a context of length one.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DefinableClass(FormulaInContext);

impl DefinableClass {
    pub fn new(cls: FormulaInContext) -> Result<Self> {
        if cls.len() != 1 {
            return Err(Error::NotSingleVariable(cls.len()));
        }
        Ok(DefinableClass(cls))
    }

    /// `x |- body`.
    pub fn parse(text: &str) -> Result<Self> {
        DefinableClass::new(FormulaInContext::parse(text)?)
    }

    pub fn var(&self) -> &Var {
        &self.0.ctx[0]
    }

    pub fn body(&self) -> &Formula {
        &self.0.body
    }

    pub fn cls(&self) -> &FormulaInContext {
        &self.0
    }

    /// The body at `v`.
    pub fn at(&self, v: &Var) -> Formula {
        self.0.at(std::slice::from_ref(v))
    }
}

impl TryFrom<FormulaInContext> for DefinableClass {
    type Error = Error;

    fn try_from(f: FormulaInContext) -> Result<Self> {
        DefinableClass::new(f)
    }
}

impl fmt::Display for DefinableClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub struct DefinableSetWitness {
    pub cls: DefinableClass,
    pub obligation: Obligation,
}

/// `⊢ ∃z∀x(x∈z ↔ P)`.
pub fn set_obligation(a: &DefinableClass) -> Obligation {
    let x = a.var();
    let mut supply = NameSupply::avoiding(a.cls().all_vars().iter());
    let z = supply.prefer(&Var::new("z"));
    let goal = Formula::exists(
        &z,
        Formula::forall(x, Formula::iff(Formula::mem(x, &z), a.body().clone())),
    );
    Obligation::new("set", vec![], goal, "definable class is a set")
}

pub fn definable_set(a: &DefinableClass) -> DefinableSetWitness {
    DefinableSetWitness {
        cls: a.clone(),
        obligation: set_obligation(a),
    }
}

/// `{x | x = 0}`.
pub fn dst_terminal() -> DefinableClass {
    DefinableClass::parse("x |- x = 0").expect("terminal")
}

/// The unique arrow into [`dst_terminal`].
pub fn dst_to_terminal(a: &DefinableClass) -> Result<Arrow> {
    let t = dst_terminal();
    graph(a.cls(), t.cls(), |_, ys, _| Ok(t.at(&ys[0])))
}

fn two_names(a: &DefinableClass, b: &DefinableClass) -> (Var, Var, Var, NameSupply) {
    let mut supply = NameSupply::avoiding(a.cls().all_vars().iter());
    supply.avoid_all(b.cls().all_vars().iter());
    let z = supply.prefer(&Var::new("z"));
    let x = supply.prefer(&Var::new("x"));
    let y = supply.prefer(&Var::new("y"));
    (z, x, y, supply)
}

pub struct DstProduct {
    pub obj: DefinableClass,
    pub proj1: Arrow,
    pub proj2: Arrow,
}

/// `{z | ∃x∃y(z=⟨x,y⟩ ∧ P ∧ Q)}` with coordinate projections.
pub fn dst_product(a: &DefinableClass, b: &DefinableClass) -> Result<DstProduct> {
    let (z, x, y, _) = two_names(a, b);
    let body = Surface::exists_all(
        &[x.clone(), y.clone()],
        Surface::and(vec![
            Surface::eq(&z, Term::pair(Term::var(&x), Term::var(&y))),
            Surface::from(&a.at(&x)),
            Surface::from(&b.at(&y)),
        ]),
    );
    let obj = class(&z, &body)?;
    let proj = |first: bool, target: &DefinableClass| {
        graph(obj.cls(), target.cls(), |zs, ts, supply| {
            let v = supply.fresh("v");
            let (l, r) = if first {
                (Term::var(&ts[0]), Term::var(&v))
            } else {
                (Term::var(&v), Term::var(&ts[0]))
            };
            let s = Surface::exists(&v, Surface::eq(&zs[0], Term::pair(l, r)));
            elaborate_avoiding(&s, zs.iter().chain(ts))
        })
    };
    let proj1 = proj(true, a)?;
    let proj2 = proj(false, b)?;
    Ok(DstProduct { obj, proj1, proj2 })
}

fn class(v: &Var, body: &Surface) -> Result<DefinableClass> {
    let f = elaborate_avoiding(body, [v])?;
    DefinableClass::new(FormulaInContext::new(vec![v.clone()], f)?)
}

/// `Fun(f) ∧ ∀s(s∈dom(f) ↔ P(s)) ∧ ∀s′(s′∈ran(f) → Q(s′))`.
fn exp_body(f: &Var, a: &DefinableClass, b: &DefinableClass, supply: &mut NameSupply) -> Surface {
    let s = supply.prefer(&Var::new("s"));
    let s1 = supply.prefer(&Var::new("s'"));
    Surface::and(vec![
        Surface::Pred(Pred::Fun, Term::var(f)),
        Surface::forall(
            &s,
            Surface::iff(
                Surface::mem(&s, Term::dom(Term::var(f))),
                Surface::from(&a.at(&s)),
            ),
        ),
        Surface::forall(
            &s1,
            Surface::implies(
                Surface::mem(&s1, Term::ran(Term::var(f))),
                Surface::from(&b.at(&s1)),
            ),
        ),
    ])
}

pub struct DstExponential {
    pub obj: DefinableClass,
    /// Domain of [`DstExponential::eval`]: the product of `obj` and `A`.
    pub product: DstProduct,
    pub eval: Arrow,
}

/// The class of functions from `A` to `B` with its evaluation arrow
/// `[{F,y | ∃f∃x(F=⟨f,x⟩ ∧ f∈B^A ∧ ⟨x,y⟩∈f)}]`.
pub fn dst_exponential(a: &DefinableClass, b: &DefinableClass) -> Result<DstExponential> {
    let (f, _, _, mut supply) = two_names(a, b);
    let obj = class(&f, &exp_body(&f, a, b, &mut supply))?;
    let product = dst_product(&obj, a)?;
    let eval = graph(product.obj.cls(), b.cls(), |fs, ys, supply| {
        let (big_f, y) = (&fs[0], &ys[0]);
        let g = supply.prefer(&Var::new("f"));
        let x = supply.prefer(&Var::new("x"));
        let s = Surface::exists_all(
            &[g.clone(), x.clone()],
            Surface::and(vec![
                Surface::eq(big_f, Term::pair(Term::var(&g), Term::var(&x))),
                exp_body(&g, a, b, supply),
                Surface::mem(Term::pair(Term::var(&x), Term::var(y)), Term::var(&g)),
            ]),
        );
        elaborate_avoiding(&s, [big_f, y])
    })?;
    Ok(DstExponential { obj, product, eval })
}
