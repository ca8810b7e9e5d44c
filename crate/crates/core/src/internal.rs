//! Internal categories in the syntactic category, the internal category
//! `SET` of sets and functions, and externalization by global elements.

use crate::dst::DefinableClass;
use crate::error::{Error, Result};
use crate::kernel::{Formula, NameSupply, Var};
use crate::obligation::Obligation;
use crate::syncat::{
    compose, equiv_obligation_guarded, identity, pullback, Arrow, FormulaInContext,
};

#[derive(Clone, Debug)]
pub struct InternalCategory {
    pub c0: FormulaInContext,
    pub c1: FormulaInContext,
    pub d0: Arrow,
    pub d1: Arrow,
    pub id: Arrow,
    pub comp: Arrow,
    /// Object of composable pairs.
    pub cpair: FormulaInContext,
    /// First leg `Cpair → C1`: the arrow applied first.
    pub p0: Arrow,
    /// Second leg `Cpair → C1`.
    pub p1: Arrow,
}

fn fic(s: &str) -> FormulaInContext {
    FormulaInContext::parse(s).expect("SET component")
}

fn arr(dom: &FormulaInContext, cod: &FormulaInContext, rel: &str) -> Arrow {
    Arrow {
        dom: dom.clone(),
        cod: cod.clone(),
        rel: fic(rel),
    }
}

const COMPOSABLE: &str = "J = <f, <f', z>> /\\ Fun(f) /\\ Fun(f') /\\ ran(f) sub dom(f') /\\ ran(f') sub z";

pub fn set_internal() -> InternalCategory {
    let c0 = fic("x |- x = x");
    let c1 = fic("F |- exists f z. (F = <f, z> /\\ Fun(f) /\\ ran(f) sub z)");
    let d0 = arr(
        &c1,
        &c0,
        "F, x |- exists f z. (F = <f, z> /\\ Fun(f) /\\ ran(f) sub z /\\ dom(f) = x)",
    );
    let d1 = arr(&c1, &c0, "F, z |- exists f. (F = <f, z> /\\ Fun(f) /\\ ran(f) sub z)");
    let id = arr(
        &c0,
        &c1,
        "x, F |- exists f. (F = <f, x> /\\ forall t. (t in f <-> exists s. (s in x /\\ t = <s, s>)))",
    );
    let cpair = fic(&format!("J |- exists f f' z. ({COMPOSABLE})"));
    let comp = arr(
        &cpair,
        &c1,
        &format!(
            "J, G |- exists f f' z f''. ({COMPOSABLE} /\\ G = <f'', z> /\\ \
             forall t. (t in f'' <-> exists s s' s''. (<s, s'> in f /\\ <s', s''> in f' /\\ t = <s, s''>)))"
        ),
    );
    let p0 = arr(
        &cpair,
        &c1,
        &format!("J, F |- exists f f' z. ({COMPOSABLE} /\\ F = <f, dom(f')>)"),
    );
    let p1 = arr(
        &cpair,
        &c1,
        &format!("J, F |- exists f f' z. ({COMPOSABLE} /\\ F = <f', z>)"),
    );
    InternalCategory {
        c0,
        c1,
        d0,
        d1,
        id,
        comp,
        cpair,
        p0,
        p1,
    }
}

/// `set_internal` with `ID` replaced by `x ↦ ⟨∅,∅⟩`.
pub fn corrupted_id(mut ic: InternalCategory) -> InternalCategory {
    ic.id = arr(&ic.c0, &ic.c1, "x, F |- F = <0, 0>");
    ic
}

/// `∃y L(x⃗,y) ∧ ∃y R(x⃗,y)` over the shared domain context of `l`.
fn both_defined(l: &Arrow, r: &Arrow) -> impl FnOnce(&[Var]) -> Formula {
    let (l, r) = (l.clone(), r.clone());
    move |ctx: &[Var]| {
        let n = l.dom.len();
        let xs = &ctx[..n];
        let mut supply = NameSupply::avoiding(ctx.iter());
        supply.avoid_all(l.rel.all_vars().iter());
        supply.avoid_all(r.rel.all_vars().iter());
        let ys: Vec<Var> = l.cod.ctx.iter().map(|v| supply.fresh(v.name())).collect();
        Formula::and(vec![
            Formula::exists_all(&ys, l.at(xs, &ys)),
            Formula::exists_all(&ys, r.at(xs, &ys)),
        ])
    }
}

/// `l ≡ r` restricted to domain points where both composites are defined.
fn law(l: &Arrow, r: &Arrow, name: &str) -> Result<Obligation> {
    Ok(equiv_obligation_guarded(l, r, both_defined(l, r))?.renamed_site(name))
}

trait Site {
    fn renamed_site(self, site: &str) -> Obligation;
}

impl Site for Obligation {
    fn renamed_site(self, site: &str) -> Obligation {
        let hash = self.name.rsplit('-').next().unwrap_or_default().to_string();
        self.renamed(format!("{site}-{hash}"))
    }
}

/// `⌈a, b⌉ : X → Cpair` as the conjunction of the two legs.
pub fn pair_into(ic: &InternalCategory, a: &Arrow, b: &Arrow) -> Result<Arrow> {
    if !a.dom.same_as(&b.dom) {
        return Err(Error::ParallelMismatch);
    }
    let mut supply = NameSupply::avoiding(a.rel.all_vars().iter());
    for x in [b, &ic.p0, &ic.p1] {
        supply.avoid_all(x.rel.all_vars().iter());
    }
    let xs: Vec<Var> = a.dom.ctx.iter().map(|v| supply.fresh(v.name())).collect();
    let j = supply.fresh("J");
    let g0 = supply.fresh("G");
    let g1 = supply.fresh("G");
    let s = std::slice::from_ref;
    let body = Formula::exists_all(
        &[g0.clone(), g1.clone()],
        Formula::and(vec![
            a.at(&xs, s(&g0)),
            b.at(&xs, s(&g1)),
            ic.p0.at(s(&j), s(&g0)),
            ic.p1.at(s(&j), s(&g1)),
        ]),
    );
    let mut ctx = xs;
    ctx.push(j);
    Ok(Arrow {
        dom: a.dom.clone(),
        cod: ic.cpair.clone(),
        rel: FormulaInContext::new(ctx, body)?,
    })
}

/// The four groups of laws, each as a guarded equivalence of composites.
pub fn internal_obligations(ic: &InternalCategory) -> Result<Vec<Obligation>> {
    let id0 = identity(&ic.c0);
    let id1 = identity(&ic.c1);
    let mut out = vec![
        law(&compose(&ic.id, &ic.d1)?, &id0, "cond1-target")?,
        law(&compose(&ic.id, &ic.d0)?, &id0, "cond1-source")?,
        law(&compose(&ic.comp, &ic.d0)?, &compose(&ic.p0, &ic.d0)?, "cond2-source")?,
        law(&compose(&ic.comp, &ic.d1)?, &compose(&ic.p1, &ic.d1)?, "cond2-target")?,
    ];
    let left_unit = pair_into(ic, &compose(&ic.d0, &ic.id)?, &id1)?;
    let right_unit = pair_into(ic, &id1, &compose(&ic.d1, &ic.id)?)?;
    out.push(law(&compose(&left_unit, &ic.comp)?, &id1, "cond3-left")?);
    out.push(law(&compose(&right_unit, &ic.comp)?, &id1, "cond3-right")?);
    let triple = pullback(&compose(&ic.comp, &ic.d1)?, &ic.d0)?;
    let (q0, q1) = (&triple.p1, &triple.p2);
    let lhs = compose(&pair_into(ic, &compose(q0, &ic.comp)?, q1)?, &ic.comp)?;
    let inner = pair_into(ic, &compose(q0, &ic.p1)?, q1)?;
    let rhs = compose(
        &pair_into(ic, &compose(q0, &ic.p0)?, &compose(&inner, &ic.comp)?)?,
        &ic.comp,
    )?;
    out.push(law(&lhs, &rhs, "cond4-assoc")?);
    Ok(out)
}

/// `Cpair(J) ↔ ∃F∃G(p0(J,F) ∧ p1(J,G) ∧ d1(F,x) ∧ d0(G,x))` together with
/// the converse existence of `J` for every generic composable pair.
pub fn cpair_obligations(ic: &InternalCategory) -> Result<(Obligation, Obligation)> {
    let pb = pullback(&ic.d1, &ic.d0)?;
    let mut supply = NameSupply::avoiding(pb.obj.all_vars().iter());
    for a in [&ic.p0, &ic.p1] {
        supply.avoid_all(a.rel.all_vars().iter());
    }
    supply.avoid_all(ic.cpair.all_vars().iter());
    let j = supply.fresh("J");
    let (f, g) = (pb.obj.ctx[0].clone(), pb.obj.ctx[1].clone());
    let s = std::slice::from_ref;
    let legs = Formula::and(vec![ic.p0.at(s(&j), s(&f)), ic.p1.at(s(&j), s(&g))]);
    let forward = Obligation::new(
        "cpair-pullback",
        vec![],
        Formula::iff(
            ic.cpair.at(s(&j)),
            Formula::exists_all(&pb.obj.ctx, Formula::and(vec![legs.clone(), pb.obj.body.clone()])),
        ),
        "composable pairs object realizes the pullback of d1 against d0",
    );
    let onto = Obligation::new(
        "cpair-onto",
        vec![pb.obj.body.clone()],
        Formula::exists(&j, legs),
        "every composable pair is coded",
    );
    Ok((forward, onto))
}

#[derive(Clone, Debug)]
pub struct GlobalElement {
    pub cls: DefinableClass,
    /// `⊢ ∃!x P(x)`.
    pub uniqueness: Obligation,
}

impl GlobalElement {
    pub fn new(cls: DefinableClass) -> Self {
        let goal = Formula::exists_unique(cls.var(), cls.body().clone());
        let uniqueness = Obligation::new("global", vec![], goal, "class has exactly one element");
        GlobalElement { cls, uniqueness }
    }

    pub fn parse(text: &str) -> Result<Self> {
        Ok(GlobalElement::new(DefinableClass::parse(text)?))
    }

    /// `{y | ∃x(P(x) ∧ h(x,y))}`.
    pub fn push(&self, h: &Arrow) -> Result<GlobalElement> {
        if h.dom.len() != 1 || h.cod.len() != 1 {
            return Err(Error::NotSingleVariable(h.dom.len().max(h.cod.len())));
        }
        let mut supply = NameSupply::avoiding(self.cls.cls().all_vars().iter());
        supply.avoid_all(h.rel.all_vars().iter());
        let x = supply.fresh(self.cls.var().name());
        let y = supply.prefer(&h.cod.ctx[0]);
        let s = std::slice::from_ref;
        let body = Formula::exists(&x, Formula::and(vec![self.cls.at(&x), h.at(s(&x), s(&y))]));
        Ok(GlobalElement::new(DefinableClass::new(FormulaInContext::new(vec![y], body)?)?))
    }

    /// `P(x) ⊢ C(x)`.
    pub fn lands_in(&self, c: &FormulaInContext) -> Obligation {
        let x = self.cls.var();
        Obligation::new(
            "global-in",
            vec![self.cls.body().clone()],
            c.at(std::slice::from_ref(x)),
            "global element lands in the object",
        )
    }
}

/// `Γ(C)`: global elements of `C0` and `C1` with the structure maps acting
/// by post-composition.
pub struct Gamma {
    pub ic: InternalCategory,
}

pub fn gamma(ic: &InternalCategory) -> Gamma {
    Gamma { ic: ic.clone() }
}

impl Gamma {
    pub fn object(&self, cls: DefinableClass) -> (GlobalElement, Vec<Obligation>) {
        let g = GlobalElement::new(cls);
        let obs = vec![g.uniqueness.clone(), g.lands_in(&self.ic.c0)];
        (g, obs)
    }

    pub fn arrow(&self, cls: DefinableClass) -> (GlobalElement, Vec<Obligation>) {
        let g = GlobalElement::new(cls);
        let obs = vec![g.uniqueness.clone(), g.lands_in(&self.ic.c1)];
        (g, obs)
    }

    pub fn source(&self, a: &GlobalElement) -> Result<GlobalElement> {
        a.push(&self.ic.d0)
    }

    pub fn target(&self, a: &GlobalElement) -> Result<GlobalElement> {
        a.push(&self.ic.d1)
    }

    pub fn identity(&self, x: &GlobalElement) -> Result<GlobalElement> {
        x.push(&self.ic.id)
    }

    /// `a` then `b`, with the matching obligation `d1∘a = d0∘b`.
    pub fn compose(&self, a: &GlobalElement, b: &GlobalElement) -> Result<(GlobalElement, Obligation)> {
        global_compose(&self.ic, a, b)
    }
}

/// The paired global element `⌈a, b⌉` pushed through `comp`.
pub fn global_compose(
    ic: &InternalCategory,
    a: &GlobalElement,
    b: &GlobalElement,
) -> Result<(GlobalElement, Obligation)> {
    let ta = a.push(&ic.d1)?;
    let sb = b.push(&ic.d0)?;
    let mut supply = NameSupply::avoiding(ta.cls.cls().all_vars().iter());
    supply.avoid_all(sb.cls.cls().all_vars().iter());
    let x = supply.fresh("x");
    let matching = Obligation::new(
        "global-match",
        vec![ta.cls.at(&x)],
        sb.cls.at(&x),
        "target of the first arrow is the source of the second",
    );
    let mut supply = NameSupply::avoiding(a.cls.cls().all_vars().iter());
    supply.avoid_all(b.cls.cls().all_vars().iter());
    for h in [&ic.p0, &ic.p1, &ic.comp] {
        supply.avoid_all(h.rel.all_vars().iter());
    }
    let (f, g, j, k) = (supply.fresh("F"), supply.fresh("G"), supply.fresh("J"), supply.fresh("H"));
    let s = std::slice::from_ref;
    let body = Formula::exists_all(
        &[j.clone(), f.clone(), g.clone()],
        Formula::and(vec![
            a.cls.at(&f),
            b.cls.at(&g),
            ic.p0.at(s(&j), s(&f)),
            ic.p1.at(s(&j), s(&g)),
            ic.comp.at(s(&j), s(&k)),
        ]),
    );
    let cls = DefinableClass::new(FormulaInContext::new(vec![k], body)?)?;
    Ok((GlobalElement::new(cls), matching))
}

/// `a ≡ b` as global elements: `⊢ P(x) ↔ Q(x)`.
pub fn same_global(a: &GlobalElement, b: &GlobalElement) -> Obligation {
    let x = a.cls.var();
    Obligation::new(
        "global-eq",
        vec![],
        Formula::iff(a.cls.body().clone(), b.cls.at(x)),
        "global elements name the same set",
    )
}
