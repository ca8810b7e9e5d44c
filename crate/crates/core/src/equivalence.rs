//! The functors between definable sets and the global elements of `SET`,
//! and the natural isomorphism `id ≅ P′∘P`.

use crate::dst::{set_obligation, DefinableClass};
use crate::error::{Error, Result};
use crate::hforacle::HfSet;
use crate::internal::GlobalElement;
use crate::kernel::{elaborate_avoiding, Formula, NameSupply, Surface, Term, Var};
use crate::obligation::Obligation;
use crate::syncat::{compose, equiv_obligation, graph, Arrow, FormulaInContext};

/// The fixed variable of `P′`.
pub fn x0() -> Var {
    Var::new("x0")
}

fn dclass(v: Var, body: Formula) -> DefinableClass {
    DefinableClass::new(FormulaInContext::new(vec![v], body).expect("closed over its variable"))
        .expect("single variable")
}

/// `∀x(x∈z ↔ P(x))`.
fn names(a: &DefinableClass, z: &Var) -> Formula {
    let x = a.var();
    Formula::forall(x, Formula::iff(Formula::mem(x, z), a.body().clone()))
}

/// `P({x|P}) = [{z | ∀x(x∈z ↔ P(x))}]`, with the set-hood obligation it
/// presupposes.
pub fn functor_p_object(a: &DefinableClass) -> (GlobalElement, Obligation) {
    let mut supply = NameSupply::avoiding(a.cls().all_vars().iter());
    let z = supply.prefer(&Var::new("z"));
    let g = GlobalElement::new(dclass(z.clone(), names(a, &z)));
    (g, set_obligation(a))
}

/// Image of a definable-set arrow under `P`.
pub struct PArrow {
    /// `{f′ | ∃f∃z(f′=⟨f,z⟩ ∧ graph(f) ∧ extent(z))}`.
    pub global: GlobalElement,
    /// `{f | ∀t(t∈f ↔ ∃x∃y(t=⟨x,y⟩ ∧ F(x,y)))}`.
    pub graph: DefinableClass,
    /// `{z | ∀y(y∈z ↔ Q(y))}`.
    pub extent: DefinableClass,
}

pub fn functor_p_arrow(f: &Arrow) -> Result<PArrow> {
    for side in [&f.dom, &f.cod] {
        if side.len() != 1 {
            return Err(Error::NotSingleVariable(side.len()));
        }
    }
    let cod = DefinableClass::new(f.cod.clone())?;
    let mut supply = NameSupply::avoiding(f.rel.all_vars().iter());
    supply.avoid_all(f.cod.all_vars().iter());
    let fp = supply.prefer(&Var::new("f'"));
    let fv = supply.prefer(&Var::new("f"));
    let z = supply.prefer(&Var::new("z"));
    let t = supply.prefer(&Var::new("t"));
    let (x, y) = (f.rel.ctx[0].clone(), f.rel.ctx[1].clone());
    let pair = elaborate_avoiding(
        &Surface::eq(&t, Term::pair((&x).into(), (&y).into())),
        f.rel.all_vars().iter().chain([&t, &fv, &fp, &z]),
    )?;
    let graph_body = Formula::forall(
        &t,
        Formula::iff(
            Formula::mem(&t, &fv),
            Formula::exists_all(&[x, y], Formula::and(vec![pair, f.rel.body.clone()])),
        ),
    );
    let extent_body = names(&cod, &z);
    let coded = elaborate_avoiding(
        &Surface::eq(&fp, Term::pair((&fv).into(), (&z).into())),
        graph_body.all_vars().iter().chain(extent_body.all_vars().iter()).chain([&fp]),
    )?;
    let body = Formula::exists_all(
        &[fv.clone(), z.clone()],
        Formula::and(vec![coded, graph_body.clone(), extent_body.clone()]),
    );
    Ok(PArrow {
        global: GlobalElement::new(dclass(fp, body)),
        graph: dclass(fv, graph_body),
        extent: dclass(z, extent_body),
    })
}

/// `P′([{z|P(z)}]) = {x0 | ∃z(P(z) ∧ x0∈z)}`.
pub fn functor_p_prime_object(g: &GlobalElement) -> DefinableClass {
    let x0 = x0();
    let mut supply = NameSupply::avoiding(g.cls.cls().all_vars().iter());
    supply.avoid(&x0);
    let z = if *g.cls.var() == x0 {
        supply.fresh("z")
    } else {
        g.cls.var().clone()
    };
    let body = Formula::exists(&z, Formula::and(vec![g.cls.at(&z), Formula::mem(&x0, &z)]));
    dclass(x0, body)
}

/// `P′([{f′|Q(f′)}]) = [{x,x′ | ∃f′(Q(f′) ∧ ∃z∃f(f′=⟨f,z⟩ ∧ ⟨x,x′⟩∈f))}]`
/// between the images of the given source and target names.
pub fn functor_p_prime_arrow(
    g: &GlobalElement,
    dom: &GlobalElement,
    cod: &GlobalElement,
) -> Result<Arrow> {
    let d = functor_p_prime_object(dom);
    let c = functor_p_prime_object(cod);
    let mut supply = NameSupply::avoiding(g.cls.cls().all_vars().iter());
    let x = supply.prefer(&Var::new("x"));
    let x1 = supply.prefer(&Var::new("x'"));
    let fp = g.cls.var().clone();
    let z = supply.prefer(&Var::new("z"));
    let f = supply.prefer(&Var::new("f"));
    let surf = Surface::and(vec![
        Surface::eq(&fp, Term::pair((&f).into(), (&z).into())),
        Surface::mem(Term::pair((&x).into(), (&x1).into()), &f),
    ]);
    let inner = elaborate_avoiding(&surf, g.cls.cls().all_vars().iter().chain([&x, &x1]))?;
    let body = Formula::exists(
        &fp,
        Formula::and(vec![g.cls.body().clone(), Formula::exists_all(&[z, f], inner)]),
    );
    let rel = FormulaInContext::new(vec![x, x1], body)?;
    Ok(Arrow {
        dom: d.cls().clone(),
        cod: c.cls().clone(),
        rel,
    })
}

/// `P′(P(A))`.
pub fn p_prime_p(a: &DefinableClass) -> DefinableClass {
    functor_p_prime_object(&functor_p_object(a).0)
}

/// `[{x,x′ | P(x) ∧ x=x′}] : A → P′(P(A))` with its arrow, mono and onto
/// obligations.
pub fn natural_iso_component(a: &DefinableClass) -> Result<(Arrow, Vec<Obligation>)> {
    let target = p_prime_p(a);
    let eta = graph(a.cls(), target.cls(), |xs, ys, _| Ok(Formula::eqs(xs, ys)))?;
    let mut obs = eta.obligations();
    obs.push(eta.mono_obligation());
    obs.push(eta.epi_obligation());
    Ok((eta, obs))
}

/// `P′P(F) ∘ η_A ≡ η_B ∘ F`.
pub fn naturality_square(f: &Arrow) -> Result<Obligation> {
    let a = DefinableClass::new(f.dom.clone())?;
    let b = DefinableClass::new(f.cod.clone())?;
    let (eta_a, _) = natural_iso_component(&a)?;
    let (eta_b, _) = natural_iso_component(&b)?;
    let pf = functor_p_arrow(f)?;
    let ppf = functor_p_prime_arrow(&pf.global, &functor_p_object(&a).0, &functor_p_object(&b).0)?;
    equiv_obligation(&compose(&eta_a, &ppf)?, &compose(f, &eta_b)?)
}

/// `⊢ G(z) ↔ P(P′(g))(z)`.
pub fn roundtrip_pp_prime(g: &GlobalElement) -> Obligation {
    let back = functor_p_object(&functor_p_prime_object(g)).0;
    let z = g.cls.var();
    Obligation::new(
        "roundtrip",
        vec![],
        Formula::iff(g.cls.body().clone(), back.cls.at(z)),
        "P after P' is the identity on names",
    )
}

/// `⊢ P(x) ↔ Q(x)`.
pub fn coextension(a: &DefinableClass, b: &DefinableClass) -> Obligation {
    let x = a.var();
    Obligation::new(
        "coextensive",
        vec![],
        Formula::iff(a.body().clone(), b.at(x)),
        "classes have the same elements",
    )
}

/// `φ_s(v)`: `v` is the hereditarily finite set `s`.
fn is_set(v: &Var, s: &HfSet, supply: &mut NameSupply) -> Formula {
    let x = supply.fresh("x");
    let alts = s
        .elements()
        .iter()
        .map(|e| {
            let w = supply.fresh("w");
            let inner = is_set(&w, e, supply);
            Formula::exists(&w, Formula::and(vec![inner, Formula::eq(&x, &w)]))
        })
        .collect();
    Formula::forall(&x, Formula::iff(Formula::mem(&x, v), Formula::or(alts)))
}

/// A name `[{z | z = s}]` for a hereditarily finite set.
pub fn name_of(s: &HfSet) -> GlobalElement {
    let z = Var::new("z");
    let mut supply = NameSupply::avoiding([&z]);
    GlobalElement::new(dclass(z.clone(), is_set(&z, s, &mut supply)))
}
