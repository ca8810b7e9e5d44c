//! Small maps over definable classes: the smallness obligation, power
//! objects and membership, representing arrows, the subset relation,
//! universal monos, the initial ZF-algebra and suprema along small maps.

use crate::dst::{dst_product, dst_to_terminal, set_obligation, DefinableClass, DstProduct};
use crate::error::{Error, Result};
use crate::kernel::{elaborate_avoiding, Formula, NameSupply, Surface, Term, Var};
use crate::obligation::{Obligation, Tag};
use crate::syncat::{compose, graph, identity, pullback, Arrow, FormulaInContext};

pub struct SmallnessWitness {
    pub arrow: Arrow,
    pub obligation: Obligation,
}

/// `⊢ ∀y∃z∀x(F(x,y) ↔ x∈z)`.
pub fn smallness_obligation(f: &Arrow) -> Result<Obligation> {
    for side in [&f.dom, &f.cod] {
        if side.len() != 1 {
            return Err(Error::NotSingleVariable(side.len()));
        }
    }
    let (x, y) = (&f.rel.ctx[0], &f.rel.ctx[1]);
    let mut supply = NameSupply::avoiding(f.rel.all_vars().iter());
    let z = supply.prefer(&Var::new("z"));
    let goal = Formula::forall(
        y,
        Formula::exists(
            &z,
            Formula::forall(x, Formula::iff(f.rel.body.clone(), Formula::mem(x, &z))),
        ),
    );
    Ok(Obligation::new("small", vec![], goal, "arrow is small"))
}

pub fn small(f: &Arrow) -> Result<SmallnessWitness> {
    Ok(SmallnessWitness {
        arrow: f.clone(),
        obligation: smallness_obligation(f)?,
    })
}

fn dclass(v: &Var, body: Formula) -> Result<DefinableClass> {
    DefinableClass::new(FormulaInContext::new(vec![v.clone()], body)?)
}

fn surf(v: &Var, s: &Surface) -> Result<DefinableClass> {
    dclass(v, elaborate_avoiding(s, [v])?)
}

/// `∀t(t∈y → P(t))`.
fn within(x: &DefinableClass, y: &Var, supply: &mut NameSupply) -> Surface {
    let t = supply.prefer(&Var::new("t"));
    Surface::forall(&t, Surface::implies(Surface::mem(&t, y), Surface::from(&x.at(&t))))
}

pub struct PowerData {
    /// `{y | ∀x(x∈y → P)}`.
    pub ps: DefinableClass,
    /// `{z | ∃x∃y(z=⟨x,y⟩ ∧ ∀t(t∈y → P(t)) ∧ x∈y)}`.
    pub mem: DefinableClass,
    pub prod: DstProduct,
    /// The inclusion of `mem` into `X × ps`.
    pub e: Arrow,
}

impl PowerData {
    /// Smallness of the second leg `π2 ∘ e`.
    pub fn small_leg(&self) -> Result<Obligation> {
        smallness_obligation(&compose(&self.e, &self.prod.proj2)?)
    }
}

pub fn power_data(x: &DefinableClass) -> Result<PowerData> {
    let mut supply = NameSupply::avoiding(x.cls().all_vars().iter());
    let y = supply.prefer(&Var::new("y"));
    let xv = x.var().clone();
    supply.avoid(&xv);
    let ps_body = Surface::forall(
        &xv,
        Surface::implies(Surface::mem(&xv, &y), Surface::from(x.body())),
    );
    let ps = surf(&y, &ps_body)?;
    let z = supply.prefer(&Var::new("z"));
    let (a, b) = (supply.fresh("x"), supply.fresh("y"));
    let mem_body = Surface::exists_all(
        &[a.clone(), b.clone()],
        Surface::and(vec![
            Surface::eq(&z, Term::pair(Term::var(&a), Term::var(&b))),
            within(x, &b, &mut supply),
            Surface::mem(&a, &b),
        ]),
    );
    let mem = surf(&z, &mem_body)?;
    let prod = dst_product(x, &ps)?;
    let e = graph(mem.cls(), prod.obj.cls(), |zs, ws, _| Ok(Formula::eqs(zs, ws)))?;
    Ok(PowerData { ps, mem, prod, e })
}

pub struct Representation {
    /// `[{y,y′ | Q ∧ ∀x(R(x,y) ↔ x∈y′)}] : Z → P_S(X)`.
    pub arrow: Arrow,
    /// `R(x,y) ⊢ P(x) ∧ Q(y)`.
    pub typing: Obligation,
    /// `⊢ ∀y∃y′∀x(R(x,y) ↔ x∈y′)`.
    pub small: Obligation,
    pub square: Obligation,
}

/// The representing arrow of a relation `R` in context `x, y` from `X` to
/// `Z` with small second leg.
pub fn representing_arrow(
    r: &FormulaInContext,
    x: &DefinableClass,
    z: &DefinableClass,
) -> Result<Representation> {
    if r.len() != 2 {
        return Err(Error::ContextLength {
            expected: 2,
            got: r.len(),
        });
    }
    let (xv, yv) = (&r.ctx[0], &r.ctx[1]);
    let ps = power_data(x)?.ps;
    let mut supply = NameSupply::avoiding(r.all_vars().iter());
    supply.avoid_all(x.cls().all_vars().iter());
    supply.avoid_all(z.cls().all_vars().iter());
    let y1 = supply.prefer(&Var::new("y'"));
    let describes = |y1: &Var| {
        Formula::forall(xv, Formula::iff(r.body.clone(), Formula::mem(xv, y1)))
    };
    let body = Formula::and(vec![z.at(yv), describes(&y1)]);
    let arrow = Arrow {
        dom: z.cls().clone(),
        cod: ps.cls().clone(),
        rel: FormulaInContext::new(vec![yv.clone(), y1.clone()], body)?,
    };
    let typing = Obligation::new(
        "rep-typing",
        vec![r.body.clone()],
        Formula::and(vec![x.at(xv), z.at(yv)]),
        "represented relation lies in X × Z",
    );
    let small = Obligation::new(
        "rep-small",
        vec![],
        Formula::forall(yv, Formula::exists(&y1, describes(&y1))),
        "represented relation has small second leg",
    );
    let square = fits_square(r, x, z, &arrow)?;
    Ok(Representation {
        arrow,
        typing,
        small,
        square,
    })
}

/// `P(x), Q(y) ⊢ R(x,y) ↔ ∃y′(ρ(y,y′) ∧ x∈y′)`: `R` is the pullback of
/// membership along `id × ρ`.
pub fn fits_square(
    r: &FormulaInContext,
    x: &DefinableClass,
    z: &DefinableClass,
    rho: &Arrow,
) -> Result<Obligation> {
    let (xv, yv) = (&r.ctx[0], &r.ctx[1]);
    let mut supply = NameSupply::avoiding(r.all_vars().iter());
    supply.avoid_all(rho.rel.all_vars().iter());
    let y1 = supply.prefer(&Var::new("y'"));
    let via = Formula::exists(
        &y1,
        Formula::and(vec![rho.at(std::slice::from_ref(yv), std::slice::from_ref(&y1)), Formula::mem(xv, &y1)]),
    );
    Ok(Obligation::new(
        "rep-square",
        vec![x.at(xv), z.at(yv)],
        Formula::iff(r.body.clone(), via),
        "relation is the pullback of membership along the representing arrow",
    ))
}

pub struct SubsetArrow {
    /// `{z | ∃y∃y′(z=⟨y,y′⟩ ∧ y⊆y′ ∧ ∀x(x∈y′ → P(x)))}`.
    pub obj: DefinableClass,
    pub prod: DstProduct,
    pub arrow: Arrow,
    /// Smallness of `π2 ∘ arrow`.
    pub small: Obligation,
}

pub fn subset_arrow(x: &DefinableClass) -> Result<SubsetArrow> {
    let ps = power_data(x)?.ps;
    let mut supply = NameSupply::avoiding(x.cls().all_vars().iter());
    let z = supply.prefer(&Var::new("z"));
    let y = supply.prefer(&Var::new("y"));
    let y1 = supply.prefer(&Var::new("y'"));
    let body = Surface::exists_all(
        &[y.clone(), y1.clone()],
        Surface::and(vec![
            Surface::eq(&z, Term::pair(Term::var(&y), Term::var(&y1))),
            Surface::sub(&y, &y1),
            within(x, &y1, &mut supply),
        ]),
    );
    let obj = surf(&z, &body)?;
    let prod = dst_product(&ps, &ps)?;
    let arrow = graph(obj.cls(), prod.obj.cls(), |zs, ws, _| Ok(Formula::eqs(zs, ws)))?;
    let small = smallness_obligation(&compose(&arrow, &prod.proj2)?)?;
    Ok(SubsetArrow {
        obj,
        prod,
        arrow,
        small,
    })
}

/// `{x | x = x}`.
pub fn universal_class() -> DefinableClass {
    DefinableClass::parse("x |- x = x").expect("universal class")
}

/// `[{x,x′ | P ∧ x=x′}] : A → {x | x=x}`.
pub fn universal_mono(a: &DefinableClass) -> Result<Arrow> {
    graph(a.cls(), universal_class().cls(), |xs, ys, _| Ok(Formula::eqs(xs, ys)))
}

/// A mono `P_S(U) → U` for `U = {x | x=x}`, exhibiting that `U` is a
/// universe.
pub fn universe_witness() -> Result<Arrow> {
    universal_mono(&power_data(&universal_class())?.ps)
}

pub struct ZfAlgebra {
    pub carrier: DefinableClass,
    /// The subset relation on the carrier.
    pub order: SubsetArrow,
    pub succ: Arrow,
}

impl ZfAlgebra {
    /// `z = ⟨y,y⟩ ⊢ z ∈ ⊑`.
    pub fn reflexivity(&self) -> Obligation {
        let z = self.order.obj.var().clone();
        let mut supply = NameSupply::avoiding(self.order.obj.cls().all_vars().iter());
        let y = supply.prefer(&Var::new("y"));
        let hyp = Surface::eq(&z, Term::pair(Term::var(&y), Term::var(&y)));
        let hyp = elaborate_avoiding(&hyp, self.order.obj.cls().all_vars().iter()).expect("pair");
        Obligation::new("order-refl", vec![hyp], self.order.obj.body().clone(), "order is reflexive")
    }
}

/// `({x | x=x}, ⊑, [{x,z | z={x}}])`.
pub fn initial_zf_algebra() -> Result<ZfAlgebra> {
    let carrier = universal_class();
    let order = subset_arrow(&carrier)?;
    let rel = FormulaInContext::parse("x, z |- z = sing(x)")?;
    let succ = Arrow {
        dom: carrier.cls().clone(),
        cod: carrier.cls().clone(),
        rel,
    };
    Ok(ZfAlgebra {
        carrier,
        order,
        succ,
    })
}

/// `[{z′,x | Q ∧ ∀t(t∈x ↔ ∃z(F(z,z′) ∧ λ(z,t)))}]` for small `F` and
/// `λ` into the universal class.
pub fn sup_along(f: &Arrow, lam: &Arrow) -> Result<Arrow> {
    if !f.dom.same_as(&lam.dom) || f.dom.len() != 1 || f.cod.len() != 1 || lam.cod.len() != 1 {
        return Err(Error::NotComposable);
    }
    let mut supply = NameSupply::avoiding(f.rel.all_vars().iter());
    supply.avoid_all(lam.rel.all_vars().iter());
    let z1 = supply.prefer(&Var::new("z'"));
    let x = supply.prefer(&Var::new("x"));
    let t = supply.prefer(&Var::new("t"));
    let z = supply.prefer(&Var::new("z"));
    let inner = Formula::exists(
        &z,
        Formula::and(vec![
            f.at(std::slice::from_ref(&z), std::slice::from_ref(&z1)),
            lam.at(std::slice::from_ref(&z), std::slice::from_ref(&t)),
        ]),
    );
    let body = Formula::and(vec![
        f.cod.at(std::slice::from_ref(&z1)),
        Formula::forall(&t, Formula::iff(Formula::mem(&t, &x), inner)),
    ]);
    Ok(Arrow {
        dom: f.cod.clone(),
        cod: lam.cod.clone(),
        rel: FormulaInContext::new(vec![z1, x], body)?,
    })
}

/// Pointwise inclusion `g ⊑ h` of two parallel arrows into the universe:
/// `∀c∀a∀b(g(c,a) ∧ h(c,b) → a ⊆ b)`.
pub fn pointwise_leq(g: &Arrow, h: &Arrow) -> Result<Formula> {
    if !g.dom.same_as(&h.dom) {
        return Err(Error::ParallelMismatch);
    }
    let mut supply = NameSupply::avoiding(g.rel.all_vars().iter());
    supply.avoid_all(h.rel.all_vars().iter());
    let cs: Vec<Var> = g.dom.ctx.iter().map(|v| supply.fresh(v.name())).collect();
    let (a, b, t) = (supply.fresh("a"), supply.fresh("b"), supply.fresh("t"));
    let sub = Formula::forall(&t, Formula::implies(Formula::mem(&t, &a), Formula::mem(&t, &b)));
    let body = Formula::implies(
        Formula::and(vec![g.at(&cs, std::slice::from_ref(&a)), h.at(&cs, std::slice::from_ref(&b))]),
        sub,
    );
    Ok(Formula::forall_all(&cs, Formula::forall_all(&[a, b], body)))
}

/// Both directions of `sup_j(λ)∘j′ ⊑ λ′ ⟺ λ∘π2 ⊑ λ′∘π1` for a test square
/// `j′ : B′ → A`, `λ′ : B′ → U`.
pub fn sup_universal(
    j: &Arrow,
    lam: &Arrow,
    j1: &Arrow,
    lam1: &Arrow,
) -> Result<(Obligation, Obligation)> {
    let sup = sup_along(j, lam)?;
    let left = pointwise_leq(&compose(j1, &sup)?, lam1)?;
    let pb = pullback(j1, j)?;
    let right = pointwise_leq(&compose(&pb.p2, lam)?, &compose(&pb.p1, lam1)?)?;
    let prov = "supremum along a small map";
    Ok((
        Obligation::new("sup-forward", vec![left.clone()], right.clone(), prov),
        Obligation::new("sup-backward", vec![right], left, prov),
    ))
}

/// `{x | Nat(x)}`.
pub fn nat_class() -> DefinableClass {
    DefinableClass::parse("x |- Nat(x)").expect("natural numbers")
}

fn needs_infinity(a: &DefinableClass) -> bool {
    a.cls().same_as(nat_class().cls())
}

/// Smallness of `A → 1` and set-hood of `A`. The two are ZF-equivalent
/// since `⊢ ∃y(y=0)`.
pub fn small_iff_set(a: &DefinableClass) -> Result<(Obligation, Obligation)> {
    let s = smallness_obligation(&dst_to_terminal(a)?)?;
    let t = set_obligation(a);
    if needs_infinity(a) {
        Ok((s.with_tag(Tag::NeedsInfinity), t.with_tag(Tag::NeedsInfinity)))
    } else {
        Ok((s, t))
    }
}

/// The identity on `A` is small, for use as the trivial small map.
pub fn small_identity(a: &DefinableClass) -> SmallnessWitness {
    let arrow = identity(a.cls());
    let obligation = smallness_obligation(&arrow).expect("single-variable context");
    SmallnessWitness { arrow, obligation }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hforacle::{HfSet, Oracle};
    use crate::syncat::{equiv_obligation, mk_arrow};

    fn dc(s: &str) -> DefinableClass {
        DefinableClass::parse(s).unwrap()
    }

    fn valid(n: u32, ob: &Obligation) -> bool {
        Oracle::rank(n).unwrap().check(ob).unwrap().is_valid()
    }

    fn ext(n: u32, a: &DefinableClass) -> Vec<HfSet> {
        Oracle::rank(n).unwrap().extension(a.var(), a.body()).unwrap()
    }

    #[test]
    fn smallness_examples() {
        assert!(valid(3, &small_identity(&dc("x |- x = 0")).obligation));
        let t = dst_to_terminal(&dc("x |- x = x")).unwrap();
        assert!(!valid(2, &smallness_obligation(&t).unwrap()));
        let (wide, _) = mk_arrow(
            FormulaInContext::parse("x, y |- x = y").unwrap(),
            FormulaInContext::parse("z |- z = z").unwrap(),
            FormulaInContext::parse("a, b, c |- a = c").unwrap(),
        )
        .unwrap();
        assert!(matches!(smallness_obligation(&wide), Err(Error::NotSingleVariable(2))));
    }

    #[test]
    fn power_objects() {
        let zero = dc("x |- x = 0");
        let pd = power_data(&zero).unwrap();
        assert_eq!(ext(3, &pd.ps), vec![HfSet::from_code(0), HfSet::from_code(1)]);
        assert_eq!(ext(3, &power_data(&dc("x |- x != x")).unwrap().ps), vec![HfSet::empty()]);
        assert_eq!(ext(4, &pd.mem), vec![HfSet::pair(&HfSet::empty(), &HfSet::from_code(1))]);
        for ob in pd.e.obligations() {
            assert!(valid(4, &ob), "{ob}");
        }
    }

    #[test]
    fn representing_membership() {
        let zero = dc("x |- x = 0");
        let ps = power_data(&zero).unwrap().ps;
        let r = FormulaInContext::new(
            vec![Var::new("x"), Var::new("y")],
            Formula::and(vec![zero.at(&Var::new("x")), ps.at(&Var::new("y")), Formula::mem(&Var::new("x"), &Var::new("y"))]),
        )
        .unwrap();
        let rep = representing_arrow(&r, &zero, &ps).unwrap();
        assert!(valid(3, &rep.typing));
        assert!(valid(3, &rep.small));
        assert!(valid(3, &rep.square));
        let id = identity(ps.cls());
        assert!(valid(3, &equiv_obligation(&rep.arrow, &id).unwrap()));
        for ob in rep.arrow.obligations() {
            assert!(valid(3, &ob), "{ob}");
        }
        let empty = Arrow {
            dom: ps.cls().clone(),
            cod: ps.cls().clone(),
            rel: FormulaInContext::parse("y, y' |- y sub 0 \\/ y = sing(0) /\\ y' = 0").unwrap(),
        };
        assert!(!valid(3, &fits_square(&r, &zero, &ps, &empty).unwrap()));
    }

    #[test]
    fn representing_empty_relation() {
        let zero = dc("x |- x = 0");
        let r = FormulaInContext::parse("x, y |- x != x").unwrap();
        let z = dc("y |- y = y");
        let rep = representing_arrow(&r, &zero, &z).unwrap();
        let want = FormulaInContext::parse("y, y' |- y' = 0").unwrap();
        let ob = Obligation::new("t", vec![], Formula::iff(rep.arrow.rel.body.clone(), want.at(&rep.arrow.rel.ctx)), "t");
        assert!(valid(3, &ob));
        assert!(valid(3, &rep.square));
    }

    #[test]
    fn subset_relation() {
        let s = subset_arrow(&dc("x |- x = 0")).unwrap();
        let want: Vec<HfSet> = [2u64, 4, 10].into_iter().map(HfSet::from_code).collect();
        assert_eq!(ext(4, &s.obj), want);
        let comps = FormulaInContext::parse("y, y' |- y sub y' /\\ forall x. (x in y' -> x = 0)").unwrap();
        let sols = Oracle::rank(3).unwrap().solutions(&comps.ctx, &comps.body, &Default::default()).unwrap();
        assert_eq!(sols.len(), 3);
    }

    #[test]
    fn universal_monos() {
        for p in ["x |- x = 0", "x |- x != x"] {
            let m = universal_mono(&dc(p)).unwrap();
            assert!(valid(3, &m.mono_obligation()));
            for ob in m.obligations() {
                assert!(valid(3, &ob), "{ob}");
            }
        }
        let m = universal_mono(&dc("x |- x = 0")).unwrap();
        let sols = Oracle::rank(2).unwrap().solutions(&m.rel.ctx, &m.rel.body, &Default::default()).unwrap();
        assert_eq!(sols, vec![vec![HfSet::empty(), HfSet::empty()]]);
        assert!(valid(3, &universe_witness().unwrap().mono_obligation()));
    }

    #[test]
    fn initial_algebra() {
        let a = initial_zf_algebra().unwrap();
        let o = Oracle::rank(3).unwrap();
        let w = o.witness(&a.succ.rel.ctx[1..], &a.succ.rel.at(&[Var::new("x"), a.succ.rel.ctx[1].clone()]), &[(Var::new("x"), HfSet::empty())].into()).unwrap();
        assert_eq!(w, Some(vec![HfSet::from_code(1)]));
        let obs = a.succ.obligations();
        assert!(valid(3, &obs[0]));
        assert!(valid(3, &obs[1]));
        assert!(valid(3, &a.reflexivity()));
    }

    #[test]
    fn sup_of_singletons() {
        let zero = dc("z |- z = 0");
        let f = identity(zero.cls());
        let lam = Arrow {
            dom: zero.cls().clone(),
            cod: universal_class().cls().clone(),
            rel: FormulaInContext::parse("z, x |- z = 0 /\\ x = sing(z)").unwrap(),
        };
        let sup = sup_along(&f, &lam).unwrap();
        let o = Oracle::rank(4).unwrap();
        let env = [(sup.rel.ctx[0].clone(), HfSet::empty())].into();
        let v = o.solutions(&sup.rel.ctx[1..], &sup.rel.body, &env).unwrap();
        assert_eq!(v, vec![vec![HfSet::singleton(&HfSet::singleton(&HfSet::empty()))]]);
        for ob in sup.obligations() {
            assert!(valid(4, &ob), "{ob}");
        }
        let (fw, bw) = sup_universal(&f, &lam, &f, &lam).unwrap();
        assert!(valid(3, &fw));
        assert!(!valid(3, &bw));
    }

    #[test]
    fn sup_over_empty_domain() {
        let none = dc("z |- z != z");
        let q = dc("w |- w = 0 \\/ w = 1");
        let f = graph(none.cls(), q.cls(), |_, _, _| Ok(Formula::False)).unwrap();
        let lam = graph(none.cls(), universal_class().cls(), |_, _, _| Ok(Formula::False)).unwrap();
        let sup = sup_along(&f, &lam).unwrap();
        let o = Oracle::rank(3).unwrap();
        let sols = o.solutions(&sup.rel.ctx, &sup.rel.body, &Default::default()).unwrap();
        assert_eq!(
            sols,
            vec![vec![HfSet::empty(), HfSet::empty()], vec![HfSet::from_code(1), HfSet::empty()]]
        );
    }

    #[test]
    fn small_classes_are_sets() {
        let (s, t) = small_iff_set(&dc("x |- x = 0")).unwrap();
        assert!(valid(3, &s) && valid(3, &t));
        let (s, t) = small_iff_set(&dc("x |- x = x")).unwrap();
        assert!(!valid(2, &s) && !valid(2, &t));
        let (s, t) = small_iff_set(&nat_class()).unwrap();
        assert!(s.needs_infinity() && t.needs_infinity());
        assert!(!valid(2, &t));
    }
}
