//! The syntactic category of ZF: formulas in context as objects and
//! provably functional relations as arrows.
//!
//! Arrows are representatives. Two arrows are identified only through an
//! [`equiv_obligation`], or syntactically when their canonical forms are
//! α-equal ([`Arrow::same_as`]).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::{
    canonicalize, elaborate_avoiding, parse_in_context, Formula, NameSupply, Surface, Term, Var,
};
use crate::obligation::Obligation;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FormulaInContext {
    pub ctx: Vec<Var>,
    pub body: Formula,
}

impl FormulaInContext {
    pub fn new(ctx: Vec<Var>, body: Formula) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for v in &ctx {
            if !seen.insert(v.clone()) {
                return Err(Error::DuplicateContextVar(v.clone()));
            }
        }
        if let Some(v) = body.free_vars().difference(&seen).next() {
            return Err(Error::EscapingVariable {
                var: v.clone(),
                context: format!("[{}]", names(&ctx)),
            });
        }
        Ok(FormulaInContext { ctx, body })
    }

    /// `x1, ..., xn |- body` in the surface syntax.
    pub fn parse(text: &str) -> Result<Self> {
        let (ctx, body) = parse_in_context(text)?;
        let body = elaborate_avoiding(&body, &ctx)?;
        FormulaInContext::new(ctx, body)
    }

    pub fn class(x: &Var, body: Formula) -> Result<Self> {
        FormulaInContext::new(vec![x.clone()], body)
    }

    pub fn len(&self) -> usize {
        self.ctx.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ctx.is_empty()
    }

    /// The body with the context replaced by `vars`.
    pub fn at(&self, vars: &[Var]) -> Formula {
        assert_eq!(vars.len(), self.ctx.len(), "context length");
        let m: BTreeMap<Var, Var> = self.ctx.iter().cloned().zip(vars.iter().cloned()).collect();
        self.body.substitute(&m)
    }

    pub fn all_vars(&self) -> BTreeSet<Var> {
        let mut s = self.body.all_vars();
        s.extend(self.ctx.iter().cloned());
        s
    }

    /// Syntactic identity up to context renaming and canonical form.
    pub fn same_as(&self, other: &FormulaInContext) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let other = other.at(&self.ctx);
        self.body.alpha_eq(&other) || canonicalize(&self.body).alpha_eq(&canonicalize(&other))
    }
}

fn names(vs: &[Var]) -> String {
    vs.iter().map(Var::name).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for FormulaInContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{} | {}}}", names(&self.ctx), self.body)
    }
}

/// Fresh primed copies of `vars`.
pub fn primed(vars: &[Var], supply: &mut NameSupply) -> Vec<Var> {
    vars.iter()
        .map(|v| supply.prefer(&Var::new(&format!("{}'", v.name()))))
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Arrow {
    pub dom: FormulaInContext,
    pub cod: FormulaInContext,
    /// Context is a copy of the domain context followed by a copy of the
    /// codomain context.
    pub rel: FormulaInContext,
}

impl Arrow {
    pub fn dom_vars(&self) -> &[Var] {
        &self.rel.ctx[..self.dom.len()]
    }

    pub fn cod_vars(&self) -> &[Var] {
        &self.rel.ctx[self.dom.len()..]
    }

    /// The relation at the given domain and codomain variables.
    pub fn at(&self, xs: &[Var], ys: &[Var]) -> Formula {
        let all: Vec<Var> = xs.iter().chain(ys).cloned().collect();
        self.rel.at(&all)
    }

    fn supply(&self) -> NameSupply {
        let mut s = NameSupply::avoiding(self.rel.all_vars().iter());
        s.avoid_all(self.dom.all_vars().iter());
        s.avoid_all(self.cod.all_vars().iter());
        s
    }

    /// Image in the codomain, single-valuedness and totality.
    pub fn obligations(&self) -> Vec<Obligation> {
        let xs = self.dom_vars().to_vec();
        let ys = self.cod_vars().to_vec();
        let f = self.rel.body.clone();
        let mut supply = self.supply();
        let ys2 = primed(&ys, &mut supply);
        let image = Obligation::new(
            "arrow-image",
            vec![f.clone()],
            Formula::and(vec![self.dom.at(&xs), self.cod.at(&ys)]),
            "arrow: relation lies within domain and codomain",
        );
        let single = Obligation::new(
            "arrow-single",
            vec![f.clone(), self.at(&xs, &ys2)],
            Formula::eqs(&ys, &ys2),
            "arrow: relation is single-valued",
        );
        let total = Obligation::new(
            "arrow-total",
            vec![self.dom.at(&xs)],
            Formula::exists_all(&ys, f),
            "arrow: relation is total on the domain",
        );
        vec![image, single, total]
    }

    /// Injectivity on fibres: `F(x,y) ∧ F(x′,y) ⊢ x = x′`.
    pub fn mono_obligation(&self) -> Obligation {
        let xs = self.dom_vars().to_vec();
        let ys = self.cod_vars().to_vec();
        let mut supply = self.supply();
        let xs2 = primed(&xs, &mut supply);
        Obligation::new(
            "arrow-mono",
            vec![self.rel.body.clone(), self.at(&xs2, &ys)],
            Formula::eqs(&xs, &xs2),
            "arrow: relation is injective",
        )
    }

    /// Surjectivity onto the codomain: `Q(y) ⊢ ∃x F(x,y)`.
    pub fn epi_obligation(&self) -> Obligation {
        let xs = self.dom_vars().to_vec();
        let ys = self.cod_vars().to_vec();
        Obligation::new(
            "arrow-onto",
            vec![self.cod.at(&ys)],
            Formula::exists_all(&xs, self.rel.body.clone()),
            "arrow: relation is onto the codomain",
        )
    }

    /// Canonical relation bodies α-equal after aligning contexts.
    pub fn same_as(&self, other: &Arrow) -> bool {
        self.dom.len() == other.dom.len() && self.rel.same_as(&other.rel)
    }
}

impl fmt::Display for Arrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] : {} -> {}", self.rel, self.dom, self.cod)
    }
}

pub fn mk_arrow(
    dom: FormulaInContext,
    cod: FormulaInContext,
    rel: FormulaInContext,
) -> Result<(Arrow, Vec<Obligation>)> {
    let want = dom.len() + cod.len();
    if rel.len() != want {
        return Err(Error::ContextLength {
            expected: want,
            got: rel.len(),
        });
    }
    let a = Arrow { dom, cod, rel };
    let obs = a.obligations();
    Ok((a, obs))
}

/// Builds an arrow whose relation is `P(x′) ∧ Q(y′) ∧ extra(x′, y′)` over
/// fresh primed contexts.
pub fn graph(
    dom: &FormulaInContext,
    cod: &FormulaInContext,
    extra: impl FnOnce(&[Var], &[Var], &mut NameSupply) -> Result<Formula>,
) -> Result<Arrow> {
    let mut supply = NameSupply::avoiding(dom.all_vars().iter());
    supply.avoid_all(cod.all_vars().iter());
    let xs = primed(&dom.ctx, &mut supply);
    let ys = primed(&cod.ctx, &mut supply);
    let e = extra(&xs, &ys, &mut supply)?;
    let body = Formula::and(vec![dom.at(&xs), cod.at(&ys), e]);
    let ctx: Vec<Var> = xs.iter().chain(&ys).cloned().collect();
    Ok(Arrow {
        dom: dom.clone(),
        cod: cod.clone(),
        rel: FormulaInContext::new(ctx, body)?,
    })
}

pub fn identity(a: &FormulaInContext) -> Arrow {
    graph(a, a, |xs, ys, _| Ok(Formula::eqs(xs, ys))).expect("identity is well formed")
}

/// `{x′,z′ | ∃y′(F ∧ G)}` with a fresh middle context.
pub fn compose(f: &Arrow, g: &Arrow) -> Result<Arrow> {
    if !f.cod.same_as(&g.dom) {
        return Err(Error::NotComposable);
    }
    let mut supply = f.supply();
    supply.avoid_all(g.supply_vars().iter());
    let xs = f.dom_vars().to_vec();
    let mut zs = Vec::new();
    let taken: BTreeSet<Var> = xs.iter().cloned().collect();
    for z in g.cod_vars() {
        if taken.contains(z) || zs.contains(z) {
            zs.push(supply.fresh(z.name()));
        } else {
            zs.push(z.clone());
        }
    }
    supply.avoid_all(zs.iter());
    let mid = primed(f.cod_vars(), &mut supply);
    let body = Formula::exists_all(
        &mid,
        Formula::and(vec![f.at(&xs, &mid), g.at(&mid, &zs)]),
    );
    let ctx: Vec<Var> = xs.iter().chain(&zs).cloned().collect();
    Ok(Arrow {
        dom: f.dom.clone(),
        cod: g.cod.clone(),
        rel: FormulaInContext::new(ctx, body)?,
    })
}

impl Arrow {
    fn supply_vars(&self) -> BTreeSet<Var> {
        let mut s = self.rel.all_vars();
        s.extend(self.dom.all_vars());
        s.extend(self.cod.all_vars());
        s
    }
}

fn parallel(f: &Arrow, g: &Arrow) -> Result<()> {
    if f.dom.same_as(&g.dom) && f.cod.same_as(&g.cod) {
        Ok(())
    } else {
        Err(Error::ParallelMismatch)
    }
}

/// `⊢ F ↔ G` over `f`'s relation context.
pub fn equiv_obligation(f: &Arrow, g: &Arrow) -> Result<Obligation> {
    parallel(f, g)?;
    let ctx = f.rel.ctx.clone();
    Ok(Obligation::new(
        "equiv",
        vec![],
        Formula::iff(f.rel.body.clone(), g.rel.at(&ctx)),
        "equivalence of parallel arrows",
    ))
}

/// As [`equiv_obligation`], restricted for the finite oracle to assignments
/// satisfying `guard(ctx)`.
pub fn equiv_obligation_guarded(
    f: &Arrow,
    g: &Arrow,
    guard: impl FnOnce(&[Var]) -> Formula,
) -> Result<Obligation> {
    let ob = equiv_obligation(f, g)?;
    let gd = guard(&f.rel.ctx);
    Ok(ob.with_guard(gd))
}

pub struct Product {
    pub obj: FormulaInContext,
    pub proj1: Arrow,
    pub proj2: Arrow,
}

/// `{x,y | P ∧ Q}` with coordinate projections.
pub fn product(a: &FormulaInContext, b: &FormulaInContext) -> Result<Product> {
    let mut supply = NameSupply::avoiding(a.all_vars().iter());
    let mut ys = Vec::new();
    for y in &b.ctx {
        if a.ctx.contains(y) || ys.contains(y) {
            ys.push(supply.fresh(y.name()));
        } else {
            supply.avoid(y);
            ys.push(y.clone());
        }
    }
    supply.avoid_all(b.all_vars().iter());
    let ctx: Vec<Var> = a.ctx.iter().chain(&ys).cloned().collect();
    let obj = FormulaInContext::new(ctx, Formula::and(vec![a.body.clone(), b.at(&ys)]))?;
    let n = a.len();
    let proj1 = graph(&obj, a, |xs, zs, _| Ok(Formula::eqs(&xs[..n], zs)))?;
    let proj2 = graph(&obj, b, |xs, zs, _| Ok(Formula::eqs(&xs[n..], zs)))?;
    Ok(Product { obj, proj1, proj2 })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Distinguished {
    Terminal,
    Initial,
}

pub fn distinguished(kind: Distinguished) -> FormulaInContext {
    let text = match kind {
        Distinguished::Terminal => "x |- forall t. t notin x",
        Distinguished::Initial => "x |- x != x",
    };
    FormulaInContext::parse(text).expect("distinguished object")
}

pub fn terminal() -> FormulaInContext {
    distinguished(Distinguished::Terminal)
}

pub fn initial() -> FormulaInContext {
    distinguished(Distinguished::Initial)
}

/// The unique arrow into the terminal object.
pub fn to_terminal(a: &FormulaInContext) -> Result<Arrow> {
    let t = terminal();
    graph(a, &t, |_, ys, _| Ok(t.at(ys)))
}

/// The unique arrow out of the initial object.
pub fn from_initial(b: &FormulaInContext) -> Result<Arrow> {
    let i = initial();
    graph(&i, b, |_, ys, _| Ok(b.at(ys)))
}

pub struct Pullback {
    pub obj: FormulaInContext,
    pub p1: Arrow,
    pub p2: Arrow,
}

/// `{x′,y′ | ∃z′(F ∧ G)}` with coordinate projections.
pub fn pullback(f: &Arrow, g: &Arrow) -> Result<Pullback> {
    if !f.cod.same_as(&g.cod) {
        return Err(Error::NotComposable);
    }
    let mut supply = f.supply();
    supply.avoid_all(g.supply_vars().iter());
    let xs = f.dom_vars().to_vec();
    let mut ys = Vec::new();
    for y in g.dom_vars() {
        if xs.contains(y) || ys.contains(y) {
            ys.push(supply.fresh(y.name()));
        } else {
            ys.push(y.clone());
        }
    }
    supply.avoid_all(ys.iter());
    let zs = primed(f.cod_vars(), &mut supply);
    let body = Formula::exists_all(&zs, Formula::and(vec![f.at(&xs, &zs), g.at(&ys, &zs)]));
    let ctx: Vec<Var> = xs.iter().chain(&ys).cloned().collect();
    let obj = FormulaInContext::new(ctx, body)?;
    let n = xs.len();
    let p1 = graph(&obj, &f.dom, |a, b, _| Ok(Formula::eqs(&a[..n], b)))?;
    let p2 = graph(&obj, &g.dom, |a, b, _| Ok(Formula::eqs(&a[n..], b)))?;
    Ok(Pullback { obj, p1, p2 })
}

/// `[{x,x′ | x=0 ∧ x′=1}] : {x | x=0} → {x | x=0 ∨ x=1}`.
pub fn subobject_classifier() -> Arrow {
    let dom = FormulaInContext::parse("x |- x = 0").unwrap();
    let cod = FormulaInContext::parse("x |- x = 0 \\/ x = 1").unwrap();
    let rel = FormulaInContext::parse("x, x' |- x = 0 /\\ x' = 1").unwrap();
    Arrow { dom, cod, rel }
}

pub struct Collapse {
    pub obj: FormulaInContext,
    pub iso: Arrow,
    pub iso_inv: Arrow,
}

/// `{z | ∃x⃗(z = ⟨…⟨x1,x2⟩,…,xn⟩ ∧ P)}` with the two graph isomorphisms.
pub fn collapse_context(a: &FormulaInContext) -> Result<Collapse> {
    match a.len() {
        1 => Ok(Collapse {
            obj: a.clone(),
            iso: identity(a),
            iso_inv: identity(a),
        }),
        0 => {
            let t = terminal();
            let mut supply = NameSupply::avoiding(a.all_vars().iter());
            let x = supply.prefer(&Var::new("x"));
            let obj = FormulaInContext::new(vec![x.clone()], Formula::and(vec![t.at(&[x]), a.body.clone()]))?;
            let iso = graph(a, &obj, |_, ys, _| Ok(obj.at(ys)))?;
            let iso_inv = graph(&obj, a, |_, _, _| Ok(Formula::True))?;
            Ok(Collapse { obj, iso, iso_inv })
        }
        _ => {
            let mut supply = NameSupply::avoiding(a.all_vars().iter());
            let z = supply.prefer(&Var::new("z"));
            let tuple = |z: &Var, xs: &[Var]| {
                Surface::eq(z, Term::tuple(xs.iter().map(Term::var).collect()))
            };
            let mut avoid = a.all_vars();
            avoid.insert(z.clone());
            let eq = elaborate_avoiding(&tuple(&z, &a.ctx), &avoid)?;
            let body = Formula::exists_all(&a.ctx, Formula::and(vec![eq, a.body.clone()]));
            let obj = FormulaInContext::new(vec![z], body)?;
            let iso = graph(a, &obj, |xs, ys, _| {
                let mut av: BTreeSet<Var> = xs.iter().chain(ys).cloned().collect();
                av.extend(a.all_vars());
                elaborate_avoiding(&tuple(&ys[0], xs), &av)
            })?;
            let iso_inv = graph(&obj, a, |zs, xs, _| {
                let mut av: BTreeSet<Var> = xs.iter().chain(zs).cloned().collect();
                av.extend(obj.all_vars());
                let eq = elaborate_avoiding(&tuple(&zs[0], xs), &av)?;
                Ok(Formula::and(vec![eq, a.at(xs)]))
            })?;
            Ok(Collapse { obj, iso, iso_inv })
        }
    }
}

impl Collapse {
    /// Both round trips are equivalent to identities.
    pub fn obligations(&self) -> Result<Vec<Obligation>> {
        let there = compose(&self.iso, &self.iso_inv)?;
        let back = compose(&self.iso_inv, &self.iso)?;
        Ok(vec![
            equiv_obligation(&there, &identity(&self.iso.dom))?,
            equiv_obligation(&back, &identity(&self.obj))?,
        ])
    }
}

pub struct Intersection {
    pub pullback: Pullback,
    /// The diagonal coordinate of the pullback object, as a class.
    pub projected: FormulaInContext,
    /// `{x | P ∧ Q[x/y]}`.
    pub expected: FormulaInContext,
    pub iso_witness: Obligation,
}

/// Intersection of two classes as the pullback of
/// `{x,y | P∧Q} ↪ {x,y | x=x ∧ y=y}` along the diagonal of `{x | x=x}`.
pub fn intersect_classes(a: &FormulaInContext, b: &FormulaInContext) -> Result<Intersection> {
    if a.len() != 1 {
        return Err(Error::NotSingleVariable(a.len()));
    }
    if b.len() != 1 {
        return Err(Error::NotSingleVariable(b.len()));
    }
    let pq = product(a, b)?.obj;
    let ctx = pq.ctx.clone();
    let full = FormulaInContext::new(
        ctx.clone(),
        Formula::and(ctx.iter().map(|v| Formula::eq(v, v)).collect()),
    )?;
    let incl = graph(&pq, &full, |xs, ys, _| Ok(Formula::eqs(xs, ys)))?;
    let univ = FormulaInContext::new(vec![ctx[0].clone()], Formula::eq(&ctx[0], &ctx[0]))?;
    let diag = graph(&univ, &full, |xs, ys, _| {
        Ok(Formula::and(vec![Formula::eq(&xs[0], &ys[0]), Formula::eq(&xs[0], &ys[1])]))
    })?;
    let pb = pullback(&incl, &diag)?;
    let w = pb.obj.ctx[2].clone();
    let projected = FormulaInContext::new(
        vec![w.clone()],
        Formula::exists_all(&pb.obj.ctx[..2], pb.obj.body.clone()),
    )?;
    let expected = FormulaInContext::new(
        a.ctx.clone(),
        Formula::and(vec![a.body.clone(), b.at(&a.ctx)]),
    )?;
    let iso_witness = Obligation::new(
        "intersection",
        vec![],
        Formula::iff(projected.body.clone(), expected.at(&[w])),
        "intersection pullback is the conjunction class",
    );
    Ok(Intersection {
        pullback: pb,
        projected,
        expected,
        iso_witness,
    })
}
