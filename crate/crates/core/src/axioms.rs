//! The axioms of ZF as closed kernel formulas, with schema instances built
//! on demand.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::kernel::{elaborate, elaborate_avoiding, parse, Formula, NameSupply, Surface, Var};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum AxiomId {
    Extensionality,
    /// `∀p⃗ ∀x ∃y ∀t(t∈y ↔ (t∈x ∧ P))` where `t` is `subject`.
    Separation {
        p: Surface,
        params: Vec<Var>,
        subject: Var,
    },
    Pairing,
    Union,
    Powerset,
    /// `∀p⃗ ∀z(∀x(x∈z → ∃!y F) → ∃z′ ∀x(x∈z → ∃y(y∈z′ ∧ F)))`.
    Replacement {
        f: Surface,
        params: Vec<Var>,
        x: Var,
        y: Var,
    },
    Infinity,
    Foundation,
}

impl AxiomId {
    pub fn name(&self) -> &'static str {
        match self {
            AxiomId::Extensionality => "extensionality",
            AxiomId::Separation { .. } => "separation",
            AxiomId::Pairing => "pairing",
            AxiomId::Union => "union",
            AxiomId::Powerset => "powerset",
            AxiomId::Replacement { .. } => "replacement",
            AxiomId::Infinity => "infinity",
            AxiomId::Foundation => "foundation",
        }
    }

    /// The six axioms that are single sentences.
    pub fn finite() -> Vec<AxiomId> {
        vec![
            AxiomId::Extensionality,
            AxiomId::Pairing,
            AxiomId::Union,
            AxiomId::Powerset,
            AxiomId::Infinity,
            AxiomId::Foundation,
        ]
    }

    pub fn separation(p: Surface, params: &[Var], subject: &Var) -> AxiomId {
        AxiomId::Separation {
            p,
            params: params.to_vec(),
            subject: subject.clone(),
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomId::Separation { p, params, subject } => {
                write!(f, "separation[{subject}; {}]({p})", join(params))
            }
            AxiomId::Replacement { f: g, params, x, y } => {
                write!(f, "replacement[{x}, {y}; {}]({g})", join(params))
            }
            other => f.write_str(other.name()),
        }
    }
}

fn join(vs: &[Var]) -> String {
    vs.iter().map(Var::name).collect::<Vec<_>>().join(", ")
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "extensionality" => AxiomId::Extensionality,
            "pairing" => AxiomId::Pairing,
            "union" => AxiomId::Union,
            "powerset" => AxiomId::Powerset,
            "infinity" => AxiomId::Infinity,
            "foundation" => AxiomId::Foundation,
            _ => return Err(Error::UnknownAxiom(s.to_string())),
        })
    }
}

fn fixed(text: &str) -> Formula {
    elaborate(&parse(text).expect("axiom text parses")).expect("axiom text elaborates")
}

fn side_condition(body: &Formula, allowed: &BTreeSet<Var>, what: &str) -> Result<()> {
    match body.free_vars().difference(allowed).next() {
        Some(v) => Err(Error::EscapingVariable {
            var: v.clone(),
            context: format!("{what} [{}]", join(&allowed.iter().cloned().collect::<Vec<_>>())),
        }),
        None => Ok(()),
    }
}

pub fn axiom(id: &AxiomId) -> Result<Formula> {
    Ok(match id {
        AxiomId::Extensionality => fixed("forall x y. ((forall t. (t in x <-> t in y)) -> x = y)"),
        AxiomId::Pairing => fixed("forall x y. exists z. forall t. (t in z <-> t = x \\/ t = y)"),
        AxiomId::Union => fixed("forall x. exists z. forall t. (t in z <-> exists y. (t in y /\\ y in x))"),
        AxiomId::Powerset => fixed("forall y. exists z. forall x. (x in z <-> x sub y)"),
        AxiomId::Infinity => fixed("exists x. (0 in x /\\ forall t. (t in x -> sigma(t) in x))"),
        AxiomId::Foundation => {
            fixed("forall x. (x != 0 -> exists z. (z in x /\\ forall t. (t in x -> t notin z)))")
        }
        AxiomId::Separation { p, params, subject } => {
            let mut allowed: BTreeSet<Var> = params.iter().cloned().collect();
            allowed.insert(subject.clone());
            let body = elaborate_avoiding(p, &allowed)?;
            side_condition(&body, &allowed, "separation parameters")?;
            let mut names = NameSupply::avoiding(body.all_vars().iter().chain(&allowed));
            let x = names.prefer(&Var::new("x"));
            let y = names.prefer(&Var::new("y"));
            let t = subject;
            let inner = Formula::forall(
                t,
                Formula::iff(
                    Formula::mem(t, &y),
                    Formula::and(vec![Formula::mem(t, &x), body]),
                ),
            );
            Formula::forall_all(params, Formula::forall(&x, Formula::exists(&y, inner)))
        }
        AxiomId::Replacement { f, params, x, y } => {
            let mut allowed: BTreeSet<Var> = params.iter().cloned().collect();
            allowed.insert(x.clone());
            allowed.insert(y.clone());
            let body = elaborate_avoiding(f, &allowed)?;
            side_condition(&body, &allowed, "replacement parameters")?;
            let mut names = NameSupply::avoiding(body.all_vars().iter().chain(&allowed));
            let z = names.prefer(&Var::new("z"));
            let z1 = names.prefer(&Var::new("z'"));
            let hyp = Formula::forall(
                x,
                Formula::implies(Formula::mem(x, &z), Formula::exists_unique(y, body.clone())),
            );
            let concl = Formula::exists(
                &z1,
                Formula::forall(
                    x,
                    Formula::implies(
                        Formula::mem(x, &z),
                        Formula::exists(y, Formula::and(vec![Formula::mem(y, &z1), body])),
                    ),
                ),
            );
            Formula::forall_all(params, Formula::forall(&z, Formula::implies(hyp, concl)))
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel;

    #[test]
    fn extensionality_shape() {
        let want = kernel("forall x y. ((forall t. (t in x <-> t in y)) -> x = y)").unwrap();
        assert_eq!(axiom(&AxiomId::Extensionality).unwrap(), want);
    }

    #[test]
    fn separation_instance() {
        let t = Var::new("t");
        let id = AxiomId::separation(parse("t = t").unwrap(), &[], &t);
        let want = kernel("forall x. exists y. forall t. (t in y <-> t in x /\\ t = t)").unwrap();
        assert!(axiom(&id).unwrap().alpha_eq(&want));
    }

    #[test]
    fn separation_renames_clashing_bound_names() {
        let t = Var::new("t");
        let x = Var::new("x");
        let id = AxiomId::separation(parse("t in x").unwrap(), std::slice::from_ref(&x), &t);
        let f = axiom(&id).unwrap();
        assert!(f.free_vars().is_empty());
        assert!(matches!(f, Formula::Forall(ref p, ref b) if *p == x && matches!(**b, Formula::Forall(ref x1, _) if *x1 != x)));
    }

    #[test]
    fn side_condition_enforced() {
        let t = Var::new("t");
        let id = AxiomId::separation(parse("t in q").unwrap(), &[], &t);
        assert!(matches!(axiom(&id), Err(Error::EscapingVariable { .. })));
    }

    #[test]
    fn all_closed() {
        for id in AxiomId::finite() {
            assert!(axiom(&id).unwrap().free_vars().is_empty(), "{id}");
        }
        let rep = AxiomId::Replacement {
            f: parse("y = sing(x)").unwrap(),
            params: vec![],
            x: Var::new("x"),
            y: Var::new("y"),
        };
        assert!(axiom(&rep).unwrap().free_vars().is_empty());
    }

    #[test]
    fn infinity_mentions_successor() {
        let f = axiom(&AxiomId::Infinity).unwrap();
        assert!(matches!(f, Formula::Exists(..)));
        assert!(f.size() > 10, "{}", f.size());
    }
}
