//! Hereditarily finite sets as a refutation oracle.
//!
//! `Valid` means no counterexample exists in the chosen finite universe; it
//! never means provable in ZF.

mod eval;
pub mod hfset;
pub mod universe;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{Formula, Var};
use crate::obligation::Obligation;

use eval::{Machine, Program};
pub use hfset::{decode, encode, HfSet};
pub use universe::{code_prefix, rank_universe, Universe, UniverseKind};

pub const DEFAULT_BUDGET: u64 = 2_000_000_000;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(tag = "verdict", content = "counterexample", rename_all = "lowercase")]
pub enum Verdict {
    Valid,
    Counterexample(BTreeMap<Var, HfSet>),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }

    pub fn counterexample(&self) -> Option<&BTreeMap<Var, HfSet>> {
        match self {
            Verdict::Counterexample(m) => Some(m),
            Verdict::Valid => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Valid => f.write_str("valid"),
            Verdict::Counterexample(m) => {
                f.write_str("counterexample")?;
                for (i, (v, s)) in m.iter().enumerate() {
                    let sep = if i == 0 { " " } else { ", " };
                    let code = s.code();
                    write!(f, "{sep}{v} = {s} (#{code})")?;
                }
                Ok(())
            }
        }
    }
}

/// Evaluator over one universe with a step budget.
#[derive(Clone, Copy, Debug)]
pub struct Oracle {
    pub universe: Universe,
    pub budget: u64,
}

impl Oracle {
    pub fn new(universe: Universe) -> Self {
        Oracle {
            universe,
            budget: DEFAULT_BUDGET,
        }
    }

    pub fn rank(n: u32) -> Result<Self> {
        Ok(Oracle::new(rank_universe(n)?))
    }

    pub fn with_budget(mut self, budget: u64) -> Self {
        self.budget = budget;
        self
    }

    fn codes(&self, env: &BTreeMap<Var, HfSet>, prog: &Program) -> Result<Vec<(usize, u64)>> {
        prog.inputs
            .iter()
            .map(|(v, &slot)| {
                let s = env.get(v).ok_or_else(|| Error::UnboundVariable(v.clone()))?;
                let c = s
                    .small_code()
                    .filter(|&c| self.universe.contains_code(c))
                    .ok_or_else(|| Error::OutsideUniverse(v.clone()))?;
                Ok((slot, c))
            })
            .collect()
    }

    pub fn eval(&self, f: &Formula, env: &BTreeMap<Var, HfSet>) -> Result<bool> {
        let prog = Program::compile(f);
        let codes = self.codes(env, &prog)?;
        let mut m = Machine::new(&prog, &self.universe, self.budget);
        for (slot, c) in codes {
            m.set(slot, c);
        }
        m.eval_root()
    }

    /// All assignments to `vars` satisfying `f` (other free variables taken
    /// from `env`), in lexicographic code order.
    pub fn solutions(
        &self,
        vars: &[Var],
        f: &Formula,
        env: &BTreeMap<Var, HfSet>,
    ) -> Result<Vec<Vec<HfSet>>> {
        let mut out = Vec::new();
        self.search(vars, f, env, &mut |vals| {
            out.push(vals.iter().map(|&c| HfSet::from_code(c)).collect());
            true
        })?;
        Ok(out)
    }

    /// Least satisfying assignment to `vars`, if any.
    pub fn witness(
        &self,
        vars: &[Var],
        f: &Formula,
        env: &BTreeMap<Var, HfSet>,
    ) -> Result<Option<Vec<HfSet>>> {
        let mut out = None;
        self.search(vars, f, env, &mut |vals| {
            out = Some(vals.iter().map(|&c| HfSet::from_code(c)).collect());
            false
        })?;
        Ok(out)
    }

    /// Elements of the universe satisfying `f` in the single variable `x`.
    pub fn extension(&self, x: &Var, f: &Formula) -> Result<Vec<HfSet>> {
        Ok(self
            .solutions(std::slice::from_ref(x), f, &BTreeMap::new())?
            .into_iter()
            .map(|mut v| v.pop().unwrap())
            .collect())
    }

    fn search(
        &self,
        vars: &[Var],
        f: &Formula,
        env: &BTreeMap<Var, HfSet>,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> Result<()> {
        let prog = Program::compile(f);
        let mut rest = BTreeMap::new();
        for (v, s) in env {
            if !vars.contains(v) {
                rest.insert(v.clone(), s.clone());
            }
        }
        let mut slots = Vec::new();
        for v in vars {
            match prog.inputs.get(v) {
                Some(&s) => slots.push(Some(s)),
                None => slots.push(None),
            }
        }
        let missing: Vec<&Var> = prog
            .inputs
            .keys()
            .filter(|v| !vars.contains(v) && !rest.contains_key(*v))
            .collect();
        if let Some(v) = missing.first() {
            return Err(Error::UnboundVariable((*v).clone()));
        }
        let mut m = Machine::new(&prog, &self.universe, self.budget);
        for (v, s) in &rest {
            if let Some(&slot) = prog.inputs.get(v) {
                let c = s
                    .small_code()
                    .filter(|&c| self.universe.contains_code(c))
                    .ok_or_else(|| Error::OutsideUniverse(v.clone()))?;
                m.set(slot, c);
            }
        }
        // Variables absent from the formula range freely over the universe.
        let live: Vec<usize> = slots.iter().flatten().copied().collect();
        let size = self.universe.size();
        let mut full = vec![0u64; vars.len()];
        let mut inner = |vals: &[u64]| -> bool {
            let mut k = 0;
            for (i, s) in slots.iter().enumerate() {
                if s.is_some() {
                    full[i] = vals[k];
                    k += 1;
                }
            }
            expand_dead(&slots, &mut full, 0, size, visit)
        };
        m.search(&live, &mut inner)?;
        Ok(())
    }

    pub fn check(&self, ob: &Obligation) -> Result<Verdict> {
        let mut parts = ob.hyps.clone();
        if let Some(g) = &ob.hf_guard {
            parts.push(g.clone());
        }
        parts.push(Formula::not(ob.goal.clone()));
        let f = Formula::and(parts);
        let vars: Vec<Var> = f.free_vars().into_iter().collect();
        Ok(match self.witness(&vars, &f, &BTreeMap::new())? {
            None => Verdict::Valid,
            Some(vals) => Verdict::Counterexample(vars.into_iter().zip(vals).collect()),
        })
    }
}

fn expand_dead(
    slots: &[Option<usize>],
    full: &mut Vec<u64>,
    i: usize,
    size: u64,
    visit: &mut dyn FnMut(&[u64]) -> bool,
) -> bool {
    if i == slots.len() {
        return visit(full);
    }
    if slots[i].is_some() {
        return expand_dead(slots, full, i + 1, size, visit);
    }
    for c in 0..size {
        full[i] = c;
        if !expand_dead(slots, full, i + 1, size, visit) {
            return false;
        }
    }
    true
}

pub fn eval(f: &Formula, env: &BTreeMap<Var, HfSet>, u: &Universe) -> Result<bool> {
    Oracle::new(*u).eval(f, env)
}

pub fn check(ob: &Obligation, u: &Universe) -> Result<Verdict> {
    Oracle::new(*u).check(ob)
}
