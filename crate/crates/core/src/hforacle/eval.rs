//! Tarskian evaluation over a finite transitive universe.
//!
//! Formulas are compiled to an arena with one slot per binder. Quantifiers
//! draw their witnesses from candidate generators where the body pins the
//! variable down (`x = y`, `x ∈ y`, descriptions `∀u(u∈x ↔ ψ)`, and
//! membership consequences of `∀u(u∈t ↔ ψ)` for known `t`), and fall back
//! to the whole universe otherwise. Generators only ever narrow a search to
//! a superset of the true witnesses, so results are exact. Quantifier nodes
//! are memoized on the values of their free variables.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::kernel::{Formula, Var};

use super::universe::Universe;

type Slot = usize;
type Id = usize;

const EXPAND_LIMIT: usize = 4096;

#[derive(Debug)]
enum Node {
    True,
    False,
    Mem(Slot, Slot),
    Eq(Slot, Slot),
    Not(Id),
    And(Vec<Id>),
    Or(Vec<Id>),
    Implies(Id, Id),
    Iff(Id, Id),
    Forall(Slot, Id),
    Exists(Slot, Id),
}

#[derive(Debug)]
pub(crate) struct Program {
    nodes: Vec<Node>,
    free: Vec<Vec<Slot>>,
    nslots: usize,
    root: Id,
    pub(crate) inputs: BTreeMap<Var, Slot>,
}

impl Program {
    pub(crate) fn compile(f: &Formula) -> Program {
        let mut p = Program {
            nodes: Vec::new(),
            free: Vec::new(),
            nslots: 0,
            root: 0,
            inputs: BTreeMap::new(),
        };
        let mut scope: Vec<(Var, Slot)> = Vec::new();
        p.root = p.add(f, &mut scope);
        p
    }

    fn slot(&mut self, v: &Var, scope: &[(Var, Slot)]) -> Slot {
        if let Some((_, s)) = scope.iter().rev().find(|(w, _)| w == v) {
            return *s;
        }
        if let Some(s) = self.inputs.get(v) {
            return *s;
        }
        let s = self.nslots;
        self.nslots += 1;
        self.inputs.insert(v.clone(), s);
        s
    }

    fn push(&mut self, n: Node, mut free: Vec<Slot>) -> Id {
        free.sort_unstable();
        free.dedup();
        self.nodes.push(n);
        self.free.push(free);
        self.nodes.len() - 1
    }

    fn add(&mut self, f: &Formula, scope: &mut Vec<(Var, Slot)>) -> Id {
        match f {
            Formula::True => self.push(Node::True, vec![]),
            Formula::False => self.push(Node::False, vec![]),
            Formula::Mem(a, b) | Formula::Eq(a, b) => {
                let (a, b) = (self.slot(a, scope), self.slot(b, scope));
                let n = if matches!(f, Formula::Mem(..)) {
                    Node::Mem(a, b)
                } else {
                    Node::Eq(a, b)
                };
                self.push(n, vec![a, b])
            }
            Formula::Not(x) => {
                let c = self.add(x, scope);
                let fr = self.free[c].clone();
                self.push(Node::Not(c), fr)
            }
            Formula::And(xs) | Formula::Or(xs) => {
                let cs: Vec<Id> = xs.iter().map(|x| self.add(x, scope)).collect();
                let fr = cs.iter().flat_map(|&c| self.free[c].clone()).collect();
                let n = if matches!(f, Formula::And(_)) {
                    Node::And(cs)
                } else {
                    Node::Or(cs)
                };
                self.push(n, fr)
            }
            Formula::Implies(a, b) | Formula::Iff(a, b) => {
                let (a, b) = (self.add(a, scope), self.add(b, scope));
                let fr = self.free[a].iter().chain(&self.free[b]).copied().collect();
                let n = if matches!(f, Formula::Implies(..)) {
                    Node::Implies(a, b)
                } else {
                    Node::Iff(a, b)
                };
                self.push(n, fr)
            }
            Formula::Forall(v, x) | Formula::Exists(v, x) => {
                let s = self.nslots;
                self.nslots += 1;
                scope.push((v.clone(), s));
                let c = self.add(x, scope);
                scope.pop();
                let fr = self.free[c].iter().copied().filter(|&t| t != s).collect();
                let n = if matches!(f, Formula::Forall(..)) {
                    Node::Forall(s, c)
                } else {
                    Node::Exists(s, c)
                };
                self.push(n, fr)
            }
        }
    }

    fn mentions(&self, id: Id, s: Slot) -> bool {
        self.free[id].binary_search(&s).is_ok()
    }
}

type Cands = Option<Vec<u64>>;

pub(crate) struct Machine<'p> {
    prog: &'p Program,
    size: u64,
    env: Vec<u64>,
    bound: Vec<bool>,
    steps: u64,
    budget: u64,
    memo: HashMap<(Id, Vec<u64>), bool>,
    desc: HashMap<(Id, Slot, Vec<u64>), Option<u64>>,
}

fn elems(code: u64) -> impl Iterator<Item = u64> {
    (0..64u64).filter(move |i| code >> i & 1 == 1)
}

fn member(a: u64, b: u64) -> bool {
    a < 64 && b >> a & 1 == 1
}

fn intersect(a: Vec<u64>, b: &[u64]) -> Vec<u64> {
    a.into_iter().filter(|x| b.binary_search(x).is_ok()).collect()
}

impl<'p> Machine<'p> {
    pub(crate) fn new(prog: &'p Program, u: &Universe, budget: u64) -> Self {
        Machine {
            prog,
            size: u.size(),
            env: vec![0; prog.nslots],
            bound: vec![false; prog.nslots],
            steps: 0,
            budget,
            memo: HashMap::new(),
            desc: HashMap::new(),
        }
    }

    pub(crate) fn set(&mut self, s: Slot, val: u64) {
        self.env[s] = val;
        self.bound[s] = true;
    }

    fn bind(&mut self, s: Slot, val: u64) -> (u64, bool) {
        let old = (self.env[s], self.bound[s]);
        self.env[s] = val;
        self.bound[s] = true;
        old
    }

    fn restore(&mut self, s: Slot, old: (u64, bool)) {
        self.env[s] = old.0;
        self.bound[s] = old.1;
    }

    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            Err(Error::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    fn key(&self, id: Id, skip: Option<Slot>) -> Vec<u64> {
        self.prog.free[id]
            .iter()
            .filter(|&&s| Some(s) != skip)
            .map(|&s| self.env[s])
            .collect()
    }

    fn normalize(&self, mut v: Vec<u64>) -> Vec<u64> {
        v.retain(|&x| x < self.size);
        v.sort_unstable();
        v.dedup();
        v
    }

    pub(crate) fn eval_root(&mut self) -> Result<bool> {
        self.eval(self.prog.root)
    }

    fn eval(&mut self, id: Id) -> Result<bool> {
        self.tick()?;
        let prog = self.prog;
        Ok(match &prog.nodes[id] {
            Node::True => true,
            Node::False => false,
            Node::Mem(a, b) => member(self.env[*a], self.env[*b]),
            Node::Eq(a, b) => self.env[*a] == self.env[*b],
            Node::Not(c) => !self.eval(*c)?,
            Node::And(cs) => {
                for &c in cs {
                    if !self.eval(c)? {
                        return Ok(false);
                    }
                }
                true
            }
            Node::Or(cs) => {
                for &c in cs {
                    if self.eval(c)? {
                        return Ok(true);
                    }
                }
                false
            }
            Node::Implies(a, b) => !self.eval(*a)? || self.eval(*b)?,
            Node::Iff(a, b) => self.eval(*a)? == self.eval(*b)?,
            Node::Forall(v, c) | Node::Exists(v, c) => {
                let want = matches!(prog.nodes[id], Node::Exists(..));
                let key = (id, self.key(id, None));
                if let Some(&r) = self.memo.get(&key) {
                    return Ok(r);
                }
                let cands = self.gen(*v, *c, want)?;
                let mut hit = false;
                match cands {
                    Some(vals) => {
                        for val in vals {
                            let old = self.bind(*v, val);
                            let r = self.eval(*c);
                            self.restore(*v, old);
                            if r? == want {
                                hit = true;
                                break;
                            }
                        }
                    }
                    None => {
                        for val in 0..self.size {
                            let old = self.bind(*v, val);
                            let r = self.eval(*c);
                            self.restore(*v, old);
                            if r? == want {
                                hit = true;
                                break;
                            }
                        }
                    }
                }
                let r = if want { hit } else { !hit };
                self.memo.insert(key, r);
                r
            }
        })
    }

    /// A superset of the values of `x` for which node `id` evaluates to
    /// `pos` under the current bindings, or `None` for "anything".
    fn gen(&mut self, x: Slot, id: Id, pos: bool) -> Result<Cands> {
        let prog = self.prog;
        match prog.nodes[id] {
            Node::True if !pos => return Ok(Some(Vec::new())),
            Node::False if pos => return Ok(Some(Vec::new())),
            _ => {}
        }
        if !prog.mentions(id, x) {
            return Ok(None);
        }
        Ok(match &prog.nodes[id] {
            Node::True | Node::False => None,
            Node::Eq(a, b) if a == b && !pos => Some(Vec::new()),
            Node::Mem(a, b) if a == b && pos => Some(Vec::new()),
            Node::Eq(a, b) if pos => {
                if *a == x && *b != x && self.bound[*b] {
                    Some(self.normalize(vec![self.env[*b]]))
                } else if *b == x && *a != x && self.bound[*a] {
                    Some(self.normalize(vec![self.env[*a]]))
                } else {
                    None
                }
            }
            Node::Mem(a, b) if pos && *a == x && *b != x && self.bound[*b] => {
                Some(self.normalize(elems(self.env[*b]).collect()))
            }
            Node::Eq(..) | Node::Mem(..) => None,
            Node::Not(c) => self.gen(x, *c, !pos)?,
            Node::And(cs) | Node::Or(cs) => {
                let parts: Vec<(Id, bool)> = cs.iter().map(|&c| (c, pos)).collect();
                if matches!(prog.nodes[id], Node::And(_)) == pos {
                    self.conj(x, &parts)?
                } else {
                    self.disj(x, &parts)?
                }
            }
            Node::Implies(a, b) => {
                if pos {
                    self.disj(x, &[(*a, false), (*b, true)])?
                } else {
                    self.conj(x, &[(*a, true), (*b, false)])?
                }
            }
            Node::Iff(a, b) => {
                let (l, r) = if pos {
                    ([(*a, true), (*b, true)], [(*a, false), (*b, false)])
                } else {
                    ([(*a, true), (*b, false)], [(*a, false), (*b, true)])
                };
                match self.conj(x, &l)? {
                    None => None,
                    Some(s1) => self.conj(x, &r)?.map(|s2| self.union(s1, s2)),
                }
            }
            Node::Forall(v, c) | Node::Exists(v, c) => {
                let universal = matches!(prog.nodes[id], Node::Forall(..)) == pos;
                if universal {
                    self.gen_universal(x, *v, *c, pos)?
                } else {
                    self.gen_existential(x, *v, *c, pos)?
                }
            }
        })
    }

    fn union(&self, mut a: Vec<u64>, b: Vec<u64>) -> Vec<u64> {
        a.extend(b);
        self.normalize(a)
    }

    fn conj(&mut self, x: Slot, parts: &[(Id, bool)]) -> Result<Cands> {
        let mut acc: Cands = None;
        for &(c, p) in parts {
            if let Some(s) = self.gen(x, c, p)? {
                acc = Some(match acc {
                    None => s,
                    Some(a) => intersect(a, &s),
                });
                if acc.as_ref().is_some_and(|a| a.is_empty()) {
                    break;
                }
            }
        }
        Ok(acc)
    }

    fn disj(&mut self, x: Slot, parts: &[(Id, bool)]) -> Result<Cands> {
        let mut acc = Vec::new();
        for &(c, p) in parts {
            match self.gen(x, c, p)? {
                None => return Ok(None),
                Some(s) => acc.extend(s),
            }
        }
        Ok(Some(self.normalize(acc)))
    }

    /// Some `v` makes `c` evaluate to `p`.
    fn gen_existential(&mut self, x: Slot, v: Slot, c: Id, p: bool) -> Result<Cands> {
        let old = (self.env[v], self.bound[v]);
        self.bound[v] = false;
        let direct = self.gen(x, c, p);
        let result = match direct {
            Ok(Some(s)) => Ok(Some(s)),
            Err(e) => Err(e),
            Ok(None) => self.expand(x, v, c, p),
        };
        self.restore(v, old);
        result
    }

    fn expand(&mut self, x: Slot, v: Slot, c: Id, p: bool) -> Result<Cands> {
        let Some(vs) = self.gen(v, c, p)? else {
            return Ok(None);
        };
        if vs.len() > EXPAND_LIMIT {
            return Ok(None);
        }
        let mut acc = Vec::new();
        for val in vs {
            let old = self.bind(v, val);
            let r = self.gen(x, c, p);
            self.restore(v, old);
            match r? {
                None => return Ok(None),
                Some(s) => acc.extend(s),
            }
        }
        Ok(Some(self.normalize(acc)))
    }

    /// Every `v` makes `c` evaluate to `p`.
    fn gen_universal(&mut self, x: Slot, v: Slot, c: Id, p: bool) -> Result<Cands> {
        let prog = self.prog;
        let empty_of = |n: &Node| matches!(n, Node::Mem(a, b) if *a == v && *b == x);
        match (&prog.nodes[c], p) {
            (Node::Not(m), true) if empty_of(&prog.nodes[*m]) => {
                return Ok(Some(self.normalize(vec![0])));
            }
            (n, false) if empty_of(n) => return Ok(Some(self.normalize(vec![0]))),
            _ => {}
        }
        let (Node::Iff(l, r), true) = (&prog.nodes[c], p) else {
            return Ok(None);
        };
        let (t, psi) = match (&prog.nodes[*l], &prog.nodes[*r]) {
            (Node::Mem(a, t), _) if *a == v && *t != v => (*t, *r),
            (_, Node::Mem(a, t)) if *a == v && *t != v => (*t, *l),
            _ => return Ok(None),
        };
        let old = (self.env[v], self.bound[v]);
        self.bound[v] = false;
        let result = self.describe_rules(x, v, t, psi);
        self.restore(v, old);
        result
    }

    fn describe_rules(&mut self, x: Slot, v: Slot, t: Slot, psi: Id) -> Result<Cands> {
        let prog = self.prog;
        if t == x {
            let ready = prog.free[psi]
                .iter()
                .all(|&s| s == v || (s != x && self.bound[s]));
            if !ready {
                return Ok(None);
            }
            return Ok(Some(match self.description(v, psi)? {
                Some(code) => vec![code],
                None => vec![],
            }));
        }
        if !self.bound[t] {
            return Ok(None);
        }
        let t0 = self.env[t];
        let mut acc: Cands = None;
        let meet = |acc: &mut Cands, s: Vec<u64>| {
            *acc = Some(match acc.take() {
                None => s,
                Some(a) => intersect(a, &s),
            });
        };
        if has_disjunct_eq(prog, psi, v, x) {
            meet(&mut acc, self.normalize(elems(t0).collect()));
        }
        for u in elems(t0) {
            if acc.as_ref().is_some_and(|a| a.len() <= 1) {
                break;
            }
            let old = self.bind(v, u);
            let r = self.gen(x, psi, true);
            self.restore(v, old);
            if let Some(s) = r? {
                meet(&mut acc, s);
            }
        }
        Ok(acc)
    }

    /// Code of `{v ∈ U | psi}`, or `None` when that set is not in `U`.
    fn description(&mut self, v: Slot, psi: Id) -> Result<Option<u64>> {
        let key = (psi, v, self.key(psi, Some(v)));
        if let Some(&r) = self.desc.get(&key) {
            return Ok(r);
        }
        let cands = match self.gen(v, psi, true)? {
            Some(vals) => vals,
            None => (0..self.size).collect(),
        };
        let mut code: Option<u64> = Some(0);
        for val in cands {
            let old = self.bind(v, val);
            let r = self.eval(psi);
            self.restore(v, old);
            if r? {
                code = code.and_then(|c| (val < 64).then(|| c | 1 << val));
            }
        }
        let code = code.filter(|&c| c < self.size);
        self.desc.insert(key, code);
        Ok(code)
    }

    /// Enumerates assignments to `vars` (in order) making the root true, in
    /// lexicographic code order; `visit` returns `false` to stop.
    pub(crate) fn search(
        &mut self,
        vars: &[Slot],
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> Result<bool> {
        let mut vals = Vec::with_capacity(vars.len());
        self.search_rec(vars, &mut vals, visit)
    }

    fn search_rec(
        &mut self,
        vars: &[Slot],
        vals: &mut Vec<u64>,
        visit: &mut dyn FnMut(&[u64]) -> bool,
    ) -> Result<bool> {
        let root = self.prog.root;
        let Some((&x, rest)) = vars.split_first() else {
            if self.eval(root)? {
                return Ok(visit(vals));
            }
            return Ok(true);
        };
        let cands = match self.gen(x, root, true)? {
            Some(c) => c,
            None => (0..self.size).collect(),
        };
        for val in cands {
            let old = self.bind(x, val);
            vals.push(val);
            let r = self.search_rec(rest, vals, visit);
            vals.pop();
            self.restore(x, old);
            if !r? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn has_disjunct_eq(prog: &Program, psi: Id, v: Slot, x: Slot) -> bool {
    let is_eq = |n: &Node| matches!(n, Node::Eq(a, b) if (*a == v && *b == x) || (*a == x && *b == v));
    match &prog.nodes[psi] {
        Node::Or(cs) => cs.iter().any(|&c| is_eq(&prog.nodes[c])),
        n => is_eq(n),
    }
}
