//! TPTP first-order export of obligation bundles, and a parser for the FOF
//! fragment the exporter emits.

use std::collections::{BTreeMap, BTreeSet};

use crate::axioms::{axiom, AxiomId};
use crate::error::{Error, Result};
use crate::kernel::{Formula, Surface, Var};
use crate::obligation::Obligation;
use crate::syncat::FormulaInContext;

#[derive(Clone, Debug, Default)]
pub struct ObligationBundle {
    pub obligations: Vec<Obligation>,
    pub axioms: Vec<AxiomId>,
    /// Written as `%` comment lines at the top of the file.
    pub metadata: Vec<String>,
    /// Class bodies seen by [`ObligationBundle::auto_separation`].
    pub classes: Vec<FormulaInContext>,
}

impl ObligationBundle {
    pub fn new(obligations: Vec<Obligation>) -> Self {
        ObligationBundle {
            obligations,
            ..Default::default()
        }
    }

    /// Adds one Separation instance per class, with the first context
    /// variable as subject and the rest as parameters. Returns how many
    /// were added.
    pub fn auto_separation(&mut self) -> usize {
        let before = self.axioms.len();
        for c in &self.classes {
            if let Some((subject, params)) = c.ctx.split_first() {
                let id = AxiomId::separation(Surface::from(&c.body), params, subject);
                if !self.axioms.contains(&id) {
                    self.axioms.push(id);
                }
            }
        }
        self.axioms.len() - before
    }
}

/// Maps kernel variables to TPTP variable names, first come first served.
#[derive(Default)]
struct Names {
    map: BTreeMap<Var, String>,
    used: BTreeSet<String>,
}

impl Names {
    fn get(&mut self, v: &Var) -> String {
        if let Some(n) = self.map.get(v) {
            return n.clone();
        }
        let mut base = String::new();
        for (i, c) in v.name().chars().enumerate() {
            match c {
                '\'' => base.push_str("_p"),
                c if i == 0 => base.push(c.to_ascii_uppercase()),
                c => base.push(c),
            }
        }
        let mut name = base.clone();
        let mut k = 1;
        while self.used.contains(&name) {
            name = format!("{base}_{k}");
            k += 1;
        }
        self.used.insert(name.clone());
        self.map.insert(v.clone(), name.clone());
        name
    }
}

fn fof(f: &Formula, names: &mut Names, out: &mut String) {
    let join = |fs: &[Formula], sep: &str, names: &mut Names, out: &mut String| {
        out.push('(');
        for (i, g) in fs.iter().enumerate() {
            if i > 0 {
                out.push_str(sep);
            }
            fof(g, names, out);
        }
        out.push(')');
    };
    match f {
        Formula::True => out.push_str("$true"),
        Formula::False => out.push_str("$false"),
        Formula::Mem(a, b) => {
            let (a, b) = (names.get(a), names.get(b));
            out.push_str(&format!("elem({a},{b})"));
        }
        Formula::Eq(a, b) => {
            let (a, b) = (names.get(a), names.get(b));
            out.push_str(&format!("({a} = {b})"));
        }
        Formula::Not(g) => {
            out.push('~');
            fof(g, names, out);
        }
        Formula::And(fs) if fs.is_empty() => out.push_str("$true"),
        Formula::Or(fs) if fs.is_empty() => out.push_str("$false"),
        Formula::And(fs) if fs.len() == 1 => fof(&fs[0], names, out),
        Formula::Or(fs) if fs.len() == 1 => fof(&fs[0], names, out),
        Formula::And(fs) => join(fs, " & ", names, out),
        Formula::Or(fs) => join(fs, " | ", names, out),
        Formula::Implies(a, b) => join(&[(**a).clone(), (**b).clone()], " => ", names, out),
        Formula::Iff(a, b) => join(&[(**a).clone(), (**b).clone()], " <=> ", names, out),
        Formula::Forall(v, g) | Formula::Exists(v, g) => {
            let q = if matches!(f, Formula::Forall(..)) { '!' } else { '?' };
            let v = names.get(v);
            out.push_str(&format!("{q}[{v}]: "));
            fof(g, names, out);
        }
    }
}

/// The FOF rendering of a closed formula.
pub fn formula_to_fof(f: &Formula) -> String {
    let mut out = String::new();
    fof(f, &mut Names::default(), &mut out);
    out
}

/// Axioms first as `ax_i`, then each obligation closure as `obl_j`.
pub fn to_tptp(b: &ObligationBundle) -> Result<String> {
    let mut out = String::new();
    for m in &b.metadata {
        for line in m.lines() {
            out.push_str(&format!("% {line}\n"));
        }
    }
    for (i, id) in b.axioms.iter().enumerate() {
        let f = axiom(id)?;
        if !f.free_vars().is_empty() {
            return Err(Error::NotKernel(format!("axiom instance {} is not closed", i + 1)));
        }
        out.push_str(&format!("fof(ax_{}, axiom, {}).\n", i + 1, formula_to_fof(&f)));
    }
    for (j, ob) in b.obligations.iter().enumerate() {
        out.push_str(&format!("% {}\n", ob.name));
        out.push_str(&format!(
            "fof(obl_{}, conjecture, {}).\n",
            j + 1,
            formula_to_fof(&ob.closure())
        ));
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FofEntry {
    pub name: String,
    pub role: String,
    pub formula: Formula,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Word(String),
    Var(String),
    Dollar(String),
    Sym(&'static str),
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    const SYMS: [&str; 14] = [
        "<=>", "=>", "!=", "(", ")", "[", "]", ",", ".", ":", "&", "|", "~", "=",
    ];
    let mut toks = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = line.split('%').next().unwrap_or("");
        let b = line.as_bytes();
        let mut i = 0;
        while i < b.len() {
            let c = b[i] as char;
            if c.is_whitespace() {
                i += 1;
                continue;
            }
            if c.is_ascii_alphanumeric() || c == '$' || c == '_' {
                let start = i;
                i += 1;
                while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                    i += 1;
                }
                let w = line[start..i].to_string();
                toks.push((
                    match c {
                        '$' => Tok::Dollar(w),
                        c if c.is_ascii_uppercase() => Tok::Var(w),
                        _ => Tok::Word(w),
                    },
                    line_no,
                ));
                continue;
            }
            if c == '!' || c == '?' {
                if line[i..].starts_with("!=") {
                    toks.push((Tok::Sym("!="), line_no));
                    i += 2;
                } else {
                    toks.push((Tok::Sym(if c == '!' { "!" } else { "?" }), line_no));
                    i += 1;
                }
                continue;
            }
            match SYMS.iter().find(|s| line[i..].starts_with(**s)) {
                Some(s) => {
                    toks.push((Tok::Sym(s), line_no));
                    i += s.len();
                }
                None => {
                    return Err(Error::Syntax {
                        line: line_no,
                        col: i + 1,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
        }
    }
    Ok(toks)
}

struct FofParser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl FofParser {
    fn line(&self) -> usize {
        self.toks
            .get(self.pos)
            .or(self.toks.last())
            .map_or(1, |t| t.1)
    }

    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Syntax {
            line: self.line(),
            col: 1,
            msg: msg.to_string(),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.0)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.0.clone());
        self.pos += 1;
        t
    }

    fn sym(&mut self, s: &str) -> Result<()> {
        match self.next() {
            Some(Tok::Sym(t)) if t == s => Ok(()),
            _ => {
                self.pos -= 1;
                self.err(&format!("expected `{s}`"))
            }
        }
    }

    fn at_sym(&self, s: &str) -> bool {
        matches!(self.peek(), Some(Tok::Sym(t)) if *t == s)
    }

    fn word(&mut self) -> Result<String> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            _ => {
                self.pos -= 1;
                self.err("expected a lower-case word")
            }
        }
    }

    fn var(&mut self) -> Result<Var> {
        match self.next() {
            Some(Tok::Var(w)) => Ok(Var::new(&w)),
            _ => {
                self.pos -= 1;
                self.err("expected a variable")
            }
        }
    }

    fn entry(&mut self) -> Result<FofEntry> {
        if self.word()? != "fof" {
            self.pos -= 1;
            return self.err("expected `fof`");
        }
        self.sym("(")?;
        let name = self.word()?;
        self.sym(",")?;
        let role = self.word()?;
        self.sym(",")?;
        let formula = self.formula()?;
        self.sym(")")?;
        self.sym(".")?;
        Ok(FofEntry { name, role, formula })
    }

    fn formula(&mut self) -> Result<Formula> {
        let first = self.unit()?;
        for (op, assoc) in [("&", true), ("|", true), ("=>", false), ("<=>", false)] {
            if !self.at_sym(op) {
                continue;
            }
            let mut parts = vec![first];
            while self.at_sym(op) {
                self.pos += 1;
                parts.push(self.unit()?);
                if !assoc {
                    break;
                }
            }
            return Ok(match op {
                "&" => Formula::And(parts),
                "|" => Formula::Or(parts),
                _ => {
                    let b = parts.pop().unwrap();
                    let a = parts.pop().unwrap();
                    if op == "=>" {
                        Formula::implies(a, b)
                    } else {
                        Formula::iff(a, b)
                    }
                }
            });
        }
        Ok(first)
    }

    fn unit(&mut self) -> Result<Formula> {
        match self.next() {
            Some(Tok::Sym("~")) => Ok(Formula::not(self.unit()?)),
            Some(Tok::Sym(q @ ("!" | "?"))) => {
                self.sym("[")?;
                let mut vs = vec![self.var()?];
                while self.at_sym(",") {
                    self.pos += 1;
                    vs.push(self.var()?);
                }
                self.sym("]")?;
                self.sym(":")?;
                let body = self.unit()?;
                Ok(if q == "!" {
                    Formula::forall_all(&vs, body)
                } else {
                    Formula::exists_all(&vs, body)
                })
            }
            Some(Tok::Sym("(")) => {
                let f = self.formula()?;
                self.sym(")")?;
                Ok(f)
            }
            Some(Tok::Dollar(d)) if d == "$true" => Ok(Formula::True),
            Some(Tok::Dollar(d)) if d == "$false" => Ok(Formula::False),
            Some(Tok::Word(w)) if w == "elem" => {
                self.sym("(")?;
                let a = self.var()?;
                self.sym(",")?;
                let b = self.var()?;
                self.sym(")")?;
                Ok(Formula::mem(&a, &b))
            }
            Some(Tok::Var(a)) => {
                let a = Var::new(&a);
                let neg = match self.next() {
                    Some(Tok::Sym("=")) => false,
                    Some(Tok::Sym("!=")) => true,
                    _ => {
                        self.pos -= 1;
                        return self.err("expected `=` or `!=`");
                    }
                };
                let b = self.var()?;
                let eq = Formula::eq(&a, &b);
                Ok(if neg { Formula::not(eq) } else { eq })
            }
            _ => {
                self.pos -= 1;
                self.err("expected a formula")
            }
        }
    }
}

/// Parses the `fof(name, role, formula).` entries of a TPTP file. Only the
/// connectives, quantifiers, `elem/2` and equality are accepted.
pub fn parse_fof(text: &str) -> Result<Vec<FofEntry>> {
    let mut p = FofParser { toks: lex(text)?, pos: 0 };
    let mut out = Vec::new();
    while p.peek().is_some() {
        out.push(p.entry()?);
    }
    Ok(out)
}
