use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::kernel::{elaborate, parse, parse_sequent, Formula};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Tag {
    /// Provable in ZF only with the axiom of infinity; every `V_n` refutes it.
    NeedsInfinity,
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tag::NeedsInfinity => f.write_str("needs-infinity"),
        }
    }
}

/// A named sequent `hyps ⊢ goal`: a claim of provability in ZF, with free
/// variables read universally.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Obligation {
    pub name: String,
    pub hyps: Vec<Formula>,
    pub goal: Formula,
    pub provenance: String,
    pub tags: BTreeSet<Tag>,
    /// Extra hypothesis used only by the finite oracle, restricting the
    /// check to assignments where truncation cannot distort the claim.
    pub hf_guard: Option<Formula>,
}

impl Obligation {
    /// The name is `site` followed by a short content hash.
    pub fn new(site: &str, hyps: Vec<Formula>, goal: Formula, provenance: &str) -> Self {
        let mut h = Sha256::new();
        for x in &hyps {
            h.update(x.to_string().as_bytes());
            h.update(b"\n");
        }
        h.update(b"|-");
        h.update(goal.to_string().as_bytes());
        let digest = hex::encode(&h.finalize()[..4]);
        Obligation {
            name: format!("{site}-{digest}"),
            hyps,
            goal,
            provenance: provenance.to_string(),
            tags: BTreeSet::new(),
            hf_guard: None,
        }
    }

    pub fn with_tag(mut self, t: Tag) -> Self {
        self.tags.insert(t);
        self
    }

    pub fn with_guard(mut self, g: Formula) -> Self {
        self.hf_guard = Some(g);
        self
    }

    pub fn renamed(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn needs_infinity(&self) -> bool {
        self.tags.contains(&Tag::NeedsInfinity)
    }

    /// `⋀hyps → goal`, without the outer universal closure.
    pub fn body(&self) -> Formula {
        if self.hyps.is_empty() {
            self.goal.clone()
        } else {
            Formula::implies(Formula::and(self.hyps.clone()), self.goal.clone())
        }
    }

    pub fn free_vars(&self) -> BTreeSet<crate::kernel::Var> {
        let mut fv = self.goal.free_vars();
        for h in &self.hyps {
            fv.extend(h.free_vars());
        }
        fv
    }

    pub fn closure(&self) -> Formula {
        let fv: Vec<_> = self.free_vars().into_iter().collect();
        Formula::forall_all(&fv, self.body())
    }

    pub fn sequent(&self) -> String {
        let hyps: Vec<String> = self.hyps.iter().map(Formula::to_string).collect();
        format!("{} |- {}", hyps.join(", "), self.goal)
    }
}

impl Obligation {
    /// The text record: `name: hyps |- goal`, then indented `guard:`,
    /// `tags:` and `provenance:` lines where present.
    pub fn to_record(&self) -> String {
        let mut out = format!("{self}\n");
        if let Some(g) = &self.hf_guard {
            out.push_str(&format!("  guard: {g}\n"));
        }
        if !self.tags.is_empty() {
            let tags: Vec<String> = self.tags.iter().map(Tag::to_string).collect();
            out.push_str(&format!("  tags: {}\n", tags.join(", ")));
        }
        if !self.provenance.is_empty() {
            out.push_str(&format!("  provenance: {}\n", self.provenance));
        }
        out
    }
}

fn at_line(e: Error, line: usize) -> Error {
    match e {
        Error::Syntax { col, msg, .. } => Error::Syntax { line, col, msg },
        Error::UnknownOperator { name, col, .. } => Error::UnknownOperator { name, line, col },
        other => other,
    }
}

fn syntax(line: usize, msg: &str) -> Error {
    Error::Syntax {
        line,
        col: 1,
        msg: msg.to_string(),
    }
}

/// Parses obligation records. Blank lines and lines starting with `#` are
/// skipped.
pub fn parse_records(text: &str) -> Result<Vec<Obligation>> {
    let mut out: Vec<Obligation> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if raw.starts_with(char::is_whitespace) {
            let ob = out.last_mut().ok_or_else(|| syntax(line, "attribute before any record"))?;
            let (key, val) = trimmed
                .split_once(':')
                .ok_or_else(|| syntax(line, "expected `key: value`"))?;
            let val = val.trim();
            match key {
                "guard" => {
                    let g = parse(val).and_then(|f| elaborate(&f)).map_err(|e| at_line(e, line))?;
                    ob.hf_guard = Some(g);
                }
                "tags" => {
                    for t in val.split(',').map(str::trim) {
                        match t {
                            "needs-infinity" => {
                                ob.tags.insert(Tag::NeedsInfinity);
                            }
                            _ => return Err(syntax(line, &format!("unknown tag `{t}`"))),
                        }
                    }
                }
                "provenance" => ob.provenance = val.to_string(),
                _ => return Err(syntax(line, &format!("unknown attribute `{key}`"))),
            }
            continue;
        }
        let (name, seq) = trimmed
            .split_once(':')
            .ok_or_else(|| syntax(line, "expected `name: hyps |- goal`"))?;
        let (hyps, goal) = parse_sequent(seq).map_err(|e| at_line(e, line))?;
        let hyps = hyps
            .iter()
            .map(elaborate)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| at_line(e, line))?;
        let goal = elaborate(&goal).map_err(|e| at_line(e, line))?;
        out.push(Obligation {
            name: name.trim().to_string(),
            hyps,
            goal,
            provenance: String::new(),
            tags: BTreeSet::new(),
            hf_guard: None,
        });
    }
    Ok(out)
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.name, self.sequent())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::kernel;

    #[test]
    fn records_round_trip() {
        let a = Obligation::new("a", vec![kernel("x = 0").unwrap()], kernel("x in 1").unwrap(), "test")
            .with_tag(Tag::NeedsInfinity)
            .with_guard(kernel("x = x").unwrap());
        let b = Obligation::new("b", vec![], kernel("forall x. x = x").unwrap(), "");
        let text = format!("# header\n{}\n{}", a.to_record(), b.to_record());
        let back = parse_records(&text).unwrap();
        assert_eq!(back, vec![a, b]);
    }

    #[test]
    fn record_errors_carry_lines() {
        let err = parse_records("a: |- x = x\nb: |- x in\n").unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }), "{err:?}");
        assert!(parse_records("  tags: x\n").is_err());
    }
}
