use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

/// An individual variable. Comparison is by name.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(Arc<str>);

impl Var {
    /// Builds a variable, panicking on names outside `[a-zA-Z][a-zA-Z0-9_']*`.
    pub fn new(name: &str) -> Self {
        assert!(is_valid_name(name), "invalid variable name {name:?}");
        Var(Arc::from(name))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

pub fn is_valid_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl serde::Serialize for Var {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl From<&str> for Var {
    fn from(s: &str) -> Self {
        Var::new(s)
    }
}

/// Deterministic fresh-name source.
///
/// Names are `base` with trailing digits stripped, followed by the smallest
/// positive counter that is not already taken. Every name handed out is added
/// to the avoid set, so a supply never repeats itself.
#[derive(Clone, Debug, Default)]
pub struct NameSupply {
    taken: BTreeSet<Var>,
}

impl NameSupply {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn avoiding<'a>(vars: impl IntoIterator<Item = &'a Var>) -> Self {
        NameSupply {
            taken: vars.into_iter().cloned().collect(),
        }
    }

    pub fn avoid(&mut self, v: &Var) {
        self.taken.insert(v.clone());
    }

    pub fn avoid_all<'a>(&mut self, vars: impl IntoIterator<Item = &'a Var>) {
        self.taken.extend(vars.into_iter().cloned());
    }

    pub fn is_taken(&self, v: &Var) -> bool {
        self.taken.contains(v)
    }

    pub fn fresh(&mut self, base: &str) -> Var {
        let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
        let stem = if stem.is_empty() { "v" } else { stem };
        let mut n = 1usize;
        loop {
            let cand = Var::new(&format!("{stem}{n}"));
            if !self.taken.contains(&cand) {
                self.taken.insert(cand.clone());
                return cand;
            }
            n += 1;
        }
    }

    /// Returns `base` itself when unused, otherwise a fresh variant.
    pub fn prefer(&mut self, base: &Var) -> Var {
        if self.taken.insert(base.clone()) {
            base.clone()
        } else {
            self.fresh(base.name())
        }
    }
}
