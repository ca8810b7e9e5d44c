use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

use super::hfset::HfSet;

/// Largest code prefix the evaluator accepts.
pub const MAX_PREFIX: u64 = 1 << 20;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum UniverseKind {
    /// `V_0 = ∅`, `V_{k+1} = P(V_k)`.
    Rank(u32),
    /// Codes `0..N`.
    CodePrefix(u64),
}

/// A transitive finite universe. Both kinds are code prefixes: `V_n` is
/// exactly the set of codes below `|V_n|`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Universe {
    kind: UniverseKind,
    size: u64,
}

pub fn rank_size(n: u32) -> u64 {
    (0..n).fold(0u64, |acc, _| 1u64 << acc)
}

pub fn rank_universe(n: u32) -> Result<Universe> {
    if n > 5 {
        return Err(Error::UniverseTooLarge(n));
    }
    Ok(Universe {
        kind: UniverseKind::Rank(n),
        size: rank_size(n),
    })
}

pub fn code_prefix(n: u64) -> Result<Universe> {
    if n > MAX_PREFIX {
        return Err(Error::PrefixTooLarge(n));
    }
    Ok(Universe {
        kind: UniverseKind::CodePrefix(n),
        size: n,
    })
}

impl Universe {
    pub fn kind(&self) -> UniverseKind {
        self.kind
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn contains_code(&self, code: u64) -> bool {
        code < self.size
    }

    pub fn contains(&self, s: &HfSet) -> bool {
        s.small_code().is_some_and(|c| self.contains_code(c))
    }

    pub fn elements(&self) -> impl Iterator<Item = HfSet> {
        (0..self.size).map(HfSet::from_code)
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            UniverseKind::Rank(n) => write!(f, "V{n}"),
            UniverseKind::CodePrefix(n) => write!(f, "C{n}"),
        }
    }
}

impl FromStr for Universe {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::BadUniverse(s.to_string());
        let s2 = s.trim();
        if let Some(n) = s2.strip_prefix('V').or_else(|| s2.strip_prefix("V_")) {
            rank_universe(n.trim_start_matches('_').parse().map_err(|_| bad())?)
        } else if let Some(n) = s2.strip_prefix('C') {
            code_prefix(n.parse().map_err(|_| bad())?)
        } else {
            Err(bad())
        }
    }
}
