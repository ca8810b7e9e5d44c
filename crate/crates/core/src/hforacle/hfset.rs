use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// A hereditarily finite set, stored as its Ackermann code: `m ∈ s` iff bit
/// `m` of the code of `s` is set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct HfSet(BigUint);

pub fn decode(code: &BigUint) -> HfSet {
    HfSet(code.clone())
}

pub fn encode(s: &HfSet) -> BigUint {
    s.0.clone()
}

impl HfSet {
    pub fn empty() -> Self {
        HfSet(BigUint::zero())
    }

    pub fn from_code(code: u64) -> Self {
        HfSet(BigUint::from(code))
    }

    pub fn code(&self) -> &BigUint {
        &self.0
    }

    /// The code as a machine word, if it fits.
    pub fn small_code(&self) -> Option<u64> {
        self.0.to_u64()
    }

    pub fn from_elements<'a>(elems: impl IntoIterator<Item = &'a HfSet>) -> Self {
        let mut code = BigUint::zero();
        for e in elems {
            let bit = e.0.to_u64().expect("element code too large for a bit position");
            code.set_bit(bit, true);
        }
        HfSet(code)
    }

    pub fn elements(&self) -> Vec<HfSet> {
        let bits = self.0.bits();
        (0..bits)
            .filter(|&i| self.0.bit(i))
            .map(HfSet::from_code)
            .collect()
    }

    pub fn contains(&self, x: &HfSet) -> bool {
        x.0.to_u64().is_some_and(|i| self.0.bit(i))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_zero()
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn singleton(x: &HfSet) -> Self {
        HfSet::from_elements([x])
    }

    pub fn upair(x: &HfSet, y: &HfSet) -> Self {
        HfSet::from_elements([x, y])
    }

    /// Kuratowski pair `{{x},{x,y}}`.
    pub fn pair(x: &HfSet, y: &HfSet) -> Self {
        HfSet::upair(&HfSet::singleton(x), &HfSet::upair(x, y))
    }

    /// Successor `x ∪ {x}`.
    pub fn succ(x: &HfSet) -> Self {
        let mut elems = x.elements();
        elems.push(x.clone());
        HfSet::from_elements(&elems)
    }

    /// Components of a Kuratowski pair.
    pub fn unpair(&self) -> Option<(HfSet, HfSet)> {
        let elems = self.elements();
        let first = elems.iter().find(|e| e.len() == 1)?.elements().pop()?;
        let second = match elems.len() {
            1 => first.clone(),
            2 => elems
                .iter()
                .find(|e| e.len() == 2)?
                .elements()
                .into_iter()
                .find(|e| *e != first)?,
            _ => return None,
        };
        (HfSet::pair(&first, &second) == *self).then_some((first, second))
    }

    /// Von Neumann rank: 0 for the empty set, else one more than the largest
    /// element rank.
    pub fn rank(&self) -> u32 {
        self.elements().iter().map(|e| e.rank() + 1).max().unwrap_or(0)
    }

    /// The von Neumann natural number `n`.
    pub fn nat(n: u32) -> Self {
        (0..n).fold(HfSet::empty(), |acc, _| HfSet::succ(&acc))
    }
}

impl fmt::Display for HfSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, e) in self.elements().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str("}")
    }
}

impl Serialize for HfSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.0.to_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_examples() {
        assert!(decode(&BigUint::from(0u32)).is_empty());
        let three = decode(&BigUint::from(3u32));
        assert_eq!(three.elements(), vec![HfSet::from_code(0), HfSet::from_code(1)]);
        assert_eq!(three.to_string(), "{{},{{}}}");
    }

    #[test]
    fn round_trip() {
        for n in 0u64..1000 {
            assert_eq!(encode(&decode(&BigUint::from(n))), BigUint::from(n));
            let s = HfSet::from_code(n);
            assert_eq!(HfSet::from_elements(&s.elements()), s);
        }
    }

    #[test]
    fn pairs() {
        let (z, o) = (HfSet::from_code(0), HfSet::from_code(1));
        assert_eq!(HfSet::pair(&z, &z).small_code(), Some(2));
        assert_eq!(HfSet::pair(&z, &o).small_code(), Some(10));
        assert_eq!(HfSet::pair(&o, &z).small_code(), Some(12));
        assert_eq!(HfSet::pair(&o, &o).small_code(), Some(4));
        assert_eq!(HfSet::pair(&o, &z).unpair(), Some((o.clone(), z.clone())));
        assert_eq!(HfSet::from_code(3).unpair(), None);
    }

    #[test]
    fn ranks_and_naturals() {
        assert_eq!(HfSet::from_code(0).rank(), 0);
        assert_eq!(HfSet::from_code(1).rank(), 1);
        assert_eq!(HfSet::from_code(2).rank(), 2);
        assert_eq!(HfSet::from_code(4).rank(), 3);
        assert_eq!(HfSet::nat(2).small_code(), Some(3));
        assert_eq!(HfSet::nat(3).small_code(), Some(11));
    }
}
