//! Permutations of `{0..deg}` and explicitly materialized permutation groups.
//!
//! Composition follows function notation: `p.compose(&q)` applies `q` first,
//! then `p`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::FiniteGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("entry {value} at position {pos} is outside 0..{deg}")]
    OutOfRange {
        pos: usize,
        value: usize,
        deg: usize,
    },
    #[error("value {value} occurs more than once")]
    Repeated { value: usize },
    #[error("permutation of degree {found} in a set of degree {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("set does not contain the identity")]
    MissingIdentity,
    #[error("set is not closed: the product of elements {0} and {1} is missing")]
    NotClosed(usize, usize),
    #[error("set is not closed under inverses: inverse of element {0} is missing")]
    NotClosedUnderInverse(usize),
}

/// A bijection of `{0..deg}`, stored as its image sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    map: Vec<usize>,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self, PermError> {
        let deg = map.len();
        let mut seen = vec![false; deg];
        for (pos, &value) in map.iter().enumerate() {
            if value >= deg {
                return Err(PermError::OutOfRange { pos, value, deg });
            }
            if seen[value] {
                return Err(PermError::Repeated { value });
            }
            seen[value] = true;
        }
        Ok(Permutation { map })
    }

    /// Caller guarantees `map` is a bijection.
    pub(crate) fn from_vec_unchecked(map: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(map.clone()).is_ok());
        Permutation { map }
    }

    pub(crate) fn from_fn(deg: usize, f: impl FnMut(usize) -> usize) -> Self {
        Self::from_vec_unchecked((0..deg).map(f).collect())
    }

    pub fn identity(deg: usize) -> Self {
        Permutation {
            map: (0..deg).collect(),
        }
    }

    pub fn deg(&self) -> usize {
        self.map.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.map
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.map.len()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { map: inv }
    }

    /// `self ∘ other`: apply `other`, then `self`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(
            self.deg(),
            other.deg(),
            "composing permutations of different degree"
        );
        Permutation {
            map: other.map.iter().map(|&y| self.map[y]).collect(),
        }
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Permutation::identity(self.deg());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.compose(&base);
            }
            base = base.compose(&base);
            k >>= 1;
        }
        result
    }

    /// `t ∘ self ∘ t⁻¹`.
    pub fn conjugate_by(&self, t: &Permutation) -> Self {
        let mut map = vec![0; self.deg()];
        for x in 0..self.deg() {
            map[t.map[x]] = t.map[self.map[x]];
        }
        Permutation { map }
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn has_fixed_point(&self) -> bool {
        self.map.iter().enumerate().any(|(x, &y)| x == y)
    }

    pub fn order(&self) -> usize {
        let mut seen = vec![false; self.deg()];
        let mut order = 1usize;
        for start in 0..self.deg() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.map[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = PermError;
    fn try_from(map: Vec<usize>) -> Result<Self, PermError> {
        Permutation::new(map)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Vec<usize> {
        p.map
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.map)
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation, identity printed as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut seen = vec![false; self.deg()];
        let mut wrote = false;
        for start in 0..self.deg() {
            if seen[start] || self.map[start] == start {
                continue;
            }
            write!(f, "(")?;
            let mut x = start;
            let mut first = true;
            while !seen[x] {
                seen[x] = true;
                if !first {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
                first = false;
                x = self.map[x];
            }
            write!(f, ")")?;
            wrote = true;
        }
        if !wrote {
            write!(f, "()")?;
        }
        Ok(())
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// A permutation group given by its complete, sorted element list.
///
/// The identity is the lexicographically smallest permutation, so it is
/// always element 0; [`PermGroup::as_group`] relies on this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PermGroup {
    deg: usize,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// Validates closure under composition and inverses.
    pub fn from_elements(deg: usize, elements: Vec<Permutation>) -> Result<Self, PermError> {
        let mut elements = elements;
        for p in &elements {
            if p.deg() != deg {
                return Err(PermError::DegreeMismatch {
                    expected: deg,
                    found: p.deg(),
                });
            }
        }
        elements.sort();
        elements.dedup();
        let group = PermGroup { deg, elements };
        if group.elements.first() != Some(&Permutation::identity(deg)) {
            return Err(PermError::MissingIdentity);
        }
        for (i, p) in group.elements.iter().enumerate() {
            if !group.contains(&p.inverse()) {
                return Err(PermError::NotClosedUnderInverse(i));
            }
            for (j, q) in group.elements.iter().enumerate() {
                if !group.contains(&p.compose(q)) {
                    return Err(PermError::NotClosed(i, j));
                }
            }
        }
        Ok(group)
    }

    /// Caller guarantees closure.
    pub(crate) fn from_elements_unchecked(deg: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort();
        elements.dedup();
        PermGroup { deg, elements }
    }

    /// The subgroup generated by `gens`.
    pub fn generate(deg: usize, gens: &[Permutation]) -> Self {
        let mut found: std::collections::BTreeSet<Permutation> = std::collections::BTreeSet::new();
        let id = Permutation::identity(deg);
        found.insert(id.clone());
        let mut queue = vec![id];
        while let Some(p) = queue.pop() {
            for g in gens {
                let q = p.compose(g);
                if found.insert(q.clone()) {
                    queue.push(q);
                }
            }
        }
        PermGroup {
            deg,
            elements: found.into_iter().collect(),
        }
    }

    pub fn trivial(deg: usize) -> Self {
        PermGroup {
            deg,
            elements: vec![Permutation::identity(deg)],
        }
    }

    pub fn deg(&self) -> usize {
        self.deg
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.elements.binary_search(p).ok()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index_of(p).is_some()
    }

    /// `t S t⁻¹`.
    pub fn conjugate(&self, t: &Permutation) -> PermGroup {
        PermGroup::from_elements_unchecked(
            self.deg,
            self.elements.iter().map(|p| p.conjugate_by(t)).collect(),
        )
    }

    /// Cayley table over element positions in the sorted list.
    pub fn as_group(&self) -> FiniteGroup {
        let m = self.order();
        let mut table = Vec::with_capacity(m * m);
        for p in &self.elements {
            for q in &self.elements {
                table.push(self.index_of(&p.compose(q)).expect("PermGroup is closed"));
            }
        }
        FiniteGroup::from_flat_unchecked(m, table)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("deg", &self.deg)
            .field("order", &self.elements.len())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn rejects_non_bijections() {
        assert_eq!(
            Permutation::new(vec![0, 0]),
            Err(PermError::Repeated { value: 0 })
        );
        assert!(matches!(
            Permutation::new(vec![0, 2]),
            Err(PermError::OutOfRange { pos: 1, .. })
        ));
    }

    #[test]
    fn compose_applies_right_first() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let q = Permutation::new(vec![1, 0, 2]).unwrap();
        // q: 0 -> 1, then p: 1 -> 2
        assert_eq!(p.compose(&q).apply(0), 2);
        assert_eq!(p.order(), 3);
        assert_eq!(p.pow(3), Permutation::identity(3));
        assert_eq!(format!("{p}"), "(0 1 2)");
    }

    #[test]
    fn generate_symmetric_group() {
        let s = Permutation::new(vec![1, 0, 2]).unwrap();
        let c = Permutation::new(vec![1, 2, 0]).unwrap();
        let g = PermGroup::generate(3, &[s, c]);
        assert_eq!(g.order(), 6);
        assert!(PermGroup::from_elements(3, g.elements().to_vec()).is_ok());
        assert!(g.elements()[0].is_identity());
        assert_eq!(g.as_group().n(), 6);
    }

    #[test]
    fn from_elements_detects_missing_product() {
        let s = Permutation::new(vec![1, 0, 2]).unwrap();
        let t = Permutation::new(vec![0, 2, 1]).unwrap();
        let err = PermGroup::from_elements(3, vec![Permutation::identity(3), s, t]).unwrap_err();
        assert!(matches!(err, PermError::NotClosed(_, _)));
    }

    fn perm_strategy(deg: usize) -> impl Strategy<Value = Permutation> {
        Just((0..deg).collect::<Vec<_>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::new(v).unwrap())
    }

    proptest! {
        #[test]
        fn inverse_and_conjugation(p in perm_strategy(7), t in perm_strategy(7)) {
            prop_assert!(p.compose(&p.inverse()).is_identity());
            let c = p.conjugate_by(&t);
            prop_assert_eq!(c, t.compose(&p).compose(&t.inverse()));
            prop_assert!(p.pow(p.order() as u64).is_identity());
        }
    }
}
