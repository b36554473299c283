//! Finite groups as Cayley tables over `{0..n}` with identity 0.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("table is empty")]
    Empty,
    #[error("table is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry table[{x}][{y}] = {value} lies outside 0..{n}")]
    NotClosed {
        x: usize,
        y: usize,
        value: usize,
        n: usize,
    },
    #[error("element 0 is not the identity (fails at element {x})")]
    NoIdentityAtZero { x: usize },
    #[error("element {x} has no two-sided inverse")]
    NoInverse { x: usize },
    #[error("associativity fails at ({x}, {y}, {z})")]
    NotAssociative { x: usize, y: usize, z: usize },
    #[error("image of {b} is not an automorphism of the acted-on group")]
    NotAnAction { b: usize },
    #[error("subset is not a subgroup")]
    NotASubgroup,
}

/// A finite group as a Cayley table; `op(x, y)` is `table[x][y]`.
///
/// Element orders and inverses are cached at construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    n: usize,
    table: Vec<usize>,
    inv: Vec<usize>,
    orders: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a square table: closure, identity at 0, inverses, associativity.
    pub fn from_rows(rows: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::NotSquare {
                    row,
                    len: r.len(),
                    n,
                });
            }
            table.extend_from_slice(r);
        }
        Self::from_flat(n, table)
    }

    pub fn from_flat(n: usize, table: Vec<usize>) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        assert_eq!(table.len(), n * n);
        for x in 0..n {
            for y in 0..n {
                let value = table[x * n + y];
                if value >= n {
                    return Err(GroupError::NotClosed { x, y, value, n });
                }
            }
        }
        for x in 0..n {
            if table[x] != x || table[x * n] != x {
                return Err(GroupError::NoIdentityAtZero { x });
            }
        }
        let mut inv = vec![usize::MAX; n];
        for x in 0..n {
            let y = (0..n).find(|&y| table[x * n + y] == 0 && table[y * n + x] == 0);
            match y {
                Some(y) => inv[x] = y,
                None => return Err(GroupError::NoInverse { x }),
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = table[x * n + y];
                for z in 0..n {
                    if table[xy * n + z] != table[x * n + table[y * n + z]] {
                        return Err(GroupError::NotAssociative { x, y, z });
                    }
                }
            }
        }
        Ok(Self::with_inverses(n, table, inv))
    }

    /// Caller guarantees the group axioms.
    pub(crate) fn from_flat_unchecked(n: usize, table: Vec<usize>) -> Self {
        let mut inv = vec![0; n];
        for x in 0..n {
            for y in 0..n {
                if table[x * n + y] == 0 {
                    inv[x] = y;
                    break;
                }
            }
        }
        Self::with_inverses(n, table, inv)
    }

    fn with_inverses(n: usize, table: Vec<usize>, inv: Vec<usize>) -> Self {
        let mut orders = vec![1; n];
        for (x, order) in orders.iter_mut().enumerate() {
            let mut y = x;
            while y != 0 {
                y = table[y * n + x];
                *order += 1;
            }
        }
        FiniteGroup {
            n,
            table,
            inv,
            orders,
        }
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `Z/n` with `x·y = (x+y) mod n`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1, "cyclic group needs positive order");
        let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        Self::from_flat_unchecked(n, table)
    }

    /// Direct product with pair encoding `(a, b) ↦ a·|B| + b`.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let act = vec![Permutation::identity(a.n()); b.n()];
        Self::semidirect_product(a, b, &act).expect("trivial action is always valid")
    }

    /// `A ⋊ B` with `(a,b)(a',b') = (a·act_b(a'), bb')`, pair-encoded as
    /// `a·|B| + b`. `act[b]` must be an automorphism of `A` and `b ↦ act[b]`
    /// a homomorphism.
    pub fn semidirect_product(
        a: &FiniteGroup,
        b: &FiniteGroup,
        act: &[Permutation],
    ) -> Result<Self, GroupError> {
        let (na, nb) = (a.n(), b.n());
        if act.len() != nb {
            return Err(GroupError::NotAnAction {
                b: act.len().min(nb),
            });
        }
        for (bi, p) in act.iter().enumerate() {
            if p.deg() != na || !a.is_automorphism(p) {
                return Err(GroupError::NotAnAction { b: bi });
            }
        }
        for x in 0..nb {
            for y in 0..nb {
                if act[b.op(x, y)] != act[x].compose(&act[y]) {
                    return Err(GroupError::NotAnAction { b: x });
                }
            }
        }
        let n = na * nb;
        let mut table = vec![0; n * n];
        for a1 in 0..na {
            for b1 in 0..nb {
                for a2 in 0..na {
                    for b2 in 0..nb {
                        let a3 = a.op(a1, act[b1].apply(a2));
                        let b3 = b.op(b1, b2);
                        table[(a1 * nb + b1) * n + a2 * nb + b2] = a3 * nb + b3;
                    }
                }
            }
        }
        Ok(Self::from_flat_unchecked(n, table))
    }

    /// Dihedral group of order `2m` as `C_m ⋊ C_2` with inversion.
    pub fn dihedral(m: usize) -> Self {
        let c = Self::cyclic(m);
        let act = vec![
            Permutation::identity(m),
            Permutation::from_fn(m, |x| (m - x) % m),
        ];
        Self::semidirect_product(&c, &Self::cyclic(2), &act).expect("inversion is an automorphism")
    }

    /// Dicyclic group of order `4m`: elements `a^i x^j` encoded `2i + j`,
    /// with `a^{2m} = 1`, `x² = a^m`, `x a x⁻¹ = a⁻¹`. `m = 2` gives `Q8`.
    pub fn dicyclic(m: usize) -> Self {
        assert!(m >= 2);
        let k = 2 * m;
        let n = 2 * k;
        let mut table = vec![0; n * n];
        for i in 0..k {
            for j in 0..2 {
                for i2 in 0..k {
                    for j2 in 0..2 {
                        let (ri, rj) = match (j, j2) {
                            (0, _) => ((i + i2) % k, j2),
                            (1, 0) => ((i + k - i2) % k, 1),
                            _ => ((i + k - i2 + m) % k, 0),
                        };
                        table[(2 * i + j) * n + 2 * i2 + j2] = 2 * ri + rj;
                    }
                }
            }
        }
        Self::from_flat(n, table).expect("dicyclic presentation is a group")
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    #[inline]
    pub fn inv(&self, x: usize) -> usize {
        self.inv[x]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.n..(x + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.n).map(|x| self.row(x).to_vec()).collect()
    }

    pub(crate) fn flat(&self) -> &[usize] {
        &self.table
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.orders[x]
    }

    /// Sorted multiset of element orders.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut p = self.orders.clone();
        p.sort_unstable();
        p
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.n).all(|x| (0..x).all(|y| self.op(x, y) == self.op(y, x)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.orders.contains(&self.n)
    }

    /// `g h g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.op(self.op(g, h), self.inv[g])
    }

    /// `x ∘ y := y · x`.
    pub fn opposite(&self) -> Self {
        let n = self.n;
        let table = (0..n * n).map(|i| self.op(i % n, i / n)).collect();
        FiniteGroup {
            n,
            table,
            inv: self.inv.clone(),
            orders: self.orders.clone(),
        }
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.deg() == self.n
            && (0..self.n).all(|x| {
                (0..self.n).all(|y| p.apply(self.op(x, y)) == self.op(p.apply(x), p.apply(y)))
            })
    }

    /// Greedy generating set: repeatedly add an element of maximal order
    /// (smallest index on ties) outside the current subgroup.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut size = 1;
        while size < self.n {
            let x = (0..self.n)
                .filter(|&x| !inside[x])
                .max_by_key(|&x| (self.orders[x], std::cmp::Reverse(x)))
                .expect("group not yet exhausted");
            gens.push(x);
            let sub = self.generated_subgroup(&gens);
            size = sub.len();
            for y in sub {
                inside[y] = true;
            }
        }
        gens
    }

    /// Sorted element list of `⟨gens⟩`.
    pub fn generated_subgroup(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.n];
        inside[0] = true;
        let mut queue = vec![0];
        while let Some(x) = queue.pop() {
            for &g in gens {
                let y = self.op(x, g);
                if !inside[y] {
                    inside[y] = true;
                    queue.push(y);
                }
            }
        }
        (0..self.n).filter(|&x| inside[x]).collect()
    }

    pub fn is_subgroup(&self, subset: &[usize]) -> bool {
        let mut mask = vec![false; self.n];
        for &x in subset {
            if x >= self.n {
                return false;
            }
            mask[x] = true;
        }
        if !mask[0] {
            return false;
        }
        // finite: closure under products suffices
        subset
            .iter()
            .all(|&x| subset.iter().all(|&y| mask[self.op(x, y)]))
    }

    /// Every subgroup, as sorted element lists, in lexicographic order.
    pub fn all_subgroups(&self) -> Vec<Vec<usize>> {
        let cyclic: BTreeSet<Vec<usize>> =
            (0..self.n).map(|x| self.generated_subgroup(&[x])).collect();
        let cyclic: Vec<Vec<usize>> = cyclic.into_iter().collect();
        let mut all: BTreeSet<Vec<usize>> = cyclic.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = cyclic.clone();
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for h in &frontier {
                for c in &cyclic {
                    let gen = c.get(1).copied().unwrap_or(0);
                    if h.binary_search(&gen).is_ok() {
                        continue;
                    }
                    let mut gens = h.clone();
                    gens.push(gen);
                    let k = self.generated_subgroup(&gens);
                    if all.insert(k.clone()) {
                        next.push(k);
                    }
                }
            }
            frontier = next;
        }
        all.into_iter().collect()
    }

    /// Subgroups of order `k`, lexicographically sorted.
    pub fn subgroups_of_order(&self, k: usize) -> Vec<Vec<usize>> {
        if k == 0 || !self.n.is_multiple_of(k) {
            return Vec::new();
        }
        if k == 1 {
            return vec![vec![0]];
        }
        if is_prime(k) {
            let set: BTreeSet<Vec<usize>> = (0..self.n)
                .filter(|&x| self.orders[x] == k)
                .map(|x| self.generated_subgroup(&[x]))
                .collect();
            return set.into_iter().collect();
        }
        self.all_subgroups()
            .into_iter()
            .filter(|h| h.len() == k)
            .collect()
    }

    pub fn is_normal(&self, subset: &[usize]) -> Result<bool, GroupError> {
        if !self.is_subgroup(subset) {
            return Err(GroupError::NotASubgroup);
        }
        Ok(self.is_normal_unchecked(subset))
    }

    pub(crate) fn is_normal_unchecked(&self, subset: &[usize]) -> bool {
        let mut mask = vec![false; self.n];
        for &x in subset {
            mask[x] = true;
        }
        (0..self.n).all(|g| subset.iter().all(|&h| mask[self.conj(g, h)]))
    }

    /// `λ(g)[x] = g·x`, indexed by `g`.
    pub fn left_regular_perms(&self) -> Vec<Permutation> {
        (0..self.n)
            .map(|g| Permutation::from_vec_unchecked(self.row(g).to_vec()))
            .collect()
    }

    /// `ρ(g)[x] = x·g⁻¹`, indexed by `g`.
    pub fn right_regular_perms(&self) -> Vec<Permutation> {
        (0..self.n)
            .map(|g| {
                let gi = self.inv[g];
                Permutation::from_fn(self.n, |x| self.op(x, gi))
            })
            .collect()
    }

    pub fn left_regular(&self) -> PermGroup {
        PermGroup::from_elements_unchecked(self.n, self.left_regular_perms())
    }

    pub fn right_regular(&self) -> PermGroup {
        PermGroup::from_elements_unchecked(self.n, self.right_regular_perms())
    }

    /// The subgroup on `subset` (a subgroup, sorted ascending) re-indexed by
    /// position.
    pub fn restrict(&self, subset: &[usize]) -> Result<FiniteGroup, GroupError> {
        if !self.is_subgroup(subset) {
            return Err(GroupError::NotASubgroup);
        }
        let local = local_index(self.n, subset);
        let m = subset.len();
        let table = (0..m * m)
            .map(|i| local[self.op(subset[i / m], subset[i % m])])
            .collect();
        Ok(Self::from_flat_unchecked(m, table))
    }

    /// Transport along a bijection with `sigma(0) = 0`: the result has
    /// `sigma(x)·sigma(y) = sigma(x·y)`.
    pub fn relabel(&self, sigma: &Permutation) -> FiniteGroup {
        assert_eq!(sigma.apply(0), 0, "relabelling must fix the identity");
        let n = self.n;
        let inv = sigma.inverse();
        let table = (0..n * n)
            .map(|i| sigma.apply(self.op(inv.apply(i / n), inv.apply(i % n))))
            .collect();
        Self::from_flat_unchecked(n, table)
    }
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "FiniteGroup(n={}, rows={:?})", self.n, self.rows())
    }
}

/// Sorts and dedups `subset`; returns `None` if an element is out of range.
pub(crate) fn normalize_subset(n: usize, subset: &[usize]) -> Option<Vec<usize>> {
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.last().is_some_and(|&x| x >= n) {
        return None;
    }
    Some(s)
}

/// Position of each element of a sorted subset, `usize::MAX` elsewhere.
pub(crate) fn local_index(n: usize, subset: &[usize]) -> Vec<usize> {
    let mut local = vec![usize::MAX; n];
    for (i, &x) in subset.iter().enumerate() {
        local[x] = i;
    }
    local
}

pub fn is_prime(n: usize) -> bool {
    n >= 2
        && (2..)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}
