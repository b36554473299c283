//! Skew braces `(G, ·, ∘)`, their γ-functions and ideal structure.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::group::{normalize_subset, FiniteGroup, GroupError};
use crate::hom::{for_each_isomorphism, PermHom};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BraceError {
    #[error("dot table has order {dot}, circ table has order {circ}")]
    SizeMismatch { dot: usize, circ: usize },
    #[error("dot table is not a group: {0}")]
    DotNotGroup(GroupError),
    #[error("circ table is not a group: {0}")]
    CircNotGroup(GroupError),
    #[error("brace axiom fails at (x, y, z) = ({x}, {y}, {z})")]
    BraceAxiomFails { x: usize, y: usize, z: usize },
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("subset is not a subgroup under both operations")]
    NotASubbrace,
}

/// Two group structures on `{0..n}` with shared identity 0 satisfying
/// `x ∘ (y · z) = (x ∘ y) · x⁻¹ · (x ∘ z)`.
///
/// The γ-function `γ_x(y) = x⁻¹ · (x ∘ y)` is computed on construction.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewBrace {
    dot: FiniteGroup,
    circ: FiniteGroup,
    gamma: PermHom,
}

/// Which ideal-like properties a subset has in a given brace.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct IdealClass {
    pub subset: Vec<usize>,
    pub is_subgroup_circ: bool,
    pub is_subgroup_dot: bool,
    pub is_left_ideal: bool,
    pub is_strong_left_ideal: bool,
    pub is_ideal: bool,
}

impl SkewBrace {
    pub fn from_rows(dot: &[Vec<usize>], circ: &[Vec<usize>]) -> Result<Self, BraceError> {
        let dot = FiniteGroup::from_rows(dot).map_err(BraceError::DotNotGroup)?;
        let circ = FiniteGroup::from_rows(circ).map_err(BraceError::CircNotGroup)?;
        Self::new(dot, circ)
    }

    /// Checks the brace axiom on every triple; the error names the first
    /// failing one in lexicographic order.
    pub fn new(dot: FiniteGroup, circ: FiniteGroup) -> Result<Self, BraceError> {
        if dot.n() != circ.n() {
            return Err(BraceError::SizeMismatch {
                dot: dot.n(),
                circ: circ.n(),
            });
        }
        if let Some((x, y, z)) = first_axiom_failure(&dot, &circ) {
            return Err(BraceError::BraceAxiomFails { x, y, z });
        }
        Ok(Self::assemble(dot, circ))
    }

    /// Caller guarantees the brace axiom.
    pub(crate) fn assemble(dot: FiniteGroup, circ: FiniteGroup) -> Self {
        let n = dot.n();
        let gamma = PermHom::new(
            (0..n)
                .map(|x| {
                    let xi = dot.inv(x);
                    Permutation::from_fn(n, |y| dot.op(xi, circ.op(x, y)))
                })
                .collect(),
        );
        assert!(gamma.lands_in_aut(&dot), "γ_x must be a dot automorphism");
        assert!(gamma.respects(&circ), "γ must be a circ homomorphism");
        SkewBrace { dot, circ, gamma }
    }

    /// `(G, ∘, ∘)`.
    pub fn trivial(g: &FiniteGroup) -> Self {
        Self::assemble(g.clone(), g.clone())
    }

    /// `(G, ∘^op, ∘)`.
    pub fn almost_trivial(g: &FiniteGroup) -> Self {
        Self::assemble(g.opposite(), g.clone())
    }

    pub fn n(&self) -> usize {
        self.dot.n()
    }

    pub fn dot(&self) -> &FiniteGroup {
        &self.dot
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    pub fn gamma(&self) -> &PermHom {
        &self.gamma
    }

    /// `γ_x(y)`.
    pub fn gamma_at(&self, x: usize, y: usize) -> usize {
        self.gamma.get(x).apply(y)
    }

    pub fn is_trivial(&self) -> bool {
        self.dot == self.circ
    }

    /// Same circ, dot replaced by `x ·' y = y · x`.
    pub fn opposite(&self) -> Self {
        Self::assemble(self.dot.opposite(), self.circ.clone())
    }

    pub fn classify_subset(&self, subset: &[usize]) -> IdealClass {
        let Some(subset) = normalize_subset(self.n(), subset) else {
            return IdealClass {
                subset: subset.to_vec(),
                is_subgroup_circ: false,
                is_subgroup_dot: false,
                is_left_ideal: false,
                is_strong_left_ideal: false,
                is_ideal: false,
            };
        };
        let is_subgroup_circ = self.circ.is_subgroup(&subset);
        let is_subgroup_dot = self.dot.is_subgroup(&subset);
        let is_left_ideal = (is_subgroup_circ || is_subgroup_dot) && self.is_gamma_stable(&subset);
        if is_left_ideal {
            assert!(
                is_subgroup_circ && is_subgroup_dot,
                "a γ-stable subgroup under one operation is a subgroup under both"
            );
        }
        let is_strong_left_ideal = is_left_ideal && self.dot.is_normal_unchecked(&subset);
        let is_ideal = is_strong_left_ideal && self.circ.is_normal_unchecked(&subset);
        IdealClass {
            subset,
            is_subgroup_circ,
            is_subgroup_dot,
            is_left_ideal,
            is_strong_left_ideal,
            is_ideal,
        }
    }

    fn is_gamma_stable(&self, subset: &[usize]) -> bool {
        let mut mask = vec![false; self.n()];
        for &h in subset {
            mask[h] = true;
        }
        self.gamma
            .images()
            .iter()
            .all(|g| subset.iter().all(|&h| mask[g.apply(h)]))
    }

    /// Classification of every subgroup of `(G, ∘)`, sorted by subset.
    pub fn classify_subgroups(&self) -> Vec<IdealClass> {
        self.circ
            .all_subgroups()
            .iter()
            .map(|h| self.classify_subset(h))
            .collect()
    }

    /// The circ subgroups that are left ideals, sorted by subset.
    pub fn left_ideals(&self) -> Vec<IdealClass> {
        self.classify_subgroups()
            .into_iter()
            .filter(|c| c.is_left_ideal)
            .collect()
    }

    /// `G / A` on the cosets of the ideal `A`, ordered by minimal element.
    pub fn quotient(&self, ideal: &[usize]) -> Result<SkewBrace, BraceError> {
        let class = self.classify_subset(ideal);
        if !class.is_ideal {
            return Err(BraceError::NotAnIdeal);
        }
        let n = self.n();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(x);
            for &a in &class.subset {
                coset_of[self.circ.op(x, a)] = c;
            }
        }
        let m = reps.len();
        let table_for = |g: &FiniteGroup| -> Vec<usize> {
            let mut table = vec![0; m * m];
            for x in 0..n {
                for y in 0..n {
                    let c = coset_of[g.op(x, y)];
                    let slot = &mut table[coset_of[x] * m + coset_of[y]];
                    if x == reps[coset_of[x]] && y == reps[coset_of[y]] {
                        *slot = c;
                    }
                }
            }
            for x in 0..n {
                for y in 0..n {
                    assert_eq!(
                        table[coset_of[x] * m + coset_of[y]],
                        coset_of[g.op(x, y)],
                        "coset operation must be well defined"
                    );
                }
            }
            table
        };
        let dot =
            FiniteGroup::from_flat(m, table_for(&self.dot)).map_err(BraceError::DotNotGroup)?;
        let circ =
            FiniteGroup::from_flat(m, table_for(&self.circ)).map_err(BraceError::CircNotGroup)?;
        SkewBrace::new(dot, circ)
    }

    /// The sub-brace on `subset`, re-indexed by sorted position.
    pub fn restrict(&self, subset: &[usize]) -> Result<SkewBrace, BraceError> {
        let subset = normalize_subset(self.n(), subset).ok_or(BraceError::NotASubbrace)?;
        let dot = self
            .dot
            .restrict(&subset)
            .map_err(|_| BraceError::NotASubbrace)?;
        let circ = self
            .circ
            .restrict(&subset)
            .map_err(|_| BraceError::NotASubbrace)?;
        SkewBrace::new(dot, circ)
    }

    /// Transport along a bijection fixing 0.
    pub fn relabel(&self, sigma: &Permutation) -> SkewBrace {
        Self::assemble(self.dot.relabel(sigma), self.circ.relabel(sigma))
    }
}

impl std::fmt::Debug for SkewBrace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("SkewBrace")
            .field("dot", &self.dot.rows())
            .field("circ", &self.circ.rows())
            .finish()
    }
}

pub(crate) fn first_axiom_failure(
    dot: &FiniteGroup,
    circ: &FiniteGroup,
) -> Option<(usize, usize, usize)> {
    let n = dot.n();
    for x in 0..n {
        let xi = dot.inv(x);
        for y in 0..n {
            let left = dot.op(circ.op(x, y), xi);
            for z in 0..n {
                if circ.op(x, dot.op(y, z)) != dot.op(left, circ.op(x, z)) {
                    return Some((x, y, z));
                }
            }
        }
    }
    None
}

/// A bijection respecting both operations, if one exists.
pub fn brace_isomorphic(b1: &SkewBrace, b2: &SkewBrace) -> Option<Permutation> {
    if b1.n() != b2.n() || b1.dot.order_profile() != b2.dot.order_profile() {
        return None;
    }
    let mut witness = None;
    for_each_isomorphism(&b1.circ, &b2.circ, |w| {
        let n = b1.n();
        let ok = (0..n)
            .all(|x| (0..n).all(|y| w.apply(b1.dot.op(x, y)) == b2.dot.op(w.apply(x), w.apply(y))));
        if ok {
            witness = Some(w.clone());
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    witness
}

/// Dot conjugation `h ↦ g·h·g⁻¹`.
pub fn conj_dot(b: &SkewBrace, g: usize) -> Permutation {
    Permutation::from_fn(b.n(), |h| b.dot.conj(g, h))
}

/// `γ_g(H) = g⁻¹·H·g` for every `g`.
pub fn satisfies_conjugation_criterion(b: &SkewBrace, subset: &[usize]) -> bool {
    let n = b.n();
    let Some(subset) = normalize_subset(n, subset) else {
        return false;
    };
    (0..n).all(|g| {
        let gi = b.dot.inv(g);
        let mut lhs: Vec<usize> = subset.iter().map(|&h| b.gamma_at(g, h)).collect();
        let mut rhs: Vec<usize> = subset
            .iter()
            .map(|&h| b.dot.op(b.dot.op(gi, h), g))
            .collect();
        lhs.sort_unstable();
        rhs.sort_unstable();
        lhs == rhs
    })
}
