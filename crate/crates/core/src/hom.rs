//! Homomorphisms between finite groups: enumeration, automorphism groups and
//! isomorphism testing, all by backtracking over generator images.

use std::ops::ControlFlow;

use thiserror::Error;

use crate::group::FiniteGroup;
use crate::perm::{PermGroup, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomError {
    #[error("image sequence has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("image of {x} is outside the target")]
    OutOfRange { x: usize },
    #[error("identity is not sent to the identity")]
    IdentityNotPreserved,
    #[error("not a homomorphism at ({x}, {y})")]
    NotMultiplicative { x: usize, y: usize },
}

/// A homomorphism between two Cayley-table groups.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    src: FiniteGroup,
    dst: FiniteGroup,
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(src: FiniteGroup, dst: FiniteGroup, image: Vec<usize>) -> Result<Self, HomError> {
        if image.len() != src.n() {
            return Err(HomError::WrongLength {
                expected: src.n(),
                found: image.len(),
            });
        }
        if let Some(x) = image.iter().position(|&y| y >= dst.n()) {
            return Err(HomError::OutOfRange { x });
        }
        if image[0] != 0 {
            return Err(HomError::IdentityNotPreserved);
        }
        for x in 0..src.n() {
            for y in 0..src.n() {
                if image[src.op(x, y)] != dst.op(image[x], image[y]) {
                    return Err(HomError::NotMultiplicative { x, y });
                }
            }
        }
        Ok(GroupHom { src, dst, image })
    }

    pub fn src(&self) -> &FiniteGroup {
        &self.src
    }

    pub fn dst(&self) -> &FiniteGroup {
        &self.dst
    }

    pub fn image(&self) -> &[usize] {
        &self.image
    }

    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }
}

/// A map from a group's elements to permutations, indexed by element.
///
/// This is how actions are stored: `φ_b`, `θ_b` and `γ_x` are all
/// `images[b]`. Whether it is a homomorphism depends on which group
/// structure of the source is meant, so that is checked by [`Self::respects`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PermHom {
    images: Vec<Permutation>,
}

impl PermHom {
    pub fn new(images: Vec<Permutation>) -> Self {
        PermHom { images }
    }

    /// Every element acts as the identity on `deg` points.
    pub fn trivial(src_order: usize, deg: usize) -> Self {
        PermHom {
            images: vec![Permutation::identity(deg); src_order],
        }
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn images(&self) -> &[Permutation] {
        &self.images
    }

    pub fn get(&self, b: usize) -> &Permutation {
        &self.images[b]
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(Permutation::is_identity)
    }

    /// `images[x·y] = images[x] ∘ images[y]` for the given source structure.
    pub fn respects(&self, src: &FiniteGroup) -> bool {
        self.images.len() == src.n()
            && self.images[0].is_identity()
            && (0..src.n()).all(|x| {
                (0..src.n())
                    .all(|y| self.images[src.op(x, y)] == self.images[x].compose(&self.images[y]))
            })
    }

    /// Each image is an automorphism of `target`.
    pub fn lands_in_aut(&self, target: &FiniteGroup) -> bool {
        self.images.iter().all(|p| target.is_automorphism(p))
    }

    /// Pointwise `k`-th power `b ↦ images[b]^k`.
    pub fn pow(&self, k: u64) -> PermHom {
        PermHom {
            images: self.images.iter().map(|p| p.pow(k)).collect(),
        }
    }

    /// The order of the subgroup generated by all images.
    pub fn image_exponent(&self) -> usize {
        self.images
            .iter()
            .fold(1, |acc, p| crate::perm::lcm(acc, p.order()))
    }
}

/// Backtracking over images of a greedy generating set of `src`.
///
/// Calls `visit` with every full image sequence of a homomorphism
/// `src → dst` (injective ones only if `injective`), in lexicographic order of
/// the generator images.
fn search_homs<F>(src: &FiniteGroup, dst: &FiniteGroup, injective: bool, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let gens = src.generators();
    let mut images = vec![usize::MAX; gens.len()];
    let mut map = vec![usize::MAX; src.n()];
    map[0] = 0;
    if gens.is_empty() {
        let _ = visit(&map);
        return;
    }
    let _ = descend(src, dst, injective, &gens, &mut images, 0, &mut visit);
}

fn descend<F>(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    injective: bool,
    gens: &[usize],
    images: &mut [usize],
    level: usize,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let order = src.element_order(gens[level]);
    for cand in 0..dst.n() {
        let ok = if injective {
            dst.element_order(cand) == order
        } else {
            order.is_multiple_of(dst.element_order(cand))
        };
        if !ok {
            continue;
        }
        images[level] = cand;
        let Some(map) = extend(src, dst, injective, &gens[..=level], &images[..=level]) else {
            continue;
        };
        if level + 1 == gens.len() {
            visit(&map)?;
        } else {
            descend(src, dst, injective, gens, images, level + 1, visit)?;
        }
    }
    ControlFlow::Continue(())
}

/// The map on `⟨gens⟩` determined by the generator images, or `None` if the
/// images are inconsistent (or collide, in injective mode).
fn extend(
    src: &FiniteGroup,
    dst: &FiniteGroup,
    injective: bool,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; src.n()];
    let mut used = vec![false; dst.n()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0];
    while let Some(x) = queue.pop() {
        for (&g, &img) in gens.iter().zip(images) {
            let y = src.op(x, g);
            let fy = dst.op(map[x], img);
            if map[y] == usize::MAX {
                if injective && used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(map)
}

/// All homomorphisms `src → dst`, sorted by image sequence.
pub fn homomorphisms_between(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<GroupHom> {
    let mut out = Vec::new();
    search_homs(src, dst, false, |map| {
        out.push(map.to_vec());
        ControlFlow::Continue(())
    });
    out.sort();
    out.into_iter()
        .map(|image| GroupHom {
            src: src.clone(),
            dst: dst.clone(),
            image,
        })
        .collect()
}

/// All homomorphisms from `src` into the permutation group `target`, as
/// permutation-valued maps, sorted lexicographically.
pub fn homomorphisms(src: &FiniteGroup, target: &PermGroup) -> Vec<PermHom> {
    let dst = target.as_group();
    homomorphisms_between(src, &dst)
        .into_iter()
        .map(|h| {
            PermHom::new(
                h.image
                    .iter()
                    .map(|&i| target.elements()[i].clone())
                    .collect(),
            )
        })
        .collect()
}

/// `Aut(G)` as a permutation group on the elements of `G`.
pub fn automorphisms(g: &FiniteGroup) -> PermGroup {
    let mut perms = Vec::new();
    search_homs(g, g, true, |map| {
        perms.push(Permutation::from_vec_unchecked(map.to_vec()));
        ControlFlow::Continue(())
    });
    PermGroup::from_elements_unchecked(g.n(), perms)
}

/// An isomorphism `w` with `w(x·y) = w(x)·w(y)`, if one exists.
pub fn are_isomorphic(g1: &FiniteGroup, g2: &FiniteGroup) -> Option<Permutation> {
    if g1.n() != g2.n() || g1.order_profile() != g2.order_profile() {
        return None;
    }
    let mut witness = None;
    search_homs(g1, g2, true, |map| {
        witness = Some(Permutation::from_vec_unchecked(map.to_vec()));
        ControlFlow::Break(())
    });
    witness
}

/// Calls `visit` on isomorphisms `g1 → g2` until it breaks.
pub(crate) fn for_each_isomorphism<F>(g1: &FiniteGroup, g2: &FiniteGroup, mut visit: F)
where
    F: FnMut(&Permutation) -> ControlFlow<()>,
{
    if g1.n() != g2.n() || g1.order_profile() != g2.order_profile() {
        return;
    }
    search_homs(g1, g2, true, |map| {
        visit(&Permutation::from_vec_unchecked(map.to_vec()))
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(2))
    }

    fn brute_force_homs(src: &FiniteGroup, dst: &FiniteGroup) -> Vec<Vec<usize>> {
        let n = src.n();
        let m = dst.n();
        let mut out = Vec::new();
        let total = m.pow(n as u32 - 1);
        for code in 0..total {
            let mut image = vec![0];
            let mut c = code;
            for _ in 1..n {
                image.push(c % m);
                c /= m;
            }
            if (0..n).all(|x| (0..n).all(|y| image[src.op(x, y)] == dst.op(image[x], image[y]))) {
                out.push(image);
            }
        }
        out.sort();
        out
    }

    fn brute_force_autos(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let n = g.n();
            if map.len() == n {
                let p = Permutation::new(map.clone()).unwrap();
                if g.is_automorphism(&p) {
                    *count += 1;
                }
                return;
            }
            for y in 1..n {
                if !used[y] {
                    used[y] = true;
                    map.push(y);
                    rec(g, map, used, count);
                    map.pop();
                    used[y] = false;
                }
            }
        }
        let mut used = vec![false; g.n()];
        used[0] = true;
        let mut count = 0;
        rec(g, &mut vec![0], &mut used, &mut count);
        count
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(automorphisms(&FiniteGroup::cyclic(3)).order(), 2);
        assert_eq!(automorphisms(&FiniteGroup::trivial()).order(), 1);
        let c8 = FiniteGroup::cyclic(8);
        assert_eq!(brute_force_autos(&c8), 4);
        assert_eq!(automorphisms(&c8).order(), 4);
        for g in [
            klein(),
            FiniteGroup::dihedral(4),
            FiniteGroup::dicyclic(2),
            FiniteGroup::dihedral(3),
        ] {
            assert_eq!(automorphisms(&g).order(), brute_force_autos(&g));
        }
    }

    #[test]
    fn automorphism_group_is_closed_and_fixes_identity() {
        for g in [FiniteGroup::dihedral(4), FiniteGroup::cyclic(12), klein()] {
            let aut = automorphisms(&g);
            assert!(PermGroup::from_elements(g.n(), aut.elements().to_vec()).is_ok());
            assert!(aut.elements().iter().all(|p| p.apply(0) == 0));
        }
    }

    #[test]
    fn homomorphism_counts() {
        let aut7 = automorphisms(&FiniteGroup::cyclic(7));
        assert_eq!(homomorphisms(&FiniteGroup::cyclic(3), &aut7).len(), 3);
        let aut3 = automorphisms(&FiniteGroup::cyclic(3));
        assert_eq!(homomorphisms(&FiniteGroup::cyclic(2), &aut3).len(), 2);
        let trivial = PermGroup::trivial(5);
        assert_eq!(homomorphisms(&FiniteGroup::dihedral(3), &trivial).len(), 1);
    }

    #[test]
    fn homomorphisms_match_brute_force() {
        let groups = [
            FiniteGroup::cyclic(2),
            FiniteGroup::cyclic(3),
            FiniteGroup::cyclic(4),
            klein(),
            FiniteGroup::cyclic(6),
            FiniteGroup::dihedral(3),
        ];
        for src in &groups {
            for dst in &groups {
                let found: Vec<Vec<usize>> = homomorphisms_between(src, dst)
                    .into_iter()
                    .map(|h| h.image().to_vec())
                    .collect();
                assert_eq!(found, brute_force_homs(src, dst));
                for img in &found {
                    assert!(GroupHom::new(src.clone(), dst.clone(), img.clone()).is_ok());
                }
            }
        }
    }

    #[test]
    fn isomorphism_examples() {
        assert!(are_isomorphic(&FiniteGroup::cyclic(4), &klein()).is_none());
        let g = FiniteGroup::dihedral(4);
        assert!(are_isomorphic(&g, &g).unwrap().is_identity());
        assert!(are_isomorphic(&FiniteGroup::dihedral(4), &FiniteGroup::dicyclic(2)).is_none());
    }

    #[test]
    fn isomorphism_is_symmetric_with_valid_witnesses() {
        let sigma = Permutation::new(vec![0, 5, 3, 1, 7, 2, 6, 4]).unwrap();
        let pool = [
            FiniteGroup::cyclic(8),
            FiniteGroup::direct_product(&FiniteGroup::cyclic(4), &FiniteGroup::cyclic(2)),
            FiniteGroup::dihedral(4),
            FiniteGroup::dicyclic(2),
            FiniteGroup::dihedral(4).relabel(&sigma),
            FiniteGroup::cyclic(8).relabel(&sigma),
        ];
        for a in &pool {
            for b in &pool {
                let ab = are_isomorphic(a, b);
                assert_eq!(ab.is_some(), are_isomorphic(b, a).is_some());
                if let Some(w) = ab {
                    for x in 0..a.n() {
                        for y in 0..a.n() {
                            assert_eq!(w.apply(a.op(x, y)), b.op(w.apply(x), w.apply(y)));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn perm_hom_power() {
        let inv = Permutation::new(vec![0, 2, 1]).unwrap();
        let h = PermHom::new(vec![Permutation::identity(3), inv]);
        assert!(h.respects(&FiniteGroup::cyclic(2)));
        assert_eq!(h.pow(1), h);
        assert!(h.pow(2).is_trivial());
        assert_eq!(h.image_exponent(), 2);
    }
}
