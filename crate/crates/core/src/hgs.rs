//! Regular permutation subgroups and the structures induced from a
//! factorization `G = A ∘ B` with `A` normal.
//!
//! Conventions: `λ(g)[x] = g ∘ x`, `ρ(g)[x] = x · g⁻¹`. A brace on `(G, ∘)`
//! corresponds to the regular subgroup `ρ_·(G)` of `Perm(G)`, which is
//! normalized by `λ_∘(G)`.

use thiserror::Error;

use crate::brace::{BraceError, SkewBrace};
use crate::group::{local_index, normalize_subset, FiniteGroup};
use crate::hom::PermHom;
use crate::perm::{PermGroup, Permutation};
use crate::sdp::{conjugation_phi, is_internal_sdp, make_sdp_brace, pair_code, SdpError, SdpSpec};

/// A permutation group stored by its full element list.
pub type PermSet = PermGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HgsError {
    #[error("subset is not a subgroup")]
    NotASubgroup,
    #[error("permutation group is not regular")]
    NotRegular,
    #[error("permutation group is not normalized by the left translations")]
    NotNormalized,
    #[error("permutation group has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("the elements of A are not a system of coset representatives")]
    NotATransversal,
    #[error("A is not a normal subgroup with complement B")]
    BadComplementPair,
    #[error("the brace is not the internal semidirect product of A and B")]
    NotInternalSdp,
    #[error("M is not regular on the coset space")]
    MNotRegular,
    #[error("M is not normalized by the left translations of G on the coset space")]
    MNotNormalized,
    #[error("N is not regular on B")]
    NNotRegular,
    #[error("N is not normalized by the left translations of B")]
    NNotNormalized,
    #[error("brace on A or B does not use the circ operation inherited from G")]
    CircMismatch,
    #[error(transparent)]
    Brace(#[from] BraceError),
}

/// Left cosets `x ∘ B`, numbered in order of their smallest element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CosetSpace {
    circ: FiniteGroup,
    subgroup: Vec<usize>,
    reps: Vec<usize>,
    index: Vec<usize>,
}

impl CosetSpace {
    pub fn new(circ: &FiniteGroup, subgroup: &[usize]) -> Result<Self, HgsError> {
        let n = circ.n();
        let subgroup = normalize_subset(n, subgroup).ok_or(HgsError::NotASubgroup)?;
        if !circ.is_subgroup(&subgroup) {
            return Err(HgsError::NotASubgroup);
        }
        let mut index = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for x in 0..n {
            if index[x] == usize::MAX {
                for &b in &subgroup {
                    index[circ.op(x, b)] = reps.len();
                }
                reps.push(x);
            }
        }
        let space = CosetSpace {
            circ: circ.clone(),
            subgroup,
            reps,
            index,
        };
        let mut reached = vec![false; space.len()];
        for g in 0..n {
            reached[space.lambda(g).apply(0)] = true;
        }
        assert!(
            reached.into_iter().all(|r| r),
            "G acts transitively on its cosets"
        );
        Ok(space)
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    pub fn subgroup(&self) -> &[usize] {
        &self.subgroup
    }

    /// Smallest element of each coset.
    pub fn reps(&self) -> &[usize] {
        &self.reps
    }

    pub fn coset_of(&self, x: usize) -> usize {
        self.index[x]
    }

    /// `λ_X(g)[xB] = (g ∘ x)B`.
    pub fn lambda(&self, g: usize) -> Permutation {
        Permutation::from_fn(self.len(), |c| self.index[self.circ.op(g, self.reps[c])])
    }

    pub fn lambda_all(&self) -> Vec<Permutation> {
        (0..self.circ.n()).map(|g| self.lambda(g)).collect()
    }
}

/// Order equals degree and only the identity fixes a point.
pub fn is_regular(s: &PermSet) -> bool {
    s.order() == s.deg()
        && s.elements()
            .iter()
            .all(|p| p.is_identity() || !p.has_fixed_point())
}

/// `t S t⁻¹ = S` for every `t`.
pub fn normalized_by(s: &PermSet, ts: &[Permutation]) -> bool {
    ts.iter()
        .all(|t| s.elements().iter().all(|p| s.contains(&p.conjugate_by(t))))
}

/// `ρ_·(G)`, which is regular and normalized by `λ_∘(G)`.
pub fn brace_to_regular(b: &SkewBrace) -> PermSet {
    let s = b.dot().right_regular();
    assert!(is_regular(&s));
    assert!(normalized_by(&s, &b.circ().left_regular_perms()));
    s
}

/// The brace on `(G, ∘)` whose dot is transported from `S` along
/// `η ↦ η⁻¹[0]`, i.e. `g · h = η_h⁻¹[g]` where `η_h⁻¹[0] = h`.
pub fn regular_to_brace(s: &PermSet, circ: &FiniteGroup) -> Result<SkewBrace, HgsError> {
    let n = circ.n();
    if s.deg() != n {
        return Err(HgsError::DegreeMismatch {
            expected: n,
            found: s.deg(),
        });
    }
    if !is_regular(s) {
        return Err(HgsError::NotRegular);
    }
    if !normalized_by(s, &circ.left_regular_perms()) {
        return Err(HgsError::NotNormalized);
    }
    let mut by_point: Vec<Option<Permutation>> = vec![None; n];
    for eta in s.elements() {
        let inv = eta.inverse();
        let point = inv.apply(0);
        by_point[point] = Some(inv);
    }
    let mut table = Vec::with_capacity(n * n);
    for g in 0..n {
        for eta in &by_point {
            table.push(eta.as_ref().expect("regular").apply(g));
        }
    }
    let dot = FiniteGroup::from_flat(n, table).map_err(BraceError::DotNotGroup)?;
    Ok(SkewBrace::new(dot, circ.clone())?)
}

/// The isomorphism `Perm(X) → Perm(A)` given by `ψ(μ)[a] ∘ B = μ[a ∘ B]`,
/// for a subset `A` meeting every coset exactly once. Permutations of `A`
/// act on positions in the sorted subset.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Psi {
    a_subset: Vec<usize>,
    coset_to_a: Vec<usize>,
    a_to_coset: Vec<usize>,
}

impl Psi {
    pub fn new(space: &CosetSpace, a: &[usize]) -> Result<Self, HgsError> {
        let a = normalize_subset(space.circ().n(), a).ok_or(HgsError::NotATransversal)?;
        if a.len() != space.len() {
            return Err(HgsError::NotATransversal);
        }
        let mut coset_to_a = vec![usize::MAX; space.len()];
        let mut a_to_coset = Vec::with_capacity(a.len());
        for (i, &x) in a.iter().enumerate() {
            let c = space.coset_of(x);
            if coset_to_a[c] != usize::MAX {
                return Err(HgsError::NotATransversal);
            }
            coset_to_a[c] = i;
            a_to_coset.push(c);
        }
        Ok(Psi {
            a_subset: a,
            coset_to_a,
            a_to_coset,
        })
    }

    pub fn a_subset(&self) -> &[usize] {
        &self.a_subset
    }

    pub fn forward(&self, mu: &Permutation) -> Permutation {
        Permutation::from_fn(self.a_to_coset.len(), |i| {
            self.coset_to_a[mu.apply(self.a_to_coset[i])]
        })
    }

    pub fn backward(&self, pi: &Permutation) -> Permutation {
        Permutation::from_fn(self.coset_to_a.len(), |c| {
            self.a_to_coset[pi.apply(self.coset_to_a[c])]
        })
    }

    pub fn forward_set(&self, m: &PermSet) -> PermSet {
        let perms = m.elements().iter().map(|mu| self.forward(mu)).collect();
        PermGroup::from_elements_unchecked(self.a_to_coset.len(), perms)
    }

    pub fn backward_set(&self, m: &PermSet) -> PermSet {
        let perms = m.elements().iter().map(|pi| self.backward(pi)).collect();
        PermGroup::from_elements_unchecked(self.coset_to_a.len(), perms)
    }
}

/// A normal subgroup `A` of `(G, ∘)` with complement `B`, and everything
/// derived from that factorization.
#[derive(Debug, Clone)]
pub struct InducedSetting {
    circ: FiniteGroup,
    a: Vec<usize>,
    b: Vec<usize>,
    space: CosetSpace,
    psi: Psi,
    phi: PermHom,
    /// `factor[g] = (i, j)` with `g = a_i ∘ b_j`.
    factor: Vec<(usize, usize)>,
}

impl InducedSetting {
    pub fn new(circ: &FiniteGroup, a: &[usize], b: &[usize]) -> Result<Self, HgsError> {
        let phi = conjugation_phi(circ, a, b).map_err(|_| HgsError::BadComplementPair)?;
        let n = circ.n();
        let a = normalize_subset(n, a).expect("validated");
        let b = normalize_subset(n, b).expect("validated");
        let space = CosetSpace::new(circ, &b)?;
        let psi = Psi::new(&space, &a)?;
        let mut factor = vec![(usize::MAX, usize::MAX); n];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                factor[circ.op(x, y)] = (i, j);
            }
        }
        Ok(InducedSetting {
            circ: circ.clone(),
            a,
            b,
            space,
            psi,
            phi,
            factor,
        })
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    pub fn a(&self) -> &[usize] {
        &self.a
    }

    pub fn b(&self) -> &[usize] {
        &self.b
    }

    pub fn space(&self) -> &CosetSpace {
        &self.space
    }

    pub fn psi(&self) -> &Psi {
        &self.psi
    }

    /// `φ_b(a) = b ∘ a ∘ b̄` on sorted positions of `A`, indexed by `B`.
    pub fn phi(&self) -> &PermHom {
        &self.phi
    }

    /// `g ↦ pair code of (a, b)` where `g = a ∘ b`.
    pub fn delta(&self) -> Permutation {
        Permutation::from_fn(self.circ.n(), |g| {
            let (i, j) = self.factor[g];
            pair_code(i, j, self.b.len())
        })
    }

    /// `(A, ∘)` as a group on sorted positions.
    pub fn a_circ(&self) -> FiniteGroup {
        self.circ.restrict(&self.a).expect("A is a subgroup")
    }

    /// `(B, ∘)` as a group on sorted positions.
    pub fn b_circ(&self) -> FiniteGroup {
        self.circ.restrict(&self.b).expect("B is a subgroup")
    }

    /// `ν(μ, η)[a ∘ b] = ψ(μ)[a] ∘ η[b]`.
    pub fn nu(&self, mu: &Permutation, eta: &Permutation) -> Permutation {
        let pm = self.psi.forward(mu);
        Permutation::from_fn(self.circ.n(), |g| {
            let (i, j) = self.factor[g];
            self.circ.op(self.a[pm.apply(i)], self.b[eta.apply(j)])
        })
    }

    /// `ν(M × N)`, a regular subgroup of `Perm(G)` normalized by `λ_∘(G)`.
    ///
    /// `M` acts on the cosets of `B`, `N` on sorted positions of `B`.
    pub fn induce(&self, m: &PermSet, n: &PermSet) -> Result<PermSet, HgsError> {
        if m.deg() != self.space.len() || !is_regular(m) {
            return Err(HgsError::MNotRegular);
        }
        if !normalized_by(m, &self.space.lambda_all()) {
            return Err(HgsError::MNotNormalized);
        }
        if n.deg() != self.b.len() || !is_regular(n) {
            return Err(HgsError::NNotRegular);
        }
        if !normalized_by(n, &self.b_circ().left_regular_perms()) {
            return Err(HgsError::NNotNormalized);
        }
        let mut perms = Vec::with_capacity(m.order() * n.order());
        for mu in m.elements() {
            for eta in n.elements() {
                perms.push(self.nu(mu, eta));
            }
        }
        let s = PermGroup::from_elements(self.circ.n(), perms).expect("ν is a homomorphism");
        assert_eq!(s.order(), m.order() * n.order(), "ν is injective");
        assert!(is_regular(&s));
        assert!(normalized_by(&s, &self.circ.left_regular_perms()));
        Ok(s)
    }

    /// Both sides of: `M` is normalized by `λ_X(G)` iff `ψ(M)` is normalized
    /// by `λ_∘(A)` and by every `φ_b`.
    pub fn check_normalization_transfer(&self, m: &PermSet) -> PropCheck {
        let lhs = normalized_by(m, &self.space.lambda_all());
        let pm = self.psi.forward_set(m);
        let rhs = normalized_by(&pm, &self.a_circ().left_regular_perms())
            && normalized_by(&pm, self.phi.images());
        PropCheck { lhs, rhs }
    }

    /// Whether the brace built from `ν(ψ⁻¹(ρ_·(A)) × ρ_·(B))` equals
    /// `A ⋊^φ B` with trivial `θ` after relabelling by `δ`.
    pub fn induced_equals_sdp(&self, a: &SkewBrace, b: &SkewBrace) -> Result<bool, HgsError> {
        if *a.circ() != self.a_circ() || *b.circ() != self.b_circ() {
            return Err(HgsError::CircMismatch);
        }
        let m = self.psi.backward_set(&brace_to_regular(a));
        let n = brace_to_regular(b);
        let induced = regular_to_brace(&self.induce(&m, &n)?, &self.circ)?;
        let spec = SdpSpec::with_trivial_theta(a.clone(), b.clone(), self.phi.clone())
            .expect("φ is an action of (B, ∘) on (A, ∘)");
        match make_sdp_brace(&spec) {
            Ok(sdp) => Ok(induced.relabel(&self.delta()) == sdp),
            Err(SdpError::NotAdmissible(_)) => Ok(false),
            Err(e) => panic!("unexpected failure building the product: {e}"),
        }
    }

    /// `ρ̄(a)[a' ∘ B] = (a' · a⁻¹) ∘ B`, for a brace that is the internal
    /// semidirect product of `A` and `B`.
    pub fn rho_bar(&self, brace: &SkewBrace) -> Result<RhoBar, HgsError> {
        if *brace.circ() != self.circ {
            return Err(HgsError::CircMismatch);
        }
        if !is_internal_sdp(brace, &self.a, &self.b) {
            return Err(HgsError::NotInternalSdp);
        }
        let local = local_index(self.circ.n(), &self.a);
        let dot = brace.dot();
        let images: Vec<Permutation> = self
            .a
            .iter()
            .map(|&x| {
                let xi = dot.inv(x);
                let right = Permutation::from_fn(self.a.len(), |i| local[dot.op(self.a[i], xi)]);
                self.psi.backward(&right)
            })
            .collect();
        let group = PermGroup::from_elements_unchecked(self.space.len(), images.clone());
        let lambdas = self.space.lambda_all();
        assert!(is_regular(&group), "ρ̄(A) is regular");
        assert!(
            normalized_by(&group, &lambdas),
            "ρ̄(A) is normalized by λ_X(G)"
        );
        // Conjugation by λ_X(a₁ ∘ b) sends ρ̄(a) to ρ̄(γ_{a₁}(φ_b(a))). This
        // agrees with ρ̄(γ_g(a)) when b acts trivially on A under dot
        // conjugation, but not in general.
        for g in 0..self.circ.n() {
            let (a1, bj) = self.factor[g];
            let lg = &lambdas[g];
            let lg_inv = &lambdas[self.circ.inv(g)];
            for (i, image) in images.iter().enumerate() {
                let lhs = lg.compose(image).compose(lg_inv);
                let moved = self.a[self.phi.get(bj).apply(i)];
                let target = local[brace.gamma_at(self.a[a1], moved)];
                assert_eq!(lhs, images[target], "conjugation of ρ̄ by λ_X");
            }
        }
        Ok(RhoBar { images, group })
    }

    /// Pairs `(g, a)` (with `a` a sorted position in `A`) for which
    /// `λ_X(g) ρ̄(a) λ_X(ḡ) ≠ ρ̄(γ_g(a))`.
    pub fn rho_bar_gamma_failures(
        &self,
        brace: &SkewBrace,
        rho_bar: &RhoBar,
    ) -> Vec<(usize, usize)> {
        let local = local_index(self.circ.n(), &self.a);
        let lambdas = self.space.lambda_all();
        let mut failures = Vec::new();
        for g in 0..self.circ.n() {
            let lg_inv = &lambdas[self.circ.inv(g)];
            for (i, image) in rho_bar.images.iter().enumerate() {
                let lhs = lambdas[g].compose(image).compose(lg_inv);
                if lhs != rho_bar.images[local[brace.gamma_at(g, self.a[i])]] {
                    failures.push((g, i));
                }
            }
        }
        failures
    }
}

/// `ρ̄` indexed by sorted positions of `A`, and its image.
#[derive(Debug, Clone)]
pub struct RhoBar {
    pub images: Vec<Permutation>,
    pub group: PermSet,
}

/// The two sides of an equivalence, evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PropCheck {
    pub lhs: bool,
    pub rhs: bool,
}

impl PropCheck {
    pub fn agrees(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// Both sides of: every `φ_b` normalizes `ρ_·(A)` iff every `φ_b` is an
/// automorphism of `(A, ·)`.
pub fn check_action_on_dot(a: &SkewBrace, phi: &PermHom) -> PropCheck {
    let rho = a.dot().right_regular();
    let lhs = normalized_by(&rho, phi.images());
    let rhs = phi.lands_in_aut(a.dot());
    PropCheck { lhs, rhs }
}
