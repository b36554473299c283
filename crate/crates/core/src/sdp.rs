//! Semidirect products `A ⋊_θ^φ B` of skew braces, where `A` becomes an
//! ideal and `B` a left ideal, plus recognition of internal products.
//!
//! Elements of the product are pairs `(a, b)` encoded as `a·|B| + b`.

use std::fmt;

use thiserror::Error;

use crate::brace::{BraceError, SkewBrace};
use crate::group::{local_index, normalize_subset, FiniteGroup, GroupError};
use crate::hom::{automorphisms, homomorphisms, PermHom};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SdpError {
    #[error("invalid semidirect product data: {0}")]
    SpecInvalid(String),
    #[error("θ is not admissible: {0}")]
    NotAdmissible(AdmissibilityFailure),
    #[error("φ is not an action of (B, ∘) on (A, ∘)")]
    PhiNotAnAction,
    #[error("subsets are not a normal subgroup and a complement")]
    BadComplementPair,
    #[error("subsets do not form an internal semidirect product")]
    NotInternalSdp,
    #[error(transparent)]
    Brace(#[from] BraceError),
}

/// The first failing admissibility condition, with its witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AdmissibilityFailure {
    /// `φ_b(x·y) ≠ φ_b(x)·φ_b(y)`.
    PhiNotDotAutomorphism { b: usize, x: usize, y: usize },
    /// `γ_a θ_b ≠ θ_b γ_a`.
    GammaThetaCommute { a: usize, b: usize },
    /// `φ_b θ_{b'} ≠ θ_{b·γ_b(b')·b⁻¹} φ_b`.
    PhiThetaTwist { b: usize, b2: usize },
}

impl fmt::Display for AdmissibilityFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            AdmissibilityFailure::PhiNotDotAutomorphism { b, x, y } => write!(
                f,
                "φ_b does not respect the dot operation of A (b = {b}, x = {x}, y = {y})"
            ),
            AdmissibilityFailure::GammaThetaCommute { a, b } => {
                write!(f, "γ_a θ_b ≠ θ_b γ_a at (a, b) = ({a}, {b})")
            }
            AdmissibilityFailure::PhiThetaTwist { b, b2 } => write!(
                f,
                "φ_b θ_b' ≠ θ_(b γ_b(b') b⁻¹) φ_b at (b, b') = ({b}, {b2})"
            ),
        }
    }
}

/// Input data for `A ⋊_θ^φ B`.
///
/// `phi` is indexed by elements of `B` and must be an action of `(B, ∘)` on
/// `(A, ∘)`; `theta` must be an action of `(B, ·)` on `(A, ·)`. Whether `φ`
/// also respects `(A, ·)` is part of admissibility, not of validity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdpSpec {
    a: SkewBrace,
    b: SkewBrace,
    phi: PermHom,
    theta: PermHom,
}

impl SdpSpec {
    pub fn new(a: SkewBrace, b: SkewBrace, phi: PermHom, theta: PermHom) -> Result<Self, SdpError> {
        let (na, nb) = (a.n(), b.n());
        for (name, h) in [("φ", &phi), ("θ", &theta)] {
            if h.len() != nb {
                return Err(SdpError::SpecInvalid(format!(
                    "{name} has {} images, expected {nb}",
                    h.len()
                )));
            }
            if let Some(bi) = h.images().iter().position(|p| p.deg() != na) {
                return Err(SdpError::SpecInvalid(format!(
                    "{name}({bi}) is not a permutation of {na} points"
                )));
            }
        }
        if !phi.lands_in_aut(a.circ()) {
            return Err(SdpError::SpecInvalid(
                "some φ_b is not an automorphism of (A, ∘)".into(),
            ));
        }
        if !phi.respects(b.circ()) {
            return Err(SdpError::SpecInvalid(
                "φ is not a homomorphism on (B, ∘)".into(),
            ));
        }
        if !theta.lands_in_aut(a.dot()) {
            return Err(SdpError::SpecInvalid(
                "some θ_b is not an automorphism of (A, ·)".into(),
            ));
        }
        if !theta.respects(b.dot()) {
            return Err(SdpError::SpecInvalid(
                "θ is not a homomorphism on (B, ·)".into(),
            ));
        }
        Ok(SdpSpec { a, b, phi, theta })
    }

    /// `θ = φ`, the choice that always gives a brace when `A` and `B` are
    /// trivial braces.
    pub fn with_theta_equal_phi(
        a: SkewBrace,
        b: SkewBrace,
        phi: PermHom,
    ) -> Result<Self, SdpError> {
        let theta = phi.clone();
        Self::new(a, b, phi, theta)
    }

    /// Trivial `θ`.
    pub fn with_trivial_theta(a: SkewBrace, b: SkewBrace, phi: PermHom) -> Result<Self, SdpError> {
        let theta = PermHom::trivial(b.n(), a.n());
        Self::new(a, b, phi, theta)
    }

    pub fn a(&self) -> &SkewBrace {
        &self.a
    }

    pub fn b(&self) -> &SkewBrace {
        &self.b
    }

    pub fn phi(&self) -> &PermHom {
        &self.phi
    }

    pub fn theta(&self) -> &PermHom {
        &self.theta
    }

    /// The same data with `θ` replaced by its pointwise `i`-th power.
    ///
    /// Fails with `SpecInvalid` if the power is not a homomorphism on
    /// `(B, ·)`. Admissibility is preserved; this is asserted.
    pub fn with_theta_power(&self, i: u64) -> Result<SdpSpec, SdpError> {
        let spec = SdpSpec::new(
            self.a.clone(),
            self.b.clone(),
            self.phi.clone(),
            theta_power(&self.theta, i),
        )?;
        if self.is_admissible() {
            assert!(
                spec.is_admissible(),
                "powers of an admissible θ are admissible"
            );
        }
        Ok(spec)
    }

    pub fn order(&self) -> usize {
        self.a.n() * self.b.n()
    }

    /// The dot and circ tables of the product, each a validated group.
    /// The brace axiom is not checked here.
    pub fn external_tables(&self) -> (FiniteGroup, FiniteGroup) {
        let dot = FiniteGroup::semidirect_product(self.a.dot(), self.b.dot(), self.theta.images())
            .expect("θ is validated as an action");
        let circ = FiniteGroup::semidirect_product(self.a.circ(), self.b.circ(), self.phi.images())
            .expect("φ is validated as an action");
        let revalidate = |g: FiniteGroup| -> FiniteGroup {
            FiniteGroup::from_flat(g.n(), g.flat().to_vec())
                .unwrap_or_else(|e: GroupError| panic!("semidirect product is a group: {e}"))
        };
        (revalidate(dot), revalidate(circ))
    }

    /// The first failing admissibility condition, if any.
    pub fn check_admissible(&self) -> Result<(), AdmissibilityFailure> {
        let (a, b) = (&self.a, &self.b);
        for bi in 0..b.n() {
            let p = self.phi.get(bi);
            for x in 0..a.n() {
                for y in 0..a.n() {
                    if p.apply(a.dot().op(x, y)) != a.dot().op(p.apply(x), p.apply(y)) {
                        return Err(AdmissibilityFailure::PhiNotDotAutomorphism { b: bi, x, y });
                    }
                }
            }
        }
        for ai in 0..a.n() {
            let g = a.gamma().get(ai);
            for bi in 0..b.n() {
                let t = self.theta.get(bi);
                if g.compose(t) != t.compose(g) {
                    return Err(AdmissibilityFailure::GammaThetaCommute { a: ai, b: bi });
                }
            }
        }
        let bd = b.dot();
        for bi in 0..b.n() {
            let p = self.phi.get(bi);
            for b2 in 0..b.n() {
                let twisted = bd.op(bd.op(bi, b.gamma_at(bi, b2)), bd.inv(bi));
                if p.compose(self.theta.get(b2)) != self.theta.get(twisted).compose(p) {
                    return Err(AdmissibilityFailure::PhiThetaTwist { b: bi, b2 });
                }
            }
        }
        Ok(())
    }

    pub fn is_admissible(&self) -> bool {
        self.check_admissible().is_ok()
    }
}

/// The brace `A ⋊_θ^φ B`.
pub fn make_sdp_brace(spec: &SdpSpec) -> Result<SkewBrace, SdpError> {
    spec.check_admissible().map_err(SdpError::NotAdmissible)?;
    let (dot, circ) = spec.external_tables();
    Ok(SkewBrace::new(dot, circ)?)
}

/// Pointwise power `b ↦ θ_b^i`.
pub fn theta_power(theta: &PermHom, i: u64) -> PermHom {
    theta.pow(i)
}

/// `(a, b) ↦ a·|B| + b`.
pub fn pair_code(a: usize, b: usize, b_order: usize) -> usize {
    a * b_order + b
}

/// Every admissible `θ: (B, ·) → Aut(A, ·)` for the given `φ`, sorted.
pub fn admissible_thetas(
    a: &SkewBrace,
    b: &SkewBrace,
    phi: &PermHom,
) -> Result<Vec<PermHom>, SdpError> {
    if phi.len() != b.n()
        || phi.images().iter().any(|p| p.deg() != a.n())
        || !phi.lands_in_aut(a.circ())
        || !phi.respects(b.circ())
    {
        return Err(SdpError::PhiNotAnAction);
    }
    let aut = automorphisms(a.dot());
    Ok(homomorphisms(b.dot(), &aut)
        .into_iter()
        .filter(|theta| {
            SdpSpec::new(a.clone(), b.clone(), phi.clone(), theta.clone())
                .expect("θ ranges over homomorphisms into Aut(A, ·)")
                .is_admissible()
        })
        .collect())
}

/// `b ↦ (a ↦ b·a·b⁻¹)` on the normal subgroup `A` of `g`, indexed by the
/// sorted positions of `A` and `B`.
pub fn conjugation_phi(g: &FiniteGroup, a: &[usize], b: &[usize]) -> Result<PermHom, SdpError> {
    let n = g.n();
    let a = normalize_subset(n, a).ok_or(SdpError::BadComplementPair)?;
    let b = normalize_subset(n, b).ok_or(SdpError::BadComplementPair)?;
    if !g.is_subgroup(&a)
        || !g.is_subgroup(&b)
        || !g.is_normal_unchecked(&a)
        || a.len() * b.len() != n
        || intersection_size(&a, &b) != 1
    {
        return Err(SdpError::BadComplementPair);
    }
    let local = local_index(n, &a);
    Ok(PermHom::new(
        b.iter()
            .map(|&bi| Permutation::from_fn(a.len(), |i| local[g.conj(bi, a[i])]))
            .collect(),
    ))
}

fn intersection_size(a: &[usize], b: &[usize]) -> usize {
    a.iter().filter(|x| b.binary_search(x).is_ok()).count()
}

fn products_cover(g: &FiniteGroup, a: &[usize], b: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for &x in a {
        for &y in b {
            seen[g.op(x, y)] = true;
        }
    }
    seen.into_iter().all(|s| s)
}

/// `A` an ideal, `B` a left ideal, `A ∩ B = {e}`, `A∘B = G` and `A·B = G`.
pub fn is_internal_sdp(brace: &SkewBrace, a: &[usize], b: &[usize]) -> bool {
    let n = brace.n();
    let (Some(a), Some(b)) = (normalize_subset(n, a), normalize_subset(n, b)) else {
        return false;
    };
    brace.classify_subset(&a).is_ideal
        && brace.classify_subset(&b).is_left_ideal
        && intersection_size(&a, &b) == 1
        && products_cover(brace.circ(), &a, &b)
        && products_cover(brace.dot(), &a, &b)
}

/// An internal semidirect product `G = A ⋊ B` together with its external
/// description and the isomorphism `δ(a∘b) = (a, b)`.
#[derive(Debug, Clone)]
pub struct SdpDecomposition {
    pub a_subset: Vec<usize>,
    pub b_subset: Vec<usize>,
    pub a_brace: SkewBrace,
    pub b_brace: SkewBrace,
    pub phi: PermHom,
    pub theta: PermHom,
    /// `delta[g]` is the pair code of `g`'s factorization `a ∘ b`.
    pub delta: Permutation,
}

impl SdpDecomposition {
    pub fn spec(&self) -> SdpSpec {
        SdpSpec::new(
            self.a_brace.clone(),
            self.b_brace.clone(),
            self.phi.clone(),
            self.theta.clone(),
        )
        .expect("extracted data is a valid specification")
    }
}

/// Splits an internal semidirect product into external data.
pub fn internal_to_external(
    brace: &SkewBrace,
    a: &[usize],
    b: &[usize],
) -> Result<SdpDecomposition, SdpError> {
    if !is_internal_sdp(brace, a, b) {
        return Err(SdpError::NotInternalSdp);
    }
    let n = brace.n();
    let a = normalize_subset(n, a).expect("checked above");
    let b = normalize_subset(n, b).expect("checked above");
    let a_brace = brace.restrict(&a)?;
    let b_brace = brace.restrict(&b)?;
    let phi = conjugation_phi(brace.circ(), &a, &b)?;
    let theta = conjugation_phi(brace.dot(), &a, &b)?;
    let mut delta = vec![usize::MAX; n];
    for (i, &ai) in a.iter().enumerate() {
        for (j, &bj) in b.iter().enumerate() {
            delta[brace.circ().op(ai, bj)] = pair_code(i, j, b.len());
        }
    }
    let delta = Permutation::new(delta).expect("A ∘ B factorizations are unique");

    for &ai in &a {
        for &bj in &b {
            assert_eq!(brace.gamma_at(ai, bj), bj, "γ_a fixes B pointwise");
        }
    }
    let decomposition = SdpDecomposition {
        a_subset: a,
        b_subset: b,
        a_brace,
        b_brace,
        phi,
        theta,
        delta,
    };
    let spec = decomposition.spec();
    let (dot, circ) = spec.external_tables();
    let d = &decomposition.delta;
    for x in 0..n {
        for y in 0..n {
            assert_eq!(
                d.apply(brace.dot().op(x, y)),
                dot.op(d.apply(x), d.apply(y))
            );
            assert_eq!(
                d.apply(brace.circ().op(x, y)),
                circ.op(d.apply(x), d.apply(y))
            );
        }
    }
    Ok(decomposition)
}
