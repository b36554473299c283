//! Named groups and braces used as fixtures by tests, examples and the CLI.

use crate::brace::SkewBrace;
use crate::group::FiniteGroup;
use crate::hom::{automorphisms, homomorphisms, PermHom};
use crate::perm::Permutation;
use crate::sdp::SdpSpec;

/// All groups of order at most 8, one per isomorphism class, with names.
pub fn groups_up_to_8() -> Vec<(&'static str, FiniteGroup)> {
    let c = FiniteGroup::cyclic;
    let x = FiniteGroup::direct_product;
    vec![
        ("C1", c(1)),
        ("C2", c(2)),
        ("C3", c(3)),
        ("C4", c(4)),
        ("C2xC2", x(&c(2), &c(2))),
        ("C5", c(5)),
        ("C6", c(6)),
        ("D3", FiniteGroup::dihedral(3)),
        ("C7", c(7)),
        ("C8", c(8)),
        ("C2xC4", x(&c(2), &c(4))),
        ("C2xC2xC2", x(&c(2), &x(&c(2), &c(2)))),
        ("D4", FiniteGroup::dihedral(4)),
        ("Q8", FiniteGroup::dicyclic(2)),
    ]
}

/// Circ `C8 = ⟨a⟩`, dot `a^i · a^j = a^(i + (−1)^i j)`, a dihedral group.
pub fn c8_brace_dihedral_dot() -> SkewBrace {
    let dot: Vec<Vec<usize>> = (0..8)
        .map(|i| {
            (0..8)
                .map(|j| {
                    if i % 2 == 0 {
                        (i + j) % 8
                    } else {
                        (i + 8 - j) % 8
                    }
                })
                .collect()
        })
        .collect();
    SkewBrace::from_rows(&dot, &FiniteGroup::cyclic(8).rows()).expect("stock brace is valid")
}

/// Circ `C4 = ⟨b⟩`, dot `b^i · b^j = b^(i + j + 2ij)`, a Klein four-group.
pub fn c4_brace_klein_dot() -> SkewBrace {
    let dot: Vec<Vec<usize>> = (0..4)
        .map(|i| (0..4).map(|j| (i + j + 2 * i * j) % 4).collect())
        .collect();
    SkewBrace::from_rows(&dot, &FiniteGroup::cyclic(4).rows()).expect("stock brace is valid")
}

/// `φ_(b^k)(a^i) = a^((−1)^k i)` on the two braces above.
pub fn c8_c4_phi() -> PermHom {
    let inv = Permutation::from_fn(8, |i| (8 - i) % 8);
    PermHom::new(vec![
        Permutation::identity(8),
        inv.clone(),
        Permutation::identity(8),
        inv,
    ])
}

/// `θ` trivial on `{e, b²}` and conjugation by `a²` in `(A, ·)` on `{b, b³}`.
pub fn c8_c4_theta() -> PermHom {
    let a = c8_brace_dihedral_dot();
    let r = 2;
    let iota = Permutation::from_fn(8, |x| a.dot().conj(r, x));
    PermHom::new(vec![
        Permutation::identity(8),
        iota.clone(),
        Permutation::identity(8),
        iota,
    ])
}

/// The 32-element product `C8 ⋊ C4` with dot type `D4 ⋊ (C2 × C2)`.
pub fn c8_c4_spec() -> SdpSpec {
    SdpSpec::new(
        c8_brace_dihedral_dot(),
        c4_brace_klein_dot(),
        c8_c4_phi(),
        c8_c4_theta(),
    )
    .expect("stock specification is valid")
}

/// Trivial and almost trivial braces on every group of order at most 8,
/// plus the two non-trivial cyclic braces above and their opposites.
pub fn small_braces() -> Vec<SkewBrace> {
    let mut out = Vec::new();
    for (_, g) in groups_up_to_8() {
        out.push(SkewBrace::trivial(&g));
        out.push(SkewBrace::almost_trivial(&g));
    }
    for b in [c8_brace_dihedral_dot(), c4_brace_klein_dot()] {
        out.push(b.opposite());
        out.push(b);
    }
    dedup(out)
}

/// A group `G = A ∘ B` with `A` normal and `B` a complement of `A`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub name: String,
    pub circ: FiniteGroup,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
}

/// Groups of order at most 12 with at least one nontrivial split
/// factorization.
pub fn factorization_groups() -> Vec<(String, FiniteGroup)> {
    let mut out: Vec<(String, FiniteGroup)> = groups_up_to_8()
        .into_iter()
        .map(|(name, g)| (name.to_string(), g))
        .collect();
    out.extend(
        [
            ("C12", FiniteGroup::cyclic(12)),
            ("D6", FiniteGroup::dihedral(6)),
            ("Dic3", FiniteGroup::dicyclic(3)),
            (
                "C2xC6",
                FiniteGroup::direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(6)),
            ),
        ]
        .map(|(name, g)| (name.to_string(), g)),
    );
    out
}

/// Every split factorization `G = A ⋊ B` with `A` and `B` nontrivial, over
/// [`factorization_groups`], plus the circ group of [`c8_c4_spec`].
pub fn factorizations() -> Vec<Factorization> {
    let mut out = Vec::new();
    for (name, g) in factorization_groups() {
        let n = g.n();
        for k in (2..n).filter(|k| n % k == 0) {
            for a in g.subgroups_of_order(k) {
                if !g.is_normal(&a).expect("a subgroup") {
                    continue;
                }
                for b in g.subgroups_of_order(n / k) {
                    if a.iter().filter(|x| b.contains(x)).count() == 1 {
                        out.push(Factorization {
                            name: name.clone(),
                            circ: g.clone(),
                            a: a.clone(),
                            b,
                        });
                    }
                }
            }
        }
    }
    let (_, circ) = c8_c4_spec().external_tables();
    out.push(Factorization {
        name: "C8:C4".to_string(),
        circ,
        a: (0..8).map(|i| 4 * i).collect(),
        b: (0..4).collect(),
    });
    out
}

/// Brace pairs `(A, B)` and actions `φ: (B, ∘) → Aut(A, ∘)` with
/// `|A|·|B| ≤ 32`: `A` ranges over [`small_braces`], `B` over the braces
/// of order 2 to 4 among them, and `φ` over every homomorphism.
pub fn sdp_triples() -> Vec<(SkewBrace, SkewBrace, PermHom)> {
    let braces = small_braces();
    let mut out = Vec::new();
    for a in braces.iter().filter(|a| a.n() >= 2) {
        let aut = automorphisms(a.circ());
        for b in braces
            .iter()
            .filter(|b| (2..=4).contains(&b.n()) && a.n() * b.n() <= 32)
        {
            for phi in homomorphisms(b.circ(), &aut) {
                out.push((a.clone(), b.clone(), phi));
            }
        }
    }
    out
}

fn dedup(mut braces: Vec<SkewBrace>) -> Vec<SkewBrace> {
    let mut seen = std::collections::HashSet::new();
    braces.retain(|b| seen.insert(b.clone()));
    braces
}
