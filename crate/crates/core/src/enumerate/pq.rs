//! The constructive catalog of skew braces on groups of order `pq`.

use std::fmt;
use std::str::FromStr;

use crate::brace::SkewBrace;
use crate::group::{is_prime, FiniteGroup};
use crate::hom::PermHom;
use crate::perm::Permutation;
use crate::sdp::{admissible_thetas, conjugation_phi, make_sdp_brace, pair_code, SdpSpec};

use super::types::metacyclic;
use super::{count_by_type, BraceCatalog, EnumerateError, Origin, TypeLabeler};

/// Which group of order `pq` carries the circ operation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PqKind {
    Cyclic,
    Metacyclic,
}

impl fmt::Display for PqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PqKind::Cyclic => "cyclic",
            PqKind::Metacyclic => "metacyclic",
        })
    }
}

impl FromStr for PqKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "cyclic" => Ok(PqKind::Cyclic),
            "metacyclic" => Ok(PqKind::Metacyclic),
            other => Err(format!("expected cyclic or metacyclic, got {other:?}")),
        }
    }
}

/// Smallest `r` of multiplicative order exactly `q` modulo `p`.
fn root_of_order(p: usize, q: usize) -> usize {
    (2..p)
        .find(|&r| {
            let mut x = 1;
            let mut order = 0;
            loop {
                x = x * r % p;
                order += 1;
                if x == 1 {
                    break;
                }
            }
            order == q
        })
        .expect("q divides p − 1")
}

/// The circ group: `C_p × C_q` or `C_p ⋊ C_q`, pair-encoded as `a·q + b`.
pub fn pq_group(p: usize, q: usize, which: PqKind) -> FiniteGroup {
    match which {
        PqKind::Cyclic => {
            FiniteGroup::direct_product(&FiniteGroup::cyclic(p), &FiniteGroup::cyclic(q))
        }
        PqKind::Metacyclic => metacyclic(p, q, root_of_order(p, q)),
    }
}

fn bad(p: usize, q: usize, reason: &str) -> EnumerateError {
    EnumerateError::BadPrimes {
        p,
        q,
        reason: reason.to_string(),
    }
}

/// All skew braces whose circ group is the cyclic or metacyclic group of
/// order `pq`, built as semidirect products of trivial braces over the
/// Sylow `p`-subgroup and each complement, then closed under opposites.
///
/// The counts `1 + 2(q − 1)` (cyclic) and `p + 2 + 2p(q − 2)` (metacyclic),
/// split by cyclic and metacyclic dot type, are asserted.
pub fn pq_catalog(p: usize, q: usize, which: PqKind) -> Result<BraceCatalog, EnumerateError> {
    if !is_prime(p) || !is_prime(q) {
        return Err(bad(p, q, "both must be prime"));
    }
    if p <= q {
        return Err(bad(p, q, "need p > q"));
    }
    if !(p - 1).is_multiple_of(q) {
        return match which {
            PqKind::Cyclic => {
                let circ = pq_group(p, q, which);
                let trivial = SkewBrace::trivial(&circ);
                BraceCatalog::build(
                    &circ,
                    vec![(
                        trivial,
                        Origin::Sdp {
                            complement: 0,
                            theta: 0,
                        },
                    )],
                )
            }
            PqKind::Metacyclic => Err(bad(p, q, "q does not divide p − 1")),
        };
    }

    let circ = pq_group(p, q, which);
    let sylow = circ.subgroups_of_order(p);
    assert_eq!(sylow.len(), 1, "the Sylow p-subgroup is normal");
    let a = &sylow[0];
    let a_brace = SkewBrace::trivial(&circ.restrict(a).expect("a subgroup"));
    let complements = circ.subgroups_of_order(q);
    let expected_complements = match which {
        PqKind::Cyclic => 1,
        PqKind::Metacyclic => p,
    };
    assert_eq!(complements.len(), expected_complements);

    let mut items = Vec::new();
    for (ci, b) in complements.iter().enumerate() {
        let b_brace = SkewBrace::trivial(&circ.restrict(b).expect("a subgroup"));
        let phi = conjugation_phi(&circ, a, b).expect("A is normal and B complements it");
        let thetas = admissible_thetas(&a_brace, &b_brace, &phi).expect("φ is an action");
        // Every homomorphism C_q → Aut(C_p) is admissible here: the trivial
        // one and, in the metacyclic case, the pointwise powers of φ.
        assert_eq!(thetas.len(), q);
        if which == PqKind::Metacyclic {
            let mut powers: Vec<_> = (0..q as u64).map(|i| phi.pow(i)).collect();
            powers.sort();
            assert_eq!(thetas, powers);
        }
        for (ti, theta) in thetas.into_iter().enumerate() {
            let brace = sdp_on(&circ, a, b, theta);
            items.push((
                brace,
                Origin::Sdp {
                    complement: ci,
                    theta: ti,
                },
            ));
        }
    }
    let opposites: Vec<_> = items
        .iter()
        .map(|(b, _)| (b.opposite(), Origin::OppositeOf(b.clone())))
        .collect();
    items.extend(opposites);
    let cat = BraceCatalog::build(&circ, items)?;

    let mut labeler = TypeLabeler::new();
    let cyclic_label = labeler.label(&FiniteGroup::cyclic(p * q));
    let meta_label = labeler.label(&pq_group(p, q, PqKind::Metacyclic));
    let counts = count_by_type(&cat);
    let cyclic_count = counts.get(&cyclic_label).copied().unwrap_or(0);
    let meta_count = counts.get(&meta_label).copied().unwrap_or(0);
    let (want_cyclic, want_meta) = match which {
        PqKind::Cyclic => (1, 2 * (q - 1)),
        PqKind::Metacyclic => (p, 2 + 2 * p * (q - 2)),
    };
    if cyclic_count + meta_count != cat.len()
        || (cyclic_count, meta_count) != (want_cyclic, want_meta)
    {
        return Err(EnumerateError::CountMismatch {
            expected: (want_cyclic, want_meta),
            found: (cyclic_count, cat.len() - cyclic_count),
        });
    }
    for brace in cat.braces() {
        assert!(brace.classify_subset(a).is_ideal, "A is an ideal");
    }
    Ok(cat)
}

/// The semidirect product of trivial braces on `A` and `B` with the given
/// θ, transported onto `circ` along `a ∘ b ↦ (a, b)`.
pub(crate) fn sdp_on(circ: &FiniteGroup, a: &[usize], b: &[usize], theta: PermHom) -> SkewBrace {
    let a_brace = SkewBrace::trivial(&circ.restrict(a).expect("a subgroup"));
    let b_brace = SkewBrace::trivial(&circ.restrict(b).expect("a subgroup"));
    let phi = conjugation_phi(circ, a, b).expect("A is normal and B complements it");
    let spec =
        SdpSpec::new(a_brace, b_brace, phi, theta).expect("θ is a homomorphism into Aut(A, ·)");
    let delta = Permutation::from_fn(circ.n(), |g| {
        let (ai, bi) = factor(circ, a, b, g);
        pair_code(ai, bi, b.len())
    });
    let brace = make_sdp_brace(&spec)
        .expect("θ is admissible")
        .relabel(&delta.inverse());
    assert_eq!(brace.circ(), circ, "δ transports the external circ onto G");
    brace
}

/// Positions of `a ∈ A` and `b ∈ B` with `g = a ∘ b`.
fn factor(circ: &FiniteGroup, a: &[usize], b: &[usize], g: usize) -> (usize, usize) {
    for (bi, &y) in b.iter().enumerate() {
        let x = circ.op(g, circ.inv(y));
        if let Ok(ai) = a.binary_search(&x) {
            return (ai, bi);
        }
    }
    unreachable!("A ∘ B covers the group")
}
