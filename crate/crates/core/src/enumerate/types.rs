//! Isomorphism-type labels for dot groups.

use std::collections::BTreeMap;

use sha2::{Digest, Sha256};

use crate::group::{is_prime, FiniteGroup};
use crate::hom::are_isomorphic;
use crate::perm::{gcd, Permutation};

/// Largest order for which named candidates are generated.
pub const STOCK_LIMIT: usize = 32;

/// Assigns each group a label naming its isomorphism class.
///
/// Groups are matched against named cyclic, abelian, dihedral, dicyclic and
/// metacyclic `C_m ⋊ C_k` groups up to order [`STOCK_LIMIT`]. Anything else
/// gets a label derived from a hash of isomorphism invariants, kept distinct
/// between non-isomorphic groups seen by the same labeler.
#[derive(Default)]
pub struct TypeLabeler {
    stock: BTreeMap<usize, Vec<(String, FiniteGroup)>>,
    unnamed: Vec<(String, FiniteGroup)>,
}

impl TypeLabeler {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn label(&mut self, g: &FiniteGroup) -> String {
        let n = g.n();
        let profile = sorted_profile(g);
        let stock = self.stock.entry(n).or_insert_with(|| stock_groups(n));
        for (name, h) in stock.iter() {
            if sorted_profile(h) == profile && are_isomorphic(g, h).is_some() {
                return name.clone();
            }
        }
        for (name, h) in &self.unnamed {
            if h.n() == n && sorted_profile(h) == profile && are_isomorphic(g, h).is_some() {
                return name.clone();
            }
        }
        let base = hash_label(g);
        let clashes = self
            .unnamed
            .iter()
            .filter(|(name, _)| name.starts_with(&base))
            .count();
        let name = if clashes == 0 {
            base
        } else {
            format!("{base}-{}", clashes + 1)
        };
        self.unnamed.push((name.clone(), g.clone()));
        name
    }
}

fn sorted_profile(g: &FiniteGroup) -> Vec<usize> {
    let mut p = g.order_profile();
    p.sort_unstable();
    p
}

fn hash_label(g: &FiniteGroup) -> String {
    let n = g.n();
    let center = (0..n)
        .filter(|&x| (0..n).all(|y| g.op(x, y) == g.op(y, x)))
        .count();
    let mut subgroup_sizes: Vec<usize> = g.all_subgroups().iter().map(Vec::len).collect();
    subgroup_sizes.sort_unstable();
    let mut hasher = Sha256::new();
    hasher.update(format!(
        "{n};{:?};{center};{:?}",
        sorted_profile(g),
        subgroup_sizes
    ));
    let digest = hasher.finalize();
    let hex: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
    format!("G{n}-{hex}")
}

fn prime_factors(mut n: usize) -> Vec<(usize, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while n > 1 {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    out
}

fn partitions(n: u32, max: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Invariant factors of every abelian group of order `n`, ascending by divisibility.
fn abelian_invariants(n: usize) -> Vec<Vec<usize>> {
    let mut combos: Vec<Vec<Vec<usize>>> = vec![vec![]];
    for (p, e) in prime_factors(n) {
        let mut next = Vec::new();
        for combo in &combos {
            for part in partitions(e, e) {
                let mut c = combo.clone();
                c.push(part.iter().map(|&k| p.pow(k)).collect());
                next.push(c);
            }
        }
        combos = next;
    }
    combos
        .into_iter()
        .map(|per_prime| {
            let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
            let mut factors: Vec<usize> = (0..len)
                .map(|i| {
                    per_prime
                        .iter()
                        .map(|powers| powers.get(i).copied().unwrap_or(1))
                        .product()
                })
                .collect();
            factors.reverse();
            factors
        })
        .collect()
}

fn product_of_cyclics(factors: &[usize]) -> FiniteGroup {
    factors
        .iter()
        .map(|&m| FiniteGroup::cyclic(m))
        .reduce(|acc, c| FiniteGroup::direct_product(&acc, &c))
        .unwrap_or_else(FiniteGroup::trivial)
}

/// `C_m ⋊ C_k` where the generator of `C_k` acts by multiplication by `r`.
pub fn metacyclic(m: usize, k: usize, r: usize) -> FiniteGroup {
    let mut act = Vec::with_capacity(k);
    let mut mult = 1 % m.max(1);
    for _ in 0..k {
        act.push(Permutation::from_fn(m, |x| (x * mult) % m));
        mult = (mult * r) % m;
    }
    FiniteGroup::semidirect_product(&FiniteGroup::cyclic(m), &FiniteGroup::cyclic(k), &act)
        .expect("r has multiplicative order dividing k")
}

fn multiplicative_order_divides(r: usize, m: usize, k: usize) -> bool {
    let mut x = 1 % m;
    for _ in 0..k {
        x = (x * r) % m;
    }
    x == 1 % m
}

/// `(C2 × C2) ⋊ C3`, the generator of `C3` cycling the three involutions.
fn alternating_4() -> FiniteGroup {
    let klein = product_of_cyclics(&[2, 2]);
    let cycle = Permutation::from_fn(4, |x| if x == 0 { 0 } else { x % 3 + 1 });
    let act = vec![
        Permutation::identity(4),
        cycle.clone(),
        cycle.compose(&cycle),
    ];
    FiniteGroup::semidirect_product(&klein, &FiniteGroup::cyclic(3), &act)
        .expect("cycling the involutions is an action")
}

/// Named groups of order `n`, one per isomorphism class, in a fixed order.
pub fn stock_groups(n: usize) -> Vec<(String, FiniteGroup)> {
    let mut candidates: Vec<(String, FiniteGroup)> = Vec::new();
    if n <= STOCK_LIMIT {
        for factors in abelian_invariants(n) {
            let name = if factors.is_empty() {
                "C1".to_string()
            } else {
                factors
                    .iter()
                    .map(|m| format!("C{m}"))
                    .collect::<Vec<_>>()
                    .join("x")
            };
            candidates.push((name, product_of_cyclics(&factors)));
        }
        if n.is_multiple_of(2) && n >= 6 {
            candidates.push((format!("D{}", n / 2), FiniteGroup::dihedral(n / 2)));
        }
        if n.is_multiple_of(4) && n >= 8 {
            let name = if n == 8 {
                "Q8".to_string()
            } else {
                format!("Dic{}", n / 4)
            };
            candidates.push((name, FiniteGroup::dicyclic(n / 4)));
        }
        if n == 12 {
            candidates.push(("A4".to_string(), alternating_4()));
        }
        for k in 2..n {
            if !n.is_multiple_of(k) || n / k < 3 {
                continue;
            }
            let m = n / k;
            let family: Vec<(usize, FiniteGroup)> = (2..m)
                .filter(|&r| gcd(r, m) == 1 && multiplicative_order_divides(r, m, k))
                .map(|r| (r, metacyclic(m, k, r)))
                .collect();
            let mut distinct: Vec<(usize, FiniteGroup)> = Vec::new();
            for (r, g) in family {
                if distinct
                    .iter()
                    .all(|(_, h)| are_isomorphic(&g, h).is_none())
                {
                    distinct.push((r, g));
                }
            }
            let single = distinct.len() == 1;
            for (r, g) in distinct {
                let name = if single {
                    format!("C{m}:C{k}")
                } else {
                    format!("C{m}:C{k}[{r}]")
                };
                candidates.push((name, g));
            }
        }
    }
    let mut out: Vec<(String, FiniteGroup)> = Vec::new();
    for (name, g) in candidates {
        let profile = sorted_profile(&g);
        if out
            .iter()
            .all(|(_, h)| sorted_profile(h) != profile || are_isomorphic(&g, h).is_none())
        {
            out.push((name, g));
        }
    }
    out
}

/// Whether `n = p·q` for primes `p > q` with `q | p − 1`.
pub fn is_metacyclic_pq_order(p: usize, q: usize) -> bool {
    is_prime(p) && is_prime(q) && p > q && (p - 1).is_multiple_of(q)
}
