//! Catalogs of all skew braces on a fixed circ group: an exhaustive search
//! oracle, the constructive degree-`pq` catalog, type counts and
//! cross-checks.

mod dot_search;
mod gamma_search;
pub mod pq;
pub mod types;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::brace::{IdealClass, SkewBrace};
use crate::group::FiniteGroup;
use crate::sdp::is_internal_sdp;

pub use pq::{pq_catalog, PqKind};
pub use types::TypeLabeler;

/// Order guard applied when the caller does not choose one.
pub const DEFAULT_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("group order {n} exceeds the enumeration limit {limit}")]
    OrderGuardExceeded { n: usize, limit: usize },
    #[error("bad primes p = {p}, q = {q}: {reason}")]
    BadPrimes { p: usize, q: usize, reason: String },
    #[error("catalogs have different circ tables")]
    CircMismatch,
    #[error("expected {expected:?} braces of cyclic and metacyclic dot type, found {found:?}")]
    CountMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("invalid catalog: {0}")]
    InvalidCatalog(String),
}

/// How a catalog entry was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Provenance {
    Oracle,
    /// Semidirect product over the `complement`-th complement (sorted) with
    /// the `theta`-th admissible θ (sorted).
    Sdp {
        complement: usize,
        theta: usize,
    },
    /// Opposite of the entry at this catalog index.
    OppositeOf(usize),
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Oracle => write!(f, "oracle"),
            Provenance::Sdp { complement, theta } => {
                write!(f, "sdp(B={complement},theta={theta})")
            }
            Provenance::OppositeOf(k) => write!(f, "opposite-of({k})"),
        }
    }
}

/// Provenance before catalog indices are known.
#[derive(Debug, Clone)]
pub(crate) enum Origin {
    Oracle,
    Sdp { complement: usize, theta: usize },
    OppositeOf(SkewBrace),
}

/// Counts of left ideals, strong left ideals and ideals of one brace.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealSummary {
    pub circ_subgroups: usize,
    pub left_ideals: usize,
    pub strong_left_ideals: usize,
    pub ideals: usize,
}

impl IdealSummary {
    pub fn of(brace: &SkewBrace) -> Self {
        let classes = brace.classify_subgroups();
        IdealSummary {
            circ_subgroups: classes.len(),
            left_ideals: classes.iter().filter(|c| c.is_left_ideal).count(),
            strong_left_ideals: classes.iter().filter(|c| c.is_strong_left_ideal).count(),
            ideals: classes.iter().filter(|c| c.is_ideal).count(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    pub brace: SkewBrace,
    pub type_label: String,
    pub provenance: Provenance,
    pub ideals: IdealSummary,
}

/// Deduplicated skew braces sharing one circ table, sorted by dot table.
#[derive(Debug, Clone)]
pub struct BraceCatalog {
    circ: FiniteGroup,
    entries: Vec<CatalogEntry>,
}

impl BraceCatalog {
    /// Builds a catalog from braces on `circ`, checking the catalog
    /// invariants. The first origin given for a dot table wins.
    pub(crate) fn build(
        circ: &FiniteGroup,
        items: Vec<(SkewBrace, Origin)>,
    ) -> Result<Self, EnumerateError> {
        let mut by_dot: BTreeMap<Vec<usize>, (SkewBrace, Origin)> = BTreeMap::new();
        for (brace, origin) in items {
            if brace.circ() != circ {
                return Err(EnumerateError::CircMismatch);
            }
            by_dot
                .entry(brace.dot().flat().to_vec())
                .or_insert((brace, origin));
        }
        for (brace, _) in by_dot.values() {
            if !by_dot.contains_key(brace.opposite().dot().flat()) {
                return Err(EnumerateError::InvalidCatalog(
                    "not closed under opposite".to_string(),
                ));
            }
        }
        let index: HashMap<Vec<usize>, usize> = by_dot
            .keys()
            .enumerate()
            .map(|(i, k)| (k.clone(), i))
            .collect();
        let mut labeler = TypeLabeler::new();
        let entries = by_dot
            .into_values()
            .map(|(brace, origin)| {
                let provenance = match origin {
                    Origin::Oracle => Provenance::Oracle,
                    Origin::Sdp { complement, theta } => Provenance::Sdp { complement, theta },
                    Origin::OppositeOf(src) => {
                        let k = *index.get(src.dot().flat()).ok_or_else(|| {
                            EnumerateError::InvalidCatalog("opposite source missing".to_string())
                        })?;
                        Provenance::OppositeOf(k)
                    }
                };
                Ok(CatalogEntry {
                    type_label: labeler.label(brace.dot()),
                    ideals: IdealSummary::of(&brace),
                    provenance,
                    brace,
                })
            })
            .collect::<Result<Vec<_>, EnumerateError>>()?;
        Ok(BraceCatalog {
            circ: circ.clone(),
            entries,
        })
    }

    pub fn circ(&self) -> &FiniteGroup {
        &self.circ
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn braces(&self) -> impl Iterator<Item = &SkewBrace> {
        self.entries.iter().map(|e| &e.brace)
    }

    /// Sorted dot tables of all entries.
    pub fn dot_tables(&self) -> Vec<Vec<Vec<usize>>> {
        self.braces().map(|b| b.dot().rows()).collect()
    }

    /// The catalog together with the opposites of its entries.
    pub fn opposite_closure(&self) -> BraceCatalog {
        let mut items: Vec<(SkewBrace, Origin)> = self
            .entries
            .iter()
            .map(|e| (e.brace.clone(), origin_of(e, &self.entries)))
            .collect();
        for e in &self.entries {
            items.push((e.brace.opposite(), Origin::OppositeOf(e.brace.clone())));
        }
        BraceCatalog::build(&self.circ, items).expect("a valid catalog stays valid")
    }
}

fn origin_of(entry: &CatalogEntry, entries: &[CatalogEntry]) -> Origin {
    match &entry.provenance {
        Provenance::Oracle => Origin::Oracle,
        Provenance::Sdp { complement, theta } => Origin::Sdp {
            complement: *complement,
            theta: *theta,
        },
        Provenance::OppositeOf(k) => Origin::OppositeOf(entries[*k].brace.clone()),
    }
}

/// Every skew brace with circ group `circ`, found by the γ-search.
///
/// `limit` defaults to [`DEFAULT_LIMIT`]. `seed` only changes the search
/// order; the catalog is the same for every seed.
pub fn enumerate_braces(
    circ: &FiniteGroup,
    limit: Option<usize>,
    seed: Option<u64>,
) -> Result<BraceCatalog, EnumerateError> {
    let limit = limit.unwrap_or(DEFAULT_LIMIT);
    if circ.n() > limit {
        return Err(EnumerateError::OrderGuardExceeded { n: circ.n(), limit });
    }
    let items = gamma_search::search(circ, seed)
        .into_iter()
        .map(|b| (b, Origin::Oracle))
        .collect();
    BraceCatalog::build(circ, items)
}

/// Every skew brace with circ group `circ`, found by searching dot tables
/// directly. Independent of [`enumerate_braces`] and meant for cross-checks.
pub fn enumerate_braces_by_dot(
    circ: &FiniteGroup,
    limit: Option<usize>,
) -> Result<BraceCatalog, EnumerateError> {
    let limit = limit.unwrap_or(DEFAULT_LIMIT);
    if circ.n() > limit {
        return Err(EnumerateError::OrderGuardExceeded { n: circ.n(), limit });
    }
    let items = dot_search::search(circ)
        .into_iter()
        .map(|b| (b, Origin::Oracle))
        .collect();
    BraceCatalog::build(circ, items)
}

/// Number of entries per dot-type label.
pub fn count_by_type(cat: &BraceCatalog) -> BTreeMap<String, usize> {
    let mut counts = BTreeMap::new();
    for e in cat.entries() {
        *counts.entry(e.type_label.clone()).or_insert(0) += 1;
    }
    counts
}

/// Number of entries per provenance kind (`oracle`, `sdp`, `opposite`).
pub fn count_by_provenance(cat: &BraceCatalog) -> BTreeMap<&'static str, usize> {
    let mut counts = BTreeMap::new();
    for e in cat.entries() {
        let key = match e.provenance {
            Provenance::Oracle => "oracle",
            Provenance::Sdp { .. } => "sdp",
            Provenance::OppositeOf(_) => "opposite",
        };
        *counts.entry(key).or_insert(0) += 1;
    }
    counts
}

/// Dot tables present in exactly one of two catalogs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogDiff {
    pub only_in_first: Vec<Vec<Vec<usize>>>,
    pub only_in_second: Vec<Vec<Vec<usize>>>,
}

impl CatalogDiff {
    pub fn is_empty(&self) -> bool {
        self.only_in_first.is_empty() && self.only_in_second.is_empty()
    }
}

/// Compares two catalogs on the same circ table as sets of dot tables.
pub fn cross_check(a: &BraceCatalog, b: &BraceCatalog) -> Result<CatalogDiff, EnumerateError> {
    if a.circ() != b.circ() {
        return Err(EnumerateError::CircMismatch);
    }
    let (ta, tb) = (a.dot_tables(), b.dot_tables());
    Ok(CatalogDiff {
        only_in_first: ta.iter().filter(|t| !tb.contains(t)).cloned().collect(),
        only_in_second: tb.iter().filter(|t| !ta.contains(t)).cloned().collect(),
    })
}

/// How one catalog entry relates to a candidate factorization `G = A ∘ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realization {
    pub index: usize,
    pub a: IdealClass,
    pub b: IdealClass,
    /// `A` is an ideal, `B` a left ideal, and `G` is their internal
    /// semidirect product in both operations.
    pub realized: bool,
}

/// For each entry, the ideal classification of `a` and `b` and whether the
/// entry is the internal semidirect product `A ⋊ B`.
pub fn realization_report(cat: &BraceCatalog, a: &[usize], b: &[usize]) -> Vec<Realization> {
    cat.entries()
        .iter()
        .enumerate()
        .map(|(index, e)| Realization {
            index,
            a: e.brace.classify_subset(a),
            b: e.brace.classify_subset(b),
            realized: is_internal_sdp(&e.brace, a, b),
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stock::groups_up_to_8;

    #[test]
    fn prime_orders_up_to_3_have_only_the_trivial_brace() {
        for n in 1..=3 {
            let g = FiniteGroup::cyclic(n);
            let cat = enumerate_braces(&g, None, None).unwrap();
            assert_eq!(cat.len(), 1);
            assert!(cat.entries()[0].brace.is_trivial());
        }
    }

    /// Brute force over every Latin square with identity 0 at order ≤ 4.
    fn brute_force_count(circ: &FiniteGroup) -> usize {
        let n = circ.n();
        let mut count = 0;
        let mut table = vec![usize::MAX; n * n];
        for x in 0..n {
            table[x] = x;
            table[x * n] = x;
        }
        fn go(
            circ: &FiniteGroup,
            n: usize,
            table: &mut Vec<usize>,
            cell: usize,
            count: &mut usize,
        ) {
            if cell == n * n {
                if let Ok(dot) = FiniteGroup::from_flat(n, table.clone()) {
                    if SkewBrace::new(dot, circ.clone()).is_ok() {
                        *count += 1;
                    }
                }
                return;
            }
            let (x, y) = (cell / n, cell % n);
            if table[cell] != usize::MAX {
                return go(circ, n, table, cell + 1, count);
            }
            for v in 0..n {
                let row_ok = (0..y).all(|j| table[x * n + j] != v);
                let col_ok = (0..x).all(|i| table[i * n + y] != v);
                if row_ok && col_ok {
                    table[cell] = v;
                    go(circ, n, table, cell + 1, count);
                    table[cell] = usize::MAX;
                }
            }
        }
        go(circ, n, &mut table, 0, &mut count);
        count
    }

    #[test]
    fn gamma_search_matches_latin_square_brute_force_up_to_order_4() {
        for (_, g) in groups_up_to_8().into_iter().filter(|(_, g)| g.n() <= 4) {
            let cat = enumerate_braces(&g, None, None).unwrap();
            assert_eq!(cat.len(), brute_force_count(&g));
        }
    }

    #[test]
    fn c4_oracles_agree() {
        let g = FiniteGroup::cyclic(4);
        let a = enumerate_braces(&g, None, None).unwrap();
        let b = enumerate_braces_by_dot(&g, None).unwrap();
        assert!(cross_check(&a, &b).unwrap().is_empty());
        assert_eq!(a.len(), brute_force_count(&g));
    }

    #[test]
    fn order_guard_is_enforced() {
        let g = FiniteGroup::cyclic(16);
        assert_eq!(
            enumerate_braces(&g, None, None).unwrap_err(),
            EnumerateError::OrderGuardExceeded { n: 16, limit: 12 }
        );
    }

    #[test]
    fn six_element_catalogs_have_expected_sizes_and_types() {
        let c6 = enumerate_braces(&FiniteGroup::cyclic(6), None, None).unwrap();
        assert_eq!(c6.len(), 3);
        let s3 = enumerate_braces(&FiniteGroup::dihedral(3), None, None).unwrap();
        assert_eq!(s3.len(), 5);
        let counts = count_by_type(&s3);
        assert_eq!(counts.get("C6"), Some(&3));
        assert_eq!(counts.get("D3"), Some(&2));
    }

    #[test]
    fn seed_does_not_change_the_catalog() {
        let g = FiniteGroup::dihedral(3);
        let a = enumerate_braces(&g, None, None).unwrap();
        let b = enumerate_braces(&g, None, Some(7)).unwrap();
        assert_eq!(a.dot_tables(), b.dot_tables());
    }

    #[test]
    fn catalog_equals_its_opposite_closure() {
        let g = FiniteGroup::dihedral(4);
        let cat = enumerate_braces(&g, None, None).unwrap();
        assert!(cross_check(&cat, &cat.opposite_closure())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn cross_check_rejects_different_circ() {
        let a = enumerate_braces(&FiniteGroup::cyclic(6), None, None).unwrap();
        let b = enumerate_braces(&FiniteGroup::dihedral(3), None, None).unwrap();
        assert_eq!(
            cross_check(&a, &b).unwrap_err(),
            EnumerateError::CircMismatch
        );
    }
}
