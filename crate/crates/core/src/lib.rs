//! Finite skew braces: validation, γ-functions, ideals, semidirect products,
//! regular-subgroup correspondence, induced structures and enumeration.

pub mod brace;
pub mod enumerate;
pub mod group;
pub mod hgs;
pub mod hom;
pub mod io;
pub mod perm;
pub mod sdp;
pub mod stock;

pub use brace::{brace_isomorphic, BraceError, IdealClass, SkewBrace};
pub use enumerate::{
    count_by_type, cross_check, enumerate_braces, pq_catalog, realization_report, BraceCatalog,
    EnumerateError, PqKind, Provenance,
};
pub use group::{FiniteGroup, GroupError};
pub use hom::{are_isomorphic, automorphisms, homomorphisms, GroupHom, PermHom};
pub use perm::{PermError, PermGroup, Permutation};
pub use sdp::{AdmissibilityFailure, SdpDecomposition, SdpError, SdpSpec};
