//! Finite state property spaces: actuality relations, the induced orders,
//! property lattices, and checkers for the lattice axioms of quantum
//! structures.
//!
//! A space is stored as a boolean matrix `ξ[p][a]`; κ is read from the same
//! matrix, so the duality `a ∈ ξ(p) ⇔ p ∈ κ(a)` cannot be broken.

mod axioms;
mod bits;
mod coproduct;
mod document;
mod lattice;
mod order;
mod ortho;
mod space;
mod spin;

pub use axioms::{
    axiom_report, check_atomistic, check_axiom1, completeness_report, covering_counterexample, property_state_maps,
    AxiomReport, CompletenessReport, Covering, PropertyStateMaps, Verdict, Witness,
};
pub use coproduct::{coproduct, Coproduct};
pub use document::SpsDocument;
pub use lattice::FiniteLattice;
pub use order::{atoms_of, quotient_to_poset, Preorder, Quotient};
pub use ortho::{
    check_irreducible, check_weak_modularity, longest_orthogonal_chain, ortho_search, ortho_search_with_cap,
    OrthoMap, OrthoSearch, ORTHO_SEARCH_CAP,
};
pub use space::{FiniteStatePropertySpace, PropertyLattice};
pub use spin::{build_spin_sps, spin_ortho};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SpaError {
    #[error("shape error: {0}")]
    Shape(String),
    #[error("relation is not a partial order")]
    NotPartialOrder,
    #[error("not a lattice: {missing} of {a} and {b} does not exist")]
    NotALattice { a: String, b: String, missing: String },
    #[error("duplicate label: {0}")]
    DuplicateLabel(String),
    #[error("unknown label: {0}")]
    UnknownLabel(String),
    #[error("size {size} exceeds the cap of {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("directions {0} and {1} coincide")]
    DuplicateDirection(usize, usize),
    #[error("interior point {0} lies on the surface")]
    InteriorOnSurface(usize),
    #[error("direction {0} has no antipode in the set")]
    NotClosedUnderNegation(usize),
    #[error("invalid orthocomplementation: {0}")]
    InvalidOrtho(String),
    #[error("malformed document: {0}")]
    Document(String),
}
