//! Tangles, ultrafilters and profiles of separations in finite
//! connectivity systems.
//!
//! A connectivity system is a finite ground set with a symmetric
//! submodular function into the non-negative integers. This crate checks
//! the axiom systems for tangle-like families of separations, searches
//! small systems exhaustively for them, relates them through the
//! complementation dual, and compares tangle orders with exact
//! branch-width.

pub mod cli;
pub mod connectivity;
pub mod corpus;
pub mod duality;
pub mod error;
pub mod io;
pub mod mask;
pub mod search;
pub mod separation;
pub mod structures;

pub use connectivity::{build_system, ConnectivitySystem, Descriptor, VerifyMode};
pub use duality::{
    branch_width, dual_family, verify_branchwidth_duality, verify_theorem, verify_theorems,
    BranchDecomposition, EquivalenceVerdict, Theorem,
};
pub use error::{Error, Result};
pub use mask::SubsetMask;
pub use search::{enumerate_all, find_one, hunt, SearchBudget, SearchStatus};
pub use separation::{enumerate_k_efficient, make_separation, Separation, SeparationFamily};
pub use structures::{check_axiom, check_structure, AxiomId, StructureKind, Variant};
