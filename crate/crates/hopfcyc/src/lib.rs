//! Exact invariant cyclic homology of Hopf triples and cotriples.
//!
//! The crate computes, over exact scalar fields (rationals, prime fields,
//! rational functions in `q`), the cyclic homology of the coinvariant chain
//! and cochain modules attached to Hopf (co)triples, together with the
//! certification of every structural identity involved: Hopf algebra axioms,
//! (para)cyclic module identities, matched/comatched pairs in involution,
//! splittings, Morita invariance, smash-product cylindrical modules and
//! their Eilenberg-Zilber comparison and filtration spectral sequence.
//!
//! Everything is exact: no floating point is used anywhere.

pub mod bundle;
pub mod cli;
pub mod cotriple;
pub mod cyclic;
pub mod error;
pub mod homology;
pub mod hopf;
pub mod module;
pub mod oracle;
pub mod presentation;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod smash;
pub mod space;
pub mod triple;

pub use error::{Error, Result};
pub use matrix::{SparseMatrix, SparseVec};
pub use scalar::{ExactScalar, Field};
pub use space::IndexedSpace;
