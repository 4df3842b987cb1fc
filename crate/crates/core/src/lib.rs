//! Finite combinatorial algebra underlying the `varlat` toolkit: explicit
//! finite lattices with modular/cancellable element predicates, permutation
//! groups and subgroup lattices of small symmetric groups, semigroup words
//! and identities with a bounded equational derivation search, finitely
//! presented nilpotent varieties with their relatively free objects, and
//! Cayley-table semigroup models used as independent oracles.
//!
//! The crate is `no_std` (with `alloc`) and fully deterministic: every
//! enumeration is returned in a canonical order, so outputs are stable
//! across runs and platforms.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod derive;
pub mod lattice;
pub mod model;
pub mod nil;
pub mod parse;
pub mod perm;
pub mod subgroups;
pub mod words;

pub use derive::{derives, validate_chain, Derivation, DerivationChain, DeriveBounds};
pub use lattice::{FiniteLattice, LatticeError, SpecialKind, WitnessPair};
pub use model::{FiniteSemigroup, ModelError};
pub use nil::{FreeNilObject, NilError, NilPresentation, NilVariety, VarietyReport};
pub use perm::{NamedSubgroup, PermError, PermGroup, Permutation};
pub use subgroups::SubgroupLatticeResult;
pub use words::{Identity, IdentityBasis, IdentityRhs, Word, WordError};
