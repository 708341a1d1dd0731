//! Exact computation of genus-0 Gromov-Witten invariants of projective
//! hypersurfaces.
//!
//! Three families of invariants are computed, all as exact rationals:
//!
//! - descendant invariants of the ambient projective space `P^N`,
//! - relative invariants of a smooth degree-`l` hypersurface `Y` in `P^N`,
//!   with a tangency multiplicity at one marked point,
//! - restricted absolute invariants of `Y` itself (insertions pulled back
//!   from the ambient space).
//!
//! The ambient invariants are reconstructed from the standard genus-0
//! axioms (string, divisor, topological recursion, WDVV associativity).
//! Hypersurface invariants are extracted from relative ones by raising the
//! tangency multiplicity past the contact budget `l*d`; every raise trades
//! a multiplicity for a cotangent-line class or a hyperplane section, plus
//! correction terms supported on comb curves with an internal component
//! inside the hypersurface.
//!
//! Results are memoized under a canonical key grammar and can be persisted
//! to a mergeable plain-text cache ([`cache::CacheStore`]). Independent
//! oracles (Schubert calculus, the classical plane-curve recursion, the
//! quintic mirror series) live in [`oracles`] and back the self-check suite
//! in [`verify`].

pub mod algebra;
pub mod ambient;
pub mod cache;
pub mod engine;
pub mod key;
pub mod oracles;
pub mod rational;
pub mod series;
pub mod verify;

pub use algebra::Geometry;
pub use cache::CacheStore;
pub use engine::Engine;
pub use key::{Insertion, InvariantKey, Kind, Reason};
pub use rational::Rat;

/// Errors shared across the crate.
pub mod error {
    pub use crate::cache::CacheError;
    pub use crate::engine::EngineError;
    pub use crate::key::KeyError;
    pub use crate::oracles::OracleError;
}
