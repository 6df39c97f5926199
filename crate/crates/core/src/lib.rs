//! Thompson's groups F ⊂ T ⊂ V as groups of fractions of binary forests,
//! with exact evaluation of representation coefficients built from forest
//! functors.
//!
//! Everything here is exact: group elements are canonical tree pair
//! diagrams, scalars are big rationals or polynomials in `α` with
//! `β = √(1 − α²)` adjoined symbolically.

pub mod dyadic;
pub mod element;
pub mod error;
pub mod families;
pub mod gram;
pub mod haagerup;
pub mod kazhdan;
pub mod oracles;
pub mod partition;
pub mod perm;
pub mod ring;
pub mod symmetric;
pub mod tree;
pub mod words;

pub use dyadic::Dyadic;
pub use element::{Class, TreePair, VElement};
pub use error::{Error, Result};
pub use perm::Perm;
pub use ring::{Poly, RingElem};
pub use symmetric::SymmetricForest;
pub use tree::{Forest, SubrootedTree, Tree};
pub use words::{Word, WordTuple};

/// Size limits for enumeration-heavy operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest leaf count for exhaustive tree and forest enumeration.
    pub max_leaves: usize,
    /// Largest `m` for the Kazhdan vectors `ζ_m`.
    pub max_zeta_index: u32,
    /// Largest inflation level `n` for `k_n` and friends.
    pub max_inflation_level: u32,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_leaves: 12,
            max_zeta_index: 3,
            max_inflation_level: 6,
        }
    }
}
