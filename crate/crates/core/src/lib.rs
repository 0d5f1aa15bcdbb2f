//! Finite-scale group cohomology.
//!
//! Groups are integer-indexed Cayley tables with element `0` as the identity.
//! On top of them this crate builds actions by automorphisms, nonabelian
//! `H¹` as an orbit space of crossed homomorphisms, torsors, abelian `Hⁿ`
//! from inhomogeneous cochains, inverse systems over finite directed posets
//! and the comparison maps `H(G, lim A_r) → lim H(G, A_r)`.
//!
//! Every claim is checked exhaustively, so sizes are capped: groups by
//! [`DEFAULT_ORDER_CAP`] and enumerations by a [`Budget`] of candidates.

#![no_std]

extern crate alloc;

pub mod action;
pub mod cochain;
mod error;
pub mod filtration;
pub mod group;
pub mod h1;
pub mod limit;
pub mod torsor;

pub use action::GAction;
pub use cochain::{Cochain, CohomologyGroup};
pub use error::{Error, Result};
pub use filtration::Filtration;
pub use group::{FiniteGroup, GroupHom, Subgroup};
pub use h1::{Cocycle1, H1Set};
pub use limit::{DirectedPoset, InverseSystem, LimitGroup};
pub use torsor::Torsor;

/// Element of a [`FiniteGroup`], given as its row index in the Cayley table.
pub type Elem = usize;

/// Largest group order accepted by the constructors and validators.
///
/// 120 so that `S₅` can be built; associativity at that order is 1.7M lookups.
pub const DEFAULT_ORDER_CAP: usize = 120;

/// Upper bound on the number of candidates an enumeration may visit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT: Budget = Budget(10_000_000);

    /// Fails with [`Error::BudgetExceeded`] when `estimate` is over budget.
    pub fn check(self, estimate: u128) -> Result<()> {
        if estimate > self.0 as u128 {
            Err(Error::BudgetExceeded {
                estimate,
                budget: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::DEFAULT
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_estimate(base: usize, exp: usize) -> u128 {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.saturating_mul(base as u128);
    }
    acc
}
