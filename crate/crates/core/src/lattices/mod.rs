//! Finite posets and lattices: subspace lattices `AG(F,K)`, the predicted
//! ideal lattice of `K + XF[[X]]`, and brute-forced ideals of its truncations.

mod ideals;
mod poset;
mod ring;
mod subspace;

pub use ideals::{
    meet_join, node_leq, predicted_ideal_lattice, sublattice_generated, IdealLattice, IdealNode,
    Truncation, SUBLATTICE_CAP,
};
pub use poset::{antichain, chain, lex_product, ordinal_sum, FinitePoset, Isomorphism};
pub use ring::{
    enumerate_ideals, quotient_ring, quotient_ring_bounded, ElementSet, FiniteRing, RingIdeals,
    DEFAULT_RING_BOUND,
};
pub use subspace::{all_subspaces, Subspace};

use std::sync::Arc;

use crate::error::Result;
use crate::fields::ExtensionPair;

/// `AG(F,K)`: nonzero subspaces ordered by inclusion.
pub fn ag_subspaces(ext: &Arc<ExtensionPair>) -> Result<FinitePoset<Subspace>> {
    let e = ext.clone();
    let spaces = all_subspaces(ext)?;
    FinitePoset::new(spaces, move |a, b| b.contains(a, &e).unwrap_or(false))
}
