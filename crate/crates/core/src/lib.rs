//! Hessenberg Schubert cells in the flag variety: Bruhat and h-Bruhat order,
//! the GKM graphs Γ_{w,h}, associated patterns, and exhaustive checks of the
//! regularity criteria for small n.

pub mod error;
pub mod gkm;
pub mod hessenberg;
pub mod order;
pub mod patterns;
pub mod perm;
pub mod table;
pub mod verify;
pub mod wellorg;

pub use error::{Error, Result};
pub use gkm::{
    edge_set, fixed_points, gamma_h_neighbors, induced_subgraph, is_regular, isomorphism_check,
    phi, EdgeSet, GkmGraph, InducedSubgraph, PhiMap, Regularity,
};
pub use hessenberg::{
    catalan, corresponding_generator, ell_h, enumerate_hessenberg, generators,
    incomparability_graph, is_generator, HessenbergFunction,
};
pub use order::{
    bruhat_compare_positions, bruhat_interval, bruhat_leq, check_chain_property, h_bruhat_leq,
    h_interval, saturated_chain, BruhatInterval,
};
pub use patterns::{avoids_all, find_pattern, AssociatedPatternId, PatternSet, PatternWitness};
pub use perm::{Permutation, Transposition};
