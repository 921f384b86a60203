//! The Higman–Thompson groups `V_n` and their Cuntz–Toeplitz extensions
//! `Γ_n`, as canonical prefix-replacement tables.

mod gamma;
mod perm;
mod random;
mod rows;
mod vn;

use std::fmt;
use std::hash::Hash;

pub use gamma::{
    abelianize_gamma, classify_normal_closure, factor_commuting, fixed_structure, noncommuting_transposition,
    stabilizer_transposition,
    Closure, FixedStructure, GammaTable,
};
pub use perm::FinitePermutation;
pub use random::{random_element, random_permutation, random_vn};
pub use vn::{sign_vn, VnTable};

use crate::error::Result;
use crate::words::{BasicSet, BoundaryPoint, SimpleFunction, Space};

/// What the crossed-product layer needs from a group of tables.
pub trait Table: Clone + Eq + Ord + Hash + fmt::Display + fmt::Debug {
    /// The space the group acts on.
    const SPACE: Space;

    fn identity(n: u8) -> Self;
    fn n(&self) -> u8;
    fn is_identity(&self) -> bool;
    /// `self ∘ other` (apply `other` first).
    fn compose(&self, other: &Self) -> Self;
    fn inverse(&self) -> Self;
    /// `f ∘ self^{-1}`.
    fn act_on_function(&self, f: &SimpleFunction) -> Result<SimpleFunction>;
    /// Range-side pieces with their cocycle value `|dst| − |src|`.
    fn range_pieces(&self) -> Vec<(BasicSet, i32)>;
    fn act_point(&self, x: &BoundaryPoint) -> Result<BoundaryPoint>;
    fn parse_table(src: &str) -> Result<Self>;
}

/// The commutator `g h g^{-1} h^{-1}`.
pub fn commutator<G: Table>(g: &G, h: &G) -> G {
    g.compose(h).compose(&g.inverse()).compose(&h.inverse())
}

/// `g^{-1} h g`.
pub fn conjugate<G: Table>(h: &G, g: &G) -> G {
    g.inverse().compose(h).compose(g)
}
