//! Signatures of G-symmetric products `M^m / G` of closed and punctured
//! orientable surfaces.
//!
//! The value is `Z(G; 0, v, 0, v, ...)` where `Z` is the cycle index of
//! `G ⊂ S_m` and `v = 2 - 2g` (closed) or `v = -2g` (punctured). The
//! [`homoracle`] module recomputes the same numbers from the intersection
//! form on the middle homology of `M^m`, without using cycle indices.

pub mod cli;
pub mod cycleindex;
pub mod cyclepoly;
pub mod exactnum;
pub mod homoracle;
pub mod parallel;
pub mod permgroups;
pub mod sigformulas;

pub use cycleindex::{
    cycle_index_cyclic, cycle_index_enumerated, cycle_index_symmetric, cycle_index_wreath,
    z_sn_alternating_closed_form,
};
pub use cyclepoly::CycleIndexPolynomial;
pub use exactnum::{BigRational, PowerSeries};
pub use parallel::Execution;
pub use permgroups::{CycleType, Permutation, PermutationGroup};
pub use sigformulas::{Surface, SurfaceKind};
