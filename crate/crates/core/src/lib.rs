//! Construction, certification and exhaustive search of `(a,b)`-regular
//! sets in Cayley graphs of finite groups.
//!
//! A nonempty proper subset `C` of the vertices of a graph is an
//! `(a,b)`-regular set when every vertex of `C` has exactly `a` neighbours
//! in `C` and every other vertex has exactly `b`. Perfect codes are the
//! `(0,1)`-regular sets and total perfect codes the `(1,1)`-regular sets.
//!
//! The crate is organised bottom-up:
//! - [`group`]: finite groups as multiplication tables, subgroups, cosets
//! - [`cayley`]: validated connection sets and Cayley graphs
//! - [`regular`]: neighbourhood and group-ring certifiers, the involution condition
//! - [`construction`]: inverse-closed transversals and the block construction
//!   turning a perfect-code subgroup into an `(a,b)`-regular set
//! - [`equitable`]: quotient matrices and exact eigenvalue checks
//! - [`search`]: brute-force oracles
//! - [`cli`]: the `regsets` command line

pub mod cayley;
pub mod cli;
pub mod construction;
pub mod equitable;
pub mod error;
pub mod group;
pub mod regular;
pub mod search;

pub use cayley::{CayleyGraph, ConnectionSet};
pub use error::{Error, Result};
pub use group::{build_group, CosetPartition, ElementSet, GroupTable};
pub use regular::{Certificate, ElementMultiset, Regularity, Witness};
