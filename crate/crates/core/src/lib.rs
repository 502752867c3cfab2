//! Homology-level shadows of mapping class group arguments.
//!
//! Dehn twists act on the first homology of a closed genus-`g` surface as
//! symplectic transvections. This crate builds that action exactly over the
//! integers and uses it, together with finite quotients `Sp(2g, Z/m)`, a
//! census of cyclic surface actions and abelianizations of small
//! presentations, to replay the proof trees of the triviality theorems for
//! homomorphisms `Mod_g -> Mod_h` with `g > h` as checkable certificates.
//!
//! The crate is `no_std` and only needs `alloc`. The `parallel` feature pulls
//! in `rayon` (and therefore `std`) to shard breadth-first frontiers during
//! finite group enumeration; results are identical with or without it.

#![cfg_attr(not(feature = "parallel"), no_std)]

extern crate alloc;

pub mod abelian;
pub mod census;
pub mod certify;
pub mod curves;
pub mod error;
pub mod finite;
pub mod symplectic;

pub use error::{Error, Result};
