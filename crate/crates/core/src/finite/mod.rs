//! Finite quotients `Sp(2g, Z/m)`: reduction, enumeration by breadth-first
//! closure, normal closures and their indices.
//!
//! Nothing here proves a statement about `Mod_g`; the numbers produced are
//! finite-quotient evidence and are labelled as such in reports.

mod closure;
mod evidence;
mod modmat;
mod table;

pub use closure::{
    congruence_kernel_member, is_prime, normal_closure, normal_closure_in, sp_order, NormalClosure,
};
pub use evidence::{
    ambient_generators, closure_evidence_suite, closure_for_seed, seed_element, ClosureRecord,
    EvidenceReport, SeedKind,
};
pub use modmat::{reduce_mod, ModMatrix};
pub use table::{enumerate_group, GroupTable};

/// Default bound on the number of elements any single table may hold.
pub const DEFAULT_SIZE_CAP: usize = 4_000_000;
