//! Named curve configurations realized as homology classes and the mapping
//! classes built from them: the chain `a0, a1, ..., a_{2g+1}` and its element
//! `delta = t1 t2 ... t_{2g}`, handle rotations, permutations of hyperbolic
//! pairs, `gamma = t1 t2 t3 t4` in genus 4, and pants-type twist systems.

mod chain;
mod perm;
mod system;

pub use chain::{
    chain, chain_action_check, chain_pattern, chain_with_box, delta_order_check, gamma4,
    hyperelliptic_check, hyperelliptic_torelli_shadow, ChainAction, ChainData, DEFAULT_SEARCH_BOX,
};
pub use perm::{block_permutation, perm_embedding, rotation_r1, rotation_r2, Permutation};
pub use system::{pants_system, twist_product, twist_rank, CurveSystem};
