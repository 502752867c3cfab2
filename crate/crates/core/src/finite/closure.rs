use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Pow};

use super::modmat::{check_modulus, reduce_mod, ModMatrix};
use super::table::{enumerate_group, GroupTable};
use crate::symplectic::SympMatrix;
use crate::{Error, Result};

/// Normal closure of a seed inside an enumerated ambient group.
pub struct NormalClosure {
    pub subgroup: GroupTable,
    pub ambient_size: usize,
    pub index: usize,
    /// Conjugates that had to be added as generators, seed included.
    pub normal_generators: usize,
}

/// Enumerates the ambient group, then closes `seed` under conjugation.
pub fn normal_closure(
    ambient_gens: &[ModMatrix],
    seed: &ModMatrix,
    cap: usize,
) -> Result<NormalClosure> {
    let ambient = enumerate_group(ambient_gens, cap)?;
    normal_closure_in(&ambient, seed, cap)
}

/// Closes `seed` under conjugation by the generators of `ambient`.
///
/// Each new conjugate `s x s^-1` not yet in the subgroup is added as a
/// generator and later conjugated itself; the loop stops once every
/// generator's conjugates lie in the subgroup.
pub fn normal_closure_in(
    ambient: &GroupTable,
    seed: &ModMatrix,
    cap: usize,
) -> Result<NormalClosure> {
    if !ambient.contains(seed) {
        return Err(Error::Hypothesis(
            "seed is not an element of the ambient group".into(),
        ));
    }
    let conj: Vec<(ModMatrix, ModMatrix)> = ambient
        .generators()
        .iter()
        .map(|s| (s.clone(), s.inverse()))
        .collect();
    let mut sub = GroupTable::trivial(ambient.genus(), u64::from(ambient.modulus()))?;
    let mut queue = alloc::vec![seed.clone()];
    sub.add_generator(seed, cap)?;
    let mut next = 0;
    // A normal subgroup as large as the ambient group is the whole group.
    while next < queue.len() && sub.len() < ambient.len() {
        let x = queue[next].clone();
        next += 1;
        for (s, si) in &conj {
            let y = s.mul(&x)?.mul(si)?;
            if !sub.contains(&y) {
                sub.add_generator(&y, cap)?;
                queue.push(y);
            }
        }
    }
    let ambient_size = ambient.len();
    if !ambient_size.is_multiple_of(sub.len()) {
        return Err(Error::CheckFailed(alloc::format!(
            "closure of size {} does not divide ambient size {}",
            sub.len(),
            ambient_size
        )));
    }
    Ok(NormalClosure {
        index: ambient_size / sub.len(),
        ambient_size,
        normal_generators: queue.len(),
        subgroup: sub,
    })
}

/// Whether `m` lies in the level-`modulus` congruence kernel.
pub fn congruence_kernel_member(m: &SympMatrix, modulus: u64) -> Result<bool> {
    Ok(reduce_mod(m, modulus)?.is_identity())
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// `|Sp(2g, F_p)| = p^(g^2) * prod_{i=1..g} (p^(2i) - 1)`.
pub fn sp_order(g: usize, p: u64) -> Result<BigUint> {
    check_modulus(p)?;
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let q = BigUint::from(p);
    let mut order = Pow::pow(&q, (g * g) as u32);
    for i in 1..=g {
        order *= Pow::pow(&q, (2 * i) as u32) - BigUint::one();
    }
    Ok(order)
}
