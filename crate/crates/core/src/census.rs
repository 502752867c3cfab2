//! Cyclic torsion in `Mod_g` via branch data of cyclic actions on surfaces.
//!
//! An order-`n` periodic mapping class is realised by a `Z/n` action with
//! quotient genus `h` and cone points of orders `m_1..m_r`. Such an action
//! exists iff the branch datum passes Harvey's conditions:
//!
//! 1. Riemann-Hurwitz: `2g - 2 = n(2h - 2) + sum (n - n/m_i)`;
//! 2. with `M = lcm(m_i)`, dropping any one `m_i` leaves the lcm at `M`;
//! 3. `M | n`, and `M = n` when `h = 0`;
//! 4. `r != 1`, and `r >= 3` when `h = 0`;
//! 5. if `M` is even, the number of `m_i` divisible by the full power of 2
//!    in `M` is even.
//!
//! Everything is integer arithmetic: Riemann-Hurwitz is kept multiplied
//! through by `n`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use num_integer::Integer;

use crate::finite::is_prime;

/// Branch data of a cyclic action: order, quotient genus, cone orders.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchDatum {
    pub n: u64,
    pub h: u64,
    pub indices: Vec<u64>,
}

impl BranchDatum {
    pub fn new(n: u64, h: u64, indices: &[u64]) -> Self {
        BranchDatum {
            n,
            h,
            indices: indices.to_vec(),
        }
    }

    fn lcm(&self) -> u64 {
        self.indices.iter().fold(1, |a, &m| a.lcm(&m))
    }
}

impl fmt::Display for BranchDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={} h={} [", self.n, self.h)?;
        for (i, m) in self.indices.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{m}")?;
        }
        f.write_str("]")
    }
}

/// `2g - 2 - n(2h - 2)`, the amount the cone points must contribute (times
/// `n`). `None` if negative.
fn ramification_budget(g: u64, n: u64, h: u64) -> Option<u64> {
    let lhs = 2 * g as i128 - 2;
    let t = lhs - n as i128 * (2 * h as i128 - 2);
    u64::try_from(t).ok()
}

fn riemann_hurwitz(g: u64, d: &BranchDatum) -> bool {
    if d.n == 0 || d.indices.iter().any(|&m| m < 2 || !d.n.is_multiple_of(m)) {
        return false;
    }
    match ramification_budget(g, d.n, d.h) {
        Some(t) => d.indices.iter().map(|&m| d.n - d.n / m).sum::<u64>() == t,
        None => false,
    }
}

/// Harvey's conditions 2-5, assuming every `m_i` divides `n`.
fn harvey(d: &BranchDatum) -> bool {
    let r = d.indices.len();
    let big_m = d.lcm();
    let lcm_ok = r < 2
        || (0..r).all(|skip| {
            d.indices
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .fold(1u64, |a, (_, &m)| a.lcm(&m))
                == big_m
        });
    let divides_ok = d.n.is_multiple_of(big_m) && (d.h > 0 || big_m == d.n);
    let count_ok = r != 1 && (d.h > 0 || r >= 3);
    let parity_ok = big_m % 2 == 1 || {
        let two_part = 1u64 << big_m.trailing_zeros();
        d.indices.iter().filter(|&&m| m % two_part == 0).count() % 2 == 0
    };
    lcm_ok && divides_ok && count_ok && parity_ok
}

/// Whether `d` is the branch datum of a `Z/n` action on a closed genus-`g`
/// surface (`g >= 2`; returns false otherwise).
pub fn admissible(g: u64, d: &BranchDatum) -> bool {
    g >= 2 && d.n >= 2 && riemann_hurwitz(g, d) && harvey(d)
}

/// Limits on the branch-data search. `None` means the bound derived from
/// Riemann-Hurwitz.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchBounds {
    pub max_h: Option<u64>,
    pub max_r: Option<usize>,
}

/// Hurwitz's bound `84(g-1)` on any automorphism group, used only as the
/// range of orders to search.
pub fn hurwitz_bound(g: u64) -> u64 {
    84 * g.saturating_sub(1)
}

/// A witness that `Mod_g` has an element of order `n`, if one exists.
pub fn cyclic_witness(g: u64, n: u64) -> Option<BranchDatum> {
    cyclic_witness_within(g, n, SearchBounds::default())
}

pub fn cyclic_order_exists(g: u64, n: u64) -> bool {
    cyclic_witness(g, n).is_some()
}

/// Search over `h` ascending, then cone-order multisets listed with
/// non-increasing entries.
pub fn cyclic_witness_within(g: u64, n: u64, bounds: SearchBounds) -> Option<BranchDatum> {
    if g < 2 || n < 2 {
        return None;
    }
    let divisors: Vec<u64> = (2..=n).rev().filter(|m| n.is_multiple_of(*m)).collect();
    let max_h = bounds.max_h.unwrap_or(g).min(g);
    for h in 0..=max_h {
        let Some(t) = ramification_budget(g, n, h) else {
            continue;
        };
        // Each cone point contributes at least n/2.
        let derived = (2 * t / n) as usize;
        let max_r = bounds.max_r.map_or(derived, |r| r.min(derived));
        let mut stack = Vec::new();
        if let Some(d) = search(g, n, h, &divisors, 0, t, max_r, &mut stack) {
            return Some(d);
        }
    }
    None
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: u64,
    n: u64,
    h: u64,
    divisors: &[u64],
    from: usize,
    remaining: u64,
    max_r: usize,
    stack: &mut Vec<u64>,
) -> Option<BranchDatum> {
    if remaining == 0 {
        let d = BranchDatum {
            n,
            h,
            indices: stack.clone(),
        };
        return admissible(g, &d).then_some(d);
    }
    if stack.len() == max_r {
        return None;
    }
    for (i, &m) in divisors.iter().enumerate().skip(from) {
        let c = n - n / m;
        if c > remaining {
            continue;
        }
        stack.push(m);
        let found = search(g, n, h, divisors, i, remaining - c, max_r, stack);
        stack.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

/// Orders of periodic elements of `Mod_1 = SL(2, Z)`, excluding 1.
pub const GENUS_ONE_ORDERS: [u64; 4] = [2, 3, 4, 6];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub genus: u64,
    pub realizable_orders: Vec<u64>,
    /// Largest realizable order, or 1 if the group is torsion free.
    pub max_order: u64,
    pub realizable_primes: Vec<u64>,
    /// Empty for `g <= 1`, where the orders come from a lookup.
    pub witnesses: BTreeMap<u64, BranchDatum>,
}

impl CensusReport {
    pub fn contains(&self, n: u64) -> bool {
        n == 1 || self.realizable_orders.binary_search(&n).is_ok()
    }
}

/// All orders `n >= 2` of periodic mapping classes in genus `g`, with
/// witnesses. Orders are searched up to the Hurwitz bound.
pub fn census(g: u64) -> CensusReport {
    let (orders, witnesses) = if g == 0 {
        (Vec::new(), BTreeMap::new())
    } else if g == 1 {
        (GENUS_ONE_ORDERS.to_vec(), BTreeMap::new())
    } else {
        let found = witnesses_up_to(g, hurwitz_bound(g));
        (found.keys().copied().collect(), found)
    };
    CensusReport {
        genus: g,
        max_order: orders.last().copied().unwrap_or(1),
        realizable_primes: orders.iter().copied().filter(|&p| is_prime(p)).collect(),
        realizable_orders: orders,
        witnesses,
    }
}

#[cfg(not(feature = "parallel"))]
fn witnesses_up_to(g: u64, top: u64) -> BTreeMap<u64, BranchDatum> {
    (2..=top)
        .filter_map(|n| cyclic_witness(g, n).map(|w| (n, w)))
        .collect()
}

#[cfg(feature = "parallel")]
fn witnesses_up_to(g: u64, top: u64) -> BTreeMap<u64, BranchDatum> {
    use rayon::prelude::*;
    (2..=top)
        .into_par_iter()
        .filter_map(|n| cyclic_witness(g, n).map(|w| (n, w)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect()
}
