//! Proof fragments shared by several certificates.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{Certifier, Conclusion, Step};
use crate::abelian::{abelianize, mapping_class_presentation, quotient_order_by_delta_power};
use crate::curves::{
    block_permutation, chain, chain_action_check, delta_order_check, gamma4, hyperelliptic_check,
    hyperelliptic_torelli_shadow, pants_system, perm_embedding, rotation_r1, rotation_r2,
    twist_rank, Permutation,
};
use crate::symplectic::{pairing, HomClass, Order, SympMatrix};
use crate::Result;

pub(crate) type Outcome = (bool, String);

fn outcome(r: Result<Outcome>) -> Outcome {
    r.unwrap_or_else(|e| (false, alloc::format!("error: {e}")))
}

pub(crate) fn step(claim: impl Into<String>, citation: impl Into<String>, o: &Outcome) -> Step {
    Step::checked(claim, citation, Ok(o.clone()))
}

/// Chain facts for one genus, computed once per certifier.
pub(crate) struct GenusFacts {
    pub delta_order: Outcome,
    pub chain_action: Outcome,
    /// `a1` against `a_{k+1} = delta^k(a1)` for `k = 1..=2g`.
    pub pair_pattern: Outcome,
    pub hyperelliptic: Outcome,
    pub torelli_shadow: Outcome,
}

impl GenusFacts {
    pub(crate) fn compute(g: usize) -> Self {
        let delta_order = outcome(delta_order_check(g).map(|n| {
            (
                n == 4 * g as u64 + 2,
                alloc::format!("delta_order_check({g}) = {n}"),
            )
        }));
        let chain_action = outcome(chain_action_check(g).map(|a| {
            (
                true,
                alloc::format!(
                    "chain_action_check({g}): signs {:?}, boundary sign {}",
                    a.signs,
                    a.boundary_sign
                ),
            )
        }));
        let pair_pattern = outcome(pair_pattern(g));
        let hyperelliptic = outcome(
            hyperelliptic_check(g).map(|ok| (ok, alloc::format!("delta^{} = -I: {ok}", 2 * g + 1))),
        );
        let torelli_shadow = if g >= 2 {
            outcome(hyperelliptic_torelli_shadow(g).map(|ok| {
                (
                    ok,
                    alloc::format!("t0^-1 t(delta^{}(a0)) = I on homology: {ok}", 2 * g + 1),
                )
            }))
        } else {
            (false, "no curve a0 in genus 1".into())
        };
        GenusFacts {
            delta_order,
            chain_action,
            pair_pattern,
            hyperelliptic,
            torelli_shadow,
        }
    }
}

/// `|<v1, v_{k+1}>|` is 1 exactly for `k = 1, 2g`, and `v1 != ±v_{k+1}`.
fn pair_pattern(g: usize) -> Result<Outcome> {
    let data = chain(g)?;
    let v1 = data.class(1);
    let mut values = Vec::new();
    let mut ok = true;
    for k in 1..=2 * g {
        let w = data.class(k + 1);
        let p = pairing(v1, w)?;
        let expect = if k == 1 || k == 2 * g { 1 } else { 0 };
        let abs = if p < BigInt::from(0) { -p } else { p };
        ok &= abs == BigInt::from(expect) && !v1.eq_up_to_sign(w);
        values.push(abs.to_string());
    }
    Ok((
        ok,
        alloc::format!(
            "|<v1, v_(k+1)>| for k = 1..{}: [{}]",
            2 * g,
            values.join(",")
        ),
    ))
}

/// Classes meeting once, or disjoint with independent (so complementary
/// connected) classes.
fn meets_once_or_independent(u: &HomClass, v: &HomClass) -> Result<bool> {
    let p = pairing(u, v)?;
    Ok(p == BigInt::from(1)
        || p == BigInt::from(-1)
        || (p == BigInt::from(0) && !u.eq_up_to_sign(v)))
}

const TWIST_RATIO: &str =
    "normal closure of t_a^-1 t_b is the commutator subgroup when a, b meet once or are disjoint non-separating with connected complement (change of coordinates)";
const POWELL: &str = "Powell: H1(Mod_g; Z) = 0 for g >= 3";

/// `delta` has order `4g + 2` in `Mod_g`.
pub(crate) fn delta_order_steps(c: &mut Certifier, g: usize, steps: &mut Vec<Step>) {
    let f = c.genus_facts(g);
    steps.push(step(
        alloc::format!(
            "eta(delta) has order {} in Sp({}, Z), so delta has order at least {} in Mod_{g}",
            4 * g + 2,
            2 * g,
            4 * g + 2
        ),
        "delta = t1 ... t_2g acting on first homology",
        &f.delta_order,
    ));
    steps.push(Step::cited(
        alloc::format!("delta^{} = 1 in Mod_{g}", 4 * g + 2),
        "Wiman: delta is realized by a periodic map of order 4g+2",
    ));
}

/// For `k` in `1..=2g` the normal closure of `delta^k` contains the
/// commutator subgroup, and the resulting bound on the image.
pub(crate) fn delta_power_closure_steps(
    c: &mut Certifier,
    g: usize,
    steps: &mut Vec<Step>,
) -> Conclusion {
    let f = c.genus_facts(g);
    steps.push(step(
        alloc::format!(
            "delta^k(a1) = a_(k+1) up to orientation for 1 <= k <= {}",
            2 * g
        ),
        "delta shifts the chain a1, ..., a_(2g+1)",
        &f.chain_action,
    ));
    steps.push(step(
        "a1 meets a_(k+1) once for k = 1, 2g and is disjoint from it with independent class otherwise",
        "intersection pattern of the chain",
        &f.pair_pattern,
    ));
    steps.push(Step::cited(
        "t1^-1 t_(k+1) = t1^-1 delta^k t1 delta^-k lies in the normal closure N_k of delta^k, so N_k contains [Mod_g, Mod_g]",
        TWIST_RATIO,
    ));
    match g {
        0..=2 => abelian_quotient_steps(g, steps),
        _ => {
            steps.push(Step::cited(
                alloc::format!("N_k = Mod_{g} for every 1 <= k <= {}", 2 * g),
                POWELL,
            ));
            Conclusion::Trivial
        }
    }
}

/// `Mod_g / N_k` for `g` in `{1, 2}` through the abelianization.
fn abelian_quotient_steps(g: usize, steps: &mut Vec<Step>) -> Conclusion {
    let (expected, citation) = match g {
        1 => (
            12u32,
            "H1(Mod_1; Z) = Z/12, generated by a non-separating twist",
        ),
        _ => (
            10u32,
            "Mumford: H1(Mod_2; Z) = Z/10, generated by a non-separating twist",
        ),
    };
    let ab = outcome(
        mapping_class_presentation(g)
            .and_then(|p| abelianize(&p))
            .map(|a| {
                (
                    a.is_cyclic() && a.order() == Some(BigInt::from(expected)),
                    alloc::format!("abelianize(Mod_{g}) = {a}"),
                )
            }),
    );
    steps.push(Step::cited(
        alloc::format!("the shipped presentation of Mod_{g} is correct"),
        "Birman-Hilden presentations of Mod_1 and Mod_2",
    ));
    steps.push(step(
        alloc::format!("H1(Mod_{g}; Z) = Z/{expected}"),
        citation,
        &ab,
    ));
    let mut worst = 1u32;
    let mut orders = Vec::new();
    let mut ok = true;
    for k in 1..=2 * g {
        match quotient_order_by_delta_power(g, k) {
            Ok(o) => {
                let o = u32::try_from(o).unwrap_or(u32::MAX);
                worst = worst.max(o);
                orders.push(alloc::format!("k={k}: {o}"));
            }
            Err(e) => {
                ok = false;
                orders.push(alloc::format!("k={k}: error {e}"));
            }
        }
    }
    let conclusion = match worst {
        1 => Conclusion::Trivial,
        2 => Conclusion::OrderAtMost2,
        3 | 4 => Conclusion::OrderAtMost4,
        _ => Conclusion::NoObstruction,
    };
    let expect_worst = if g == 1 { 4 } else { 2 };
    let ok = ok && worst == expect_worst;
    steps.push(step(
        alloc::format!(
            "Mod_{g} / N_k is cyclic of order at most {worst} for 1 <= k <= {}",
            2 * g
        ),
        "N_k contains the commutator subgroup, so Mod_g / N_k = H1 / <[delta^k]>",
        &(
            ok,
            alloc::format!("quotient_order_by_delta_power: {}", orders.join(", ")),
        ),
    ));
    conclusion
}

/// Either `phi(delta^k) = 1` for some `k <= 2g`, or the kernel contains the
/// Torelli group and `phi` factors through `Sp(2g, Z)`.
pub(crate) fn torelli_factoring_steps(c: &mut Certifier, g: usize, steps: &mut Vec<Step>) {
    let f = c.genus_facts(g);
    let (hyper, shadow) = (f.hyperelliptic.clone(), f.torelli_shadow.clone());
    steps.push(step(
        alloc::format!(
            "delta^{} acts as -I on first homology (hyperelliptic involution)",
            2 * g + 1
        ),
        "delta^(2g+1) reverses each a_j",
        &hyper,
    ));
    steps.push(step(
        alloc::format!("t0^-1 t(delta^{}(a0)) is a genus-one bounding pair map in the normal closure of delta^{}", 2 * g + 1, 2 * g + 1),
        "a0 and its image are disjoint, homologous, and bound a genus-one subsurface",
        &shadow,
    ));
    steps.push(Step::cited(
        "the Torelli group is the normal closure of a genus-one bounding pair map, so if phi(delta^(2g+1)) = 1 then phi factors through Sp(2g, Z)",
        "Johnson: Torelli group generated by genus-one bounding pair maps (g >= 3)",
    ));
    delta_power_closure_steps(c, g, steps);
}

/// Permutations of the hyperbolic pairs embed `S_g` in `Sp(2g, Z)`.
pub(crate) fn symmetric_embedding_steps(g: usize, steps: &mut Vec<Step>) {
    let check = || -> Result<Outcome> {
        let swap = Permutation::new(
            (0..g)
                .map(|i| match i {
                    0 => 1,
                    1 => 0,
                    _ => i,
                })
                .collect(),
        )?;
        let cycle = Permutation::cycle(g, g)?;
        let mut ok = true;
        for p in [&swap, &cycle] {
            let m = perm_embedding(p)?;
            ok &= m.is_symplectic() && block_permutation(&m).as_ref() == Some(p);
        }
        Ok((
            ok,
            alloc::format!(
                "perm_embedding of (1 2) and the {g}-cycle: symplectic and faithful: {ok}"
            ),
        ))
    };
    steps.push(step(
        alloc::format!("permutations of the pairs (c_i, d_i) give a subgroup Sigma_{g} of Sp({}, Z) isomorphic to S_{g}", 2 * g),
        "a transposition and a g-cycle generate S_g",
        &outcome(check()),
    ));
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Rotation {
    /// Period `g`.
    R1,
    /// Period `g - 1`.
    R2,
}

impl Rotation {
    fn name(self) -> &'static str {
        match self {
            Rotation::R1 => "r1",
            Rotation::R2 => "r2",
        }
    }

    fn matrix(self, g: usize) -> Result<SympMatrix> {
        match self {
            Rotation::R1 => rotation_r1(g),
            Rotation::R2 => rotation_r2(g),
        }
    }

    pub(crate) fn period(self, g: usize) -> usize {
        match self {
            Rotation::R1 => g,
            Rotation::R2 => g - 1,
        }
    }
}

/// `eta(r)` lies in the alternating subgroup of `Sigma_g`.
pub(crate) fn rotation_parity_step(g: usize, r: Rotation, steps: &mut Vec<Step>) {
    let check = || -> Result<Outcome> {
        let m = r.matrix(g)?;
        match block_permutation(&m) {
            Some(p) => Ok((
                p.is_even(),
                alloc::format!(
                    "block_permutation({}) has cycle type {:?}, even: {}",
                    r.name(),
                    p.cycle_lengths(),
                    p.is_even()
                ),
            )),
            None => Ok((false, "not a block permutation".into())),
        }
    };
    steps.push(step(
        alloc::format!(
            "eta({}) lies in the alternating subgroup A_{g} of Sigma_{g}",
            r.name()
        ),
        "a cycle of odd length is an even permutation",
        &outcome(check()),
    ));
}

/// The normal closure of every nontrivial power `r^k` is `Mod_g`.
pub(crate) fn rotation_closure_steps(g: usize, r: Rotation, steps: &mut Vec<Step>) {
    let n = r.period(g);
    let check = || -> Result<Outcome> {
        let m = r.matrix(g)?;
        let ord = m.order(n as u64 + 1)?;
        let mut ok = ord == Order::Finite(n as u64);
        let e1 = HomClass::e(g, 1);
        for k in 1..n {
            let image = m.pow(k as i64).apply(&e1)?;
            ok &= image == HomClass::e(g, k + 1) && meets_once_or_independent(&e1, &image)?;
        }
        Ok((
            ok,
            alloc::format!(
                "order({}) = {ord}; {}^k(e1) = e_(k+1), disjoint and independent, for 1 <= k < {n}",
                r.name(),
                r.name()
            ),
        ))
    };
    steps.push(step(
        alloc::format!("{} has period {n}, and r^k(d1) = d_(k+1) is disjoint from d1 with connected complement for 1 <= k < {n}", r.name()),
        "rotation of the handles",
        &outcome(check()),
    ));
    steps.push(Step::cited(
        alloc::format!("t_d1^-1 r^k t_d1 r^-k = t_d1^-1 t_d(k+1) lies in the normal closure of r^k, which is therefore Mod_{g}"),
        alloc::format!("{TWIST_RATIO}; {POWELL}"),
    ));
}

/// `gamma = t1 t2 t3 t4` in genus 4: order 10 on homology and
/// `gamma^k(a1) = a_(k+1)`.
pub(crate) fn gamma_steps(steps: &mut Vec<Step>) {
    let order = || -> Result<Outcome> {
        let gm = gamma4()?;
        let ord = gm.order(20)?;
        let ok = ord == Order::Finite(10) && gm.pow(10).is_identity() && !gm.pow(5).is_identity();
        Ok((
            ok,
            alloc::format!("order(eta(gamma)) = {ord}, gamma^10 = I"),
        ))
    };
    steps.push(step(
        "eta(gamma) has order 10 in Sp(8, Z)",
        "gamma = t1 t2 t3 t4",
        &outcome(order()),
    ));
    steps.push(Step::cited(
        "gamma^10 is the twist about the separating boundary of a neighbourhood of a1 .. a4, hence lies in the Torelli group",
        "chain relation (t1 t2 t3 t4)^10 = t_boundary",
    ));
    let shift = || -> Result<Outcome> {
        let data = chain(4)?;
        let gm = gamma4()?;
        let v1 = data.class(1);
        let mut ok = true;
        let mut pairings = Vec::new();
        for k in 1..=4usize {
            let image = gm.pow(k as i64).apply(v1)?;
            if k <= 3 {
                ok &= image.eq_up_to_sign(data.class(k + 1));
            }
            ok &= meets_once_or_independent(v1, &image)?;
            pairings.push(pairing(v1, &image)?.to_string());
        }
        Ok((
            ok,
            alloc::format!(
                "gamma^k(v1) = ±v_(k+1) for k <= 3; <v1, gamma^k(v1)> for k = 1..4: [{}]",
                pairings.join(",")
            ),
        ))
    };
    steps.push(step(
        "for 1 <= k <= 4, gamma^k(a1) meets a1 once or is disjoint from it with connected complement (gamma^k(a1) = a_(k+1) for k <= 3)",
        "gamma shifts a1, ..., a4",
        &outcome(shift()),
    ));
    steps.push(Step::cited(
        "the normal closure of gamma^k (1 <= k < 5) contains t1^-1 t(gamma^k(a1)) and is Mod_4",
        alloc::format!("{TWIST_RATIO}; {POWELL}"),
    ));
}

/// The pants twist subgroup `A` embeds in `Sp(2g, Z)` with rank `3g - 3`
/// and misses `-I`.
pub(crate) fn pants_steps(g: usize, steps: &mut Vec<Step>) {
    let check = || -> Result<Outcome> {
        let sys = pants_system(g)?;
        sys.check()?;
        let rank = twist_rank(&sys)?;
        Ok((
            rank == 3 * g - 3 && sys.len() == 3 * g - 3,
            alloc::format!("twist_rank(pants_system({g})) = {rank}"),
        ))
    };
    steps.push(step(
        alloc::format!("the {} pants curves c_j are disjoint, non-separating, pairwise non-homologous, and eta(A) is free abelian of rank {}", 3 * g - 3, 3 * g - 3),
        "pants decomposition into 2g-2 pairs of pants",
        &outcome(check()),
    ));
    steps.push(Step::cited(
        "A meets the Torelli group trivially, so eta restricted to A is injective",
        "Vautaw: products of twists on such curve systems lie in Torelli only when all exponents vanish",
    ));
    let unipotent = || -> Result<Outcome> {
        let sys = pants_system(g)?;
        let mut ok = true;
        for u in sys.classes() {
            for v in sys.classes() {
                ok &= pairing(u, v)? == BigInt::from(0);
            }
        }
        let sample =
            crate::curves::twist_product(&sys, &(1..=sys.len() as i64).collect::<Vec<_>>())?;
        let trace = sample.trace();
        ok &= trace == BigInt::from(2 * g as i64);
        Ok((ok, alloc::format!("pairwise pairings vanish, so every element of eta(A) is I + nilpotent with trace {}; sample trace {trace}", 2 * g)))
    };
    steps.push(step(
        "eta(A) contains no -I (every element has trace 2g, while tr(-I) = -2g)",
        "commuting transvections with isotropic vectors",
        &outcome(unipotent()),
    ));
}

pub(crate) fn fmt_orders(orders: &[u64]) -> String {
    orders
        .iter()
        .map(|o| o.to_string())
        .collect::<Vec<_>>()
        .join(",")
}
