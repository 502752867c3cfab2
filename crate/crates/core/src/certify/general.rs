//! Homomorphisms `Mod_g -> H` for a target described only by a profile.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec::Vec;

use super::leaves::{
    delta_order_steps, delta_power_closure_steps, gamma_steps, pants_steps, rotation_closure_steps,
    rotation_parity_step, step, symmetric_embedding_steps, torelli_factoring_steps, Rotation,
};
use super::{
    factorial, finite_subgroup_bound, free_abelian_rank_bound, Certificate, Certifier, Conclusion,
    Step,
};
use crate::{Error, Result};

/// What is known about a target group `H`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GroupProfile {
    /// `H` has no element of any of these orders.
    pub excluded_orders: BTreeSet<u64>,
    /// Every finite subgroup of `H` has at most this many elements.
    pub max_finite_subgroup: Option<u64>,
    /// Every free abelian subgroup of `H` has at most this rank.
    pub max_free_abelian_rank: Option<u64>,
}

impl GroupProfile {
    pub fn new(
        excluded_orders: impl IntoIterator<Item = u64>,
        max_finite_subgroup: Option<u64>,
        max_free_abelian_rank: Option<u64>,
    ) -> Result<Self> {
        let excluded_orders: BTreeSet<u64> = excluded_orders.into_iter().collect();
        if excluded_orders.contains(&0) || excluded_orders.contains(&1) {
            return Err(Error::Hypothesis(
                "excluded orders must be at least 2".into(),
            ));
        }
        if max_finite_subgroup == Some(0) {
            return Err(Error::Hypothesis(
                "every group has a subgroup of order 1".into(),
            ));
        }
        Ok(GroupProfile {
            excluded_orders,
            max_finite_subgroup,
            max_free_abelian_rank,
        })
    }

    /// Profile of `Mod_h`: orders up to `up_to` missing from its census,
    /// the finite subgroup bound and the free abelian rank bound.
    pub fn for_mapping_class_group(certifier: &mut Certifier, h: u64, up_to: u64) -> Self {
        GroupProfile {
            excluded_orders: certifier.missing_orders(h, up_to),
            max_finite_subgroup: Some(finite_subgroup_bound(h)),
            max_free_abelian_rank: Some(free_abelian_rank_bound(h)),
        }
    }

    pub fn excludes(&self, n: u64) -> bool {
        self.excluded_orders.contains(&n)
    }
}

type Rule = fn(&mut Certifier, u64, &GroupProfile) -> Option<Certificate>;

fn hypothesis(claim: String, holds: bool, fact: String) -> Step {
    step(claim, "profile hypothesis", &(holds, fact))
}

impl Certifier {
    /// Applies every rule whose hypotheses the profile meets and returns
    /// the certificate with the strongest conclusion.
    pub fn certify_general_target(
        &mut self,
        g: u64,
        profile: &GroupProfile,
    ) -> Result<Certificate> {
        if g == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        let mut candidates: Vec<Certificate> = Vec::new();
        let rules: [Rule; 5] = [
            rule_no_2g_plus_1,
            rule_rotation,
            rule_alternating,
            rule_genus_four,
            rule_rank,
        ];
        for rule in rules {
            if let Some(c) = rule(self, g, profile) {
                candidates.push(c);
            }
        }
        // Earlier rules win ties.
        let best = candidates
            .into_iter()
            .enumerate()
            .min_by_key(|(i, c)| (c.conclusion(), *i))
            .map(|(_, c)| c);
        Ok(best.unwrap_or_else(|| Certificate {
            subject: alloc::format!("homomorphisms Mod_{g} -> H"),
            claimed: Conclusion::NoObstruction,
            steps: alloc::vec![Step::cited(
                "the profile meets the hypotheses of no rule",
                "rules: no element of order 2g+1; no element of order g or g-1; no element of order 4g+2 and no subgroup of order g!; genus 4 without orders 18 and 5; no element of order 4g+2 and free abelian rank < 3g-3",
            )],
        }))
    }
}

/// No element of order `2g + 1`: image trivial for `g >= 3`, of order at
/// most 2 for `g = 2` and at most 4 for `g = 1`.
fn rule_no_2g_plus_1(c: &mut Certifier, g: u64, p: &GroupProfile) -> Option<Certificate> {
    let n = 2 * g + 1;
    if !p.excludes(n) {
        return None;
    }
    let mut steps = alloc::vec![hypothesis(
        alloc::format!("H has no element of order {n} = 2g+1"),
        true,
        alloc::format!("{n} in excluded orders"),
    )];
    delta_order_steps(c, g as usize, &mut steps);
    steps.push(super::distinct::small_divisor_step(
        g,
        &[n, 2 * n],
        "an element of order 4g+2 would square to one of order 2g+1",
    ));
    let claimed = delta_power_closure_steps(c, g as usize, &mut steps);
    Some(Certificate {
        subject: alloc::format!("homomorphisms Mod_{g} -> H without elements of order {n}"),
        claimed,
        steps,
    })
}

/// No element of order `g` (or `g - 1`): the rotation `r1` (or `r2`) has
/// a nontrivial power in the kernel. Either missing order suffices; each
/// rotation is handled on its own.
fn rule_rotation(_c: &mut Certifier, g: u64, p: &GroupProfile) -> Option<Certificate> {
    if g < 3 {
        return None;
    }
    let r = if p.excludes(g) {
        Rotation::R1
    } else if p.excludes(g - 1) {
        Rotation::R2
    } else {
        return None;
    };
    let n = r.period(g as usize) as u64;
    let mut steps = alloc::vec![hypothesis(
        alloc::format!("H has no element of order {n} (either of the orders g, g-1 suffices)"),
        true,
        alloc::format!("{n} in excluded orders"),
    )];
    rotation_closure_steps(g as usize, r, &mut steps);
    steps.push(step(
        alloc::format!("phi(r)^k = 1 for some 1 <= k < {n}"),
        "the order of phi(r) divides the period and is not excluded",
        &(true, alloc::format!("proper divisors of {n} are below {n}")),
    ));
    Some(Certificate {
        subject: alloc::format!("homomorphisms Mod_{g} -> H without elements of order {n}"),
        claimed: Conclusion::Trivial,
        steps,
    })
}

/// `g > 5`, no element of order `4g + 2`, no subgroup of order `g!`.
fn rule_alternating(c: &mut Certifier, g: u64, p: &GroupProfile) -> Option<Certificate> {
    let m = p.max_finite_subgroup?;
    if g <= 5 || !p.excludes(4 * g + 2) {
        return None;
    }
    let fact = factorial(g);
    if fact <= m.into() {
        return None;
    }
    let gu = g as usize;
    let mut steps = alloc::vec![
        hypothesis(
            alloc::format!("H has no element of order {}", 4 * g + 2),
            true,
            alloc::format!("{} in excluded orders", 4 * g + 2)
        ),
        hypothesis(
            alloc::format!("H has no subgroup of order {g}!"),
            fact > m.into(),
            alloc::format!("finite subgroups have order <= {m} < {g}! = {fact}")
        ),
    ];
    delta_order_steps(c, gu, &mut steps);
    torelli_factoring_steps(c, gu, &mut steps);
    symmetric_embedding_steps(gu, &mut steps);
    steps.push(Step::cited(
        alloc::format!(
            "Phi restricted to Sigma_{g} is not injective, so its kernel is A_{g} or Sigma_{g}"
        ),
        "the normal subgroups of S_n for n >= 5 are 1, A_n, S_n (A_n simple for n > 5)",
    ));
    let r = if g % 2 == 1 {
        Rotation::R1
    } else {
        Rotation::R2
    };
    rotation_parity_step(gu, r, &mut steps);
    rotation_closure_steps(gu, r, &mut steps);
    Some(Certificate {
        subject: alloc::format!(
            "homomorphisms Mod_{g} -> H without elements of order {} or subgroups of order {g}!",
            4 * g + 2
        ),
        claimed: Conclusion::Trivial,
        steps,
    })
}

/// Genus 4 with no element of order 18 and none of order 5.
fn rule_genus_four(c: &mut Certifier, g: u64, p: &GroupProfile) -> Option<Certificate> {
    if g != 4 || !p.excludes(18) || !p.excludes(5) {
        return None;
    }
    let mut steps = alloc::vec![hypothesis(
        "H has no element of order 18 and none of order 5".into(),
        true,
        "18, 5 in excluded orders".into(),
    )];
    delta_order_steps(c, 4, &mut steps);
    torelli_factoring_steps(c, 4, &mut steps);
    gamma_steps(&mut steps);
    steps.push(step(
        "Phi(eta(gamma)) has order 1 or 2, so some gamma^k with k < 5 lies in the kernel",
        "an element of order 10 squares to one of order 5",
        &(
            true,
            "order divides 10; orders 5 and 10 are impossible without order 5".into(),
        ),
    ));
    Some(Certificate {
        subject: "homomorphisms Mod_4 -> H without elements of order 18 or 5".into(),
        claimed: Conclusion::Trivial,
        steps,
    })
}

/// `g >= 3`, no element of order `4g + 2`, free abelian rank below `3g - 3`.
fn rule_rank(c: &mut Certifier, g: u64, p: &GroupProfile) -> Option<Certificate> {
    let rank = p.max_free_abelian_rank?;
    if g < 3 || !p.excludes(4 * g + 2) || rank >= 3 * g - 3 {
        return None;
    }
    let gu = g as usize;
    let mut steps = alloc::vec![
        hypothesis(
            alloc::format!("H has no element of order {}", 4 * g + 2),
            true,
            alloc::format!("{} in excluded orders", 4 * g + 2)
        ),
        hypothesis(
            alloc::format!("free abelian subgroups of H have rank < {}", 3 * g - 3),
            true,
            alloc::format!("max rank {rank}")
        ),
    ];
    delta_order_steps(c, gu, &mut steps);
    torelli_factoring_steps(c, gu, &mut steps);
    pants_steps(gu, &mut steps);
    steps.push(hypothesis(
        "Phi is not injective on eta(A), so ker Phi contains some h != I with h != -I".into(),
        rank < 3 * g - 3,
        alloc::format!("rank {rank} < {}", 3 * g - 3),
    ));
    steps.push(Step::cited(
        "ker Phi is a normal subgroup of Sp(2g, Z) other than 1 and the center, so it contains a congruence subgroup and the image is finite",
        "Mennicke: congruence subgroup property of Sp(2g, Z), g >= 2",
    ));
    steps.push(Step::cited(
        "free abelian subgroups of Mod_g have rank at most 3g-3, attained by A",
        "Birman-Lubotzky-McCarthy rank bound",
    ));
    Some(Certificate {
        subject: alloc::format!(
            "homomorphisms Mod_{g} -> H without elements of order {} and abelian rank < {}",
            4 * g + 2,
            3 * g - 3
        ),
        claimed: Conclusion::FiniteImage,
        steps,
    })
}

pub fn certify_general_target(g: u64, profile: &GroupProfile) -> Result<Certificate> {
    Certifier::new().certify_general_target(g, profile)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(ex: &[u64], sub: Option<u64>, rank: Option<u64>) -> GroupProfile {
        GroupProfile::new(ex.iter().copied(), sub, rank).unwrap()
    }

    #[test]
    fn examples() {
        let mut c = Certifier::new();
        assert_eq!(
            c.certify_general_target(3, &profile(&[7], None, None))
                .unwrap()
                .conclusion(),
            Conclusion::Trivial
        );
        assert_eq!(
            c.certify_general_target(6, &profile(&[5], None, None))
                .unwrap()
                .conclusion(),
            Conclusion::Trivial
        );
        let fin = c
            .certify_general_target(3, &profile(&[14], None, Some(5)))
            .unwrap();
        assert_eq!(fin.conclusion(), Conclusion::FiniteImage);
        assert!(fin.steps.iter().any(|s| s.citation.contains("Mennicke")));
        assert_eq!(
            c.certify_general_target(3, &profile(&[], None, None))
                .unwrap()
                .conclusion(),
            Conclusion::NoObstruction
        );
        assert_eq!(
            c.certify_general_target(2, &profile(&[5], None, None))
                .unwrap()
                .conclusion(),
            Conclusion::OrderAtMost2
        );
        assert_eq!(
            c.certify_general_target(1, &profile(&[3], None, None))
                .unwrap()
                .conclusion(),
            Conclusion::OrderAtMost4
        );
        assert!(GroupProfile::new([1], None, None).is_err());
    }

    #[test]
    fn mapping_class_profiles_reproduce_distinct_genera() {
        let mut c = Certifier::new();
        for g in 3..=9u64 {
            for h in 0..g {
                let p = GroupProfile::for_mapping_class_group(&mut c, h, 4 * g + 2);
                let a = c.certify_general_target(g, &p).unwrap().conclusion();
                let b = c.certify_distinct_genera(g, h).unwrap().conclusion();
                assert_eq!(a, b, "g = {g}, h = {h}");
            }
        }
    }
}
