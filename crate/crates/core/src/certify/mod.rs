//! Certificates for "every homomorphism `Mod_g -> H` is trivial / small".
//!
//! A certificate is a list of steps. Computed steps are re-checked against
//! the other modules of this crate and end up `Verified` or `Failed`;
//! theorems from the literature that are consumed without proof appear as
//! `CitedFact` steps. A certificate with any failed step concludes nothing.

mod distinct;
mod general;
mod leaves;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigUint;

use crate::census::{census, CensusReport};
use crate::{Error, Result};

pub use general::GroupProfile;

/// Ordered from strongest to weakest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Conclusion {
    Trivial,
    OrderAtMost2,
    OrderAtMost4,
    FiniteImage,
    NoObstruction,
}

impl Conclusion {
    pub fn as_str(self) -> &'static str {
        match self {
            Conclusion::Trivial => "trivial",
            Conclusion::OrderAtMost2 => "order<=2",
            Conclusion::OrderAtMost4 => "order<=4",
            Conclusion::FiniteImage => "finite-image",
            Conclusion::NoObstruction => "no-obstruction",
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StepStatus {
    Verified,
    Failed,
    CitedFact,
}

impl StepStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            StepStatus::Verified => "verified",
            StepStatus::Failed => "failed",
            StepStatus::CitedFact => "cited-fact",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub claim: String,
    /// Literature source, or the argument a computation supports.
    pub citation: String,
    /// What was computed, e.g. `delta_order_check(3) = 14`.
    pub fact: String,
    pub status: StepStatus,
}

impl Step {
    pub(crate) fn cited(claim: impl Into<String>, citation: impl Into<String>) -> Self {
        Step {
            claim: claim.into(),
            citation: citation.into(),
            fact: String::new(),
            status: StepStatus::CitedFact,
        }
    }

    /// A computed step: `Ok((true, fact))` verifies, anything else fails.
    pub(crate) fn checked(
        claim: impl Into<String>,
        citation: impl Into<String>,
        outcome: Result<(bool, String)>,
    ) -> Self {
        let (status, fact) = match outcome {
            Ok((true, fact)) => (StepStatus::Verified, fact),
            Ok((false, fact)) => (StepStatus::Failed, fact),
            Err(e) => (StepStatus::Failed, alloc::format!("error: {e}")),
        };
        Step {
            claim: claim.into(),
            citation: citation.into(),
            fact,
            status,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub subject: String,
    /// What the steps establish if all of them hold.
    pub claimed: Conclusion,
    pub steps: Vec<Step>,
}

impl Certificate {
    /// `claimed`, unless some step failed.
    pub fn conclusion(&self) -> Conclusion {
        if self.failed_steps() > 0 {
            Conclusion::NoObstruction
        } else {
            self.claimed
        }
    }

    pub fn failed_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.status == StepStatus::Failed)
            .count()
    }

    pub fn verified_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.status == StepStatus::Verified)
            .count()
    }

    pub fn cited_steps(&self) -> usize {
        self.steps
            .iter()
            .filter(|s| s.status == StepStatus::CitedFact)
            .count()
    }

    /// No step failed.
    pub fn is_sound(&self) -> bool {
        self.failed_steps() == 0
    }

    /// Marks step `index` as failed, for exercising the soundness gate.
    pub fn inject_fault(&mut self, index: usize) -> Result<()> {
        let len = self.steps.len();
        let step = self
            .steps
            .get_mut(index)
            .ok_or_else(|| Error::OutOfRange(alloc::format!("step {index} of {len}")))?;
        step.status = StepStatus::Failed;
        step.fact = alloc::format!("{} [fault injected]", step.fact);
        Ok(())
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.subject)?;
        for (i, s) in self.steps.iter().enumerate() {
            writeln!(f, "  [{i}] {:<10} {}", s.status.as_str(), s.claim)?;
            if !s.citation.is_empty() {
                writeln!(f, "       by: {}", s.citation)?;
            }
            if !s.fact.is_empty() {
                writeln!(f, "       fact: {}", s.fact)?;
            }
        }
        write!(f, "conclusion: {}", self.conclusion())
    }
}

/// Builds certificates, caching censuses and per-genus chain facts.
#[derive(Default)]
pub struct Certifier {
    censuses: BTreeMap<u64, CensusReport>,
    genus_facts: BTreeMap<usize, leaves::GenusFacts>,
}

impl Certifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn census(&mut self, h: u64) -> &CensusReport {
        self.censuses.entry(h).or_insert_with(|| census(h))
    }

    pub(crate) fn genus_facts(&mut self, g: usize) -> &leaves::GenusFacts {
        self.genus_facts
            .entry(g)
            .or_insert_with(|| leaves::GenusFacts::compute(g))
    }

    /// Orders in `2..=up_to` that `Mod_h` does not realize.
    pub fn missing_orders(&mut self, h: u64, up_to: u64) -> BTreeSet<u64> {
        let c = self.census(h);
        (2..=up_to).filter(|&n| !c.contains(n)).collect()
    }
}

/// Largest order of a finite subgroup of `Mod_h` used by the certifier:
/// `84(h-1)` for `h >= 2` (Hurwitz), 6 for `h = 1` (finite subgroups of
/// `SL(2, Z)` are cyclic of order at most 6), 1 for `h = 0`.
pub fn finite_subgroup_bound(h: u64) -> u64 {
    match h {
        0 => 1,
        1 => 6,
        _ => 84 * (h - 1),
    }
}

/// Largest rank of a free abelian subgroup of `Mod_h`: `3h-3` for `h >= 2`,
/// 1 for `h = 1`, 0 for `h = 0`.
pub fn free_abelian_rank_bound(h: u64) -> u64 {
    match h {
        0 => 0,
        1 => 1,
        _ => 3 * h - 3,
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).product()
}

/// Numbers that must divide the index of a finite-index normal subgroup of
/// `Mod_g`, `g >= 3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Divisibility {
    pub genus: u64,
    pub divisors: [u64; 3],
    pub lcm: u64,
}

/// `g - 1`, `g` and `2g + 1`. The quotient by a proper finite-index normal
/// subgroup is a nontrivial finite group, which by the rotation and `delta`
/// arguments has elements of these orders; Lagrange does the rest.
pub fn index_divisibility(g: u64) -> Result<Divisibility> {
    use num_integer::Integer;
    if g < 3 {
        return Err(Error::GenusTooSmall {
            min: 3,
            got: g as usize,
        });
    }
    let divisors = [g - 1, g, 2 * g + 1];
    let lcm = divisors.iter().fold(1u64, |a, d| a.lcm(d));
    Ok(Divisibility {
        genus: g,
        divisors,
        lcm,
    })
}

pub use distinct::certify_distinct_genera;
pub use general::certify_general_target;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_examples() {
        assert_eq!(index_divisibility(7).unwrap().divisors, [6, 7, 15]);
        assert_eq!(index_divisibility(7).unwrap().lcm, 210);
        assert_eq!(index_divisibility(3).unwrap().lcm, 42);
        assert_eq!(index_divisibility(4).unwrap().lcm, 36);
        assert!(index_divisibility(2).is_err());
    }

    #[test]
    fn lattice_order() {
        assert!(Conclusion::Trivial < Conclusion::OrderAtMost2);
        assert!(Conclusion::FiniteImage < Conclusion::NoObstruction);
    }

    #[test]
    fn fault_injection_flips() {
        let mut c = Certificate {
            subject: "test".into(),
            claimed: Conclusion::Trivial,
            steps: alloc::vec![
                Step::cited("a", "b"),
                Step::checked("c", "d", Ok((true, "x".into())))
            ],
        };
        assert_eq!(c.conclusion(), Conclusion::Trivial);
        c.inject_fault(0).unwrap();
        assert_eq!(c.conclusion(), Conclusion::NoObstruction);
        assert!(c.inject_fault(5).is_err());
        let failed = Step::checked("c", "d", Ok((false, "x".into())));
        assert_eq!(failed.status, StepStatus::Failed);
    }
}
