//! Homomorphisms `Mod_g -> Mod_h` with `g > h`.

use alloc::vec::Vec;

use super::leaves::{
    delta_order_steps, delta_power_closure_steps, fmt_orders, gamma_steps, rotation_closure_steps,
    rotation_parity_step, step, symmetric_embedding_steps, torelli_factoring_steps, Rotation,
};
use super::{factorial, finite_subgroup_bound, Certificate, Certifier, Conclusion, Step};
use crate::finite::is_prime;
use crate::{Error, Result};

impl Certifier {
    /// The image of any `Mod_g -> Mod_h` with `g > h` is trivial, or of
    /// order at most 2 when `g = 2`.
    pub fn certify_distinct_genera(&mut self, g: u64, h: u64) -> Result<Certificate> {
        if g <= h {
            return Err(Error::Hypothesis(alloc::format!(
                "need g > h, got g = {g}, h = {h}"
            )));
        }
        let subject = alloc::format!("homomorphisms Mod_{g} -> Mod_{h}");
        let mut steps = Vec::new();
        if h == 0 {
            steps.push(Step::cited(
                "Mod_0 is trivial, so every homomorphism into it is trivial",
                "Alexander: mapping class group of the sphere",
            ));
            return Ok(Certificate {
                subject,
                claimed: Conclusion::Trivial,
                steps,
            });
        }
        let gu = g as usize;
        self.torsion_source_step(h, &mut steps);
        delta_order_steps(self, gu, &mut steps);
        let m = self.census(h).max_order;
        steps.push(step(
            alloc::format!(
                "Mod_{h} has no element of order {}, so phi(delta^k) = 1 for some 1 <= k <= {}",
                4 * g + 2,
                2 * g + 1
            ),
            "cyclic subgroups of Mod_h have order at most 4h+2",
            &(
                m < 4 * g + 2,
                alloc::format!("census({h}).max_order = {m} < {}", 4 * g + 2),
            ),
        ));

        let p = 2 * g + 1;
        let claimed = if is_prime(p) {
            steps.push(step(
                alloc::format!("{p} = 2g+1 is prime, {p} > h+1 and {p} != 2h+1"),
                "prime orders in Mod_h satisfy p <= h+1 or p = 2h+1",
                &(
                    p > h + 1 && p != 2 * h + 1,
                    alloc::format!("is_prime({p}) and {p} > {} and {p} != {}", h + 1, 2 * h + 1),
                ),
            ));
            self.no_order_step(
                h,
                &[p],
                "so phi(delta) does not have order 2g+1",
                &mut steps,
            );
            steps.push(small_divisor_step(
                g,
                &[p, 2 * p],
                "Mod_h has neither order",
            ));
            delta_power_closure_steps(self, gu, &mut steps)
        } else if g > 5 {
            torelli_factoring_steps(self, gu, &mut steps);
            symmetric_embedding_steps(gu, &mut steps);
            let r = if g % 2 == 1 {
                Rotation::R1
            } else {
                Rotation::R2
            };
            rotation_parity_step(gu, r, &mut steps);
            let half = factorial(g) / 2u32;
            let bound = finite_subgroup_bound(h);
            steps.push(self.subgroup_bound_citation(h));
            steps.push(step(
                alloc::format!("Mod_{h} has no subgroup of order g!/2, so Phi restricted to A_{g} is not injective"),
                "g!/2 exceeds the finite subgroup bound of Mod_h",
                &(half > bound.into(), alloc::format!("{g}!/2 = {half} > {bound}")),
            ));
            steps.push(Step::cited(
                alloc::format!("A_{g} is simple, so A_{g} lies in the kernel of Phi and r lies in the kernel of phi"),
                "A_n is simple for n > 5",
            ));
            rotation_closure_steps(gu, r, &mut steps);
            Conclusion::Trivial
        } else if g == 4 && h <= 2 {
            let why = if h == 1 {
                "4h+2 = 6 < 9"
            } else {
                "4h+1 = 9 is never realized"
            };
            self.no_order_step(h, &[9, 18], why, &mut steps);
            steps.push(small_divisor_step(g, &[9, 18], "Mod_h has neither order"));
            delta_power_closure_steps(self, gu, &mut steps)
        } else if g == 4 {
            torelli_factoring_steps(self, gu, &mut steps);
            gamma_steps(&mut steps);
            steps.push(step(
                "5 is prime, 5 > h+1 and 5 != 2h+1",
                "prime orders in Mod_h satisfy p <= h+1 or p = 2h+1",
                &(
                    5 > h + 1 && 5 != 2 * h + 1,
                    alloc::format!("5 > {} and 5 != {}", h + 1, 2 * h + 1),
                ),
            ));
            self.no_order_step(
                h,
                &[5, 10],
                "so Phi(eta(gamma))^k = 1 for some k in {1, 2}",
                &mut steps,
            );
            Conclusion::Trivial
        } else {
            return Err(Error::Hypothesis(alloc::format!("no case covers g = {g}")));
        };
        Ok(Certificate {
            subject,
            claimed,
            steps,
        })
    }

    fn torsion_source_step(&mut self, h: u64, steps: &mut Vec<Step>) {
        if h == 1 {
            steps.push(Step::cited(
                "periodic elements of Mod_1 = SL(2, Z) have order 1, 2, 3, 4 or 6",
                "torsion in SL(2, Z)",
            ));
        } else {
            steps.push(Step::cited(
                alloc::format!("an element of order n in Mod_{h} exists iff some branch datum (n, h', m_i) is admissible"),
                "Nielsen: periodic mapping classes are realized by cyclic actions; Harvey: conditions on cyclic branch data",
            ));
        }
    }

    pub(crate) fn subgroup_bound_citation(&self, h: u64) -> Step {
        if h == 1 {
            Step::cited(
                "finite subgroups of Mod_1 have order at most 6",
                "finite subgroups of SL(2, Z) are cyclic",
            )
        } else {
            Step::cited(
                alloc::format!(
                    "finite subgroups of Mod_{h} have order at most {}",
                    finite_subgroup_bound(h)
                ),
                "Hurwitz: 84(h-1) bound",
            )
        }
    }

    fn no_order_step(&mut self, h: u64, orders: &[u64], why: &str, steps: &mut Vec<Step>) {
        let c = self.census(h);
        let present: Vec<u64> = orders.iter().copied().filter(|&n| c.contains(n)).collect();
        steps.push(step(
            alloc::format!(
                "Mod_{h} has no element of order {}; {why}",
                fmt_orders(orders)
            ),
            "torsion census of Mod_h",
            &(
                present.is_empty(),
                alloc::format!("census({h}) realizes {:?} among {:?}", present, orders),
            ),
        ));
    }
}

/// The order of `phi(delta)` divides `4g + 2` and avoids `excluded`, so
/// some `delta^k` with `k <= 2g` lies in the kernel.
pub(crate) fn small_divisor_step(g: u64, excluded: &[u64], why: &str) -> Step {
    let n = 4 * g + 2;
    let allowed: Vec<u64> = (1..=n)
        .filter(|d| n.is_multiple_of(*d) && !excluded.contains(d))
        .collect();
    let ok = allowed.iter().all(|&d| d <= 2 * g);
    step(
        alloc::format!("phi(delta^k) = 1 for some 1 <= k <= {}", 2 * g),
        alloc::format!(
            "the order of phi(delta) divides {n} and is not {} ({why})",
            fmt_orders(excluded)
        ),
        &(
            ok,
            alloc::format!("admissible orders of phi(delta): {}", fmt_orders(&allowed)),
        ),
    )
}

/// One-off form of [`Certifier::certify_distinct_genera`].
pub fn certify_distinct_genera(g: u64, h: u64) -> Result<Certificate> {
    Certifier::new().certify_distinct_genera(g, h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certify::StepStatus;

    #[test]
    fn examples() {
        let mut c = Certifier::new();
        let cert = c.certify_distinct_genera(3, 2).unwrap();
        assert_eq!(cert.conclusion(), Conclusion::Trivial);
        assert!(cert
            .steps
            .iter()
            .any(|s| s.fact.contains("census(2) realizes [] among [7]")));
        assert_eq!(
            c.certify_distinct_genera(2, 1).unwrap().conclusion(),
            Conclusion::OrderAtMost2
        );
        let g4 = c.certify_distinct_genera(4, 3).unwrap();
        assert_eq!(g4.conclusion(), Conclusion::Trivial);
        assert!(g4
            .steps
            .iter()
            .any(|s| s.fact.contains("order(eta(gamma)) = 10")));
        assert!(g4.steps.iter().any(|s| s.claim.contains("5 > h+1")));
        assert!(c.certify_distinct_genera(3, 3).is_err());
    }

    #[test]
    fn large_genus_case() {
        let cert = certify_distinct_genera(7, 4).unwrap();
        assert_eq!(cert.conclusion(), Conclusion::Trivial);
        assert!(cert
            .steps
            .iter()
            .any(|s| s.citation.contains("A_n is simple")));
        assert!(
            cert.steps.iter().all(|s| s.status != StepStatus::Failed),
            "{cert}"
        );
    }
}
