use alloc::string::String;
use alloc::vec::Vec;

use num_traits::Zero;

use super::chain::pairing_abs;
use crate::symplectic::{integer_rank, pairing, transvection, HomClass, IntMatrix, SympMatrix};
use crate::{Error, Result};

/// Labelled homology classes with a declared `|pairing|` pattern.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveSystem {
    genus: usize,
    names: Vec<String>,
    classes: Vec<HomClass>,
    expected_pattern: IntMatrix,
    non_separating: bool,
}

impl CurveSystem {
    /// Checks shapes only; use [`CurveSystem::check`] for the pattern.
    pub fn new(
        genus: usize,
        names: Vec<String>,
        classes: Vec<HomClass>,
        expected_pattern: IntMatrix,
        non_separating: bool,
    ) -> Result<Self> {
        let k = classes.len();
        if names.len() != k {
            return Err(Error::CurveSystem(alloc::format!(
                "{} names for {k} classes",
                names.len()
            )));
        }
        if expected_pattern.shape() != (k, k) {
            return Err(Error::CurveSystem(alloc::format!(
                "pattern is {:?}, expected ({k}, {k})",
                expected_pattern.shape()
            )));
        }
        for c in &classes {
            if c.genus() != genus {
                return Err(Error::GenusMismatch {
                    left: genus,
                    right: c.genus(),
                });
            }
        }
        Ok(CurveSystem {
            genus,
            names,
            classes,
            expected_pattern,
            non_separating,
        })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn classes(&self) -> &[HomClass] {
        &self.classes
    }

    pub fn expected_pattern(&self) -> &IntMatrix {
        &self.expected_pattern
    }

    pub fn is_non_separating(&self) -> bool {
        self.non_separating
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Observed `|<v_i, v_j>|` matrix.
    pub fn observed_pattern(&self) -> IntMatrix {
        let k = self.len();
        let mut p = IntMatrix::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                p[(i, j)] = pairing_abs(&self.classes[i], &self.classes[j]).expect("same genus");
            }
        }
        p
    }

    /// Pattern matches and, for non-separating systems, every class is primitive.
    pub fn check(&self) -> Result<()> {
        let observed = self.observed_pattern();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if observed[(i, j)] != self.expected_pattern[(i, j)] {
                    return Err(Error::CurveSystem(alloc::format!(
                        "|<{}, {}>| = {}, expected {}",
                        self.names[i],
                        self.names[j],
                        observed[(i, j)],
                        self.expected_pattern[(i, j)]
                    )));
                }
            }
        }
        if self.non_separating {
            if let Some((name, _)) = self
                .names
                .iter()
                .zip(&self.classes)
                .find(|(_, c)| !c.is_primitive())
            {
                return Err(Error::CurveSystem(alloc::format!(
                    "{name} is not primitive"
                )));
            }
        }
        Ok(())
    }

    /// Classes pairwise distinct up to sign.
    pub fn distinct_up_to_sign(&self) -> bool {
        let k = self.len();
        (0..k).all(|i| (i + 1..k).all(|j| !self.classes[i].eq_up_to_sign(&self.classes[j])))
    }
}

/// `3g - 3` disjoint non-separating classes inside the Lagrangian span of
/// `e1 .. eg`: the `e_i`, then sums of two consecutive, then three.
pub fn pants_system(g: usize) -> Result<CurveSystem> {
    if g < 3 {
        return Err(Error::GenusTooSmall { min: 3, got: g });
    }
    let mut names = Vec::new();
    let mut classes = Vec::new();
    for width in 1..=3 {
        for start in 1..=g + 1 - width {
            let mut v = HomClass::zero(g);
            for i in start..start + width {
                v = v.add(&HomClass::e(g, i))?;
            }
            names.push(alloc::format!("c{}", classes.len() + 1));
            classes.push(v);
        }
    }
    let k = classes.len();
    let sys = CurveSystem::new(g, names, classes, IntMatrix::zeros(k, k), true)?;
    sys.check()?;
    Ok(sys)
}

fn check_commuting(sys: &CurveSystem) -> Result<()> {
    let cs = sys.classes();
    for i in 0..cs.len() {
        for j in i + 1..cs.len() {
            let p = pairing(&cs[i], &cs[j])?;
            if !p.is_zero() {
                return Err(Error::NonCommuting {
                    i,
                    j,
                    pairing: alloc::format!("{p}"),
                });
            }
        }
    }
    Ok(())
}

/// Rank of the free abelian group generated by the (commuting) twists of the
/// system, computed as the rank of the family `v_i v_i^T`.
///
/// For pairwise disjoint classes `prod t_i^{n_i}` acts as
/// `x -> x + sum n_i <x, v_i> v_i`, so the exponent map is injective exactly
/// on the complement of the kernel of `n -> sum n_i v_i v_i^T`.
pub fn twist_rank(sys: &CurveSystem) -> Result<usize> {
    check_commuting(sys)?;
    let tensors: Vec<IntMatrix> = sys.classes().iter().map(HomClass::outer).collect();
    integer_rank(&tensors)
}

/// `prod_i t_{v_i}^{n_i}` as a symplectic matrix.
pub fn twist_product(sys: &CurveSystem, exponents: &[i64]) -> Result<SympMatrix> {
    if exponents.len() != sys.len() {
        return Err(Error::ShapeMismatch {
            expected: alloc::format!("{} exponents", sys.len()),
            got: alloc::format!("{}", exponents.len()),
        });
    }
    sys.classes()
        .iter()
        .zip(exponents)
        .try_fold(SympMatrix::identity(sys.genus()), |acc, (v, &n)| {
            acc.mul(&transvection(v)?.pow(n))
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hc(g: usize, c: &[i64]) -> HomClass {
        HomClass::from_i64(g, c).unwrap()
    }

    #[test]
    fn genus_three_pants() {
        let s = pants_system(3).unwrap();
        let expected = [
            hc(3, &[1, 0, 0, 0, 0, 0]),
            hc(3, &[0, 0, 1, 0, 0, 0]),
            hc(3, &[0, 0, 0, 0, 1, 0]),
            hc(3, &[1, 0, 1, 0, 0, 0]),
            hc(3, &[0, 0, 1, 0, 1, 0]),
            hc(3, &[1, 0, 1, 0, 1, 0]),
        ];
        assert_eq!(s.classes(), &expected);
        assert!(s.observed_pattern().is_zero());
        assert!(s.distinct_up_to_sign());
        assert_eq!(twist_rank(&s).unwrap(), 6);
    }

    #[test]
    fn pants_sizes_and_ranks() {
        assert_eq!(pants_system(4).unwrap().len(), 9);
        assert_eq!(twist_rank(&pants_system(5).unwrap()).unwrap(), 12);
        assert!(pants_system(2).is_err());
    }

    #[test]
    fn repeated_class_has_rank_one() {
        let e = HomClass::e(1, 1);
        let s = CurveSystem::new(
            1,
            alloc::vec!["a".into(), "b".into()],
            alloc::vec![e.clone(), e.neg()],
            IntMatrix::zeros(2, 2),
            true,
        )
        .unwrap();
        assert_eq!(twist_rank(&s).unwrap(), 1);
    }

    #[test]
    fn non_commuting_rejected() {
        let s = CurveSystem::new(
            1,
            alloc::vec!["a".into(), "b".into()],
            alloc::vec![HomClass::e(1, 1), HomClass::f(1, 1)],
            IntMatrix::from_rows(&[[0, 1], [1, 0]]).unwrap(),
            true,
        )
        .unwrap();
        s.check().unwrap();
        assert!(matches!(
            twist_rank(&s),
            Err(Error::NonCommuting { i: 0, j: 1, .. })
        ));
    }

    #[test]
    fn pattern_violation_reported() {
        let s = CurveSystem::new(
            1,
            alloc::vec!["a".into(), "b".into()],
            alloc::vec![HomClass::e(1, 1), HomClass::f(1, 1)],
            IntMatrix::zeros(2, 2),
            true,
        )
        .unwrap();
        assert!(s.check().is_err());
        let bad = CurveSystem::new(
            1,
            alloc::vec!["a".into()],
            alloc::vec![hc(1, &[2, 0])],
            IntMatrix::zeros(1, 1),
            true,
        )
        .unwrap();
        assert!(bad.check().is_err());
    }

    #[test]
    fn twist_product_matches_linear_formula() {
        let s = pants_system(3).unwrap();
        let n = [1, -2, 0, 3, 1, -1];
        let m = twist_product(&s, &n).unwrap();
        // I - sum n_i v_i v_i^T J
        let j = crate::symplectic::SympForm::new(3).unwrap();
        let mut acc = IntMatrix::zeros(6, 6);
        for (v, &k) in s.classes().iter().zip(&n) {
            let t = v.outer().mul(j.matrix()).unwrap();
            for _ in 0..k.abs() {
                acc = if k > 0 {
                    acc.add(&t).unwrap()
                } else {
                    acc.add(&t.neg()).unwrap()
                };
            }
        }
        assert_eq!(m.matrix(), &IntMatrix::identity(6).add(&acc.neg()).unwrap());
    }
}
