use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::IntMatrix;
use crate::{Error, Result};

/// `U * A * V = D` with `D` diagonal and `d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

impl SnfResult {
    /// Diagonal of `D`, length `min(rows, cols)`, all non-negative.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let k = self.d.rows().min(self.d.cols());
        (0..k).map(|i| self.d[(i, i)].clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors()
            .iter()
            .filter(|d| !d.is_zero())
            .count()
    }
}

/// Smith normal form over `Z`.
///
/// Pivot rule: the nonzero entry of least absolute value in the remaining
/// block, ties broken by row-major position. Output is deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (rows, cols) = a.shape();
    let mut d = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);

    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = min_pivot(&d, t) else {
                return SnfResult { d, u, v };
            };
            d.swap_rows(t, pi);
            u.swap_rows(t, pi);
            d.swap_cols(t, pj);
            v.swap_cols(t, pj);

            let mut dirty = false;
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let q = -(&d[(i, t)] / &d[(t, t)]);
                d.add_row_multiple(i, t, &q);
                u.add_row_multiple(i, t, &q);
                dirty |= !d[(i, t)].is_zero();
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let q = -(&d[(t, j)] / &d[(t, t)]);
                d.add_col_multiple(j, t, &q);
                v.add_col_multiple(j, t, &q);
                dirty |= !d[(t, j)].is_zero();
            }
            if dirty {
                continue;
            }

            // Pivot isolated; enforce divisibility of the remaining block.
            let p = d[(t, t)].clone();
            let offender =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !(&d[(i, j)] % &p).is_zero()));
            match offender {
                Some(i) => {
                    let one = BigInt::from(1);
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SnfResult { d, u, v }
}

fn min_pivot(d: &IntMatrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    best.map(|(i, j, _)| (i, j))
}

/// Rank over `Q` of a family of equally shaped matrices, each flattened to a
/// row vector. Empty family has rank 0.
pub fn integer_rank(family: &[IntMatrix]) -> Result<usize> {
    let Some(first) = family.first() else {
        return Ok(0);
    };
    let shape = first.shape();
    let width = shape.0 * shape.1;
    let mut data = Vec::with_capacity(family.len() * width);
    for m in family {
        if m.shape() != shape {
            return Err(Error::ShapeMismatch {
                expected: alloc::format!("{shape:?}"),
                got: alloc::format!("{:?}", m.shape()),
            });
        }
        data.extend_from_slice(m.entries());
    }
    let stacked = IntMatrix::from_vec(family.len(), width, data)?;
    Ok(smith_normal_form(&stacked).rank())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symplectic::HomClass;
    use proptest::prelude::*;

    fn factors(rows: &[&[i64]]) -> Vec<i64> {
        let a = IntMatrix::from_rows(rows).unwrap();
        smith_normal_form(&a)
            .invariant_factors()
            .iter()
            .map(|d| i64::try_from(d).unwrap())
            .collect()
    }

    fn det(m: &IntMatrix) -> BigInt {
        // Bareiss elimination, exact.
        let n = m.rows();
        let mut a = m.clone();
        let mut sign = BigInt::from(1);
        let mut prev = BigInt::from(1);
        for k in 0..n {
            if a[(k, k)].is_zero() {
                let Some(r) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, r);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
            }
            prev = a[(k, k)].clone();
        }
        sign * &a[(n - 1, n - 1)]
    }

    #[test]
    fn hand_computed_examples() {
        assert_eq!(factors(&[&[2, 0], &[0, 3]]), [1, 6]);
        assert_eq!(factors(&[&[1, -1], &[6, 6]]), [1, 12]);
        assert_eq!(factors(&[&[0, 0, 0], &[0, 0, 0]]), [0, 0]);
    }

    #[test]
    fn rank_examples() {
        let e1 = HomClass::e(2, 1).outer();
        let e2 = HomClass::e(2, 2).outer();
        assert_eq!(integer_rank(&[e1.clone(), e2]).unwrap(), 2);
        assert_eq!(integer_rank(&[e1.clone(), e1]).unwrap(), 1);
        assert_eq!(integer_rank(&[]).unwrap(), 0);
    }

    #[test]
    fn rank_shape_mismatch() {
        let a = IntMatrix::zeros(2, 2);
        let b = IntMatrix::zeros(3, 3);
        assert!(integer_rank(&[a, b]).is_err());
    }

    proptest! {
        #[test]
        fn snf_reconstructs(rows in 1usize..5, cols in 1usize..5, seed in proptest::collection::vec(-9i64..=9, 16)) {
            let data: Vec<BigInt> = seed.iter().take(rows * cols).map(|&x| BigInt::from(x)).collect();
            let a = IntMatrix::from_vec(rows, cols, data).unwrap();
            let r = smith_normal_form(&a);
            prop_assert_eq!(r.u.mul(&a).unwrap().mul(&r.v).unwrap(), r.d.clone());
            prop_assert_eq!(det(&r.u).abs(), BigInt::from(1));
            prop_assert_eq!(det(&r.v).abs(), BigInt::from(1));
            for i in 0..rows {
                for j in 0..cols {
                    if i != j {
                        prop_assert!(r.d[(i, j)].is_zero());
                    }
                }
            }
            let f = r.invariant_factors();
            for w in f.windows(2) {
                prop_assert!(!w[0].is_negative());
                if w[0].is_zero() {
                    prop_assert!(w[1].is_zero());
                } else {
                    prop_assert!((&w[1] % &w[0]).is_zero());
                }
            }
        }
    }
}
