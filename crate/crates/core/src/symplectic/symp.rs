use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::form::{check_genus, pairing_raw};
use super::{HomClass, IntMatrix, SympForm};
use crate::{Error, Result};

/// An element of `Sp(2g, Z)`: `M^T J M = J`.
///
/// The product `a.mul(b)` is the composite "apply `b` first, then `a`", the
/// same convention as composition of mapping classes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SympMatrix {
    genus: usize,
    m: IntMatrix,
}

/// Result of a capped order search.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    ExceedsCap(u64),
}

impl Order {
    pub fn finite(self) -> Option<u64> {
        match self {
            Order::Finite(n) => Some(n),
            Order::ExceedsCap(_) => None,
        }
    }
}

impl fmt::Display for Order {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Order::Finite(n) => write!(f, "{n}"),
            Order::ExceedsCap(c) => write!(f, "> {c}"),
        }
    }
}

impl SympMatrix {
    pub fn identity(genus: usize) -> Self {
        SympMatrix {
            genus,
            m: IntMatrix::identity(2 * genus),
        }
    }

    pub fn minus_identity(genus: usize) -> Self {
        SympMatrix {
            genus,
            m: IntMatrix::identity(2 * genus).neg(),
        }
    }

    /// Validates `M^T J M = J` before wrapping.
    pub fn new(genus: usize, m: IntMatrix) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        if m.shape() != (2 * genus, 2 * genus) {
            return Err(Error::ShapeMismatch {
                expected: alloc::format!("({0}, {0})", 2 * genus),
                got: alloc::format!("{:?}", m.shape()),
            });
        }
        let j = SympForm::new(genus)?;
        let lhs = m.transpose().mul(j.matrix())?.mul(&m)?;
        if &lhs != j.matrix() {
            return Err(Error::NotSymplectic);
        }
        Ok(SympMatrix { genus, m })
    }

    pub(crate) fn new_unchecked(genus: usize, m: IntMatrix) -> Self {
        debug_assert_eq!(m.shape(), (2 * genus, 2 * genus));
        SympMatrix { genus, m }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.m
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.m
    }

    pub fn is_identity(&self) -> bool {
        self.m.is_identity()
    }

    pub fn is_minus_identity(&self) -> bool {
        *self == Self::minus_identity(self.genus)
    }

    pub fn is_symplectic(&self) -> bool {
        SympMatrix::new(self.genus, self.m.clone()).is_ok()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        Ok(SympMatrix {
            genus: self.genus,
            m: self.m.mul(&other.m)?,
        })
    }

    /// `M^{-1} = -J M^T J` for symplectic `M`.
    pub fn inverse(&self) -> Self {
        let n = 2 * self.genus;
        let mut inv = IntMatrix::zeros(n, n);
        // J only pairs each index with its block partner, so
        // (M^{-1})_{ij} = s_i s_j M_{p(j), p(i)}.
        for i in 0..n {
            for j in 0..n {
                let (pi, si) = partner(i);
                let (pj, sj) = partner(j);
                let v = &self.m[(pj, pi)];
                inv[(i, j)] = if si * sj > 0 { v.clone() } else { -v };
            }
        }
        SympMatrix {
            genus: self.genus,
            m: inv,
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = Self::identity(self.genus);
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq).expect("same genus");
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq).expect("same genus");
            }
        }
        acc
    }

    pub fn apply(&self, v: &HomClass) -> Result<HomClass> {
        check_genus(self.genus, v.genus())?;
        HomClass::new(self.genus, self.m.apply(v.coords())?)
    }

    /// Least `n <= cap` with `A^n = I`.
    pub fn order(&self, cap: u64) -> Result<Order> {
        if cap == 0 {
            return Err(Error::OutOfRange("order cap must be at least 1".into()));
        }
        let mut p = self.clone();
        for n in 1..=cap {
            if p.is_identity() {
                return Ok(Order::Finite(n));
            }
            if n < cap {
                p = p.mul(self)?;
            }
        }
        Ok(Order::ExceedsCap(cap))
    }

    pub fn trace(&self) -> BigInt {
        (0..2 * self.genus).map(|i| self.m[(i, i)].clone()).sum()
    }
}

/// Block partner of a basis index and the sign of `J[i][partner]`.
fn partner(i: usize) -> (usize, i32) {
    if i.is_multiple_of(2) {
        (i + 1, 1)
    } else {
        (i - 1, -1)
    }
}

impl fmt::Debug for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SympMatrix(g={}, {:?})", self.genus, self.m)
    }
}

impl fmt::Display for SympMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.m, f)
    }
}

/// The homology action of a right Dehn twist about a curve of class `v`:
/// `x -> x + <x, v> v`.
pub fn transvection(v: &HomClass) -> Result<SympMatrix> {
    if v.is_zero() {
        return Err(Error::ZeroVector);
    }
    let g = v.genus();
    let n = 2 * g;
    let coords = v.coords();
    let mut m = IntMatrix::identity(n);
    for j in 0..n {
        // <e_j, v> is read off the j-th row of J.
        let mut ej = alloc::vec![BigInt::zero(); n];
        ej[j] = BigInt::one();
        let c = pairing_raw(&ej, coords);
        if c.is_zero() {
            continue;
        }
        for i in 0..n {
            m[(i, j)] += &c * &coords[i];
        }
    }
    Ok(SympMatrix::new_unchecked(g, m))
}
