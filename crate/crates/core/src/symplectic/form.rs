use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::{Error, Result};

/// The standard symplectic form on `Z^{2g}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SympForm {
    genus: usize,
    matrix: IntMatrix,
}

impl SympForm {
    pub fn new(genus: usize) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        let mut matrix = IntMatrix::zeros(2 * genus, 2 * genus);
        for i in 0..genus {
            matrix[(2 * i, 2 * i + 1)] = BigInt::one();
            matrix[(2 * i + 1, 2 * i)] = -BigInt::one();
        }
        Ok(SympForm { genus, matrix })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }
}

/// A homology class in `H_1(S; Z) = Z^{2g}`, coordinates over `(e1, f1, ..., eg, fg)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomClass {
    genus: usize,
    coords: Vec<BigInt>,
}

impl HomClass {
    pub fn new(genus: usize, coords: Vec<BigInt>) -> Result<Self> {
        if genus == 0 {
            return Err(Error::GenusTooSmall { min: 1, got: 0 });
        }
        if coords.len() != 2 * genus {
            return Err(Error::ShapeMismatch {
                expected: alloc::format!("{} coordinates", 2 * genus),
                got: alloc::format!("{} coordinates", coords.len()),
            });
        }
        Ok(HomClass { genus, coords })
    }

    pub fn from_i64(genus: usize, coords: &[i64]) -> Result<Self> {
        Self::new(genus, coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(genus: usize) -> Self {
        HomClass {
            genus,
            coords: alloc::vec![BigInt::zero(); 2 * genus],
        }
    }

    /// `e_i`, 1-based.
    pub fn e(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.coords[2 * (i - 1)] = BigInt::one();
        v
    }

    /// `f_i`, 1-based.
    pub fn f(genus: usize, i: usize) -> Self {
        let mut v = Self::zero(genus);
        v.coords[2 * (i - 1) + 1] = BigInt::one();
        v
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Nonzero with coprime coordinates.
    pub fn is_primitive(&self) -> bool {
        self.coords
            .iter()
            .fold(BigInt::zero(), |g, c| g.gcd(c))
            .is_one()
    }

    pub fn neg(&self) -> Self {
        HomClass {
            genus: self.genus,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_genus(self.genus, other.genus)?;
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HomClass {
            genus: self.genus,
            coords,
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Equal up to sign; unoriented curves only determine classes up to `±`.
    pub fn eq_up_to_sign(&self, other: &Self) -> bool {
        self == other || *self == other.neg()
    }

    /// `+1` if equal, `-1` if negated, `None` otherwise.
    pub fn sign_relative_to(&self, other: &Self) -> Option<i8> {
        if self == other {
            Some(1)
        } else if *self == other.neg() {
            Some(-1)
        } else {
            None
        }
    }

    /// The outer product `v v^T`.
    pub fn outer(&self) -> IntMatrix {
        let n = self.coords.len();
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = &self.coords[i] * &self.coords[j];
            }
        }
        m
    }

    /// Sign-normalized copy: first nonzero coordinate positive.
    pub fn normalized(&self) -> Self {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }
}

impl fmt::Debug for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "HomClass{:?}", self.coords)
    }
}

impl fmt::Display for HomClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let name = if k % 2 == 0 { 'e' } else { 'f' };
            let idx = k / 2 + 1;
            let mag = c.abs();
            let sign = if c.is_negative() {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            if mag.is_one() {
                write!(f, "{sign}{name}{idx}")?;
            } else {
                write!(f, "{sign}{mag}{name}{idx}")?;
            }
            first = false;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub(crate) fn check_genus(a: usize, b: usize) -> Result<()> {
    if a != b {
        Err(Error::GenusMismatch { left: a, right: b })
    } else {
        Ok(())
    }
}

/// Algebraic intersection `<u, v> = u^T J v`.
pub fn pairing(u: &HomClass, v: &HomClass) -> Result<BigInt> {
    check_genus(u.genus, v.genus)?;
    Ok(pairing_raw(&u.coords, &v.coords))
}

pub(crate) fn pairing_raw(u: &[BigInt], v: &[BigInt]) -> BigInt {
    let mut acc = BigInt::zero();
    for i in (0..u.len()).step_by(2) {
        acc += &u[i] * &v[i + 1];
        acc -= &u[i + 1] * &v[i];
    }
    acc
}
