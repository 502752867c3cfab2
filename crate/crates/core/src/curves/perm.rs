use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::symplectic::{IntMatrix, SympMatrix};
use crate::{Error, Result};

/// A permutation of `{0, ..., n-1}`, stored as its list of images.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::InvalidPermutation(alloc::format!("{images:?}")));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// The cycle `0 -> 1 -> ... -> len-1 -> 0` on `n` points.
    pub fn cycle(n: usize, len: usize) -> Result<Self> {
        if len > n {
            return Err(Error::InvalidPermutation(alloc::format!(
                "cycle of length {len} on {n} points"
            )));
        }
        Ok(Permutation(
            (0..n)
                .map(|i| if i < len { (i + 1) % len } else { i })
                .collect(),
        ))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    /// `self ∘ other`: `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.len() != other.len() {
            return Err(Error::InvalidPermutation("degree mismatch".into()));
        }
        Ok(Permutation(other.0.iter().map(|&i| self.0[i]).collect()))
    }

    pub fn inverse(&self) -> Self {
        let mut inv = alloc::vec![0; self.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        let mut seen = alloc::vec![false; self.len()];
        let mut out = Vec::new();
        for start in 0..self.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = self.0[i];
                len += 1;
            }
            out.push(len);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycle_lengths().iter().map(|&l| l - 1).sum::<usize>() % 2 == 0
    }

    /// Order as lcm of cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycle_lengths()
            .iter()
            .fold(1u64, |acc, &l| num_integer::lcm(acc, l as u64))
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.0)
    }
}

/// The symplectic matrix sending the hyperbolic pair `(e_i, f_i)` to
/// `(e_{σ(i)}, f_{σ(i)})`. A homomorphism from the symmetric group.
pub fn perm_embedding(sigma: &Permutation) -> Result<SympMatrix> {
    let g = sigma.len();
    if g == 0 {
        return Err(Error::GenusTooSmall { min: 1, got: 0 });
    }
    let mut m = IntMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        let j = sigma.apply(i);
        m[(2 * j, 2 * i)] = BigInt::one();
        m[(2 * j + 1, 2 * i + 1)] = BigInt::one();
    }
    SympMatrix::new(g, m)
}

/// Recovers `σ` from a block permutation matrix, if it is one.
pub fn block_permutation(m: &SympMatrix) -> Option<Permutation> {
    let g = m.genus();
    let a = m.matrix();
    let mut images = Vec::with_capacity(g);
    for i in 0..g {
        let col_e: Vec<usize> = (0..2 * g).filter(|&r| !a[(r, 2 * i)].is_zero()).collect();
        let [r] = col_e[..] else { return None };
        if r % 2 != 0 || !a[(r, 2 * i)].is_one() || !a[(r + 1, 2 * i + 1)].is_one() {
            return None;
        }
        if (0..2 * g).filter(|&s| !a[(s, 2 * i + 1)].is_zero()).count() != 1 {
            return None;
        }
        images.push(r / 2);
    }
    Permutation::new(images).ok()
}

/// Rotation cyclically permuting all `g` handles.
pub fn rotation_r1(g: usize) -> Result<SympMatrix> {
    if g < 3 {
        return Err(Error::GenusTooSmall { min: 3, got: g });
    }
    perm_embedding(&Permutation::cycle(g, g)?)
}

/// Rotation cyclically permuting handles `1..g-1` and fixing handle `g`.
pub fn rotation_r2(g: usize) -> Result<SympMatrix> {
    if g < 3 {
        return Err(Error::GenusTooSmall { min: 3, got: g });
    }
    perm_embedding(&Permutation::cycle(g, g - 1)?)
}
