use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use crate::symplectic::SympMatrix;
use crate::{Error, Result};

/// A `2g x 2g` matrix over `Z/m`, entries always reduced to `[0, m)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    genus: usize,
    modulus: u32,
    entries: Vec<u32>,
}

pub(crate) fn check_modulus(m: u64) -> Result<u32> {
    if m < 2 {
        return Err(Error::BadModulus(m));
    }
    u32::try_from(m).map_err(|_| Error::OutOfRange(alloc::format!("modulus {m} exceeds 32 bits")))
}

/// Entrywise reduction `Sp(2g, Z) -> Sp(2g, Z/m)`.
pub fn reduce_mod(m: &SympMatrix, modulus: u64) -> Result<ModMatrix> {
    let q = check_modulus(modulus)?;
    let qb = BigInt::from(q);
    let entries = m
        .matrix()
        .entries()
        .iter()
        .map(|x| x.mod_floor(&qb).to_u32().expect("reduced below modulus"))
        .collect();
    Ok(ModMatrix {
        genus: m.genus(),
        modulus: q,
        entries,
    })
}

impl ModMatrix {
    pub fn identity(genus: usize, modulus: u64) -> Result<Self> {
        let q = check_modulus(modulus)?;
        let n = 2 * genus;
        let mut entries = alloc::vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Ok(ModMatrix {
            genus,
            modulus: q,
            entries,
        })
    }

    /// Reduces arbitrary integers; does not check the symplectic relation.
    pub fn from_entries(genus: usize, modulus: u64, entries: &[i64]) -> Result<Self> {
        let q = check_modulus(modulus)?;
        let n = 2 * genus;
        if entries.len() != n * n {
            return Err(Error::ShapeMismatch {
                expected: alloc::format!("{} entries", n * n),
                got: alloc::format!("{}", entries.len()),
            });
        }
        let entries = entries
            .iter()
            .map(|&x| x.rem_euclid(i64::from(q)) as u32)
            .collect();
        Ok(ModMatrix {
            genus,
            modulus: q,
            entries,
        })
    }

    pub(crate) fn from_raw(genus: usize, modulus: u32, entries: Vec<u32>) -> Self {
        ModMatrix {
            genus,
            modulus,
            entries,
        }
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim() + j]
    }

    pub fn is_identity(&self) -> bool {
        let n = self.dim();
        self.entries
            .iter()
            .enumerate()
            .all(|(k, &x)| x == u32::from(k / n == k % n))
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: other.genus,
            });
        }
        if self.modulus != other.modulus {
            return Err(Error::MixedGenerators);
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = alloc::vec![0; self.entries.len()];
        mul_into(
            &self.entries,
            &other.entries,
            self.dim(),
            self.modulus,
            &mut out,
        );
        Ok(ModMatrix {
            genus: self.genus,
            modulus: self.modulus,
            entries: out,
        })
    }

    /// `-J M^T J`, valid for symplectic `M`.
    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let q = self.modulus;
        let mut entries = alloc::vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let (pi, pj) = (i ^ 1, j ^ 1);
                let v = self.entries[pj * n + pi];
                // Same block signs as the integer inverse.
                let same = (i % 2) == (j % 2);
                entries[i * n + j] = if same || v == 0 { v } else { q - v };
            }
        }
        ModMatrix {
            genus: self.genus,
            modulus: q,
            entries,
        }
    }

    pub fn pow(&self, k: u64) -> Self {
        let mut acc =
            ModMatrix::identity(self.genus, u64::from(self.modulus)).expect("valid modulus");
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).expect("compatible");
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).expect("compatible");
            }
        }
        acc
    }

    /// `M^T J M = J (mod m)`.
    pub fn is_symplectic(&self) -> bool {
        let n = self.dim();
        let q = u64::from(self.modulus);
        let j = |a: usize, b: usize| -> u64 {
            if a.is_multiple_of(2) && b == a + 1 {
                1
            } else if a % 2 == 1 && b + 1 == a {
                q - 1
            } else {
                0
            }
        };
        for a in 0..n {
            for b in 0..n {
                let mut acc = 0u64;
                for r in 0..n {
                    let mra = u64::from(self.entries[r * n + a]);
                    if mra == 0 {
                        continue;
                    }
                    let rp = r ^ 1;
                    let jr = j(r, rp);
                    acc = (acc + mra * jr % q * u64::from(self.entries[rp * n + b])) % q;
                }
                if acc != j(a, b) {
                    return false;
                }
            }
        }
        true
    }
}

/// `out = a * b (mod q)` for row-major `n x n` matrices.
#[inline]
pub(crate) fn mul_into(a: &[u32], b: &[u32], n: usize, q: u32, out: &mut [u32]) {
    let q64 = u64::from(q);
    let wide = q > 1 << 16;
    for i in 0..n {
        let row = &a[i * n..(i + 1) * n];
        for j in 0..n {
            let mut acc = 0u64;
            for k in 0..n {
                let t = u64::from(row[k]) * u64::from(b[k * n + j]);
                acc += t;
                if wide {
                    acc %= q64;
                }
            }
            out[i * n + j] = (acc % q64) as u32;
        }
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        write!(f, "ModMatrix(mod {}, ", self.modulus)?;
        f.debug_list()
            .entries(self.entries.chunks(n.max(1)))
            .finish()?;
        f.write_str(")")
    }
}

impl fmt::Display for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.dim();
        for (i, row) in self.entries.chunks(n.max(1)).enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            f.write_str("[")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::chain;

    #[test]
    fn reduction_examples() {
        let g = 2;
        assert!(reduce_mod(&SympMatrix::minus_identity(g), 2)
            .unwrap()
            .is_identity());
        assert!(reduce_mod(&SympMatrix::identity(g), 7)
            .unwrap()
            .is_identity());
        let d = reduce_mod(chain(1).unwrap().delta(), 3).unwrap();
        assert_eq!(d.entries(), &[0, 2, 1, 1]);
        assert!(reduce_mod(&SympMatrix::identity(1), 1).is_err());
    }

    #[test]
    fn inverse_and_symplectic_mod_m() {
        for m in [2u64, 3, 5, 12] {
            let d = reduce_mod(chain(3).unwrap().delta(), m).unwrap();
            assert!(d.is_symplectic());
            assert!(d.mul(&d.inverse()).unwrap().is_identity());
            assert_eq!(
                d.inverse(),
                reduce_mod(&chain(3).unwrap().delta().inverse(), m).unwrap()
            );
        }
        let bad = ModMatrix::from_entries(1, 5, &[2, 0, 0, 1]).unwrap();
        assert!(!bad.is_symplectic());
    }

    #[test]
    fn pow_matches_integer_pow() {
        let delta = chain(2).unwrap().delta().clone();
        let d = reduce_mod(&delta, 3).unwrap();
        assert_eq!(d.pow(5), reduce_mod(&delta.pow(5), 3).unwrap());
        assert!(d.pow(10).is_identity());
    }
}
