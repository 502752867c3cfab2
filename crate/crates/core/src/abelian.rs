//! Abelianization of finitely presented groups by Smith normal form, and
//! the built-in presentations of `Mod_1` and `Mod_2`.

use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::symplectic::{smith_normal_form, IntMatrix};
use crate::{Error, Result};

/// Generators `1..=generator_count`; a word is a list of signed indices,
/// `-i` standing for the inverse of generator `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    generator_count: usize,
    relators: Vec<Vec<i64>>,
    dropped_empty: usize,
}

impl Presentation {
    /// Empty relators are dropped; `dropped_empty` reports how many.
    pub fn new(generator_count: usize, relators: Vec<Vec<i64>>) -> Result<Self> {
        for w in &relators {
            check_word(generator_count, w)?;
        }
        let before = relators.len();
        let relators: Vec<_> = relators.into_iter().filter(|w| !w.is_empty()).collect();
        let dropped_empty = before - relators.len();
        Ok(Presentation {
            generator_count,
            relators,
            dropped_empty,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Vec<i64>] {
        &self.relators
    }

    pub fn dropped_empty(&self) -> usize {
        self.dropped_empty
    }

    /// Exponent-sum vector of a word.
    pub fn exponent_sums(&self, word: &[i64]) -> Result<Vec<i64>> {
        check_word(self.generator_count, word)?;
        let mut v = alloc::vec![0; self.generator_count];
        for &x in word {
            v[x.unsigned_abs() as usize - 1] += x.signum();
        }
        Ok(v)
    }

    /// Relators as rows, generators as columns.
    pub fn relation_matrix(&self) -> Result<IntMatrix> {
        let data = self
            .relators
            .iter()
            .map(|w| self.exponent_sums(w))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .map(BigInt::from)
            .collect();
        IntMatrix::from_vec(self.relators.len(), self.generator_count, data)
    }
}

fn check_word(n: usize, w: &[i64]) -> Result<()> {
    match w.iter().find(|&&x| x == 0 || x.unsigned_abs() as usize > n) {
        Some(&x) => Err(Error::GeneratorOutOfRange { index: x, count: n }),
        None => Ok(()),
    }
}

/// `Z/d_1 + ... + Z/d_k + Z^free_rank` with `1 < d_1 | d_2 | ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    /// Group order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    pub fn is_cyclic(&self) -> bool {
        self.torsion.len() + self.free_rank <= 1
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<alloc::string::String> = self
            .torsion
            .iter()
            .map(|d| alloc::format!("Z/{d}"))
            .collect();
        parts.extend((0..self.free_rank).map(|_| "Z".into()));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// The abelianization together with the basis change needed to map words.
#[derive(Clone, Debug)]
pub struct Abelianization {
    invariants: AbelianInvariants,
    // One modulus per generator column of the SNF basis (0 = free, 1 = dead).
    moduli: Vec<BigInt>,
    v: IntMatrix,
    generator_count: usize,
}

/// Coordinates of an element, component `i` taken modulo `moduli[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianElement {
    pub moduli: Vec<BigInt>,
    pub coords: Vec<BigInt>,
}

impl AbelianElement {
    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Element order, `None` if infinite.
    pub fn order(&self) -> Option<BigInt> {
        let mut acc = BigInt::one();
        for (c, d) in self.coords.iter().zip(&self.moduli) {
            if c.is_zero() {
                continue;
            }
            if d.is_zero() {
                return None;
            }
            acc = acc.lcm(&(d / c.gcd(d)));
        }
        Some(acc)
    }
}

pub fn abelianize(p: &Presentation) -> Result<AbelianInvariants> {
    Ok(Abelianization::new(p)?.invariants)
}

impl Abelianization {
    pub fn new(p: &Presentation) -> Result<Self> {
        let n = p.generator_count;
        let snf = smith_normal_form(&p.relation_matrix()?);
        let diag = snf.invariant_factors();
        // Columns past the diagonal carry no relation.
        let moduli: Vec<BigInt> = (0..n)
            .map(|i| diag.get(i).cloned().unwrap_or_else(BigInt::zero))
            .collect();
        let invariants = AbelianInvariants {
            torsion: moduli
                .iter()
                .filter(|d| **d > BigInt::one())
                .cloned()
                .collect(),
            free_rank: moduli.iter().filter(|d| d.is_zero()).count(),
        };
        Ok(Abelianization {
            invariants,
            moduli,
            v: snf.v,
            generator_count: n,
        })
    }

    pub fn invariants(&self) -> &AbelianInvariants {
        &self.invariants
    }

    /// The class of `word`: its exponent-sum row times `V`, reduced.
    pub fn image(&self, word: &[i64]) -> Result<AbelianElement> {
        check_word(self.generator_count, word)?;
        let mut sums = alloc::vec![BigInt::zero(); self.generator_count];
        for &x in word {
            sums[x.unsigned_abs() as usize - 1] += x.signum();
        }
        let n = self.generator_count;
        let mut moduli = Vec::new();
        let mut coords = Vec::new();
        for j in 0..n {
            let d = &self.moduli[j];
            if d.is_one() {
                continue;
            }
            let mut c: BigInt = (0..n).map(|i| &sums[i] * &self.v[(i, j)]).sum();
            if !d.is_zero() {
                c = c.mod_floor(d);
            }
            moduli.push(d.clone());
            coords.push(c);
        }
        Ok(AbelianElement { moduli, coords })
    }
}

/// `Mod_1 = <x, y | xyx = yxy, (xy)^6>`.
pub fn mod1_presentation() -> Presentation {
    Presentation::new(
        2,
        alloc::vec![alloc::vec![1, 2, 1, -2, -1, -2], [1, 2].repeat(6)],
    )
    .expect("valid")
}

/// `Mod_2` on the chain twists `t1..t5`: braid and commutation relations,
/// `(t1 t2 t3 t4 t5)^6`, the hyperelliptic involution
/// `i = t1 t2 t3 t4 t5^2 t4 t3 t2 t1` squared, and `i` central.
pub fn mod2_presentation() -> Presentation {
    let mut rels: Vec<Vec<i64>> = Vec::new();
    for a in 1..=5i64 {
        for b in a + 1..=5 {
            if b == a + 1 {
                rels.push(alloc::vec![a, b, a, -b, -a, -b]);
            } else {
                rels.push(alloc::vec![a, b, -a, -b]);
            }
        }
    }
    rels.push([1, 2, 3, 4, 5].repeat(6));
    let inv: Vec<i64> = alloc::vec![1, 2, 3, 4, 5, 5, 4, 3, 2, 1];
    rels.push(inv.repeat(2));
    for t in 1..=5i64 {
        let mut w = inv.clone();
        w.push(t);
        w.extend(inv.iter().rev().map(|x| -x));
        w.push(-t);
        rels.push(w);
    }
    Presentation::new(5, rels).expect("valid")
}

/// Built-in presentation of `Mod_g` for `g` in `{1, 2}`.
pub fn mapping_class_presentation(g: usize) -> Result<Presentation> {
    match g {
        1 => Ok(mod1_presentation()),
        2 => Ok(mod2_presentation()),
        _ => Err(Error::OutOfRange(alloc::format!(
            "no built-in presentation for genus {g}"
        ))),
    }
}

/// `delta^k` as a word: `(t1 ... t_{2g})^k`.
pub fn delta_word(g: usize, k: usize) -> Vec<i64> {
    (1..=2 * g as i64).collect::<Vec<_>>().repeat(k)
}

/// `|H_1(Mod_g) / <[delta^k]>|` for `g` in `{1, 2}` and `1 <= k <= 2g`.
pub fn quotient_order_by_delta_power(g: usize, k: usize) -> Result<BigInt> {
    if !(1..=2 * g).contains(&k) {
        return Err(Error::OutOfRange(alloc::format!(
            "k = {k} outside 1..={}",
            2 * g
        )));
    }
    let ab = Abelianization::new(&mapping_class_presentation(g)?)?;
    let h1 = ab
        .invariants()
        .order()
        .ok_or_else(|| Error::CheckFailed("infinite abelianization".into()))?;
    let image = ab.image(&delta_word(g, k))?;
    let ord = image.order().expect("finite group");
    Ok(h1 / ord)
}
