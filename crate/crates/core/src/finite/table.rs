use alloc::vec::Vec;
use core::hash::BuildHasher;

use hashbrown::HashTable;
use rustc_hash::FxBuildHasher;

use super::modmat::{mul_into, ModMatrix};
use crate::{Error, Result};

/// A finite matrix group stored as fixed-width keys in one byte arena.
///
/// Element `i` occupies `arena[i*stride..(i+1)*stride]`; the hash table holds
/// indices into the arena. Insertion order is the breadth-first discovery
/// order, which is deterministic for a given generator list.
pub struct GroupTable {
    genus: usize,
    modulus: u32,
    width: usize,
    // Modulus 2 with at most 64 entries: keys are bit-packed `u64`s.
    packed: bool,
    stride: usize,
    generators: Vec<ModMatrix>,
    // Generators followed by their inverses, duplicates removed.
    steps: Vec<Vec<u32>>,
    arena: Vec<u8>,
    index: HashTable<u32>,
    hasher: FxBuildHasher,
}

/// The group generated by `generators` (closed under inverses), with at most
/// `cap` elements.
pub fn enumerate_group(generators: &[ModMatrix], cap: usize) -> Result<GroupTable> {
    let first = generators.first().ok_or(Error::MixedGenerators)?;
    let mut table = GroupTable::trivial(first.genus(), u64::from(first.modulus()))?;
    table.add_generators(generators, cap)?;
    Ok(table)
}

impl GroupTable {
    /// The trivial group `{I}`.
    pub fn trivial(genus: usize, modulus: u64) -> Result<Self> {
        let id = ModMatrix::identity(genus, modulus)?;
        let q = id.modulus();
        let width = if q <= 1 << 8 {
            1
        } else if q <= 1 << 16 {
            2
        } else {
            4
        };
        let n = 2 * genus;
        let packed = q == 2 && n * n <= 64;
        let mut t = GroupTable {
            genus,
            modulus: q,
            width,
            packed,
            stride: if packed { 8 } else { width * n * n },
            generators: Vec::new(),
            steps: Vec::new(),
            arena: Vec::new(),
            index: HashTable::new(),
            hasher: FxBuildHasher,
        };
        let mut key = alloc::vec![0u8; t.stride];
        t.encode(id.entries(), &mut key);
        t.insert(&key);
        Ok(t)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.index.len()
    }

    /// Never true: the identity is always present.
    pub fn is_empty(&self) -> bool {
        self.index.is_empty()
    }

    pub fn generators(&self) -> &[ModMatrix] {
        &self.generators
    }

    /// Bytes held by the element arena.
    pub fn arena_bytes(&self) -> usize {
        self.arena.len()
    }

    fn check(&self, m: &ModMatrix) -> Result<()> {
        if m.genus() != self.genus {
            return Err(Error::GenusMismatch {
                left: self.genus,
                right: m.genus(),
            });
        }
        if m.modulus() != self.modulus {
            return Err(Error::MixedGenerators);
        }
        Ok(())
    }

    pub fn contains(&self, m: &ModMatrix) -> bool {
        if self.check(m).is_err() {
            return false;
        }
        let mut key = alloc::vec![0u8; self.stride];
        self.encode(m.entries(), &mut key);
        self.find(&key).is_some()
    }

    /// Position of `m` in discovery order.
    pub fn position(&self, m: &ModMatrix) -> Option<usize> {
        if self.check(m).is_err() {
            return None;
        }
        let mut key = alloc::vec![0u8; self.stride];
        self.encode(m.entries(), &mut key);
        self.find(&key)
    }

    pub fn element(&self, i: usize) -> ModMatrix {
        let n = 2 * self.genus;
        let mut e = alloc::vec![0u32; n * n];
        self.decode(i, &mut e);
        ModMatrix::from_raw(self.genus, self.modulus, e)
    }

    pub fn iter(&self) -> impl Iterator<Item = ModMatrix> + '_ {
        (0..self.len()).map(|i| self.element(i))
    }

    /// Element keys in sorted order; equal for equal sets regardless of how
    /// the set was generated.
    pub fn canonical_keys(&self) -> Vec<&[u8]> {
        let mut keys: Vec<&[u8]> = self.arena.chunks(self.stride).collect();
        keys.sort_unstable();
        keys
    }

    /// Adds generators one at a time, extending the current group.
    pub fn add_generators(&mut self, gens: &[ModMatrix], cap: usize) -> Result<()> {
        for g in gens {
            self.add_generator(g, cap)?;
        }
        Ok(())
    }

    /// Extends the table to the group generated by the current generators and
    /// `g`. Old elements are multiplied by the new steps only; newly found
    /// elements are multiplied by every step.
    pub fn add_generator(&mut self, g: &ModMatrix, cap: usize) -> Result<()> {
        self.check(g)?;
        self.generators.push(g.clone());
        let mut fresh = Vec::new();
        for s in [g.entries().to_vec(), g.inverse().entries().to_vec()] {
            if !self.steps.contains(&s) && !fresh.contains(&s) {
                fresh.push(s);
            }
        }
        if fresh.is_empty() {
            return Ok(());
        }
        let old = self.len();
        self.steps.extend(fresh.iter().cloned());
        self.expand(0, Some(old), &fresh, cap)?;
        let all = self.steps.clone();
        self.expand(old, None, &all, cap)
    }

    fn hash(&self, key: &[u8]) -> u64 {
        self.hasher.hash_one(key)
    }

    fn find(&self, key: &[u8]) -> Option<usize> {
        let h = self.hash(key);
        let (arena, stride) = (&self.arena, self.stride);
        self.index
            .find(h, |&i| {
                &arena[i as usize * stride..(i as usize + 1) * stride] == key
            })
            .map(|&i| i as usize)
    }

    /// Inserts `key` if absent; returns whether it was new.
    fn insert(&mut self, key: &[u8]) -> bool {
        let h = self.hash(key);
        let stride = self.stride;
        let hasher = &self.hasher;
        let arena = &mut self.arena;
        let next = (arena.len() / stride) as u32;
        let entry = self.index.entry(
            h,
            |&i| &arena[i as usize * stride..(i as usize + 1) * stride] == key,
            |&i| hasher.hash_one(&arena[i as usize * stride..(i as usize + 1) * stride]),
        );
        match entry {
            hashbrown::hash_table::Entry::Occupied(_) => false,
            hashbrown::hash_table::Entry::Vacant(v) => {
                v.insert(next);
                arena.extend_from_slice(key);
                true
            }
        }
    }

    fn encode(&self, entries: &[u32], out: &mut [u8]) {
        if self.packed {
            out.copy_from_slice(&pack_bits(entries).to_le_bytes());
        } else {
            encode(self.width, entries, out);
        }
    }

    fn decode(&self, i: usize, out: &mut [u32]) {
        let key = &self.arena[i * self.stride..(i + 1) * self.stride];
        if self.packed {
            let bits = u64::from_le_bytes(key.try_into().expect("8-byte key"));
            for (k, o) in out.iter_mut().enumerate() {
                *o = ((bits >> k) & 1) as u32;
            }
        } else {
            decode(self.width, key, out);
        }
    }

    fn cap_error(&self, cap: usize) -> Error {
        Error::CapExceeded {
            cap,
            attained: self.len(),
        }
    }

    /// Appends to `out` the keys of `s * x` for every step `s`, where `x` is
    /// element `i`. With `skip_known`, products already in the table are
    /// left out.
    fn products(
        &self,
        i: usize,
        steps: &[Vec<u32>],
        scratch: &mut Scratch,
        skip_known: bool,
        out: &mut Vec<u8>,
    ) {
        let n = 2 * self.genus;
        if self.packed {
            let key = &self.arena[i * self.stride..(i + 1) * self.stride];
            let x = u64::from_le_bytes(key.try_into().expect("8-byte key"));
            for s in &scratch.packed_steps {
                let y = mul_bits(*s, x, n).to_le_bytes();
                if !(skip_known && self.find(&y).is_some()) {
                    out.extend_from_slice(&y);
                }
            }
            return;
        }
        self.decode(i, &mut scratch.x);
        for s in steps {
            mul_into(s, &scratch.x, n, self.modulus, &mut scratch.y);
            let at = out.len();
            out.resize(at + self.stride, 0);
            self.encode(&scratch.y, &mut out[at..]);
            if skip_known && self.find(&out[at..]).is_some() {
                out.truncate(at);
            }
        }
    }

    fn scratch(&self, steps: &[Vec<u32>]) -> Scratch {
        let n = 2 * self.genus;
        Scratch {
            x: alloc::vec![0; n * n],
            y: alloc::vec![0; n * n],
            packed_steps: if self.packed {
                steps.iter().map(|s| pack_bits(s)).collect()
            } else {
                Vec::new()
            },
        }
    }

    /// Processes elements `start..end` (or until exhausted when `end` is
    /// `None`), left-multiplying each by every matrix in `steps`.
    #[cfg(not(feature = "parallel"))]
    fn expand(
        &mut self,
        start: usize,
        end: Option<usize>,
        steps: &[Vec<u32>],
        cap: usize,
    ) -> Result<()> {
        let mut scratch = self.scratch(steps);
        let mut buf = Vec::new();
        let mut i = start;
        while i < end.unwrap_or(self.len()) {
            buf.clear();
            self.products(i, steps, &mut scratch, false, &mut buf);
            for key in buf.chunks(self.stride) {
                if self.insert(key) && self.len() > cap {
                    return Err(self.cap_error(cap));
                }
            }
            i += 1;
        }
        Ok(())
    }

    /// Layered variant: products for a slice of the frontier are computed in
    /// parallel, then inserted sequentially in the order the serial loop
    /// would use, so the table is identical.
    #[cfg(feature = "parallel")]
    fn expand(
        &mut self,
        start: usize,
        end: Option<usize>,
        steps: &[Vec<u32>],
        cap: usize,
    ) -> Result<()> {
        use rayon::prelude::*;
        const BLOCK: usize = 1 << 10;
        const LAYER: usize = 1 << 16;
        let mut i = start;
        loop {
            let stop = end.unwrap_or(self.len()).min(i + LAYER);
            if i >= stop {
                return Ok(());
            }
            let this = &*self;
            let blocks: Vec<Vec<u8>> = (i..stop)
                .step_by(BLOCK)
                .collect::<Vec<_>>()
                .into_par_iter()
                .map(|b| {
                    let mut scratch = this.scratch(steps);
                    let mut out = Vec::new();
                    for k in b..(b + BLOCK).min(stop) {
                        this.products(k, steps, &mut scratch, true, &mut out);
                    }
                    out
                })
                .collect();
            for block in &blocks {
                for key in block.chunks(self.stride) {
                    if self.insert(key) && self.len() > cap {
                        return Err(self.cap_error(cap));
                    }
                }
            }
            i = stop;
        }
    }
}

struct Scratch {
    x: Vec<u32>,
    y: Vec<u32>,
    packed_steps: Vec<u64>,
}

/// Row-major bit packing of a 0/1 matrix with at most 64 entries.
fn pack_bits(entries: &[u32]) -> u64 {
    entries
        .iter()
        .enumerate()
        .fold(0, |acc, (k, &e)| acc | (u64::from(e & 1) << k))
}

/// Product over `F_2` of bit-packed `n x n` matrices: row `i` of `a * b` is
/// the XOR of the rows of `b` selected by row `i` of `a`.
#[inline]
fn mul_bits(a: u64, b: u64, n: usize) -> u64 {
    let mask = (1u64 << n) - 1;
    let mut out = 0;
    for i in 0..n {
        let mut row_a = (a >> (i * n)) & mask;
        let mut acc = 0;
        while row_a != 0 {
            let k = row_a.trailing_zeros() as usize;
            acc ^= (b >> (k * n)) & mask;
            row_a &= row_a - 1;
        }
        out |= acc << (i * n);
    }
    out
}

fn encode(width: usize, entries: &[u32], out: &mut [u8]) {
    match width {
        1 => {
            for (o, &e) in out.iter_mut().zip(entries) {
                *o = e as u8;
            }
        }
        2 => {
            for (o, &e) in out.chunks_exact_mut(2).zip(entries) {
                o.copy_from_slice(&(e as u16).to_le_bytes());
            }
        }
        _ => {
            for (o, &e) in out.chunks_exact_mut(4).zip(entries) {
                o.copy_from_slice(&e.to_le_bytes());
            }
        }
    }
}

fn decode(width: usize, key: &[u8], out: &mut [u32]) {
    match width {
        1 => {
            for (o, &b) in out.iter_mut().zip(key) {
                *o = u32::from(b);
            }
        }
        2 => {
            for (o, c) in out.iter_mut().zip(key.chunks_exact(2)) {
                *o = u32::from(u16::from_le_bytes([c[0], c[1]]));
            }
        }
        _ => {
            for (o, c) in out.iter_mut().zip(key.chunks_exact(4)) {
                *o = u32::from_le_bytes([c[0], c[1], c[2], c[3]]);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::chain;
    use crate::finite::reduce_mod;

    fn gens(g: usize, m: u64) -> Vec<ModMatrix> {
        chain(g)
            .unwrap()
            .generating_twists()
            .unwrap()
            .iter()
            .map(|t| reduce_mod(t, m).unwrap())
            .collect()
    }

    #[test]
    fn small_symplectic_groups() {
        assert_eq!(enumerate_group(&gens(1, 2), 100).unwrap().len(), 6);
        assert_eq!(enumerate_group(&gens(1, 3), 100).unwrap().len(), 24);
        assert_eq!(enumerate_group(&gens(1, 5), 1000).unwrap().len(), 120);
        assert_eq!(enumerate_group(&gens(2, 2), 1000).unwrap().len(), 720);
    }

    #[test]
    fn packed_product_matches_dense() {
        let g = gens(3, 2);
        let (a, b) = (
            g[0].mul(&g[3]).unwrap(),
            g[5].mul(&g[1]).unwrap().mul(&g[2]).unwrap(),
        );
        let ab = a.mul(&b).unwrap();
        assert_eq!(
            mul_bits(pack_bits(a.entries()), pack_bits(b.entries()), 6),
            pack_bits(ab.entries())
        );
    }

    #[test]
    fn cap_is_enforced() {
        match enumerate_group(&gens(2, 2), 100) {
            Err(Error::CapExceeded { cap: 100, attained }) => assert!(attained > 100),
            other => panic!("unexpected {:?}", other.map(|t| t.len())),
        }
    }

    #[test]
    fn wide_moduli_roundtrip() {
        for m in [257u64, 70_000] {
            let g = gens(1, m);
            let mut t = GroupTable::trivial(1, m).unwrap();
            t.add_generator(&g[0], 1_000_000).unwrap();
            // A transvection mod m has order m.
            assert_eq!(t.len() as u64, m);
            assert!(t.contains(&g[0].pow(m - 1)));
            assert_eq!(t.element(t.position(&g[0]).unwrap()), g[0]);
        }
    }

    #[test]
    fn order_independent_contents() {
        let g = gens(2, 2);
        let a = enumerate_group(&g, 1000).unwrap();
        let mut rev = g.clone();
        rev.reverse();
        let b = enumerate_group(&rev, 1000).unwrap();
        assert_eq!(a.canonical_keys(), b.canonical_keys());
    }
}
