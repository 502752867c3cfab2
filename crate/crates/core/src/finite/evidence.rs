use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::closure::{normal_closure_in, NormalClosure};
use super::modmat::{reduce_mod, ModMatrix};
use super::table::{enumerate_group, GroupTable};
use crate::curves::{chain, ChainData};
use crate::symplectic::transvection;
use crate::{Error, Result};

/// Which element of `Sp(2g, Z)` to reduce and close.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeedKind {
    /// `delta^k` for the chain product `delta`.
    DeltaPower(u32),
    /// `delta^(2g+1)`, the hyperelliptic involution (`-I`).
    Hyperelliptic,
    /// `T(v1)^-1 T(v2)` for adjacent chain curves; its normal closure in
    /// `Mod_g` is the commutator subgroup.
    TwistRatio,
}

impl fmt::Display for SeedKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SeedKind::DeltaPower(k) => write!(f, "delta^{k}"),
            SeedKind::Hyperelliptic => f.write_str("hyperelliptic"),
            SeedKind::TwistRatio => f.write_str("twist-ratio"),
        }
    }
}

impl core::str::FromStr for SeedKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hyperelliptic" => Ok(SeedKind::Hyperelliptic),
            "twist-ratio" | "lemma2" => Ok(SeedKind::TwistRatio),
            _ => s
                .strip_prefix("delta^")
                .and_then(|k| k.parse::<u32>().ok())
                .filter(|&k| k > 0)
                .map(SeedKind::DeltaPower)
                .ok_or_else(|| Error::OutOfRange(alloc::format!("unknown seed {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureRecord {
    pub seed: SeedKind,
    pub closure_size: usize,
    pub ambient_size: usize,
    pub index: usize,
}

/// Finite-quotient evidence for one `(g, m)`. These are facts about
/// `Sp(2g, Z/m)`, not about `Mod_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EvidenceReport {
    pub genus: usize,
    pub modulus: u32,
    pub ambient_size: usize,
    pub records: Vec<ClosureRecord>,
}

impl EvidenceReport {
    pub fn record(&self, seed: SeedKind) -> Option<&ClosureRecord> {
        self.records.iter().find(|r| r.seed == seed)
    }
}

/// Reduced chain twists `t0..t2g` (or `t1, t2` in genus 1).
pub fn ambient_generators(g: usize, modulus: u64) -> Result<Vec<ModMatrix>> {
    let data = chain(g)?;
    data.generating_twists()?
        .iter()
        .map(|t| reduce_mod(t, modulus))
        .collect()
}

fn seed_from(data: &ChainData, seed: SeedKind, modulus: u64) -> Result<ModMatrix> {
    let g = data.genus();
    let m = match seed {
        SeedKind::DeltaPower(k) => data.delta().pow(i64::from(k)),
        SeedKind::Hyperelliptic => data.delta().pow(2 * g as i64 + 1),
        SeedKind::TwistRatio => transvection(data.class(1))?
            .inverse()
            .mul(&transvection(data.class(2))?)?,
    };
    reduce_mod(&m, modulus)
}

/// The reduced seed element in genus `g`.
pub fn seed_element(g: usize, modulus: u64, seed: SeedKind) -> Result<ModMatrix> {
    seed_from(&chain(g)?, seed, modulus)
}

/// Normal closure of one seed in `Sp(2g, Z/m)`.
pub fn closure_for_seed(
    g: usize,
    modulus: u64,
    seed: SeedKind,
    cap: usize,
) -> Result<(GroupTable, NormalClosure)> {
    let ambient = enumerate_group(&ambient_generators(g, modulus)?, cap)?;
    let s = seed_element(g, modulus, seed)?;
    let c = normal_closure_in(&ambient, &s, cap)?;
    Ok((ambient, c))
}

/// Closures of `delta^k` for `k = 1..=max_k`, of the hyperelliptic
/// involution, and of the twist ratio, all in one ambient table.
pub fn closure_evidence_suite(
    g: usize,
    modulus: u64,
    max_k: u32,
    cap: usize,
) -> Result<EvidenceReport> {
    let data = chain(g)?;
    let gens: Vec<ModMatrix> = data
        .generating_twists()?
        .iter()
        .map(|t| reduce_mod(t, modulus))
        .collect::<Result<_>>()?;
    let ambient = enumerate_group(&gens, cap)?;
    let seeds = (1..=max_k)
        .map(SeedKind::DeltaPower)
        .chain([SeedKind::Hyperelliptic, SeedKind::TwistRatio]);
    let mut records = Vec::new();
    for seed in seeds {
        let s = seed_from(&data, seed, modulus)?;
        let c = normal_closure_in(&ambient, &s, cap)?;
        records.push(ClosureRecord {
            seed,
            closure_size: c.subgroup.len(),
            ambient_size: c.ambient_size,
            index: c.index,
        });
    }
    Ok(EvidenceReport {
        genus: g,
        modulus: ambient.modulus(),
        ambient_size: ambient.len(),
        records,
    })
}

impl fmt::Display for EvidenceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "genus = {}", self.genus)?;
        writeln!(f, "modulus = {}", self.modulus)?;
        writeln!(f, "ambient_size = {}", self.ambient_size)?;
        for r in &self.records {
            let line: String = alloc::format!(
                "seed = {}  closure_size = {}  index = {}",
                r.seed,
                r.closure_size,
                r.index
            );
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn seed_parsing() {
        assert_eq!(
            "delta^3".parse::<SeedKind>().unwrap(),
            SeedKind::DeltaPower(3)
        );
        assert_eq!("lemma2".parse::<SeedKind>().unwrap(), SeedKind::TwistRatio);
        assert!("delta^0".parse::<SeedKind>().is_err());
        assert!("delta".parse::<SeedKind>().is_err());
        assert_eq!(SeedKind::DeltaPower(4).to_string(), "delta^4");
    }

    #[test]
    fn genus_two_mod_three() {
        let r = closure_evidence_suite(2, 3, 5, 100_000).unwrap();
        assert_eq!(r.ambient_size, 51840);
        let h = r.record(SeedKind::Hyperelliptic).unwrap();
        assert_eq!((h.closure_size, h.index), (2, 25920));
        assert_eq!(r.record(SeedKind::DeltaPower(5)).unwrap().index, 25920);
    }

    #[test]
    fn genus_two_mod_two() {
        let r = closure_evidence_suite(2, 2, 5, 100_000).unwrap();
        assert_eq!(r.ambient_size, 720);
        // delta^5 = -I vanishes mod 2.
        assert_eq!(r.record(SeedKind::Hyperelliptic).unwrap().closure_size, 1);
        // Sp(4,2) is S6; the twist ratio is even, so its closure is A6.
        assert_eq!(r.record(SeedKind::TwistRatio).unwrap().index, 2);
    }
}
