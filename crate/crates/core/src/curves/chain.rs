use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::CurveSystem;
use crate::symplectic::{
    integer_rank, pairing, transvection, HomClass, IntMatrix, Order, SympMatrix,
};
use crate::{Error, Result};

/// Coordinate box `[-B, B]` searched by the chain solver when none is given.
pub const DEFAULT_SEARCH_BOX: i64 = 1;

const NODE_BUDGET: u64 = 20_000_000;

/// Homology shadow of the chain `a1, ..., a_{2g+1}` plus `a0` (genus >= 2),
/// with `delta = t1 t2 ... t_{2g}`.
#[derive(Clone, Debug)]
pub struct ChainData {
    genus: usize,
    classes: Vec<HomClass>,
    v0: Option<HomClass>,
    delta: SympMatrix,
}

impl ChainData {
    pub fn genus(&self) -> usize {
        self.genus
    }

    /// `v_i` for `1 <= i <= 2g+1`.
    pub fn class(&self, i: usize) -> &HomClass {
        &self.classes[i - 1]
    }

    /// `v_1, ..., v_{2g+1}` in order.
    pub fn classes(&self) -> &[HomClass] {
        &self.classes
    }

    pub fn v0(&self) -> Option<&HomClass> {
        self.v0.as_ref()
    }

    pub fn delta(&self) -> &SympMatrix {
        &self.delta
    }

    /// `t_i` for `0 <= i <= 2g+1` (`t_0` only when `a0` exists).
    pub fn twist(&self, i: usize) -> Result<SympMatrix> {
        if i == 0 {
            let v0 = self
                .v0
                .as_ref()
                .ok_or_else(|| Error::OutOfRange("a0 does not exist in genus 1".into()))?;
            transvection(v0)
        } else if i <= self.classes.len() {
            transvection(&self.classes[i - 1])
        } else {
            Err(Error::OutOfRange(alloc::format!("chain index {i}")))
        }
    }

    /// Product `t_from t_{from+1} ... t_to`, rightmost applied first.
    pub fn twist_word(&self, from: usize, to: usize) -> Result<SympMatrix> {
        (from..=to).try_fold(SympMatrix::identity(self.genus), |acc, i| {
            acc.mul(&self.twist(i)?)
        })
    }

    /// Twists generating the whole mapping class group: `t0, ..., t_{2g}`
    /// for `g >= 2`, `t1, t2` for `g = 1`.
    pub fn generating_twists(&self) -> Result<Vec<SympMatrix>> {
        let start = if self.v0.is_some() { 0 } else { 1 };
        (start..=2 * self.genus).map(|i| self.twist(i)).collect()
    }

    /// The configuration as a curve system named `a0 .. a_{2g+1}`.
    pub fn as_curve_system(&self) -> CurveSystem {
        let mut names = Vec::new();
        let mut classes = Vec::new();
        if let Some(v0) = &self.v0 {
            names.push(String::from("a0"));
            classes.push(v0.clone());
        }
        for (i, c) in self.classes.iter().enumerate() {
            names.push(alloc::format!("a{}", i + 1));
            classes.push(c.clone());
        }
        CurveSystem::new(self.genus, names, classes, chain_pattern(self.genus), true)
            .expect("chain pattern has matching size")
    }
}

/// `|<a_i, a_j>|` for the chain configuration. Rows are `a0, ..., a_{2g+1}`
/// for `g >= 2` and `a1, a2, a3` for `g = 1`.
///
/// `a1, ..., a_{2g+1}` form a cycle: consecutive curves meet once and
/// `a_{2g+1}` also meets `a1`, which is what `delta(a_{2g}) = a_{2g+1}` and
/// `delta(a_{2g+1}) = a1^{-1}` force in homology. `a0` meets `a4`, and then
/// necessarily `a_{2g+1}`, since `v_{2g+1} = ±(v_{2g} - v_{2g-1} + ... - v_1)`.
pub fn chain_pattern(g: usize) -> IntMatrix {
    let offset = usize::from(g < 2);
    let n = 2 * g + 2 - offset;
    let mut p = IntMatrix::zeros(n, n);
    let mut set = |i: usize, j: usize| {
        p[(i - offset, j - offset)] = BigInt::one();
        p[(j - offset, i - offset)] = BigInt::one();
    };
    for i in 1..=2 * g {
        set(i, i + 1);
    }
    set(1, 2 * g + 1);
    if g >= 2 {
        set(0, 4);
        set(0, 2 * g + 1);
    }
    p
}

pub fn chain(g: usize) -> Result<ChainData> {
    chain_with_box(g, DEFAULT_SEARCH_BOX)
}

/// Solves for chain classes with entries in `[-bound, bound]`.
///
/// Each class is the first admissible vector in the order that compares the
/// last coordinate first and ranks values `0, 1, -1, 2, -2, ...`. Adjacent
/// classes are oriented so that `<v_i, v_{i+1}> = +1` when possible, and
/// `v_1 .. v_{2g}` must be linearly independent.
pub fn chain_with_box(g: usize, bound: i64) -> Result<ChainData> {
    if g == 0 {
        return Err(Error::GenusTooSmall { min: 1, got: 0 });
    }
    if bound < 1 {
        return Err(Error::OutOfRange("search box must be at least 1".into()));
    }
    let mut solver = Solver {
        g,
        n: 2 * g,
        bound,
        chosen: Vec::new(),
        nodes: 0,
    };
    if !solver.solve_level(1)? {
        return Err(Error::ChainSolve {
            bound,
            reason: "no solution in box".into(),
        });
    }
    let mut chosen: Vec<HomClass> = solver
        .chosen
        .iter()
        .map(|x| HomClass::from_i64(g, x).expect("length 2g"))
        .collect();
    let v0 = if g >= 2 { chosen.pop() } else { None };
    let delta = chosen[..2 * g]
        .iter()
        .try_fold(SympMatrix::identity(g), |acc, v| acc.mul(&transvection(v)?))?;
    let data = ChainData {
        genus: g,
        classes: chosen,
        v0,
        delta,
    };
    data.as_curve_system().check()?;
    Ok(data)
}

struct Solver {
    g: usize,
    n: usize,
    bound: i64,
    chosen: Vec<Vec<i64>>,
    nodes: u64,
}

struct Equation {
    coeffs: Vec<i64>,
    /// `free_mass[p]` is the sum of `|coeffs[k]|` over the `p` unassigned coordinates `k < p`.
    free_mass: Vec<i64>,
    target: i64,
}

impl Solver {
    fn last_level(&self) -> usize {
        if self.g >= 2 {
            2 * self.g + 2
        } else {
            2 * self.g + 1
        }
    }

    /// Level `i <= 2g+1` places `v_i`; level `2g+2` places `v0`.
    fn solve_level(&mut self, level: usize) -> Result<bool> {
        if level > self.last_level() {
            return Ok(true);
        }
        let units = self.unit_pairings(level);
        for pattern in 0..1u32 << units.len() {
            let signs: Vec<i64> = (0..units.len())
                .map(|b| if pattern >> b & 1 == 0 { 1 } else { -1 })
                .collect();
            let eqs = self.equations(&units, &signs);
            let mut x = alloc::vec![0i64; self.n];
            if self.search(level, &eqs, &mut x, self.n)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Earlier chain indices the class placed at `level` must meet once.
    fn unit_pairings(&self, level: usize) -> Vec<usize> {
        let top = 2 * self.g + 1;
        if level == 1 {
            Vec::new()
        } else if level < top {
            alloc::vec![level - 1]
        } else if level == top {
            alloc::vec![level - 1, 1]
        } else {
            alloc::vec![4, top]
        }
    }

    fn equations(&self, units: &[usize], signs: &[i64]) -> Vec<Equation> {
        self.chosen
            .iter()
            .enumerate()
            .map(|(idx, v)| {
                let j = idx + 1;
                // <v, x> = sum_k (v^T J)_k x_k
                let mut coeffs = alloc::vec![0i64; self.n];
                for b in 0..self.g {
                    coeffs[2 * b + 1] = v[2 * b];
                    coeffs[2 * b] = -v[2 * b + 1];
                }
                let mut free_mass = alloc::vec![0i64; self.n + 1];
                for p in 1..=self.n {
                    free_mass[p] = free_mass[p - 1] + coeffs[p - 1].abs();
                }
                let target = units.iter().position(|&u| u == j).map_or(0, |p| signs[p]);
                Equation {
                    coeffs,
                    free_mass,
                    target,
                }
            })
            .collect()
    }

    /// Assigns coordinates `remaining-1` down to `0`.
    fn search(
        &mut self,
        level: usize,
        eqs: &[Equation],
        x: &mut [i64],
        remaining: usize,
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > NODE_BUDGET {
            return Err(Error::ChainSolve {
                bound: self.bound,
                reason: "search budget exhausted".into(),
            });
        }
        let feasible = eqs.iter().all(|e| {
            let partial: i64 = (remaining..self.n).map(|k| e.coeffs[k] * x[k]).sum();
            (e.target - partial).abs() <= self.bound * e.free_mass[remaining]
        });
        if !feasible {
            return Ok(false);
        }
        if remaining == 0 {
            if !self.accept(level, x) {
                return Ok(false);
            }
            self.chosen.push(x.to_vec());
            if self.solve_level(level + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            return Ok(false);
        }
        let k = remaining - 1;
        for value in value_order(self.bound) {
            x[k] = value;
            if self.search(level, eqs, x, k)? {
                return Ok(true);
            }
        }
        x[k] = 0;
        Ok(false)
    }

    fn accept(&self, level: usize, x: &[i64]) -> bool {
        let gcd = x.iter().fold(0i64, |g, &c| g.gcd(&c));
        if gcd != 1 {
            return false;
        }
        if level > 2 * self.g {
            return true;
        }
        let rows: Vec<IntMatrix> = self
            .chosen
            .iter()
            .chain(core::iter::once(&x.to_vec()))
            .map(|v| IntMatrix::from_rows(&[v.as_slice()]).expect("single row"))
            .collect();
        integer_rank(&rows).expect("equal shapes") == rows.len()
    }
}

fn value_order(bound: i64) -> impl Iterator<Item = i64> {
    core::iter::once(0).chain((1..=bound).flat_map(|v| [v, -v]))
}

/// Checks that `delta` has order exactly `4g + 2`, searching up to `4g + 3`.
pub fn delta_order_check(g: usize) -> Result<u64> {
    delta_order_of(&chain(g)?)
}

pub(crate) fn delta_order_of(data: &ChainData) -> Result<u64> {
    let g = data.genus as u64;
    match data.delta.order(4 * g + 3)? {
        Order::Finite(n) if n == 4 * g + 2 => Ok(n),
        Order::Finite(n) => Err(Error::CheckFailed(alloc::format!(
            "order of delta in genus {g} is {n}, expected {}",
            4 * g + 2
        ))),
        Order::ExceedsCap(cap) => Err(Error::OrderExceedsCap { cap }),
    }
}

/// Realized signs of `delta(v_i) = s_i v_{i+1}` and `delta(v_{2g+1}) = s v_1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainAction {
    pub genus: usize,
    pub signs: Vec<i8>,
    pub boundary_sign: i8,
}

pub fn chain_action_check(g: usize) -> Result<ChainAction> {
    let data = chain(g)?;
    let mut signs = Vec::with_capacity(2 * g);
    for i in 1..=2 * g {
        let image = data.delta.apply(data.class(i))?;
        let s = image.sign_relative_to(data.class(i + 1)).ok_or_else(|| {
            Error::CheckFailed(alloc::format!("delta(v{i}) = {image} is not ±v{}", i + 1))
        })?;
        signs.push(s);
    }
    let image = data.delta.apply(data.class(2 * g + 1))?;
    let boundary_sign = image.sign_relative_to(data.class(1)).ok_or_else(|| {
        Error::CheckFailed(alloc::format!("delta(v{}) = {image} is not ±v1", 2 * g + 1))
    })?;
    Ok(ChainAction {
        genus: g,
        signs,
        boundary_sign,
    })
}

/// `delta^{2g+1} = -I`.
pub fn hyperelliptic_check(g: usize) -> Result<bool> {
    let data = chain(g)?;
    Ok(data.delta.pow(2 * g as i64 + 1).is_minus_identity())
}

/// The element `t0^{-1} t_{delta^{2g+1}(a0)}` acts trivially on homology.
pub fn hyperelliptic_torelli_shadow(g: usize) -> Result<bool> {
    if g < 2 {
        return Err(Error::GenusTooSmall { min: 2, got: g });
    }
    let data = chain(g)?;
    let v0 = data.v0.as_ref().expect("genus >= 2");
    let moved = data.delta.pow(2 * g as i64 + 1).apply(v0)?;
    let t0 = transvection(v0)?;
    let element = t0.inverse().mul(&transvection(&moved)?)?;
    Ok(element.is_identity() && transvection(&moved)? == t0)
}

/// `gamma = t1 t2 t3 t4` in genus 4.
pub fn gamma4() -> Result<SympMatrix> {
    chain(4)?.twist_word(1, 4)
}

pub(crate) fn pairing_abs(u: &HomClass, v: &HomClass) -> Result<BigInt> {
    let p = pairing(u, v)?;
    Ok(if p < BigInt::zero() { -p } else { p })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hc(g: usize, c: &[i64]) -> HomClass {
        HomClass::from_i64(g, c).unwrap()
    }

    #[test]
    fn genus_one_chain() {
        let d = chain(1).unwrap();
        assert_eq!(d.class(1), &HomClass::e(1, 1));
        assert_eq!(d.class(2), &HomClass::f(1, 1));
        assert!(d.v0().is_none());
        assert_eq!(
            d.delta().matrix(),
            &IntMatrix::from_rows(&[[0, -1], [1, 1]]).unwrap()
        );
    }

    #[test]
    fn genus_two_chain_is_valid() {
        let d = chain(2).unwrap();
        // Non-unique; this is what the solver's ordering produces.
        assert_eq!(d.class(1), &hc(2, &[1, 0, 0, 0]));
        assert_eq!(d.class(2), &hc(2, &[0, 1, 0, 0]));
        assert_eq!(d.class(3), &hc(2, &[-1, 0, 1, 0]));
        assert_eq!(d.class(4), &hc(2, &[0, 0, 0, 1]));
        assert_eq!(d.class(5), &hc(2, &[0, 1, -1, 1]));
        assert!(d.v0().unwrap().eq_up_to_sign(&HomClass::e(2, 2)));
        d.as_curve_system().check().unwrap();
    }

    #[test]
    fn adjacent_pairings_are_units() {
        for g in 1..=6 {
            let d = chain(g).unwrap();
            assert_eq!(pairing_abs(d.class(2), d.class(3)).unwrap(), BigInt::one());
            for i in 1..=2 * g {
                assert_eq!(
                    pairing(d.class(i), d.class(i + 1)).unwrap(),
                    BigInt::one(),
                    "g={g} i={i}"
                );
            }
        }
    }

    #[test]
    fn delta_orders() {
        assert_eq!(delta_order_check(1).unwrap(), 6);
        assert_eq!(delta_order_check(2).unwrap(), 10);
        assert_eq!(delta_order_check(5).unwrap(), 22);
    }

    #[test]
    fn chain_action() {
        let r = chain_action_check(2).unwrap();
        assert_eq!(r.signs.len(), 4);
        let r = chain_action_check(3).unwrap();
        assert_eq!(r.signs.len(), 6);
        // The boundary relation closes the cycle with a reversal.
        assert_eq!(r.boundary_sign, -1);
        assert!(chain_action_check(1).is_ok());
    }

    #[test]
    fn hyperelliptic() {
        for g in [1, 2, 4] {
            assert!(hyperelliptic_check(g).unwrap());
        }
        assert!(hyperelliptic_torelli_shadow(3).unwrap());
    }

    #[test]
    fn gamma_facts() {
        let gamma = gamma4().unwrap();
        assert_eq!(gamma.order(11).unwrap(), Order::Finite(10));
        assert!(gamma.pow(10).is_identity());
        assert!(!gamma.pow(5).is_identity());
    }

    #[test]
    fn larger_box_still_valid() {
        let d = chain_with_box(3, 2).unwrap();
        d.as_curve_system().check().unwrap();
        assert_eq!(delta_order_of(&d).unwrap(), 14);
    }

    #[test]
    fn bad_inputs() {
        assert!(chain(0).is_err());
        assert!(chain_with_box(2, 0).is_err());
        let d = chain(1).unwrap();
        assert!(d.twist(0).is_err());
    }
}
