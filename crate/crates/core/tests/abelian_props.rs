use mcg_core::abelian::{abelianize, mod1_presentation, mod2_presentation, Presentation};
use proptest::prelude::*;

fn inverse(w: &[i64]) -> Vec<i64> {
    w.iter().rev().map(|x| -x).collect()
}

fn relators(n: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    let letter = (1..=n as i64, any::<bool>()).prop_map(|(g, neg)| if neg { -g } else { g });
    prop::collection::vec(prop::collection::vec(letter, 1..8), 1..5)
}

#[derive(Debug, Clone)]
enum Move {
    // r_i <- r_i r_j^c
    Multiply(usize, usize, i8),
    Invert(usize),
    Swap(usize, usize),
    // cyclic rotation leaves exponent sums alone
    Rotate(usize, usize),
}

fn moves() -> impl Strategy<Value = Vec<Move>> {
    let m = prop_oneof![
        (0..8usize, 0..8usize, -2i8..=2).prop_map(|(i, j, c)| Move::Multiply(i, j, c)),
        (0..8usize).prop_map(Move::Invert),
        (0..8usize, 0..8usize).prop_map(|(i, j)| Move::Swap(i, j)),
        (0..8usize, 0..8usize).prop_map(|(i, k)| Move::Rotate(i, k)),
    ];
    prop::collection::vec(m, 0..12)
}

fn apply(rels: &mut [Vec<i64>], mv: &Move) {
    let r = rels.len();
    match *mv {
        Move::Multiply(i, j, c) => {
            let (i, j) = (i % r, j % r);
            if i == j {
                return;
            }
            let piece = if c < 0 {
                inverse(&rels[j])
            } else {
                rels[j].clone()
            };
            for _ in 0..c.unsigned_abs() {
                rels[i].extend_from_slice(&piece);
            }
        }
        Move::Invert(i) => rels[i % r] = inverse(&rels[i % r]),
        Move::Swap(i, j) => rels.swap(i % r, j % r),
        Move::Rotate(i, k) => {
            let w = &mut rels[i % r];
            let len = w.len();
            w.rotate_left(k % len);
        }
    }
}

proptest! {
    #[test]
    fn invariant_under_unimodular_relator_moves(n in 1usize..4, rels in relators(3), ms in moves()) {
        let rels: Vec<Vec<i64>> = rels
            .into_iter()
            .map(|w| w.into_iter().map(|x| x.signum() * ((x.abs() - 1) % n as i64 + 1)).collect())
            .collect();
        let base = abelianize(&Presentation::new(n, rels.clone()).unwrap()).unwrap();
        let mut moved = rels;
        for m in &ms {
            apply(&mut moved, m);
        }
        let after = abelianize(&Presentation::new(n, moved).unwrap()).unwrap();
        prop_assert_eq!(base, after);
    }
}

#[test]
fn shipped_groups_are_cyclic_on_twists() {
    for (p, order) in [(mod1_presentation(), 12u32), (mod2_presentation(), 10)] {
        let a = abelianize(&p).unwrap();
        assert!(a.is_cyclic());
        assert_eq!(a.order().unwrap(), order.into());
    }
}
