use mcg_core::census::{admissible, census, cyclic_witness_within, SearchBounds};
use proptest::prelude::*;

fn is_prime(n: u64) -> bool {
    n >= 2
        && (2..n)
            .take_while(|d| d * d <= n)
            .all(|d| !n.is_multiple_of(d))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

#[test]
fn torsion_bounds_for_genus_up_to_forty() {
    for g in 2..=40u64 {
        let c = census(g);
        assert_eq!(c.max_order, 4 * g + 2, "genus {g}");
        assert!(!c.contains(4 * g + 1), "genus {g}");
        for &p in &c.realizable_primes {
            assert!(p <= g + 1 || p == 2 * g + 1, "genus {g}, prime {p}");
        }
        for (n, w) in &c.witnesses {
            assert_eq!(w.n, *n);
            assert!(admissible(g, w), "genus {g}: {w}");
            if w.h == 0 {
                for p in prime_factors(*n) {
                    assert!(w.indices.iter().any(|m| m % p == 0), "genus {g}: {w}");
                }
            }
        }
    }
}

#[test]
fn odd_prime_two_g_plus_one_is_realized() {
    for g in 2..=20u64 {
        if is_prime(2 * g + 1) {
            assert!(census(g).contains(2 * g + 1));
        }
    }
}

proptest! {
    #[test]
    fn widening_bounds_keeps_orders(g in 2u64..7, n in 2u64..40, h in 0u64..3, r in 0usize..6) {
        let narrow = SearchBounds { max_h: Some(h), max_r: Some(r) };
        let wide = SearchBounds { max_h: Some(h + 1), max_r: Some(r + 2) };
        if cyclic_witness_within(g, n, narrow).is_some() {
            prop_assert!(cyclic_witness_within(g, n, wide).is_some());
            prop_assert!(cyclic_witness_within(g, n, SearchBounds::default()).is_some());
        }
    }
}
