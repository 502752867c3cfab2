use mcg_core::curves::{pants_system, twist_product, twist_rank};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn pants_rank_is_three_g_minus_three() {
    for g in 3..=8 {
        assert_eq!(twist_rank(&pants_system(g).unwrap()).unwrap(), 3 * g - 3);
    }
}

#[test]
fn nonzero_exponents_act_nontrivially() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for g in 3..=8 {
        let sys = pants_system(g).unwrap();
        let mut tried = 0;
        while tried < 1000 {
            let exps: Vec<i64> = (0..sys.len()).map(|_| rng.gen_range(-3..=3)).collect();
            if exps.iter().all(|&e| e == 0) {
                continue;
            }
            tried += 1;
            let m = twist_product(&sys, &exps).unwrap();
            assert!(!m.is_identity(), "genus {g}, exponents {exps:?}");
        }
        assert!(twist_product(&sys, &vec![0; sys.len()])
            .unwrap()
            .is_identity());
    }
}
