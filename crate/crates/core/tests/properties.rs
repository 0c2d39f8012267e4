mod common;

use common::banded;
use permlabel::harness::check_permutation;
use permlabel::rng::SplitMix64;
use permlabel::{encode, random_permutation, Permutation, Scheme};
use proptest::prelude::*;

fn permutation(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max, any::<u64>()).prop_map(|(n, seed)| random_permutation(n, seed).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn decoders_match_bfs(perm in permutation(40)) {
        for check in check_permutation(&perm, &Scheme::ALL).unwrap() {
            prop_assert_eq!(check.mismatch, None);
        }
    }

    #[test]
    fn labels_file_round_trips(perm in permutation(30), k in 0usize..3) {
        let l = encode(&perm, Scheme::ALL[k]).unwrap();
        prop_assert_eq!(l.to_text().parse::<permlabel::Labeling>().unwrap(), l);
    }

    #[test]
    fn permutation_text_round_trips(perm in permutation(50)) {
        prop_assert_eq!(perm.to_text().parse::<Permutation>().unwrap(), perm);
    }
}

#[test]
fn long_thin_graphs_decode_exactly() {
    for seed in 0..100 {
        let perm = banded(200, seed);
        for (scheme, check) in Scheme::ALL.iter().zip(check_permutation(&perm, &Scheme::ALL).unwrap()) {
            assert_eq!(check.mismatch, None, "{scheme} seed {seed}");
        }
    }
}

#[test]
fn many_small_components() {
    // Concatenated random blocks: every block boundary splits components.
    let mut rng = SplitMix64::new(99);
    for _ in 0..50 {
        let mut values = Vec::new();
        while values.len() < 120 {
            let size = 1 + rng.below(6) as usize;
            let base = values.len() as u32;
            let mut block: Vec<u32> = (1..=size as u32).map(|v| base + v).collect();
            rng.shuffle(&mut block);
            values.extend(block);
        }
        let perm = Permutation::new(values).unwrap();
        for check in check_permutation(&perm, &Scheme::ALL).unwrap() {
            assert_eq!(check.mismatch, None);
        }
    }
}

#[test]
fn l3_labels_fit_three_log_n_plus_constant() {
    for n in [16usize, 64, 256, 1024] {
        let l = encode(&random_permutation(n, 5).unwrap(), Scheme::L3).unwrap();
        let bound = 3.0 * (n as f64).log2() + 96.0;
        assert!((l.max_bits() as f64) <= bound, "n={n}: {} bits", l.max_bits());
    }
}
