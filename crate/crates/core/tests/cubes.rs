mod common;

use rayon::prelude::*;

use cubelc::cube::{decompose, decompose_with_impulse, k_min, recognize_cube};
use cubelc::kerror::kerror_lc_bruteforce;
use cubelc::PeriodicSequence;

use common::*;

#[test]
fn every_even_weight_sequence_of_period_16_decomposes() {
    (0u64..1 << 16)
        .into_par_iter()
        .filter(|v| v.count_ones() % 2 == 0)
        .for_each(|v| check_decomposition(&PeriodicSequence::from_u64(4, v).unwrap()));
}

#[test]
fn random_sequences_of_period_32_and_64_decompose() {
    let mut rng = rng(0x5eed_0032);
    for n in [5, 6] {
        for _ in 0..300 {
            check_decomposition(&random_even_weight(&mut rng, n, 12));
        }
    }
    // dense inputs too
    for _ in 0..50 {
        let weight = 2 * rand::Rng::gen_range(&mut rng, 5..16);
        let s = PeriodicSequence::from_support(5, &random_subset(&mut rng, 32, weight)).unwrap();
        check_decomposition(&s);
    }
}

#[test]
fn odd_weight_decomposition_strips_one_impulse() {
    let mut rng = rng(7);
    for _ in 0..200 {
        let weight = 2 * rand::Rng::gen_range(&mut rng, 0..5) + 1;
        let s = PeriodicSequence::from_support(5, &random_subset(&mut rng, 32, weight)).unwrap();
        let d = decompose_with_impulse(&s).unwrap();
        let first = d.residual_impulse.unwrap();
        assert_eq!(first, s.support()[0]);
        assert_eq!(d.lc, 32);
        let mut rest = s.clone();
        rest.flip(first);
        assert_eq!(d.cubes, decompose(&rest).unwrap().cubes);
    }
}

/// A set of `2^m` positions is a cube exactly when its complexity defect
/// `N - L` has `m` binary ones.
#[test]
fn recognizer_matches_complexity_defect_at_period_16() {
    (0u64..1 << 16).into_par_iter().for_each(|v| {
        let s = PeriodicSequence::from_u64(4, v).unwrap();
        let support = s.support();
        let w = support.len();
        let by_defect =
            w >= 2 && w.is_power_of_two() && (16 - s.lc()).count_ones() == w.trailing_zeros();
        let cube = recognize_cube(4, &support).unwrap();
        assert_eq!(cube.is_some(), by_defect, "{s}");
        if let Some(c) = cube {
            assert_eq!(c.lc(), s.lc());
            assert_eq!(c.support(), &support[..]);
        }
    });
}

#[test]
fn random_general_cubes_are_recognized() {
    let mut rng = rng(31);
    for n in 3..=12 {
        for _ in 0..100 {
            let (support, valuations) = random_general_cube(&mut rng, n);
            let cube = recognize_cube(n, &support)
                .unwrap()
                .expect("generated cube");
            assert_eq!(cube.valuations(), &valuations[..]);
            let expected = (1usize << n) - valuations.iter().map(|v| 1usize << v).sum::<usize>();
            assert_eq!(cube.lc(), expected);
            assert_eq!(
                PeriodicSequence::from_support(n, &support).unwrap().lc(),
                expected
            );
        }
    }
}

#[test]
fn k_min_matches_bruteforce_exhaustively_at_period_8() {
    for v in 1u64..256 {
        let s = PeriodicSequence::from_u64(3, v).unwrap();
        let lc = s.lc();
        let first_drop = (1..=8)
            .find(|&k| kerror_lc_bruteforce(&s, k).unwrap() < lc)
            .unwrap();
        assert_eq!(k_min(&s).unwrap(), first_drop, "{s}");
    }
}

#[test]
fn four_element_case_analysis_at_16_and_32() {
    four_element_statements(4);
    four_element_statements(5);
}
