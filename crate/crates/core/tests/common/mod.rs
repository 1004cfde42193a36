#![allow(dead_code)]

use rand::rngs::StdRng;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};

use rayon::prelude::*;

use cubelc::cube::{decompose, recognize_cube};
use cubelc::sequence::impulse_pair_lc;
use cubelc::PeriodicSequence;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn random_subset(rng: &mut StdRng, period: usize, weight: usize) -> Vec<usize> {
    let mut v = sample(rng, period, weight).into_vec();
    v.sort_unstable();
    v
}

/// Random even weight in `2..=max_weight`, then a uniformly random support.
pub fn random_even_weight(rng: &mut StdRng, n: u32, max_weight: usize) -> PeriodicSequence {
    let weight = 2 * rng.gen_range(1..=max_weight / 2);
    let support = random_subset(rng, 1 << n, weight);
    PeriodicSequence::from_support(n, &support).unwrap()
}

/// A random cube together with its edge valuations.
///
/// Grows the cube one dimension at a time: every current element receives a
/// partner at `2^{i_j}` times its own random odd multiplier, so the result is
/// usually not a set of subset sums.
pub fn random_general_cube(rng: &mut StdRng, n: u32) -> (Vec<usize>, Vec<u32>) {
    let period = 1usize << n;
    let m = rng.gen_range(1..=n as usize);
    let mut valuations: Vec<u32> = sample(rng, n as usize, m)
        .into_iter()
        .map(|v| v as u32)
        .collect();
    valuations.sort_unstable();
    let mut support = vec![rng.gen_range(0..period)];
    for &v in &valuations {
        let odd_range = (period >> v) / 2;
        let partners: Vec<usize> = support
            .iter()
            .map(|&e| {
                let odd = 2 * rng.gen_range(0..odd_range) + 1;
                (e + (odd << v)) % period
            })
            .collect();
        support.extend(partners);
    }
    support.sort_unstable();
    (support, valuations)
}

fn v2(x: usize) -> u32 {
    x.trailing_zeros()
}

/// Linear complexity of a four-element support, by the case analysis for
/// sums of two impulse pairs.
///
/// * Two of each parity: pair the evens and pair the odds, with difference
///   valuations d, e >= 1 and an odd cross difference. Then L = N - 2^min(d,e)
///   when d != e and L = N - (2^d + 1) when d = e.
/// * One of one parity and three of the other: any pairing has one odd and
///   one even difference, so L = N - 1.
/// * All of one parity: the polynomial is x^r Q(x^2) = x^r Q(x)^2, so the
///   defect N - L doubles from the halved support at period N/2.
pub fn four_element_lc(n: u32, positions: [usize; 4]) -> usize {
    let period = 1usize << n;
    let evens: Vec<usize> = positions.iter().copied().filter(|p| p % 2 == 0).collect();
    let odds: Vec<usize> = positions.iter().copied().filter(|p| p % 2 == 1).collect();
    match evens.len() {
        2 => {
            let d = v2(evens[0].abs_diff(evens[1]));
            let e = v2(odds[0].abs_diff(odds[1]));
            if d == e {
                period - ((1 << d) + 1)
            } else {
                period - (1 << d.min(e))
            }
        }
        1 | 3 => period - 1,
        _ => {
            let r = positions[0] % 2;
            let halved = positions.map(|p| (p - r) / 2);
            let defect = (period / 2) - four_element_lc(n - 1, halved);
            period - 2 * defect
        }
    }
}

/// Whether the support splits into two pairs whose differences are both
/// `2 mod 4`, with an odd difference between the pairs.
pub fn two_pairs_at_distance_two(positions: [usize; 4]) -> bool {
    let [a, b, c, d] = positions;
    let pairings = [((a, b), (c, d)), ((a, c), (b, d)), ((a, d), (b, c))];
    pairings.iter().any(|&((p, q), (r, s))| {
        p.abs_diff(q) % 4 == 2 && r.abs_diff(s) % 4 == 2 && p.abs_diff(r) % 2 == 1
    })
}

/// Every 4-subset of `0..period`, ascending.
pub fn four_subsets(period: usize) -> impl Iterator<Item = [usize; 4]> {
    (0..period).flat_map(move |a| {
        (a + 1..period).flat_map(move |b| {
            (b + 1..period).flat_map(move |c| (c + 1..period).map(move |d| [a, b, c, d]))
        })
    })
}

/// Panics unless `decompose(s)` is a disjoint cover of `s` by cubes with
/// strictly decreasing complexities headed by `L(s)`.
pub fn check_decomposition(s: &PeriodicSequence) {
    let d = decompose(s).unwrap_or_else(|e| panic!("{s}: {e}"));
    let n = s.n();
    let mut rebuilt = PeriodicSequence::zero(n).unwrap();
    let mut covered = 0usize;
    for (cube, &lc) in d.cubes.iter().zip(&d.complexities) {
        for &p in cube.support() {
            assert!(!rebuilt.bit(p), "{s}: cubes overlap at {p}");
            rebuilt.flip(p);
        }
        covered += cube.support().len();
        assert_eq!(cube.lc(), lc);
        assert_eq!(cube.to_sequence().lc(), lc);
        let again = recognize_cube(n, cube.support())
            .unwrap()
            .expect("piece is a cube");
        assert_eq!(again.lc(), lc);
    }
    assert_eq!(&rebuilt, s);
    assert_eq!(covered, s.hamming_weight());
    assert!(d.complexities.windows(2).all(|w| w[0] > w[1]));
    if !s.is_zero() {
        assert_eq!(d.complexities[0], s.lc());
    }
}

fn pairings(p: [usize; 4]) -> [([usize; 2], [usize; 2]); 3] {
    let [a, b, c, d] = p;
    [([a, b], [c, d]), ([a, c], [b, d]), ([a, d], [b, c])]
}

/// Checks every 4-subset at period `2^n` against [`four_element_lc`], the
/// per-pairing formulas, and the `N - 3` characterization.
pub fn four_element_statements(n: u32) {
    let period = 1usize << n;
    let subsets: Vec<[usize; 4]> = four_subsets(period).collect();
    subsets.par_iter().for_each(|&p| {
        let lc = PeriodicSequence::from_support(n, &p).unwrap().lc();
        assert_eq!(lc, four_element_lc(n, p), "{p:?}");
        for ([i, j], [k, l]) in pairings(p) {
            let d = (j - i).trailing_zeros();
            let e = (l - k).trailing_zeros();
            let cross_odd = [i, j]
                .iter()
                .any(|&x| [k, l].iter().any(|&y| x.abs_diff(y) % 2 == 1));
            if d != e {
                assert_eq!(lc, period - (1 << d.min(e)), "{p:?}");
            } else if d >= 1 && cross_odd {
                assert_eq!(lc, period - ((1 << d) + 1), "{p:?}");
            }
            if d == 0 && e == 0 {
                let ok = (1..n).any(|t| lc == period - ((1 << t) + 1) || lc == period - (1 << t));
                assert!(ok, "{p:?}: both pairs odd yet L = {lc}");
            }
            if d == 1 && e == 1 {
                let ok = (1..n).any(|t| {
                    lc == period - ((1 << t) + 1)
                        || lc == period - 2 * ((1 << t) + 1)
                        || (t > 1 && lc == period - (1 << t))
                });
                assert!(ok, "{p:?}: both pairs at 2 mod 4 yet L = {lc}");
            }
            // each pair on its own
            let pair = impulse_pair_lc(n, i, j).unwrap();
            assert_eq!(pair, period - (1 << d));
        }
        assert_eq!(lc == period - 3, two_pairs_at_distance_two(p), "{p:?}");
    });
}

/// Runs the built binary, returning exit code and stdout.
pub fn run_cli(args: &[&str]) -> (i32, String) {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_cubelc"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exited normally"),
        String::from_utf8(out.stdout).expect("utf-8 output"),
    )
}

/// Command line, exit code, exact stdout (`None` when only the code matters).
pub const GOLDEN: &[(&[&str], i32, Option<&str>)] = &[
    (&["lc", "11110000"], 0, Some("{\"lc\":5,\"n\":3}\n")),
    (&["lc", "00000000"], 0, Some("{\"lc\":0,\"n\":3}\n")),
    (&["lc", "--format", "hex", "f0"], 0, Some("{\"lc\":5,\"n\":3}\n")),
    (
        &["klc", "11110000", "--k", "3"],
        0,
        Some("{\"k\":3,\"klc\":5,\"lc\":5,\"stable\":true}\n"),
    ),
    (
        &["klc", "11110000", "--k", "4"],
        0,
        Some("{\"k\":4,\"klc\":0,\"lc\":5,\"stable\":false}\n"),
    ),
    (
        &["klc", "10000000", "--k", "1"],
        0,
        Some("{\"k\":1,\"klc\":0,\"lc\":8,\"stable\":false}\n"),
    ),
    (&["celcs", "11110000"], 0, Some("{\"points\":[[0,5],[4,0]]}\n")),
    (&["celcs", "00000000"], 0, Some("{\"points\":[[0,0]]}\n")),
    (&["celcs", "11000000"], 0, Some("{\"points\":[[0,7],[2,0]]}\n")),
    (
        &["decompose", "1100000000000000"],
        0,
        Some("{\"cubes\":[{\"anchor\":0,\"edges\":[1],\"lc\":15,\"n\":4,\"offsets\":[1],\"support\":[0,1]}],\"lc\":15,\"residual_impulse\":null}\n"),
    ),
    (
        &["decompose", "11100000"],
        0,
        Some("{\"cubes\":[{\"anchor\":1,\"edges\":[1],\"lc\":7,\"n\":3,\"offsets\":[1],\"support\":[1,2]}],\"lc\":8,\"residual_impulse\":0}\n"),
    ),
    (
        &["construct", "--n", "3", "--k", "3", "--anchor", "0"],
        0,
        Some("11110000\n{\"lc\":5,\"stable_through\":3}\n"),
    ),
    (
        &["construct", "--n", "4", "--k", "1", "--anchor", "0"],
        0,
        Some("1100000000000000\n{\"lc\":15,\"stable_through\":1}\n"),
    ),
    (&["construct", "--n", "3", "--k", "8"], 2, None),
    (&["sweep", "--n", "3", "--k-max", "7"], 0, None),
    (&["sweep", "--n", "20"], 2, None),
    (&["pary", "lc", "--p", "3", "--n", "2", "1,0,0,2,0,0,0,0,0"], 0, Some("{\"lc\":6}\n")),
    (&["pary", "full", "--p", "3", "--n", "1", "1,1,1"], 0, Some("{\"full\":false}\n")),
    (&["pary", "lc", "--p", "4", "--n", "1", "1,0,0,0"], 2, None),
];

/// Failures among [`GOLDEN`], described.
pub fn golden_failures() -> Vec<String> {
    GOLDEN
        .iter()
        .filter_map(|&(args, code, expected)| {
            let (got_code, got) = run_cli(args);
            let ok = got_code == code && expected.is_none_or(|e| e == got);
            (!ok).then(|| format!("{args:?}: exit {got_code}, stdout {got:?}"))
        })
        .collect()
}
