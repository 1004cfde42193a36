//! Cubes: recognition, complexity, disjoint decomposition and constructions.
//!
//! An m-cube with edge valuations `i_1 < ... < i_m` is built from two
//! (m-1)-cubes whose elements are paired at distance `2^{i_m}`. The pairing
//! offsets may differ from pair to pair, so a cube is in general not the set
//! of subset sums of fixed offsets. Its elements carry coordinates in
//! `{0,1}^m` and two elements whose lowest differing coordinate is `j` differ
//! by `2^{i_j}` times an odd number.
//!
//! Equivalently: grouping the support by residue mod `2^t` for
//! `t = 0, 1, ..., n`, every group splits into two equal halves exactly at
//! `t = i_j + 1` and stays whole at every other step. [`recognize_cube`] checks
//! this residue tree directly.

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::sequence::{PeriodicSequence, MAX_EXPONENT};
use crate::two_adic_valuation;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cube {
    n: u32,
    anchor: usize,
    /// Neighbour of the anchor along each dimension, minus the anchor, mod `2^n`.
    offsets: Vec<usize>,
    valuations: Vec<u32>,
    support: Vec<usize>,
}

impl Cube {
    /// The cube of all subset sums `anchor + sum_{j in S} offsets[j]` mod `2^n`.
    ///
    /// Offsets may be given in any order; they are stored sorted by valuation.
    pub fn new(n: u32, anchor: usize, offsets: &[usize]) -> Result<Self> {
        if n > MAX_EXPONENT {
            return Err(Error::PeriodTooLarge(n));
        }
        let period = 1usize << n;
        if anchor >= period {
            return Err(Error::PositionOutOfRange {
                position: anchor,
                period,
            });
        }
        if offsets.is_empty() {
            return Err(Error::InvalidCube("a cube needs at least one edge".into()));
        }
        let mut offsets: Vec<usize> = offsets.iter().map(|d| d % period).collect();
        if offsets.contains(&0) {
            return Err(Error::InvalidCube(
                "offset is zero modulo the period".into(),
            ));
        }
        offsets.sort_by_key(|&d| two_adic_valuation(d));
        let valuations: Vec<u32> = offsets.iter().map(|&d| two_adic_valuation(d)).collect();
        if valuations.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCube(
                "edge valuations must be pairwise distinct".into(),
            ));
        }
        let mut support = vec![anchor];
        for &d in &offsets {
            let shifted: Vec<usize> = support.iter().map(|&p| (p + d) % period).collect();
            support.extend(shifted);
        }
        support.sort_unstable();
        if support.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidCube("support positions collide".into()));
        }
        Ok(Self {
            n,
            anchor,
            offsets,
            valuations,
            support,
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// Dimension `m`.
    pub fn dimension(&self) -> usize {
        self.valuations.len()
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// `i_1 < ... < i_m`.
    pub fn valuations(&self) -> &[u32] {
        &self.valuations
    }

    /// Edge lengths `2^{i_j}`.
    pub fn edges(&self) -> Vec<usize> {
        self.valuations.iter().map(|&i| 1usize << i).collect()
    }

    /// The `2^m` positions, ascending.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `2^n - (2^{i_1} + ... + 2^{i_m})`.
    pub fn lc(&self) -> usize {
        (1usize << self.n) - self.edges().iter().sum::<usize>()
    }

    pub fn to_sequence(&self) -> PeriodicSequence {
        PeriodicSequence::from_support(self.n, &self.support).expect("cube support is valid")
    }
}

pub fn cube_support(c: &Cube) -> Vec<usize> {
    c.support.clone()
}

pub fn cube_lc(c: &Cube) -> usize {
    c.lc()
}

impl Serialize for Cube {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            anchor: usize,
            edges: Vec<usize>,
            lc: usize,
            n: u32,
            offsets: &'a [usize],
            support: &'a [usize],
        }
        Repr {
            anchor: self.anchor,
            edges: self.edges(),
            lc: self.lc(),
            n: self.n,
            offsets: &self.offsets,
            support: &self.support,
        }
        .serialize(serializer)
    }
}

/// Recognizes `positions` as a cube, or returns `None` when it is not one.
///
/// Sets whose size is not a power of two (or is below two) are not cubes. The
/// returned cube is anchored at the smallest position; along each split the
/// half holding the smaller element is coordinate 0.
pub fn recognize_cube(n: u32, positions: &[usize]) -> Result<Option<Cube>> {
    if n > MAX_EXPONENT {
        return Err(Error::PeriodTooLarge(n));
    }
    let period = 1usize << n;
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    if let Some(&p) = sorted.last().filter(|&&p| p >= period) {
        return Err(Error::PositionOutOfRange {
            position: p,
            period,
        });
    }
    if let Some(w) = sorted.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::DuplicatePosition(w[0]));
    }
    if sorted.len() < 2 || !sorted.len().is_power_of_two() {
        return Ok(None);
    }

    // classes[c] holds indices into `sorted`; coords[e] the coordinate bits
    let mut classes: Vec<Vec<usize>> = vec![(0..sorted.len()).collect()];
    let mut coords = vec![0u64; sorted.len()];
    let mut valuations = Vec::new();
    for t in 0..n {
        let bit = |e: usize| (sorted[e] >> t) & 1 == 1;
        let splits: Vec<bool> = classes
            .iter()
            .map(|class| class.iter().any(|&e| bit(e) != bit(class[0])))
            .collect();
        if !splits.iter().any(|&s| s) {
            continue;
        }
        if !splits.iter().all(|&s| s) {
            return Ok(None);
        }
        let dim = valuations.len();
        let mut next = Vec::with_capacity(classes.len() * 2);
        for class in &classes {
            // class is ascending in position, so class[0] is its minimum
            let (zero, one): (Vec<usize>, Vec<usize>) =
                class.iter().partition(|&&e| bit(e) == bit(class[0]));
            if zero.len() != one.len() {
                return Ok(None);
            }
            for &e in &one {
                coords[e] |= 1 << dim;
            }
            next.push(zero);
            next.push(one);
        }
        classes = next;
        valuations.push(t);
    }
    debug_assert!(classes.iter().all(|c| c.len() == 1));

    let anchor = sorted[0];
    let offsets = (0..valuations.len())
        .map(|j| {
            let e = coords
                .iter()
                .position(|&c| c == 1 << j)
                .expect("tree is complete");
            sorted[e] - anchor
        })
        .collect();
    Ok(Some(Cube {
        n,
        anchor,
        offsets,
        valuations,
        support: sorted,
    }))
}

/// Disjoint cubes with strictly decreasing complexities.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeDecomposition {
    pub cubes: Vec<Cube>,
    pub complexities: Vec<usize>,
    /// Linear complexity of the decomposed sequence.
    pub lc: usize,
    /// Position stripped from an odd-weight input before decomposing.
    pub residual_impulse: Option<usize>,
}

impl Serialize for CubeDecomposition {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            cubes: &'a [Cube],
            lc: usize,
            residual_impulse: Option<usize>,
        }
        Repr {
            cubes: &self.cubes,
            lc: self.lc,
            residual_impulse: self.residual_impulse,
        }
        .serialize(serializer)
    }
}

/// Bound on search nodes per peeled cube.
const PEEL_NODE_LIMIT: u64 = 200_000_000;

/// Canonical cube decomposition of an even-weight sequence.
///
/// Repeatedly peels the lexicographically smallest `2^m`-subset of the
/// remaining support that is a cube with complexity equal to the remainder's,
/// where `2^n - L = 2^{i_1} + ... + 2^{i_m}`. The remainder's complexity then
/// strictly drops, so the peeled complexities are distinct and decreasing.
/// The zero sequence decomposes into no cubes.
pub fn decompose(s: &PeriodicSequence) -> Result<CubeDecomposition> {
    if s.hamming_weight() % 2 == 1 {
        return Err(Error::OddWeight);
    }
    let n = s.n();
    let mut rest = s.clone();
    let mut cubes = Vec::new();
    let mut complexities = Vec::new();
    while !rest.is_zero() {
        let lc = rest.lc();
        let cube = peel(&rest, lc)?;
        for &p in cube.support() {
            rest.flip(p);
        }
        debug_assert!(rest.lc() < lc);
        debug_assert_eq!(cube.n(), n);
        complexities.push(lc);
        cubes.push(cube);
    }
    Ok(CubeDecomposition {
        lc: s.lc(),
        cubes,
        complexities,
        residual_impulse: None,
    })
}

/// Like [`decompose`], but an odd-weight input first loses its lowest set
/// position, which is reported as `residual_impulse`.
pub fn decompose_with_impulse(s: &PeriodicSequence) -> Result<CubeDecomposition> {
    if s.hamming_weight().is_multiple_of(2) {
        return decompose(s);
    }
    let first = s.support()[0];
    let mut rest = s.clone();
    rest.flip(first);
    let mut d = decompose(&rest)?;
    d.lc = s.lc();
    d.residual_impulse = Some(first);
    Ok(d)
}

struct PeelSearch<'a> {
    support: &'a [usize],
    n: u32,
    target_lc: usize,
    /// Bit `v` set iff `v` is an edge valuation of the wanted cube.
    allowed: u64,
    /// Allowed number of partners at each valuation, per element.
    quota: [usize; 64],
    size: usize,
    chosen: Vec<usize>,
    /// tally[c][v]: partners of chosen[c] at valuation v
    tally: Vec<[usize; 64]>,
    nodes: u64,
}

impl PeelSearch<'_> {
    fn run(&mut self, start: usize) -> Result<Option<Cube>> {
        self.nodes += 1;
        if self.nodes > PEEL_NODE_LIMIT {
            return Err(Error::Precondition(format!(
                "cube search exceeded {PEEL_NODE_LIMIT} nodes"
            )));
        }
        if self.chosen.len() == self.size {
            let positions: Vec<usize> = self.chosen.iter().map(|&i| self.support[i]).collect();
            let seq = PeriodicSequence::from_support(self.n, &positions)?;
            if seq.lc() != self.target_lc {
                return Ok(None);
            }
            return recognize_cube(self.n, &positions);
        }
        let need = self.size - self.chosen.len();
        for idx in start..self.support.len() {
            if self.support.len() - idx < need {
                break;
            }
            let p = self.support[idx];
            let mut row = [0usize; 64];
            let fits = self.chosen.iter().enumerate().all(|(c, &q)| {
                let v = two_adic_valuation(p - self.support[q]) as usize;
                if self.allowed >> v & 1 == 0 {
                    return false;
                }
                row[v] += 1;
                row[v] <= self.quota[v] && self.tally[c][v] < self.quota[v]
            });
            if !fits {
                continue;
            }
            for (c, &q) in self.chosen.iter().enumerate() {
                let v = two_adic_valuation(p - self.support[q]) as usize;
                self.tally[c][v] += 1;
            }
            self.chosen.push(idx);
            self.tally.push(row);
            let found = self.run(idx + 1)?;
            self.tally.pop();
            self.chosen.pop();
            for (c, &q) in self.chosen.iter().enumerate() {
                let v = two_adic_valuation(p - self.support[q]) as usize;
                self.tally[c][v] -= 1;
            }
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

fn peel(s: &PeriodicSequence, lc: usize) -> Result<Cube> {
    let deficit = s.period() - lc;
    let m = deficit.count_ones() as usize;
    let mut quota = [0usize; 64];
    for (j, v) in (0..64).filter(|v| deficit >> v & 1 == 1).enumerate() {
        quota[v] = 1 << (m - 1 - j);
    }
    let support = s.support();
    let mut search = PeelSearch {
        support: &support,
        n: s.n(),
        target_lc: lc,
        allowed: deficit as u64,
        quota,
        size: 1 << m,
        chosen: Vec::new(),
        tally: Vec::new(),
        nodes: 0,
    };
    search.run(0)?.ok_or(Error::DecompositionFailed { lc })
}

/// Smallest number of changes that lowers `L(s)`: `2^m` with
/// `2^n - L(s) = 2^{i_1} + ... + 2^{i_m}`.
pub fn k_min(s: &PeriodicSequence) -> Result<usize> {
    if s.is_zero() {
        return Err(Error::ZeroSequence);
    }
    Ok(1 << (s.period() - s.lc()).count_ones())
}

/// A run of `2^l` ones starting at `anchor` (cyclically), `2^{l-1} <= k < 2^l`.
///
/// It is the l-cube with edges `1, 2, ..., 2^{l-1}`; its complexity
/// `2^n - (2^l - 1)` is the largest k-error complexity possible at period
/// `2^n`, and no change of fewer than `2^l` terms lowers it.
pub fn construct_max_stable(n: u32, k: usize, anchor: usize) -> Result<PeriodicSequence> {
    if n == 0 || n > MAX_EXPONENT {
        return Err(Error::Precondition(format!(
            "period exponent must be in 1..={MAX_EXPONENT}, got {n}"
        )));
    }
    let period = 1usize << n;
    if k == 0 || k >= period {
        return Err(Error::KOutOfRange { k, max: period - 1 });
    }
    if anchor >= period {
        return Err(Error::PositionOutOfRange {
            position: anchor,
            period,
        });
    }
    let l = k.ilog2() + 1;
    let offsets: Vec<usize> = (0..l).map(|i| 1 << i).collect();
    Ok(Cube::new(n, anchor, &offsets)?.to_sequence())
}

/// `s + t`, provided `L(t) < L(s)` so that the sum keeps complexity `L(s)`.
pub fn superpose_preserving(
    s: &PeriodicSequence,
    t: &PeriodicSequence,
) -> Result<PeriodicSequence> {
    let (base, added) = (s.lc(), t.lc());
    if added >= base {
        return Err(Error::ComplexityNotBelow { added, base });
    }
    s.xor(t)
}
