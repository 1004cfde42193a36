//! k-error linear complexity, stability and critical-point spectra.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::sequence::{lc_of_word, lc_of_words, PeriodicSequence, MAX_EXPONENT};

/// Default ceiling on pattern evaluations for the brute-force evaluators.
pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 26;

/// A set of positions to flip within one period.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct ErrorPattern {
    positions: Vec<usize>,
}

impl ErrorPattern {
    pub fn new(mut positions: Vec<usize>, period: usize) -> Result<Self> {
        positions.sort_unstable();
        for w in positions.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicatePosition(w[0]));
            }
        }
        if let Some(&p) = positions.last().filter(|&&p| p >= period) {
            return Err(Error::PositionOutOfRange {
                position: p,
                period,
            });
        }
        Ok(Self { positions })
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    pub fn apply(&self, s: &PeriodicSequence) -> Result<PeriodicSequence> {
        let mut out = s.clone();
        for &p in &self.positions {
            if p >= s.period() {
                return Err(Error::PositionOutOfRange {
                    position: p,
                    period: s.period(),
                });
            }
            out.flip(p);
        }
        Ok(out)
    }
}

/// Critical points `(k, c_k)` where the k-error linear complexity drops.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CelcsProfile {
    pub points: Vec<(usize, usize)>,
}

impl CelcsProfile {
    /// `L_k(s)`: the value at the last critical point with index `<= k`.
    pub fn value_at(&self, k: usize) -> usize {
        self.points
            .iter()
            .take_while(|(ck, _)| *ck <= k)
            .last()
            .map(|&(_, v)| v)
            .expect("profile always starts at k = 0")
    }
}

fn check_k(s: &PeriodicSequence, k: usize) -> Result<()> {
    if k > s.period() {
        return Err(Error::KOutOfRange { k, max: s.period() });
    }
    Ok(())
}

/// Smallest linear complexity reachable by changing at most `k` terms.
///
/// Halving recursion that carries, for every position of the current
/// half-length sequence, the number of original flips needed to change it.
/// When the two halves can be made equal within the remaining budget, that is
/// always the better move: it saves `N/2` complexity that no later choice can
/// recover.
pub fn kerror_lc(s: &PeriodicSequence, k: usize) -> Result<usize> {
    check_k(s, k)?;
    let mut bits: Vec<bool> = (0..s.period()).map(|i| s.bit(i)).collect();
    let mut cost: Vec<u64> = vec![1; s.period()];
    let mut budget = k as u64;
    let mut lc = 0;
    let mut len = s.period();
    while len > 1 {
        let half = len / 2;
        let (lb, rb) = bits.split_at_mut(half);
        let (lc_, rc) = cost.split_at_mut(half);
        let merge: u64 = (0..half)
            .filter(|&i| lb[i] != rb[i])
            .map(|i| lc_[i].min(rc[i]))
            .sum();
        if merge <= budget {
            budget -= merge;
            for i in 0..half {
                if lb[i] != rb[i] {
                    if lc_[i] <= rc[i] {
                        lb[i] = rb[i];
                        lc_[i] = rc[i] - lc_[i];
                    } else {
                        lc_[i] -= rc[i];
                    }
                } else {
                    lc_[i] += rc[i];
                }
            }
        } else {
            lc += half;
            for i in 0..half {
                lb[i] ^= rb[i];
                lc_[i] = lc_[i].min(rc[i]);
            }
        }
        bits.truncate(half);
        cost.truncate(half);
        len = half;
    }
    if bits[0] && cost[0] > budget {
        lc += 1;
    }
    Ok(lc)
}

/// Number of patterns of weight `<= k` among `period` positions, saturating.
pub fn pattern_count(period: usize, k: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for i in 0..=k.min(period) {
        total = total.saturating_add(binom);
        binom = binom.saturating_mul((period - i) as u128) / (i as u128 + 1);
    }
    total
}

fn check_budget(period: usize, k: usize, budget: Option<u64>) -> Result<()> {
    let required = pattern_count(period, k);
    match budget {
        Some(b) if required > b as u128 => Err(Error::EnumerationBudget {
            required,
            budget: b,
        }),
        _ => Ok(()),
    }
}

struct Enumerator {
    period: usize,
    max_weight: usize,
    words: Vec<u64>,
    chosen: Vec<usize>,
}

impl Enumerator {
    fn lc(&self) -> usize {
        if self.period <= 64 {
            lc_of_word(self.words[0], self.period)
        } else {
            lc_of_words(&self.words, self.period)
        }
    }

    fn flip(&mut self, p: usize) {
        self.words[p / 64] ^= 1 << (p % 64);
    }

    /// Preorder walk over sorted patterns; `visit` returns `true` to stop.
    fn walk(&mut self, start: usize, visit: &mut impl FnMut(&Self) -> bool) -> bool {
        if visit(self) {
            return true;
        }
        if self.chosen.len() == self.max_weight {
            return false;
        }
        for p in start..self.period {
            self.flip(p);
            self.chosen.push(p);
            let stop = self.walk(p + 1, visit);
            self.chosen.pop();
            self.flip(p);
            if stop {
                return true;
            }
        }
        false
    }
}

fn enumerator(s: &PeriodicSequence, max_weight: usize) -> Enumerator {
    Enumerator {
        period: s.period(),
        max_weight,
        words: s.words().to_vec(),
        chosen: Vec::with_capacity(max_weight),
    }
}

/// `L_0(s), ..., L_{k_max}(s)` by exhaustive enumeration of error patterns.
pub fn kerror_profile_bruteforce(
    s: &PeriodicSequence,
    k_max: usize,
    budget: Option<u64>,
) -> Result<Vec<usize>> {
    check_k(s, k_max)?;
    check_budget(s.period(), k_max, budget)?;
    let mut best = vec![usize::MAX; k_max + 1];
    enumerator(s, k_max).walk(0, &mut |e| {
        let w = e.chosen.len();
        best[w] = best[w].min(e.lc());
        false
    });
    for k in 1..=k_max {
        best[k] = best[k].min(best[k - 1]);
    }
    Ok(best)
}

/// Exhaustive k-error linear complexity under the default budget.
pub fn kerror_lc_bruteforce(s: &PeriodicSequence, k: usize) -> Result<usize> {
    kerror_lc_bruteforce_with_budget(s, k, Some(DEFAULT_ENUMERATION_BUDGET))
}

/// Exhaustive k-error linear complexity; `budget = None` disables the guard.
pub fn kerror_lc_bruteforce_with_budget(
    s: &PeriodicSequence,
    k: usize,
    budget: Option<u64>,
) -> Result<usize> {
    Ok(kerror_profile_bruteforce(s, k, budget)?[k])
}

/// Lexicographically smallest pattern of weight `<= k` reaching `L_k(s)`.
pub fn kerror_witness(s: &PeriodicSequence, k: usize, budget: Option<u64>) -> Result<ErrorPattern> {
    let target = kerror_lc(s, k)?;
    check_budget(s.period(), k, budget)?;
    let mut found = None;
    enumerator(s, k).walk(0, &mut |e| {
        if e.lc() == target {
            found = Some(e.chosen.clone());
            true
        } else {
            false
        }
    });
    let positions = found.expect("the fast evaluator's value is always reachable");
    ErrorPattern::new(positions, s.period())
}

/// `L_k(s) = L(s)`: no change of at most `k` terms lowers the complexity.
pub fn is_stable(s: &PeriodicSequence, k: usize) -> Result<bool> {
    Ok(kerror_lc(s, k)? == s.lc())
}

/// Critical error linear complexity spectrum.
///
/// `L_k` is non-increasing in `k` and vanishes at `k = weight(s)`, so each
/// next critical point is found by bisection on `(previous, weight]`.
pub fn celcs(s: &PeriodicSequence) -> CelcsProfile {
    let weight = s.hamming_weight();
    let mut current = s.lc();
    let mut points = vec![(0, current)];
    let mut k = 0;
    while current > 0 {
        let (mut lo, mut hi) = (k + 1, weight);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if kerror_lc(s, mid).expect("mid <= weight <= N") < current {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        k = lo;
        current = kerror_lc(s, k).expect("k <= weight <= N");
        points.push((k, current));
    }
    CelcsProfile { points }
}

/// Largest 1-error linear complexity over all sequences of period `2^n`.
pub fn max_1error_lc(n: u32) -> Result<usize> {
    max_kerror_lc(n, 1)
}

/// `2^n - (2^l - 1)` with `2^{l-1} <= k < 2^l`: the largest `L_k` over all
/// sequences of period `2^n`.
pub fn max_kerror_lc(n: u32, k: usize) -> Result<usize> {
    if n == 0 || n > MAX_EXPONENT {
        return Err(Error::Precondition(format!(
            "period exponent must be in 1..={MAX_EXPONENT}, got {n}"
        )));
    }
    let period = 1usize << n;
    if k == 0 {
        return Ok(period);
    }
    if k >= period {
        return Err(Error::KOutOfRange { k, max: period - 1 });
    }
    let l = k.ilog2() + 1;
    Ok(period - ((1usize << l) - 1))
}
