//! Binary sequences of period `2^n` and their linear complexity.
//!
//! Over GF(2), `1 - x^N = (1 + x)^N` when `N = 2^n`, so the linear complexity
//! is `N` minus the multiplicity of `1 + x` in the generating polynomial of
//! one period. [`linear_complexity`] evaluates it with the halving recursion;
//! [`lc_oracle_gcd`] and [`lc_oracle_lfsr`] compute it by unrelated routes.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf2poly::Gf2Poly;
use crate::two_adic_valuation;

const WORD: usize = u64::BITS as usize;

/// Largest supported period exponent.
pub const MAX_EXPONENT: u32 = 30;

/// One period of a binary sequence with period `2^n`.
///
/// Position `i` is bit `i % 64` of word `i / 64`; bits past the period in the
/// last word are always clear.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PeriodicSequence {
    n: u32,
    words: Vec<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LinearComplexityReport {
    pub lc: usize,
    pub minimal_poly_degree: usize,
    /// Multiplicity of `1 + x` in `gcd(s^N(x), 1 + x^N)`.
    pub valuation: usize,
}

fn tail_mask(period: usize) -> u64 {
    match period % WORD {
        0 => u64::MAX,
        r => (1u64 << r) - 1,
    }
}

impl PeriodicSequence {
    pub fn zero(n: u32) -> Result<Self> {
        if n > MAX_EXPONENT {
            return Err(Error::PeriodTooLarge(n));
        }
        let period = 1usize << n;
        Ok(Self {
            n,
            words: vec![0; period.div_ceil(WORD)],
        })
    }

    /// Sequence with ones exactly at `positions`.
    pub fn from_support(n: u32, positions: &[usize]) -> Result<Self> {
        let mut s = Self::zero(n)?;
        let period = s.period();
        for &p in positions {
            if p >= period {
                return Err(Error::PositionOutOfRange {
                    position: p,
                    period,
                });
            }
            if s.bit(p) {
                return Err(Error::DuplicatePosition(p));
            }
            s.flip(p);
        }
        Ok(s)
    }

    /// Sequence from the low `2^n` bits of `value` (bit `i` is position `i`).
    pub fn from_u64(n: u32, value: u64) -> Result<Self> {
        if n > 6 {
            return Err(Error::PeriodTooLarge(n));
        }
        let period = 1usize << n;
        Ok(Self {
            n,
            words: vec![value & tail_mask(period)],
        })
    }

    pub fn from_bits(bits: &[bool]) -> Result<Self> {
        if !bits.len().is_power_of_two() {
            return Err(Error::NotPowerOfTwo(bits.len()));
        }
        let n = bits.len().trailing_zeros();
        let mut s = Self::zero(n)?;
        for (i, _) in bits.iter().enumerate().filter(|(_, &b)| b) {
            s.flip(i);
        }
        Ok(s)
    }

    /// Parses a hex string; each nibble expands most-significant bit first.
    pub fn from_hex(text: &str) -> Result<Self> {
        let text = text.trim();
        let mut bits = Vec::with_capacity(text.len() * 4);
        for c in text.chars() {
            let v = c.to_digit(16).ok_or_else(|| Error::Parse {
                what: "hex sequence",
                detail: format!("invalid character {c:?}"),
            })?;
            bits.extend((0..4).rev().map(|b| (v >> b) & 1 == 1));
        }
        Self::from_bits(&bits)
    }

    pub fn to_hex(&self) -> Option<String> {
        if !self.period().is_multiple_of(4) {
            return None;
        }
        let digits = (0..self.period() / 4)
            .map(|d| {
                let v = (0..4).fold(0u32, |acc, b| (acc << 1) | self.bit(4 * d + b) as u32);
                char::from_digit(v, 16).unwrap()
            })
            .collect();
        Some(digits)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    /// `N = 2^n`.
    pub fn period(&self) -> usize {
        1 << self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn bit(&self, i: usize) -> bool {
        (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    pub fn flip(&mut self, i: usize) {
        debug_assert!(i < self.period());
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn hamming_weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Positions of the ones, ascending.
    pub fn support(&self) -> Vec<usize> {
        self.to_polynomial().exponents().collect()
    }

    /// `s^N(x) = s_0 + s_1 x + ... + s_{N-1} x^{N-1}`.
    pub fn to_polynomial(&self) -> Gf2Poly {
        Gf2Poly::from_words(self.words.clone())
    }

    /// Termwise sum of two sequences with the same period.
    pub fn xor(&self, other: &Self) -> Result<Self> {
        if self.n != other.n {
            return Err(Error::PeriodMismatch {
                left: self.period(),
                right: other.period(),
            });
        }
        Ok(Self {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(a, b)| a ^ b)
                .collect(),
        })
    }

    /// Linear complexity via the halving recursion.
    pub fn lc(&self) -> usize {
        lc_of_words(&self.words, self.period())
    }
}

/// Halving recursion on a packed period of length `period` (a power of two).
///
/// With halves `L` and `R`, `s^N(x) = L(x) + x^{N/2} R(x)`. If `L = R` the
/// sequence has period `N/2`; otherwise `(1+x)^{N/2}` cannot divide `L + R`
/// and the complexity is `N/2 + L(L + R)`.
pub(crate) fn lc_of_words(words: &[u64], period: usize) -> usize {
    if period <= WORD {
        return lc_of_word(words[0], period);
    }
    let mut lc = 0;
    let mut len = period;
    let mut cur: Vec<u64> = words.to_vec();
    while len > WORD {
        let half = cur.len() / 2;
        let (l, r) = cur.split_at_mut(half);
        len /= 2;
        if l != r {
            lc += len;
            for (a, b) in l.iter_mut().zip(r.iter()) {
                *a ^= b;
            }
        }
        cur.truncate(half);
    }
    lc + lc_of_word(cur[0], len)
}

#[inline]
pub(crate) fn lc_of_word(mut w: u64, mut len: usize) -> usize {
    let mut lc = 0;
    while len > 1 {
        len /= 2;
        let mask = (1u64 << len) - 1;
        let l = w & mask;
        let r = (w >> len) & mask;
        if l != r {
            lc += len;
            w = l ^ r;
        } else {
            w = l;
        }
    }
    lc + (w & 1) as usize
}

pub fn linear_complexity(s: &PeriodicSequence) -> LinearComplexityReport {
    let lc = s.lc();
    LinearComplexityReport {
        lc,
        minimal_poly_degree: lc,
        valuation: s.period() - lc,
    }
}

/// `N - deg gcd(s^N(x), 1 + x^N)`, straight from the rational generating function.
pub fn lc_oracle_gcd(s: &PeriodicSequence) -> usize {
    let poly = s.to_polynomial();
    if poly.is_zero() {
        return 0;
    }
    let modulus = Gf2Poly::from_exponents([0, s.period()]);
    let g = poly.gcd(&modulus).expect("modulus is nonzero");
    s.period() - g.degree().expect("gcd of nonzero polynomials is nonzero")
}

/// Shortest LFSR for two periods of the sequence, by Berlekamp-Massey.
///
/// The complexity is at most `N`, so `2N` terms determine it.
pub fn lc_oracle_lfsr(s: &PeriodicSequence) -> usize {
    let period = s.period();
    let terms: Vec<u8> = (0..2 * period).map(|t| s.bit(t % period) as u8).collect();
    berlekamp_massey(&terms)
}

/// Linear complexity of a finite binary string.
pub fn berlekamp_massey(terms: &[u8]) -> usize {
    let len = terms.len();
    let mut c = vec![0u8; len + 1];
    let mut b = vec![0u8; len + 1];
    c[0] = 1;
    b[0] = 1;
    let mut l = 0usize;
    let mut m = 1usize;
    for i in 0..len {
        let mut d = terms[i];
        for j in 1..=l {
            d ^= c[j] & terms[i - j];
        }
        if d == 0 {
            m += 1;
        } else if 2 * l <= i {
            let t = c.clone();
            for j in 0..=len - m {
                c[j + m] ^= b[j];
            }
            l = i + 1 - l;
            b = t;
            m = 1;
        } else {
            for j in 0..=len - m {
                c[j + m] ^= b[j];
            }
            m += 1;
        }
    }
    l
}

/// Odd Hamming weight is equivalent to `L(s) = N`.
pub fn has_full_complexity(s: &PeriodicSequence) -> bool {
    s.hamming_weight() % 2 == 1
}

pub fn sum(s1: &PeriodicSequence, s2: &PeriodicSequence) -> Result<PeriodicSequence> {
    s1.xor(s2)
}

/// `L(E_i + E_j) = 2^n - 2^r` where `j - i = 2^r * odd`.
pub fn impulse_pair_lc(n: u32, i: usize, j: usize) -> Result<usize> {
    if n > MAX_EXPONENT {
        return Err(Error::PeriodTooLarge(n));
    }
    let period = 1usize << n;
    for p in [i, j] {
        if p >= period {
            return Err(Error::PositionOutOfRange {
                position: p,
                period,
            });
        }
    }
    if i >= j {
        return Err(Error::Precondition(format!("need i < j, got i={i} j={j}")));
    }
    Ok(period - distance(i, j)?)
}

/// Distance between two positions: `2^y` where `|j - i| = (2x+1) 2^y`.
pub fn distance(i: usize, j: usize) -> Result<usize> {
    if i == j {
        return Err(Error::Precondition("distance needs i != j".into()));
    }
    Ok(1 << two_adic_valuation(i.abs_diff(j)))
}

impl fmt::Display for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: String = (0..self.period())
            .map(|i| if self.bit(i) { '1' } else { '0' })
            .collect();
        f.write_str(&text)
    }
}

impl fmt::Debug for PeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PeriodicSequence({self})")
    }
}

/// Bit string, position 0 leftmost.
impl FromStr for PeriodicSequence {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let bits = text
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::Parse {
                    what: "bit sequence",
                    detail: format!("invalid character {c:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_bits(&bits)
    }
}
