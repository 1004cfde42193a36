//! Sequences of period `p^n` over the prime field F_p.
//!
//! Over F_p, `1 - x^{p^n} = (1 - x)^{p^n}`, so as in the binary case the
//! linear complexity is `p^n` minus the multiplicity of `x - 1` in `s^N(x)`.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let p = p as u64;
    (2..)
        .take_while(|d| d * d <= p)
        .all(|d| !p.is_multiple_of(d))
}

/// Dense polynomial over F_p, lowest coefficient first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FpPoly {
    p: u32,
    coeffs: Vec<u32>,
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat
    let (mut base, mut exp, mut acc) = (a % p, p - 2, 1u32);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

impl FpPoly {
    pub fn new(p: u32, coeffs: Vec<u32>) -> Self {
        let mut poly = Self {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| {
                let a = self.coeffs.get(i).copied().unwrap_or(0);
                let b = other.coeffs.get(i).copied().unwrap_or(0);
                (a + b) % self.p
            })
            .collect();
        Self::new(self.p, coeffs)
    }

    pub fn scale(&self, c: u32) -> Self {
        Self::new(
            self.p,
            self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect(),
        )
    }

    pub fn neg(&self) -> Self {
        self.scale(self.p - 1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::new(self.p, Vec::new());
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = (out[i + j] + a as u64 * b as u64) % self.p as u64;
            }
        }
        Self::new(self.p, out.into_iter().map(|c| c as u32).collect())
    }

    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let p = self.p;
        let lead_inv = inv_mod(divisor.coeffs[dd], p);
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len().saturating_sub(dd)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let factor = mul_mod(rem[top], lead_inv, p);
            let shift = top - dd;
            quot[shift] = factor;
            for (i, &c) in divisor.coeffs.iter().enumerate() {
                let sub = mul_mod(c, factor, p);
                rem[shift + i] = (rem[shift + i] + p - sub) % p;
            }
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    /// Monic gcd.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divmod(&b)?.1;
            a = b;
            b = r;
        }
        let lead = *a.coeffs.last().expect("nonzero");
        Ok(a.scale(inv_mod(lead, self.p)))
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| (mul_mod(acc, x, self.p) + c) % self.p)
    }

    /// Multiplicity of `x - 1`, by repeated synthetic division.
    pub fn one_minus_x_valuation(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = 0;
        let mut cur = self.coeffs.clone();
        while cur.iter().fold(0u64, |a, &c| a + c as u64) % self.p as u64 == 0 {
            // quotient by (x - 1): q_{i-1} = a_i + q_i, from the top
            let mut q = vec![0u32; cur.len() - 1];
            let mut carry = 0u32;
            for i in (1..cur.len()).rev() {
                carry = (carry + cur[i]) % self.p;
                q[i - 1] = carry;
            }
            cur = q;
            v += 1;
        }
        Ok(v)
    }
}

/// One period (length `p^n`) of a sequence over F_p.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PrimePeriodicSequence {
    p: u32,
    n: u32,
    elements: Vec<u32>,
}

fn checked_period(p: u32, n: u32) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    (p as usize)
        .checked_pow(n)
        .filter(|&len| len <= 1 << 24)
        .ok_or(Error::PeriodTooLarge(n))
}

impl PrimePeriodicSequence {
    pub fn new(p: u32, n: u32, elements: Vec<u32>) -> Result<Self> {
        let period = checked_period(p, n)?;
        if elements.len() != period {
            return Err(Error::Precondition(format!(
                "expected {period} elements for period {p}^{n}, got {}",
                elements.len()
            )));
        }
        if let Some(&value) = elements.iter().find(|&&v| v >= p) {
            return Err(Error::ElementOutOfField { value, p });
        }
        Ok(Self { p, n, elements })
    }

    pub fn zero(p: u32, n: u32) -> Result<Self> {
        let period = checked_period(p, n)?;
        Ok(Self {
            p,
            n,
            elements: vec![0; period],
        })
    }

    /// Parses `"1,2,0,..."`.
    pub fn parse(p: u32, n: u32, text: &str) -> Result<Self> {
        let elements = text
            .split(',')
            .map(|t| {
                t.trim().parse::<u32>().map_err(|e| Error::Parse {
                    what: "F_p sequence",
                    detail: format!("{t:?}: {e}"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(p, n, elements)
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn period(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn to_polynomial(&self) -> FpPoly {
        FpPoly::new(self.p, self.elements.clone())
    }

    pub fn element_sum(&self) -> u32 {
        (self.elements.iter().map(|&v| v as u64).sum::<u64>() % self.p as u64) as u32
    }

    pub fn is_zero(&self) -> bool {
        self.elements.iter().all(|&v| v == 0)
    }
}

impl fmt::Display for PrimePeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.elements.iter().map(u32::to_string).collect();
        f.write_str(&parts.join(","))
    }
}

impl fmt::Debug for PrimePeriodicSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PrimePeriodicSequence(p={}, {self})", self.p)
    }
}

/// `p^n - v` with `v` the multiplicity of `x - 1` in `s^N(x)`; 0 for zero.
pub fn lc_p(s: &PrimePeriodicSequence) -> usize {
    let poly = s.to_polynomial();
    if poly.is_zero() {
        return 0;
    }
    s.period() - poly.one_minus_x_valuation().expect("nonzero")
}

/// `p^n - deg gcd(s^N(x), 1 - x^N)`.
pub fn lc_p_oracle_gcd(s: &PrimePeriodicSequence) -> usize {
    let poly = s.to_polynomial();
    if poly.is_zero() {
        return 0;
    }
    let mut modulus = vec![0u32; s.period() + 1];
    modulus[0] = 1;
    modulus[s.period()] = s.p - 1;
    let g = poly
        .gcd(&FpPoly::new(s.p, modulus))
        .expect("modulus is nonzero");
    s.period() - g.degree().expect("nonzero gcd")
}

/// `L(s) = p^n` iff the element sum of one period is nonzero mod `p`.
pub fn has_full_complexity_p(s: &PrimePeriodicSequence) -> bool {
    s.element_sum() != 0
}

pub fn sum_p(
    s1: &PrimePeriodicSequence,
    s2: &PrimePeriodicSequence,
) -> Result<PrimePeriodicSequence> {
    if s1.p != s2.p || s1.n != s2.n {
        return Err(Error::FieldMismatch);
    }
    let elements = s1
        .elements
        .iter()
        .zip(&s2.elements)
        .map(|(a, b)| (a + b) % s1.p)
        .collect();
    Ok(PrimePeriodicSequence {
        p: s1.p,
        n: s1.n,
        elements,
    })
}

/// Smallest complexity after changing at most one term to any other value.
pub fn one_error_lc_p(s: &PrimePeriodicSequence) -> usize {
    let mut best = lc_p(s);
    let mut work = s.clone();
    for i in 0..s.period() {
        let original = s.elements[i];
        for v in (0..s.p).filter(|&v| v != original) {
            work.elements[i] = v;
            best = best.min(lc_p(&work));
        }
        work.elements[i] = original;
    }
    best
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TwoTermReport {
    /// `p^n - p^m`.
    pub expected: usize,
    pub lc: usize,
    pub one_error_lc: usize,
}

impl TwoTermReport {
    pub fn holds(&self) -> bool {
        self.lc == self.expected && self.one_error_lc == self.expected
    }
}

/// The sequence with `s^N(x) = a x^k (1 - x^l)`, `l = b p^m`.
pub fn two_term_sequence(
    p: u32,
    n: u32,
    a: u32,
    k: usize,
    b: usize,
    m: u32,
) -> Result<PrimePeriodicSequence> {
    let period = checked_period(p, n)?;
    if a.is_multiple_of(p) {
        return Err(Error::Precondition(format!(
            "a = {a} must be a unit mod {p}"
        )));
    }
    if b.is_multiple_of(p as usize) {
        return Err(Error::Precondition(format!(
            "b = {b} must be nonzero mod {p}"
        )));
    }
    let l = (p as usize)
        .checked_pow(m)
        .and_then(|pm| pm.checked_mul(b))
        .filter(|&l| l < period)
        .ok_or_else(|| Error::Precondition(format!("b * {p}^{m} must be below {period}")))?;
    if k + l >= period {
        return Err(Error::Precondition(format!(
            "k + l = {} must be below {period}",
            k + l
        )));
    }
    let mut s = PrimePeriodicSequence::zero(p, n)?;
    s.elements[k] = a % p;
    s.elements[k + l] = p - a % p;
    Ok(s)
}

/// Builds the `a x^k (1 - x^l)` sequence and measures its complexity and
/// 1-error complexity by [`lc_p`] and exhaustive single changes.
pub fn two_term_lc(p: u32, n: u32, a: u32, k: usize, b: usize, m: u32) -> Result<TwoTermReport> {
    let s = two_term_sequence(p, n, a, k, b, m)?;
    Ok(TwoTermReport {
        expected: s.period() - (p as usize).pow(m),
        lc: lc_p(&s),
        one_error_lc: one_error_lc_p(&s),
    })
}
