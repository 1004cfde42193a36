//! Polynomials over GF(2), packed 64 coefficients per word.
//!
//! Bit `i % 64` of word `i / 64` is the coefficient of `x^i`. The word vector
//! never has trailing zero words, so the zero polynomial is the empty vector
//! and equality is structural.

use std::fmt;
use std::ops::{Add, Mul};
use std::str::FromStr;

use crate::error::{Error, Result};

const WORD: usize = u64::BITS as usize;

#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

fn words_for_bits(bits: usize) -> usize {
    bits.div_ceil(WORD)
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Self { words: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut words = vec![0; k / WORD + 1];
        words[k / WORD] = 1 << (k % WORD);
        Self { words }
    }

    /// Sum of `x^e` over the given exponents. Repeated exponents cancel.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exponents: I) -> Self {
        let mut words = Vec::new();
        for e in exponents {
            if words.len() <= e / WORD {
                words.resize(e / WORD + 1, 0);
            }
            words[e / WORD] ^= 1 << (e % WORD);
        }
        Self::from_words(words)
    }

    /// Builds a polynomial from packed coefficient words (low word first).
    pub fn from_words(mut words: Vec<u64>) -> Self {
        while words.last() == Some(&0) {
            words.pop();
        }
        Self { words }
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD + (WORD - 1 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD)
            .is_some_and(|w| (w >> (i % WORD)) & 1 == 1)
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let b = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// Value at `x = 1`, i.e. the parity of the weight.
    pub fn eval_one(&self) -> bool {
        self.words.iter().fold(0, |acc, w| acc ^ w.count_ones()) & 1 == 1
    }

    fn xor_shifted(acc: &mut Vec<u64>, src: &[u64], shift: usize) {
        let (ws, bs) = (shift / WORD, shift % WORD);
        let need = src.len() + ws + 1;
        if acc.len() < need {
            acc.resize(need, 0);
        }
        for (i, &w) in src.iter().enumerate() {
            acc[i + ws] ^= w << bs;
            if bs != 0 {
                acc[i + ws + 1] ^= w >> (WORD - bs);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Self::from_words(words)
    }

    /// Carry-less product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = Vec::new();
        for e in sparse.exponents() {
            Self::xor_shifted(&mut acc, &dense.words, e);
        }
        Self::from_words(acc)
    }

    /// Quotient and remainder with `self = q * divisor + r`, `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(mut rd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if rd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut rem = self.words.clone();
        let mut quot = vec![0u64; words_for_bits(rd - dd + 1)];
        loop {
            let shift = rd - dd;
            quot[shift / WORD] |= 1 << (shift % WORD);
            Self::xor_shifted(&mut rem, &divisor.words, shift);
            while rem.last() == Some(&0) {
                rem.pop();
            }
            match Self::from_words(rem.clone()).degree() {
                Some(d) if d >= dd => rd = d,
                _ => break,
            }
        }
        Ok((Self::from_words(quot), Self::from_words(rem)))
    }

    /// Monic greatest common divisor (every nonzero GF(2) polynomial is monic).
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let (_, r) = a.divmod(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// Exact quotient by `1 + x`, or `None` when `1 + x` does not divide.
    ///
    /// If `a = q (1 + x)` then `q_i = a_0 + ... + a_i`, so the quotient is the
    /// running XOR of the coefficients.
    pub fn div_one_plus_x(&self) -> Option<Self> {
        if self.eval_one() {
            return None;
        }
        let mut carry = 0u64;
        let words = self
            .words
            .iter()
            .map(|&w| {
                let mut p = w;
                p ^= p << 1;
                p ^= p << 2;
                p ^= p << 4;
                p ^= p << 8;
                p ^= p << 16;
                p ^= p << 32;
                let out = p ^ carry;
                carry = if out >> 63 == 1 { u64::MAX } else { 0 };
                out
            })
            .collect();
        Some(Self::from_words(words))
    }

    /// Largest `v` with `(1 + x)^v` dividing `self`.
    pub fn one_plus_x_valuation(&self) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut v = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.div_one_plus_x() {
            cur = q;
            v += 1;
        }
        Ok(v)
    }
}

impl Add for &Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: Self) -> Gf2Poly {
        Gf2Poly::add(self, rhs)
    }
}

impl Mul for &Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: Self) -> Gf2Poly {
        Gf2Poly::mul(self, rhs)
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (idx, e) in self.exponents().enumerate() {
            if idx > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("x")?,
                _ => write!(f, "x^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |detail: String| Error::Parse {
            what: "polynomial",
            detail,
        };
        let s = s.trim();
        if s == "0" {
            return Ok(Self::zero());
        }
        let mut exps = Vec::new();
        for term in s.split('+') {
            let term = term.trim();
            let e = match term {
                "1" => 0,
                "x" => 1,
                _ => term
                    .strip_prefix("x^")
                    .and_then(|k| k.parse::<usize>().ok())
                    .ok_or_else(|| bad(format!("bad term {term:?}")))?,
            };
            exps.push(e);
        }
        Ok(Self::from_exponents(exps))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn add_examples() {
        assert!(p("1+x").add(&p("1+x")).is_zero());
        assert_eq!(p("1+x").add(&p("x")), p("1"));
        assert_eq!(p("1+x^2").add(&p("1+x")), p("x+x^2"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(p("1+x").mul(&p("1+x")), p("1+x^2"));
        assert!(p("1+x").mul(&Gf2Poly::zero()).is_zero());
        assert_eq!(p("1+x").mul(&p("1+x^2")), p("1+x+x^2+x^3"));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("1+x^8").gcd(&p("1+x+x^2+x^3")).unwrap(), p("1+x+x^2+x^3"));
        assert_eq!(p("x+x^5").gcd(&Gf2Poly::zero()).unwrap(), p("x+x^5"));
        assert_eq!(p("1+x").gcd(&p("x")).unwrap(), p("1"));
        assert_eq!(
            Gf2Poly::zero().gcd(&Gf2Poly::zero()),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(p("1+x+x^2+x^3").one_plus_x_valuation().unwrap(), 3);
        assert_eq!(p("1").one_plus_x_valuation().unwrap(), 0);
        assert_eq!(p("1+x^4").one_plus_x_valuation().unwrap(), 4);
        assert_eq!(
            Gf2Poly::zero().one_plus_x_valuation(),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn valuation_across_word_boundary() {
        // (1+x)^128 = 1 + x^128
        assert_eq!(p("1+x^128").one_plus_x_valuation().unwrap(), 128);
        assert_eq!(p("x^63+x^64").one_plus_x_valuation().unwrap(), 1);
        assert_eq!(p("1+x^100").one_plus_x_valuation().unwrap(), 4);
    }

    #[test]
    fn divmod_examples() {
        assert_eq!(p("1+x^2").divmod(&p("1+x")).unwrap(), (p("1+x"), p("0")));
        assert_eq!(p("x").divmod(&p("1+x")).unwrap(), (p("1"), p("1")));
        assert_eq!(p("1").divmod(&p("x")).unwrap(), (p("0"), p("1")));
        assert_eq!(p("x").divmod(&Gf2Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn zero_is_distinct_from_constant() {
        assert_eq!(Gf2Poly::zero().degree(), None);
        assert_eq!(Gf2Poly::one().degree(), Some(0));
        assert_eq!(Gf2Poly::monomial(64).degree(), Some(64));
    }

    #[test]
    fn text_form() {
        assert_eq!(p("1+x^3+x^5").to_string(), "1+x^3+x^5");
        assert_eq!(Gf2Poly::zero().to_string(), "0");
        assert_eq!(p(" x + 1 ").to_string(), "1+x");
        assert!("1+y".parse::<Gf2Poly>().is_err());
        assert!("".parse::<Gf2Poly>().is_err());
    }

    #[test]
    fn binomial_powers_follow_pascal_mod_2() {
        let base = p("1+x");
        let mut pow = Gf2Poly::one();
        for k in 0..=16usize {
            for i in 0..=k {
                // C(k, i) is odd iff i & !k == 0 (Lucas)
                assert_eq!(pow.coeff(i), i & !k == 0, "k={k} i={i}");
            }
            assert_eq!(pow.degree(), Some(k));
            pow = pow.mul(&base);
        }
    }

    fn arb_poly() -> impl Strategy<Value = Gf2Poly> {
        prop::collection::vec(any::<u64>(), 0..4).prop_map(Gf2Poly::from_words)
    }

    proptest! {
        #[test]
        fn add_is_commutative_and_self_inverse(a in arb_poly(), b in arb_poly()) {
            prop_assert_eq!(a.add(&b), b.add(&a));
            prop_assert!(a.add(&a).is_zero());
        }

        #[test]
        fn valuation_is_additive(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!a.is_zero() && !b.is_zero());
            let v = a.mul(&b).one_plus_x_valuation().unwrap();
            prop_assert_eq!(v, a.one_plus_x_valuation().unwrap() + b.one_plus_x_valuation().unwrap());
        }

        #[test]
        fn divmod_reconstructs(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!b.is_zero());
            let (q, r) = a.divmod(&b).unwrap();
            prop_assert_eq!(q.mul(&b).add(&r), a);
            prop_assert!(r.degree() < b.degree());
        }

        #[test]
        fn gcd_divides_both(a in arb_poly(), b in arb_poly()) {
            prop_assume!(!(a.is_zero() && b.is_zero()));
            let g = a.gcd(&b).unwrap();
            prop_assert!(a.divmod(&g).unwrap().1.is_zero());
            prop_assert!(b.divmod(&g).unwrap().1.is_zero());
        }

        #[test]
        fn text_round_trip(a in arb_poly()) {
            prop_assert_eq!(a.to_string().parse::<Gf2Poly>().unwrap(), a);
        }
    }
}
