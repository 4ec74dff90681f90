//! Bit-packed polynomials over GF(2).
//!
//! A [`Poly`] stores its coefficients in a single machine word: bit `k` is the
//! coefficient of `x^k`. Addition is exclusive-or and multiplication is the
//! carryless (shift-and-xor) product. The word type is a parameter so the same
//! code runs on `u32`, `u64` or `u128` storage; `u64` is the default and is
//! wide enough for every degree the enumeration scans.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::Word;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly<W: Word = u64> {
    bits: W,
}

impl<W: Word> Poly<W> {
    #[inline]
    pub fn zero() -> Self {
        Self { bits: W::zero() }
    }

    #[inline]
    pub fn one() -> Self {
        Self { bits: W::one() }
    }

    /// The polynomial `x`.
    #[inline]
    pub fn x() -> Self {
        Self { bits: W::with_bit(1) }
    }

    #[inline]
    pub fn from_bits(bits: W) -> Self {
        Self { bits }
    }

    /// Builds a polynomial from a `u64` bit pattern; panics if the pattern does
    /// not fit in `W`.
    pub fn from_u64(bits: u64) -> Self {
        let w = W::from_u64(bits);
        assert_eq!(w.low_u64(), bits, "bit pattern {bits:#x} does not fit the word");
        Self { bits: w }
    }

    /// `x^k`.
    pub fn monomial(k: u32) -> Result<Self> {
        if k >= W::BITS {
            return Err(Error::WordOverflow { bits: W::BITS });
        }
        Ok(Self { bits: W::with_bit(k) })
    }

    /// Sum of the monomials `x^k` for each listed exponent. Repeated exponents cancel.
    pub fn from_exponents(exps: &[u32]) -> Result<Self> {
        exps.iter().try_fold(Self::zero(), |acc, &k| Ok(acc + Self::monomial(k)?))
    }

    #[inline]
    pub fn bits(self) -> W {
        self.bits
    }

    /// Index of the highest set coefficient; `None` for the zero polynomial.
    #[inline]
    pub fn degree(self) -> Option<u32> {
        if self.bits.is_zero() {
            None
        } else {
            Some(W::BITS - 1 - self.bits.leading_zeros())
        }
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.bits.is_zero()
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.bits == W::one()
    }

    #[inline]
    pub fn coeff(self, k: u32) -> bool {
        self.bits.bit(k)
    }

    #[inline]
    pub fn constant_term(self) -> bool {
        self.coeff(0)
    }

    /// Number of nonzero terms.
    #[inline]
    pub fn weight(self) -> u32 {
        self.bits.count_ones()
    }

    /// Exponents with a nonzero coefficient, in increasing order.
    pub fn exponents(self) -> impl Iterator<Item = u32> {
        let mut rest = self.bits;
        std::iter::from_fn(move || {
            if rest.is_zero() {
                None
            } else {
                let k = rest.trailing_zeros();
                rest = rest & (rest - W::one());
                Some(k)
            }
        })
    }

    /// Multiplication by `x^k`.
    #[allow(clippy::should_implement_trait)]
    pub fn shl(self, k: u32) -> Result<Self> {
        match self.degree() {
            None => Ok(self),
            Some(d) if d + k < W::BITS => Ok(Self { bits: self.bits << k as usize }),
            Some(_) => Err(Error::WordOverflow { bits: W::BITS }),
        }
    }

    /// Carryless product, failing when the result would not fit in the word.
    pub fn checked_mul(self, rhs: Self) -> Result<Self> {
        let (Some(da), Some(db)) = (self.degree(), rhs.degree()) else {
            return Ok(Self::zero());
        };
        if da + db >= W::BITS {
            return Err(Error::WordOverflow { bits: W::BITS });
        }
        let (wide, narrow) = if self.weight() >= rhs.weight() { (self.bits, rhs) } else { (rhs.bits, self) };
        let mut acc = W::zero();
        for k in narrow.exponents() {
            acc = acc ^ (wide << k as usize);
        }
        Ok(Self { bits: acc })
    }

    /// Square, by interleaving zero bits between the coefficients.
    pub fn square(self) -> Result<Self> {
        match self.degree() {
            None => Ok(self),
            Some(d) if 2 * d < W::BITS => Ok(Self { bits: spread(self.bits) }),
            Some(_) => Err(Error::WordOverflow { bits: W::BITS }),
        }
    }

    /// Quotient and remainder of division by `m`.
    pub fn div_rem(self, m: Self) -> Result<(Self, Self)> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let mut q = W::zero();
        let mut r = self.bits;
        while let Some(dr) = Self::from_bits(r).degree() {
            if dr < dm {
                break;
            }
            let s = (dr - dm) as usize;
            q = q | (W::one() << s);
            r = r ^ (m.bits << s);
        }
        Ok((Self { bits: q }, Self { bits: r }))
    }

    /// Remainder of division by `m`, of degree below `deg(m)`.
    #[allow(clippy::should_implement_trait)]
    pub fn rem(self, m: Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        Ok(Self { bits: reduce(self.bits, m.bits, dm) })
    }

    /// Monic greatest common divisor. `gcd(0, 0) = 0`.
    pub fn gcd(self, other: Self) -> Self {
        let (mut a, mut b) = (self.bits, other.bits);
        while !b.is_zero() {
            let db = Self::from_bits(b).degree().unwrap_or(0);
            let r = reduce(a, b, db);
            a = b;
            b = r;
        }
        Self { bits: a }
    }

    /// Extended Euclid: returns `(g, u, v)` with `u·self + v·m = g = gcd(self, m)`.
    pub fn ext_gcd(self, m: Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self, m);
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(r1).expect("nonzero divisor");
            // Bezout coefficients stay below max(deg self, deg m), so these never overflow.
            let s = s0 + q.checked_mul(s1).expect("Bezout coefficient fits");
            let t = t0 + q.checked_mul(t1).expect("Bezout coefficient fits");
            (r0, r1) = (r1, r);
            (s0, s1) = (s1, s);
            (t0, t1) = (t1, t);
        }
        (r0, s0, t0)
    }

    /// `self · rhs mod m`, without forming the full product.
    pub fn mul_mod(self, rhs: Self, m: Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let a = reduce(self.bits, m.bits, dm);
        let b = reduce(rhs.bits, m.bits, dm);
        let Some(db) = Self::from_bits(b).degree() else {
            return Ok(Self::zero());
        };
        let top = W::with_bit(dm);
        let mut acc = W::zero();
        for i in (0..=db).rev() {
            acc = acc << 1;
            if acc & top != W::zero() {
                acc = acc ^ m.bits;
            }
            if b.bit(i) {
                acc = acc ^ a;
            }
        }
        Ok(Self { bits: acc })
    }

    /// `self² mod m`.
    pub fn sqr_mod(self, m: Self) -> Result<Self> {
        let dm = m.degree().ok_or(Error::DivisionByZero)?;
        let a = reduce(self.bits, m.bits, dm);
        if 2 * dm <= W::BITS {
            Ok(Self { bits: reduce(spread(a), m.bits, dm) })
        } else {
            Self::from_bits(a).mul_mod(Self::from_bits(a), m)
        }
    }

    /// Substitutes `x ↦ x + 1`, i.e. returns `self(x + 1)`.
    pub fn shift_by_one(self) -> Self {
        let mut acc = Self::zero();
        let mut pow = Self::one();
        let base = Self::from_bits(W::from_u64(0b11));
        let Some(d) = self.degree() else {
            return acc;
        };
        for k in 0..=d {
            if self.coeff(k) {
                acc += pow;
            }
            if k < d {
                pow = pow.checked_mul(base).expect("degree is preserved");
            }
        }
        acc
    }

    /// Converts to another word width; fails if the coefficients do not fit.
    pub fn widen<V: Word>(self) -> Result<Poly<V>> {
        match self.degree() {
            None => Ok(Poly::zero()),
            Some(d) if d < V::BITS => {
                let mut bits = V::zero();
                for k in self.exponents() {
                    bits = bits | V::with_bit(k);
                }
                Ok(Poly::from_bits(bits))
            }
            Some(_) => Err(Error::WordOverflow { bits: V::BITS }),
        }
    }

    /// Rabin irreducibility test. Constants and the zero polynomial are rejected.
    pub fn is_irreducible(self) -> Result<bool> {
        match self.degree() {
            None | Some(0) => Err(Error::DegreeTooSmall { min: 1, got: self.degree() }),
            Some(n) => Ok(RabinTest::new(n).test(self)),
        }
    }
}

/// Reduces `v` modulo `m`, where `dm = deg(m)`.
#[inline]
fn reduce<W: Word>(mut v: W, m: W, dm: u32) -> W {
    loop {
        let lz = v.leading_zeros();
        if lz == W::BITS {
            return v;
        }
        let dv = W::BITS - 1 - lz;
        if dv < dm {
            return v;
        }
        v = v ^ (m << (dv - dm) as usize);
    }
}

const fn spread_byte(b: u8) -> u16 {
    let mut out = 0u16;
    let mut i = 0;
    while i < 8 {
        if b & (1 << i) != 0 {
            out |= 1 << (2 * i);
        }
        i += 1;
    }
    out
}

static SPREAD: [u16; 256] = {
    let mut t = [0u16; 256];
    let mut i = 0;
    while i < 256 {
        t[i] = spread_byte(i as u8);
        i += 1;
    }
    t
};

/// Interleaves a zero bit after every bit of `v` (the GF(2) square). The caller
/// guarantees that `v` occupies at most the low half of the word.
#[inline]
fn spread<W: Word>(v: W) -> W {
    let mut out = W::zero();
    let mut rest = v;
    let mut shift = 0usize;
    let mask = W::from_u64(0xff);
    while !rest.is_zero() {
        let byte = (rest & mask).low_u64() as usize;
        out = out | (W::from_u64(SPREAD[byte] as u64) << shift);
        rest = rest >> 8;
        shift += 16;
    }
    out
}

/// Rabin's irreducibility criterion for a fixed degree `n`: `f` of degree `n`
/// is irreducible iff `x^(2^n) ≡ x (mod f)` and `gcd(x^(2^(n/p)) - x, f) = 1`
/// for every prime `p | n`.
///
/// Building the test once per degree amortizes the factorization of `n` over a
/// whole scan.
#[derive(Debug, Clone)]
pub struct RabinTest {
    n: u32,
    checkpoints: Vec<u32>,
}

impl RabinTest {
    pub fn new(n: u32) -> Self {
        let mut checkpoints: Vec<u32> = prime_factors(n).into_iter().map(|p| n / p).collect();
        checkpoints.sort_unstable();
        Self { n, checkpoints }
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    /// Runs the test on `f`, which must have degree exactly `n`.
    pub fn test<W: Word>(&self, f: Poly<W>) -> bool {
        debug_assert_eq!(f.degree(), Some(self.n));
        let n = self.n;
        if n == 1 {
            return true;
        }
        if !f.constant_term() {
            return false;
        }
        let x = Poly::<W>::x();
        let mut frob = x;
        let mut saved: Vec<Poly<W>> = Vec::with_capacity(self.checkpoints.len());
        let mut next = self.checkpoints.iter().peekable();
        for i in 1..=n {
            frob = frob.sqr_mod(f).expect("modulus is nonzero");
            if next.peek() == Some(&&i) {
                saved.push(frob);
                next.next();
            }
        }
        if frob != x {
            return false;
        }
        saved.into_iter().all(|g| (g + x).gcd(f).is_one())
    }
}

/// Distinct prime factors of `n`, increasing.
pub fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Irreducibility by trial division against every polynomial of degree
/// `1..=deg(f)/2`. Exponential in the degree; kept as an independent oracle
/// for the Rabin test.
pub fn is_irreducible_by_trial_division<W: Word>(f: Poly<W>) -> Result<bool> {
    let n = match f.degree() {
        None | Some(0) => return Err(Error::DegreeTooSmall { min: 1, got: f.degree() }),
        Some(n) => n,
    };
    let limit = 1u64 << (n / 2 + 1);
    for g in 2..limit {
        if f.rem(Poly::from_u64(g))?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

impl<W: Word> Add for Poly<W> {
    type Output = Self;

    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Self) -> Self {
        Self { bits: self.bits ^ rhs.bits }
    }
}

impl<W: Word> AddAssign for Poly<W> {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Self) {
        self.bits = self.bits ^ rhs.bits;
    }
}

/// Panics on word overflow; use [`Poly::checked_mul`] when the degrees are not
/// known to be small.
impl<W: Word> Mul for Poly<W> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        self.checked_mul(rhs).expect("carryless product overflowed the word")
    }
}

/// Orders by the integer value of the coefficient bit pattern.
impl<W: Word> Ord for Poly<W> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.bits.cmp(&other.bits)
    }
}

impl<W: Word> PartialOrd for Poly<W> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<W: Word> fmt::Debug for Poly<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({:#X})", self.bits)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u64) -> Poly {
        Poly::from_u64(bits)
    }

    #[test]
    fn addition_examples() {
        assert_eq!(p(0b11) + p(0b11), Poly::zero());
        assert_eq!(p(0b111) + p(0b11), p(0b100));
        assert_eq!(p(0x25) + p(0x29), p(0x0C));
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(p(0b11) * p(0b11), p(0b101));
        assert_eq!(p(0b11) * p(0b111), p(0b1001));
        assert_eq!(Poly::one() * p(0x3B), p(0x3B));
        assert_eq!(p(0x3B) * Poly::zero(), Poly::zero());
    }

    #[test]
    fn multiplication_overflow_is_reported() {
        let big = Poly::<u32>::monomial(20).unwrap();
        assert_eq!(big.checked_mul(big), Err(Error::WordOverflow { bits: 32 }));
        assert!(Poly::<u32>::monomial(32).is_err());
    }

    #[test]
    fn degree_of_zero_is_none() {
        assert_eq!(Poly::<u64>::zero().degree(), None);
        assert_eq!(Poly::<u64>::one().degree(), Some(0));
        assert_eq!(p(0x25).degree(), Some(5));
    }

    #[test]
    fn remainder_and_gcd_examples() {
        assert_eq!(p(0b1001).rem(p(0b111)).unwrap(), Poly::zero());
        assert_eq!(p(0b101).gcd(p(0b11)), p(0b11));
        assert_eq!(p(0b101).rem(Poly::zero()), Err(Error::DivisionByZero));
        assert_eq!(p(0b101).div_rem(Poly::zero()), Err(Error::DivisionByZero));
        let (q, r) = p(0b1001).div_rem(p(0b111)).unwrap();
        assert_eq!((q, r), (p(0b11), Poly::zero()));
    }

    #[test]
    fn ext_gcd_example() {
        let (g, u, v) = Poly::<u64>::x().ext_gcd(p(0b111));
        assert!(g.is_one());
        assert_eq!(u, p(0b11));
        assert_eq!(u * Poly::x() + v * p(0b111), g);
    }

    #[test]
    fn square_and_mul_mod_agree() {
        let m = p(0x11B);
        for a in 0..256u64 {
            let a = p(a);
            assert_eq!(a.square().unwrap(), a * a);
            assert_eq!(a.sqr_mod(m).unwrap(), (a * a).rem(m).unwrap());
            assert_eq!(a.mul_mod(p(0x53), m).unwrap(), (a * p(0x53)).rem(m).unwrap());
        }
    }

    #[test]
    fn irreducibility_examples() {
        assert!(p(0b111).is_irreducible().unwrap());
        assert!(!p(0b101).is_irreducible().unwrap());
        assert!(p(0b11111).is_irreducible().unwrap());
        assert!(p(0b10).is_irreducible().unwrap());
        assert!(Poly::<u64>::one().is_irreducible().is_err());
        assert!(Poly::<u64>::zero().is_irreducible().is_err());
    }

    #[test]
    fn rabin_handles_wide_moduli() {
        // x^127 + x + 1 is a known trinomial irreducible; exercises the mul_mod path.
        let f = Poly::<u128>::from_exponents(&[127, 1, 0]).unwrap();
        assert!(f.is_irreducible().unwrap());
        let a = Poly::<u128>::from_exponents(&[63, 1, 0]).unwrap();
        let b = Poly::<u128>::from_exponents(&[64, 4, 3, 1, 0]).unwrap();
        assert!(!(a * b).is_irreducible().unwrap());
    }

    #[test]
    fn shift_by_one_examples() {
        assert_eq!(p(0b111).shift_by_one(), p(0b111));
        assert_eq!(p(0b1011).shift_by_one(), p(0b1101));
        assert_eq!(Poly::<u64>::x().shift_by_one(), p(0b11));
    }

    #[test]
    fn prime_factor_lists() {
        assert_eq!(prime_factors(1), Vec::<u32>::new());
        assert_eq!(prime_factors(24), vec![2, 3]);
        assert_eq!(prime_factors(31), vec![31]);
    }

    #[test]
    fn widen_and_narrow() {
        let f = p(0x3B);
        assert_eq!(f.widen::<u16>().unwrap(), Poly::<u16>::from_u64(0x3B));
        assert!(Poly::<u64>::monomial(40).unwrap().widen::<u32>().is_err());
    }
}
