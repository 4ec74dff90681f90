//! Coefficient-level classification of irreducibles: trace, cotrace,
//! signature and the four trace/cotrace buckets.
//!
//! For monic `f = x^n + f_{n-1} x^{n-1} + ... + f_1 x + 1` of degree `n ≥ 2`
//! the trace is `f_{n-1}` and the cotrace is `f_1`. Degree one is rejected
//! throughout, since the buckets are only defined from degree two on.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::word::Word;

/// Membership label of `S_{i,j}(n)`: `i` is the trace bit, `j` the cotrace bit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Bucket {
    pub trace: bool,
    pub cotrace: bool,
}

impl Bucket {
    pub const S00: Bucket = Bucket::new(false, false);
    pub const S01: Bucket = Bucket::new(false, true);
    pub const S10: Bucket = Bucket::new(true, false);
    pub const S11: Bucket = Bucket::new(true, true);

    /// All four buckets in rendering order.
    pub const ALL: [Bucket; 4] = [Self::S00, Self::S01, Self::S10, Self::S11];

    pub const fn new(trace: bool, cotrace: bool) -> Self {
        Self { trace, cotrace }
    }

    /// Position in [`Bucket::ALL`].
    pub const fn index(self) -> usize {
        ((self.trace as usize) << 1) | self.cotrace as usize
    }

    /// The bucket with trace and cotrace exchanged.
    pub const fn swapped(self) -> Self {
        Self::new(self.cotrace, self.trace)
    }
}

impl fmt::Display for Bucket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S_{{{},{}}}", self.trace as u8, self.cotrace as u8)
    }
}

fn degree_at_least_two<W: Word>(f: Poly<W>) -> Result<u32> {
    match f.degree() {
        Some(n) if n >= 2 => Ok(n),
        got => Err(Error::DegreeTooSmall { min: 2, got }),
    }
}

fn classifiable<W: Word>(f: Poly<W>) -> Result<u32> {
    let n = degree_at_least_two(f)?;
    if !f.constant_term() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(n)
}

/// `f_{n-1}`.
pub fn trace_coeff<W: Word>(f: Poly<W>) -> Result<bool> {
    let n = classifiable(f)?;
    Ok(f.coeff(n - 1))
}

/// `f_1`.
pub fn cotrace_coeff<W: Word>(f: Poly<W>) -> Result<bool> {
    classifiable(f)?;
    Ok(f.coeff(1))
}

/// Parity of `Σ k·f_k` over `2 ≤ k ≤ n-2`: only odd exponents contribute, so
/// this is the parity of the number of odd interior exponents present.
pub fn signature<W: Word>(f: Poly<W>) -> Result<bool> {
    let n = degree_at_least_two(f)?;
    Ok(signature_unchecked(f.bits(), n))
}

#[inline]
pub(crate) fn signature_unchecked<W: Word>(bits: W, n: u32) -> bool {
    if n < 4 {
        return false;
    }
    // bits 3, 5, ... up to n-2; bit 1 is excluded because k starts at 2.
    let below = W::with_bit(n - 1) - W::one();
    let odd = W::from_u64(0xAAAA_AAAA_AAAA_AAAA);
    let odd = odd | (odd << (64 % W::BITS as usize));
    let mask = odd & below & !W::from_u64(0b11);
    (bits & mask).count_ones() % 2 == 1
}

/// Trace/cotrace bucket of an irreducible of degree at least two.
pub fn bucket<W: Word>(f: Poly<W>) -> Result<Bucket> {
    let n = classifiable(f)?;
    if !f.is_irreducible()? {
        return Err(Error::Reducible);
    }
    Ok(Bucket::new(f.coeff(n - 1), f.coeff(1)))
}

/// `x^n f(1/x)`: the coefficient sequence reversed over width `n + 1`.
pub fn reciprocal<W: Word>(f: Poly<W>) -> Result<Poly<W>> {
    let n = f.degree().ok_or(Error::ZeroConstantTerm)?;
    if !f.constant_term() {
        return Err(Error::ZeroConstantTerm);
    }
    Ok(reverse(f, n))
}

#[inline]
pub(crate) fn reverse<W: Word>(f: Poly<W>, n: u32) -> Poly<W> {
    Poly::from_bits(f.bits().reverse_bits() >> (W::BITS - 1 - n) as usize)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(bits: u64) -> Poly {
        Poly::from_u64(bits)
    }

    #[test]
    fn trace_and_cotrace_examples() {
        assert_eq!((trace_coeff(p(0x3B)).unwrap(), cotrace_coeff(p(0x3B)).unwrap()), (true, true));
        assert_eq!((trace_coeff(p(0b111)).unwrap(), cotrace_coeff(p(0b111)).unwrap()), (true, true));
        assert_eq!((trace_coeff(p(0x25)).unwrap(), cotrace_coeff(p(0x25)).unwrap()), (false, false));
    }

    #[test]
    fn degree_one_is_rejected() {
        assert!(matches!(trace_coeff(p(0b11)), Err(Error::DegreeTooSmall { min: 2, .. })));
        assert!(matches!(cotrace_coeff(p(0b11)), Err(Error::DegreeTooSmall { .. })));
        assert!(matches!(bucket(p(0b11)), Err(Error::DegreeTooSmall { .. })));
        assert!(matches!(signature(Poly::<u64>::zero()), Err(Error::DegreeTooSmall { .. })));
    }

    #[test]
    fn signature_examples() {
        assert!(!signature(p(0b1011)).unwrap());
        assert!(signature(p(0x3B)).unwrap());
        assert!(!signature(p(0x25)).unwrap());
        assert!(!signature(p(0b111)).unwrap());
    }

    #[test]
    fn signature_matches_definition() {
        for bits in (1u64 << 12)..(1u64 << 13) {
            let f = p(bits);
            let n = 12;
            let direct = (2..=n - 2).filter(|&k| f.coeff(k)).map(|k| k as u64).sum::<u64>() % 2 == 1;
            assert_eq!(signature(f).unwrap(), direct, "{f:?}");
        }
        let wide = Poly::<u128>::from_exponents(&[100, 99, 97, 71, 3, 2, 0]).unwrap();
        assert!(signature(wide).unwrap());
    }

    #[test]
    fn bucket_examples() {
        assert_eq!(bucket(p(0b1101)).unwrap(), Bucket::S10);
        assert_eq!(bucket(p(0b1011)).unwrap(), Bucket::S01);
        assert_eq!(bucket(p(0x29)).unwrap(), Bucket::S00);
        assert_eq!(bucket(p(0b101)), Err(Error::Reducible));
        assert_eq!(bucket(p(0b110)), Err(Error::ZeroConstantTerm));
    }

    #[test]
    fn reciprocal_examples() {
        assert_eq!(reciprocal(p(0b1011)).unwrap(), p(0b1101));
        assert_eq!(reciprocal(p(0b111)).unwrap(), p(0b111));
        assert_eq!(reciprocal(p(0b110)), Err(Error::ZeroConstantTerm));
        let r = reciprocal(p(0b1101)).unwrap();
        assert_eq!(bucket(r).unwrap(), Bucket::S01);
    }

    #[test]
    fn bucket_rendering_order() {
        let labels: Vec<String> = Bucket::ALL.iter().map(|b| b.to_string()).collect();
        assert_eq!(labels, ["S_{0,0}", "S_{0,1}", "S_{1,0}", "S_{1,1}"]);
        for (i, b) in Bucket::ALL.iter().enumerate() {
            assert_eq!(b.index(), i);
        }
    }
}
