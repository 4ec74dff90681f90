//! Machine words used as packed coefficient storage.

use std::fmt::{Debug, LowerHex, UpperHex};
use std::hash::Hash;

use num_traits::{PrimInt, Unsigned};

/// An unsigned machine word holding the coefficients of a binary polynomial,
/// bit `k` being the coefficient of `x^k`.
pub trait Word: PrimInt + Unsigned + Hash + Debug + LowerHex + UpperHex + Default + Send + Sync + 'static {
    /// Width of the word in bits. A polynomial stored in it has degree at most `BITS - 1`.
    const BITS: u32;

    /// Truncating conversion from `u64`.
    fn from_u64(v: u64) -> Self;

    /// The low 64 bits of the word.
    fn low_u64(self) -> u64;

    #[inline]
    fn bit(self, k: u32) -> bool {
        k < Self::BITS && (self >> k as usize) & Self::one() == Self::one()
    }

    #[inline]
    fn with_bit(k: u32) -> Self {
        Self::one() << k as usize
    }
}

macro_rules! impl_word {
    ($($t:ty),*) => {$(
        impl Word for $t {
            const BITS: u32 = <$t>::BITS;

            #[inline]
            fn from_u64(v: u64) -> Self {
                v as $t
            }

            #[inline]
            fn low_u64(self) -> u64 {
                self as u64
            }
        }
    )*};
}

impl_word!(u8, u16, u32, u64, u128);
