//! Trace and cotrace classification of irreducible polynomials over GF(2).
//!
//! Every irreducible `f = x^n + f_{n-1}x^{n-1} + ... + f_1x + 1` of degree
//! `n ≥ 2` falls into one of four buckets `S_{i,j}(n)` according to its trace
//! `f_{n-1}` and cotrace `f_1`. This crate computes the bucket sizes three
//! ways (exhaustive enumeration, field-element trace tallies with Möbius
//! inversion, and closed-form counts) and checks the explicit bijection
//! between `S_{1,1}(n)` and `S_{0,0}(n)` for odd `n`, the `ψ`/`ψ⁻¹` transition
//! table behind it, and the parity of `|S_{1,1}(n)|` via self-reciprocal
//! irreducibles.
//!
//! Polynomial code is generic over the storage word ([`Word`]); [`Poly`]
//! defaults to `u64`. Closed-form counts are generic over the integer type
//! ([`counting::CountInt`]) and run in `i64`, `i128` or [`num_bigint::BigInt`].

pub mod bijection;
pub mod classify;
pub mod counting;
pub mod enumerate;
mod error;
pub mod field;
pub mod poly;
pub mod sri;
pub mod text;
pub mod transforms;
mod word;

pub use classify::{bucket, cotrace_coeff, reciprocal, signature, trace_coeff, Bucket};
pub use enumerate::{classify_all, BucketCounts, ScanConfig};
pub use error::{Error, Result};
pub use field::{FieldCtx, TracePairCounts};
pub use poly::Poly;
pub use text::{format, parse, Style};
pub use transforms::Gl2Matrix;
pub use word::Word;

pub use num_bigint;

pub type Poly32 = Poly<u32>;
pub type Poly64 = Poly<u64>;
pub type Poly128 = Poly<u128>;

pub type Field64 = FieldCtx<u64>;
pub type Field128 = FieldCtx<u128>;

/// Arbitrary-precision count type for closed forms beyond `i128`.
pub type BigCount = num_bigint::BigInt;
