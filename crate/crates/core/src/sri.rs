//! Self-reciprocal irreducibles of trace one, `SRI_1(n)`, and the descent
//! that fixes the parity of `|S_{1,1}(n)|`.
//!
//! For even `n` every member is `g^Q` for a unique `g` of degree `n/2`, and
//! `g^Q` is irreducible iff `g` is irreducible with cotrace 1. The trace of
//! `g^Q` equals the trace of `g`, so `SRI_1(n)` is exactly the Q-image of
//! `S_{1,1}(n/2)` (of `{x + 1}` when `n = 2`). Reciprocation on `g` pairs the
//! members up; the unpaired ones come from self-reciprocal `g`, i.e. from
//! `SRI_1(n/2)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::classify::{reciprocal, Bucket};
use crate::enumerate::{enumerate_bucket, ScanConfig};
use crate::error::{Error, Result};
use crate::poly::{Poly, RabinTest};
use crate::transforms::{is_self_reciprocal, q_root, q_transform};

/// `SRI_1(n)`, sorted by bit pattern.
///
/// Odd `n > 1` gives the empty set, `n = 1` gives `{x + 1}`.
pub fn enumerate_sri1(n: u32, config: &ScanConfig) -> Result<Vec<Poly>> {
    match n {
        0 => Err(Error::NonPositive),
        1 => Ok(vec![Poly::from_u64(0b11)]),
        _ if n % 2 == 1 => Ok(Vec::new()),
        2 => Ok(vec![q_transform(Poly::from_u64(0b11))?]),
        _ => {
            let mut out = enumerate_bucket(n / 2, Bucket::S11, config)?
                .into_iter()
                .map(q_transform)
                .collect::<Result<Vec<_>>>()?;
            out.sort_unstable();
            Ok(out)
        }
    }
}

/// Independent route: scan every palindrome of degree `n` with constant term
/// 1 and keep the irreducible ones whose trace coefficient is 1.
pub fn enumerate_sri1_by_scan(n: u32) -> Result<Vec<Poly>> {
    if n == 0 || n > 40 {
        return Err(Error::DegreeOutOfRange { n, min: 1, max: 40 });
    }
    if n == 1 {
        return Ok(vec![Poly::from_u64(0b11)]);
    }
    let test = RabinTest::new(n);
    // Free coefficients are f_1..f_{floor(n/2)}; the rest are mirrored.
    let half = n / 2;
    let mut out = Vec::new();
    for low in 0..1u64 << half {
        let mut bits = 1u64 | (1u64 << n);
        for k in 1..=half {
            if low >> (k - 1) & 1 == 1 {
                bits |= 1 << k | 1 << (n - k);
            }
        }
        let f = Poly::from_u64(bits);
        debug_assert!(is_self_reciprocal(f));
        if f.coeff(n - 1) && test.test(f) {
            out.push(f);
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Pairing of `SRI_1(n)` under `f = g^Q ↦ (g*)^Q`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SriPartition {
    pub n: u32,
    /// Unordered pairs of distinct members, smaller bit pattern first.
    pub pairs: Vec<(Poly, Poly)>,
    /// Members whose Q-root is self-reciprocal.
    pub fixed: Vec<Poly>,
}

impl SriPartition {
    pub fn size(&self) -> usize {
        2 * self.pairs.len() + self.fixed.len()
    }
}

/// The partner of `f = g^Q` is `(g*)^Q`.
pub fn sri_partner(f: Poly) -> Result<Poly> {
    q_transform(reciprocal(q_root(f)?)?)
}

pub fn sri_pairing(n: u32, config: &ScanConfig) -> Result<SriPartition> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let members = enumerate_sri1(n, config)?;
    let set: BTreeSet<Poly> = members.iter().copied().collect();
    let mut pairs = Vec::new();
    let mut fixed = Vec::new();
    for &f in &members {
        let g = sri_partner(f)?;
        if !set.contains(&g) {
            return Err(Error::Inconsistent(format!("partner {g:?} of {f:?} is not in SRI_1({n})")));
        }
        match f.cmp(&g) {
            std::cmp::Ordering::Equal => fixed.push(f),
            std::cmp::Ordering::Less => pairs.push((f, g)),
            std::cmp::Ordering::Greater => {}
        }
    }
    Ok(SriPartition { n, pairs, fixed })
}

/// Predicted parity of `|S_{1,1}(n)|`: odd exactly when `n` is a power of two.
pub fn parity_verdict(n: u32) -> bool {
    n >= 2 && n.is_power_of_two()
}
