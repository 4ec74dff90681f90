//! Closed-form counts and the inversion pipeline from field tallies to bucket
//! sizes.
//!
//! The closed forms (`irreducible_count`, `trace1_count`, `diff_count`) are
//! generic over the integer type so they can be evaluated in `i64`, `i128` or
//! arbitrary precision. They do not determine individual buckets on their own;
//! [`predicted_row`] additionally needs `G_0(n)`, `G_1(n)`, the numbers of
//! field generators with both traces equal to 0 (resp. 1), which come from
//! exhaustive trace-pair tallies followed by Möbius inversion.

use std::collections::BTreeMap;
use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, FromPrimitive, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{n_counts_within, TracePairCounts, DEFAULT_FIELD_BUDGET};

/// Signed integer type the closed-form counts can be evaluated in.
pub trait CountInt: Integer + Signed + Clone + Debug + FromPrimitive + CheckedAdd + CheckedSub + CheckedMul {}

impl<T> CountInt for T where T: Integer + Signed + Clone + Debug + FromPrimitive + CheckedAdd + CheckedSub + CheckedMul {}

/// Möbius function by trial factorization.
pub fn mobius(n: u64) -> Result<i8> {
    if n == 0 {
        return Err(Error::NonPositive);
    }
    let mut rest = n;
    let mut sign = 1i8;
    let mut p = 2u64;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            sign = -sign;
        }
        p += 1;
    }
    if rest > 1 {
        sign = -sign;
    }
    Ok(sign)
}

/// Positive divisors of `n`, increasing.
pub fn divisors(n: u32) -> Vec<u32> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1u32;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

fn pow2<T: CountInt>(e: u32, n: u32) -> Result<T> {
    let two = T::from_u8(2).expect("2 is representable");
    num_traits::checked_pow(two, e as usize).ok_or(Error::CountOverflow(n))
}

fn from_u64<T: CountInt>(v: u64, n: u32) -> Result<T> {
    T::from_u64(v).ok_or(Error::CountOverflow(n))
}

/// `Σ_{d | n, keep(d)} μ(d) 2^{n/d}`.
fn mobius_power_sum<T: CountInt>(n: u32, keep: impl Fn(u32) -> bool) -> Result<T> {
    let mut acc = T::zero();
    for d in divisors(n).into_iter().filter(|&d| keep(d)) {
        let term = pow2::<T>(n / d, n)?;
        acc = match mobius(d as u64)? {
            1 => acc.checked_add(&term),
            -1 => acc.checked_sub(&term),
            _ => Some(acc),
        }
        .ok_or(Error::CountOverflow(n))?;
    }
    Ok(acc)
}

fn exact_div<T: CountInt>(num: T, den: u64, n: u32) -> Result<T> {
    let den = from_u64::<T>(den, n)?;
    let (q, r) = num.div_rem(&den);
    if !r.is_zero() {
        return Err(Error::Inconsistent(format!("count at n = {n} is not an integer")));
    }
    Ok(q)
}

fn positive(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::NonPositive)
    } else {
        Ok(())
    }
}

/// Number of irreducibles of degree `n`: `(1/n) Σ_{d|n} μ(d) 2^{n/d}`.
pub fn irreducible_count<T: CountInt>(n: u32) -> Result<T> {
    positive(n)?;
    exact_div(mobius_power_sum(n, |_| true)?, n as u64, n)
}

/// Number of trace-one irreducibles of degree `n`:
/// `(1/2n) Σ_{d|n, d odd} μ(d) 2^{n/d}`.
pub fn trace1_count<T: CountInt>(n: u32) -> Result<T> {
    positive(n)?;
    exact_div(mobius_power_sum(n, |d| d % 2 == 1)?, 2 * n as u64, n)
}

/// `|S_{1,1}(n)| - |S_{0,0}(n)|`: zero for odd `n`, and the number of
/// trace-one irreducibles of degree `n/2` for even `n`.
pub fn diff_count<T: CountInt>(n: u32) -> Result<T> {
    if n < 2 {
        return Err(Error::DegreeOutOfRange { n, min: 2, max: u32::MAX });
    }
    if n % 2 == 1 {
        Ok(T::zero())
    } else {
        trace1_count(n / 2)
    }
}

/// `Σ_{d | m} μ(d) 2^{n/2d}` with `m` the odd part of even `n`; equals
/// `G_1(n) - G_0(n)`.
pub fn generator_gap<T: CountInt>(n: u32) -> Result<T> {
    if n < 2 || n % 2 == 1 {
        return Err(Error::OddDegree(n));
    }
    let m = n >> n.trailing_zeros();
    let mut acc = T::zero();
    for d in divisors(m) {
        let term = pow2::<T>(n / (2 * d), n)?;
        acc = match mobius(d as u64)? {
            1 => acc.checked_add(&term),
            -1 => acc.checked_sub(&term),
            _ => Some(acc),
        }
        .ok_or(Error::CountOverflow(n))?;
    }
    Ok(acc)
}

/// Field tallies and the derived `H_i`, `G_i` values needed for one target
/// degree `n = 2^k·m` (`m` odd).
///
/// For odd `n` the `G_i(d)` are recovered for every `d | n` by plain Möbius
/// inversion of `N_i(n) = Σ_{d|n} G_i(d)`. For even `n` only degrees `2^k·e`
/// with `e | m` take part: `H_1(e) = N_1(2^k e)`,
/// `H_0(e) = N_0(2^k e) - (2^{2^{k-1} e} - 1)`, and
/// `G_i(2^k e) = Σ_{d|e} μ(e/d) H_i(d)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingTables {
    pub n: u32,
    /// `N_0(d)`, `N_1(d)` for each degree `d` that was tallied.
    pub n_values: BTreeMap<u32, TracePairCounts>,
    /// `(H_0(e), H_1(e))` keyed by odd `e | m`; empty for odd `n`.
    pub h_values: BTreeMap<u32, (i64, i64)>,
    /// `(G_0(d), G_1(d))` keyed by degree.
    pub g_values: BTreeMap<u32, (i64, i64)>,
}

impl CountingTables {
    /// Tallies every required field within `field_budget` and inverts.
    pub fn build(n: u32, field_budget: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::DegreeOutOfRange { n, min: 2, max: field_budget });
        }
        let k = n.trailing_zeros();
        let m = n >> k;
        let degrees: Vec<u32> = if k == 0 { divisors(n) } else { divisors(m).into_iter().map(|e| e << k).collect() };
        let mut n_values = BTreeMap::new();
        for &d in &degrees {
            n_values.insert(d, n_counts_within(d, field_budget)?);
        }
        Self::from_tallies(n, n_values)
    }

    /// Inverts already-computed tallies; `n_values` must cover every degree
    /// [`CountingTables::build`] would tally.
    pub fn from_tallies(n: u32, n_values: BTreeMap<u32, TracePairCounts>) -> Result<Self> {
        let k = n.trailing_zeros();
        let m = n >> k;
        let tally = |d: u32| -> Result<(i64, i64)> {
            let c = n_values.get(&d).ok_or_else(|| Error::Inconsistent(format!("missing N_i({d}) for target {n}")))?;
            Ok((c.n0 as i64, c.n1 as i64))
        };
        let mut h_values = BTreeMap::new();
        let mut g_values = BTreeMap::new();
        if k == 0 {
            for d in divisors(n) {
                let mut g = (0i64, 0i64);
                for e in divisors(d) {
                    let mu = mobius(e as u64)? as i64;
                    let (n0, n1) = tally(d / e)?;
                    g.0 += mu * n0;
                    g.1 += mu * n1;
                }
                g_values.insert(d, g);
            }
        } else {
            for e in divisors(m) {
                let (n0, n1) = tally(e << k)?;
                let subfield = (1i64 << ((1u32 << (k - 1)) * e)) - 1;
                h_values.insert(e, (n0 - subfield, n1));
            }
            for e in divisors(m) {
                let mut g = (0i64, 0i64);
                for d in divisors(e) {
                    let mu = mobius((e / d) as u64)? as i64;
                    let (h0, h1) = h_values[&d];
                    g.0 += mu * h0;
                    g.1 += mu * h1;
                }
                g_values.insert(e << k, g);
            }
        }
        let tables = Self { n, n_values, h_values, g_values };
        tables.check_invariants()?;
        Ok(tables)
    }

    pub fn check_invariants(&self) -> Result<()> {
        for (d, c) in &self.n_values {
            if c.n0 + 1 != c.n1 {
                return Err(Error::Inconsistent(format!("N_0({d}) != N_1({d}) - 1")));
            }
        }
        for (&d, &(g0, g1)) in &self.g_values {
            if g0 < 0 || g1 < 0 {
                return Err(Error::Inconsistent(format!("negative G_i({d})")));
            }
            if d >= 2 && (g0 % d as i64 != 0 || g1 % d as i64 != 0) {
                return Err(Error::Inconsistent(format!("{d} does not divide G_i({d})")));
            }
        }
        Ok(())
    }

    /// `(G_0(n), G_1(n))` for the target degree.
    pub fn target(&self) -> (i64, i64) {
        self.g_values[&self.n]
    }
}

/// `(G_0(n), G_1(n))` from exhaustive field tallies within the default budget.
pub fn g_counts(n: u32) -> Result<(i64, i64)> {
    Ok(CountingTables::build(n, DEFAULT_FIELD_BUDGET)?.target())
}

/// Bucket sizes predicted without enumerating polynomials.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PredictedRow {
    pub n: u32,
    pub s00: u64,
    pub s01: u64,
    pub s10: u64,
    pub s11: u64,
    pub route: String,
}

impl PredictedRow {
    pub fn counts(&self) -> [u64; 4] {
        [self.s00, self.s01, self.s10, self.s11]
    }

    /// Checks the closed-form relations every row must satisfy.
    pub fn check(&self) -> Result<()> {
        let n = self.n;
        let total: i128 = irreducible_count(n)?;
        let t1: i128 = trace1_count(n)?;
        let diff: i128 = diff_count(n)?;
        let [s00, s01, s10, s11] = self.counts().map(|v| v as i128);
        let ok = s01 == s10 && s00 + s01 + s10 + s11 == total && s11 + s10 == t1 && s11 - s00 == diff;
        if ok {
            Ok(())
        } else {
            Err(Error::Inconsistent(format!("predicted row for n = {n} violates the closed forms")))
        }
    }
}

/// Diagonal buckets from `|S_{i,i}(n)| = G_i(n)/n`; the two off-diagonal
/// buckets are equal (reciprocation swaps them) and share the remainder of
/// the irreducible count.
pub fn predicted_row(n: u32) -> Result<PredictedRow> {
    predicted_row_from(&CountingTables::build(n, DEFAULT_FIELD_BUDGET)?)
}

pub fn predicted_row_from(tables: &CountingTables) -> Result<PredictedRow> {
    let n = tables.n;
    let (g0, g1) = tables.target();
    let s00 = g0 / n as i64;
    let s11 = g1 / n as i64;
    let total: i64 = irreducible_count(n)?;
    let off = total - s00 - s11;
    if off < 0 || off % 2 != 0 {
        return Err(Error::Inconsistent(format!("off-diagonal remainder {off} at n = {n}")));
    }
    let row = PredictedRow {
        n,
        s00: s00 as u64,
        s01: (off / 2) as u64,
        s10: (off / 2) as u64,
        s11: s11 as u64,
        route: "analytic+field".to_owned(),
    };
    row.check()?;
    Ok(row)
}

/// Closed forms only, anchored by `|S_{1,1}(n)| = G_1(n)/n`:
/// `s00 = s11 - diff_count(n)` and `s10 = s01 = trace1_count(n) - s11`.
pub fn analytic_row_from(tables: &CountingTables) -> Result<PredictedRow> {
    let n = tables.n;
    let s11 = tables.target().1 / n as i64;
    let diff: i64 = diff_count(n)?;
    let t1: i64 = trace1_count(n)?;
    let s00 = s11 - diff;
    let s10 = t1 - s11;
    if s00 < 0 || s10 < 0 {
        return Err(Error::Inconsistent(format!("negative analytic bucket at n = {n}")));
    }
    let row = PredictedRow {
        n,
        s00: s00 as u64,
        s01: s10 as u64,
        s10: s10 as u64,
        s11: s11 as u64,
        route: "analytic".to_owned(),
    };
    row.check()?;
    Ok(row)
}
