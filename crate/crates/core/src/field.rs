//! Arithmetic in `F_{2^n}` as residues modulo a fixed irreducible, and the
//! trace-pair tallies `N_0(n)`, `N_1(n)` together with the Kloosterman sum
//! `K(n) = Σ_{α ≠ 0} (-1)^{Tr(α + α⁻¹)}`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{Poly, RabinTest};
use crate::word::Word;

/// Default ceiling on the extension degree for exhaustive field scans
/// (2^24 elements).
pub const DEFAULT_FIELD_BUDGET: u32 = 24;

/// `F_{2^n}` represented as `F_2[x] / (modulus)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldCtx<W: Word = u64> {
    n: u32,
    modulus: Poly<W>,
    /// Bit `k` is `Tr(x^k mod modulus)`.
    trace_mask: W,
}

impl<W: Word> FieldCtx<W> {
    /// Field built on the numerically smallest irreducible of degree `n` with
    /// constant term 1 (for `n = 1` that is `x + 1`).
    pub fn new(n: u32) -> Result<Self> {
        let max = (W::BITS / 2).min(62);
        if n == 0 || n > max {
            return Err(Error::DegreeOutOfRange { n, min: 1, max });
        }
        let test = RabinTest::new(n);
        let modulus = (0..1u64 << (n - 1))
            .map(|low| Poly::from_u64((1u64 << n) | (low << 1) | 1))
            .find(|&f| test.test(f))
            .expect("irreducibles exist in every degree");
        Self::with_modulus(modulus)
    }

    /// Field built on a caller-chosen irreducible modulus.
    pub fn with_modulus(modulus: Poly<W>) -> Result<Self> {
        let n = match modulus.degree() {
            Some(n) if n >= 1 && 2 * n <= W::BITS => n,
            Some(n) if n >= 1 => return Err(Error::WordOverflow { bits: W::BITS }),
            got => return Err(Error::DegreeTooSmall { min: 1, got }),
        };
        if !modulus.is_irreducible()? {
            return Err(Error::Reducible);
        }
        let mut ctx = Self { n, modulus, trace_mask: W::zero() };
        let mut mask = W::zero();
        for k in 0..n {
            let basis = Poly::monomial(k)?.rem(modulus)?;
            if ctx.trace_by_definition(basis)? {
                mask = mask | W::with_bit(k);
            }
        }
        ctx.trace_mask = mask;
        Ok(ctx)
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> Poly<W> {
        self.modulus
    }

    pub fn trace_mask(&self) -> W {
        self.trace_mask
    }

    /// Number of field elements, `2^n`.
    pub fn order(&self) -> u64 {
        1u64 << self.n
    }

    fn check_residue(&self, a: Poly<W>) -> Result<()> {
        match a.degree() {
            Some(d) if d >= self.n => Err(Error::ResidueOutOfRange { degree: d, n: self.n }),
            _ => Ok(()),
        }
    }

    /// Absolute trace via the precomputed mask.
    pub fn trace(&self, a: Poly<W>) -> Result<bool> {
        self.check_residue(a)?;
        Ok(self.trace_fast(a))
    }

    #[inline]
    fn trace_fast(&self, a: Poly<W>) -> bool {
        (a.bits() & self.trace_mask).count_ones() & 1 == 1
    }

    /// Absolute trace straight from `α + α² + ... + α^{2^{n-1}}`.
    pub fn trace_by_definition(&self, a: Poly<W>) -> Result<bool> {
        self.check_residue(a)?;
        let mut acc = Poly::zero();
        let mut conj = a;
        for _ in 0..self.n {
            acc += conj;
            conj = conj.sqr_mod(self.modulus)?;
        }
        debug_assert!(acc.is_zero() || acc.is_one(), "trace must lie in F_2");
        Ok(acc.is_one())
    }

    pub fn mul(&self, a: Poly<W>, b: Poly<W>) -> Result<Poly<W>> {
        self.check_residue(a)?;
        self.check_residue(b)?;
        a.mul_mod(b, self.modulus)
    }

    pub fn square(&self, a: Poly<W>) -> Result<Poly<W>> {
        self.check_residue(a)?;
        a.sqr_mod(self.modulus)
    }

    /// Multiplicative inverse by extended Euclid.
    pub fn inverse(&self, a: Poly<W>) -> Result<Poly<W>> {
        self.check_residue(a)?;
        if a.is_zero() {
            return Err(Error::ZeroInverse);
        }
        Ok(self.inverse_unchecked(a))
    }

    #[inline]
    fn inverse_unchecked(&self, a: Poly<W>) -> Poly<W> {
        let (g, u, _) = a.ext_gcd(self.modulus);
        debug_assert!(g.is_one());
        u
    }

    /// Tallies trace pairs over the nonzero residues in `[lo, hi)`.
    ///
    /// Inverse pairs `{α, α⁻¹}` are visited through their smaller member only,
    /// so disjoint ranges never count a pair twice.
    fn tally_range(&self, lo: u64, hi: u64) -> PairTally {
        let mut t = PairTally::default();
        for raw in lo.max(1)..hi {
            let a = Poly::<W>::from_u64(raw);
            let inv = self.inverse_unchecked(a);
            if a > inv {
                continue;
            }
            let weight = if a == inv { 1 } else { 2 };
            match (self.trace_fast(a), self.trace_fast(inv)) {
                (false, false) => {
                    t.n0 += weight;
                    t.kloosterman += weight as i64;
                }
                (true, true) => {
                    t.n1 += weight;
                    t.kloosterman += weight as i64;
                }
                _ => t.kloosterman -= weight as i64,
            }
        }
        t
    }

    /// Computes `N_0`, `N_1` and the Kloosterman sum over `chunks` disjoint
    /// ranges in parallel. The result does not depend on `chunks`.
    pub fn trace_pair_counts_chunked(&self, chunks: u64) -> TracePairCounts {
        let total = self.order();
        let chunks = chunks.clamp(1, total);
        let step = total.div_ceil(chunks);
        let t = (0..chunks)
            .into_par_iter()
            .map(|i| self.tally_range(i * step, ((i + 1) * step).min(total)))
            .reduce(PairTally::default, PairTally::merge);
        TracePairCounts { n: self.n, n0: t.n0, n1: t.n1, kloosterman: t.kloosterman }
    }

    pub fn trace_pair_counts(&self) -> TracePairCounts {
        let chunks = (rayon::current_num_threads() as u64 * 8).max(1);
        self.trace_pair_counts_chunked(chunks)
    }
}

#[derive(Debug, Default, Clone, Copy)]
struct PairTally {
    n0: u64,
    n1: u64,
    kloosterman: i64,
}

impl PairTally {
    fn merge(self, o: Self) -> Self {
        Self { n0: self.n0 + o.n0, n1: self.n1 + o.n1, kloosterman: self.kloosterman + o.kloosterman }
    }
}

/// `N_i(n)` = number of nonzero `α ∈ F_{2^n}` with `Tr(α) = Tr(α⁻¹) = i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TracePairCounts {
    pub n: u32,
    pub n0: u64,
    pub n1: u64,
    pub kloosterman: i64,
}

impl TracePairCounts {
    /// Checks `4·N_1 = 2^n + 1 + K`.
    pub fn satisfies_kloosterman_identity(&self) -> bool {
        let rhs = (1i128 << self.n) + 1 + self.kloosterman as i128;
        rhs == 4 * self.n1 as i128
    }
}

fn check_budget(n: u32, budget: u32) -> Result<()> {
    if n == 0 || n > budget {
        return Err(Error::DegreeOutOfRange { n, min: 1, max: budget });
    }
    Ok(())
}

/// Exhaustive `N_0(n)`, `N_1(n)` and `K(n)` within the default budget.
pub fn n_counts(n: u32) -> Result<TracePairCounts> {
    n_counts_within(n, DEFAULT_FIELD_BUDGET)
}

pub fn n_counts_within(n: u32, budget: u32) -> Result<TracePairCounts> {
    check_budget(n, budget)?;
    Ok(FieldCtx::<u64>::new(n)?.trace_pair_counts())
}

/// Verifies `N_1(n) = (2^n + 1 + K)/4` from an exhaustive tally.
pub fn kloosterman_check(n: u32) -> Result<bool> {
    Ok(n_counts(n)?.satisfies_kloosterman_identity())
}
