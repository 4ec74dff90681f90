//! The explicit bijection between `S_{1,1}(n)` and `S_{0,0}(n)` for odd `n`.
//!
//! `φ` applies `ψ` when the signature is 1 and `ψ⁻¹` when it is 0; `ρ` is the
//! same rule read on `S_{0,0}(n)`. The eight-row table [`LEMMA_TABLE`] records
//! where `ψ` and `ψ⁻¹` send each of the two diagonal buckets, split by
//! signature.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::classify::{bucket, signature, Bucket};
use crate::enumerate::{enumerate_bucket, ScanConfig};
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::transforms::{psi, psi_inv};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    /// Apply `ψ`.
    Forward,
    /// Apply `ψ⁻¹`.
    Inverse,
}

/// One clause of the odd-degree transition table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LemmaClause {
    pub source: Bucket,
    pub signature: bool,
    pub direction: Direction,
    pub target: Bucket,
}

const fn clause(source: Bucket, signature: bool, direction: Direction, target: Bucket) -> LemmaClause {
    LemmaClause { source, signature, direction, target }
}

/// Predicted target buckets for odd `n ≥ 3`.
pub const LEMMA_TABLE: [LemmaClause; 8] = [
    clause(Bucket::S11, true, Direction::Forward, Bucket::S00),
    clause(Bucket::S11, false, Direction::Forward, Bucket::S01),
    clause(Bucket::S11, false, Direction::Inverse, Bucket::S00),
    clause(Bucket::S11, true, Direction::Inverse, Bucket::S10),
    clause(Bucket::S00, true, Direction::Forward, Bucket::S11),
    clause(Bucket::S00, false, Direction::Forward, Bucket::S10),
    clause(Bucket::S00, false, Direction::Inverse, Bucket::S11),
    clause(Bucket::S00, true, Direction::Inverse, Bucket::S01),
];

pub fn predicted_target(source: Bucket, signature: bool, direction: Direction) -> Option<Bucket> {
    LEMMA_TABLE
        .iter()
        .find(|c| c.source == source && c.signature == signature && c.direction == direction)
        .map(|c| c.target)
}

fn odd_degree<W: Word>(f: Poly<W>) -> Result<u32> {
    match f.degree() {
        Some(n) if n >= 3 && n % 2 == 1 => Ok(n),
        Some(n) if n >= 3 => Err(Error::EvenDegree(n)),
        got => Err(Error::DegreeTooSmall { min: 3, got }),
    }
}

fn expect_bucket<W: Word>(f: Poly<W>, want: Bucket) -> Result<()> {
    odd_degree(f)?;
    let found = bucket(f)?;
    if found != want {
        return Err(Error::WrongBucket { found });
    }
    Ok(())
}

/// Shared selection rule of `φ` and `ρ`.
fn by_signature<W: Word>(f: Poly<W>) -> Result<Poly<W>> {
    if signature(f)? {
        psi(f)
    } else {
        psi_inv(f)
    }
}

/// `φ : S_{1,1}(n) → S_{0,0}(n)`.
pub fn phi<W: Word>(f: Poly<W>) -> Result<Poly<W>> {
    expect_bucket(f, Bucket::S11)?;
    by_signature(f)
}

/// `ρ : S_{0,0}(n) → S_{1,1}(n)`, the inverse of `φ`.
pub fn rho<W: Word>(g: Poly<W>) -> Result<Poly<W>> {
    expect_bucket(g, Bucket::S00)?;
    by_signature(g)
}

/// Applies `ψ` or `ψ⁻¹` to a diagonal-bucket irreducible of odd degree and
/// reports the bucket it lands in.
pub fn lemma_case<W: Word>(f: Poly<W>, direction: Direction) -> Result<Bucket> {
    odd_degree(f)?;
    let found = bucket(f)?;
    if found != Bucket::S00 && found != Bucket::S11 {
        return Err(Error::WrongBucket { found });
    }
    let image = match direction {
        Direction::Forward => psi(f)?,
        Direction::Inverse => psi_inv(f)?,
    };
    bucket(image)
}

/// Outcome of checking the bijection exhaustively at one odd degree.
#[derive(Debug, Clone, Serialize)]
pub struct BijectionCertificate {
    pub n: u32,
    pub s11: usize,
    pub s00: usize,
    /// `φ` never maps two inputs to the same output.
    pub injective: bool,
    /// The image of `φ` is exactly `S_{0,0}(n)`.
    pub image_is_s00: bool,
    pub rho_phi_identity: bool,
    pub phi_rho_identity: bool,
    /// For `σ_f = 1`, `σ_{ψ(f)} = 0`; for `σ_f = 0`, `σ_{ψ⁻¹(f)} = 1`.
    pub signature_flips: bool,
    pub pairs: Vec<(Poly, Poly)>,
}

impl BijectionCertificate {
    pub fn passed(&self) -> bool {
        self.s11 == self.s00
            && self.injective
            && self.image_is_s00
            && self.rho_phi_identity
            && self.phi_rho_identity
            && self.signature_flips
    }
}

/// Exhaustively certifies `φ` and `ρ` at odd degree `n`.
pub fn certify(n: u32, config: &ScanConfig) -> Result<BijectionCertificate> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    let s11 = enumerate_bucket(n, Bucket::S11, config)?;
    let s00 = enumerate_bucket(n, Bucket::S00, config)?;
    let mut pairs = Vec::with_capacity(s11.len());
    let mut signature_flips = true;
    for &f in &s11 {
        let g = phi(f)?;
        let flipped = signature(g)? != signature(f)?;
        signature_flips &= flipped;
        pairs.push((f, g));
    }
    let images: BTreeSet<Poly> = pairs.iter().map(|&(_, g)| g).collect();
    let injective = images.len() == pairs.len();
    let target: BTreeSet<Poly> = s00.iter().copied().collect();
    let image_is_s00 = images == target;
    let mut rho_phi_identity = true;
    for &(f, g) in &pairs {
        rho_phi_identity &= matches!(rho(g), Ok(back) if back == f);
    }
    let mut phi_rho_identity = true;
    for &g in &s00 {
        phi_rho_identity &= matches!(rho(g).and_then(phi), Ok(back) if back == g);
    }
    Ok(BijectionCertificate {
        n,
        s11: s11.len(),
        s00: s00.len(),
        injective,
        image_is_s00,
        rho_phi_identity,
        phi_rho_identity,
        signature_flips,
        pairs,
    })
}

/// Result of checking every transition-table clause at one odd degree.
#[derive(Debug, Clone, Serialize)]
pub struct LemmaReport {
    pub n: u32,
    /// How many inputs exercised each of the eight clauses, in table order.
    pub hits: [usize; 8],
    pub counterexamples: Vec<(Poly, Direction, Bucket)>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

pub fn check_lemma(n: u32, config: &ScanConfig) -> Result<LemmaReport> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::EvenDegree(n));
    }
    let mut hits = [0usize; 8];
    let mut counterexamples = Vec::new();
    for source in [Bucket::S11, Bucket::S00] {
        for f in enumerate_bucket(n, source, config)? {
            let sigma = signature(f)?;
            for direction in [Direction::Forward, Direction::Inverse] {
                let got = lemma_case(f, direction)?;
                let idx = LEMMA_TABLE
                    .iter()
                    .position(|c| c.source == source && c.signature == sigma && c.direction == direction)
                    .expect("table covers both diagonal buckets");
                if LEMMA_TABLE[idx].target == got {
                    hits[idx] += 1;
                } else {
                    counterexamples.push((f, direction, got));
                }
            }
        }
    }
    Ok(LemmaReport { n, hits, counterexamples })
}

/// Target-bucket histogram keyed by (source bucket, signature, direction).
pub type TransitionCensus = BTreeMap<(Bucket, bool, Direction), BTreeMap<Bucket, usize>>;

/// Where `ψ`/`ψ⁻¹` send each (bucket, signature) class at degree `n`, as a
/// histogram. Descriptive only; used to look at even degrees where no table
/// is asserted.
pub fn transition_census(n: u32, config: &ScanConfig) -> Result<TransitionCensus> {
    let mut out = TransitionCensus::new();
    for source in Bucket::ALL {
        for f in enumerate_bucket(n, source, config)? {
            let sigma = signature(f)?;
            for direction in [Direction::Forward, Direction::Inverse] {
                let image = match direction {
                    Direction::Forward => psi(f)?,
                    Direction::Inverse => psi_inv(f)?,
                };
                *out.entry((source, sigma, direction)).or_default().entry(bucket(image)?).or_default() += 1;
            }
        }
    }
    Ok(out)
}
