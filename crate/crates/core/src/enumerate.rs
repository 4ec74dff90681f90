//! Exhaustive classification of all irreducibles of one degree.
//!
//! A degree-`n` irreducible (`n ≥ 2`) is monic, has constant term 1 and an odd
//! number of terms (an even number would make `x + 1` a factor). Only the
//! `n - 1` middle coefficients are free, and only patterns of odd weight are
//! tested. The candidate space `[0, 2^{n-1})` of middle-bit patterns is split
//! into contiguous ranges that are scanned independently; partial counts are
//! merged by addition, so the totals do not depend on how the work was split.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::Bucket;
use crate::error::{Error, Result};
use crate::poly::{Poly, RabinTest};

/// Default ceiling for exhaustive scans.
pub const DEFAULT_MAX_DEGREE: u32 = 26;
/// Ceiling when long runs are explicitly enabled.
pub const LONG_RUN_MAX_DEGREE: u32 = 32;

/// `(n, [|S_{0,0}|, |S_{0,1}|, |S_{1,0}|, |S_{1,1}|])` for `2 ≤ n ≤ 32`.
pub const REFERENCE_TABLE: [(u32, [u64; 4]); 31] = [
    (2, [0, 0, 0, 1]),
    (3, [0, 1, 1, 0]),
    (4, [0, 1, 1, 1]),
    (5, [2, 1, 1, 2]),
    (6, [1, 3, 3, 2]),
    (7, [4, 5, 5, 4]),
    (8, [7, 7, 7, 9]),
    (9, [14, 14, 14, 14]),
    (10, [21, 27, 27, 24]),
    (11, [48, 45, 45, 48]),
    (12, [81, 84, 84, 86]),
    (13, [154, 161, 161, 154]),
    (14, [285, 291, 291, 294]),
    (15, [550, 541, 541, 550]),
    (16, [1001, 1031, 1031, 1017]),
    (17, [1926, 1929, 1929, 1926]),
    (18, [3626, 3626, 3626, 3654]),
    (19, [6888, 6909, 6909, 6888]),
    (20, [13041, 13122, 13122, 13092]),
    (21, [24998, 24931, 24931, 24998]),
    (22, [47565, 47667, 47667, 47658]),
    (23, [91124, 91237, 91237, 91124]),
    (24, [174652, 174698, 174698, 174822]),
    (25, [335588, 335500, 335500, 335588]),
    (26, [644805, 645435, 645435, 645120]),
    (27, [1242822, 1242682, 1242682, 1242822]),
    (28, [2396385, 2396520, 2396520, 2396970]),
    (29, [4627850, 4628545, 4628545, 4627850]),
    (30, [8946665, 8947923, 8947923, 8947756]),
    (31, [17319148, 17317685, 17317685, 17319148]),
    (32, [33551833, 33554983, 33554983, 33553881]),
];

/// Reference bucket counts for degree `n`, if tabulated.
pub fn reference_row(n: u32) -> Option<[u64; 4]> {
    REFERENCE_TABLE.iter().find(|(m, _)| *m == n).map(|(_, row)| *row)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanConfig {
    /// Worker threads; 0 means all available hardware threads.
    pub parallelism: usize,
    pub max_degree: u32,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self { parallelism: 0, max_degree: DEFAULT_MAX_DEGREE }
    }
}

impl ScanConfig {
    pub fn with_parallelism(parallelism: usize) -> Self {
        Self { parallelism, ..Self::default() }
    }

    /// Raises the degree ceiling to [`LONG_RUN_MAX_DEGREE`].
    pub fn long_run(mut self) -> Self {
        self.max_degree = LONG_RUN_MAX_DEGREE;
        self
    }

    pub fn threads(&self) -> usize {
        if self.parallelism == 0 {
            std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)
        } else {
            self.parallelism
        }
    }

    fn check(&self, n: u32) -> Result<()> {
        if n < 2 || n > self.max_degree {
            return Err(Error::DegreeOutOfRange { n, min: 2, max: self.max_degree });
        }
        Ok(())
    }

    /// Runs `op` on a dedicated pool of [`ScanConfig::threads`] workers.
    pub fn install<R: Send>(&self, op: impl FnOnce() -> R + Send) -> R {
        let pool =
            rayon::ThreadPoolBuilder::new().num_threads(self.threads()).build().expect("thread pool construction");
        pool.install(op)
    }
}

/// Bucket cardinalities of one degree, indexed by [`Bucket::index`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BucketCounts {
    pub n: u32,
    pub counts: [u64; 4],
    pub method: String,
    pub elapsed_ms: u64,
}

impl BucketCounts {
    pub fn get(&self, b: Bucket) -> u64 {
        self.counts[b.index()]
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

/// Splits `[0, total)` into at most `pieces` contiguous ranges.
fn ranges(total: u64, pieces: u64) -> Vec<(u64, u64)> {
    let pieces = pieces.clamp(1, total.max(1));
    let step = total.div_ceil(pieces);
    (0..pieces).map(|i| (i * step, ((i + 1) * step).min(total))).filter(|(lo, hi)| lo < hi).collect()
}

#[inline]
fn candidate(n: u32, middle: u64) -> u64 {
    (1u64 << n) | (middle << 1) | 1
}

#[inline]
fn bucket_index(n: u32, f: u64) -> usize {
    (((f >> (n - 1)) & 1) << 1 | ((f >> 1) & 1)) as usize
}

fn scan_range(test: &RabinTest, lo: u64, hi: u64) -> [u64; 4] {
    let n = test.degree();
    let mut counts = [0u64; 4];
    for middle in lo..hi {
        if middle.count_ones() % 2 == 0 {
            continue;
        }
        let f = candidate(n, middle);
        if test.test(Poly::<u64>::from_bits(f)) {
            counts[bucket_index(n, f)] += 1;
        }
    }
    counts
}

fn work_split(n: u32, config: &ScanConfig) -> Vec<(u64, u64)> {
    ranges(1u64 << (n - 1), config.threads() as u64 * 64)
}

/// Counts the degree-`n` irreducibles in each bucket by exhaustive scan.
pub fn classify_all(n: u32, config: &ScanConfig) -> Result<BucketCounts> {
    config.check(n)?;
    let start = Instant::now();
    let test = RabinTest::new(n);
    let split = work_split(n, config);
    let counts = config.install(|| {
        split
            .par_iter()
            .map(|&(lo, hi)| scan_range(&test, lo, hi))
            .reduce(|| [0; 4], |a, b| std::array::from_fn(|i| a[i] + b[i]))
    });
    Ok(BucketCounts { n, counts, method: "enumerate".to_owned(), elapsed_ms: start.elapsed().as_millis() as u64 })
}

/// All members of `S_{i,j}(n)`, sorted by bit pattern.
pub fn enumerate_bucket(n: u32, bucket: Bucket, config: &ScanConfig) -> Result<Vec<Poly>> {
    config.check(n)?;
    let test = RabinTest::new(n);
    let want = bucket.index();
    let split = work_split(n, config);
    let chunks: Vec<Vec<Poly>> = config.install(|| {
        split
            .par_iter()
            .map(|&(lo, hi)| {
                (lo..hi)
                    .filter(|m| m.count_ones() % 2 == 1)
                    .map(|m| candidate(n, m))
                    .filter(|&f| bucket_index(n, f) == want)
                    .map(Poly::from_bits)
                    .filter(|&f| test.test(f))
                    .collect()
            })
            .collect()
    });
    Ok(chunks.concat())
}

/// All degree-`n` irreducibles (including degree 1), sorted.
pub fn enumerate_irreducibles(n: u32, config: &ScanConfig) -> Result<Vec<Poly>> {
    if n == 1 {
        return Ok(vec![Poly::from_u64(0b10), Poly::from_u64(0b11)]);
    }
    let mut all = Vec::new();
    for b in Bucket::ALL {
        all.extend(enumerate_bucket(n, b, config)?);
    }
    all.sort_unstable();
    Ok(all)
}

/// Comparison of one computed row against the reference table.
#[derive(Debug, Clone, Serialize)]
pub struct RowCheck {
    pub n: u32,
    pub expected: [u64; 4],
    pub actual: BucketCounts,
    /// Buckets whose counts disagree.
    pub mismatches: Vec<Bucket>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableReport {
    pub rows: Vec<RowCheck>,
}

impl TableReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowCheck::passed)
    }
}

/// Recomputes rows `n_min..=n_max` and compares them with [`REFERENCE_TABLE`].
pub fn verify_table(n_min: u32, n_max: u32, config: &ScanConfig) -> Result<TableReport> {
    let top = LONG_RUN_MAX_DEGREE.min(config.max_degree);
    if n_min < 2 || n_max > top || n_min > n_max {
        return Err(Error::DegreeOutOfRange { n: if n_min < 2 { n_min } else { n_max }, min: 2, max: top });
    }
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        let expected = reference_row(n).expect("table covers 2..=32");
        let actual = classify_all(n, config)?;
        let mismatches = Bucket::ALL.into_iter().filter(|b| actual.get(*b) != expected[b.index()]).collect();
        rows.push(RowCheck { n, expected, actual, mismatches });
    }
    Ok(TableReport { rows })
}
