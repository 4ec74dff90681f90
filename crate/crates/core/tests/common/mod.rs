//! Shared fixtures for the integration tests.

#![allow(dead_code)]

use proptest::test_runner::{Config, RngAlgorithm, RngSeed};

pub const DEFAULT_SEED: u64 = 0x5eed_2f2b;

/// Seed for randomized tests: `GF2TRACE_SEED` if set, otherwise a fixed value.
pub fn seed() -> u64 {
    match std::env::var("GF2TRACE_SEED") {
        Ok(s) => {
            let s = s.trim();
            let parsed = match s.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => s.parse(),
            };
            parsed.expect("GF2TRACE_SEED must be an integer")
        }
        Err(_) => DEFAULT_SEED,
    }
}

pub fn proptest_config(cases: u32) -> Config {
    Config {
        cases,
        rng_algorithm: RngAlgorithm::ChaCha,
        rng_seed: RngSeed::Fixed(seed()),
        failure_persistence: None,
        ..Config::default()
    }
}
