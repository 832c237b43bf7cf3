//! Sampling cross-check for membership.
//!
//! Points of the variety are produced from its parametrization at seeded
//! random rational coordinates. A nonzero value at any such point proves
//! non-membership outright; vanishing at every sample is only evidence.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::ideal::VarietySpec;
use crate::poly::{PolyError, Polynomial};
use crate::rational::Rational;

pub const DEFAULT_SAMPLES: usize = 32;
pub const DEFAULT_SEED: u64 = 0x6d6f_6e6f_7661_7201;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SampleConfigError {
    #[error("sample count must be at least 1")]
    ZeroCount,
    #[error("coordinate pool is empty")]
    EmptyPool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    count: usize,
    numerators: RangeInclusive<i64>,
    denominators: RangeInclusive<i64>,
    seed: u64,
}

impl SampleConfig {
    pub fn new(
        count: usize,
        numerators: RangeInclusive<i64>,
        denominators: RangeInclusive<i64>,
        seed: u64,
    ) -> Result<Self, SampleConfigError> {
        if count == 0 {
            return Err(SampleConfigError::ZeroCount);
        }
        if numerators.is_empty() || denominators.is_empty() || *denominators.end() < 1 {
            return Err(SampleConfigError::EmptyPool);
        }
        let denominators = (*denominators.start()).max(1)..=*denominators.end();
        Ok(SampleConfig {
            count,
            numerators,
            denominators,
            seed,
        })
    }

    /// Numerators `-9..=9`, denominators `1..=4`.
    pub fn with_seed(count: usize, seed: u64) -> Result<Self, SampleConfigError> {
        SampleConfig::new(count, -9..=9, 1..=4, seed)
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig::with_seed(DEFAULT_SAMPLES, DEFAULT_SEED).expect("valid defaults")
    }
}

/// Free coordinates for sample `idx`; a pure function of `(seed, idx)`.
pub fn sample_free_coordinates(m: usize, cfg: &SampleConfig, idx: usize) -> Vec<Rational> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(idx as u64);
    (0..m)
        .map(|_| {
            let n = rng.gen_range(cfg.numerators.clone());
            let d = rng.gen_range(cfg.denominators.clone());
            Rational::new(n, d).expect("denominator >= 1")
        })
        .collect()
}

/// A point of the variety; every generator vanishes there exactly.
pub fn sample_variety_point(spec: &VarietySpec, cfg: &SampleConfig, idx: usize) -> Vec<Rational> {
    let free = sample_free_coordinates(spec.m(), cfg, idx);
    spec.parametrize(&free).expect("m coordinates")
}

/// Outcome of evaluating `f` at the sampled points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OracleVerdict {
    /// `f` vanished at every sample.
    VanishesOnSamples { samples: usize },
    /// `f` is nonzero at this point, so `f` is not in the ideal.
    Witness {
        index: usize,
        point: Vec<Rational>,
        value: Rational,
    },
}

impl OracleVerdict {
    pub fn vanishes(&self) -> bool {
        matches!(self, OracleVerdict::VanishesOnSamples { .. })
    }
}

pub fn oracle_check(
    spec: &VarietySpec,
    f: &Polynomial,
    cfg: &SampleConfig,
) -> Result<OracleVerdict, PolyError> {
    for index in 0..cfg.count {
        let point = sample_variety_point(spec, cfg, index);
        let value = f.eval(&point)?;
        if !value.is_zero() {
            return Ok(OracleVerdict::Witness {
                index,
                point,
                value,
            });
        }
    }
    Ok(OracleVerdict::VanishesOnSamples { samples: cfg.count })
}

/// `true` iff `f` vanishes at all `cfg.count` sampled points.
pub fn oracle_member(
    spec: &VarietySpec,
    f: &Polynomial,
    cfg: &SampleConfig,
) -> Result<bool, PolyError> {
    Ok(oracle_check(spec, f, cfg)?.vanishes())
}
