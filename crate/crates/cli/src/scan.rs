//! Random-seed refinement onto roots of the nine constraints.
//!
//! Seed `i` draws its five amplitudes uniformly from `[-2, 2]` using a
//! ChaCha8 generator seeded with the base seed and switched to stream `i`,
//! so every row is reproducible independently of thread scheduling.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use ymwave_core::constraints::{normalized_constraints, RefineOptions, RefineOutcome};
use ymwave_core::{classify, AnsatzParams, Classification};

/// Half-width of the amplitude box seeds are drawn from.
pub const SEED_BOX: f64 = 2.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanConfig {
    /// Fixed `(λ, k, ω, g, c)`; the amplitudes are overwritten by each seed.
    pub base: AnsatzParams,
    pub seeds: usize,
    pub seed: u64,
    pub tol: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub index: usize,
    pub outcome: RefineOutcome,
    /// Largest scale-normalized constraint at the refined point.
    pub normalized_max: f64,
    /// `None` for seeds that did not converge.
    pub classification: Option<Classification>,
}

impl ScanRow {
    pub fn label(&self) -> &'static str {
        match &self.classification {
            Some(c) => c.label(),
            None => "diverged",
        }
    }
}

pub fn seed_params(cfg: &ScanConfig, index: usize) -> AnsatzParams {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index as u64);
    let alphas: [f64; 5] = std::array::from_fn(|_| rng.random_range(-SEED_BOX..SEED_BOX));
    cfg.base.with_alphas(alphas)
}

pub fn scan_one(cfg: &ScanConfig, index: usize) -> ScanRow {
    let outcome = ymwave_core::refine(&seed_params(cfg, index), &RefineOptions::default());
    let classification = if outcome.converged {
        classify(&outcome.params, cfg.tol).ok()
    } else {
        None
    };
    ScanRow {
        index,
        outcome,
        normalized_max: normalized_constraints(&outcome.params).max_abs(),
        classification,
    }
}

/// Rows in seed order regardless of which worker finished first.
pub fn run_scan(cfg: &ScanConfig) -> Vec<ScanRow> {
    (0..cfg.seeds)
        .into_par_iter()
        .map(|i| scan_one(cfg, i))
        .collect()
}

pub fn tally(rows: &[ScanRow]) -> BTreeMap<&'static str, usize> {
    let mut out = BTreeMap::new();
    for r in rows {
        *out.entry(r.label()).or_insert(0) += 1;
    }
    out
}
