//! Monte Carlo simulation of the random model in which each integer
//! m >= 3 is independently "prime" with probability 1/ln m, plus the
//! comparison of the simulated window counts against the Poisson law
//! and against the true primes.
//!
//! RNG contract, frozen: ChaCha8 seeded with `seed_from_u64(seed)`;
//! trial i clones that base state and switches to stream i, so every
//! trial's draws are a pure function of (seed, i) and parallel
//! execution cannot reorder them. Changing the generator family would
//! change every pinned simulation value and is a breaking change.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::interval::{interval_histogram, poisson_pmf, shift_cap};

/// Result of a model run: the histogram of simulated window counts
/// and its distances from the Poisson pmf with mean lambda.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub x: u64,
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
    pub counts: BTreeMap<u64, u64>,
    /// max over k of |counts[k]/trials - e^-lambda lambda^k/k!|.
    pub poisson_linf: f64,
    /// Total variation distance to the same pmf.
    pub poisson_tv: f64,
}

/// Each trial draws n uniformly from [x, 2x), then flips one
/// independent indicator per m in (n, n + floor(lambda ln x)] with
/// success probability 1/ln m, and records the number of successes.
pub fn simulate(x: u64, lambda: f64, trials: u64, seed: u64) -> Result<SimReport, Error> {
    run_model(x, lambda, trials, seed, false)
}

/// Exhaustive variant: trial i uses n = x + i instead of a random n,
/// one trial per n in [x, 2x), so trials = x. Indicator draws still
/// come from stream i of the seeded generator.
pub fn simulate_exhaustive(x: u64, lambda: f64, seed: u64) -> Result<SimReport, Error> {
    run_model(x, lambda, x, seed, true)
}

fn run_model(
    x: u64,
    lambda: f64,
    trials: u64,
    seed: u64,
    exhaustive: bool,
) -> Result<SimReport, Error> {
    let h = shift_cap(x, lambda)?;
    if trials == 0 {
        return Err(Error::ZeroTrials);
    }
    let base = ChaCha8Rng::seed_from_u64(seed);
    let zero = || vec![0u64; h as usize + 1];
    let hist = (0..trials)
        .into_par_iter()
        .fold(zero, |mut acc, i| {
            let mut rng = base.clone();
            rng.set_stream(i);
            let n = if exhaustive {
                x + i
            } else {
                rng.random_range(x..2 * x)
            };
            let mut k = 0usize;
            for j in 1..=h {
                let m = (n + j) as f64;
                if rng.random::<f64>() < 1.0 / m.ln() {
                    k += 1;
                }
            }
            acc[k] += 1;
            acc
        })
        .reduce(zero, |mut acc, part| {
            for (a, p) in acc.iter_mut().zip(part) {
                *a += p;
            }
            acc
        });
    let (poisson_linf, poisson_tv) = poisson_distances(&hist, trials, lambda);
    let counts = hist
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k as u64, c))
        .collect();
    Ok(SimReport {
        x,
        lambda,
        trials,
        seed,
        counts,
        poisson_linf,
        poisson_tv,
    })
}

/// (linf, tv) between the empirical distribution hist[k]/trials and
/// Poisson(lambda). The walk over k continues past the observed
/// support until the pmf tail is negligible, so tv accounts for the
/// Poisson mass the empirical distribution never reaches.
fn poisson_distances(hist: &[u64], trials: u64, lambda: f64) -> (f64, f64) {
    let t = trials as f64;
    let mut pmf = (-lambda).exp();
    let mut cum = 0.0;
    let mut linf = 0.0f64;
    let mut sum_abs = 0.0;
    let mut k = 0usize;
    while k < hist.len() || (pmf > 1e-15 && k <= 10_000) {
        let emp = if k < hist.len() {
            hist[k] as f64 / t
        } else {
            0.0
        };
        linf = linf.max((emp - pmf).abs());
        sum_abs += (emp - pmf).abs();
        cum += pmf;
        k += 1;
        pmf *= lambda / k as f64;
    }
    let tv = 0.5 * (sum_abs + (1.0 - cum).max(0.0));
    (linf, tv.clamp(0.0, 1.0))
}

/// One k of the side-by-side comparison.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CompareRow {
    pub k: u64,
    /// Simulated model probability of k.
    pub model: f64,
    /// True-prime probability of k, straight from the interval
    /// histogram.
    #[serde(rename = "true")]
    pub true_primes: f64,
    /// e^-lambda lambda^k / k!.
    pub poisson: f64,
}

/// Model, true primes, and Poisson, all against the coverage target
/// lambda/(4 lambda + 1). The positive fractions are the respective
/// sums over k >= 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CompareReport {
    pub x: u64,
    pub lambda: f64,
    pub trials: u64,
    pub seed: u64,
    pub shift_cap: u64,
    pub rows: Vec<CompareRow>,
    pub paper_lower_bound: f64,
    pub model_positive_fraction: f64,
    pub true_positive_fraction: f64,
    pub poisson_positive_fraction: f64,
}

/// Builds the comparison table at (x, lambda). The model column is a
/// fresh simulation with the given trials and seed; the true column
/// is exact.
pub fn compare_true_primes(
    x: u64,
    lambda: f64,
    trials: u64,
    seed: u64,
) -> Result<CompareReport, Error> {
    let sim = simulate(x, lambda, trials, seed)?;
    let hist = interval_histogram(x, lambda)?;
    let k_max = sim
        .counts
        .keys()
        .chain(hist.counts.keys())
        .copied()
        .max()
        .unwrap_or(0);
    let rows = (0..=k_max)
        .map(|k| CompareRow {
            k,
            model: sim.counts.get(&k).copied().unwrap_or(0) as f64 / trials as f64,
            true_primes: hist.p_k(k),
            poisson: poisson_pmf(lambda, k),
        })
        .collect();
    let model_zero = sim.counts.get(&0).copied().unwrap_or(0);
    Ok(CompareReport {
        x,
        lambda,
        trials,
        seed,
        shift_cap: hist.shift_cap,
        rows,
        paper_lower_bound: lambda / (4.0 * lambda + 1.0),
        model_positive_fraction: (trials - model_zero) as f64 / trials as f64,
        true_positive_fraction: hist.r_x() as f64 / x as f64,
        poisson_positive_fraction: 1.0 - (-lambda).exp(),
    })
}
