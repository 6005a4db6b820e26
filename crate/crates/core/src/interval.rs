//! Statistics of primes in short intervals over a dyadic range.
//!
//! For n in [x, 2x) and a window cap H = floor(lambda * ln x), the
//! interval count I_n is the number of primes in (n, n + H]. This
//! module builds the histogram of I_n from one sieve pass, derives its
//! moments and the covered fraction, counts shifted prime pairs
//! exactly, and evaluates the sieve-theoretic upper bound those pair
//! counts are compared against.
//!
//! Shifts run over {1, ..., H}. A window (n, n+H] cannot contain n+0,
//! so h = 0 contributes nothing and is excluded from the shift set.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::sieve::{sieve_range, SIEVE_CEILING};
use crate::singular::singular_series;

/// Default constant C in the error factor of [`selberg_bound`]. The
/// true constant is absolute but not pinned down by sieve theory, so
/// it stays configurable.
pub const DEFAULT_ERROR_CONSTANT: f64 = 1.0;

/// Default slack multiplier when comparing an observed pair count
/// against the bound's main term at finite x.
pub const DEFAULT_SLACK: f64 = 1.5;

/// Histogram of interval prime counts I_n over n in [x, 2x).
///
/// `counts` maps k to the number of n with exactly k primes in
/// (n, n + shift_cap]; keys with zero count are omitted.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IntervalHistogram {
    pub x: u64,
    pub lambda: f64,
    pub shift_cap: u64,
    pub counts: BTreeMap<u64, u64>,
}

impl IntervalHistogram {
    /// Empirical probability of exactly k primes in the window.
    pub fn p_k(&self, k: u64) -> f64 {
        self.counts.get(&k).copied().unwrap_or(0) as f64 / self.x as f64
    }

    /// Number of n whose window contains at least one prime.
    pub fn r_x(&self) -> u64 {
        self.x - self.counts.get(&0).copied().unwrap_or(0)
    }

    /// sum of k * counts[k].
    pub fn moment1(&self) -> u64 {
        self.counts.iter().map(|(k, c)| k * c).sum()
    }

    /// sum of k^2 * counts[k].
    pub fn moment2(&self) -> u64 {
        self.counts.iter().map(|(k, c)| k * k * c).sum()
    }
}

/// Coverage summary derived from an [`IntervalHistogram`], including
/// the exact integer Cauchy inequality r_x * moment2 >= moment1^2.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CoverageReport {
    pub x: u64,
    pub lambda: f64,
    pub shift_cap: u64,
    pub r_x: u64,
    /// r_x / x.
    pub fraction: f64,
    /// lambda / (4 lambda + 1), the target the fraction is compared to.
    pub paper_lower_bound: f64,
    pub moment1: u64,
    pub moment2: u64,
    /// r_x * moment2, exact.
    pub cauchy_lhs: u128,
    /// moment1^2, exact.
    pub cauchy_rhs: u128,
}

impl CoverageReport {
    pub fn from_histogram(hist: &IntervalHistogram) -> CoverageReport {
        let r_x = hist.r_x();
        let moment1 = hist.moment1();
        let moment2 = hist.moment2();
        CoverageReport {
            x: hist.x,
            lambda: hist.lambda,
            shift_cap: hist.shift_cap,
            r_x,
            fraction: r_x as f64 / hist.x as f64,
            paper_lower_bound: hist.lambda / (4.0 * hist.lambda + 1.0),
            moment1,
            moment2,
            cauchy_lhs: r_x as u128 * moment2 as u128,
            cauchy_rhs: moment1 as u128 * moment1 as u128,
        }
    }
}

/// Validated shift cap floor(lambda * ln x).
///
/// Check order matters for diagnostics: a window that is empty because
/// lambda * ln x < 1 reports that fact even when x is also below the
/// minimum, so tiny exploratory inputs get the actionable message.
pub(crate) fn shift_cap(x: u64, lambda: f64) -> Result<u64, Error> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::LambdaOutOfRange { lambda });
    }
    if x >= 2 {
        let h = (lambda * (x as f64).ln()).floor();
        if h < 1.0 {
            return Err(Error::EmptyShiftWindow { x, lambda });
        }
    }
    if x < 10 {
        return Err(Error::XTooSmall { x, min: 10 });
    }
    if x > SIEVE_CEILING {
        return Err(Error::AboveCeiling {
            hi: x,
            ceiling: SIEVE_CEILING,
        });
    }
    Ok((lambda * (x as f64).ln()).floor() as u64)
}

/// Histogram of I_n over n in [x, 2x) from a single sieve of
/// [x+1, 2x+H). Work is split over disjoint n-blocks; within a block
/// the window count slides by one add and one drop per step.
pub fn interval_histogram(x: u64, lambda: f64) -> Result<IntervalHistogram, Error> {
    let h = shift_cap(x, lambda)?;
    let table = sieve_range(x + 1, 2 * x + h)?;
    const BLOCK: u64 = 1 << 20;
    let nblocks = x.div_ceil(BLOCK);
    let zero = || vec![0u64; (h + 1) as usize];
    let hist = (0..nblocks)
        .into_par_iter()
        .map(|b| {
            let start = x + b * BLOCK;
            let end = (start + BLOCK).min(2 * x);
            let mut local = zero();
            let mut cur = table.count_in(start + 1, start + h + 1);
            local[cur as usize] += 1;
            for n in start + 1..end {
                cur += u64::from(table.is_prime(n + h));
                cur -= u64::from(table.is_prime(n));
                local[cur as usize] += 1;
            }
            local
        })
        .reduce(zero, |mut acc, part| {
            for (a, p) in acc.iter_mut().zip(part) {
                *a += p;
            }
            acc
        });
    let counts = hist
        .into_iter()
        .enumerate()
        .filter(|&(_, c)| c > 0)
        .map(|(k, c)| (k as u64, c))
        .collect();
    Ok(IntervalHistogram {
        x,
        lambda,
        shift_cap: h,
        counts,
    })
}

/// Coverage report for (x, lambda); see [`CoverageReport`].
pub fn coverage(x: u64, lambda: f64) -> Result<CoverageReport, Error> {
    Ok(CoverageReport::from_histogram(&interval_histogram(
        x, lambda,
    )?))
}

/// Exact count of n in [x, 2x) with n+h1 and n+h2 both prime. The
/// diagonal h1 = h2 collapses to a shifted prime count.
pub fn pair_count(x: u64, h1: u64, h2: u64) -> Result<u64, Error> {
    if x < 10 {
        return Err(Error::XTooSmall { x, min: 10 });
    }
    let hmax = h1.max(h2);
    if x > SIEVE_CEILING || hmax > SIEVE_CEILING {
        return Err(Error::AboveCeiling {
            hi: x.max(hmax),
            ceiling: SIEVE_CEILING,
        });
    }
    let hmin = h1.min(h2);
    // m = n + hmin runs over [x+hmin, 2x+hmin); the table ends at
    // 2x+hmax, so the pair partner m + (hmax-hmin) always fits and the
    // untruncated gap count is exactly the window count.
    let table = sieve_range(x + hmin, 2 * x + hmax)?;
    Ok(table.count_pairs_with_gap(hmax - hmin))
}

/// Splits sum over n of I_n^2 into the diagonal (h1 = h2) and
/// off-diagonal (h1 != h2) ordered-pair contributions. Their sum
/// equals the histogram's second moment exactly.
pub fn second_moment_decomposition(x: u64, lambda: f64) -> Result<(u64, u64), Error> {
    let h = shift_cap(x, lambda)?;
    let table = sieve_range(x + 1, 2 * x + h)?;
    let diagonal: u64 = (1..=h).map(|s| table.count_in(x + s, 2 * x + s)).sum();
    let offdiagonal: u64 = (1..h)
        .into_par_iter()
        .map(|gap| {
            let one_sided: u64 = (1..=h - gap)
                .map(|hm| table.count_pairs_with_gap_in(gap, x + hm, 2 * x + hm))
                .sum();
            2 * one_sided
        })
        .sum();
    Ok((diagonal, offdiagonal))
}

/// Sieve upper bound for an off-diagonal pair count: main term
/// 4 S(h1-h2) x / (ln x)^2, with the finite-x error factor
/// 1 + C (lnln 3x + lnln 3|h1-h2|)/ln x reported separately because
/// the constant C is not pinned down.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelbergBound {
    pub x: u64,
    pub h1: u64,
    pub h2: u64,
    /// Singular series value at the gap h1 - h2.
    pub singular: f64,
    pub main_term: f64,
    pub error_factor: f64,
    pub error_constant: f64,
}

pub fn selberg_bound(x: u64, h1: u64, h2: u64, error_constant: f64) -> Result<SelbergBound, Error> {
    if h1 == h2 {
        return Err(Error::EqualShifts { h: h1 });
    }
    if x < 10 {
        return Err(Error::XTooSmall { x, min: 10 });
    }
    let gap = h1.abs_diff(h2);
    let signed_gap = i64::try_from(gap).map_err(|_| Error::ParameterTooLarge {
        what: "shift gap",
        value: gap,
        max: i64::MAX as u64,
    })?;
    let s = singular_series(signed_gap)?;
    let xf = x as f64;
    let lx = xf.ln();
    let main_term = 4.0 * s.value * xf / (lx * lx);
    let error_factor =
        1.0 + error_constant * ((3.0 * xf).ln().ln() + (3.0 * gap as f64).ln().ln()) / lx;
    Ok(SelbergBound {
        x,
        h1,
        h2,
        singular: s.value,
        main_term,
        error_factor,
        error_constant,
    })
}

/// Observed pair count next to its sieve bound. The bound fields are
/// absent on the diagonal, where no such bound applies; `ratio` is
/// count / main_term and is absent when the main term vanishes (odd
/// gaps, whose singular series is zero).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairReport {
    pub x: u64,
    pub h1: u64,
    pub h2: u64,
    pub count: u64,
    pub main_term: Option<f64>,
    pub error_factor: Option<f64>,
    pub error_constant: Option<f64>,
    pub ratio: Option<f64>,
}

pub fn pair_report(x: u64, h1: u64, h2: u64, error_constant: f64) -> Result<PairReport, Error> {
    let count = pair_count(x, h1, h2)?;
    if h1 == h2 {
        return Ok(PairReport {
            x,
            h1,
            h2,
            count,
            main_term: None,
            error_factor: None,
            error_constant: None,
            ratio: None,
        });
    }
    let bound = selberg_bound(x, h1, h2, error_constant)?;
    let ratio = (bound.main_term > 0.0).then(|| count as f64 / bound.main_term);
    Ok(PairReport {
        x,
        h1,
        h2,
        count,
        main_term: Some(bound.main_term),
        error_factor: Some(bound.error_factor),
        error_constant: Some(bound.error_constant),
        ratio,
    })
}

/// e^-lambda lambda^k / k!. Needs a finite lambda > 0.
pub fn poisson_pmf(lambda: f64, k: u64) -> f64 {
    debug_assert!(lambda.is_finite() && lambda > 0.0);
    let mut p = (-lambda).exp();
    for i in 1..=k {
        p *= lambda / i as f64;
    }
    p
}
