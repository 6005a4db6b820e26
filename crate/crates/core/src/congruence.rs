//! Distribution of primes over residue classes mod q, all with the
//! strict convention p < x.
//!
//! The central objects: per-class prime counts, the number of covered
//! classes, the second moment of the class counts, and the exact
//! identity tying that moment to shifted prime-pair counts,
//!
//! ```text
//! sum over |t| < x/q of A(x, tq) = sum over a mod q of pi(x, a, q)^2
//! ```
//!
//! which holds as pure double counting of ordered prime pairs (p, p')
//! with p = p' (mod q). Every row the scanner emits re-verifies it.
//!
//! Classes run over all residues 0..q-1, not only units: small primes
//! dividing q occupy non-unit classes (2 mod 4, say) and excluding
//! them would silently drop real coverage. The unit-only count is
//! carried alongside since the natural normalizer phi(q) counts units.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{euler_phi, gcd};
use crate::error::Error;
use crate::sieve::{sieve_range, SievedRange, SIEVE_CEILING};
use crate::singular::singular_series;

/// Largest modulus accepted; per_class allocates q slots.
pub const MAX_MODULUS: u64 = 1 << 26;

/// Per-class prime counts below x.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidueCoverage {
    pub x: u64,
    pub q: u64,
    pub phi_q: u64,
    /// per_class[a] = #{p prime, p < x, p = a (mod q)}.
    pub per_class: Vec<u64>,
    /// Classes with at least one prime.
    pub covered: u64,
    /// Covered classes a with gcd(a, q) = 1.
    pub covered_units: u64,
    /// sum of per_class[a]^2.
    pub second_moment: u64,
    /// x / (phi(q) ln q), the window scale x corresponds to.
    pub lambda_effective: f64,
}

fn validate_modulus(q: u64, min: u64) -> Result<(), Error> {
    if q < min {
        return Err(Error::InvalidModulus { q, min });
    }
    if q > MAX_MODULUS {
        return Err(Error::ParameterTooLarge {
            what: "q",
            value: q,
            max: MAX_MODULUS,
        });
    }
    Ok(())
}

fn class_counts(table: &SievedRange, x: u64, q: u64) -> Vec<u64> {
    let mut per_class = vec![0u64; q as usize];
    for p in table.iter_primes() {
        if p < x {
            per_class[(p % q) as usize] += 1;
        }
    }
    per_class
}

/// Exact per-class statistics of primes p < x.
pub fn residue_coverage(x: u64, q: u64) -> Result<ResidueCoverage, Error> {
    validate_modulus(q, 2)?;
    if x < 3 {
        return Err(Error::XTooSmall { x, min: 3 });
    }
    let table = sieve_range(2, x)?;
    Ok(coverage_from_table(&table, x, q))
}

fn coverage_from_table(table: &SievedRange, x: u64, q: u64) -> ResidueCoverage {
    let per_class = class_counts(table, x, q);
    let covered = per_class.iter().filter(|&&c| c > 0).count() as u64;
    let covered_units = per_class
        .iter()
        .enumerate()
        .filter(|&(a, &c)| c > 0 && gcd(a as u64, q) == 1)
        .count() as u64;
    let second_moment = per_class.iter().map(|&c| c * c).sum();
    let phi_q = euler_phi(q);
    ResidueCoverage {
        x,
        q,
        phi_q,
        per_class,
        covered,
        covered_units,
        second_moment,
        lambda_effective: x as f64 / (phi_q as f64 * (q as f64).ln()),
    }
}

/// Ordered pairs (p, p') of primes below x with p = p' + t q. For
/// t = 0 this is the strict prime count below x.
pub fn shifted_pair_count(x: u64, t: i64, q: u64) -> Result<u64, Error> {
    validate_modulus(q, 2)?;
    if x < 3 {
        return Err(Error::XTooSmall { x, min: 3 });
    }
    if t.unsigned_abs() as u128 * q as u128 >= x as u128 {
        return Err(Error::ShiftOutOfRange { t, q, x });
    }
    let table = sieve_range(2, x)?;
    Ok(table.count_pairs_with_gap(t.unsigned_abs() * q))
}

/// Both sides of the double-counting identity, evaluated exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MomentIdentity {
    pub x: u64,
    pub q: u64,
    /// sum over |t| < x/q of the shifted pair counts.
    pub lhs: u64,
    /// second moment of the per-class counts.
    pub rhs: u64,
    pub equal: bool,
}

/// Verifies the identity for (x, q) from a single sieve of [2, x).
/// `equal = false` means an implementation bug, nothing subtler.
pub fn verify_moment_identity(x: u64, q: u64) -> Result<MomentIdentity, Error> {
    validate_modulus(q, 2)?;
    if x < 3 {
        return Err(Error::XTooSmall { x, min: 3 });
    }
    let table = sieve_range(2, x)?;
    // t and -t contribute equally (swap the pair), so fold them.
    let positive: u64 = (1..=(x - 1) / q)
        .into_par_iter()
        .map(|k| table.count_pairs_with_gap(k * q))
        .sum();
    let lhs = table.count_in(2, x) + 2 * positive;
    let rhs = class_counts(&table, x, q).iter().map(|&c| c * c).sum();
    Ok(MomentIdentity {
        x,
        q,
        lhs,
        rhs,
        equal: lhs == rhs,
    })
}

/// Cauchy-Schwarz lower bound on the number of covered classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CauchyCheck {
    pub x: u64,
    pub q: u64,
    /// (sum of per_class)^2 / second_moment; covered can never be
    /// below this.
    pub r_lower: f64,
    pub holds: bool,
    /// True when no primes exist below x and the quotient is empty.
    pub degenerate: bool,
}

pub fn cauchy_lower_bound(x: u64, q: u64) -> Result<CauchyCheck, Error> {
    let rc = residue_coverage(x, q)?;
    let total: u64 = rc.per_class.iter().sum();
    if rc.second_moment == 0 {
        return Ok(CauchyCheck {
            x,
            q,
            r_lower: 0.0,
            holds: true,
            degenerate: true,
        });
    }
    // exact integer form: covered * second_moment >= total^2
    let holds = rc.covered as u128 * rc.second_moment as u128 >= (total as u128).pow(2);
    Ok(CauchyCheck {
        x,
        q,
        r_lower: (total as f64).powi(2) / rc.second_moment as f64,
        holds,
        degenerate: false,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundStatus {
    Holds,
    Fails,
    /// The right side vanishes (odd t, even q) while the left does
    /// not; the inequality cannot be evaluated as written.
    InapplicableAsStated,
}

/// Comparison of the factorization bound on the singular series,
/// S(tq) <= (q/phi(q)) S(t) prod over odd p | q of (1 + 1/(p(p-2))).
/// The product is restricted to odd p because the factor is singular
/// at p = 2.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FactorBoundCheck {
    pub t: i64,
    pub q: u64,
    pub lhs: f64,
    pub lhs_error: f64,
    pub rhs: f64,
    pub rhs_error: f64,
    pub status: BoundStatus,
}

pub fn factor_bound_check(t: i64, q: u64) -> Result<FactorBoundCheck, Error> {
    if t == 0 {
        return Err(Error::ZeroShift);
    }
    validate_modulus(q, 2)?;
    let qi = i64::try_from(q).expect("q <= MAX_MODULUS fits in i64");
    let tq = t.checked_mul(qi).ok_or(Error::ParameterTooLarge {
        what: "t*q",
        value: t.unsigned_abs(),
        max: i64::MAX as u64 / q,
    })?;
    let left = singular_series(tq)?;
    let s_t = singular_series(t)?;
    let mut factor = q as f64 / euler_phi(q) as f64;
    for p in crate::arith::distinct_prime_factors(q) {
        if p > 2 {
            factor *= 1.0 + 1.0 / (p * (p - 2)) as f64;
        }
    }
    let rhs = factor * s_t.value;
    let rhs_error = factor * s_t.abs_error;
    let status = if s_t.value == 0.0 && left.value > 0.0 {
        BoundStatus::InapplicableAsStated
    } else if left.value <= rhs + left.abs_error + rhs_error {
        BoundStatus::Holds
    } else {
        BoundStatus::Fails
    };
    Ok(FactorBoundCheck {
        t,
        q,
        lhs: left.value,
        lhs_error: left.abs_error,
        rhs,
        rhs_error,
        status,
    })
}

/// One modulus of a [`linnik_scan`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinnikRow {
    pub q: u64,
    pub phi_q: u64,
    /// ceil(lambda phi(q) ln q), the scale the scan probes.
    pub x: u64,
    pub covered: u64,
    /// covered / phi(q). Exceeds 1 when non-unit classes are covered,
    /// which happens for prime-power q at small x.
    pub fraction: f64,
    /// Primes below x; covered can never exceed this.
    pub pi_x: u64,
    pub second_moment: u64,
    pub identity_ok: bool,
    pub covered_units: u64,
    /// covered_units / phi(q), always in [0, 1].
    pub fraction_units: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinnikSkip {
    pub q: u64,
    pub reason: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinnikScan {
    pub lambda: f64,
    pub rows: Vec<LinnikRow>,
    pub skipped: Vec<LinnikSkip>,
}

/// For each q, sets x = ceil(lambda phi(q) ln q) and reports how many
/// classes a prime below x covers. Rows whose x is unusable (past the
/// sieve ceiling, or too small to hold a prime) are skipped with the
/// reason recorded rather than failing the whole scan.
pub fn linnik_scan(lambda: f64, q_list: &[u64]) -> Result<LinnikScan, Error> {
    if !lambda.is_finite() || lambda <= 0.0 {
        return Err(Error::LambdaOutOfRange { lambda });
    }
    for &q in q_list {
        validate_modulus(q, 3)?;
    }
    enum Outcome {
        Row(Box<LinnikRow>),
        Skip(LinnikSkip),
    }
    let outcomes: Vec<Outcome> = q_list
        .par_iter()
        .map(|&q| match linnik_row(lambda, q) {
            Ok(row) => Outcome::Row(Box::new(row)),
            Err(e) => Outcome::Skip(LinnikSkip {
                q,
                reason: e.to_string(),
            }),
        })
        .collect();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    for outcome in outcomes {
        match outcome {
            Outcome::Row(r) => rows.push(*r),
            Outcome::Skip(s) => skipped.push(s),
        }
    }
    Ok(LinnikScan {
        lambda,
        rows,
        skipped,
    })
}

fn linnik_row(lambda: f64, q: u64) -> Result<LinnikRow, Error> {
    let scale = lambda * euler_phi(q) as f64 * (q as f64).ln();
    if !scale.is_finite() || scale > SIEVE_CEILING as f64 {
        return Err(Error::AboveCeiling {
            hi: scale.ceil() as u64,
            ceiling: SIEVE_CEILING,
        });
    }
    let x = scale.ceil() as u64;
    let rc = residue_coverage(x, q)?;
    let identity = verify_moment_identity(x, q)?;
    let pi_x: u64 = rc.per_class.iter().sum();
    Ok(LinnikRow {
        q,
        phi_q: rc.phi_q,
        x,
        covered: rc.covered,
        fraction: rc.covered as f64 / rc.phi_q as f64,
        pi_x,
        second_moment: rc.second_moment,
        identity_ok: identity.equal,
        covered_units: rc.covered_units,
        fraction_units: rc.covered_units as f64 / rc.phi_q as f64,
    })
}
