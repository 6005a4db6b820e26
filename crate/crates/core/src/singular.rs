//! The singular series for prime pairs and sums built from it.
//!
//! For a nonzero even shift h the series evaluates, via its Euler
//! product, to the closed form
//!
//! ```text
//! S(h) = 2 C * prod over odd primes p dividing h of (p - 1)/(p - 2)
//! ```
//!
//! where 2C = 2 * prod over odd p of (1 - 1/(p-1)^2) is the twin prime
//! constant. Odd shifts give exactly 0. This module computes the
//! constant by truncating its product at a cutoff, carries an explicit
//! truncation bound, and then uses only exact rational corrections per
//! shift, so the relative error of every `SingularValue` equals that of
//! the constant itself.

use serde::{Deserialize, Serialize};
use std::sync::OnceLock;

use crate::arith::distinct_prime_factors;
use crate::error::Error;
use crate::sieve::sieve_range_with_budget;

/// Truncation point used by [`singular_series`] and the cached
/// [`twin_prime_constant_default`]. At this cutoff the constant is
/// accurate to about 2e-7 absolute.
pub const DEFAULT_TWIN_CUTOFF: u64 = 1_000_000;

/// Truncated twin prime constant together with a rigorous bound on the
/// truncation error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwinPrimeConstant {
    /// 2 * prod over odd primes p <= cutoff of (1 - 1/(p-1)^2).
    pub value: f64,
    /// Bound on |value - limit|. The dropped factors are each below 1,
    /// so the truncation only overshoots, but the bound is symmetric.
    pub abs_error: f64,
    pub cutoff: u64,
}

/// Singular series value for one shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SingularValue {
    pub h: i64,
    pub value: f64,
    pub abs_error: f64,
}

/// Twin prime constant truncated at `cutoff`.
///
/// The tail satisfies 0 <= log(truncated/limit) <= sum over p > cutoff
/// of 2/(p-1)^2 < 2/(cutoff log cutoff), so the reported `abs_error`
/// adds that factor bound to a small float-rounding allowance.
pub fn twin_prime_constant(cutoff: u64) -> Result<TwinPrimeConstant, Error> {
    if cutoff < 3 {
        return Err(Error::CutoffTooSmall { cutoff });
    }
    // The table for [3, cutoff] is cutoff/16 bytes; the cutoff itself
    // is the real memory guard here, not the sieve budget.
    let table = sieve_range_with_budget(3, cutoff + 1, u64::MAX)?;
    let mut value = 2.0;
    for p in table.iter_primes() {
        let d = (p - 1) as f64;
        value *= 1.0 - 1.0 / (d * d);
    }
    let c = cutoff as f64;
    let abs_error = value * (2.0 / (c * c.ln()) + 1e-12);
    Ok(TwinPrimeConstant {
        value,
        abs_error,
        cutoff,
    })
}

/// The constant at [`DEFAULT_TWIN_CUTOFF`], computed once per process.
pub fn twin_prime_constant_default() -> TwinPrimeConstant {
    static CACHE: OnceLock<TwinPrimeConstant> = OnceLock::new();
    *CACHE.get_or_init(|| {
        twin_prime_constant(DEFAULT_TWIN_CUTOFF).expect("default cutoff is valid")
    })
}

/// Number of residue classes mod p covered by {0, h}: 1 when p divides
/// h (including h = 0), otherwise 2.
pub fn nu_p(h: i64, p: u64) -> Result<u64, Error> {
    if !crate::arith::is_prime_u64(p) {
        return Err(Error::NotPrime { p });
    }
    if h.unsigned_abs().is_multiple_of(p) {
        Ok(1)
    } else {
        Ok(2)
    }
}

/// Singular series at shift h, using the default constant.
pub fn singular_series(h: i64) -> Result<SingularValue, Error> {
    singular_series_with(h, twin_prime_constant_default())
}

/// Singular series at shift h from a given truncated constant. The odd
/// case is exactly zero; the even case multiplies the constant by the
/// exact rational prod (p-1)/(p-2) over odd primes dividing h, so the
/// relative error is inherited unchanged.
pub fn singular_series_with(h: i64, twin: TwinPrimeConstant) -> Result<SingularValue, Error> {
    if h == 0 {
        return Err(Error::ZeroShift);
    }
    if h % 2 != 0 {
        return Ok(SingularValue {
            h,
            value: 0.0,
            abs_error: 0.0,
        });
    }
    let mut factor = 1.0;
    for p in distinct_prime_factors(h.unsigned_abs()) {
        if p > 2 {
            factor *= (p - 1) as f64 / (p - 2) as f64;
        }
    }
    Ok(SingularValue {
        h,
        value: twin.value * factor,
        abs_error: twin.abs_error * factor,
    })
}

/// Ordered-pair sum of the singular series over a shift window.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GallagherReport {
    pub h_max: u64,
    /// sum over ordered pairs 1 <= h1 != h2 <= h_max of S(h1 - h2).
    pub sum: f64,
    /// sum / h_max^2; tends to 1 as the window grows.
    pub ratio: f64,
}

/// Sum of S(h1 - h2) over ordered pairs of distinct shifts in
/// [1, h_max]. Grouping by d = |h1 - h2| gives
/// 2 * sum_{d=1}^{h_max-1} (h_max - d) S(d).
pub fn gallagher_pair_sum(h_max: u64) -> Result<GallagherReport, Error> {
    if h_max < 1 {
        return Err(Error::WindowTooSmall { h_max });
    }
    let twin = twin_prime_constant_default();
    let mut sum = 0.0;
    for d in 1..h_max {
        let s = singular_series_with(d as i64, twin)?;
        sum += 2.0 * (h_max - d) as f64 * s.value;
    }
    Ok(GallagherReport {
        h_max,
        sum,
        ratio: sum / (h_max as f64 * h_max as f64),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn nu_p_examples() {
        assert_eq!(nu_p(6, 3).unwrap(), 1);
        assert_eq!(nu_p(4, 3).unwrap(), 2);
        assert_eq!(nu_p(0, 7).unwrap(), 1);
        assert_eq!(nu_p(-6, 3).unwrap(), 1);
        assert!(matches!(nu_p(5, 9), Err(Error::NotPrime { p: 9 })));
    }

    #[test]
    fn twin_constant_small_cutoffs() {
        // cutoff 3 keeps only p = 3: 2 * (1 - 1/4)
        let t3 = twin_prime_constant(3).unwrap();
        assert!((t3.value - 1.5).abs() < 1e-15);
        // cutoff 5 adds p = 5: 1.5 * (1 - 1/16)
        let t5 = twin_prime_constant(5).unwrap();
        assert!((t5.value - 1.40625).abs() < 1e-15);
        assert!(matches!(
            twin_prime_constant(2),
            Err(Error::CutoffTooSmall { cutoff: 2 })
        ));
    }

    #[test]
    fn twin_constant_decreases_toward_limit() {
        let cutoffs = [3u64, 10, 100, 10_000];
        let vals: Vec<f64> = cutoffs
            .iter()
            .map(|&c| twin_prime_constant(c).unwrap().value)
            .collect();
        assert!(vals.windows(2).all(|w| w[0] > w[1]));
        // truncation always overshoots the limit
        const LIMIT: f64 = 1.3203236316937392;
        for v in vals {
            assert!(v > LIMIT);
        }
    }

    #[test]
    fn twin_constant_default_accuracy() {
        let t = twin_prime_constant_default();
        assert_eq!(t.cutoff, DEFAULT_TWIN_CUTOFF);
        const LIMIT: f64 = 1.3203236316937392;
        assert!((t.value - LIMIT).abs() <= t.abs_error);
        assert!(t.abs_error < 1e-6);
        // the underlying per-odd-prime constant sits just below 2/3
        let half = t.value / 2.0;
        assert!(half > 0.6 && half < 0.7);
    }

    #[test]
    fn series_closed_form_small_shifts() {
        let twin = twin_prime_constant_default().value;
        let tol = 1e-12;
        assert_eq!(singular_series(1).unwrap().value, 0.0);
        assert_eq!(singular_series(-9).unwrap().value, 0.0);
        assert!((singular_series(2).unwrap().value - twin).abs() < tol);
        assert!((singular_series(4).unwrap().value - twin).abs() < tol);
        assert!((singular_series(6).unwrap().value - 2.0 * twin).abs() < tol);
        assert!((singular_series(12).unwrap().value - 2.0 * twin).abs() < tol);
        // 30 = 2 * 3 * 5: factor 2 * (4/3)
        assert!((singular_series(30).unwrap().value - 8.0 / 3.0 * twin).abs() < tol);
        let pos = singular_series(6).unwrap().value;
        let neg = singular_series(-6).unwrap().value;
        assert_eq!(pos, neg);
        assert!(matches!(singular_series(0), Err(Error::ZeroShift)));
    }

    #[test]
    fn gallagher_small_windows() {
        assert!(matches!(
            gallagher_pair_sum(0),
            Err(Error::WindowTooSmall { h_max: 0 })
        ));
        assert_eq!(gallagher_pair_sum(1).unwrap().sum, 0.0);
        assert_eq!(gallagher_pair_sum(2).unwrap().sum, 0.0);
        let g3 = gallagher_pair_sum(3).unwrap();
        let s2 = singular_series(2).unwrap().value;
        assert!((g3.sum - 2.0 * s2).abs() < 1e-12);
        assert!((g3.ratio - g3.sum / 9.0).abs() < 1e-15);
    }
}
