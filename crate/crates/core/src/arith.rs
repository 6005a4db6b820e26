//! Small number-theoretic helpers shared across modules. Everything
//! here is exact integer arithmetic on u64-sized inputs.

use std::sync::OnceLock;

/// Primes up to this bound are cached once per process and cover
/// trial division for any u64 whose factors we ever need exactly.
const SMALL_PRIME_LIMIT: u64 = 1 << 16;

/// All primes <= 65536, ascending. Enough to trial-divide any u64 up
/// to 2^32 completely, and to seed factorization beyond that.
pub fn small_primes() -> &'static [u64] {
    static CACHE: OnceLock<Vec<u64>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let n = (SMALL_PRIME_LIMIT + 1) as usize;
        let mut composite = vec![false; n];
        let mut primes = Vec::new();
        for p in 2..n {
            if composite[p] {
                continue;
            }
            primes.push(p as u64);
            let mut m = p * p;
            while m < n {
                composite[m] = true;
                m += p;
            }
        }
        primes
    })
}

/// Distinct prime factors of n, ascending. n = 0 and n = 1 give an
/// empty list.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    for &p in small_primes() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
    }
    if n > 1 {
        if n <= SMALL_PRIME_LIMIT * SMALL_PRIME_LIMIT {
            // remaining cofactor has no factor <= 65536, hence prime
            out.push(n);
        } else {
            // fall back to odd trial division past the cache
            let mut d = SMALL_PRIME_LIMIT + 1;
            while d * d <= n {
                if n.is_multiple_of(d) {
                    out.push(d);
                    while n.is_multiple_of(d) {
                        n /= d;
                    }
                }
                d += 2;
            }
            if n > 1 {
                out.push(n);
            }
        }
    }
    out
}

/// Deterministic primality for u64 via trial division over the cached
/// primes, extended by odd candidates when n exceeds 2^32.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in small_primes() {
        if p * p > n {
            return true;
        }
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = SMALL_PRIME_LIMIT + 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    let mut phi = n;
    for p in distinct_prime_factors(n) {
        phi = phi / p * (p - 1);
    }
    phi
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
