//! Interval histogram and pair counts checked against brute-force
//! recounts built from an independent primality table.

use primespan::interval::{
    coverage, interval_histogram, pair_count, second_moment_decomposition,
};
use std::collections::BTreeMap;

/// Boolean primality table from a locally coded sieve.
fn prime_table(limit: usize) -> Vec<bool> {
    let mut is_p = vec![true; limit + 1];
    is_p[0] = false;
    if limit >= 1 {
        is_p[1] = false;
    }
    for p in 2..=limit {
        if is_p[p] && p * p <= limit {
            let mut m = p * p;
            while m <= limit {
                is_p[m] = false;
                m += p;
            }
        }
    }
    is_p
}

/// Count primes in (n, n+h] for every n in [x, 2x), one n at a time.
fn brute_histogram(x: u64, h: u64) -> BTreeMap<u64, u64> {
    let is_p = prime_table((2 * x + h) as usize);
    let mut counts = BTreeMap::new();
    for n in x..2 * x {
        let k = (n + 1..=n + h).filter(|&m| is_p[m as usize]).count() as u64;
        *counts.entry(k).or_insert(0) += 1;
    }
    counts
}

#[test]
fn histogram_matches_brute_force() {
    for (x, lambda) in [(10u64, 1.0f64), (97, 0.7), (1000, 2.0), (10_000, 3.0)] {
        let hist = interval_histogram(x, lambda).unwrap();
        let want = brute_histogram(x, hist.shift_cap);
        assert_eq!(hist.counts, want, "(x, lambda) = ({x}, {lambda})");
        assert_eq!(hist.counts.values().sum::<u64>(), x);
    }
}

#[test]
fn first_moment_is_a_weighted_prime_count() {
    // sum_n (count of primes in (n, n+H]) counts each prime once per
    // window containing it, so a brute double loop must agree
    let x = 10_000u64;
    let hist = interval_histogram(x, 2.0).unwrap();
    let h = hist.shift_cap;
    let is_p = prime_table((2 * x + h) as usize);
    let mut want = 0u64;
    for n in x..2 * x {
        want += (n + 1..=n + h).filter(|&m| is_p[m as usize]).count() as u64;
    }
    assert_eq!(hist.moment1(), want);
}

#[test]
fn second_moment_equals_ordered_pair_counts() {
    // sum_n I_n^2 expanded over ordered shift pairs (h1, h2)
    let x = 2000u64;
    let hist = interval_histogram(x, 1.5).unwrap();
    let h = hist.shift_cap;
    let mut pair_total = 0u64;
    for h1 in 1..=h {
        for h2 in 1..=h {
            pair_total += pair_count(x, h1, h2).unwrap();
        }
    }
    assert_eq!(hist.moment2(), pair_total);
}

#[test]
fn decomposition_reassembles_second_moment() {
    for (x, lambda) in [(500u64, 1.0f64), (2000, 2.0), (10_000, 1.0)] {
        let hist = interval_histogram(x, lambda).unwrap();
        let (diag, off) = second_moment_decomposition(x, lambda).unwrap();
        assert_eq!(diag + off, hist.moment2(), "(x, lambda) = ({x}, {lambda})");
        assert_eq!(diag, hist.moment1(), "diagonal part is the first moment");
    }
}

#[test]
fn pair_count_matches_brute_force() {
    let x = 5000u64;
    let is_p = prime_table((2 * x + 40) as usize);
    for (h1, h2) in [(0u64, 2u64), (1, 7), (3, 3), (2, 30), (11, 4)] {
        let want = (x..2 * x)
            .filter(|&n| is_p[(n + h1) as usize] && is_p[(n + h2) as usize])
            .count() as u64;
        assert_eq!(pair_count(x, h1, h2).unwrap(), want, "({h1}, {h2})");
    }
}

#[test]
fn million_point_histogram_pinned() {
    let hist = interval_histogram(1_000_000, 1.0).unwrap();
    assert_eq!(hist.shift_cap, 13);
    assert_eq!(hist.counts[&0], 342_681);
    let cov = coverage(1_000_000, 1.0).unwrap();
    assert_eq!(cov.r_x, 1_000_000 - 342_681);
    assert!((cov.fraction - 0.657_319).abs() < 1e-12);
    // near the Cramer-model prediction e^{-1} for unit lambda
    assert!((hist.p_k(0) - (-1.0f64).exp()).abs() < 0.05);
}

#[test]
fn coverage_beats_lower_bound_at_one_million() {
    for lambda in [0.5f64, 1.0, 2.0] {
        let cov = coverage(1_000_000, lambda).unwrap();
        let bound = lambda / (4.0 * lambda + 1.0);
        assert!(
            cov.fraction > bound,
            "lambda = {lambda}: {} <= {bound}",
            cov.fraction
        );
        assert!((cov.paper_lower_bound - bound).abs() < 1e-15);
        assert!(cov.cauchy_lhs >= cov.cauchy_rhs);
    }
}
