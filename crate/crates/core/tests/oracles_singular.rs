//! Closed-form singular series checked against an independently coded
//! truncated Euler product, plus pinned values for the pair-sum ratio.

use primespan::singular::{
    gallagher_pair_sum, singular_series, singular_series_with, twin_prime_constant,
};

/// Simple sieve local to this test file; shares nothing with the crate.
fn primes_up_to(n: usize) -> Vec<u64> {
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for p in 2..=n {
        if !composite[p] {
            out.push(p as u64);
            let mut m = p * p;
            while m <= n {
                composite[m] = true;
                m += p;
            }
        }
    }
    out
}

/// Direct Euler product over all primes p <= cutoff:
///   prod_p ((p - v_p(h)) / p) * (1 - 1/p)^{-2}
/// where v_p(h) counts the residues {0, -h} mod p, i.e. 1 if p | h else 2.
fn euler_product_oracle(h: i64, cutoff: usize) -> f64 {
    let h = h.unsigned_abs();
    let mut acc = 1.0f64;
    for p in primes_up_to(cutoff) {
        let v = if h.is_multiple_of(p) { 1.0 } else { 2.0 };
        let p = p as f64;
        acc *= ((p - v) / p) / ((1.0 - 1.0 / p) * (1.0 - 1.0 / p));
    }
    acc
}

#[test]
fn closed_form_matches_truncated_euler_product() {
    // truncating the product at P leaves a relative tail of roughly
    // 2 / (P ln P); allow that on top of the reported abs_error
    let cutoff = 100_000usize;
    let tail = 2.0 / (cutoff as f64 * (cutoff as f64).ln());
    for h in (-100i64..=100).filter(|h| h % 2 == 0 && *h != 0) {
        let s = singular_series(h).unwrap();
        let oracle = euler_product_oracle(h, cutoff);
        let tol = s.abs_error + oracle * tail;
        assert!(
            (s.value - oracle).abs() <= tol,
            "h = {h}: closed {} vs oracle {} (tol {tol})",
            s.value,
            oracle
        );
    }
}

#[test]
fn odd_shifts_vanish_exactly() {
    for h in (-99i64..=99).filter(|h| h % 2 != 0) {
        assert_eq!(singular_series(h).unwrap().value, 0.0, "h = {h}");
    }
}

#[test]
fn twin_constant_cutoffs_agree() {
    let a = twin_prime_constant(1_000_000).unwrap();
    let b = twin_prime_constant(10_000_000).unwrap();
    assert!((a.value - b.value).abs() <= a.abs_error + b.abs_error);
    assert!((a.value - 1.320_323_6).abs() < 1e-6);
    assert!((b.value - 1.320_323_6).abs() < 1e-6);
    // truncation drops negative factors, so estimates sit above the limit
    assert!(a.value > b.value);
}

#[test]
fn prime_divisor_correction_is_multiplicative() {
    let twin = twin_prime_constant(1_000_000).unwrap();
    // h = 2 * 3 * 5 * 7: each odd prime divisor contributes (p-1)/(p-2)
    let s = singular_series_with(210, twin).unwrap();
    let want = twin.value * (2.0 / 1.0) * (4.0 / 3.0) * (6.0 / 5.0);
    assert!((s.value - want).abs() < 1e-12 * want);
    // powers do not change the value
    let s4 = singular_series_with(4, twin).unwrap();
    let s2 = singular_series_with(2, twin).unwrap();
    assert_eq!(s4.value, s2.value);
}

#[test]
fn gallagher_ratios_pinned() {
    let pins = [
        (500u64, 0.984_750_510_778),
        (1000, 0.991_682_473_670),
        (2000, 0.995_493_922_899),
        (5000, 0.998_013_897_356_177_7),
    ];
    let mut last = 0.0;
    for (h_max, want) in pins {
        let g = gallagher_pair_sum(h_max).unwrap();
        assert!(
            (g.ratio - want).abs() < 1e-9,
            "h_max = {h_max}: {} vs {want}",
            g.ratio
        );
        assert!(g.ratio > last, "ratio must increase with the window");
        last = g.ratio;
    }
}
