//! Randomized invariants for the sieve layer.

use primespan::sieve::{pi, pi_progression, primes_in, sieve_range, SievedRange};
use proptest::prelude::*;

fn is_prime_slow(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_matches_trial_division(lo in 2u64..30_000, span in 1u64..2_000) {
        let hi = lo + span;
        let t = sieve_range(lo, hi).unwrap();
        for n in lo..hi {
            prop_assert_eq!(t.is_prime(n), is_prime_slow(n), "n = {}", n);
        }
    }

    #[test]
    fn splitting_never_changes_the_primes(lo in 2u64..50_000, a in 1u64..3_000, b in 1u64..3_000) {
        let mid = lo + a;
        let hi = mid + b;
        let mut stitched = primes_in(lo, mid).unwrap();
        stitched.extend(primes_in(mid, hi).unwrap());
        prop_assert_eq!(stitched, primes_in(lo, hi).unwrap());
    }

    #[test]
    fn counts_are_monotone_in_the_endpoint(x in 0u64..100_000, step in 1u64..1_000) {
        prop_assert!(pi(x).unwrap() <= pi(x + step).unwrap());
    }

    #[test]
    fn progression_counts_sum_to_the_total(x in 2u64..20_000, q in 1u64..60) {
        let total: u64 = (0..q).map(|a| pi_progression(x, q, a).unwrap()).sum();
        prop_assert_eq!(total, primes_in(2, x).unwrap().len() as u64);
    }

    #[test]
    fn gap_pairs_match_a_direct_scan(lo in 2u64..5_000, span in 2u64..800, gap in 0u64..120) {
        let hi = lo + span;
        let t = sieve_range(lo, hi).unwrap();
        let want = (lo..hi)
            .filter(|&p| t.is_prime(p) && p + gap < hi && t.is_prime(p + gap))
            .count() as u64;
        prop_assert_eq!(t.count_pairs_with_gap(gap), want);
    }

    #[test]
    fn serialization_round_trips(lo in 2u64..100_000, span in 1u64..10_000) {
        let t = sieve_range(lo, lo + span).unwrap();
        let mut buf = Vec::new();
        t.write_binary(&mut buf).unwrap();
        let back = SievedRange::read_binary(&mut buf.as_slice()).unwrap();
        prop_assert_eq!(t, back);
    }

    #[test]
    fn count_in_is_additive(lo in 2u64..20_000, a in 0u64..1_000, b in 0u64..1_000) {
        let hi = lo + a + b + 1;
        let t = sieve_range(lo, hi).unwrap();
        let mid = lo + a;
        prop_assert_eq!(
            t.count_in(lo, mid) + t.count_in(mid, hi),
            t.count_in(lo, hi)
        );
    }
}
