//! Randomized invariants for residue-class statistics.

use primespan::congruence::{
    cauchy_lower_bound, factor_bound_check, residue_coverage, shifted_pair_count,
    verify_moment_identity, BoundStatus,
};
use primespan::sieve::primes_in;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn class_counts_partition_the_primes(x in 3u64..20_000, q in 2u64..300) {
        let cov = residue_coverage(x, q).unwrap();
        let primes = primes_in(2, x).unwrap();
        prop_assert_eq!(cov.per_class.len() as u64, q);
        prop_assert_eq!(cov.per_class.iter().sum::<u64>(), primes.len() as u64);
        for &p in &primes {
            prop_assert!(cov.per_class[(p % q) as usize] > 0);
        }
        prop_assert_eq!(
            cov.covered,
            cov.per_class.iter().filter(|&&c| c > 0).count() as u64
        );
        prop_assert!(cov.covered_units <= cov.phi_q);
        prop_assert!(cov.covered <= q.min(primes.len() as u64));
    }

    #[test]
    fn moment_identity_always_balances(x in 3u64..10_000, q in 2u64..200) {
        let m = verify_moment_identity(x, q).unwrap();
        prop_assert!(m.equal);
        prop_assert_eq!(m.lhs, m.rhs);
        let cov = residue_coverage(x, q).unwrap();
        prop_assert_eq!(m.rhs, cov.second_moment);
    }

    #[test]
    fn shift_sign_never_matters(x in 20u64..10_000, t in 1i64..8, q in 2u64..10) {
        prop_assume!((t as u64) * q < x);
        prop_assert_eq!(
            shifted_pair_count(x, t, q).unwrap(),
            shifted_pair_count(x, -t, q).unwrap()
        );
    }

    #[test]
    fn cauchy_bound_always_holds(x in 3u64..30_000, q in 2u64..500) {
        let c = cauchy_lower_bound(x, q).unwrap();
        prop_assert!(c.holds);
        if !c.degenerate {
            prop_assert!(c.r_lower > 0.0);
        }
    }

    #[test]
    fn factor_bound_never_fails(t in -200i64..200, q in 2u64..200) {
        prop_assume!(t != 0);
        let f = factor_bound_check(t, q).unwrap();
        prop_assert_ne!(f.status, BoundStatus::Fails);
    }
}
