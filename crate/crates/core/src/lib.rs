//! Desk-scale statistics of prime numbers in short intervals and in
//! residue classes.
//!
//! Everything here is exact or carries an explicit error bound. The
//! crate answers questions of the shape "how many n in [x, 2x) have a
//! prime within the next lambda ln x integers", "how many residue
//! classes mod q hold a prime below x", and "how close are those
//! counts to their predicted densities":
//!
//! - [`sieve`]: segmented, bit-packed sieve of Eratosthenes over
//!   arbitrary ranges, with exact prime and prime-pair counting.
//! - [`singular`]: the prime-pair singular series via its closed form,
//!   the twin prime constant with a truncation bound, and the
//!   Gallagher pair-sum average.
//! - [`interval`]: histograms of interval prime counts over a dyadic
//!   range, their moments, coverage fractions, exact pair counts, and
//!   the sieve upper bound they are checked against.
//! - [`congruence`]: per-class prime counts mod q, the exact
//!   second-moment identity, Cauchy coverage bounds, and a scan over
//!   moduli at their natural scale x ~ phi(q) ln q.
//! - [`cramer`]: reproducible Monte Carlo simulation of the random
//!   prime model and its distance from the Poisson law.
//! - [`report`]: JSON and CSV emission for every report type.
//!
//! Throughout the crate "log" means the natural logarithm. Dyadic
//! ranges [x, 2x) are half-open, so they hold exactly x integers and
//! empirical frequencies sum to 1 exactly.

pub mod congruence;
pub mod cramer;
pub mod error;
pub mod interval;
pub mod report;
pub mod sieve;
pub mod singular;

mod arith;

pub use error::Error;
