//! Segmented sieve of Eratosthenes over an arbitrary range `[lo, hi)`.
//!
//! The table stores one bit per odd integer and treats 2 as a special
//! case, so a range of width W costs W/16 bytes plus O(sqrt(hi)) for the
//! base primes. Sieving walks the bit table in cache-sized segments;
//! segments are disjoint slices, so they are processed in parallel and
//! the result is independent of scheduling.
//!
//! Counting conventions, fixed here for the whole crate: [`pi`] counts
//! primes p <= x, while [`pi_progression`] counts p < x. Window counts
//! over (n, n+H] come out of the <= convention; the residue-class
//! statistics use the strict one. Both are exact, and the one-prime
//! boundary difference is far below every tolerance used downstream.

use std::env;
use std::io::{self, Read, Write};

use rayon::prelude::*;

use crate::error::Error;

/// Largest `hi` accepted by [`sieve_range`]. Desk-scale work stays below
/// ~1e9; the ceiling leaves two extra decades while keeping `p * p` for
/// base primes comfortably inside u64.
pub const SIEVE_CEILING: u64 = 1 << 42;

/// Default memory budget in bytes for one [`SievedRange`], covering the
/// bit table plus base primes. Override with [`MEMORY_BUDGET_ENV`].
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

/// Environment variable holding the sieve memory budget as decimal
/// bytes. Unset or unparsable values fall back to the default.
pub const MEMORY_BUDGET_ENV: &str = "PRIMESPAN_SIEVE_MEMORY";

/// Bytes of bit table per sieving segment. 256 KiB keeps a segment
/// resident in L2; one segment spans about 4.2M integers.
const SEGMENT_BYTES: usize = 1 << 18;
const SEGMENT_WORDS: usize = SEGMENT_BYTES / 8;

/// Primality table for the integers in `[lo, hi)`.
///
/// Bit `i` of the packed words stands for the odd number
/// `first_odd + 2i`; the even prime 2 is answered out of band. Padding
/// bits past the last covered odd number are always zero, which the
/// word-level counting routines rely on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SievedRange {
    lo: u64,
    hi: u64,
    first_odd: u64,
    nbits: usize,
    words: Vec<u64>,
}

impl SievedRange {
    pub fn lo(&self) -> u64 {
        self.lo
    }

    pub fn hi(&self) -> u64 {
        self.hi
    }

    /// True iff `n` is prime. Panics when `n` is outside `[lo, hi)`.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        assert!(
            n >= self.lo && n < self.hi,
            "{n} outside sieved range [{}, {})",
            self.lo,
            self.hi
        );
        if n.is_multiple_of(2) {
            return n == 2;
        }
        let idx = ((n - self.first_odd) / 2) as usize;
        self.words[idx / 64] >> (idx % 64) & 1 == 1
    }

    /// Number of primes in `[a, b)`, which must lie inside the table.
    pub fn count_in(&self, a: u64, b: u64) -> u64 {
        assert!(
            self.lo <= a && a <= b && b <= self.hi,
            "[{a}, {b}) outside sieved range [{}, {})",
            self.lo,
            self.hi
        );
        if a == b {
            return 0;
        }
        let mut total = u64::from(a <= 2 && 2 < b);
        let i0 = self.index_of_first_odd_at_least(a);
        let i1 = self.index_past_odds_below(b);
        total += count_bits_in(&self.words, i0, i1);
        total
    }

    /// All primes in the table, in increasing order.
    pub fn iter_primes(&self) -> impl Iterator<Item = u64> + '_ {
        let two = (self.lo <= 2 && 2 < self.hi).then_some(2u64);
        let first_odd = self.first_odd;
        let odds = self.words.iter().enumerate().flat_map(move |(wi, &word)| {
            let mut w = word;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let tz = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(first_odd + 2 * (wi * 64 + tz) as u64)
            })
        });
        two.into_iter().chain(odds)
    }

    /// Count of m in `[lo, hi)` with m and m+gap both prime (and m+gap
    /// still inside the table).
    pub fn count_pairs_with_gap(&self, gap: u64) -> u64 {
        self.count_pairs_with_gap_in(gap, self.lo, self.hi)
    }

    /// Count of m in `[a, b)` with m and m+gap both prime. Pairs whose
    /// upper element would fall outside the table are not counted, so
    /// callers wanting an exact window must keep `b + gap <= hi`.
    pub fn count_pairs_with_gap_in(&self, gap: u64, a: u64, b: u64) -> u64 {
        assert!(
            self.lo <= a && a <= b && b <= self.hi,
            "[{a}, {b}) outside sieved range [{}, {})",
            self.lo,
            self.hi
        );
        if gap == 0 {
            return self.count_in(a, b);
        }
        if gap % 2 == 1 {
            // An odd gap forces one even element, so the only candidate
            // pair is (2, 2 + gap).
            let ok = a <= 2
                && 2 < b
                && gap < self.hi - 2
                && self.is_prime(2)
                && self.is_prime(2 + gap);
            return u64::from(ok);
        }
        // Even gap: both elements odd. Count bit pairs (i, i + gap/2);
        // zero padding and missing words make out-of-table bits read 0.
        let shift = (gap / 2) as usize;
        let i0 = self.index_of_first_odd_at_least(a);
        let i1 = self.index_past_odds_below(b);
        self.count_bit_pairs(shift, i0, i1)
    }

    fn index_of_first_odd_at_least(&self, x: u64) -> usize {
        if x <= self.first_odd {
            0
        } else {
            (((x | 1) - self.first_odd) / 2) as usize
        }
    }

    fn index_past_odds_below(&self, b: u64) -> usize {
        if b <= self.first_odd {
            0
        } else {
            (b - self.first_odd).div_ceil(2) as usize
        }
    }

    #[inline]
    fn word_or_zero(&self, j: usize) -> u64 {
        self.words.get(j).copied().unwrap_or(0)
    }

    /// The 64 bits starting at bit index j*64 + shift.
    #[inline]
    fn shifted_word(&self, j: usize, shift: usize) -> u64 {
        let sw = shift / 64;
        let sr = shift % 64;
        let lo = self.word_or_zero(j + sw);
        if sr == 0 {
            lo
        } else {
            lo >> sr | self.word_or_zero(j + sw + 1) << (64 - sr)
        }
    }

    /// popcount over i in [i0, i1) of bit(i) & bit(i + shift).
    fn count_bit_pairs(&self, shift: usize, i0: usize, i1: usize) -> u64 {
        let i1 = i1.min(self.nbits);
        if i0 >= i1 {
            return 0;
        }
        let wa = i0 / 64;
        let wb = (i1 - 1) / 64;
        let mut total = 0u64;
        for j in wa..=wb {
            let mut a = self.words[j];
            if j == wa {
                a &= !0u64 << (i0 % 64);
            }
            if j == wb {
                let top = i1 - j * 64;
                if top < 64 {
                    a &= (1u64 << top) - 1;
                }
            }
            if a == 0 {
                continue;
            }
            total += (a & self.shifted_word(j, shift)).count_ones() as u64;
        }
        total
    }

    /// Serializes as `lo` and `hi` (8-byte little-endian each) followed
    /// by the packed odd-only bit words, little-endian. The layout is
    /// fully determined by `lo` and `hi`, so the header is all the
    /// metadata a reader needs.
    pub fn write_binary<W: Write>(&self, out: &mut W) -> io::Result<()> {
        out.write_all(&self.lo.to_le_bytes())?;
        out.write_all(&self.hi.to_le_bytes())?;
        let mut buf = Vec::with_capacity(self.words.len() * 8);
        for w in &self.words {
            buf.extend_from_slice(&w.to_le_bytes());
        }
        out.write_all(&buf)
    }

    /// Reads a table written by [`write_binary`](Self::write_binary),
    /// validating the header, the byte count, and the zero padding.
    pub fn read_binary<R: Read>(input: &mut R) -> Result<SievedRange, Error> {
        let mut header = [0u8; 16];
        input.read_exact(&mut header).map_err(Error::Io)?;
        let lo = u64::from_le_bytes(header[..8].try_into().unwrap());
        let hi = u64::from_le_bytes(header[8..].try_into().unwrap());
        if lo < 2 || lo >= hi || hi > SIEVE_CEILING {
            return Err(Error::CorruptDump("header range invalid"));
        }
        let (first_odd, nbits, nwords) = table_geometry(lo, hi);
        let mut buf = vec![0u8; nwords * 8];
        input.read_exact(&mut buf).map_err(Error::Io)?;
        let mut probe = [0u8; 1];
        match input.read(&mut probe) {
            Ok(0) => {}
            Ok(_) => return Err(Error::CorruptDump("trailing bytes after bit table")),
            Err(e) => return Err(Error::Io(e)),
        }
        let words: Vec<u64> = buf
            .chunks_exact(8)
            .map(|c| u64::from_le_bytes(c.try_into().unwrap()))
            .collect();
        if nbits % 64 != 0 {
            let padding = words[nwords - 1] >> (nbits % 64);
            if padding != 0 {
                return Err(Error::CorruptDump("nonzero padding bits"));
            }
        }
        Ok(SievedRange {
            lo,
            hi,
            first_odd,
            nbits,
            words,
        })
    }
}

fn table_geometry(lo: u64, hi: u64) -> (u64, usize, usize) {
    let first_odd = lo | 1;
    let nbits = if hi > first_odd {
        (hi - first_odd).div_ceil(2) as usize
    } else {
        0
    };
    (first_odd, nbits, nbits.div_ceil(64))
}

/// popcount of bits [i0, i1) of `words`.
fn count_bits_in(words: &[u64], i0: usize, i1: usize) -> u64 {
    let i1 = i1.min(words.len() * 64);
    if i0 >= i1 {
        return 0;
    }
    let wa = i0 / 64;
    let wb = (i1 - 1) / 64;
    if wa == wb {
        let mut w = words[wa] >> (i0 % 64);
        let width = i1 - i0;
        if width < 64 {
            w &= (1u64 << width) - 1;
        }
        return w.count_ones() as u64;
    }
    let mut total = (words[wa] >> (i0 % 64)).count_ones() as u64;
    for w in &words[wa + 1..wb] {
        total += w.count_ones() as u64;
    }
    let top = i1 - wb * 64;
    let mut w = words[wb];
    if top < 64 {
        w &= (1u64 << top) - 1;
    }
    total + w.count_ones() as u64
}

/// Sieve `[lo, hi)` under the environment-configured memory budget.
pub fn sieve_range(lo: u64, hi: u64) -> Result<SievedRange, Error> {
    sieve_range_with_budget(lo, hi, memory_budget())
}

fn memory_budget() -> u64 {
    env::var(MEMORY_BUDGET_ENV)
        .ok()
        .and_then(|s| s.trim().parse::<u64>().ok())
        .unwrap_or(DEFAULT_MEMORY_BUDGET)
}

/// Sieve `[lo, hi)`, refusing tables whose bit table plus base primes
/// would exceed `budget` bytes.
pub fn sieve_range_with_budget(lo: u64, hi: u64, budget: u64) -> Result<SievedRange, Error> {
    if lo < 2 || lo >= hi {
        return Err(Error::InvalidRange { lo, hi });
    }
    if hi > SIEVE_CEILING {
        return Err(Error::AboveCeiling {
            hi,
            ceiling: SIEVE_CEILING,
        });
    }
    let (first_odd, nbits, nwords) = table_geometry(lo, hi);
    let sqrt_hi = (hi - 1).isqrt();
    // Bit table + the base-prime sieve's own bool array + the collected
    // base primes; a close-enough estimate for a budget check.
    let needed = (nwords as u64) * 8 + sqrt_hi;
    if needed > budget {
        return Err(Error::BudgetExceeded {
            lo,
            hi,
            needed,
            budget,
        });
    }
    let base = small_odd_primes(sqrt_hi);
    let mut words = vec![0u64; nwords];
    words
        .par_chunks_mut(SEGMENT_WORDS)
        .enumerate()
        .for_each(|(ci, seg)| sieve_segment(seg, ci * SEGMENT_WORDS * 64, first_odd, nbits, &base));
    if nbits % 64 != 0 {
        if let Some(w) = words.last_mut() {
            *w &= (1u64 << (nbits % 64)) - 1;
        }
    }
    Ok(SievedRange {
        lo,
        hi,
        first_odd,
        nbits,
        words,
    })
}

/// Clears composite bits in one segment of the table. `bit0` is the
/// global index of the segment's first bit.
fn sieve_segment(seg: &mut [u64], bit0: usize, first_odd: u64, nbits: usize, base: &[u64]) {
    seg.fill(!0u64);
    let seg_bits = (seg.len() * 64).min(nbits - bit0);
    let seg_first = first_odd + 2 * bit0 as u64;
    let seg_end = seg_first + 2 * seg_bits as u64;
    for &p in base {
        if p * p >= seg_end {
            break;
        }
        // First odd multiple of p in the segment that is not p itself:
        // start at p*p, or at the smallest odd multiplier that reaches
        // seg_first (that multiplier is >= 3 whenever p < seg_first).
        let mut m = if p * p >= seg_first {
            p * p
        } else {
            (seg_first.div_ceil(p) | 1) * p
        };
        while m < seg_end {
            let idx = ((m - first_odd) / 2) as usize - bit0;
            seg[idx / 64] &= !(1u64 << (idx % 64));
            m += 2 * p;
        }
    }
}

/// Odd primes <= limit by a plain in-memory sieve; used for base primes.
fn small_odd_primes(limit: u64) -> Vec<u64> {
    if limit < 3 {
        return Vec::new();
    }
    let n = ((limit - 3) / 2 + 1) as usize;
    let mut composite = vec![false; n];
    let mut primes = Vec::new();
    for i in 0..n {
        if composite[i] {
            continue;
        }
        let p = 3 + 2 * i as u64;
        primes.push(p);
        let mut m = p * p;
        while m <= limit {
            composite[((m - 3) / 2) as usize] = true;
            m += 2 * p;
        }
    }
    primes
}

/// Number of primes p <= x.
pub fn pi(x: u64) -> Result<u64, Error> {
    if x < 2 {
        return Ok(0);
    }
    if x >= SIEVE_CEILING {
        return Err(Error::AboveCeiling {
            hi: x,
            ceiling: SIEVE_CEILING,
        });
    }
    let table = sieve_range(2, x + 1)?;
    Ok(table.count_in(2, x + 1))
}

/// Number of primes p < x with p = a (mod q). Strict inequality.
pub fn pi_progression(x: u64, q: u64, a: u64) -> Result<u64, Error> {
    if q == 0 {
        return Err(Error::InvalidModulus { q, min: 1 });
    }
    if a >= q {
        return Err(Error::ResidueOutOfRange { a, q });
    }
    if x <= 2 {
        return Ok(0);
    }
    let table = sieve_range(2, x)?;
    Ok(table.iter_primes().filter(|p| p % q == a).count() as u64)
}

/// All primes in `[lo, hi)`, increasing.
pub fn primes_in(lo: u64, hi: u64) -> Result<Vec<u64>, Error> {
    Ok(sieve_range(lo, hi)?.iter_primes().collect())
}
