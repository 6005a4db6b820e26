use thiserror::Error;

/// Everything that can go wrong across the crate. Variants carry the
/// offending values so diagnostics stay one line and self-contained.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid range [{lo}, {hi}): need 2 <= lo < hi")]
    InvalidRange { lo: u64, hi: u64 },

    #[error("range end {hi} exceeds the sieve ceiling {ceiling}")]
    AboveCeiling { hi: u64, ceiling: u64 },

    #[error(
        "sieving [{lo}, {hi}) needs about {needed} bytes, over the {budget}-byte budget \
         (raise PRIMESPAN_SIEVE_MEMORY to allow it)"
    )]
    BudgetExceeded {
        lo: u64,
        hi: u64,
        needed: u64,
        budget: u64,
    },

    #[error("x = {x} too small: this computation needs x >= {min}")]
    XTooSmall { x: u64, min: u64 },

    #[error("lambda = {lambda} out of range: need a finite value > 0")]
    LambdaOutOfRange { lambda: f64 },

    #[error("shift window empty: floor(lambda * ln x) = 0 for x = {x}, lambda = {lambda}")]
    EmptyShiftWindow { x: u64, lambda: f64 },

    #[error("{p} is not prime")]
    NotPrime { p: u64 },

    #[error("shift h = 0 is excluded (the diagonal is handled separately)")]
    ZeroShift,

    #[error("cutoff = {cutoff} too small: the product needs cutoff >= 3")]
    CutoffTooSmall { cutoff: u64 },

    #[error("modulus q = {q} out of range: need q >= {min}")]
    InvalidModulus { q: u64, min: u64 },

    #[error("residue a = {a} not in [0, {q})")]
    ResidueOutOfRange { a: u64, q: u64 },

    #[error("shift t = {t} with q = {q} reaches past x = {x}: need |t| < x/q")]
    ShiftOutOfRange { t: i64, q: u64, x: u64 },

    #[error("h1 = h2 = {h}: the pair bound needs distinct shifts")]
    EqualShifts { h: u64 },

    #[error("trials = 0: the simulation needs at least one trial")]
    ZeroTrials,

    #[error("h_max = {h_max} too small: the pair sum needs h_max >= 1")]
    WindowTooSmall { h_max: u64 },

    #[error("parameter too large: {what} = {value} exceeds {max}")]
    ParameterTooLarge {
        what: &'static str,
        value: u64,
        max: u64,
    },

    #[error("corrupt sieve dump: {0}")]
    CorruptDump(&'static str),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
