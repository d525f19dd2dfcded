use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library can report.
///
/// The `Display` form always starts with the variant name so that the CLI
/// can surface it verbatim.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotPrime: modulus {0} is not prime")]
    NotPrime(u64),

    #[error("BadResidueClass: modulus {0} is not congruent to 3 mod 4, so -1 is a square and GI(p) is not a field")]
    BadResidueClass(u64),

    #[error("ModulusTooLarge: modulus {0} must be below 2^31")]
    ModulusTooLarge(u64),

    #[error("DivisionByZero: zero has no multiplicative inverse")]
    DivisionByZero,

    #[error(
        "NoSuchOrder: no element of order {n} exists, {n} does not divide p^2 - 1 = {group_order}"
    )]
    NoSuchOrder { n: u64, group_order: u64 },

    #[error("OrderMismatch: kernel {zeta} has multiplicative order {actual}, not {expected}")]
    OrderMismatch {
        zeta: String,
        expected: u64,
        actual: u64,
    },

    #[error("LengthMismatch: expected {expected} values, got {actual}")]
    LengthMismatch { expected: usize, actual: usize },

    #[error("NonInvertibleLength: p = {p} divides the blocklength N = {n}")]
    NonInvertibleLength { p: u64, n: u64 },

    #[error("NonRealInput: input component {index} = {value} is not real-valued")]
    NonRealInput { index: usize, value: String },

    #[error("UnvalidatedPlan: plan does not reproduce the transform matrix at ({row}, {col})")]
    UnvalidatedPlan { row: usize, col: usize },

    #[error("ImpurePlan: {0}")]
    ImpurePlan(String),

    #[error("UnknownPlan: no builtin plan named {0:?}")]
    UnknownPlan(String),

    #[error("MalformedPlan: {0}")]
    MalformedPlan(String),

    #[error("OverlappingPairs: column {0} is used by more than one pairing step")]
    OverlappingPairs(usize),

    #[error("InvalidPairing: {0}")]
    InvalidPairing(String),

    #[error("SearchSpaceTooLarge: exhaustive derivation is limited to N <= {limit}, got N = {n}")]
    SearchSpaceTooLarge { n: usize, limit: usize },

    #[error("ParseElement: {0}")]
    ParseElement(String),

    #[error("PlanSyntax: line {line}: {msg}")]
    PlanSyntax { line: usize, msg: String },
}
