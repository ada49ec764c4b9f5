//! Trace codes over the ring `F_p + uF_p` with `u^2 = u`, and their `p`-ary
//! Gray images.
//!
//! The library builds two families of codes by evaluating the ring trace over
//! multiplicative defining sets inside the degree-`m` extension ring
//! `F_{p^m} + uF_{p^m}`:
//!
//! * variant `L`: the index-2 subgroup `uQ + (1-u)F*` of the units, where `Q`
//!   is the set of nonzero squares of `F_{p^m}`;
//! * variant `Lprime`: the full unit group.
//!
//! Gray mapping `a + ub -> (-b, 2a + b)` turns these into `p`-ary linear codes
//! of dimension `2m`. Depending on the parameters the image has exactly two or
//! exactly five nonzero weights, with closed-form distributions driven by
//! quadratic Gauss sums. The crate computes those closed forms ([`theory`]),
//! enumerates the codes exhaustively or class by class ([`codes`]), and
//! confronts the two ([`verify`]), together with Griesmer optimality, dual Lee
//! distance and minimal-codeword / secret-sharing structure.

pub mod charsums;
pub mod codes;
pub mod field;
pub mod gray;
pub mod linalg;
pub mod ring;
pub mod theory;
pub mod verify;

pub use codes::{ClassLabel, DefiningSet, Mode, TraceCode, Variant, WeightDistribution};
pub use field::{ExtField, FFElem};
pub use ring::RingElem;
pub use theory::{BoundReport, Regime, RegimeTag};
pub use verify::VerificationReport;

/// Errors reported by every layer of the crate.
#[derive(Debug, Clone, thiserror::Error)]
pub enum Error {
    #[error("p = {0} must be an odd prime")]
    NotOddPrime(u64),
    #[error("extension degree m must be at least 1")]
    ZeroDegree,
    #[error("field order {q} exceeds the table limit {limit}")]
    FieldTooLarge { q: u128, limit: u64 },
    #[error("modulus must be a monic polynomial of degree {expected} with coefficients below p")]
    BadModulus { expected: u32 },
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("inverse of zero")]
    ZeroInverse,
    #[error("zero is neither a square nor a non-square")]
    ZeroSquareClass,
    #[error("operation is defined on the base ring only (m = 1), got m = {0}")]
    BaseRingRequired(u32),
    #[error("element is not a unit")]
    NotAUnit,
    #[error("enumeration needs {needed} coordinate evaluations, over the budget of {budget}")]
    BudgetExceeded { needed: u128, budget: u64 },
    #[error("no closed-form weight distribution for variant {variant} with p = {p}, m = {m}")]
    UnsupportedRegime {
        variant: codes::Variant,
        p: u64,
        m: u32,
    },
    #[error("class {label} produced non-constant weights {weights:?}")]
    ClassNotConstant {
        label: codes::ClassLabel,
        weights: Vec<u64>,
    },
    #[error("class label {label} is not valid in regime {regime}")]
    LabelRegimeMismatch {
        label: codes::ClassLabel,
        regime: theory::RegimeTag,
    },
    #[error("minimality brute force is limited to {limit} codewords, instance has {count}")]
    MinimalityBudget { count: u128, limit: u64 },
    #[error("secret sharing summary requires {0}")]
    PreconditionNotEstablished(&'static str),
    #[error("generator matrix has a zero column at index {0}")]
    ZeroColumn(usize),
    #[error("chosen positions do not span the secret column")]
    PositionsDoNotSpan,
    #[error("dual-distance search exhausted without a word of Lee weight at most 2")]
    DualSearchExhausted,
    #[error("identity requires p = 3 (mod 4), got p = {0}")]
    RequiresThreeModFour(u64),
}
