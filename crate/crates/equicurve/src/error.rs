//! Error type shared by all modules.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("size bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("zero polynomial not allowed here")]
    ZeroPolynomial,
    #[error("no simple residue root; lifting is obstructed")]
    NoSimpleRoot,
    #[error("curve model is not smooth: {0}")]
    NotSmooth(String),
    #[error("genus {0} is below the supported minimum of 2")]
    GenusTooSmall(i64),
    #[error("wrong characteristic for this model form")]
    WrongCharacteristic,
    #[error("data requires a field extension of degree {0}")]
    NeedsExtension(u32),
    #[error("the zero function has no valuation")]
    ZeroFunction,
    #[error("series precision exhausted (cap {0})")]
    PrecisionExhausted(usize),
    #[error("invalid automorphism: {0}")]
    InvalidAutomorphism(String),
    #[error("generator set is not a group: {0}")]
    NotAGroup(String),
    #[error("group does not act faithfully on the curve")]
    NotFaithful,
    #[error("Hurwitz bookkeeping is inconsistent: {0}")]
    HurwitzInconsistent(String),
    #[error("invalid ramification filtration: {0}")]
    BadFiltration(String),
    #[error("concrete quotient data requires a rational quotient (genus 0)")]
    QuotientNotRational,
    #[error("divisor is not invariant under the group")]
    NotInvariant,
    #[error("divisor degree {deg} violates the hypothesis (needs > {bound})")]
    DegreeTooSmall { deg: i64, bound: i64 },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("evaluation set overlaps the divisor support at {0}")]
    SupportOverlap(String),
    #[error("evaluation set is not stable under the group: {0}")]
    NotStable(String),
    #[error("code has no nonzero codewords")]
    NoCodewords,
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
