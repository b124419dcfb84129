// SPDX-License-Identifier: Apache-2.0

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("-{0} is not a fundamental discriminant of an imaginary quadratic field")]
    NotFundamental(u64),
    #[error("integer overflow in exact arithmetic")]
    Overflow,
    #[error("operands belong to different fields (delta {0} vs {1})")]
    FieldMismatch(u64, u64),
    #[error("({0}, {1}) violates the parity condition for an algebraic integer")]
    NotIntegral(i128, i128),
    #[error("element is not coprime to the modulus {0}")]
    NotCoprime(i128),
    #[error("form ({a}, {b}, {c}) is not positive definite")]
    InvalidDiscriminant { a: i64, b: i64, c: i64 },
    #[error("forms have different discriminants")]
    DiscriminantMismatch,
    #[error("{0} is inert, no prime ideal of norm {0}")]
    InertPrime(u64),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("ideal is not principal")]
    NotPrincipal,
    #[error("class group exponent {exponent} does not divide infinity type {l}")]
    ExponentMismatch { exponent: u64, l: u32 },
    #[error("expected {expected} signs (one per even invariant factor), got {got}")]
    SignVectorLength { expected: usize, got: usize },
    #[error("no root in O_K for generator {0}")]
    RootNotFound(usize),
    #[error("inexact division in O_K")]
    ExactDivisionFailure,
    #[error("could not find a generator ideal coprime to the requested support")]
    GeneratorSelection,
    #[error("no sign vector reproduces the target coefficients")]
    NoMatch,
    #[error("bound violated at p = {prime}: {detail}")]
    BoundViolation { prime: u64, detail: String },
    #[error("{0} is not a fundamental discriminant for a quadratic character")]
    BadTwist(i64),
    #[error("table parse error on line {line}: {msg}")]
    TableParse { line: usize, msg: String },
}
