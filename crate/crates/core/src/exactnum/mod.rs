//! Exact arithmetic in cyclotomic fields `ℚ(ζ_N)`.
//!
//! Every θ-dependent quantity in this crate (`q`, `p`, sheet coefficients)
//! is a polynomial in roots of unity with rational coefficients, so it is
//! held exactly as a [`CycloNumber`] and compared to zero coefficientwise.

mod approx;
mod cyclotomic;
mod field;
mod number;
mod real;
mod scalar;
mod serde_impl;
pub mod trig;

use thiserror::Error;

pub use cyclotomic::{cyclotomic_polynomial, divisors, euler_phi, factorize};
pub use field::{field, FieldCtx};
pub use number::CycloNumber;
pub use real::CycloReal;
pub use trig::{cos_pi, sin_pi};
pub use serde_impl::{rational_string, round_sig12};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("cyclotomic orders differ: {left} vs {right}; embed into a common order first")]
    OrderMismatch { left: u64, right: u64 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("order {from} does not divide target order {to}")]
    NotDivisible { from: u64, to: u64 },
    #[error("value is not real (not equal to its complex conjugate)")]
    NotReal,
    #[error("expected {expected} coefficients, got {got}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("malformed rational coefficient {0:?}")]
    BadCoefficient(String),
}

/// Embed two numbers into `ℚ(ζ_lcm)`.
pub fn common_order(a: &CycloNumber, b: &CycloNumber) -> (CycloNumber, CycloNumber) {
    let l = num_integer::lcm(a.order(), b.order());
    (
        a.embed(l).expect("lcm is a multiple"),
        b.embed(l).expect("lcm is a multiple"),
    )
}
