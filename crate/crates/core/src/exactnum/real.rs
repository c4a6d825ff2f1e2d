use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;

use super::{CycloNumber, ExactError};

/// A self-conjugate (real) element of a cyclotomic field.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CycloReal(CycloNumber);

impl CycloReal {
    /// Wraps `x`, rejecting it if `conj(x) != x`.
    pub fn new(x: CycloNumber) -> Result<Self, ExactError> {
        if x.is_real() {
            Ok(CycloReal(x))
        } else {
            Err(ExactError::NotReal)
        }
    }

    /// Callers guarantee realness by construction (closed operations on reals,
    /// symmetric sums); checked in debug builds.
    pub(crate) fn new_unchecked(x: CycloNumber) -> Self {
        debug_assert!(x.is_real(), "value is not self-conjugate: {x}");
        CycloReal(x)
    }

    pub fn zero(order: u64) -> Self {
        CycloReal(CycloNumber::zero(order))
    }

    pub fn one(order: u64) -> Self {
        CycloReal(CycloNumber::one(order))
    }

    pub fn from_integer(order: u64, v: i64) -> Self {
        CycloReal(CycloNumber::from_integer(order, v))
    }

    pub fn from_rational(order: u64, v: &BigRational) -> Self {
        CycloReal(CycloNumber::from_rational(order, v))
    }

    pub fn as_cyclo(&self) -> &CycloNumber {
        &self.0
    }

    pub fn into_cyclo(self) -> CycloNumber {
        self.0
    }

    pub fn order(&self) -> u64 {
        self.0.order()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_one()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        self.0.as_rational()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_complex().re
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.0.try_add(&rhs.0).map(CycloReal)
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.0.try_sub(&rhs.0).map(CycloReal)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.0.try_mul(&rhs.0).map(CycloReal)
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.0.try_div(&rhs.0).map(CycloReal)
    }

    pub fn inverse(&self) -> Result<Self, ExactError> {
        self.0.inverse().map(CycloReal)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        CycloReal(self.0.scale(factor))
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        CycloReal(self.0.scale_int(factor))
    }

    pub fn embed(&self, target: u64) -> Result<Self, ExactError> {
        self.0.embed(target).map(CycloReal)
    }

    /// Product with a sparse factor the caller knows to be real.
    pub(crate) fn mul_real_terms(&self, terms: &[(i64, i64)], den: i64) -> Self {
        Self::new_unchecked(self.0.mul_terms(terms, den))
    }

    /// Sparse real value `Σ c·ζ^e / den`.
    pub(crate) fn from_real_terms(order: u64, terms: &[(i64, i64)], den: i64) -> Self {
        Self::new_unchecked(CycloNumber::from_terms(order, terms, den))
    }
}

impl fmt::Debug for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloReal(N={}, {} ≈ {})", self.order(), self.0, self.to_f64())
    }
}

impl fmt::Display for CycloReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl From<CycloReal> for CycloNumber {
    fn from(x: CycloReal) -> Self {
        x.0
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident) => {
        impl $trait<&CycloReal> for &CycloReal {
            type Output = CycloReal;
            fn $method(self, rhs: &CycloReal) -> CycloReal {
                CycloReal((&self.0).$method(&rhs.0))
            }
        }
        impl $trait<CycloReal> for CycloReal {
            type Output = CycloReal;
            fn $method(self, rhs: CycloReal) -> CycloReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloReal> for CycloReal {
            type Output = CycloReal;
            fn $method(self, rhs: &CycloReal) -> CycloReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloReal> for &CycloReal {
            type Output = CycloReal;
            fn $method(self, rhs: CycloReal) -> CycloReal {
                self.$method(&rhs)
            }
        }
    };
}

real_binop!(Add, add);
real_binop!(Sub, sub);
real_binop!(Mul, mul);

impl Neg for &CycloReal {
    type Output = CycloReal;
    fn neg(self) -> CycloReal {
        CycloReal(-&self.0)
    }
}

impl Neg for CycloReal {
    type Output = CycloReal;
    fn neg(self) -> CycloReal {
        -&self
    }
}
