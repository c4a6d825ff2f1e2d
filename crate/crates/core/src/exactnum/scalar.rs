//! Integer kernels shared by the machine-word and arbitrary-precision paths.
//!
//! A cyclotomic number is stored as an integer numerator vector over one
//! positive common denominator. Every kernel here is written once against
//! [`Scalar`]; the `i128` instance reports overflow with `None`, and callers
//! then repeat the computation with `BigInt`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::field::FieldCtx;

pub(crate) trait Scalar: Clone + PartialEq {
    fn zero() -> Self;
    fn from_i64(v: i64) -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn add(&self, rhs: &Self) -> Option<Self>;
    fn sub(&self, rhs: &Self) -> Option<Self>;
    fn mul(&self, rhs: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Non-negative gcd.
    fn gcd(&self, rhs: &Self) -> Self;
    fn div_exact(&self, rhs: &Self) -> Self;
    fn is_one(&self) -> bool;
}

impl Scalar for i128 {
    fn zero() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        self.checked_add(*rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        self.checked_sub(*rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        self.checked_mul(*rhs)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn gcd(&self, rhs: &Self) -> Self {
        // i128::MIN never survives the checked kernels, so abs is safe.
        Integer::gcd(self, rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_one(&self) -> bool {
        *self == 1
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn add(&self, rhs: &Self) -> Option<Self> {
        Some(self + rhs)
    }
    fn sub(&self, rhs: &Self) -> Option<Self> {
        Some(self - rhs)
    }
    fn mul(&self, rhs: &Self) -> Option<Self> {
        Some(self * rhs)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn gcd(&self, rhs: &Self) -> Self {
        Integer::gcd(self, rhs)
    }
    fn div_exact(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn is_one(&self) -> bool {
        *self == BigInt::from(1)
    }
}

/// Divide out the content so that `gcd(num..., den) = 1` and `den > 0`.
/// The zero vector gets denominator 1.
pub(crate) fn normalize<T: Scalar>(mut num: Vec<T>, mut den: T) -> Option<(Vec<T>, T)> {
    debug_assert!(!den.is_zero());
    if num.iter().all(Scalar::is_zero) {
        return Some((num, T::from_i64(1)));
    }
    if den.is_negative() {
        den = den.neg()?;
        for c in num.iter_mut() {
            *c = c.neg()?;
        }
    }
    let mut g = den.clone();
    for c in &num {
        if g.is_one() {
            break;
        }
        if !c.is_zero() {
            g = g.gcd(c);
        }
    }
    if !g.is_one() {
        for c in num.iter_mut() {
            *c = c.div_exact(&g);
        }
        den = den.div_exact(&g);
    }
    Some((num, den))
}

/// `a/ad + b/bd` coefficientwise (unnormalised).
pub(crate) fn add<T: Scalar>(a: &[T], ad: &T, b: &[T], bd: &T) -> Option<(Vec<T>, T)> {
    if ad == bd {
        let num = a
            .iter()
            .zip(b)
            .map(|(x, y)| x.add(y))
            .collect::<Option<Vec<_>>>()?;
        return Some((num, ad.clone()));
    }
    let num = a
        .iter()
        .zip(b)
        .map(|(x, y)| x.mul(bd)?.add(&y.mul(ad)?))
        .collect::<Option<Vec<_>>>()?;
    Some((num, ad.mul(bd)?))
}

/// Reduce a polynomial (ascending coefficients, any length) modulo `Φ_N`.
pub(crate) fn reduce<T: Scalar>(mut poly: Vec<T>, field: &FieldCtx) -> Option<Vec<T>> {
    let phi = field.phi();
    if poly.len() < phi {
        poly.resize(phi, T::zero());
        return Some(poly);
    }
    for i in (phi..poly.len()).rev() {
        let top = std::mem::replace(&mut poly[i], T::zero());
        if top.is_zero() {
            continue;
        }
        let base = i - phi;
        for &(j, c) in field.modulus_tail() {
            let t = top.mul(&T::from_i64(c))?;
            poly[base + j] = poly[base + j].sub(&t)?;
        }
    }
    poly.truncate(phi);
    Some(poly)
}

/// Product of two reduced numerators, reduced again.
pub(crate) fn mul<T: Scalar>(a: &[T], b: &[T], field: &FieldCtx) -> Option<Vec<T>> {
    let nz_b: Vec<(usize, &T)> = b.iter().enumerate().filter(|(_, y)| !y.is_zero()).collect();
    let mut prod = vec![T::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for &(j, y) in &nz_b {
            prod[i + j] = prod[i + j].add(&x.mul(y)?)?;
        }
    }
    reduce(prod, field)
}

/// `Σ coeff · ζ^exp` reduced, using the field's power table.
pub(crate) fn from_terms<T: Scalar>(terms: &[(i64, T)], field: &FieldCtx) -> Option<Vec<T>> {
    let mut acc = vec![T::zero(); field.phi()];
    for (e, c) in terms {
        if c.is_zero() {
            continue;
        }
        for &(idx, r) in field.power(*e) {
            acc[idx] = acc[idx].add(&c.mul(&T::from_i64(r))?)?;
        }
    }
    Some(acc)
}

/// `a · Σ c·ζ^e` for a short list of integer terms.
pub(crate) fn mul_terms<T: Scalar>(a: &[T], terms: &[(i64, i64)], field: &FieldCtx) -> Option<Vec<T>> {
    let mut acc = vec![T::zero(); field.phi()];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for &(e, c) in terms {
            let xc = x.mul(&T::from_i64(c))?;
            for &(idx, r) in field.power(i as i64 + e) {
                acc[idx] = acc[idx].add(&xc.mul(&T::from_i64(r))?)?;
            }
        }
    }
    Some(acc)
}

/// Multiply by the monomial `ζ^k`.
pub(crate) fn shift<T: Scalar>(a: &[T], k: i64, field: &FieldCtx) -> Option<Vec<T>> {
    let terms: Vec<(i64, T)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (i as i64 + k, c.clone()))
        .collect();
    from_terms(&terms, field)
}
