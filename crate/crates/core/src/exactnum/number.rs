use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::approx::{Dd, DdComplex};
use super::field::{field, FieldCtx};
use super::scalar;
use super::ExactError;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    /// Every numerator and the denominator fit in `i64`.
    Small { num: Vec<i64>, den: i64 },
    Big { num: Vec<BigInt>, den: BigInt },
}

/// An exact element of the cyclotomic field `ℚ(ζ_N)`.
///
/// Stored in the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced modulo `Φ_N`,
/// as integer numerators over a positive common denominator in lowest
/// terms. The representation is canonical, so equality and the zero test
/// are structural.
#[derive(Clone)]
pub struct CycloNumber {
    field: Arc<FieldCtx>,
    repr: Repr,
}

impl PartialEq for CycloNumber {
    fn eq(&self, other: &Self) -> bool {
        self.order() == other.order() && self.repr == other.repr
    }
}

impl Eq for CycloNumber {}

impl Hash for CycloNumber {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order().hash(state);
        self.repr.hash(state);
    }
}

fn narrow_i128(num: Vec<i128>, den: i128) -> Repr {
    let fits = |v: &i128| i64::try_from(*v).is_ok();
    if fits(&den) && num.iter().all(fits) {
        Repr::Small {
            num: num.into_iter().map(|v| v as i64).collect(),
            den: den as i64,
        }
    } else {
        Repr::Big {
            num: num.into_iter().map(BigInt::from).collect(),
            den: BigInt::from(den),
        }
    }
}

fn narrow_big(num: Vec<BigInt>, den: BigInt) -> Repr {
    let small: Option<Vec<i64>> = num.iter().map(ToPrimitive::to_i64).collect();
    match (small, den.to_i64()) {
        (Some(num), Some(den)) => Repr::Small { num, den },
        _ => Repr::Big { num, den },
    }
}

impl Repr {
    fn to_i128(&self) -> Option<(Vec<i128>, i128)> {
        match self {
            Repr::Small { num, den } => {
                Some((num.iter().map(|&v| v as i128).collect(), *den as i128))
            }
            Repr::Big { .. } => None,
        }
    }

    fn to_big(&self) -> (Vec<BigInt>, BigInt) {
        match self {
            Repr::Small { num, den } => (
                num.iter().map(|&v| BigInt::from(v)).collect(),
                BigInt::from(*den),
            ),
            Repr::Big { num, den } => (num.clone(), den.clone()),
        }
    }
}

/// Run a kernel on the `i128` path when possible, else on `BigInt`, and
/// normalise the result.
fn run<F, G>(small: Option<F>, big: G) -> Repr
where
    F: FnOnce() -> Option<(Vec<i128>, i128)>,
    G: FnOnce() -> (Vec<BigInt>, BigInt),
{
    if let Some(f) = small {
        if let Some((num, den)) = f().and_then(|(n, d)| scalar::normalize(n, d)) {
            return narrow_i128(num, den);
        }
    }
    let (num, den) = big();
    let (num, den) = scalar::normalize(num, den).expect("bigint kernels never overflow");
    narrow_big(num, den)
}

impl CycloNumber {
    fn from_repr(field: Arc<FieldCtx>, repr: Repr) -> Self {
        CycloNumber { field, repr }
    }

    pub fn zero(order: u64) -> Self {
        let f = field(order);
        let phi = f.phi();
        Self::from_repr(
            f,
            Repr::Small {
                num: vec![0; phi],
                den: 1,
            },
        )
    }

    pub fn one(order: u64) -> Self {
        Self::from_integer(order, 1)
    }

    pub fn from_integer(order: u64, value: i64) -> Self {
        let f = field(order);
        let mut num = vec![0i64; f.phi()];
        num[0] = value;
        Self::from_repr(f, Repr::Small { num, den: 1 })
    }

    pub fn from_rational(order: u64, value: &BigRational) -> Self {
        let f = field(order);
        let mut num = vec![<BigInt as Zero>::zero(); f.phi()];
        num[0] = value.numer().clone();
        let repr = narrow_big(num, value.denom().clone());
        Self::from_repr(f, repr)
    }

    /// `ζ_N^k`, reduced modulo `Φ_N`.
    pub fn root_of_unity(order: u64, k: i64) -> Self {
        Self::from_terms(order, &[(k, 1)], 1)
    }

    /// `(Σ c·ζ_N^e) / den` for integer terms `(e, c)`.
    pub fn from_terms(order: u64, terms: &[(i64, i64)], den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let f = field(order);
        let repr = run(
            Some(|| {
                let t: Vec<(i64, i128)> = terms.iter().map(|&(e, c)| (e, c as i128)).collect();
                Some((scalar::from_terms(&t, &f)?, den as i128))
            }),
            || {
                let t: Vec<(i64, BigInt)> =
                    terms.iter().map(|&(e, c)| (e, BigInt::from(c))).collect();
                (
                    scalar::from_terms(&t, &f).expect("bigint"),
                    BigInt::from(den),
                )
            },
        );
        Self::from_repr(f, repr)
    }

    /// Build from power-basis coefficients; length must be `φ(N)`.
    pub fn from_coeffs(order: u64, coeffs: &[BigRational]) -> Result<Self, ExactError> {
        let f = field(order);
        if coeffs.len() != f.phi() {
            return Err(ExactError::CoefficientCount {
                expected: f.phi(),
                got: coeffs.len(),
            });
        }
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let (num, den) = scalar::normalize(num, den).expect("bigint");
        Ok(Self::from_repr(f, narrow_big(num, den)))
    }

    pub fn order(&self) -> u64 {
        self.field.order()
    }

    /// `φ(N)`, the number of stored coefficients.
    pub fn degree(&self) -> usize {
        self.field.phi()
    }

    /// Coefficient of `ζ^i` in the canonical basis.
    pub fn coeff(&self, i: usize) -> BigRational {
        match &self.repr {
            Repr::Small { num, den } => {
                BigRational::new(BigInt::from(num[i]), BigInt::from(*den))
            }
            Repr::Big { num, den } => BigRational::new(num[i].clone(), den.clone()),
        }
    }

    pub fn coeffs(&self) -> Vec<BigRational> {
        (0..self.degree()).map(|i| self.coeff(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Small { num, .. } => num.iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num.iter().all(Zero::is_zero),
        }
    }

    pub fn is_one(&self) -> bool {
        *self == Self::one(self.order())
    }

    /// The rational value if every non-constant coefficient vanishes.
    pub fn as_rational(&self) -> Option<BigRational> {
        let rational = match &self.repr {
            Repr::Small { num, .. } => num[1..].iter().all(|&c| c == 0),
            Repr::Big { num, .. } => num[1..].iter().all(Zero::is_zero),
        };
        rational.then(|| self.coeff(0))
    }

    /// Floating-point value with `ζ_N -> exp(2πi/N)`.
    ///
    /// Evaluated in double-double, so cancellation among large
    /// coefficients costs ~1e-30 relative to `Σ|c_k|/den`, not `f64` epsilon.
    pub fn to_complex(&self) -> Complex64 {
        let basis = self.field.basis_values();
        let mut acc = DdComplex::ZERO;
        let den = match &self.repr {
            Repr::Small { num, den } => {
                for (c, z) in num.iter().zip(basis).filter(|(c, _)| **c != 0) {
                    acc = acc.add_scaled(Dd::from_i64(*c), *z);
                }
                Dd::from_i64(*den)
            }
            Repr::Big { num, den } => {
                // scale down jointly so huge numerators and denominators
                // do not overflow to inf
                let bits = num
                    .iter()
                    .chain(std::iter::once(den))
                    .map(|c| c.bits())
                    .max()
                    .unwrap_or(0);
                let shift = bits.saturating_sub(900);
                for (c, z) in num.iter().zip(basis).filter(|(c, _)| !Zero::is_zero(*c)) {
                    acc = acc.add_scaled(Dd::from_bigint(&(c >> shift)), *z);
                }
                Dd::from_bigint(&(den >> shift))
            }
        };
        acc.div_real(den).to_complex()
    }

    fn check_order(&self, rhs: &Self) -> Result<(), ExactError> {
        if self.order() != rhs.order() {
            return Err(ExactError::OrderMismatch {
                left: self.order(),
                right: rhs.order(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_order(rhs)?;
        let repr = run(
            match (self.repr.to_i128(), rhs.repr.to_i128()) {
                (Some((a, ad)), Some((b, bd))) => Some(move || scalar::add(&a, &ad, &b, &bd)),
                _ => None,
            },
            || {
                let (a, ad) = self.repr.to_big();
                let (b, bd) = rhs.repr.to_big();
                scalar::add(&a, &ad, &b, &bd).expect("bigint")
            },
        );
        Ok(Self::from_repr(Arc::clone(&self.field), repr))
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.try_add(&-rhs)
    }

    pub fn try_mul(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_order(rhs)?;
        let f = &self.field;
        let repr = run(
            match (self.repr.to_i128(), rhs.repr.to_i128()) {
                (Some((a, ad)), Some((b, bd))) => {
                    Some(move || Some((scalar::mul(&a, &b, f)?, ad.checked_mul(bd)?)))
                }
                _ => None,
            },
            || {
                let (a, ad) = self.repr.to_big();
                let (b, bd) = rhs.repr.to_big();
                (scalar::mul(&a, &b, f).expect("bigint"), ad * bd)
            },
        );
        Ok(Self::from_repr(Arc::clone(&self.field), repr))
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self, ExactError> {
        self.check_order(rhs)?;
        self.try_mul(&rhs.inverse()?)
    }

    /// Multiply by `ζ_N^k`.
    pub fn mul_root(&self, k: i64) -> Self {
        let f = &self.field;
        let repr = run(
            self.repr
                .to_i128()
                .map(|(a, ad)| move || Some((scalar::shift(&a, k, f)?, ad))),
            || {
                let (a, ad) = self.repr.to_big();
                (scalar::shift(&a, k, f).expect("bigint"), ad)
            },
        );
        Self::from_repr(Arc::clone(&self.field), repr)
    }

    /// `self · (Σ c·ζ^e) / den` for a short list of integer terms; cheaper
    /// than a dense product when the second factor is sparse.
    pub fn mul_terms(&self, terms: &[(i64, i64)], den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let f = &self.field;
        let repr = run(
            self.repr.to_i128().map(|(a, ad)| {
                move || Some((scalar::mul_terms(&a, terms, f)?, ad.checked_mul(den as i128)?))
            }),
            || {
                let (a, ad) = self.repr.to_big();
                (
                    scalar::mul_terms(&a, terms, f).expect("bigint"),
                    ad * BigInt::from(den),
                )
            },
        );
        Self::from_repr(Arc::clone(&self.field), repr)
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        self.try_mul(&Self::from_rational(self.order(), factor))
            .expect("same order")
    }

    pub fn scale_int(&self, factor: i64) -> Self {
        self.try_mul(&Self::from_integer(self.order(), factor))
            .expect("same order")
    }

    /// Complex conjugate, `ζ ↦ ζ^{-1}`.
    pub fn conjugate(&self) -> Self {
        let f = &self.field;
        let conj_terms = |num: &[i128]| -> Vec<(i64, i128)> {
            num.iter()
                .enumerate()
                .filter(|(_, c)| **c != 0)
                .map(|(i, c)| (-(i as i64), *c))
                .collect()
        };
        let repr = run(
            self.repr.to_i128().map(|(a, ad)| {
                move || Some((scalar::from_terms(&conj_terms(&a), f)?, ad))
            }),
            || {
                let (a, ad) = self.repr.to_big();
                let terms: Vec<(i64, BigInt)> = a
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !Zero::is_zero(*c))
                    .map(|(i, c)| (-(i as i64), c.clone()))
                    .collect();
                (scalar::from_terms(&terms, f).expect("bigint"), ad)
            },
        );
        Self::from_repr(Arc::clone(&self.field), repr)
    }

    pub fn is_real(&self) -> bool {
        self.conjugate() == *self
    }

    /// The same complex number in `ℚ(ζ_M)`, where `N | M`, via `ζ_N = ζ_M^{M/N}`.
    pub fn embed(&self, target: u64) -> Result<Self, ExactError> {
        let n = self.order();
        if target == 0 || !target.is_multiple_of(n) {
            return Err(ExactError::NotDivisible {
                from: n,
                to: target,
            });
        }
        if target == n {
            return Ok(self.clone());
        }
        let step = (target / n) as i64;
        let f = field(target);
        let repr = run(
            self.repr.to_i128().map(|(a, ad)| {
                let f = &f;
                move || {
                    let terms: Vec<(i64, i128)> = a
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| **c != 0)
                        .map(|(i, c)| (i as i64 * step, *c))
                        .collect();
                    Some((scalar::from_terms(&terms, f)?, ad))
                }
            }),
            || {
                let (a, ad) = self.repr.to_big();
                let terms: Vec<(i64, BigInt)> = a
                    .into_iter()
                    .enumerate()
                    .filter(|(_, c)| !Zero::is_zero(c))
                    .map(|(i, c)| (i as i64 * step, c))
                    .collect();
                (scalar::from_terms(&terms, &f).expect("bigint"), ad)
            },
        );
        Ok(Self::from_repr(f, repr))
    }

    /// Multiplicative inverse by solving `x · y = 1` as a linear system over ℚ.
    pub fn inverse(&self) -> Result<Self, ExactError> {
        if self.is_zero() {
            return Err(ExactError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(self.order(), &r.recip()));
        }
        let phi = self.degree();
        let f = &self.field;
        let (a, ad) = self.repr.to_big();
        // column j of the multiplication matrix is a·ζ^j
        let mut cols: Vec<Vec<BigInt>> = Vec::with_capacity(phi);
        let mut col = a;
        for j in 0..phi {
            if j > 0 {
                col = scalar::shift(&col, 1, f).expect("bigint");
            }
            cols.push(col.clone());
        }
        // augmented rows: (a/ad)·y = e0  <=>  A·y = ad·e0
        let mut rows: Vec<Vec<BigRational>> = (0..phi)
            .map(|i| {
                let mut r: Vec<BigRational> = (0..phi)
                    .map(|j| BigRational::from_integer(cols[j][i].clone()))
                    .collect();
                r.push(if i == 0 {
                    BigRational::from_integer(ad.clone())
                } else {
                    BigRational::zero()
                });
                r
            })
            .collect();
        for c in 0..phi {
            let pivot = (c..phi)
                .find(|&r| !rows[r][c].is_zero())
                .ok_or(ExactError::DivisionByZero)?;
            rows.swap(c, pivot);
            let inv = rows[c][c].recip();
            for v in rows[c].iter_mut().skip(c) {
                *v = &*v * &inv;
            }
            // rows[r] and rows[c] are both borrowed inside, so index by position
            #[allow(clippy::needless_range_loop)]
            for r in 0..phi {
                if r != c && !rows[r][c].is_zero() {
                    let factor = rows[r][c].clone();
                    for k in c..=phi {
                        let t = &rows[c][k] * &factor;
                        rows[r][k] -= t;
                    }
                }
            }
        }
        let sol: Vec<BigRational> = rows.into_iter().map(|r| r[phi].clone()).collect();
        Self::from_coeffs(self.order(), &sol)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }
}

impl fmt::Debug for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNumber(N={}, {})", self.order(), self)
    }
}

/// Renders `Σ c_k·z^k` with `z = ζ_N`, e.g. `1/2*z^3 - z + 1`; rationals print bare.
impl fmt::Display for CycloNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut first = true;
        for k in (0..self.degree()).rev() {
            let c = self.coeff(k);
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let mono = match k {
                0 => String::new(),
                1 => "z".to_string(),
                _ => format!("z^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{mag}*{mono}")?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $try:ident) => {
        impl $trait<&CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            /// Panics if the orders differ; use the `try_` form to recover.
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                self.$try(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }
        impl $trait<CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&CycloNumber> for CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: &CycloNumber) -> CycloNumber {
                (&self).$method(rhs)
            }
        }
        impl $trait<CycloNumber> for &CycloNumber {
            type Output = CycloNumber;
            fn $method(self, rhs: CycloNumber) -> CycloNumber {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        let repr = match &self.repr {
            Repr::Small { num, den } if num.iter().all(|&c| c != i64::MIN) => Repr::Small {
                num: num.iter().map(|&c| -c).collect(),
                den: *den,
            },
            other => {
                let (num, den) = other.to_big();
                narrow_big(num.into_iter().map(|c| -c).collect(), den)
            }
        };
        CycloNumber::from_repr(Arc::clone(&self.field), repr)
    }
}

impl Neg for CycloNumber {
    type Output = CycloNumber;
    fn neg(self) -> CycloNumber {
        -&self
    }
}
