//! Exact sines and cosines at rational multiples of π.
//!
//! Everything is expressed in quarter-turn units of a base `m`: the angle
//! `jπ/(2m)` lives in `ℚ(ζ_{4m})` because `e^{ijπ/(2m)} = ζ_{4m}^j` and
//! `i = ζ_{4m}^m`.

use num_integer::Integer;

use super::{CycloNumber, CycloReal};

/// Sparse form of `2·sin(jπ/(2m))` as `(exponent, coefficient)` terms in `ζ_{4m}`.
pub fn sin_frac_terms(j: i64, m: u64) -> [(i64, i64); 2] {
    let mi = m as i64;
    // (ζ^j - ζ^{-j}) / i = ζ^{j-m} - ζ^{-j-m}
    [(j - mi, 1), (-j - mi, -1)]
}

/// `sin(jπ/(2m))` in `ℚ(ζ_{4m})`.
pub fn sin_frac(j: i64, m: u64) -> CycloReal {
    assert!(m >= 1);
    CycloReal::new_unchecked(CycloNumber::from_terms(4 * m, &sin_frac_terms(j, m), 2))
}

/// `cos(jπ/(2m))` in `ℚ(ζ_{4m})`.
pub fn cos_frac(j: i64, m: u64) -> CycloReal {
    assert!(m >= 1);
    CycloReal::new_unchecked(CycloNumber::from_terms(4 * m, &[(j, 1), (-j, 1)], 2))
}

/// `1 / sin(jπ/(2m))`, or `None` when the sine vanishes.
///
/// Uses `1/(1 - w) = -(1/d) Σ_{t<d} t·w^t` for a root of unity `w ≠ 1`
/// of order `d`, so no linear solve is needed.
pub fn inv_sin_frac(j: i64, m: u64) -> Option<CycloReal> {
    let n = 4 * m as i64;
    let mi = m as i64;
    if j.rem_euclid(2 * mi) == 0 {
        return None;
    }
    // sin = (ζ^{j-m}/2)(1 - w) with w = ζ^{-2j}
    let w_exp = (-2 * j).rem_euclid(n);
    let d = n / w_exp.gcd(&n);
    let terms: Vec<(i64, i64)> = (1..d)
        .map(|t| (mi - j + t * w_exp, -2 * t))
        .collect();
    Some(CycloReal::new_unchecked(CycloNumber::from_terms(
        4 * m,
        &terms,
        d,
    )))
}

/// `sin(aπ/b)` in `ℚ(ζ_{4b})`.
pub fn sin_pi(a: i64, b: u64) -> CycloReal {
    sin_frac(2 * a, b)
}

/// `cos(aπ/b)` in `ℚ(ζ_{4b})`.
pub fn cos_pi(a: i64, b: u64) -> CycloReal {
    cos_frac(2 * a, b)
}
