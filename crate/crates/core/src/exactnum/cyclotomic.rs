//! Cyclotomic polynomials and Euler's totient.
//!
//! `Φ_N` is built from the Möbius product `Φ_N(z) = ∏_{d | N} (z^d - 1)^{μ(N/d)}`,
//! which only ever multiplies or exactly divides by binomials.

/// Prime factorisation of `n` as `(prime, exponent)` pairs, ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Euler's totient, which is also `deg Φ_N`.
pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1, "euler_phi is defined for n >= 1");
    factorize(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

/// Divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn mobius(n: u64) -> i32 {
    let f = factorize(n);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Coefficients of `Φ_N` in ascending degree order (length `φ(N) + 1`, monic).
///
/// Panics if `n == 0` or a coefficient leaves the `i64` range, which does not
/// happen for any order this crate works with.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1, "cyclotomic polynomial needs N >= 1");
    let deg = euler_phi(n) as usize;
    let divs = divisors(n);

    // Numerator: ∏ (z^d - 1) over μ(N/d) = 1; denominator likewise for μ = -1.
    // Work with (1 - z^d) so the constant term is 1 and truncated power series
    // division is exact; the sign is fixed at the end.
    let len = n as usize + 1;
    let mut poly = vec![0i64; len];
    poly[0] = 1;
    let mut sign_flips = 0;
    for &d in &divs {
        let d_us = d as usize;
        match mobius(n / d) {
            1 => {
                // multiply by (1 - z^d)
                for i in (d_us..len).rev() {
                    poly[i] = poly[i]
                        .checked_sub(poly[i - d_us])
                        .expect("cyclotomic coefficient overflow");
                }
                sign_flips += 1;
            }
            -1 => {
                // divide by (1 - z^d) as a power series: multiply by 1 + z^d + z^2d + ...
                for i in d_us..len {
                    poly[i] = poly[i]
                        .checked_add(poly[i - d_us])
                        .expect("cyclotomic coefficient overflow");
                }
                sign_flips += 1;
            }
            _ => {}
        }
    }
    poly.truncate(deg + 1);
    // ∏(z^d - 1)^{±1} differs from ∏(1 - z^d)^{±1} by (-1)^{#factors}.
    if sign_flips % 2 == 1 {
        for c in poly.iter_mut() {
            *c = -*c;
        }
    }
    debug_assert_eq!(poly[deg], 1);
    poly
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Multiply integer polynomials (ascending coefficients).
    fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        out
    }

    #[test]
    fn small_orders() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // first order with a coefficient of magnitude 2
        let p105 = cyclotomic_polynomial(105);
        assert_eq!(p105.len(), 49);
        assert!(p105.contains(&-2));
    }

    #[test]
    fn product_over_divisors_is_z_n_minus_1() {
        for n in 1..=120u64 {
            let prod = divisors(n)
                .into_iter()
                .map(cyclotomic_polynomial)
                .fold(vec![1i64], |acc, p| poly_mul(&acc, &p));
            let mut expected = vec![0i64; n as usize + 1];
            expected[0] = -1;
            expected[n as usize] = 1;
            assert_eq!(prod, expected, "N = {n}");
        }
    }

    /// Totient by direct gcd counting, independent of the factorisation route.
    fn phi_by_counting(n: u64) -> u64 {
        (1..=n).filter(|&k| num_integer::gcd(k, n) == 1).count() as u64
    }

    #[test]
    fn degree_is_totient_up_to_1000() {
        for n in 1..=1000u64 {
            let phi = phi_by_counting(n);
            assert_eq!(euler_phi(n), phi);
            assert_eq!(cyclotomic_polynomial(n).len() as u64, phi + 1, "N = {n}");
        }
    }
}
