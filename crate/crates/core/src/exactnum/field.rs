//! Per-order data for `ℚ(ζ_N)`: the modulus `Φ_N` and reduced powers of `ζ_N`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::approx::{root_of_unity_dd, DdComplex};

use super::cyclotomic::cyclotomic_polynomial;

/// Shared, immutable description of the field `ℚ(ζ_N)`.
#[derive(Debug)]
pub struct FieldCtx {
    order: u64,
    phi: usize,
    /// Nonzero coefficients of `Φ_N` below the leading term, as `(degree, coeff)`.
    modulus_tail: Vec<(usize, i64)>,
    /// `powers[k]` = sparse reduction of `ζ_N^k` modulo `Φ_N`, for `0 <= k < N`.
    powers: OnceLock<Vec<Vec<(usize, i64)>>>,
    /// `exp(2πik/N)` in double-double for `0 <= k < φ(N)`.
    basis_values: OnceLock<Vec<DdComplex>>,
}

impl FieldCtx {
    fn new(order: u64) -> Self {
        let modulus = cyclotomic_polynomial(order);
        let phi = modulus.len() - 1;
        let modulus_tail = modulus[..phi]
            .iter()
            .enumerate()
            .filter(|(_, c)| **c != 0)
            .map(|(i, c)| (i, *c))
            .collect();
        FieldCtx {
            order,
            phi,
            modulus_tail,
            powers: OnceLock::new(),
            basis_values: OnceLock::new(),
        }
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree of the field over ℚ, `φ(N)`.
    pub fn phi(&self) -> usize {
        self.phi
    }

    pub(crate) fn modulus_tail(&self) -> &[(usize, i64)] {
        &self.modulus_tail
    }

    /// Reduced `ζ_N^k` for any integer `k`.
    pub(crate) fn power(&self, k: i64) -> &[(usize, i64)] {
        let idx = k.rem_euclid(self.order as i64) as usize;
        &self.powers.get_or_init(|| self.build_powers())[idx]
    }

    pub(crate) fn basis_values(&self) -> &[DdComplex] {
        self.basis_values.get_or_init(|| {
            (0..self.phi as u64)
                .map(|k| root_of_unity_dd(k, self.order))
                .collect()
        })
    }

    fn build_powers(&self) -> Vec<Vec<(usize, i64)>> {
        let n = self.order as usize;
        let phi = self.phi;
        let mut rows = Vec::with_capacity(n);
        let mut v = vec![0i64; phi];
        v[0] = 1;
        for k in 0..n {
            if k > 0 {
                // v <- ζ·v mod Φ_N
                let top = v[phi - 1];
                for i in (1..phi).rev() {
                    v[i] = v[i - 1];
                }
                v[0] = 0;
                if top != 0 {
                    for &(j, c) in &self.modulus_tail {
                        v[j] = v[j]
                            .checked_sub(top.checked_mul(c).expect("power table overflow"))
                            .expect("power table overflow");
                    }
                }
            }
            rows.push(
                v.iter()
                    .enumerate()
                    .filter(|(_, c)| **c != 0)
                    .map(|(i, c)| (i, *c))
                    .collect(),
            );
        }
        rows
    }
}

const CACHE_LIMIT: usize = 48;

fn cache() -> &'static Mutex<HashMap<u64, Arc<FieldCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<FieldCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Field context for order `N`, shared between all numbers of that order.
///
/// The cache is bounded; evicted contexts stay alive for as long as some
/// number still refers to them.
pub fn field(order: u64) -> Arc<FieldCtx> {
    assert!(order >= 1, "cyclotomic order must be positive");
    let mut map = cache().lock().unwrap_or_else(|e| e.into_inner());
    if let Some(f) = map.get(&order) {
        return Arc::clone(f);
    }
    if map.len() >= CACHE_LIMIT {
        map.clear();
    }
    let f = Arc::new(FieldCtx::new(order));
    map.insert(order, Arc::clone(&f));
    f
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn powers_wrap_with_period_n() {
        let f = field(12);
        assert_eq!(f.phi(), 4);
        assert_eq!(f.power(0), &[(0, 1)]);
        assert_eq!(f.power(12), f.power(0));
        assert_eq!(f.power(-1), f.power(11));
        // ζ12^6 = -1
        assert_eq!(f.power(6), &[(0, -1)]);
        // ζ12^4 = ζ12^2 - 1  (from z^4 - z^2 + 1 = 0)
        assert_eq!(f.power(4), &[(0, -1), (2, 1)]);
    }

    #[test]
    fn reduced_powers_stay_small() {
        for n in [105u64, 385, 420, 680] {
            let f = field(n);
            let max = (0..n as i64)
                .flat_map(|k| f.power(k).iter().map(|&(_, c)| c.abs()))
                .max()
                .unwrap();
            assert!(max <= 3, "order {n}: max coefficient {max}");
        }
    }
}
