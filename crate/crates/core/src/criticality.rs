//! Discriminant degrees and critical exponents.
//!
//! At criticality one branch point collides all sheets and behaves as
//! `(z - z_0)^{r/s}`; the remaining branch points are square-root cuts.
//! Counting each contribution to `deg Δ` and matching the known degree fixes
//! `r/s`, and `γ_s = 1 - s/r`.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::exactnum::rational_string;
use crate::param::{CaseTag, ThetaParam};
use crate::sheet::{SheetCalculator, SheetError};
use crate::CycloReal;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExponentResult {
    pub param: ThetaParam,
    pub sheet_count: u64,
    pub disc_degree: u64,
    pub sqrt_cut_count: u64,
    pub collided_pairs: u64,
    #[serde(with = "rational_string")]
    pub critical_exponent: BigRational,
    #[serde(with = "rational_string")]
    pub string_exponent: BigRational,
}

/// `deg Δ`: `2m(2m-1) - m` in Case 1, `m(m-1) - (m-1)/2` in Case 2.
pub fn discriminant_degree(param: ThetaParam) -> u64 {
    let m = param.m();
    match param.case() {
        CaseTag::Case1 => 2 * m * (2 * m - 1) - m,
        CaseTag::Case2 => m * (m - 1) - (m - 1) / 2,
    }
}

/// `(square-root cuts, ordered sheet pairs at the collided point)`.
pub fn degree_decomposition(param: ThetaParam) -> (u64, u64) {
    let m = param.m();
    match param.case() {
        CaseTag::Case1 => ((2 * m - 2) / 2, 2 * m * (2 * m - 1)),
        CaseTag::Case2 => ((m - 1) / 2, m * (m - 1)),
    }
}

/// `r/s` from `deg Δ = cuts + (r/s)·pairs`.
pub fn critical_exponent(param: ThetaParam) -> BigRational {
    let (cuts, pairs) = degree_decomposition(param);
    let deg = discriminant_degree(param);
    BigRational::new((deg - cuts).into(), pairs.into())
}

/// `γ_s = 1 - s/r`.
pub fn string_exponent(param: ThetaParam) -> BigRational {
    let rs = critical_exponent(param);
    BigRational::from_integer(1.into()) - rs.recip()
}

pub fn exponents(param: ThetaParam) -> ExponentResult {
    let (sqrt_cut_count, collided_pairs) = degree_decomposition(param);
    ExponentResult {
        param,
        sheet_count: param.sheet_count(),
        disc_degree: discriminant_degree(param),
        sqrt_cut_count,
        collided_pairs,
        critical_exponent: critical_exponent(param),
        string_exponent: string_exponent(param),
    }
}

/// `deg Δ` by counting sheet pairs over the termination range: a pair with
/// equal `α` differs at order `√z` and contributes `z¹`, any other pair
/// contributes `z²`. `None` when `p` is not finite-sheeted.
pub fn degree_from_alpha(param: ThetaParam, p: &CycloReal) -> Result<Option<u64>, SheetError> {
    let calc = SheetCalculator::new(param, p)?;
    let Some((pos, neg)) = calc.termination_labels() else {
        return Ok(None);
    };
    let alphas: Vec<CycloReal> = (neg..=pos).map(|k| calc.alpha(k)).collect();
    let mut deg = 0;
    for (i, a) in alphas.iter().enumerate() {
        for b in &alphas[i + 1..] {
            deg += if a == b { 1 } else { 2 };
        }
    }
    Ok(Some(deg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tp(n: u64, m: u64) -> ThetaParam {
        ThetaParam::new(n, m).unwrap()
    }

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn degrees() {
        assert_eq!(discriminant_degree(tp(1, 3)), 27);
        assert_eq!(discriminant_degree(tp(1, 2)), 10);
        assert_eq!(discriminant_degree(tp(2, 3)), 5);
        assert_eq!(degree_decomposition(tp(1, 3)), (2, 30));
        assert_eq!(degree_decomposition(tp(1, 2)), (1, 12));
        assert_eq!(degree_decomposition(tp(2, 3)), (1, 6));
    }

    #[test]
    fn exponents_known_q() {
        assert_eq!(critical_exponent(tp(1, 3)), r(5, 6));
        assert_eq!(critical_exponent(tp(1, 2)), r(3, 4));
        assert_eq!(critical_exponent(tp(2, 3)), r(2, 3));
        assert_eq!(string_exponent(tp(2, 3)), r(-1, 2));
        assert_eq!(string_exponent(tp(1, 2)), r(-1, 3));
        assert_eq!(string_exponent(tp(1, 3)), r(-1, 5));
    }

    #[test]
    fn alpha_route_at_p1() {
        for param in crate::param::coprime_params(9) {
            let one = CycloReal::one(param.order());
            assert_eq!(
                degree_from_alpha(param, &one).unwrap(),
                Some(discriminant_degree(param)),
                "{param}"
            );
        }
    }

    #[test]
    fn serde_shape() {
        let e = exponents(tp(1, 3));
        let json = serde_json::to_string(&e).unwrap();
        assert!(json.contains(r#""critical_exponent":"5/6""#), "{json}");
        assert!(json.contains(r#""string_exponent":"-1/5""#), "{json}");
        let back: ExponentResult = serde_json::from_str(&json).unwrap();
        assert_eq!(back, e);
    }
}
