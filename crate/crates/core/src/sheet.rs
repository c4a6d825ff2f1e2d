//! Sheet coefficients of the boundary `G`-functions.
//!
//! Sheet labels follow the cut alternation: the physical sheet is 0, the
//! finite cut joins 0 and 1, and positive labels alternate infinite / finite
//! cuts from there. The coefficient that decides termination at a label is
//! `ρ` (finite-cut discontinuity) at even positive and odd negative labels,
//! and `δ` (infinite-cut discontinuity) at odd positive and even
//! non-positive labels.
//!
//! With `s(j) = sin(jθ/2)` and `c(j) = cos(jθ/2)`, for any integer `M`:
//!
//! ```text
//! ρ_{2M}    =  ((1-p) s(2M)   + s(2M+2)) / s(2)   = -ρ_{2M+1}
//! δ_{2M+1}  = -((1-p) s(2M+1) + s(2M+3)) / s(1)   = -δ_{2M+2}
//! ρ_{-2M-1} =  ((1-p) s(2M+2) + s(2M))   / s(2)   = -ρ_{-2M-2}
//! δ_{-2M}   = -((1-p) s(2M+1) + s(2M-1)) / s(1)   = -δ_{-2M-1}
//! α_{2M+1}  = (-(p-2) c(1) + (p-1) c(2M+1) - c(2M+3)) / (2 s(1) s(2))
//! ```
//!
//! with `α_{2M+2} = α_{2M+1}`. Every sequence above solves
//! `y_K = (q-1)(y_{K-2} - y_{K-4}) + y_{K-6}` along a parity chain.

use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::trig::sin_frac_terms;
use crate::exactnum::{CycloNumber, CycloReal, ExactError};
use crate::param::{CaseTag, ThetaParam};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SheetError {
    #[error("empty label range [{lo}, {hi}]")]
    EmptyRange { lo: i64, hi: i64 },
    #[error("q is not 2(1 + cos θ) for {0}")]
    QMismatch(ThetaParam),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffKind {
    Rho,
    Delta,
}

impl fmt::Display for CoeffKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CoeffKind::Rho => "rho",
            CoeffKind::Delta => "delta",
        })
    }
}

/// Which discontinuity coefficient decides termination at `label`.
pub fn kind_at(label: i64) -> CoeffKind {
    let even = label.rem_euclid(2) == 0;
    match (label > 0, even) {
        (true, true) | (false, false) => CoeffKind::Rho,
        _ => CoeffKind::Delta,
    }
}

/// Brings `p` into the working field `ℚ(ζ_{4m})` of `param`.
fn to_param_field(param: ThetaParam, p: &CycloReal) -> Result<CycloReal, ExactError> {
    if p.order() == param.order() {
        Ok(p.clone())
    } else {
        p.embed(param.order())
    }
}

/// Closed-form evaluator for one `(θ, p)` pair.
///
/// Caches the `p`-dependent factors and the two inverse sines so that each
/// coefficient costs one sparse product and one dense product.
#[derive(Debug, Clone)]
pub struct SheetCalculator {
    param: ThetaParam,
    p: CycloReal,
    one_minus_p: CycloReal,
    p_minus_one: CycloReal,
    inv_sin: CycloReal,
    inv_sin_half: CycloReal,
    alpha_const: CycloReal,
    alpha_inv_den: CycloReal,
}

impl SheetCalculator {
    pub fn new(param: ThetaParam, p: &CycloReal) -> Result<Self, SheetError> {
        let order = param.order();
        let p = to_param_field(param, p)?;
        let one = CycloReal::one(order);
        let two = CycloReal::from_integer(order, 2);
        // sin θ and sin(θ/2) are nonzero because 0 < n < m
        let inv_sin = param.inv_sin_half(2).expect("sin θ ≠ 0");
        let inv_sin_half = param.inv_sin_half(1).expect("sin(θ/2) ≠ 0");
        let alpha_const = -&((&p - &two) * param.cos_half(1));
        let alpha_inv_den =
            (&inv_sin * &inv_sin_half).scale(&BigRational::new(1.into(), 2.into()));
        Ok(SheetCalculator {
            param,
            one_minus_p: &one - &p,
            p_minus_one: &p - &one,
            p,
            inv_sin,
            inv_sin_half,
            alpha_const,
            alpha_inv_den,
        })
    }

    pub fn param(&self) -> ThetaParam {
        self.param
    }

    pub fn p(&self) -> &CycloReal {
        &self.p
    }

    /// `a·s(ja) + s(jb)` where `s(j) = sin(jθ/2)`.
    fn sine_combo(&self, a: &CycloReal, ja: i64, jb: i64) -> CycloReal {
        let n = self.param.n() as i64;
        let m = self.param.m();
        let lhs = a.mul_real_terms(&sin_frac_terms(ja * n, m), 2);
        let rhs = CycloReal::from_real_terms(self.param.order(), &sin_frac_terms(jb * n, m), 2);
        lhs + rhs
    }

    /// `(1-p) sin Mθ + sin (M+1)θ`, the numerator of `ρ_{2M}`.
    pub fn rho_pos_numerator(&self, big_m: i64) -> CycloReal {
        self.sine_combo(&self.one_minus_p, 2 * big_m, 2 * big_m + 2)
    }

    /// `(1-p) sin (M+1)θ + sin Mθ`, the numerator of `ρ_{-2M-1}`.
    pub fn rho_neg_numerator(&self, big_m: i64) -> CycloReal {
        self.sine_combo(&self.one_minus_p, 2 * big_m + 2, 2 * big_m)
    }

    /// `(1-p) sin (M+½)θ + sin (M+3/2)θ`; `δ_{2M+1}` is minus this over `sin(θ/2)`.
    pub fn delta_pos_numerator(&self, big_m: i64) -> CycloReal {
        self.sine_combo(&self.one_minus_p, 2 * big_m + 1, 2 * big_m + 3)
    }

    /// `(1-p) sin (M+½)θ + sin (M-½)θ`; `δ_{-2M}` is minus this over `sin(θ/2)`.
    pub fn delta_neg_numerator(&self, big_m: i64) -> CycloReal {
        self.sine_combo(&self.one_minus_p, 2 * big_m + 1, 2 * big_m - 1)
    }

    /// `ρ_{2M}`.
    pub fn rho_pos(&self, big_m: i64) -> CycloReal {
        self.rho_pos_numerator(big_m) * &self.inv_sin
    }

    /// `δ_{2M+1}`.
    pub fn delta_pos(&self, big_m: i64) -> CycloReal {
        -(self.delta_pos_numerator(big_m) * &self.inv_sin_half)
    }

    /// `ρ_{-2M-1}`.
    pub fn rho_neg(&self, big_m: i64) -> CycloReal {
        self.rho_neg_numerator(big_m) * &self.inv_sin
    }

    /// `δ_{-2M}`.
    pub fn delta_neg(&self, big_m: i64) -> CycloReal {
        -(self.delta_neg_numerator(big_m) * &self.inv_sin_half)
    }

    /// The `α_{2M+1}` formula, valid for every integer `M`.
    pub fn alpha_odd(&self, big_m: i64) -> CycloReal {
        let n = self.param.n() as i64;
        let m = self.param.m();
        let cos_terms = |j: i64| [(j * n, 1), (-j * n, 1)];
        let mid = self.p_minus_one.mul_real_terms(&cos_terms(2 * big_m + 1), 2);
        let last = CycloReal::from_real_terms(4 * m, &cos_terms(2 * big_m + 3), 2);
        (&self.alpha_const + &mid - last) * &self.alpha_inv_den
    }

    /// `α_K` for any label; even labels take the value of the odd label below.
    pub fn alpha(&self, label: i64) -> CycloReal {
        // ceil(K/2) - 1 maps 2M+1 and 2M+2 to M
        self.alpha_odd(label.div_euclid(2) + label.rem_euclid(2) - 1)
    }

    /// `ρ_K` at any label, using the sign pairings off the designated labels.
    pub fn rho(&self, label: i64) -> CycloReal {
        match (label >= 0, label.rem_euclid(2) == 0) {
            (true, true) => self.rho_pos(label / 2),
            (true, false) => -self.rho_pos((label - 1) / 2),
            (false, false) => self.rho_neg((-label - 1) / 2),
            (false, true) => -self.rho_neg((-label - 2) / 2),
        }
    }

    /// `δ_K` at any label, using the sign pairings off the designated labels.
    pub fn delta(&self, label: i64) -> CycloReal {
        match (label > 0, label.rem_euclid(2) == 0) {
            (true, false) => self.delta_pos((label - 1) / 2),
            (true, true) => -self.delta_pos((label - 2) / 2),
            (false, true) => self.delta_neg(-label / 2),
            (false, false) => -self.delta_neg((-label - 1) / 2),
        }
    }

    /// The designated coefficient at `label` (see [`kind_at`]).
    pub fn coefficient(&self, label: i64) -> (CoeffKind, CycloReal) {
        let kind = kind_at(label);
        let value = match kind {
            CoeffKind::Rho => self.rho(label),
            CoeffKind::Delta => self.delta(label),
        };
        (kind, value)
    }

    /// Exact vanishing of the designated coefficient, tested on its numerator.
    pub fn vanishes_at(&self, label: i64) -> bool {
        let num = match (label > 0, label.rem_euclid(2) == 0) {
            (true, true) => self.rho_pos_numerator(label / 2),
            (true, false) => self.delta_pos_numerator((label - 1) / 2),
            (false, false) => self.rho_neg_numerator((-label - 1) / 2),
            (false, true) => self.delta_neg_numerator(-label / 2),
        };
        num.is_zero()
    }

    /// Smallest positive and largest non-positive vanishing labels.
    ///
    /// Scans one period on each side; `None` means the structure never
    /// terminates on that side.
    pub fn termination_labels(&self) -> Option<(i64, i64)> {
        let span = 2 * self.param.m() as i64;
        let pos = (1..=span).find(|&k| self.vanishes_at(k))?;
        let neg = (0..=span).map(|k| -k).find(|&k| self.vanishes_at(k))?;
        Some((pos, neg))
    }

    pub fn table(&self, lo: i64, hi: i64) -> Result<SheetCoefficientTable, SheetError> {
        if lo > hi {
            return Err(SheetError::EmptyRange { lo, hi });
        }
        let entries = (lo..=hi)
            .map(|label| {
                let (kind, value) = self.coefficient(label);
                SheetEntry {
                    label,
                    kind,
                    value,
                    alpha: self.alpha(label),
                }
            })
            .collect();
        Ok(SheetCoefficientTable {
            param: self.param,
            p: self.p.clone(),
            range: (lo, hi),
            entries,
        })
    }
}

pub fn rho_pos(param: ThetaParam, p: &CycloReal, big_m: i64) -> Result<CycloReal, SheetError> {
    Ok(SheetCalculator::new(param, p)?.rho_pos(big_m))
}

pub fn delta_pos(param: ThetaParam, p: &CycloReal, big_m: i64) -> Result<CycloReal, SheetError> {
    Ok(SheetCalculator::new(param, p)?.delta_pos(big_m))
}

pub fn rho_neg(param: ThetaParam, p: &CycloReal, big_m: i64) -> Result<CycloReal, SheetError> {
    Ok(SheetCalculator::new(param, p)?.rho_neg(big_m))
}

pub fn delta_neg(param: ThetaParam, p: &CycloReal, big_m: i64) -> Result<CycloReal, SheetError> {
    Ok(SheetCalculator::new(param, p)?.delta_neg(big_m))
}

pub fn alpha(param: ThetaParam, p: &CycloReal, label: i64) -> Result<CycloReal, SheetError> {
    Ok(SheetCalculator::new(param, p)?.alpha(label))
}

pub fn termination_labels(param: ThetaParam, p: &CycloReal) -> Result<Option<(i64, i64)>, SheetError> {
    Ok(SheetCalculator::new(param, p)?.termination_labels())
}

/// `1` and `e^{±iθ}` in `ℚ(ζ_{4m})`, each checked against
/// `x³ - (q-1)(x² - x) - 1 = 0`.
pub fn characteristic_roots(q: &CycloReal, param: ThetaParam) -> Result<[CycloNumber; 3], SheetError> {
    let order = param.order();
    let q = to_param_field(param, q)?.into_cyclo();
    let step = 2 * param.n() as i64;
    let roots = [
        CycloNumber::one(order),
        CycloNumber::root_of_unity(order, step),
        CycloNumber::root_of_unity(order, -step),
    ];
    let qm1 = &q - &CycloNumber::one(order);
    for x in &roots {
        let x2 = x * x;
        let x3 = &x2 * x;
        let lhs = x3 - &qm1 * &(&x2 - x) - CycloNumber::one(order);
        if !lhs.is_zero() {
            return Err(SheetError::QMismatch(param));
        }
    }
    Ok(roots)
}

/// The `p = 1` coefficients `(ρ_{2k}, δ_{2k})` evaluated literally in
/// `x = e^{iθ}`, with `√(q(q-4)) = x - x⁻¹` and `q - 4 = x + x⁻¹ - 2`.
pub fn p1_closed_forms(param: ThetaParam, k: i64) -> (CycloReal, CycloReal) {
    assert!(k >= 1, "k must be positive");
    let order = param.order();
    let x = |e: i64| CycloNumber::root_of_unity(order, 2 * param.n() as i64 * e);
    let one = CycloNumber::one(order);
    let sqrt_disc = &x(1) - &x(-1);
    let q_minus_4 = &x(1) + &x(-1) - CycloNumber::from_integer(order, 2);
    let rho = (x(-(k + 1)) * (x(2 * (k + 1)) - &one))
        .try_div(&sqrt_disc)
        .expect("sin θ ≠ 0");
    let delta = (x(-(k + 1)) * (x(1) - &one) * (x(2 * k + 1) - &one))
        .try_div(&q_minus_4)
        .expect("sin(θ/2) ≠ 0");
    (
        CycloReal::new(rho).expect("real by symmetry"),
        CycloReal::new(delta).expect("real by symmetry"),
    )
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheetEntry {
    pub label: i64,
    pub kind: CoeffKind,
    pub value: CycloReal,
    pub alpha: CycloReal,
}

/// Coefficients over a contiguous label range, ascending by label.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SheetCoefficientTable {
    pub param: ThetaParam,
    pub p: CycloReal,
    pub range: (i64, i64),
    pub entries: Vec<SheetEntry>,
}

impl SheetCoefficientTable {
    pub fn closed_form(param: ThetaParam, p: &CycloReal, lo: i64, hi: i64) -> Result<Self, SheetError> {
        SheetCalculator::new(param, p)?.table(lo, hi)
    }

    /// The table from the negative to the positive termination label, or
    /// `None` if `p` is not finite-sheeted for `param`.
    pub fn over_termination_range(param: ThetaParam, p: &CycloReal) -> Result<Option<Self>, SheetError> {
        let calc = SheetCalculator::new(param, p)?;
        match calc.termination_labels() {
            Some((pos, neg)) => calc.table(neg, pos).map(Some),
            None => Ok(None),
        }
    }

    pub fn get(&self, label: i64) -> Option<&SheetEntry> {
        let idx = usize::try_from(label - self.range.0).ok()?;
        self.entries.get(idx)
    }
}

/// Three consecutive values of one parity chain, with their `α`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainSeeds {
    pub values: [CycloReal; 3],
    pub alphas: [CycloReal; 3],
}

/// Seeds for the four parity chains.
///
/// | chain      | labels       | kind |
/// |------------|--------------|------|
/// | `pos_even` | 0, 2, 4      | ρ    |
/// | `pos_odd`  | 1, 3, 5      | δ    |
/// | `neg_odd`  | -1, -3, -5   | ρ    |
/// | `neg_even` | 0, -2, -4    | δ    |
///
/// Label 0 appears in two chains; the table reports its `δ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSeeds {
    pub pos_even: ChainSeeds,
    pub pos_odd: ChainSeeds,
    pub neg_odd: ChainSeeds,
    pub neg_even: ChainSeeds,
}

impl RecurrenceSeeds {
    pub fn from_closed_forms(param: ThetaParam, p: &CycloReal) -> Result<Self, SheetError> {
        let c = SheetCalculator::new(param, p)?;
        let chain = |labels: [i64; 3], value: &dyn Fn(i64) -> CycloReal| ChainSeeds {
            values: labels.map(value),
            alphas: labels.map(|k| c.alpha(k)),
        };
        Ok(RecurrenceSeeds {
            pos_even: chain([0, 2, 4], &|k| c.rho(k)),
            pos_odd: chain([1, 3, 5], &|k| c.delta(k)),
            neg_odd: chain([-1, -3, -5], &|k| c.rho(k)),
            neg_even: chain([0, -2, -4], &|k| c.delta(k)),
        })
    }
}

/// `(q-1)(a - b) + c`.
fn step(qm1: &CycloReal, a: &CycloReal, b: &CycloReal, c: &CycloReal) -> CycloReal {
    qm1 * &(a - b) + c
}

/// Extends a chain ascending in label: `y_K` from `y_{K-2}, y_{K-4}, y_{K-6}`.
pub fn extend_ascending(qm1: &CycloReal, seeds: &[CycloReal; 3], len: usize) -> Vec<CycloReal> {
    let mut y: Vec<CycloReal> = seeds.to_vec();
    while y.len() < len {
        let i = y.len();
        y.push(step(qm1, &y[i - 1], &y[i - 2], &y[i - 3]));
    }
    y.truncate(len);
    y
}

/// Extends a chain descending in label by the inverted recurrence:
/// `y_{K-6} = (q-1)(y_{K-4} - y_{K-2}) + y_K`. `seeds` are `y_K, y_{K-2}, y_{K-4}`.
pub fn extend_descending(qm1: &CycloReal, seeds: &[CycloReal; 3], len: usize) -> Vec<CycloReal> {
    let mut y: Vec<CycloReal> = seeds.to_vec();
    while y.len() < len {
        let i = y.len();
        // y[i-1] = y_{K-4}, y[i-2] = y_{K-2}, y[i-3] = y_K
        y.push(step(qm1, &y[i - 1], &y[i - 2], &y[i - 3]));
    }
    y.truncate(len);
    y
}

/// Builds a table over `[lo, hi]` from seeds alone, with `q = 2(1 + cos θ)`.
pub fn generate_by_recurrence(
    param: ThetaParam,
    p: &CycloReal,
    seeds: &RecurrenceSeeds,
    lo: i64,
    hi: i64,
) -> Result<SheetCoefficientTable, SheetError> {
    if lo > hi {
        return Err(SheetError::EmptyRange { lo, hi });
    }
    let order = param.order();
    let p = to_param_field(param, p)?;
    let qm1 = param.q() - CycloReal::one(order);
    let fit = |s: &[CycloReal; 3]| -> Result<[CycloReal; 3], ExactError> {
        Ok([
            to_param_field(param, &s[0])?,
            to_param_field(param, &s[1])?,
            to_param_field(param, &s[2])?,
        ])
    };
    // chain lengths needed to reach the far ends of the range
    let pos_len = (hi.max(0) / 2 + 1) as usize;
    let neg_len = ((-lo).max(0) / 2 + 1) as usize;
    let run = |c: &ChainSeeds, len: usize, up: bool| -> Result<(Vec<CycloReal>, Vec<CycloReal>), ExactError> {
        let ext = if up { extend_ascending } else { extend_descending };
        Ok((ext(&qm1, &fit(&c.values)?, len.max(3)), ext(&qm1, &fit(&c.alphas)?, len.max(3))))
    };
    let pos_even = run(&seeds.pos_even, pos_len, true)?;
    let pos_odd = run(&seeds.pos_odd, pos_len, true)?;
    let neg_odd = run(&seeds.neg_odd, neg_len, false)?;
    let neg_even = run(&seeds.neg_even, neg_len, false)?;

    let entries = (lo..=hi)
        .map(|label| {
            let (chain, idx) = match (label > 0, label.rem_euclid(2) == 0) {
                (true, true) => (&pos_even, label / 2),
                (true, false) => (&pos_odd, (label - 1) / 2),
                (false, false) => (&neg_odd, (-label - 1) / 2),
                (false, true) => (&neg_even, -label / 2),
            };
            let idx = idx as usize;
            SheetEntry {
                label,
                kind: kind_at(label),
                value: chain.0[idx].clone(),
                alpha: chain.1[idx].clone(),
            }
        })
        .collect();
    Ok(SheetCoefficientTable {
        param,
        p,
        range: (lo, hi),
        entries,
    })
}

/// Expected number of sheets `K_pos - K_neg + 1` of a finite-sheeted function.
pub fn expected_sheet_count(param: ThetaParam) -> i64 {
    match param.case() {
        CaseTag::Case1 => 2 * param.m() as i64,
        CaseTag::Case2 => param.m() as i64,
    }
}
