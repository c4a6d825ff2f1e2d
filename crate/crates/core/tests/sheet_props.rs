use num_rational::BigRational;
use potts_atlas_core::classify::{allowed_p, Series};
use potts_atlas_core::criticality::{degree_from_alpha, discriminant_degree};
use potts_atlas_core::param::coprime_params;
use potts_atlas_core::sheet::{
    expected_sheet_count, generate_by_recurrence, p1_closed_forms, RecurrenceSeeds, SheetCalculator,
    SheetCoefficientTable,
};
use potts_atlas_core::{CaseTag, CycloReal, ThetaParam};
use proptest::prelude::*;

/// `(-1)^n`.
fn sign(param: ThetaParam) -> i64 {
    if param.n() % 2 == 1 {
        -1
    } else {
        1
    }
}

fn param_strategy(max_m: u64) -> impl Strategy<Value = ThetaParam> {
    (2..=max_m)
        .prop_flat_map(|m| (1..m, Just(m)))
        .prop_filter_map("coprime", |(n, m)| ThetaParam::new(n, m).ok())
}

fn rational_p(param: ThetaParam, a: i64, b: i64) -> CycloReal {
    CycloReal::from_rational(param.order(), &BigRational::new(a.into(), b.into()))
}

#[test]
fn recurrence_equals_closed_form() {
    for param in coprime_params(12) {
        for sol in allowed_p(param) {
            let closed = SheetCoefficientTable::over_termination_range(param, &sol.p)
                .unwrap()
                .unwrap();
            let seeds = RecurrenceSeeds::from_closed_forms(param, &sol.p).unwrap();
            let (lo, hi) = closed.range;
            let rec = generate_by_recurrence(param, &sol.p, &seeds, lo, hi).unwrap();
            assert_eq!(rec, closed, "{param} {:?} M={}", sol.series, sol.index);
        }
    }
}

#[test]
fn q2_needs_no_special_case() {
    let param = ThetaParam::new(1, 2).unwrap();
    for sol in allowed_p(param) {
        let seeds = RecurrenceSeeds::from_closed_forms(param, &sol.p).unwrap();
        let rec = generate_by_recurrence(param, &sol.p, &seeds, -15, 15).unwrap();
        let closed = SheetCoefficientTable::closed_form(param, &sol.p, -15, 15).unwrap();
        assert_eq!(rec, closed);
    }
}

#[test]
fn termination_matches_classification() {
    for param in coprime_params(16) {
        for sol in allowed_p(param) {
            let calc = SheetCalculator::new(param, &sol.p).unwrap();
            let (pos, neg) = calc.termination_labels().expect("allowed p terminates");
            assert_eq!(
                (pos, neg),
                (sol.termination_pos, sol.termination_neg),
                "{param} {:?} M={}",
                sol.series,
                sol.index
            );
            assert_eq!(pos - neg + 1, expected_sheet_count(param));
        }
    }
}

#[test]
fn p1_closed_forms_match_general_forms() {
    for param in coprime_params(14) {
        let one = CycloReal::one(param.order());
        let calc = SheetCalculator::new(param, &one).unwrap();
        for k in 1..=2 * param.m() as i64 {
            let (rho, delta) = p1_closed_forms(param, k);
            assert_eq!(rho, calc.rho_pos(k), "{param} k={k}");
            assert_eq!(delta, calc.delta(2 * k), "{param} k={k}");
            assert_eq!(delta, -calc.delta_pos(k - 1), "{param} k={k}");
        }
    }
}

#[test]
fn alpha_equal_only_on_designated_pairs() {
    for param in coprime_params(12) {
        for sol in allowed_p(param) {
            let calc = SheetCalculator::new(param, &sol.p).unwrap();
            let (pos, neg) = calc.termination_labels().unwrap();
            let alphas: Vec<(i64, CycloReal)> = (neg..=pos).map(|k| (k, calc.alpha(k))).collect();
            for (i, (k, a)) in alphas.iter().enumerate() {
                for (k2, b) in &alphas[i + 1..] {
                    let designated = k.rem_euclid(2) == 1 && *k2 == k + 1;
                    assert_eq!(a == b, designated, "{param} p={} labels {k},{k2}", sol.p_approx);
                }
            }
        }
    }
}

/// Pair counting reproduces the closed degree for finite-cut termination
/// (S1, C2). An S2 range starts on an even label and ends on an odd one, so
/// only m - 1 equal-α pairs fit inside and the count is one higher.
#[test]
fn discriminant_degree_by_alpha_counting() {
    for param in coprime_params(10) {
        for sol in allowed_p(param) {
            let offset = u64::from(sol.series == Series::S2);
            assert_eq!(
                degree_from_alpha(param, &sol.p).unwrap(),
                Some(discriminant_degree(param) + offset),
                "{param} {:?} M={}",
                sol.series,
                sol.index
            );
        }
    }
}

#[test]
fn reflection_of_vanishing() {
    for param in coprime_params(16) {
        let m = param.m() as i64;
        for sol in allowed_p(param) {
            let calc = SheetCalculator::new(param, &sol.p).unwrap();
            for big_m in 0..m {
                if calc.rho_pos(big_m).is_zero() {
                    assert!(calc.rho_neg(m - big_m - 1).is_zero());
                }
                if calc.delta_pos(big_m).is_zero() {
                    assert!(calc.delta_neg(m - big_m - 1).is_zero());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn period_m_with_sign(param in param_strategy(14), a in -7i64..=7, b in 1i64..=5, big_m in -6i64..=10) {
        let calc = SheetCalculator::new(param, &rational_p(param, a, b)).unwrap();
        let m = param.m() as i64;
        let s = sign(param);
        prop_assert_eq!(calc.rho_pos(big_m + m), calc.rho_pos(big_m).scale_int(s));
        prop_assert_eq!(calc.delta_pos(big_m + m), calc.delta_pos(big_m).scale_int(s));
        prop_assert_eq!(calc.rho_neg(big_m + m), calc.rho_neg(big_m).scale_int(s));
        prop_assert_eq!(calc.delta_neg(big_m + m), calc.delta_neg(big_m).scale_int(s));
        prop_assert_eq!(calc.alpha(2 * (big_m + 2 * m) + 1), calc.alpha(2 * big_m + 1));
    }

    #[test]
    fn reflection_numerators(param in param_strategy(14), a in -7i64..=7, b in 1i64..=5, big_m in 0i64..14) {
        let calc = SheetCalculator::new(param, &rational_p(param, a, b)).unwrap();
        let m = param.m() as i64;
        let s = -sign(param);
        prop_assert_eq!(calc.rho_neg_numerator(m - big_m - 1), calc.rho_pos_numerator(big_m).scale_int(s));
        prop_assert_eq!(calc.delta_neg_numerator(m - big_m - 1), calc.delta_pos_numerator(big_m).scale_int(s));
    }

    #[test]
    fn case2_rho_delta_identities(param in param_strategy(15).prop_filter("Case 2", |p| p.case() == CaseTag::Case2),
                                  a in -7i64..=7, b in 1i64..=5, big_m in -4i64..=12) {
        let calc = SheetCalculator::new(param, &rational_p(param, a, b)).unwrap();
        let k = (param.m() as i64 - 1) / 2;
        let s = if (param.n() / 2) % 2 == 0 { 1 } else { -1 };
        prop_assert_eq!(calc.rho_pos_numerator(big_m + 1), calc.delta_pos_numerator(big_m - k).scale_int(s));
        prop_assert_eq!(calc.rho_neg_numerator(big_m), calc.delta_neg_numerator(big_m - k).scale_int(s));
        // hence the vanishing sets coincide
        prop_assert_eq!(calc.rho_pos(big_m + 1).is_zero(), calc.delta_pos(big_m - k).is_zero());
    }

    #[test]
    fn sign_pairings(param in param_strategy(12), a in -7i64..=7, b in 1i64..=5, big_m in 0i64..12) {
        let calc = SheetCalculator::new(param, &rational_p(param, a, b)).unwrap();
        let k = 2 * big_m;
        prop_assert_eq!(calc.rho(k + 1), -calc.rho(k));
        prop_assert_eq!(calc.delta(k + 2), -calc.delta(k + 1));
        prop_assert_eq!(calc.rho(-k - 2), -calc.rho(-k - 1));
        prop_assert_eq!(calc.delta(-k - 1), -calc.delta(-k));
        prop_assert_eq!(calc.alpha(k + 2), calc.alpha(k + 1));
        prop_assert_eq!(calc.alpha(-k - 1), calc.alpha(-k));
    }

    #[test]
    fn recurrence_for_arbitrary_p(param in param_strategy(10), a in -7i64..=7, b in 1i64..=5, lo in -14i64..=0, hi in 0i64..=14) {
        let p = rational_p(param, a, b);
        let seeds = RecurrenceSeeds::from_closed_forms(param, &p).unwrap();
        let rec = generate_by_recurrence(param, &p, &seeds, lo, hi).unwrap();
        let closed = SheetCoefficientTable::closed_form(param, &p, lo, hi).unwrap();
        prop_assert_eq!(rec, closed);
    }
}
