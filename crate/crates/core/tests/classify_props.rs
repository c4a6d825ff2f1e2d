use std::collections::HashSet;

use num_rational::BigRational;
use potts_atlas_core::classify::{
    allowed_p, allowed_q, is_p_allowed, scan_integer_p, series_value, special_values, ScanOptions, Series,
};
use potts_atlas_core::param::coprime_params;
use potts_atlas_core::{CaseTag, CycloReal};

fn int(v: i64) -> BigRational {
    BigRational::from_integer(v.into())
}

#[test]
fn q_values_exact_and_in_range() {
    for e in allowed_q(12).unwrap() {
        assert!(e.q_approx > 0.0 && e.q_approx < 4.0);
        let expected = 2.0 * (1.0 + e.param.theta().cos());
        assert!((e.q.to_f64() - expected).abs() < 1e-12);
    }
}

#[test]
fn s1_pairs_sum_to_q() {
    for param in coprime_params(30) {
        if param.case() != CaseTag::Case1 {
            continue;
        }
        let m = param.m() as i64;
        for big_m in 1..m {
            let sum = series_value(param, Series::S1, big_m) + series_value(param, Series::S1, m - big_m);
            assert_eq!(sum, param.q(), "{param} M={big_m}");
        }
    }
}

#[test]
fn s1_and_s2_are_disjoint() {
    for param in coprime_params(30) {
        if param.case() != CaseTag::Case1 {
            continue;
        }
        let sols = allowed_p(param);
        let s1: HashSet<CycloReal> = sols.iter().filter(|s| s.series == Series::S1).map(|s| s.p.clone()).collect();
        assert!(sols.iter().filter(|s| s.series == Series::S2).all(|s| !s1.contains(&s.p)), "{param}");
    }
}

#[test]
fn series_shape_and_flags() {
    for param in coprime_params(20) {
        let sols = allowed_p(param);
        let m = param.m() as usize;
        match param.case() {
            CaseTag::Case1 => assert_eq!(sols.len(), 2 * m - 1),
            CaseTag::Case2 => {
                assert_eq!(sols.len(), m - 1);
                assert!(sols.iter().all(|s| s.series == Series::C2));
            }
        }
        for s in &sols {
            assert_eq!(s.physical, s.p_approx > 0.0);
            assert!((s.p.to_f64() - s.p_approx).abs() < 1e-12);
        }
    }
}

#[test]
fn physical_sets_of_known_models() {
    let phys = |n, m| {
        let mut v: Vec<BigRational> = allowed_p(potts_atlas_core::ThetaParam::new(n, m).unwrap())
            .into_iter()
            .filter(|s| s.physical)
            .map(|s| s.p.as_rational().unwrap())
            .collect();
        v.sort();
        v
    };
    assert_eq!(phys(1, 3), vec![int(1), BigRational::new(3.into(), 2.into()), int(2), int(3)]);
    assert_eq!(phys(1, 2), vec![int(1), int(2)]);
    assert_eq!(phys(2, 3), vec![int(1)]);
}

#[test]
fn special_values_agree_everywhere() {
    for param in coprime_params(40) {
        let sv = special_values(param);
        assert!(sv.all_agree(), "{sv:?}");
    }
}

#[test]
fn p2_placement_up_to_30() {
    for param in coprime_params(30) {
        let m = param.m() as i64;
        let found = is_p_allowed(param, &int(2)).map(|s| (s.series, s.index));
        let expected = match (param.case(), m % 2) {
            (CaseTag::Case2, _) => None,
            (CaseTag::Case1, 1) => Some((Series::S1, (m - 1) / 2)),
            (CaseTag::Case1, _) => Some((Series::S2, m / 2 - 1)),
        };
        assert_eq!(found, expected, "{param}");
    }
}

#[test]
fn scan_is_deterministic_across_workers() {
    let serial = scan_integer_p(40, 2, ScanOptions { jobs: 1, prefilter: true }).unwrap();
    let parallel = scan_integer_p(40, 2, ScanOptions { jobs: 4, prefilter: true }).unwrap();
    assert_eq!(serial, parallel);
    let exact_only = scan_integer_p(40, 2, ScanOptions { jobs: 3, prefilter: false }).unwrap();
    assert_eq!(serial.hits, exact_only.hits);
}

#[test]
fn scan_target_7_is_empty() {
    let rep = scan_integer_p(10, 7, ScanOptions { jobs: 1, prefilter: false }).unwrap();
    assert!(rep.hits.is_empty());
    assert_eq!(rep.exact_checks, rep.values_tested);
}
