use num_rational::BigRational;
use potts_atlas_core::criticality::{
    critical_exponent, degree_decomposition, discriminant_degree, string_exponent,
};
use potts_atlas_core::{CaseTag, ThetaParam};

fn r(a: i64, b: i64) -> BigRational {
    BigRational::new(a.into(), b.into())
}

/// One representative per case for each m: n = 1 (Case 1) and n = 2 (Case 2, m odd).
fn reps(max_m: u64) -> Vec<ThetaParam> {
    (2..=max_m)
        .flat_map(|m| [ThetaParam::new(1, m).ok(), ThetaParam::new(2, m).ok()])
        .flatten()
        .collect()
}

#[test]
fn counting_solves_to_closed_exponent() {
    for param in reps(100) {
        let m = param.m() as i64;
        let (cuts, pairs) = degree_decomposition(param);
        let rs = critical_exponent(param);
        let expected = match param.case() {
            CaseTag::Case1 => r(2 * m - 1, 2 * m),
            CaseTag::Case2 => r(m - 1, m),
        };
        assert_eq!(rs, expected, "{param}");
        let recon = BigRational::from_integer(cuts.into()) + &rs * BigRational::from_integer(pairs.into());
        assert_eq!(recon, BigRational::from_integer(discriminant_degree(param).into()));
        assert!(rs > r(0, 1) && rs < r(1, 1));
    }
}

#[test]
fn string_exponent_monotone_and_negative() {
    for case in [CaseTag::Case1, CaseTag::Case2] {
        let seq: Vec<BigRational> = reps(100)
            .into_iter()
            .filter(|p| p.case() == case)
            .map(string_exponent)
            .collect();
        assert!(seq.iter().all(|g| *g < r(0, 1)));
        assert!(seq.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn known_q_table() {
    let cases = [((2, 3), 1, r(-1, 2)), ((1, 2), 2, r(-1, 3)), ((1, 3), 3, r(-1, 5))];
    for ((n, m), q, gamma) in cases {
        let param = ThetaParam::new(n, m).unwrap();
        assert_eq!(param.q().as_rational(), Some(r(q, 1)));
        assert_eq!(string_exponent(param), gamma);
    }
}
