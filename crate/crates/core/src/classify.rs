//! Allowed `q`, allowed boundary weights `p`, and the integer-`p` scan.

use std::collections::HashSet;
use std::fmt;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactnum::trig::sin_frac_terms;
use crate::exactnum::{CycloNumber, CycloReal};
use crate::param::{coprime_params, CaseTag, ThetaParam};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ClassifyError {
    #[error("max-m must be ≥ 2")]
    MaxMTooSmall,
    #[error("target must be ≥ 2")]
    TargetTooSmall,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QEntry {
    pub param: ThetaParam,
    pub q: CycloReal,
    pub q_approx: f64,
}

/// Every `q = 2(1 + cos(nπ/m))` with `m <= max_m`, sorted by `(m, n)`.
pub fn allowed_q(max_m: u64) -> Result<Vec<QEntry>, ClassifyError> {
    if max_m < 2 {
        return Err(ClassifyError::MaxMTooSmall);
    }
    Ok(coprime_params(max_m)
        .into_iter()
        .map(|param| {
            let q = param.q();
            let q_approx = q.to_f64();
            QEntry { param, q, q_approx }
        })
        .collect())
}

/// `S1`: termination on a finite cut (Case 1). `S2`: on an infinite cut
/// (Case 1). `C2`: the single Case 2 series.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Series {
    S1,
    S2,
    C2,
}

impl fmt::Display for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Series::S1 => "S1",
            Series::S2 => "S2",
            Series::C2 => "C2",
        })
    }
}

impl std::str::FromStr for Series {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "S1" | "s1" => Ok(Series::S1),
            "S2" | "s2" => Ok(Series::S2),
            "C2" | "c2" => Ok(Series::C2),
            _ => Err(format!("unknown series {s:?}; expected S1, S2 or C2")),
        }
    }
}

impl Series {
    /// Series available for a given case.
    pub fn for_case(case: CaseTag) -> &'static [Series] {
        match case {
            CaseTag::Case1 => &[Series::S1, Series::S2],
            CaseTag::Case2 => &[Series::C2],
        }
    }

    /// Index range of `M`.
    pub fn index_range(self, m: u64) -> std::ops::RangeInclusive<i64> {
        let m = m as i64;
        match self {
            Series::S1 | Series::C2 => 1..=m - 1,
            Series::S2 => 0..=m - 1,
        }
    }

    /// Quarter-turn multipliers `(a, b)` with `p = 1 + sin(aθ/2) / sin(bθ/2)`.
    fn half_angles(self, big_m: i64) -> (i64, i64) {
        match self {
            Series::S1 | Series::C2 => (2 * big_m + 2, 2 * big_m),
            Series::S2 => (2 * big_m + 3, 2 * big_m + 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundarySolution {
    pub p: CycloReal,
    pub p_approx: f64,
    pub series: Series,
    #[serde(rename = "M")]
    pub index: i64,
    pub termination_pos: i64,
    pub termination_neg: i64,
    pub physical: bool,
}

/// Termination sheets of a series member, read off from its index.
pub fn predicted_termination(param: ThetaParam, series: Series, big_m: i64) -> (i64, i64) {
    let m = param.m() as i64;
    match series {
        Series::S1 => (2 * big_m, -2 * (m - big_m) + 1),
        Series::S2 => (2 * big_m + 1, -2 * (m - big_m - 1)),
        Series::C2 if 2 * big_m < m => (2 * big_m, -m + 2 * big_m + 1),
        Series::C2 => (2 * big_m - m, -2 * (m - big_m) + 1),
    }
}

/// The exact value of series member `M`.
pub fn series_value(param: ThetaParam, series: Series, big_m: i64) -> CycloReal {
    let (a, b) = series.half_angles(big_m);
    let inv = param
        .inv_sin_half(b)
        .unwrap_or_else(|| panic!("sin vanishes at {param}, {series}, M={big_m}"));
    let n = param.n() as i64;
    let ratio = inv.mul_real_terms(&sin_frac_terms(a * n, param.m()), 2);
    CycloReal::one(param.order()) + ratio
}

fn solution(param: ThetaParam, series: Series, big_m: i64) -> BoundarySolution {
    let p = series_value(param, series, big_m);
    let p_approx = p.to_f64();
    let (termination_pos, termination_neg) = predicted_termination(param, series, big_m);
    BoundarySolution {
        p,
        p_approx,
        series,
        index: big_m,
        termination_pos,
        termination_neg,
        physical: p_approx > 0.0,
    }
}

/// All finite-sheeted `p` for `param`, series by series in index order.
///
/// Panics if two members of one series coincide, which the classification
/// rules out.
pub fn allowed_p(param: ThetaParam) -> Vec<BoundarySolution> {
    let mut out = Vec::new();
    for &series in Series::for_case(param.case()) {
        let mut seen = HashSet::new();
        for big_m in series.index_range(param.m()) {
            let sol = solution(param, series, big_m);
            assert!(
                seen.insert(sol.p.clone()),
                "duplicate p in {series} at {param}, M={big_m}"
            );
            out.push(sol);
        }
    }
    out
}

/// The solution whose `p` equals `target` exactly, if any.
pub fn find_p(param: ThetaParam, target: &CycloReal) -> Option<BoundarySolution> {
    let target = if target.order() == param.order() {
        target.clone()
    } else {
        target.embed(param.order()).ok()?
    };
    allowed_p(param).into_iter().find(|s| s.p == target)
}

pub fn is_p_allowed(param: ThetaParam, target: &BigRational) -> Option<BoundarySolution> {
    find_p(param, &CycloReal::from_rational(param.order(), target))
}

/// Where a special `p` should sit versus where it was found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Placement {
    pub label: String,
    pub value: CycloReal,
    pub predicted: Option<(Series, i64)>,
    pub found: Option<(Series, i64)>,
}

impl Placement {
    pub fn agrees(&self) -> bool {
        self.predicted == self.found
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpecialValues {
    pub param: ThetaParam,
    pub placements: Vec<Placement>,
}

impl SpecialValues {
    pub fn all_agree(&self) -> bool {
        self.placements.iter().all(Placement::agrees)
    }
}

/// Checks the placements of `p = q`, `q/2`, `2` and `1`.
pub fn special_values(param: ThetaParam) -> SpecialValues {
    let order = param.order();
    let m = param.m() as i64;
    let q = param.q();
    let half = BigRational::new(1.into(), 2.into());
    let case1 = param.case() == CaseTag::Case1;
    let sols = allowed_p(param);
    let place = |label: &str, value: CycloReal, predicted: Option<(Series, i64)>| {
        let found = sols
            .iter()
            .find(|s| s.p == value)
            .map(|s| (s.series, s.index));
        Placement {
            label: label.to_string(),
            value,
            predicted,
            found,
        }
    };
    let placements = vec![
        place(
            "q",
            q.clone(),
            Some(if case1 { (Series::S2, 0) } else { (Series::C2, (m + 1) / 2) }),
        ),
        place(
            "q/2",
            q.scale(&half),
            match (case1, m % 2 == 0) {
                (false, _) => None,
                (true, true) => Some((Series::S1, m / 2)),
                (true, false) => Some((Series::S2, (m - 1) / 2)),
            },
        ),
        place(
            "2",
            CycloReal::from_integer(order, 2),
            match (case1, m % 2 == 0) {
                (false, _) => None,
                (true, true) => Some((Series::S2, m / 2 - 1)),
                (true, false) => Some((Series::S1, (m - 1) / 2)),
            },
        ),
        place(
            "1",
            CycloReal::one(order),
            Some((if case1 { Series::S1 } else { Series::C2 }, m - 1)),
        ),
    ];
    SpecialValues { param, placements }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ScanHit {
    pub param: ThetaParam,
    pub series: Series,
    #[serde(rename = "M")]
    pub index: i64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub max_m: u64,
    pub target: i64,
    pub pairs_scanned: u64,
    pub values_tested: u64,
    pub exact_checks: u64,
    pub hits: Vec<ScanHit>,
    /// Series members with `p > q` beyond float noise, by float comparison.
    pub p_above_q: Vec<ScanHit>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOptions {
    /// Worker threads; 0 means the rayon default.
    pub jobs: usize,
    /// Skip the exact test when the float residual exceeds 1e-9.
    pub prefilter: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            jobs: 1,
            prefilter: true,
        }
    }
}

const PREFILTER_TOL: f64 = 1e-9;

#[derive(Default)]
struct PairScan {
    hits: Vec<ScanHit>,
    above: Vec<ScanHit>,
    tested: u64,
    exact: u64,
}

/// `sin(aθ/2) - (t-1) sin(bθ/2) = 0`, i.e. `p = t`, tested in the ring.
fn exact_residual_vanishes(param: ThetaParam, a: i64, b: i64, t_minus_1: i64) -> bool {
    let n = param.n() as i64;
    let m = param.m();
    // scaled by 2i so every coefficient is an integer
    let [x, y] = sin_frac_terms(a * n, m);
    let [u, v] = sin_frac_terms(b * n, m);
    let terms = [
        x,
        y,
        (u.0, -t_minus_1 * u.1),
        (v.0, -t_minus_1 * v.1),
    ];
    CycloNumber::from_terms(param.order(), &terms, 1).is_zero()
}

fn scan_pair(param: ThetaParam, target: i64, prefilter: bool) -> PairScan {
    let mut out = PairScan::default();
    let half = param.theta() / 2.0;
    let q = param.q_f64();
    for &series in Series::for_case(param.case()) {
        for big_m in series.index_range(param.m()) {
            out.tested += 1;
            let (a, b) = series.half_angles(big_m);
            let (sa, sb) = ((a as f64 * half).sin(), (b as f64 * half).sin());
            let hit = ScanHit { param, series, index: big_m };
            if 1.0 + sa / sb > q + PREFILTER_TOL {
                out.above.push(hit);
            }
            if prefilter && (sa - (target - 1) as f64 * sb).abs() > PREFILTER_TOL {
                continue;
            }
            out.exact += 1;
            if exact_residual_vanishes(param, a, b, target - 1) {
                out.hits.push(hit);
            }
        }
    }
    out
}

/// Tests `p = target` exactly for every series member of every coprime
/// `(n, m)` with `m <= max_m`. Output order is `(m, n, series, M)`
/// regardless of `jobs`.
pub fn scan_integer_p(max_m: u64, target: i64, options: ScanOptions) -> Result<ScanReport, ClassifyError> {
    if max_m < 2 {
        return Err(ClassifyError::MaxMTooSmall);
    }
    if target < 2 {
        return Err(ClassifyError::TargetTooSmall);
    }
    let params = coprime_params(max_m);
    let per_pair = run_pairs(&params, target, options);
    let mut report = ScanReport {
        max_m,
        target,
        pairs_scanned: params.len() as u64,
        values_tested: 0,
        exact_checks: 0,
        hits: Vec::new(),
        p_above_q: Vec::new(),
    };
    for r in per_pair {
        report.values_tested += r.tested;
        report.exact_checks += r.exact;
        report.hits.extend(r.hits);
        report.p_above_q.extend(r.above);
    }
    report.hits.sort();
    report.p_above_q.sort();
    Ok(report)
}

#[cfg(feature = "parallel")]
fn run_pairs(params: &[ThetaParam], target: i64, options: ScanOptions) -> Vec<PairScan> {
    use rayon::prelude::*;
    if options.jobs == 1 {
        return params
            .iter()
            .map(|&p| scan_pair(p, target, options.prefilter))
            .collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.jobs)
        .build()
        .expect("thread pool");
    // large m first so the tail of the schedule is short
    pool.install(|| {
        params
            .par_iter()
            .rev()
            .map(|&p| scan_pair(p, target, options.prefilter))
            .collect()
    })
}

#[cfg(not(feature = "parallel"))]
fn run_pairs(params: &[ThetaParam], target: i64, options: ScanOptions) -> Vec<PairScan> {
    params
        .iter()
        .map(|&p| scan_pair(p, target, options.prefilter))
        .collect()
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

    fn rational_set(param: ThetaParam, physical_only: bool) -> Vec<(Series, i64, BigRational)> {
        allowed_p(param)
            .into_iter()
            .filter(|s| s.physical || !physical_only)
            .map(|s| (s.series, s.index, s.p.as_rational().expect("rational")))
            .collect()
    }

    #[test]
    fn allowed_q_examples() {
        assert_eq!(allowed_q(1), Err(ClassifyError::MaxMTooSmall));
        let qs = allowed_q(2).unwrap();
        assert_eq!(qs.len(), 1);
        let qs = allowed_q(3).unwrap();
        let vals: Vec<_> = qs.iter().map(|e| e.q.as_rational().unwrap()).collect();
        assert_eq!(vals, vec![r(2, 1), r(3, 1), r(1, 1)]);
        let qs = allowed_q(4).unwrap();
        assert!((qs[3].q_approx - 3.414_213_56).abs() < 1e-8);
        assert!((qs[4].q_approx - 0.585_786_44).abs() < 1e-8);
    }

    #[test]
    fn q3_boundary_set() {
        use Series::*;
        let all = rational_set(tp(1, 3), false);
        assert_eq!(
            all,
            vec![
                (S1, 1, r(2, 1)),
                (S1, 2, r(1, 1)),
                (S2, 0, r(3, 1)),
                (S2, 1, r(3, 2)),
                (S2, 2, r(0, 1)),
            ]
        );
        assert_eq!(rational_set(tp(1, 3), true).len(), 4);
    }

    #[test]
    fn q1_and_q2_sets() {
        use Series::*;
        assert_eq!(
            rational_set(tp(2, 3), false),
            vec![(C2, 1, r(0, 1)), (C2, 2, r(1, 1))]
        );
        assert_eq!(
            rational_set(tp(1, 2), false),
            vec![(S1, 1, r(1, 1)), (S2, 0, r(2, 1)), (S2, 1, r(0, 1))]
        );
    }

    #[test]
    fn membership_examples() {
        let hit = is_p_allowed(tp(1, 3), &r(3, 2)).unwrap();
        assert_eq!((hit.series, hit.index), (Series::S2, 1));
        assert_eq!(is_p_allowed(tp(2, 3), &r(2, 1)), None);
        let hit = is_p_allowed(tp(1, 5), &r(2, 1)).unwrap();
        assert_eq!((hit.series, hit.index), (Series::S1, 2));
    }

    #[test]
    fn special_value_examples() {
        let sv = special_values(tp(1, 3));
        assert!(sv.all_agree(), "{sv:?}");
        assert_eq!(sv.placements[0].found, Some((Series::S2, 0)));
        assert_eq!(sv.placements[1].found, Some((Series::S2, 1)));
        let sv = special_values(tp(2, 3));
        assert!(sv.all_agree(), "{sv:?}");
        assert_eq!(sv.placements[2].found, None);
        assert_eq!(sv.placements[0].found, Some((Series::C2, 2)));
        let sv = special_values(tp(1, 4));
        assert!(sv.all_agree(), "{sv:?}");
        assert_eq!(sv.placements[1].found, Some((Series::S1, 2)));
    }

    #[test]
    fn scan_small() {
        let rep = scan_integer_p(10, 7, ScanOptions::default()).unwrap();
        assert!(rep.hits.is_empty());
        let rep = scan_integer_p(10, 3, ScanOptions::default()).unwrap();
        assert_eq!(
            rep.hits,
            vec![ScanHit { param: tp(1, 3), series: Series::S2, index: 0 }]
        );
        assert_eq!(scan_integer_p(0, 3, ScanOptions::default()), Err(ClassifyError::MaxMTooSmall));
        assert_eq!(scan_integer_p(5, 1, ScanOptions::default()), Err(ClassifyError::TargetTooSmall));
    }

    #[test]
    fn prefilter_does_not_change_hits() {
        for target in [2, 3, 4] {
            let with = scan_integer_p(24, target, ScanOptions { jobs: 1, prefilter: true }).unwrap();
            let without = scan_integer_p(24, target, ScanOptions { jobs: 1, prefilter: false }).unwrap();
            assert_eq!(with.hits, without.hits);
            assert_eq!(without.exact_checks, without.values_tested);
        }
    }

    #[test]
    fn scan_agrees_with_allowed_p() {
        for param in coprime_params(12) {
            for target in 2..=4 {
                let expected: Vec<_> = allowed_p(param)
                    .into_iter()
                    .filter(|s| s.p.as_rational() == Some(r(target, 1)))
                    .map(|s| ScanHit { param, series: s.series, index: s.index })
                    .collect();
                let got: Vec<_> = scan_integer_p(12, target, ScanOptions::default())
                    .unwrap()
                    .hits
                    .into_iter()
                    .filter(|h| h.param == param)
                    .collect();
                assert_eq!(got, expected, "{param} target {target}");
            }
        }
    }
}
