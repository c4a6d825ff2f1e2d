use std::time::Instant;

use potts_atlas_core::classify::{allowed_p, allowed_q, scan_integer_p, series_value, ScanOptions, Series};
use potts_atlas_core::criticality::exponents;
use potts_atlas_core::duality::{
    allowed_words, coupling_map, dual_beta, verify_words, DualityMap, Model, DEFAULT_WORD_CAP, EXPANSION_CAP,
};
use potts_atlas_core::exactnum::round_sig12;
use potts_atlas_core::sheet::{CoeffKind, SheetCalculator};
use potts_atlas_core::{CaseTag, ThetaParam};
use serde::Serialize;
use serde_json::json;

use crate::output::Report;
use crate::{Command, DualityCommand, LabelRange, ParamArgs};

pub type Result<T> = std::result::Result<T, String>;

fn approx(x: f64) -> String {
    round_sig12(x).to_string()
}

fn exact_note(param: ThetaParam) -> String {
    format!("exact values are polynomials in z = exp(2πi/{})", param.order())
}

fn theta(args: ParamArgs) -> Result<ThetaParam> {
    ThetaParam::new(args.n, args.m).map_err(|e| e.to_string())
}

pub fn run(command: &Command) -> Result<Report> {
    match *command {
        Command::AllowedQ { max_m } => cmd_allowed_q(max_m),
        Command::AllowedP { param, all } => cmd_allowed_p(param, all),
        Command::Coeffs { param, series, big_m, range } => cmd_coeffs(param, series, big_m, range),
        Command::Exponents { param } => cmd_exponents(param),
        Command::Scan { max_m, target, jobs, no_prefilter } => cmd_scan(max_m, target, jobs, !no_prefilter),
        Command::Duality { command: DualityCommand::Words { length, verify } } => {
            if verify {
                cmd_verify_words(length)
            } else {
                cmd_list_words(length)
            }
        }
        Command::Duality { command: DualityCommand::Beta { model, beta, g } } => cmd_beta(model.into(), beta, g),
    }
}

fn cmd_allowed_q(max_m: u64) -> Result<Report> {
    let entries = allowed_q(max_m).map_err(|e| e.to_string())?;
    let mut r = Report::new("allowed-q", json!({ "max_m": max_m }), &entries)
        .columns(&["n", "m", "case", "q", "q_approx"]);
    for e in &entries {
        r.row(vec![
            e.param.n().to_string(),
            e.param.m().to_string(),
            e.param.case().to_string(),
            e.q.to_string(),
            approx(e.q_approx),
        ]);
    }
    r.note("exact values are polynomials in z = exp(2πi/(4m)) of each row");
    Ok(r)
}

fn cmd_allowed_p(args: ParamArgs, all: bool) -> Result<Report> {
    let param = theta(args)?;
    let sols: Vec<_> = allowed_p(param).into_iter().filter(|s| all || s.physical).collect();
    let mut r = Report::new(
        "allowed-p",
        json!({ "n": param.n(), "m": param.m(), "all": all }),
        &sols,
    )
    .columns(&["series", "M", "p", "p_approx", "termination_pos", "termination_neg", "physical"]);
    for s in &sols {
        r.row(vec![
            s.series.to_string(),
            s.index.to_string(),
            s.p.to_string(),
            approx(s.p_approx),
            s.termination_pos.to_string(),
            s.termination_neg.to_string(),
            s.physical.to_string(),
        ]);
    }
    r.note(format!("q = {} ≈ {}", param.q(), approx(param.q_f64())));
    r.note(exact_note(param));
    Ok(r)
}

fn check_series(param: ThetaParam, series: Series, big_m: i64) -> Result<()> {
    if !Series::for_case(param.case()).contains(&series) {
        let needed = match param.case() {
            CaseTag::Case1 => "Case 2",
            CaseTag::Case2 => "Case 1",
        };
        return Err(format!("{series} requires {needed}; {param} is {}", param.case()));
    }
    let range = series.index_range(param.m());
    if !range.contains(&big_m) {
        return Err(format!(
            "M = {big_m} out of range {}..={} for {series} at {param}",
            range.start(),
            range.end()
        ));
    }
    Ok(())
}

fn kind_name(kind: CoeffKind) -> &'static str {
    match kind {
        CoeffKind::Rho => "rho",
        CoeffKind::Delta => "delta",
    }
}

fn cmd_coeffs(args: ParamArgs, series: Series, big_m: i64, range: Option<LabelRange>) -> Result<Report> {
    let param = theta(args)?;
    check_series(param, series, big_m)?;
    let p = series_value(param, series, big_m);
    let calc = SheetCalculator::new(param, &p).map_err(|e| e.to_string())?;
    let termination = calc.termination_labels();
    let (lo, hi) = match (range, termination) {
        (Some(r), _) => (r.lo, r.hi),
        (None, Some((pos, neg))) => (neg, pos),
        (None, None) => return Err(format!("p = {p} does not terminate; pass --range")),
    };
    let table = calc.table(lo, hi).map_err(|e| e.to_string())?;
    let mut r = Report::new(
        "coeffs",
        json!({
            "n": param.n(),
            "m": param.m(),
            "series": series,
            "M": big_m,
            "range": [lo, hi],
        }),
        &table,
    )
    .columns(&["label", "kind", "value", "value_approx", "alpha", "alpha_approx"]);
    for e in &table.entries {
        r.row(vec![
            e.label.to_string(),
            kind_name(e.kind).to_string(),
            e.value.to_string(),
            approx(e.value.to_f64()),
            e.alpha.to_string(),
            approx(e.alpha.to_f64()),
        ]);
    }
    r.note(format!("p = {p} ≈ {}", approx(p.to_f64())));
    if let Some((pos, neg)) = termination {
        r.note(format!("termination labels: {neg} and {pos}"));
    }
    r.note(exact_note(param));
    Ok(r)
}

fn cmd_exponents(args: ParamArgs) -> Result<Report> {
    let param = theta(args)?;
    let e = exponents(param);
    let mut r = Report::new("exponents", json!({ "n": param.n(), "m": param.m() }), &e).columns(&[
        "n",
        "m",
        "case",
        "sheets",
        "disc_degree",
        "sqrt_cuts",
        "collided_pairs",
        "r_over_s",
        "gamma_s",
    ]);
    r.row(vec![
        param.n().to_string(),
        param.m().to_string(),
        param.case().to_string(),
        e.sheet_count.to_string(),
        e.disc_degree.to_string(),
        e.sqrt_cut_count.to_string(),
        e.collided_pairs.to_string(),
        e.critical_exponent.to_string(),
        e.string_exponent.to_string(),
    ]);
    Ok(r)
}

fn cmd_scan(max_m: u64, target: i64, jobs: usize, prefilter: bool) -> Result<Report> {
    let start = Instant::now();
    let report = scan_integer_p(max_m, target, ScanOptions { jobs, prefilter }).map_err(|e| e.to_string())?;
    // wall time stays off stdout so output is byte-stable
    eprintln!("wall time {:.3} s", start.elapsed().as_secs_f64());
    let mut r = Report::new(
        "scan",
        json!({ "max_m": max_m, "target": target, "prefilter": prefilter }),
        &report,
    )
    .columns(&["n", "m", "series", "M"]);
    for h in &report.hits {
        r.row(vec![
            h.param.n().to_string(),
            h.param.m().to_string(),
            h.series.to_string(),
            h.index.to_string(),
        ]);
    }
    r.note(format!(
        "scanned {} pairs with m <= {max_m}: {} values tested, {} exact checks, {} hits for p = {target}",
        report.pairs_scanned,
        report.values_tested,
        report.exact_checks,
        report.hits.len()
    ));
    Ok(r)
}

fn check_length(length: usize, cap: usize) -> Result<()> {
    if length == 0 {
        return Err("length must be ≥ 1".into());
    }
    if length > cap {
        return Err(if cap == EXPANSION_CAP {
            format!("length cap is {EXPANSION_CAP} for --verify")
        } else {
            format!("length {length} exceeds the listing cap of {DEFAULT_WORD_CAP} (length cap is {EXPANSION_CAP} for --verify)")
        });
    }
    Ok(())
}

fn cmd_list_words(length: usize) -> Result<Report> {
    check_length(length, DEFAULT_WORD_CAP)?;
    let words = allowed_words(length).map_err(|e| e.to_string())?;
    let rendered: Vec<String> = words.iter().map(ToString::to_string).collect();
    let mut r = Report::new("duality words", json!({ "length": length, "verify": false }), &rendered)
        .columns(&["index", "word"]);
    for (i, w) in rendered.iter().enumerate() {
        r.row(vec![i.to_string(), w.clone()]);
    }
    r.note(format!("{} allowed words of length {length}", words.len()));
    Ok(r)
}

#[derive(Serialize)]
struct VerifyResult {
    passed: bool,
    enumerated_words: usize,
    #[serde(flatten)]
    check: potts_atlas_core::duality::WordCheck,
}

fn cmd_verify_words(length: usize) -> Result<Report> {
    check_length(length, EXPANSION_CAP)?;
    let check = verify_words(length).map_err(|e| e.to_string())?;
    let enumerated = allowed_words(length).map_err(|e| e.to_string())?.len();
    let passed = check.passed() && enumerated == check.words;
    let status = if passed { "PASS" } else { "FAIL" };
    let summary = match &check.first_mismatch {
        None if passed => format!("PASS {} strings", check.strings_checked),
        None => format!("FAIL word count {enumerated}, expected {}", check.words),
        Some(mm) => {
            let sigma: Vec<String> = mm.sigma.iter().map(ToString::to_string).collect();
            format!(
                "FAIL at σ = ({}): expansion {}, closed form {}, weight {}",
                sigma.join(","),
                mm.expansion,
                mm.closed_form,
                mm.new_weight
            )
        }
    };
    let row = vec![
        status.to_string(),
        length.to_string(),
        check.strings_checked.to_string(),
        enumerated.to_string(),
    ];
    let mut r = Report::new(
        "duality words",
        json!({ "length": length, "verify": true }),
        VerifyResult { passed, enumerated_words: enumerated, check },
    )
    .columns(&["status", "length", "strings_checked", "allowed_words"]);
    r.row(row);
    r.note(summary);
    r.notes_only = true;
    r.failed = !passed;
    Ok(r)
}

#[derive(Serialize)]
struct BetaResult {
    #[serde(flatten)]
    map: DualityMap,
    involution_residual: f64,
}

fn cmd_beta(model: Model, beta: f64, g: f64) -> Result<Report> {
    let map = coupling_map(model, beta, g).map_err(|e| e.to_string())?;
    let residual = (dual_beta(model, map.beta_dual).map_err(|e| e.to_string())? - beta).abs();
    let row = vec![
        model.to_string(),
        approx(map.beta),
        approx(map.beta_dual),
        format!("{residual:e}"),
        approx(map.lambda),
        approx(map.coupling_scale),
        approx(map.g_dual),
    ];
    let mut r = Report::new(
        "duality beta",
        json!({ "model": model, "beta": beta, "g": g }),
        BetaResult { map, involution_residual: residual },
    )
    .columns(&["model", "beta", "beta_dual", "residual", "lambda", "coupling_scale", "g_dual"]);
    r.row(row);
    Ok(r)
}
