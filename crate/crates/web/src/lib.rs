//! wasm-bindgen exports for the static demo page in `www/`.
//!
//! Each export returns a JSON string. The `*_report` functions hold the logic
//! and are plain Rust so they can be tested natively.

use potts_atlas_core::classify::{allowed_p, series_value, Series};
use potts_atlas_core::criticality::exponents;
use potts_atlas_core::duality::{coupling_map, dual_beta, Model};
use potts_atlas_core::sheet::SheetCalculator;
use potts_atlas_core::ThetaParam;
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn param(n: u32, m: u32) -> Result<ThetaParam, String> {
    ThetaParam::new(n.into(), m.into()).map_err(|e| e.to_string())
}

/// Allowed boundary values and the critical exponents at `θ = nπ/m`.
pub fn boundary_report(n: u32, m: u32, include_unphysical: bool) -> Result<Value, String> {
    let param = param(n, m)?;
    let rows: Vec<Value> = allowed_p(param)
        .into_iter()
        .filter(|s| include_unphysical || s.physical)
        .map(|s| {
            json!({
                "series": s.series.to_string(),
                "M": s.index,
                "p": s.p.to_string(),
                "p_approx": s.p_approx,
                "termination": [s.termination_neg, s.termination_pos],
                "physical": s.physical,
            })
        })
        .collect();
    Ok(json!({
        "n": n,
        "m": m,
        "case": param.case().to_string(),
        "q": param.q().to_string(),
        "q_approx": param.q_f64(),
        "exponents": exponents(param),
        "solutions": rows,
    }))
}

/// Sheet coefficients over the termination range of one series member.
pub fn sheet_report(n: u32, m: u32, series: &str, big_m: i32) -> Result<Value, String> {
    let param = param(n, m)?;
    let series: Series = series.parse()?;
    if !Series::for_case(param.case()).contains(&series) {
        return Err(format!("{series} is not available in {}", param.case()));
    }
    let big_m = i64::from(big_m);
    if !series.index_range(param.m()).contains(&big_m) {
        return Err(format!("M = {big_m} is out of range for {series}"));
    }
    let p = series_value(param, series, big_m);
    let calc = SheetCalculator::new(param, &p).map_err(|e| e.to_string())?;
    let (pos, neg) = calc
        .termination_labels()
        .ok_or_else(|| format!("p = {p} does not terminate"))?;
    let table = calc.table(neg, pos).map_err(|e| e.to_string())?;
    let rows: Vec<Value> = table
        .entries
        .iter()
        .map(|e| {
            json!({
                "label": e.label,
                "kind": e.kind,
                "value": e.value.to_string(),
                "value_approx": e.value.to_f64(),
                "alpha": e.alpha.to_string(),
                "alpha_approx": e.alpha.to_f64(),
            })
        })
        .collect();
    Ok(json!({
        "p": p.to_string(),
        "p_approx": p.to_f64(),
        "order": param.order(),
        "rows": rows,
    }))
}

/// Dual temperature, involution residual and coupling rescaling.
pub fn duality_report(model: &str, beta: f64) -> Result<Value, String> {
    let model = match model {
        "ising" => Model::Ising,
        "potts3" => Model::Potts3,
        other => return Err(format!("unknown model {other:?}")),
    };
    let map = coupling_map(model, beta, 1.0).map_err(|e| e.to_string())?;
    let back = dual_beta(model, map.beta_dual).map_err(|e| e.to_string())?;
    Ok(json!({
        "map": map,
        "involution_residual": (back - beta).abs(),
    }))
}

fn export(r: Result<Value, String>) -> Result<String, JsError> {
    r.map(|v| v.to_string()).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = boundaryValues)]
pub fn boundary_values(n: u32, m: u32, include_unphysical: bool) -> Result<String, JsError> {
    export(boundary_report(n, m, include_unphysical))
}

#[wasm_bindgen(js_name = sheetTable)]
pub fn sheet_table(n: u32, m: u32, series: &str, big_m: i32) -> Result<String, JsError> {
    export(sheet_report(n, m, series, big_m))
}

#[wasm_bindgen(js_name = dualityMap)]
pub fn duality_map(model: &str, beta: f64) -> Result<String, JsError> {
    export(duality_report(model, beta))
}
