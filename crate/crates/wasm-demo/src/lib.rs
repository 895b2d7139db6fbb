//! Three operations exposed to JavaScript. Each takes plain strings and
//! returns a JSON string; the `*_json` functions are the same calls without
//! the wasm-bindgen error wrapper, so they can be tested natively.

use coevent_engine::{run_scheme, Scheme};
use measure_core::{io, parse_rational, registry, HistoriesTheory};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn theory(system: &str) -> Result<HistoriesTheory, String> {
    let text = system.trim();
    if text.starts_with('{') {
        io::parse_system(text).map_err(|e| e.to_string())
    } else {
        registry::by_name(text).map_err(|e| e.to_string())
    }
}

/// Built-in system names, in registry order.
#[wasm_bindgen]
pub fn systems() -> String {
    serde_json::to_string(&registry::names()).expect("names serialize")
}

pub fn nullsets_json(system: &str) -> Result<String, String> {
    let t = theory(system)?;
    let nulls = t.enumerate_null_sets().map_err(|e| e.to_string())?;
    let names: Vec<String> = nulls.iter().map(|z| t.space().describe(*z)).collect();
    Ok(json!({ "histories": t.space().labels(), "null_sets": names }).to_string())
}

pub fn coevents_json(system: &str, scheme: &str) -> Result<String, String> {
    let t = theory(system)?;
    let s = Scheme::parse(scheme).map_err(|e| e.to_string())?;
    let r = match &s {
        Scheme::Approximate { epsilon } => {
            let eps = parse_rational(epsilon).map_err(|e| e.to_string())?;
            cournot::approx_scheme(&t, &eps).map_err(|e| e.to_string())?
        }
        _ => run_scheme(&t, &s).map_err(|e| e.to_string())?,
    };
    let rows: Vec<_> = r
        .coevents
        .iter()
        .map(|c| json!({ "name": c.to_string(), "dual": c.describe(), "degree": c.degree(), "unital": c.is_unital() }))
        .collect();
    Ok(json!({ "scheme": r.scheme.to_string(), "coevents": rows }).to_string())
}

pub fn coin_test_json(p: &str, n: usize, eps: &str, observed: usize) -> Result<String, String> {
    let p = parse_rational(p).map_err(|e| e.to_string())?;
    let eps = parse_rational(eps).map_err(|e| e.to_string())?;
    let model = cournot::CoinModel::new(p, n, eps).map_err(|e| e.to_string())?;
    let out = cournot::hypothesis_test(&model, observed).map_err(|e| e.to_string())?;
    Ok(serde_json::to_string(&out).expect("outcomes serialize"))
}

#[wasm_bindgen]
pub fn nullsets(system: &str) -> Result<String, JsError> {
    nullsets_json(system).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn coevents(system: &str, scheme: &str) -> Result<String, JsError> {
    coevents_json(system, scheme).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = coinTest)]
pub fn coin_test(p: &str, n: usize, eps: &str, observed: usize) -> Result<String, JsError> {
    coin_test_json(p, n, eps, observed).map_err(|e| JsError::new(&e))
}
