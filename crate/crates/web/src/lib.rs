//! Browser bindings. Each export takes plain numbers and strings and
//! returns a JSON string; instances are cached per `(p, s, m)`.

use std::cell::RefCell;
use std::collections::HashMap;
use std::rc::Rc;

use serde::Serialize;
use trace_goppa::distance::{self, DistanceResult, Reconciliation};
use trace_goppa::trace::{bound_calculators, BoundSummary, Window};
use trace_goppa::{CodeKind, TraceGoppaInstance};
use wasm_bindgen::prelude::*;

/// Largest field order the page will build.
pub const MAX_DEMO_ORDER: u64 = 1 << 12;

thread_local! {
    static CACHE: RefCell<HashMap<(u32, u32, u32), Rc<TraceGoppaInstance>>> = RefCell::new(HashMap::new());
}

fn instance(p: u32, s: u32, m: u32) -> Result<Rc<TraceGoppaInstance>, String> {
    if let Some(inst) = CACHE.with(|c| c.borrow().get(&(p, s, m)).cloned()) {
        return Ok(inst);
    }
    let order = (p as u64).checked_pow(s.saturating_mul(m)).unwrap_or(u64::MAX);
    if order > MAX_DEMO_ORDER {
        return Err(format!("field order {p}^{} exceeds the demo limit {MAX_DEMO_ORDER}", s * m));
    }
    let inst = Rc::new(TraceGoppaInstance::build(p, s, m).map_err(|e| e.to_string())?);
    CACHE.with(|c| c.borrow_mut().insert((p, s, m), inst.clone()));
    Ok(inst)
}

fn kind(code: &str) -> Result<CodeKind, String> {
    code.parse::<CodeKind>().map_err(|e| e.to_string())
}

fn json<T: Serialize>(v: &T) -> Result<String, String> {
    serde_json::to_string(v).map_err(|e| e.to_string())
}

#[derive(Serialize)]
struct CodeSummary {
    code: &'static str,
    dim: usize,
    window: Window,
}

#[derive(Serialize)]
struct Summary {
    q: u64,
    n: usize,
    a: u64,
    b: u64,
    codes: Vec<CodeSummary>,
    bounds: BoundSummary,
}

pub fn summary_json(p: u32, s: u32, m: u32) -> Result<String, String> {
    let inst = instance(p, s, m)?;
    let b = inst.b as i64;
    let codes = CodeKind::ALL
        .into_iter()
        .map(|k| {
            Ok(CodeSummary {
                code: k.label(),
                dim: inst.code(k).dim(),
                window: inst.window(k, -b, 4 * b).map_err(|e| e.to_string())?,
            })
        })
        .collect::<Result<Vec<_>, String>>()?;
    json(&Summary {
        q: inst.q(),
        n: inst.n(),
        a: inst.a,
        b: inst.b,
        codes,
        bounds: bound_calculators(p, s, m).map_err(|e| e.to_string())?,
    })
}

#[derive(Serialize)]
struct Strip {
    code: &'static str,
    jmin: i64,
    contained: Vec<bool>,
}

/// Dual membership of `ev(X^j / g^e)` for each `j` in `[jmin, jmax]`.
pub fn membership_json(p: u32, s: u32, m: u32, code: &str, jmin: i32, jmax: i32) -> Result<String, String> {
    let inst = instance(p, s, m)?;
    let k = kind(code)?;
    if jmax < jmin || jmax - jmin > 4096 {
        return Err("range must be nonempty and at most 4096 long".into());
    }
    let contained = (jmin..=jmax)
        .map(|j| inst.dual_contains(k, j as i64).map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    json(&Strip { code: k.label(), jmin: jmin as i64, contained })
}

#[derive(Serialize)]
struct DistanceView {
    code: &'static str,
    dim: usize,
    result: DistanceResult,
    reconcile: Reconciliation,
}

/// Exact distance for small dimensions, otherwise a seeded search.
pub fn distance_json(p: u32, s: u32, m: u32, code: &str, iterations: u32, seed: u32) -> Result<String, String> {
    let inst = instance(p, s, m)?;
    let k = kind(code)?;
    let c = inst.code(k);
    let result = match distance::exact_min_distance(c, 20) {
        Err(trace_goppa::Error::DimensionTooLarge { .. }) => {
            distance::low_weight_search(c, iterations as u64, seed as u64)
        }
        other => other,
    }
    .map_err(|e| e.to_string())?;
    let reconcile = distance::reconcile(&bound_calculators(p, s, m).map_err(|e| e.to_string())?, &result);
    json(&DistanceView { code: k.label(), dim: c.dim(), result, reconcile })
}

#[wasm_bindgen]
pub fn summary(p: u32, s: u32, m: u32) -> Result<String, JsError> {
    summary_json(p, s, m).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn membership(p: u32, s: u32, m: u32, code: &str, jmin: i32, jmax: i32) -> Result<String, JsError> {
    membership_json(p, s, m, code, jmin, jmax).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn min_distance(p: u32, s: u32, m: u32, code: &str, iterations: u32, seed: u32) -> Result<String, JsError> {
    distance_json(p, s, m, code, iterations, seed).map_err(|e| JsError::new(&e))
}
