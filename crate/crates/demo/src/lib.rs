//! Browser bindings for the `segre` toolkit.
//!
//! Each operation has a plain Rust form returning a JSON string and a thin
//! `wasm_bindgen` wrapper that turns errors into JS exceptions.

use num_complex::Complex64 as C64;
use segre::ideal::{mode_ideal, render, segre_ideal, RenderFormat};
use segre::measures::{concurrence_bipartite, measure_multipartite, three_qubit_explicit};
use segre::separability::analyze;
use segre::tensor::{make_state, named_state, NamedState, NormPolicy};
use segre::{MeasureConfig, PureStateTensor, Shape, DEFAULT_EPS};
use serde_json::json;
use wasm_bindgen::prelude::*;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn two_qubit(p: f64) -> Result<PureStateTensor, String> {
    if !(0.0..=1.0).contains(&p) {
        return Err(format!("p must lie in [0, 1], got {p}"));
    }
    let z = C64::new(0.0, 0.0);
    let amps = vec![C64::new(p.sqrt(), 0.0), z, z, C64::new((1.0 - p).sqrt(), 0.0)];
    make_state(Shape::new(vec![2, 2]).map_err(err)?, amps, NormPolicy::AutoNormalize).map_err(err)
}

/// Concurrence of `sqrt(p)|11> + sqrt(1-p)|22>` at `p`, with the full curve
/// sampled at `samples` evenly spaced points.
pub fn two_qubit_family(p: f64, samples: usize) -> Result<String, String> {
    let cfg = MeasureConfig::default();
    let at = |p: f64| -> Result<f64, String> { Ok(concurrence_bipartite(&two_qubit(p)?, &cfg).map_err(err)?.value) };
    let n = samples.clamp(2, 2001);
    let curve = (0..n)
        .map(|i| {
            let q = i as f64 / (n - 1) as f64;
            at(q).map(|c| [q, c])
        })
        .collect::<Result<Vec<_>, _>>()?;
    let state = two_qubit(p)?;
    let report = analyze(&state, DEFAULT_EPS, &cfg).map_err(err)?;
    Ok(json!({
        "p": p,
        "concurrence": at(p)?,
        "closed_form": 2.0 * (p * (1.0 - p)).sqrt(),
        "minor": (state.amps()[0] * state.amps()[3] - state.amps()[1] * state.amps()[2]).re,
        "separable": report.fully_separable,
        "curve": curve,
    })
    .to_string())
}

fn mix(ghz: f64, w: f64, product: f64, phase: f64) -> Result<PureStateTensor, String> {
    let g = named_state(&NamedState::Ghz(3)).map_err(err)?;
    let v = named_state(&NamedState::W(3)).map_err(err)?;
    let plus = vec![C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0); 2];
    let pr = named_state(&NamedState::Product(vec![plus.clone(), plus.clone(), plus])).map_err(err)?;
    let rot = C64::from_polar(1.0, phase);
    let amps = (0..8).map(|i| ghz * g.amps()[i] + rot * w * v.amps()[i] + product * pr.amps()[i]).collect();
    make_state(Shape::new(vec![2, 2, 2]).map_err(err)?, amps, NormPolicy::AutoNormalize).map_err(err)
}

/// Normalized `ghz|GHZ> + e^{i phase} w|W> + product|+++>` on three qubits:
/// the separability report, the explicit three-qubit value, and E along the
/// path `cos t |GHZ> + sin t |W>`.
pub fn three_qubit_mix(ghz: f64, w: f64, product: f64, phase: f64) -> Result<String, String> {
    let cfg = MeasureConfig::default();
    let state = mix(ghz, w, product, phase)?;
    let report = analyze(&state, DEFAULT_EPS, &cfg).map_err(err)?;
    let explicit = three_qubit_explicit(&state, &cfg).map_err(err)?.value;
    let path = (0..=90)
        .map(|i| {
            let t = i as f64 * std::f64::consts::FRAC_PI_2 / 90.0;
            let s = mix(t.cos(), t.sin(), 0.0, phase)?;
            Ok([t, measure_multipartite(&s, &cfg).map_err(err)?.value])
        })
        .collect::<Result<Vec<_>, String>>()?;
    let amps: Vec<[f64; 2]> = state.amps().iter().map(|a| [a.re, a.im]).collect();
    Ok(json!({
        "amps": amps,
        "report": report,
        "explicit": explicit,
        "path": path,
    })
    .to_string())
}

/// Generators of the ideal for `dims` (comma separated). `target` is `segre`
/// or a 1-based mode; `format` is `plain`, `latex` or `json`.
pub fn ideal_generators(dims: &str, target: &str, format: &str) -> Result<String, String> {
    let dims = dims
        .split(',')
        .map(|d| d.trim().parse::<usize>().map_err(|e| format!("bad dimension `{d}`: {e}")))
        .collect::<Result<Vec<_>, _>>()?;
    let shape = Shape::new(dims).map_err(err)?;
    if shape.total_dim() > 4096 {
        return Err("total dimension above 4096 is too large to list in the browser".into());
    }
    let fmt: RenderFormat = format.parse().map_err(err)?;
    let ideal = match target.trim() {
        "segre" => segre_ideal(&shape),
        j => mode_ideal(&shape, j.parse().map_err(|_| format!("target must be `segre` or a mode, got `{j}`"))?),
    }
    .map_err(err)?;
    Ok(render(&ideal, fmt))
}

#[wasm_bindgen(js_name = twoQubitFamily)]
pub fn two_qubit_family_js(p: f64, samples: usize) -> Result<String, JsValue> {
    two_qubit_family(p, samples).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = threeQubitMix)]
pub fn three_qubit_mix_js(ghz: f64, w: f64, product: f64, phase: f64) -> Result<String, JsValue> {
    three_qubit_mix(ghz, w, product, phase).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = idealGenerators)]
pub fn ideal_generators_js(dims: &str, target: &str, format: &str) -> Result<String, JsValue> {
    ideal_generators(dims, target, format).map_err(|e| JsValue::from_str(&e))
}
