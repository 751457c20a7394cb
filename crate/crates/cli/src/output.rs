use std::fmt::Write as _;

use segre::measures::Convention;
use segre::{MeasureResult, SeparabilityReport, C64};
use serde::Serialize;
use serde_json::Value;

/// Twelve significant digits; fixed notation in `[1e-3, 1e6)`, scientific
/// otherwise.
pub fn fmt12(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { "0".into() } else { x.to_string() };
    }
    let mag = x.abs().log10().floor() as i32;
    if (-3..6).contains(&mag) {
        format!("{:.*}", (11 - mag) as usize, x)
    } else {
        format!("{x:.11e}")
    }
}

pub fn fmt_complex(z: C64) -> String {
    let sign = if z.im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", fmt12(z.re), fmt12(z.im.abs()))
}

fn round12(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

fn round_value(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| serde_json::Number::from_f64(round12(x)))
            .map(Value::Number)
            .unwrap_or(Value::Null),
        Value::Array(a) => Value::Array(a.into_iter().map(round_value).collect()),
        Value::Object(o) => Value::Object(o.into_iter().map(|(k, v)| (k, round_value(v))).collect()),
        other => other,
    }
}

/// Serializes `value` with every float rounded to twelve significant digits.
/// Keys keep struct declaration order.
pub fn rounded_json<T: Serialize>(value: &T) -> Value {
    round_value(serde_json::to_value(value).expect("report serializes"))
}

fn convention_name(c: Convention) -> &'static str {
    match c {
        Convention::Concurrence => "concurrence, mode-1 minors",
        Convention::AllModes => "all-modes sum",
        Convention::ThreeQubitExplicit => "three-qubit expansion",
    }
}

fn measure_line(out: &mut String, m: &MeasureResult) {
    let _ = writeln!(out, "E = {}  ({}, N = {})", fmt12(m.value), convention_name(m.convention), fmt12(m.config.norm_const));
    for p in &m.per_mode {
        let _ = writeln!(out, "    mode {}: 4*sum|minor|^2 = {}", p.mode, fmt12(p.partial));
    }
}

pub fn human_report(r: &SeparabilityReport) -> String {
    let mut out = String::new();
    let dims = r.dims.iter().map(usize::to_string).collect::<Vec<_>>().join(",");
    let _ = writeln!(out, "dims: ({dims})  m = {}", r.dims.len());
    if let Some(c) = &r.concurrence {
        measure_line(&mut out, c);
    }
    measure_line(&mut out, &r.measure_e);
    let _ = writeln!(out, "fully separable: {}", if r.fully_separable { "yes" } else { "no" });
    let _ = writeln!(
        out,
        "on Segre variety: {}  (max |minor| = {})",
        if r.on_segre_variety { "yes" } else { "no" },
        fmt12(r.max_minor_modulus)
    );
    let _ = writeln!(out, "bipartitions (tolerance {:e}):", r.tolerance);
    for c in &r.per_bipartition {
        let _ = writeln!(
            out,
            "  {:<24} {:<10}  sigma2 = {:<20} max|minor| = {}",
            c.partition.to_string(),
            if c.factorable { "factors" } else { "entangled" },
            fmt12(c.second_singular_value),
            fmt12(c.max_minor_modulus)
        );
    }
    if let Some(err) = &r.consistency_error {
        let _ = writeln!(out, "WARNING: inconsistent verdicts: {err}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt12(1.0), "1.00000000000");
        assert_eq!(fmt12(std::f64::consts::FRAC_1_SQRT_2), "0.707106781187");
        assert_eq!(fmt12(3f64.sqrt()), "1.73205080757");
        assert_eq!(fmt12(1.5e-17), "1.50000000000e-17");
        assert_eq!(fmt12(0.0), "0");
        assert_eq!(fmt_complex(C64::new(0.5, 0.0)), "0.500000000000+0i");
        assert_eq!(fmt_complex(C64::new(0.5, -0.25)), "0.500000000000-0.250000000000i");
    }

    #[test]
    fn json_rounding() {
        let v = rounded_json(&serde_json::json!({"x": 0.1 + 0.2, "n": 3, "v": [1.0 / 3.0]}));
        assert_eq!(v["x"], serde_json::json!(0.3));
        assert_eq!(v["n"], 3);
        assert_eq!(v["v"][0], serde_json::json!(0.333333333333));
    }
}
