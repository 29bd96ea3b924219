//! Exact values as JSON. Integers become decimal strings, rationals
//! `{"num", "den"}` objects, polynomials ascending coefficient arrays.

use bmy_core::algebra::LimitAtInfinity;
use bmy_core::{BigInt, BigRational, DivisorClass, IntPolynomial, RatPolynomial, RationalFunction};
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

pub fn int(v: &BigInt) -> Value {
    Value::String(v.to_string())
}

pub fn uint(v: impl Into<u128>) -> Value {
    Value::String(v.into().to_string())
}

/// `{"num", "den"}` only; used inside coefficient arrays.
pub fn rational_exact(v: &BigRational) -> Value {
    json!({ "num": v.numer().to_string(), "den": v.denom().to_string() })
}

/// `{"num", "den", "approx"}`; `approx` is a rounded convenience copy.
pub fn rational(v: &BigRational) -> Value {
    json!({
        "num": v.numer().to_string(),
        "den": v.denom().to_string(),
        "approx": approx(v),
    })
}

/// Rounded to six decimal places, half away from zero.
pub fn approx(v: &BigRational) -> String {
    let scale = BigInt::from(1_000_000u32);
    let (q, r) = (v.numer().abs() * &scale).div_rem(v.denom());
    let q = if r * 2 >= *v.denom() { q + 1 } else { q };
    let (whole, frac) = q.div_rem(&scale);
    let sign = if v.is_negative() && !(whole.is_zero() && frac.is_zero()) {
        "-"
    } else {
        ""
    };
    format!("{sign}{whole}.{frac:0>6}")
}

pub fn int_poly(p: &IntPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

pub fn rat_poly(p: &RatPolynomial) -> Value {
    Value::Array(p.coeffs().iter().map(rational_exact).collect())
}

pub fn rational_function(r: &RationalFunction) -> Value {
    json!({
        "numerator": int_poly(r.numerator()),
        "denominator": int_poly(r.denominator()),
        "display": r.to_string(),
    })
}

pub fn limit(l: &LimitAtInfinity) -> Value {
    match l {
        LimitAtInfinity::Zero => {
            json!({ "kind": "finite", "value": rational(&BigRational::zero()) })
        }
        LimitAtInfinity::Finite(v) => json!({ "kind": "finite", "value": rational(v) }),
        LimitAtInfinity::PosInfinity => json!({ "kind": "pos_infinity" }),
        LimitAtInfinity::NegInfinity => json!({ "kind": "neg_infinity" }),
    }
}

pub fn divisor_class(c: &DivisorClass<BigInt>) -> Value {
    json!({ "h": int(&c.h), "e": int(&c.e), "points": int(&c.n) })
}

/// `num/den`, or just `num` when the denominator is one.
pub fn rational_text(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// `(path, text)` pairs for the table and CSV renderers. Rational objects
/// collapse to `num/den`; scalar arrays to a bracketed list.
pub fn flatten(value: &Value) -> Vec<(String, String)> {
    let mut out = Vec::new();
    flatten_into(String::new(), value, &mut out);
    out
}

fn flatten_into(path: String, value: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if path.is_empty() {
            key.to_string()
        } else {
            format!("{path}.{key}")
        }
    };
    match value {
        Value::Object(map) => {
            if let (Some(Value::String(num)), Some(Value::String(den))) =
                (map.get("num"), map.get("den"))
            {
                let text = if den == "1" {
                    num.clone()
                } else {
                    format!("{num}/{den}")
                };
                out.push((path, text));
                return;
            }
            for (k, v) in map {
                flatten_into(join(k), v, out);
            }
        }
        Value::Array(items) if items.iter().all(is_leaf) => {
            let parts: Vec<String> = items.iter().map(leaf_text).collect();
            out.push((path, format!("[{}]", parts.join(", "))));
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten_into(format!("{path}[{i}]"), v, out);
            }
        }
        leaf => out.push((path, leaf_text(leaf))),
    }
}

fn is_leaf(v: &Value) -> bool {
    match v {
        Value::Object(map) => map.contains_key("num") && map.contains_key("den"),
        Value::Array(_) => false,
        _ => true,
    }
}

fn leaf_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Object(_) => flatten(v).pop().map(|(_, t)| t).unwrap_or_default(),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn approx_rounds_half_away_from_zero() {
        assert_eq!(approx(&rat(57294, 7293)), "7.856026");
        assert_eq!(approx(&rat(1, 2_000_000)), "0.000001");
        assert_eq!(approx(&rat(-1, 2_000_000)), "-0.000001");
        assert_eq!(approx(&rat(-1, 3_000_000)), "0.000000");
        assert_eq!(approx(&rat(12, 1)), "12.000000");
        assert_eq!(approx(&rat(-7, 4)), "-1.750000");
    }

    #[test]
    fn flatten_collapses_rationals_and_lists() {
        let v = json!({
            "ratio": rational(&rat(3, 4)),
            "poly": ["1", "0", "2"],
            "rows": [{ "p": "5" }, { "p": "11" }],
            "ok": true,
        });
        assert_eq!(
            flatten(&v),
            vec![
                ("ok".to_string(), "true".to_string()),
                ("poly".to_string(), "[1, 0, 2]".to_string()),
                ("ratio".to_string(), "3/4".to_string()),
                ("rows[0].p".to_string(), "5".to_string()),
                ("rows[1].p".to_string(), "11".to_string()),
            ]
        );
    }
}
