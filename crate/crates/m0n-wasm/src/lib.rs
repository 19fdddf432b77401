//! Browser bindings for the boundary-divisor calculus.
//!
//! Each exported function takes plain strings, runs one core operation, and
//! returns a JSON envelope string: `{"status": "ok", ...}` on success or
//! `{"status": "error", "error": {"code", "message"}}` on failure.  Nothing
//! throws across the boundary, so the page can treat every call the same
//! way.  The functions are ordinary Rust functions as well, so the host test
//! suite exercises them without a wasm toolchain.

use m0n_core::parse::{parse_curve, parse_divisor, parse_tree, ParsedCurve};
use m0n_core::rational::{format_q, parse_q, Q};
use m0n_core::{
    chamber_lookup, hassett_reduce, intersection_table, nef_check, normal_form, pair_curve,
    pair_fcurve, veronese_reduce, Error, Result, SymmetricDivisor, WeightData,
};
use wasm_bindgen::prelude::wasm_bindgen;

/// Wraps an operation's payload in the status envelope.
fn envelope(outcome: Result<serde_json::Value>) -> String {
    let value = match outcome {
        Ok(mut payload) => {
            payload["status"] = serde_json::Value::from("ok");
            payload
        }
        Err(error) => serde_json::json!({
            "status": "error",
            "error": { "code": error.code(), "message": error.to_string() },
        }),
    };
    value.to_string()
}

/// Normal form and symmetric coordinates of a divisor expression, plus its
/// nefness and chamber when there are seven marks.  The symmetric part is
/// reported as `null` (with the reason) when the class has no symmetric
/// expression.
#[wasm_bindgen]
pub fn describe_divisor(n: u8, expression: &str) -> String {
    envelope((|| {
        let class = parse_divisor(n, expression)?;
        let reduced = normal_form(&class)?;
        let mut payload = serde_json::json!({
            "n": n,
            "input": expression,
            "normal_form": reduced.to_json(),
            "normal_form_text": reduced.to_string(),
        });
        match SymmetricDivisor::from_class(&class) {
            Ok(symmetric) => {
                let coords: serde_json::Map<String, serde_json::Value> = symmetric
                    .coeffs()
                    .iter()
                    .enumerate()
                    .map(|(i, coeff)| (format!("B{}", i + 2), format_q(coeff).into()))
                    .collect();
                payload["symmetric"] = coords.into();
                if symmetric.n() == 7 {
                    payload["nef"] = nef_check(&symmetric)?.into();
                    payload["chamber"] = chamber_lookup(&symmetric)?.to_json();
                }
            }
            Err(error) => {
                payload["symmetric"] = serde_json::Value::Null;
                payload["symmetric_error"] = error.to_string().into();
            }
        }
        Ok(payload)
    })())
}

/// Intersection number of a curve (explicit `F{..}{..}{..}{..}` or a class
/// name like `F1,1,2,3`, `C5`, `A`) with a divisor expression.
#[wasm_bindgen]
pub fn pair_divisor(n: u8, curve: &str, divisor: &str) -> String {
    envelope((|| {
        let class = parse_divisor(n, divisor)?;
        let value = match parse_curve(n, curve)? {
            ParsedCurve::Explicit(fcurve) => pair_fcurve(&fcurve, &class)?,
            ParsedCurve::Class(curve_class) => {
                let symmetric = SymmetricDivisor::from_class(&class).map_err(|error| {
                    Error::InvalidArgument(format!(
                        "{error}; curve classes pair with symmetric divisors only — \
                         use an explicit partition like F{{1}}{{2}}{{3}}{{4,5,6,7}}"
                    ))
                })?;
                pair_curve(&curve_class, &symmetric)?
            }
        };
        Ok(serde_json::json!({
            "n": n,
            "curve": curve,
            "divisor": divisor,
            "value": format_q(&value),
        }))
    })())
}

/// Reduces a marked tree under a weight assignment.  `mode` is `"hassett"`
/// or `"veronese"`; `weights` is comma-separated, a single value applying to
/// every mark.  `gamma` and `degree` only matter in veronese mode.
#[wasm_bindgen]
pub fn reduce_tree(tree: &str, mode: &str, weights: &str, gamma: &str, degree: u32) -> String {
    envelope((|| {
        let parsed = parse_tree(tree.trim())?;
        let weight_vec = broadcast_weights(weights, parsed.n() as usize)?;
        let report = match mode {
            "hassett" => hassett_reduce(&parsed, &WeightData::hassett(weight_vec)?)?,
            "veronese" => {
                let data = WeightData::veronese(weight_vec, parse_q(gamma)?, degree)?;
                veronese_reduce(&parsed, &data)?
            }
            other => {
                return Err(Error::InvalidArgument(format!(
                    "mode must be \"hassett\" or \"veronese\", not {other:?}"
                )));
            }
        };
        let mut payload = report.to_json();
        payload["text"] = report.to_string().into();
        Ok(payload)
    })())
}

/// The full table of curve-class pairings against the symmetric generators.
#[wasm_bindgen]
pub fn pairing_table(n: u8) -> String {
    envelope((|| {
        let table = intersection_table(n)?;
        Ok(table.to_json())
    })())
}

/// One weight per mark from a comma-separated list, broadcasting a single
/// value across all marks.
fn broadcast_weights(weights: &str, marks: usize) -> Result<Vec<Q>> {
    let parsed: Vec<Q> = weights
        .split(',')
        .map(|piece| parse_q(piece.trim()))
        .collect::<Result<_>>()?;
    if parsed.len() == 1 {
        Ok(vec![parsed[0].clone(); marks])
    } else if parsed.len() == marks {
        Ok(parsed)
    } else {
        Err(Error::InvalidWeights(format!(
            "{} weights for {marks} marks (give one value or one per mark)",
            parsed.len()
        )))
    }
}
