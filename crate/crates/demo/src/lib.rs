//! Browser bindings. Every entry point takes and returns JSON text so the
//! page can stay plain JavaScript.

use fourlist::corpus;
use fourlist::discharging::{
    apply_rules, check_charge_identity, threshold_arithmetic, verify_claim_bounds,
    DischargeParams, Rule1Mode,
};
use fourlist::io::{parse_embedding, to_json, EmbeddingDocument, Instance};
use fourlist::rational;
use serde_json::json;
use wasm_bindgen::prelude::*;

fn instance(doc: &str) -> Result<Instance, String> {
    parse_embedding(doc)
        .and_then(|d| d.validate())
        .map_err(|e| e.to_string())
}

pub fn fixture_names_json() -> String {
    let names: Vec<&str> = corpus::all().iter().map(|f| f.name).collect();
    to_json(&names)
}

pub fn fixture_json(name: &str) -> Result<String, String> {
    corpus::by_name(name)
        .map(|f| EmbeddingDocument::from_fixture(&f).to_json())
        .ok_or_else(|| format!("no fixture named {name:?}"))
}

/// Faces, χ and genus of a document.
pub fn faces_json(doc: &str) -> Result<String, String> {
    let g = instance(doc)?.graph;
    let faces: Vec<_> = g
        .faces()
        .iter()
        .map(|f| json!({ "length": f.len(), "walk": f.vertices }))
        .collect();
    Ok(to_json(&json!({
        "n": g.vertex_count(),
        "edges": g.edge_count(),
        "faces": faces,
        "genus": g.genus(),
    })))
}

/// Runs the rules at `gamma` (a `p/q` string) and checks the claims.
pub fn discharge_json(doc: &str, gamma: &str, strict: bool) -> Result<String, String> {
    let inst = instance(doc)?;
    let p = DischargeParams::new(rational::parse(gamma)?).map_err(|e| e.to_string())?;
    let mode = if strict {
        Rule1Mode::Strict
    } else {
        Rule1Mode::PerStamen
    };
    let (g, h) = (&inst.graph, &inst.h);
    let d = apply_rules(g, h, &p, mode);
    let identity = check_charge_identity(&d.initial, g.euler_characteristic(), h.vertex_count(), &p);
    let claims = verify_claim_bounds(g, h, &p, &d.final_, None);
    Ok(to_json(&json!({
        "identity": identity,
        "claims": claims.classes,
        "all_pass": claims.all_pass,
        "vertex_minimum": claims.vertex_minimum.as_ref().map(rational::format),
        "transfers": d.transfers,
        "final": d.final_,
    })))
}

/// The per-class thresholds and their minimum at `gamma`.
pub fn thresholds_json(gamma: &str) -> Result<String, String> {
    Ok(to_json(&threshold_arithmetic(&rational::parse(gamma)?)))
}

fn js(r: Result<String, String>) -> Result<String, JsError> {
    r.map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn fixture_names() -> String {
    fixture_names_json()
}

#[wasm_bindgen]
pub fn fixture(name: &str) -> Result<String, JsError> {
    js(fixture_json(name))
}

#[wasm_bindgen]
pub fn faces(doc: &str) -> Result<String, JsError> {
    js(faces_json(doc))
}

#[wasm_bindgen]
pub fn discharge(doc: &str, gamma: &str, strict: bool) -> Result<String, JsError> {
    js(discharge_json(doc, gamma, strict))
}

#[wasm_bindgen]
pub fn thresholds(gamma: &str) -> Result<String, JsError> {
    js(thresholds_json(gamma))
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::Value;

    #[test]
    fn round_trip_through_text() {
        let doc = fixture_json("cube_Hside").unwrap();
        let faces: Value = serde_json::from_str(&faces_json(&doc).unwrap()).unwrap();
        assert_eq!(faces["genus"]["chi"], 2);
        let d: Value = serde_json::from_str(&discharge_json(&doc, "4/195", false).unwrap()).unwrap();
        assert_eq!(d["identity"]["holds"], true);
        assert_eq!(d["all_pass"], true);
        assert_eq!(d["vertex_minimum"], "4/65");
        let t: Value = serde_json::from_str(&thresholds_json("4/195").unwrap()).unwrap();
        assert_eq!(t["minimum"], "4/65");
    }

    #[test]
    fn errors_are_text() {
        assert!(faces_json("{").is_err());
        assert!(thresholds_json("0.5").is_err());
        assert!(fixture_json("nope").is_err());
    }
}
