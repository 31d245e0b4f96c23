//! Browser bindings: tube metrics, the monodromy family, and validate/wind on pasted text.
//! Each call returns a JSON string; errors come back as `{"error": ...}`.

use heegaard::bounds::{penner_family, tube_metrics, TubeInput};
use heegaard::{check_weak_admissibility, parse_diagram, serialize, wind};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn given(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

fn render(v: Result<Value, String>) -> String {
    v.unwrap_or_else(|e| json!({ "error": e })).to_string()
}

/// Any two of the four inputs; pass NaN for the unknowns.
#[wasm_bindgen]
pub fn tube(r: f64, l: f64, volume: f64, wrist: f64) -> String {
    let input = TubeInput { r: given(r), l: given(l), volume: given(volume), wrist: given(wrist), phi: None };
    render(tube_metrics(&input).map_err(|e| e.to_string()).map(|t| json!(t)))
}

#[wasm_bindgen]
pub fn penner(n: u32, genus: u32) -> String {
    render(penner_family(n as u64, genus, None).map_err(|e| e.to_string()).map(|p| {
        json!({
            "n": p.n,
            "genus": p.genus,
            "spectral_radius": p.spectral_radius,
            "radius_exact": p.eigenvalues[0].to_string(),
            "entropy_floor": p.entropy_floor,
            "matrix": p.homology_matrix.to_string(),
        })
    }))
}

/// Validates pasted text; with `do_wind`, also winds and returns the new diagram.
#[wasm_bindgen]
pub fn validate_text(text: &str, do_wind: bool) -> String {
    let run = || -> Result<Value, String> {
        let d = parse_diagram(text).map_err(|e| e.to_string())?;
        let report = d.validate();
        let mut out = json!({ "valid": report.is_valid(), "genus": d.genus, "report": report });
        if !report.is_valid() {
            return Ok(out);
        }
        out["admissible"] = json!(check_weak_admissibility(&d).map_err(|e| e.to_string())?.admissible);
        if do_wind {
            let (w, r) = wind(&d).map_err(|e| e.to_string())?;
            out["wind"] = json!(r);
            out["wound"] = json!(serialize(&w));
        }
        Ok(out)
    };
    render(run())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bindings_answer() {
        let v: Value = serde_json::from_str(&tube(1f64.asinh(), 2.0, f64::NAN, f64::NAN)).unwrap();
        assert!((v["volume"].as_f64().unwrap() - 2.0 * std::f64::consts::PI).abs() < 1e-12);
        let v: Value = serde_json::from_str(&tube(1.0, f64::NAN, f64::NAN, f64::NAN)).unwrap();
        assert!(v["error"].is_string());

        let v: Value = serde_json::from_str(&penner(1, 2)).unwrap();
        assert_eq!(v["radius_exact"], "(3+√5)/2");

        let text = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures/s1s2.hd")).unwrap();
        let v: Value = serde_json::from_str(&validate_text(&text, true)).unwrap();
        assert_eq!(v["valid"], true);
        assert_eq!(v["admissible"], false);
        assert_eq!(v["wind"]["total_new"], 4);
        let w: Value = serde_json::from_str(&validate_text(v["wound"].as_str().unwrap(), false)).unwrap();
        assert_eq!(w["admissible"], true);

        let v: Value = serde_json::from_str(&validate_text("nonsense", false)).unwrap();
        assert!(v["error"].as_str().unwrap().contains("E0"));
    }
}
