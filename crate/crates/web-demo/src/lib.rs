//! WebAssembly bindings for a single-page demo. Three operations are
//! exposed: a playground session speaking the `ga-playground/1` protocol,
//! an interpolation path comparing the motor blend with lerp + slerp +
//! lerp, and the decomposition of a motor into translation, rotation and
//! scale. All exchanged values are JSON strings or flat number arrays so
//! the page needs no glue beyond what `wasm-bindgen` generates.

use cga_motion::geom::{Pose, Vec3};
use cga_motion::interp::{preprocess_pose, InterpolationContext};
use cga_motion::motor::{extract_trd, Motor};
use cga_motion::playground::Session;
use serde::Serialize;
use wasm_bindgen::prelude::*;

/// One playground session held by the page.
#[wasm_bindgen]
#[derive(Default)]
pub struct Playground {
    session: Session,
}

#[wasm_bindgen]
impl Playground {
    #[wasm_bindgen(constructor)]
    pub fn new() -> Self {
        Self::default()
    }

    /// Handles one JSON request and returns the JSON response.
    pub fn request(&mut self, json: &str) -> String {
        self.session.handle_json(json)
    }
}

/// Positions of `point` under both interpolations for `samples + 1`
/// alphas, flattened as `[gx, gy, gz, sx, sy, sz, ...]` where `g` is the
/// motor blend and `s` the conventional blend.
pub fn path(pose_a: &Pose, pose_b: &Pose, point: Vec3, samples: usize) -> Result<Vec<f64>, String> {
    let a = preprocess_pose(pose_a).map_err(|e| e.to_string())?;
    let b = preprocess_pose(pose_b).map_err(|e| e.to_string())?;
    let mut ctx = InterpolationContext::new(a, b);
    let samples = samples.max(1);
    let mut out = Vec::with_capacity(6 * (samples + 1));
    for k in 0..=samples {
        let alpha = k as f64 / samples as f64;
        let g = ctx.apply_interpolated(alpha, point).map_err(|e| e.to_string())?;
        let s = pose_a.blend(pose_b, alpha).apply(point);
        out.extend_from_slice(&[g.x, g.y, g.z, s.x, s.y, s.z]);
    }
    Ok(out)
}

/// [`path`] with poses given as JSON `Pose` objects.
#[wasm_bindgen]
pub fn interpolation_path(
    pose_a: &str,
    pose_b: &str,
    x: f64,
    y: f64,
    z: f64,
    samples: usize,
) -> Result<Vec<f64>, JsError> {
    let parse = |s: &str| serde_json::from_str::<Pose>(s).map_err(|e| JsError::new(&e.to_string()));
    path(&parse(pose_a)?, &parse(pose_b)?, Vec3::new(x, y, z), samples).map_err(|e| JsError::new(&e))
}

#[derive(Serialize)]
struct Decomposition {
    ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pose: Option<Pose>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

/// Splits a motor given by its 16 even-grade coefficients into
/// translation, rotation and scale; returns JSON.
#[wasm_bindgen]
pub fn decompose_motor(coeffs: &[f64]) -> String {
    let result = <[f64; 16]>::try_from(coeffs)
        .map_err(|_| format!("expected 16 coefficients, got {}", coeffs.len()))
        .and_then(|c| extract_trd(&Motor(c)).map_err(|e| e.to_string()));
    let d = match result {
        Ok(pose) => Decomposition {
            ok: true,
            pose: Some(pose),
            error: None,
        },
        Err(e) => Decomposition {
            ok: false,
            pose: None,
            error: Some(e),
        },
    };
    serde_json::to_string(&d).expect("decomposition serializes")
}

/// The 16 coefficients of the motor for a pose given as JSON.
#[wasm_bindgen]
pub fn pose_to_motor(pose: &str) -> Result<Vec<f64>, JsError> {
    let pose: Pose = serde_json::from_str(pose).map_err(|e| JsError::new(&e.to_string()))?;
    cga_motion::motor::pose_motor(&pose)
        .map(|m| m.0.to_vec())
        .map_err(|e| JsError::new(&e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use cga_motion::geom::Quat;

    #[test]
    fn playground_round_trip() {
        let mut p = Playground::new();
        let r = p.request(r#"{"schema":"ga-playground/1","op":"create_primitive","primitive":{"type":"point","position":{"x":1,"y":2,"z":3}}}"#);
        let v: serde_json::Value = serde_json::from_str(&r).unwrap();
        assert_eq!(v["objects"][0]["kind"], "point");
    }

    #[test]
    fn path_endpoints_agree() {
        let a = Pose::IDENTITY;
        let b = Pose::new(
            Vec3::new(1.0, 0.0, 0.0),
            Quat::from_axis_angle(Vec3::new(0.0, 0.0, 1.0), 1.0),
            2.0,
        );
        let p = path(&a, &b, Vec3::new(0.5, 0.5, 0.0), 10).unwrap();
        assert_eq!(p.len(), 66);
        for chunk in [&p[0..6], &p[60..66]] {
            for i in 0..3 {
                assert!((chunk[i] - chunk[i + 3]).abs() < 1e-9);
            }
        }
    }

    #[test]
    fn decomposition_json() {
        let m = cga_motion::motor::pose_motor(&Pose::new(Vec3::new(1.0, 2.0, 3.0), Quat::IDENTITY, 2.0)).unwrap();
        let v: serde_json::Value = serde_json::from_str(&decompose_motor(&m.0)).unwrap();
        assert_eq!(v["ok"], true);
        assert!((v["pose"]["scale"].as_f64().unwrap() - 2.0).abs() < 1e-9);
        let v: serde_json::Value = serde_json::from_str(&decompose_motor(&[0.0; 3])).unwrap();
        assert_eq!(v["ok"], false);
    }
}
