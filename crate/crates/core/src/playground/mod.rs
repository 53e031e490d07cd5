//! Session service behind the interactive playground.
//!
//! Clients send [`Envelope`]s tagged with [`SCHEMA`]; every response echoes
//! the full 32 coefficients of each affected object together with its
//! classification, so a client never has to do algebra itself. All numeric
//! work is delegated to the algebra and motor modules.

pub mod transport;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::blade::BLADE_COUNT;
use crate::algebra::Multivector;
use crate::geom::{Pose, Vec3};
use crate::interp::{preprocess_pose, InterpolationContext};
use crate::motor::{classify, Kind, Params, Representation};
use crate::motor::{embed_plane, embed_point, embed_sphere, pose_motor, sandwich, Motor};

pub const SCHEMA: &str = "ga-playground/1";
pub const HISTORY_DEPTH: usize = 32;
pub const DEFAULT_SAMPLES: usize = 60;
pub const MAX_SAMPLES: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Primitive {
    Point { position: Vec3 },
    Sphere { center: Vec3, radius: f64 },
    Plane { normal: Vec3, offset: f64 },
}

/// A motor given either as a conventional pose or as its 16 even-grade
/// coefficients in canonical order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MotorSpec {
    Pose(Pose),
    Coeffs(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum Request {
    CreatePrimitive {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        primitive: Primitive,
    },
    CreateFromCoeffs {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        coeffs: Vec<f64>,
    },
    SetCoefficient {
        name: String,
        index: usize,
        value: f64,
    },
    /// Outer product of 2 to 4 operands, each an object name or one of the
    /// reserved names `e_inf` and `e_o`.
    Combine {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        operands: Vec<String>,
    },
    /// Stores the dual of `name` as a new object.
    Dual {
        name: String,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    /// Applies `M X M⁻¹`; replaces the object unless `into` names a new one.
    Deform {
        name: String,
        motor: MotorSpec,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        into: Option<String>,
    },
    /// Samples the object deformed by the interpolated pose at
    /// alpha = 0, 1/k, ..., 1. Nothing is stored.
    Interpolate {
        name: String,
        pose_a: Pose,
        pose_b: Pose,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        samples: Option<usize>,
    },
    List,
    Delete {
        name: String,
    },
    Undo,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Envelope {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<u64>,
    #[serde(flatten)]
    pub request: Request,
}

impl Envelope {
    pub fn new(request: Request) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            id: None,
            request,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ObjectView {
    pub name: String,
    pub coeffs: Vec<f64>,
    pub kind: Kind,
    pub params: Params,
    pub representation: Representation,
    pub grade: u8,
}

impl ObjectView {
    pub fn of(name: &str, x: &Multivector) -> Self {
        let obj = classify(x);
        Self {
            name: name.to_string(),
            coeffs: x.0.to_vec(),
            kind: obj.kind,
            params: obj.params,
            representation: obj.representation,
            grade: obj.grade,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub alpha: f64,
    pub pose: Pose,
    #[serde(flatten)]
    pub object: ObjectView,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Error,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Response {
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<u64>,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<ObjectView>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub removed: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub frames: Vec<Frame>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

impl Response {
    fn ok(id: Option<u64>) -> Self {
        Self {
            schema: SCHEMA.to_string(),
            id,
            status: Status::Ok,
            objects: Vec::new(),
            removed: Vec::new(),
            frames: Vec::new(),
            error: None,
        }
    }

    fn error(id: Option<u64>, message: String) -> Self {
        Self {
            status: Status::Error,
            error: Some(message),
            ..Self::ok(id)
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PlaygroundError {
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("unknown object {0:?}")]
    UnknownName(String),
    #[error("object {0:?} already exists")]
    NameTaken(String),
    #[error("invalid object name {0:?}")]
    InvalidName(String),
    #[error("expected {expected} finite coefficients, got {got:?}")]
    Coefficients { expected: usize, got: String },
    #[error("coefficient index {0} is outside 0..32")]
    IndexOutOfRange(usize),
    #[error("combine takes 2 to 4 operands, got {0}")]
    OperandCount(usize),
    #[error("motor cannot be applied: {0}")]
    Motor(String),
    #[error("samples must be between 1 and {MAX_SAMPLES}")]
    Samples,
    #[error("nothing to undo")]
    NothingToUndo,
}

/// Prior state of every object touched by one mutation.
type Change = Vec<(String, Option<Multivector>)>;

/// One client's objects and undo history.
#[derive(Debug, Default)]
pub struct Session {
    objects: BTreeMap<String, Multivector>,
    history: VecDeque<Change>,
    next_id: u64,
}

const RESERVED: [&str; 2] = ["e_inf", "e_o"];

impl Session {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, name: &str) -> Option<&Multivector> {
        self.objects.get(name)
    }

    /// Parses a JSON request and returns the JSON response.
    pub fn handle_json(&mut self, text: &str) -> String {
        let response = match serde_json::from_str::<Envelope>(text) {
            Ok(env) => self.handle(&env),
            Err(e) => Response::error(None, format!("malformed request: {e}")),
        };
        serde_json::to_string(&response).expect("responses serialize")
    }

    pub fn handle(&mut self, env: &Envelope) -> Response {
        if env.schema != SCHEMA {
            return Response::error(env.id, PlaygroundError::Schema(env.schema.clone()).to_string());
        }
        match self.dispatch(&env.request) {
            Ok(mut r) => {
                r.id = env.id;
                r
            }
            Err(e) => Response::error(env.id, e.to_string()),
        }
    }

    fn dispatch(&mut self, request: &Request) -> Result<Response, PlaygroundError> {
        let mut r = Response::ok(None);
        match request {
            Request::CreatePrimitive { name, primitive } => {
                let x = match *primitive {
                    Primitive::Point { position } => embed_point(position),
                    Primitive::Sphere { center, radius } => embed_sphere(center, radius),
                    Primitive::Plane { normal, offset } => embed_plane(normal, offset),
                };
                let name = self.new_name(name.as_deref())?;
                r.objects.push(self.store(vec![(name, x)]).remove(0));
            }
            Request::CreateFromCoeffs { name, coeffs } => {
                let x = parse_coeffs(coeffs)?;
                let name = self.new_name(name.as_deref())?;
                r.objects.push(self.store(vec![(name, x)]).remove(0));
            }
            Request::SetCoefficient { name, index, value } => {
                let mut x = *self.lookup(name)?;
                if *index >= BLADE_COUNT {
                    return Err(PlaygroundError::IndexOutOfRange(*index));
                }
                if !value.is_finite() {
                    return Err(PlaygroundError::Coefficients {
                        expected: 1,
                        got: value.to_string(),
                    });
                }
                x.0[*index] = *value;
                r.objects.push(self.store(vec![(name.clone(), x)]).remove(0));
            }
            Request::Combine { name, operands } => {
                if !(2..=4).contains(&operands.len()) {
                    return Err(PlaygroundError::OperandCount(operands.len()));
                }
                let mut x = self.operand(&operands[0])?;
                for op in &operands[1..] {
                    x = x ^ self.operand(op)?;
                }
                let name = self.new_name(name.as_deref())?;
                r.objects.push(self.store(vec![(name, x)]).remove(0));
            }
            Request::Dual { name, into } => {
                let x = self.lookup(name)?.dual();
                let target = self.new_name(Some(into.as_deref().unwrap_or(&format!("{name}*"))))?;
                r.objects.push(self.store(vec![(target, x)]).remove(0));
            }
            Request::Deform { name, motor, into } => {
                let m = parse_motor(motor)?;
                let x = sandwich(&m, self.lookup(name)?).map_err(|e| PlaygroundError::Motor(e.to_string()))?;
                let target = match into {
                    Some(t) => self.new_name(Some(t))?,
                    None => name.clone(),
                };
                r.objects.push(self.store(vec![(target, x)]).remove(0));
            }
            Request::Interpolate {
                name,
                pose_a,
                pose_b,
                samples,
            } => {
                let k = samples.unwrap_or(DEFAULT_SAMPLES);
                if !(1..=MAX_SAMPLES).contains(&k) {
                    return Err(PlaygroundError::Samples);
                }
                let x = *self.lookup(name)?;
                let motor_err = |e: &dyn std::fmt::Display| PlaygroundError::Motor(e.to_string());
                let a = preprocess_pose(pose_a).map_err(|e| motor_err(&e))?;
                let b = preprocess_pose(pose_b).map_err(|e| motor_err(&e))?;
                let mut ctx = InterpolationContext::new(a, b);
                for i in 0..=k {
                    let alpha = i as f64 / k as f64;
                    let pose = ctx.interpolate(alpha).map_err(|e| motor_err(&e))?;
                    let m = pose_motor(&pose).map_err(|e| motor_err(&e))?;
                    let y = sandwich(&m, &x).map_err(|e| motor_err(&e))?;
                    r.frames.push(Frame {
                        alpha,
                        pose,
                        object: ObjectView::of(name, &y),
                    });
                }
            }
            Request::List => {
                r.objects = self.objects.iter().map(|(n, x)| ObjectView::of(n, x)).collect();
            }
            Request::Delete { name } => {
                let old = self
                    .objects
                    .remove(name)
                    .ok_or_else(|| PlaygroundError::UnknownName(name.clone()))?;
                self.record(vec![(name.clone(), Some(old))]);
                r.removed.push(name.clone());
            }
            Request::Undo => {
                let change = self.history.pop_back().ok_or(PlaygroundError::NothingToUndo)?;
                for (name, prior) in change {
                    match prior {
                        Some(x) => {
                            self.objects.insert(name.clone(), x);
                            r.objects.push(ObjectView::of(&name, &x));
                        }
                        None => {
                            self.objects.remove(&name);
                            r.removed.push(name);
                        }
                    }
                }
            }
        }
        Ok(r)
    }

    fn lookup(&self, name: &str) -> Result<&Multivector, PlaygroundError> {
        self.objects
            .get(name)
            .ok_or_else(|| PlaygroundError::UnknownName(name.to_string()))
    }

    fn operand(&self, name: &str) -> Result<Multivector, PlaygroundError> {
        match name {
            "e_inf" => Ok(Multivector::e_inf()),
            "e_o" => Ok(Multivector::e_o()),
            _ => self.lookup(name).copied(),
        }
    }

    /// Validates a requested name or generates `obj<N>`.
    fn new_name(&mut self, requested: Option<&str>) -> Result<String, PlaygroundError> {
        match requested {
            Some(n) => {
                if n.is_empty() || RESERVED.contains(&n) {
                    return Err(PlaygroundError::InvalidName(n.to_string()));
                }
                if self.objects.contains_key(n) {
                    return Err(PlaygroundError::NameTaken(n.to_string()));
                }
                Ok(n.to_string())
            }
            None => loop {
                self.next_id += 1;
                let n = format!("obj{}", self.next_id);
                if !self.objects.contains_key(&n) {
                    break Ok(n);
                }
            },
        }
    }

    fn store(&mut self, items: Vec<(String, Multivector)>) -> Vec<ObjectView> {
        let change = items
            .iter()
            .map(|(n, _)| (n.clone(), self.objects.get(n).copied()))
            .collect();
        self.record(change);
        items
            .into_iter()
            .map(|(n, x)| {
                let view = ObjectView::of(&n, &x);
                self.objects.insert(n, x);
                view
            })
            .collect()
    }

    fn record(&mut self, change: Change) {
        if self.history.len() == HISTORY_DEPTH {
            self.history.pop_front();
        }
        self.history.push_back(change);
    }
}

fn parse_coeffs(coeffs: &[f64]) -> Result<Multivector, PlaygroundError> {
    if coeffs.len() != BLADE_COUNT || !coeffs.iter().all(|c| c.is_finite()) {
        return Err(PlaygroundError::Coefficients {
            expected: BLADE_COUNT,
            got: format!("{} values", coeffs.len()),
        });
    }
    Ok(Multivector::from_slice(coeffs).expect("length checked"))
}

fn parse_motor(spec: &MotorSpec) -> Result<Motor, PlaygroundError> {
    match spec {
        MotorSpec::Pose(p) => pose_motor(p).map_err(|e| PlaygroundError::Motor(e.to_string())),
        MotorSpec::Coeffs(c) => {
            let arr: [f64; 16] = c.as_slice().try_into().map_err(|_| PlaygroundError::Coefficients {
                expected: 16,
                got: format!("{} values", c.len()),
            })?;
            if !arr.iter().all(|v| v.is_finite()) {
                return Err(PlaygroundError::Coefficients {
                    expected: 16,
                    got: "non-finite values".into(),
                });
            }
            Ok(Motor(arr))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::Quat;

    fn send(s: &mut Session, request: Request) -> Response {
        s.handle(&Envelope::new(request))
    }

    fn point(s: &mut Session, name: &str, p: [f64; 3]) -> Response {
        send(
            s,
            Request::CreatePrimitive {
                name: Some(name.into()),
                primitive: Primitive::Point { position: p.into() },
            },
        )
    }

    #[test]
    fn create_point() {
        let mut s = Session::new();
        let r = point(&mut s, "p", [1.0, 2.0, 3.0]);
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.objects[0].kind, Kind::Point);
        assert_eq!(r.objects[0].coeffs, embed_point(Vec3::new(1.0, 2.0, 3.0)).0.to_vec());
    }

    #[test]
    fn line_from_two_points_and_infinity() {
        let mut s = Session::new();
        point(&mut s, "a", [0.0, 0.0, 0.0]);
        point(&mut s, "b", [1.0, 0.0, 0.0]);
        let r = send(
            &mut s,
            Request::Combine {
                name: Some("l".into()),
                operands: vec!["a".into(), "b".into(), "e_inf".into()],
            },
        );
        assert_eq!(r.objects[0].kind, Kind::Line);
    }

    #[test]
    fn undo_restores_exact_coefficients() {
        let mut s = Session::new();
        point(&mut s, "p", [0.3, -0.7, 0.1]);
        let before = *s.get("p").unwrap();
        send(
            &mut s,
            Request::SetCoefficient {
                name: "p".into(),
                index: 1,
                value: 9.0,
            },
        );
        assert_ne!(*s.get("p").unwrap(), before);
        let r = send(&mut s, Request::Undo);
        assert_eq!(r.objects[0].coeffs, before.0.to_vec());
        assert_eq!(*s.get("p").unwrap(), before);
        send(&mut s, Request::Undo);
        assert!(s.get("p").is_none(), "undoing the creation removes the object");
        assert_eq!(send(&mut s, Request::Undo).status, Status::Error);
    }

    #[test]
    fn history_is_bounded() {
        let mut s = Session::new();
        point(&mut s, "p", [0.0; 3]);
        for i in 0..40 {
            send(
                &mut s,
                Request::SetCoefficient {
                    name: "p".into(),
                    index: 1,
                    value: i as f64,
                },
            );
        }
        let undone = (0..50)
            .take_while(|_| send(&mut s, Request::Undo).status == Status::Ok)
            .count();
        assert_eq!(undone, HISTORY_DEPTH);
    }

    #[test]
    fn errors_are_reported() {
        let mut s = Session::new();
        let r = send(&mut s, Request::Delete { name: "nope".into() });
        assert_eq!(r.status, Status::Error);
        let r = send(
            &mut s,
            Request::CreateFromCoeffs {
                name: None,
                coeffs: vec![1.0; 5],
            },
        );
        assert!(r.error.unwrap().contains("32"));
        point(&mut s, "p", [0.0; 3]);
        assert_eq!(point(&mut s, "p", [1.0; 3]).status, Status::Error);
        let r = send(
            &mut s,
            Request::Deform {
                name: "p".into(),
                motor: MotorSpec::Coeffs(vec![0.0; 16]),
                into: None,
            },
        );
        assert!(r.error.unwrap().contains("motor"));
        let mut env = Envelope::new(Request::List);
        env.schema = "ga-playground/0".into();
        assert_eq!(s.handle(&env).status, Status::Error);
        assert!(s.handle_json("{not json").contains("\"status\":\"error\""));
    }

    #[test]
    fn unknown_kind_is_not_an_error() {
        let mut s = Session::new();
        let mut c = vec![0.0; 32];
        c[0] = 1.0;
        c[1] = 1.0;
        let r = send(&mut s, Request::CreateFromCoeffs { name: None, coeffs: c });
        assert_eq!(r.status, Status::Ok);
        assert_eq!(r.objects[0].kind, Kind::Unknown);
        assert_eq!(r.objects[0].name, "obj1");
    }

    #[test]
    fn deform_and_interpolate() {
        let mut s = Session::new();
        point(&mut s, "p", [1.0, 0.0, 0.0]);
        let pose = Pose::new(Vec3::new(0.0, 1.0, 0.0), Quat::IDENTITY, 2.0);
        let r = send(
            &mut s,
            Request::Deform {
                name: "p".into(),
                motor: MotorSpec::Pose(pose),
                into: Some("q".into()),
            },
        );
        match r.objects[0].params {
            Params::Point { position } => assert!(position.distance(Vec3::new(2.0, 1.0, 0.0)) < 1e-9),
            ref other => panic!("{other:?}"),
        }
        let pose_b = Pose::new(Vec3::new(3.0, 0.0, 0.0), Quat::IDENTITY, 1.0);
        let r = send(
            &mut s,
            Request::Interpolate {
                name: "p".into(),
                pose_a: Pose::IDENTITY,
                pose_b,
                samples: Some(4),
            },
        );
        assert_eq!(r.frames.len(), 5);
        match r.frames[4].object.params {
            Params::Point { position } => assert!(position.distance(Vec3::new(4.0, 0.0, 0.0)) < 1e-9),
            ref other => panic!("{other:?}"),
        }
    }

    #[test]
    fn protocol_round_trip() {
        let requests = vec![
            Request::CreatePrimitive {
                name: None,
                primitive: Primitive::Sphere {
                    center: Vec3::new(1.0, 2.0, 3.0),
                    radius: 0.5,
                },
            },
            Request::CreatePrimitive {
                name: Some("pl".into()),
                primitive: Primitive::Plane {
                    normal: Vec3::new(0.0, 0.0, 1.0),
                    offset: 2.0,
                },
            },
            Request::CreateFromCoeffs {
                name: None,
                coeffs: (0..32).map(|i| i as f64 * 0.1).collect(),
            },
            Request::SetCoefficient {
                name: "x".into(),
                index: 4,
                value: -0.3,
            },
            Request::Combine {
                name: None,
                operands: vec!["a".into(), "e_o".into()],
            },
            Request::Dual {
                name: "x".into(),
                into: None,
            },
            Request::Deform {
                name: "x".into(),
                motor: MotorSpec::Coeffs(vec![0.5; 16]),
                into: Some("y".into()),
            },
            Request::Interpolate {
                name: "x".into(),
                pose_a: Pose::IDENTITY,
                pose_b: Pose::IDENTITY,
                samples: None,
            },
            Request::List,
            Request::Delete { name: "x".into() },
            Request::Undo,
        ];
        for request in requests {
            let env = Envelope {
                schema: SCHEMA.into(),
                id: Some(7),
                request,
            };
            let text = serde_json::to_string(&env).unwrap();
            assert_eq!(serde_json::from_str::<Envelope>(&text).unwrap(), env, "{text}");
        }
        let mut s = Session::new();
        point(&mut s, "p", [0.1, 0.2, 0.3]);
        let r = send(
            &mut s,
            Request::Interpolate {
                name: "p".into(),
                pose_a: Pose::IDENTITY,
                pose_b: Pose::IDENTITY,
                samples: Some(2),
            },
        );
        let text = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<Response>(&text).unwrap(), r);
    }
}
