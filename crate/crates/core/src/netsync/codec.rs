//! Wire format for pose synchronization messages.
//!
//! Every message is a 16-byte header followed by a fixed-size payload, all
//! multi-byte fields little-endian:
//!
//! | offset | size | field                         |
//! |--------|------|-------------------------------|
//! | 0      | 4    | object id (u32)               |
//! | 4      | 8    | timestamp in ms (u64)         |
//! | 12     | 1    | codec tag                     |
//! | 13     | 3    | reserved, must be zero        |
//! | 16     | 32   | RAW_POSE: t1 t2 t3 qw qx qy qz s (f32) |
//! | 16     | 64   | MOTOR16: 16 even-grade coefficients (f32), canonical order |

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geom::{Pose, Quat, Vec3};
use crate::motor::{extract_trd, pose_motor, Motor, MotorError};

pub const HEADER_BYTES: usize = 16;
pub const RAW_POSE_BYTES: usize = 32;
pub const MOTOR16_BYTES: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
#[repr(u8)]
pub enum Codec {
    RawPose = 1,
    Motor16 = 2,
}

impl Codec {
    pub fn payload_bytes(self) -> usize {
        match self {
            Codec::RawPose => RAW_POSE_BYTES,
            Codec::Motor16 => MOTOR16_BYTES,
        }
    }

    /// Header plus payload.
    pub fn message_bytes(self) -> usize {
        HEADER_BYTES + self.payload_bytes()
    }

    pub fn from_tag(tag: u8) -> Result<Self, CodecError> {
        match tag {
            1 => Ok(Codec::RawPose),
            2 => Ok(Codec::Motor16),
            other => Err(CodecError::UnknownCodec(other)),
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum CodecError {
    #[error("message shorter than the {HEADER_BYTES}-byte header ({0} bytes)")]
    ShortHeader(usize),
    #[error("unknown codec tag {0}")]
    UnknownCodec(u8),
    #[error("reserved header bytes must be zero")]
    ReservedNonZero,
    #[error("payload has {got} bytes, codec needs {expected}")]
    PayloadLength { expected: usize, got: usize },
    #[error("non-finite value at payload float {0}")]
    NonFinite(usize),
    #[error("cannot encode: {0}")]
    Motor(#[from] MotorError),
}

/// What a message carries once decoded.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Transform {
    Pose(Pose),
    Motor(Motor),
}

impl Transform {
    pub fn to_pose(&self) -> Result<Pose, MotorError> {
        match self {
            Transform::Pose(p) => Ok(*p),
            Transform::Motor(m) => extract_trd(m),
        }
    }

    pub fn to_motor(&self) -> Result<Motor, MotorError> {
        match self {
            Transform::Pose(p) => pose_motor(p),
            Transform::Motor(m) => Ok(*m),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WireMessage {
    pub object_id: u32,
    pub timestamp_ms: u64,
    pub codec: Codec,
    pub payload: Vec<u8>,
}

impl WireMessage {
    pub fn len(&self) -> usize {
        HEADER_BYTES + self.payload.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len());
        out.extend_from_slice(&self.object_id.to_le_bytes());
        out.extend_from_slice(&self.timestamp_ms.to_le_bytes());
        out.push(self.codec as u8);
        out.extend_from_slice(&[0; 3]);
        out.extend_from_slice(&self.payload);
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, CodecError> {
        if bytes.len() < HEADER_BYTES {
            return Err(CodecError::ShortHeader(bytes.len()));
        }
        let object_id = u32::from_le_bytes(bytes[0..4].try_into().expect("4 bytes"));
        let timestamp_ms = u64::from_le_bytes(bytes[4..12].try_into().expect("8 bytes"));
        let codec = Codec::from_tag(bytes[12])?;
        if bytes[13..16] != [0; 3] {
            return Err(CodecError::ReservedNonZero);
        }
        let payload = &bytes[HEADER_BYTES..];
        check_length(codec, payload.len())?;
        Ok(Self {
            object_id,
            timestamp_ms,
            codec,
            payload: payload.to_vec(),
        })
    }
}

fn check_length(codec: Codec, got: usize) -> Result<(), CodecError> {
    let expected = codec.payload_bytes();
    if got != expected {
        return Err(CodecError::PayloadLength { expected, got });
    }
    Ok(())
}

fn pack(values: &[f64]) -> Vec<u8> {
    values.iter().flat_map(|&v| (v as f32).to_le_bytes()).collect()
}

fn unpack<const N: usize>(payload: &[u8]) -> Result<[f64; N], CodecError> {
    let mut out = [0.0; N];
    for (i, chunk) in payload.chunks_exact(4).enumerate() {
        let v = f32::from_le_bytes(chunk.try_into().expect("4 bytes"));
        if !v.is_finite() {
            return Err(CodecError::NonFinite(i));
        }
        out[i] = v as f64;
    }
    Ok(out)
}

/// Encodes `value` with `codec`, converting between pose and motor form
/// when the two differ. Values are rounded to 32-bit floats.
pub fn encode(object_id: u32, timestamp_ms: u64, value: &Transform, codec: Codec) -> Result<WireMessage, CodecError> {
    let payload = match codec {
        Codec::RawPose => {
            let p = value.to_pose()?;
            let (t, q) = (p.translation, p.rotation);
            pack(&[t.x, t.y, t.z, q.w, q.x, q.y, q.z, p.scale])
        }
        Codec::Motor16 => pack(value.to_motor()?.coeffs()),
    };
    Ok(WireMessage {
        object_id,
        timestamp_ms,
        codec,
        payload,
    })
}

pub fn decode(msg: &WireMessage) -> Result<Transform, CodecError> {
    check_length(msg.codec, msg.payload.len())?;
    Ok(match msg.codec {
        Codec::RawPose => {
            let [t1, t2, t3, qw, qx, qy, qz, s] = unpack::<8>(&msg.payload)?;
            Transform::Pose(Pose::new(Vec3::new(t1, t2, t3), Quat::new(qw, qx, qy, qz), s))
        }
        Codec::Motor16 => Transform::Motor(Motor(unpack::<16>(&msg.payload)?)),
    })
}
