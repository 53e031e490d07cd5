//! Pose interpolation through blended rigid motors.
//!
//! Each pose is preprocessed once into a rigid motor `TR` (translation and
//! rotation, dilation removed) and a scale factor. For a blend factor α the
//! rigid motors are mixed linearly, `TR(α) = (1-α) TR_a + α TR_b`, and
//! translation and rotation are read back from `TR(α)` by the unit-sphere
//! decomposition. The scale is interpolated linearly on its own, because a
//! linear mix of two dilators does not decode to the linear mix of their
//! scale factors.

use thiserror::Error;

use crate::algebra::blade::EVEN;
use crate::algebra::{MultivectorPool, Workspace};
use crate::geom::{Pose, Vec3};
use crate::motor::{
    self, dilator_inverse, embed_point, extract_trd, point_location, pose_motor, rotor, translator, Decompose, Motor,
    MotorError,
};

/// Squared rotor norm below which a blend is treated as degenerate.
pub const DEGENERATE_NORM: f64 = 1e-9;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum InterpError {
    #[error(transparent)]
    Motor(#[from] MotorError),
    #[error("blended motor has vanishing rotor part (norm² {0:e})")]
    DegenerateInterpolant(f64),
    #[error("invalid pose")]
    InvalidPose,
}

/// How a pose reached the preprocessing step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Motor,
    Trd,
    Pose,
}

/// The accepted pose inputs.
#[derive(Debug, Clone, Copy, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum PoseInput {
    /// A single scaling motor `M = T R D`.
    Motor(Motor),
    /// Translator, rotor and dilator given separately.
    Trd {
        t: Motor,
        r: Motor,
        d: Motor,
    },
    Pose(Pose),
}

/// A pose reduced to its unit rigid motor and scale factor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreprocessedPose {
    pub tr: Motor,
    pub scale: f64,
    pub source: Source,
}

fn unit_rigid(m: Motor) -> Result<Motor, InterpError> {
    let n2 = m.versor_norm_squared();
    if !(n2 > DEGENERATE_NORM) {
        return Err(MotorError::Singular.into());
    }
    Ok(m.scale(1.0 / n2.sqrt()))
}

pub fn preprocess(input: &PoseInput) -> Result<PreprocessedPose, InterpError> {
    let (tr, scale, source) = match *input {
        PoseInput::Motor(m) => {
            let scale = extract_trd(&m)?.scale;
            (m * dilator_inverse(scale)?, scale, Source::Motor)
        }
        PoseInput::Trd { t, r, d } => {
            let scale = extract_trd(&d)?.scale;
            (t * r, scale, Source::Trd)
        }
        PoseInput::Pose(p) => {
            if !p.is_valid() {
                return Err(InterpError::InvalidPose);
            }
            (translator(p.translation) * rotor(p.rotation)?, p.scale, Source::Pose)
        }
    };
    Ok(PreprocessedPose {
        tr: unit_rigid(tr)?,
        scale,
        source,
    })
}

pub fn preprocess_pose(p: &Pose) -> Result<PreprocessedPose, InterpError> {
    preprocess(&PoseInput::Pose(*p))
}

/// Flips `b`'s rigid motor when it lies in the opposite hemisphere from
/// `a`'s, so the blend takes the short way round.
pub fn align(a: &PreprocessedPose, b: &mut PreprocessedPose) {
    if rigid_dot(&a.tr, &b.tr) < 0.0 {
        b.tr = b.tr.scale(-1.0);
    }
}

/// Scalar part of `a b̃`, the rotor-part dot product for rigid motors.
fn rigid_dot(a: &Motor, b: &Motor) -> f64 {
    a.0[0] * b.0[0] + a.0[1] * b.0[1] + a.0[2] * b.0[2] + a.0[5] * b.0[5]
}

fn clamp_alpha(alpha: f64) -> f64 {
    if (0.0..=1.0).contains(&alpha) {
        alpha
    } else {
        log::warn!("interpolation factor {alpha} outside [0, 1], clamping");
        if alpha.is_nan() {
            0.0
        } else {
            alpha.clamp(0.0, 1.0)
        }
    }
}

/// Evaluates blends on the buffers of a [`Workspace`]. With a
/// [`MultivectorPool`] no memory is reserved per evaluation once the pool
/// holds enough buffers for one call.
#[derive(Debug, Default)]
pub struct Interpolator<W: Workspace> {
    ws: W,
}

impl<W: Workspace> Interpolator<W> {
    pub fn new(ws: W) -> Self {
        Self { ws }
    }

    pub fn workspace(&self) -> &W {
        &self.ws
    }

    pub fn evaluate(&mut self, a: &PreprocessedPose, b: &PreprocessedPose, alpha: f64) -> Result<Pose, InterpError> {
        let alpha = clamp_alpha(alpha);
        let mut tr = self.ws.take();
        for (k, &i) in EVEN.iter().enumerate() {
            tr[i] = (1.0 - alpha) * a.tr.0[k] + alpha * b.tr.0[k];
        }
        // Rotor part a + b e12 + c e13 + d e23.
        let n2 = tr[0] * tr[0] + tr[6] * tr[6] + tr[7] * tr[7] + tr[10] * tr[10];
        let result = if n2 < DEGENERATE_NORM {
            Err(InterpError::DegenerateInterpolant(n2))
        } else {
            motor::decompose(&mut self.ws, &tr, Decompose::RigidProjection).map_err(InterpError::from)
        };
        self.ws.give(tr);
        let rigid = result?;
        Ok(Pose {
            translation: rigid.translation,
            rotation: rigid.rotation,
            scale: (1.0 - alpha) * a.scale + alpha * b.scale,
        })
    }
}

impl Interpolator<MultivectorPool> {
    pub fn pooled() -> Self {
        Self::new(MultivectorPool::new())
    }

    pub fn allocation_count(&self) -> u64 {
        self.ws.allocation_count()
    }
}

/// Two preprocessed poses and the pool used to blend them.
#[derive(Debug)]
pub struct InterpolationContext {
    pose_a: PreprocessedPose,
    pose_b: PreprocessedPose,
    interp: Interpolator<MultivectorPool>,
}

impl InterpolationContext {
    pub fn new(pose_a: PreprocessedPose, mut pose_b: PreprocessedPose) -> Self {
        align(&pose_a, &mut pose_b);
        Self {
            pose_a,
            pose_b,
            interp: Interpolator::pooled(),
        }
    }

    pub fn from_inputs(a: &PoseInput, b: &PoseInput) -> Result<Self, InterpError> {
        Ok(Self::new(preprocess(a)?, preprocess(b)?))
    }

    pub fn pose_a(&self) -> &PreprocessedPose {
        &self.pose_a
    }

    pub fn pose_b(&self) -> &PreprocessedPose {
        &self.pose_b
    }

    /// Interpolated pose for `alpha` in [0, 1]; values outside are clamped.
    pub fn interpolate(&mut self, alpha: f64) -> Result<Pose, InterpError> {
        self.interp.evaluate(&self.pose_a, &self.pose_b, alpha)
    }

    /// Image of `point` under `T(α) R(α) D(α)`, computed by the motor
    /// sandwich on the embedded point.
    pub fn apply_interpolated(&mut self, alpha: f64, point: Vec3) -> Result<Vec3, InterpError> {
        let pose = self.interpolate(alpha)?;
        let m = pose_motor(&pose)?;
        let image = motor::sandwich(&m, &embed_point(point))?;
        Ok(point_location(&image)?)
    }

    /// Pool growth events since construction.
    pub fn allocation_count(&self) -> u64 {
        self.interp.allocation_count()
    }
}
