//! Deterministic sender → channel → receiver simulation.
//!
//! Simulated time (integer microseconds) drives the schedule: the sender
//! samples every object's motion at the send rate, each message is encoded
//! to bytes and delivered after a fixed latency plus seeded uniform jitter,
//! and the receiver renders at a fixed frame rate by interpolating between
//! the last two poses it holds per object. Only the per-frame interpolation
//! loop is timed, with a monotonic clock.

use std::collections::hash_map::DefaultHasher;
use std::f64::consts::{PI, TAU};
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::codec::{decode, encode, Codec, CodecError, Transform, WireMessage};
use crate::algebra::{HeapWorkspace, MultivectorPool};
use crate::geom::{Pose, Quat, Vec3};
use crate::interp::{align, preprocess, InterpError, Interpolator, PoseInput, PreprocessedPose};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Pipeline {
    /// lerp + slerp + lerp on conventional poses.
    Traditional,
    /// Motor interpolation with a fresh heap buffer per temporary and dense
    /// products.
    GaNaive,
    /// Motor interpolation on pooled buffers with sparse even/odd products.
    GaPooled,
}

impl Pipeline {
    pub const ALL: [Pipeline; 3] = [Pipeline::Traditional, Pipeline::GaNaive, Pipeline::GaPooled];

    pub fn name(self) -> &'static str {
        match self {
            Pipeline::Traditional => "TRADITIONAL",
            Pipeline::GaNaive => "GA_NAIVE",
            Pipeline::GaPooled => "GA_POOLED",
        }
    }

    /// The codec a pipeline sends by default: conventional poses for the
    /// traditional pipeline, motors for the GA pipelines.
    pub fn default_codec(self) -> Codec {
        match self {
            Pipeline::Traditional => Codec::RawPose,
            Pipeline::GaNaive | Pipeline::GaPooled => Codec::Motor16,
        }
    }
}

impl std::fmt::Display for Pipeline {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Pipeline {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim().to_ascii_uppercase().replace('-', "_").as_str() {
            "TRADITIONAL" => Ok(Pipeline::Traditional),
            "GA_NAIVE" => Ok(Pipeline::GaNaive),
            "GA_POOLED" => Ok(Pipeline::GaPooled),
            _ => Err(format!(
                "unknown pipeline {s:?} (expected TRADITIONAL, GA_NAIVE or GA_POOLED)"
            )),
        }
    }
}

/// Default send rate for each codec; motors go out at a quarter of the
/// pose rate.
pub fn default_send_rate(codec: Codec) -> f64 {
    match codec {
        Codec::RawPose => 60.0,
        Codec::Motor16 => 15.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelModel {
    pub send_rate_hz: f64,
    pub latency_ms: f64,
    /// Each message is delayed by an extra uniform `[0, jitter_ms]`.
    pub jitter_ms: f64,
    pub seed: u64,
}

/// Parametric motion: circular orbit in the xy plane, constant-rate spin
/// about a per-object axis, sinusoidal scale.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MotionModel {
    pub radius: f64,
    pub orbit_hz: f64,
    pub spin_rad_per_s: f64,
    pub scale_amplitude: f64,
    pub scale_hz: f64,
}

impl Default for MotionModel {
    fn default() -> Self {
        Self {
            radius: 2.0,
            orbit_hz: 0.5,
            spin_rad_per_s: PI / 2.0,
            scale_amplitude: 0.25,
            scale_hz: 0.25,
        }
    }
}

impl MotionModel {
    /// Upper bound on the speed of an object's position.
    pub fn max_speed(&self) -> f64 {
        TAU * self.orbit_hz * self.radius
    }
}

/// Per-object motion parameters drawn from the seed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectMotion {
    pub phase: f64,
    pub height: f64,
    pub axis: Vec3,
}

impl ObjectMotion {
    pub fn pose_at(&self, model: &MotionModel, t: f64) -> Pose {
        let angle = TAU * model.orbit_hz * t + self.phase;
        Pose::new(
            Vec3::new(model.radius * angle.cos(), model.radius * angle.sin(), self.height),
            Quat::from_axis_angle(self.axis, model.spin_rad_per_s * t + self.phase),
            1.0 + model.scale_amplitude * (TAU * model.scale_hz * t + self.phase).sin(),
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub objects: usize,
    pub duration_s: f64,
    /// Frames before this simulated time are rendered but not timed.
    pub warmup_s: f64,
    pub render_hz: f64,
    pub pipeline: Pipeline,
    pub codec: Codec,
    pub channel: ChannelModel,
    pub motion: MotionModel,
}

impl SimConfig {
    /// Defaults: 90 Hz rendering, the pipeline's default codec at that
    /// codec's default rate, 50 ms latency, 5 ms jitter, 1 s warm-up.
    pub fn new(pipeline: Pipeline, objects: usize, duration_s: f64, seed: u64) -> Self {
        let codec = pipeline.default_codec();
        Self {
            objects,
            duration_s,
            warmup_s: 1.0_f64.min(duration_s / 2.0),
            render_hz: 90.0,
            pipeline,
            codec,
            channel: ChannelModel {
                send_rate_hz: default_send_rate(codec),
                latency_ms: 50.0,
                jitter_ms: 5.0,
                seed,
            },
            motion: MotionModel::default(),
        }
    }

    pub fn validate(&self) -> Result<(), SimError> {
        let fail = |m: &str| Err(SimError::Config(m.to_string()));
        let ch = &self.channel;
        if self.objects == 0 {
            return fail("object count must be at least 1");
        }
        if u32::try_from(self.objects).is_err() {
            return fail("object count exceeds the 32-bit id space");
        }
        if !(self.duration_s >= 1.0 && self.duration_s.is_finite()) {
            return fail("duration must be at least 1 s");
        }
        if !(self.warmup_s >= 0.0 && self.warmup_s < self.duration_s) {
            return fail("warm-up must be non-negative and shorter than the duration");
        }
        if !(self.render_hz > 0.0 && self.render_hz.is_finite()) {
            return fail("render rate must be positive");
        }
        if !(ch.send_rate_hz > 0.0 && ch.send_rate_hz.is_finite()) {
            return fail("send rate must be positive");
        }
        if !(ch.latency_ms >= 0.0 && ch.latency_ms.is_finite()) {
            return fail("latency must be non-negative");
        }
        if !(ch.jitter_ms >= 0.0 && ch.jitter_ms.is_finite()) {
            return fail("jitter must be non-negative");
        }
        Ok(())
    }

    /// Per-object bandwidth implied by the codec and send rate.
    pub fn closed_form_bytes_per_sec(&self) -> f64 {
        self.channel.send_rate_hz * self.codec.message_bytes() as f64
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Codec(#[from] CodecError),
    #[error(transparent)]
    Interp(#[from] InterpError),
    #[error("message for unknown object {0}")]
    UnknownObject(u32),
}

/// Timing summary over a set of frame times in milliseconds.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Summary {
    pub mean: f64,
    pub median: f64,
    pub p95: f64,
    pub max: f64,
}

/// Mean, median, nearest-rank 95th percentile and maximum.
pub fn summarize(samples: &[f64]) -> Summary {
    if samples.is_empty() {
        return Summary::default();
    }
    let mut s = samples.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len();
    let median = if n % 2 == 1 {
        s[n / 2]
    } else {
        0.5 * (s[n / 2 - 1] + s[n / 2])
    };
    let rank = ((0.95 * n as f64).ceil() as usize).clamp(1, n);
    Summary {
        mean: s.iter().sum::<f64>() / n as f64,
        median,
        p95: s[rank - 1],
        max: s[n - 1],
    }
}

#[derive(Debug, Clone, Copy)]
struct Slot {
    messages: u32,
    last_timestamp: u64,
    arrival_us: u64,
    prev: Pose,
    latest: Pose,
    prev_pre: PreprocessedPose,
    latest_pre: PreprocessedPose,
}

/// Receiver side: holds the last two poses of every object and blends
/// them for each rendered frame.
#[derive(Debug)]
pub struct Receiver {
    pipeline: Pipeline,
    interval_us: f64,
    slots: Vec<Slot>,
    pooled: Interpolator<MultivectorPool>,
    naive: Interpolator<HeapWorkspace>,
    dropped: u64,
}

impl Receiver {
    pub fn new(pipeline: Pipeline, objects: usize, send_rate_hz: f64) -> Self {
        let identity = preprocess(&PoseInput::Pose(Pose::IDENTITY)).expect("identity pose preprocesses");
        let slot = Slot {
            messages: 0,
            last_timestamp: 0,
            arrival_us: 0,
            prev: Pose::IDENTITY,
            latest: Pose::IDENTITY,
            prev_pre: identity,
            latest_pre: identity,
        };
        Self {
            pipeline,
            interval_us: 1e6 / send_rate_hz,
            slots: vec![slot; objects],
            pooled: Interpolator::pooled(),
            naive: Interpolator::new(HeapWorkspace::new()),
            dropped: 0,
        }
    }

    /// Applies a message; returns false when it is older than the newest
    /// message already held for its object and was dropped.
    pub fn on_message(&mut self, msg: &WireMessage, arrival_us: u64) -> Result<bool, SimError> {
        let slot = self
            .slots
            .get_mut(msg.object_id as usize)
            .ok_or(SimError::UnknownObject(msg.object_id))?;
        if slot.messages > 0 && msg.timestamp_ms <= slot.last_timestamp {
            self.dropped += 1;
            return Ok(false);
        }
        let value = decode(msg)?;
        match self.pipeline {
            Pipeline::Traditional => {
                let pose = value.to_pose().map_err(InterpError::from)?;
                slot.prev = if slot.messages == 0 { pose } else { slot.latest };
                slot.latest = pose;
            }
            Pipeline::GaNaive | Pipeline::GaPooled => {
                let input = match value {
                    Transform::Pose(p) => PoseInput::Pose(p),
                    Transform::Motor(m) => PoseInput::Motor(m),
                };
                let mut pre = preprocess(&input)?;
                slot.prev_pre = if slot.messages == 0 { pre } else { slot.latest_pre };
                align(&slot.prev_pre, &mut pre);
                slot.latest_pre = pre;
            }
        }
        slot.messages += 1;
        slot.last_timestamp = msg.timestamp_ms;
        slot.arrival_us = arrival_us;
        Ok(true)
    }

    pub fn has_pose(&self, object: usize) -> bool {
        self.slots[object].messages > 0
    }

    pub fn dropped(&self) -> u64 {
        self.dropped
    }

    /// Blend factor: time since the newest message arrived over the send
    /// interval, clamped to [0, 1].
    pub fn alpha(&self, object: usize, now_us: u64) -> f64 {
        let elapsed = now_us.saturating_sub(self.slots[object].arrival_us) as f64;
        (elapsed / self.interval_us).clamp(0.0, 1.0)
    }

    /// Interpolated pose of one object.
    pub fn sample(&mut self, object: usize, now_us: u64) -> Result<Pose, SimError> {
        let alpha = self.alpha(object, now_us);
        let s = &self.slots[object];
        Ok(match self.pipeline {
            Pipeline::Traditional => s.prev.blend(&s.latest, alpha),
            Pipeline::GaNaive => self.naive.evaluate(&s.prev_pre, &s.latest_pre, alpha)?,
            Pipeline::GaPooled => self.pooled.evaluate(&s.prev_pre, &s.latest_pre, alpha)?,
        })
    }

    /// Interpolates every object that has received a message into `out`.
    pub fn render(&mut self, now_us: u64, out: &mut [Pose]) -> Result<(), SimError> {
        for (i, pose) in out.iter_mut().enumerate().take(self.slots.len()) {
            if self.slots[i].messages > 0 {
                *pose = self.sample(i, now_us)?;
            }
        }
        Ok(())
    }

    /// Buffers reserved by the pipeline so far: pool growth events for
    /// GA_POOLED, heap buffers for GA_NAIVE, none for TRADITIONAL.
    pub fn allocation_count(&self) -> u64 {
        match self.pipeline {
            Pipeline::Traditional => 0,
            Pipeline::GaNaive => self.naive.workspace().allocation_count(),
            Pipeline::GaPooled => self.pooled.allocation_count(),
        }
    }
}

/// One message in flight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Delivery {
    pub arrival_us: u64,
    pub bytes: Vec<u8>,
}

/// Per-object motion parameters for a seed.
pub fn object_motions(objects: usize, seed: u64) -> Vec<ObjectMotion> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..objects)
        .map(|_| {
            let axis = loop {
                let v = Vec3::new(
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                    rng.gen_range(-1.0..1.0),
                );
                if v.norm() > 0.1 {
                    break v.normalized();
                }
            };
            ObjectMotion {
                phase: rng.gen_range(0.0..TAU),
                height: rng.gen_range(-1.0..1.0),
                axis,
            }
        })
        .collect()
}

/// Encodes every message the sender emits and sorts them by arrival.
/// Jitter is drawn from a stream separate from the motion parameters.
pub fn schedule(cfg: &SimConfig, motions: &[ObjectMotion]) -> Result<Vec<Delivery>, SimError> {
    let ch = &cfg.channel;
    let mut rng = ChaCha8Rng::seed_from_u64(ch.seed);
    rng.set_stream(1);
    let sends = (cfg.duration_s * ch.send_rate_hz - 1e-9).ceil().max(0.0) as u64;
    let mut out = Vec::with_capacity(sends as usize * motions.len());
    for k in 0..sends {
        let send_us = (k as f64 * 1e6 / ch.send_rate_hz).round() as u64;
        let t = send_us as f64 * 1e-6;
        for (id, motion) in motions.iter().enumerate() {
            let pose = motion.pose_at(&cfg.motion, t);
            let msg = encode(id as u32, send_us / 1000, &Transform::Pose(pose), cfg.codec)?;
            let jitter = if ch.jitter_ms > 0.0 {
                rng.gen_range(0.0..=ch.jitter_ms)
            } else {
                0.0
            };
            let arrival_us = send_us + ((ch.latency_ms + jitter) * 1000.0).round() as u64;
            out.push(Delivery {
                arrival_us,
                bytes: msg.to_bytes(),
            });
        }
    }
    // Stable sort keeps send order among simultaneous arrivals.
    out.sort_by_key(|d| d.arrival_us);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyncReport {
    pub pipeline: Pipeline,
    pub codec: Codec,
    pub objects: usize,
    pub duration_s: f64,
    pub warmup_s: f64,
    pub render_hz: f64,
    pub send_rate_hz: f64,
    pub latency_ms: f64,
    pub jitter_ms: f64,
    pub seed: u64,
    pub frames: usize,
    pub timed_frames: usize,
    pub mean_ms: f64,
    pub median_ms: f64,
    pub p95_ms: f64,
    pub max_ms: f64,
    pub messages_sent: u64,
    pub messages_dropped: u64,
    pub bytes_sent: u64,
    /// Per object: send rate × (header + payload).
    pub bytes_per_sec_closed_form: f64,
    /// Per object: bytes sent / objects / duration.
    pub bytes_per_sec_measured: f64,
    /// Buffers reserved during timed frames.
    pub allocations: u64,
    /// Largest jump of an object's position between consecutive frames
    /// that straddle a message arrival.
    pub max_discontinuity: f64,
    pub schedule_hash: u64,
    pub trajectory_hash: u64,
    #[serde(skip)]
    pub frame_ms: Vec<f64>,
}

pub const CSV_HEADER: &str = "pipeline,codec,objects,duration_s,warmup_s,render_hz,send_rate_hz,latency_ms,jitter_ms,seed,frames,timed_frames,mean_ms,median_ms,p95_ms,max_ms,messages_sent,messages_dropped,bytes_sent,bytes_per_sec_closed_form,bytes_per_sec_measured,allocations,max_discontinuity,schedule_hash,trajectory_hash";

impl SyncReport {
    /// The report as one line of JSON.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }

    /// The report as a CSV row matching [`CSV_HEADER`], without newline.
    pub fn to_csv_row(&self) -> String {
        let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
        w.serialize(self).expect("report serializes");
        let bytes = w.into_inner().expect("in-memory writer");
        String::from_utf8(bytes).expect("csv is utf-8").trim_end().to_string()
    }

    /// Equality ignoring wall-clock timings.
    pub fn same_outcome(&self, other: &Self) -> bool {
        let strip = |r: &Self| Self {
            mean_ms: 0.0,
            median_ms: 0.0,
            p95_ms: 0.0,
            max_ms: 0.0,
            frame_ms: Vec::new(),
            ..r.clone()
        };
        strip(self) == strip(other)
    }
}

pub fn run_simulation(cfg: &SimConfig) -> Result<SyncReport, SimError> {
    cfg.validate()?;
    let motions = object_motions(cfg.objects, cfg.channel.seed);
    let deliveries = schedule(cfg, &motions)?;
    let mut receiver = Receiver::new(cfg.pipeline, cfg.objects, cfg.channel.send_rate_hz);

    let mut schedule_hasher = DefaultHasher::new();
    let mut trajectory_hasher = DefaultHasher::new();
    let mut poses = vec![Pose::IDENTITY; cfg.objects];
    let mut last_position: Vec<Option<Vec3>> = vec![None; cfg.objects];
    let mut crossed = vec![false; cfg.objects];
    let mut max_discontinuity = 0.0f64;
    let mut frame_ms = Vec::new();
    let mut alloc_baseline = None;

    let duration_us = (cfg.duration_s * 1e6).round() as u64;
    let warmup_us = (cfg.warmup_s * 1e6).round() as u64;
    let mut next = 0;
    let mut frames = 0;
    loop {
        let now_us = (frames as f64 * 1e6 / cfg.render_hz).round() as u64;
        if now_us >= duration_us {
            break;
        }
        while next < deliveries.len() && deliveries[next].arrival_us <= now_us {
            let d = &deliveries[next];
            let msg = WireMessage::from_bytes(&d.bytes)?;
            (d.arrival_us, msg.object_id, msg.timestamp_ms).hash(&mut schedule_hasher);
            if receiver.on_message(&msg, d.arrival_us)? {
                crossed[msg.object_id as usize] = true;
            }
            next += 1;
        }

        if now_us >= warmup_us {
            if alloc_baseline.is_none() {
                alloc_baseline = Some(receiver.allocation_count());
            }
            let start = Instant::now();
            receiver.render(now_us, &mut poses)?;
            frame_ms.push(start.elapsed().as_secs_f64() * 1e3);
        } else {
            receiver.render(now_us, &mut poses)?;
        }

        for (i, pose) in poses.iter().enumerate() {
            if !receiver.has_pose(i) {
                continue;
            }
            let p = pose.translation;
            for c in [p.x, p.y, p.z, pose.scale] {
                c.to_bits().hash(&mut trajectory_hasher);
            }
            if let (Some(prev), true) = (last_position[i], crossed[i]) {
                max_discontinuity = max_discontinuity.max(prev.distance(p));
            }
            last_position[i] = Some(p);
            crossed[i] = false;
        }
        frames += 1;
    }

    let allocations = receiver.allocation_count() - alloc_baseline.unwrap_or_else(|| receiver.allocation_count());
    let stats = summarize(&frame_ms);
    let messages_sent = deliveries.len() as u64;
    let bytes_sent: u64 = deliveries.iter().map(|d| d.bytes.len() as u64).sum();
    let ch = &cfg.channel;
    Ok(SyncReport {
        pipeline: cfg.pipeline,
        codec: cfg.codec,
        objects: cfg.objects,
        duration_s: cfg.duration_s,
        warmup_s: cfg.warmup_s,
        render_hz: cfg.render_hz,
        send_rate_hz: ch.send_rate_hz,
        latency_ms: ch.latency_ms,
        jitter_ms: ch.jitter_ms,
        seed: ch.seed,
        frames,
        timed_frames: frame_ms.len(),
        mean_ms: stats.mean,
        median_ms: stats.median,
        p95_ms: stats.p95,
        max_ms: stats.max,
        messages_sent,
        messages_dropped: receiver.dropped(),
        bytes_sent,
        bytes_per_sec_closed_form: cfg.closed_form_bytes_per_sec(),
        bytes_per_sec_measured: bytes_sent as f64 / cfg.objects as f64 / cfg.duration_s,
        allocations,
        max_discontinuity,
        schedule_hash: schedule_hasher.finish(),
        trajectory_hash: trajectory_hasher.finish(),
        frame_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quiet(pipeline: Pipeline, objects: usize, seed: u64) -> SimConfig {
        let mut cfg = SimConfig::new(pipeline, objects, 2.0, seed);
        cfg.channel.jitter_ms = 0.0;
        cfg
    }

    #[test]
    fn summary_statistics() {
        let s = summarize(&[4.0, 1.0, 3.0, 2.0]);
        assert_eq!((s.mean, s.median, s.p95, s.max), (2.5, 2.5, 4.0, 4.0));
        let s = summarize(&(1..=100).map(f64::from).collect::<Vec<_>>());
        assert_eq!(s.p95, 95.0);
        assert_eq!(summarize(&[]), Summary::default());
    }

    #[test]
    fn pipeline_names_parse() {
        for p in Pipeline::ALL {
            assert_eq!(p.name().parse::<Pipeline>().unwrap(), p);
        }
        assert_eq!("ga-pooled".parse::<Pipeline>().unwrap(), Pipeline::GaPooled);
        assert!("fast".parse::<Pipeline>().is_err());
    }

    #[test]
    fn config_validation() {
        let ok = SimConfig::new(Pipeline::GaPooled, 1, 1.0, 0);
        assert!(ok.validate().is_ok());
        let mut bad = ok;
        bad.objects = 0;
        assert!(matches!(run_simulation(&bad), Err(SimError::Config(_))));
        let mut bad = ok;
        bad.duration_s = 0.5;
        assert!(bad.validate().is_err());
        let mut bad = ok;
        bad.channel.jitter_ms = -1.0;
        assert!(bad.validate().is_err());
        let mut bad = ok;
        bad.warmup_s = 1.0;
        assert!(bad.validate().is_err());
    }

    #[test]
    fn bandwidth_matches_closed_form() {
        for pipeline in Pipeline::ALL {
            let r = run_simulation(&quiet(pipeline, 3, 1)).unwrap();
            assert_eq!(r.bytes_per_sec_measured, r.bytes_per_sec_closed_form);
        }
        let raw = quiet(Pipeline::Traditional, 1, 0).closed_form_bytes_per_sec();
        let motor = quiet(Pipeline::GaPooled, 1, 0).closed_form_bytes_per_sec();
        assert_eq!(raw, 48.0 * 60.0);
        assert_eq!(motor, 80.0 * 15.0);
    }

    #[test]
    fn deterministic_per_seed() {
        for pipeline in Pipeline::ALL {
            let cfg = SimConfig::new(pipeline, 5, 2.0, 42);
            let (a, b) = (run_simulation(&cfg).unwrap(), run_simulation(&cfg).unwrap());
            assert!(a.same_outcome(&b));
            let mut other = cfg;
            other.channel.seed = 43;
            assert_ne!(run_simulation(&other).unwrap().trajectory_hash, a.trajectory_hash);
        }
    }

    #[test]
    fn continuity_bound() {
        for pipeline in Pipeline::ALL {
            let cfg = quiet(pipeline, 4, 3);
            let r = run_simulation(&cfg).unwrap();
            let bound = cfg.motion.max_speed() / cfg.channel.send_rate_hz;
            assert!(
                r.max_discontinuity <= bound,
                "{pipeline}: {} > {bound}",
                r.max_discontinuity
            );
            assert_eq!(r.messages_dropped, 0);
        }
    }

    #[test]
    fn pooled_steady_state_reserves_nothing() {
        let r = run_simulation(&SimConfig::new(Pipeline::GaPooled, 20, 2.0, 9)).unwrap();
        assert_eq!(r.allocations, 0);
        let r = run_simulation(&SimConfig::new(Pipeline::GaNaive, 20, 2.0, 9)).unwrap();
        assert!(r.allocations >= 20 * r.timed_frames as u64);
    }

    #[test]
    fn csv_row_matches_header() {
        let r = run_simulation(&quiet(Pipeline::GaPooled, 1, 0)).unwrap();
        let row = r.to_csv_row();
        assert_eq!(row.split(',').count(), CSV_HEADER.split(',').count());
        assert!(row.starts_with("GA_POOLED,MOTOR16,1,"));
        let parsed: serde_json::Value = serde_json::from_str(&r.to_json_line()).unwrap();
        assert_eq!(parsed["pipeline"], "GA_POOLED");
    }
}
