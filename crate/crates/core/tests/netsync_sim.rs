//! Receiver behaviour at message instants and simulator properties.

mod common;

use cga_motion::geom::Pose;
use cga_motion::netsync::codec::{encode, Codec, Transform};
use cga_motion::netsync::sim::{object_motions, run_simulation, MotionModel, Pipeline, Receiver, SimConfig};

const INTERVAL_US: u64 = 1_000_000 / 15;

fn close(a: &Pose, b: &Pose, tol: f64) -> bool {
    a.translation.distance(b.translation) <= tol
        && a.rotation.same_rotation(b.rotation, tol)
        && (a.scale - b.scale).abs() <= tol
}

/// Feeds the same message stream to a receiver per pipeline and samples
/// at each arrival and one interval later.
#[test]
fn pipelines_agree_at_message_instants() {
    let motion = object_motions(1, 77)[0];
    let model = MotionModel::default();
    for codec in [Codec::RawPose, Codec::Motor16] {
        let mut receivers: Vec<Receiver> = Pipeline::ALL.iter().map(|&p| Receiver::new(p, 1, 15.0)).collect();
        for k in 0..30u64 {
            let send_us = k * INTERVAL_US;
            let sent = motion.pose_at(&model, send_us as f64 * 1e-6);
            let msg = encode(0, send_us / 1000, &Transform::Pose(sent), codec).unwrap();
            let arrival = send_us + 40_000;
            let mut at_arrival = Vec::new();
            let mut one_later = Vec::new();
            for rx in &mut receivers {
                assert!(rx.on_message(&msg, arrival).unwrap());
                at_arrival.push(rx.sample(0, arrival).unwrap());
                one_later.push(rx.sample(0, arrival + INTERVAL_US).unwrap());
            }
            for p in &at_arrival[1..] {
                assert!(close(p, &at_arrival[0], 1e-5), "{codec:?} message {k}");
            }
            // Endpoint exactness through the stack: alpha = 1 shows the
            // pose just sent, up to float32 rounding.
            for p in &one_later {
                assert!(close(p, &sent, 1e-5), "{codec:?} message {k}: {p:?} vs {sent:?}");
            }
        }
    }
}

#[test]
fn stale_messages_are_dropped() {
    let mut rx = Receiver::new(Pipeline::GaPooled, 1, 15.0);
    let a = encode(0, 100, &Transform::Pose(Pose::IDENTITY), Codec::Motor16).unwrap();
    let b = encode(0, 50, &Transform::Pose(Pose::IDENTITY), Codec::Motor16).unwrap();
    assert!(rx.on_message(&a, 0).unwrap());
    assert!(!rx.on_message(&b, 10).unwrap());
    assert_eq!(rx.dropped(), 1);
    let unknown = encode(5, 0, &Transform::Pose(Pose::IDENTITY), Codec::Motor16).unwrap();
    assert!(rx.on_message(&unknown, 0).is_err());
}

#[test]
fn jittered_runs_are_deterministic() {
    for pipeline in Pipeline::ALL {
        let mut cfg = SimConfig::new(pipeline, 10, 3.0, 1234);
        cfg.channel.jitter_ms = 100.0;
        let a = run_simulation(&cfg).unwrap();
        let b = run_simulation(&cfg).unwrap();
        assert!(a.same_outcome(&b), "{pipeline}");
        assert!(a.messages_dropped > 0, "heavy jitter reorders messages");
    }
}
