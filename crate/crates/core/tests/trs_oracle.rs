//! Motor sandwich and decomposition against an independent TRS oracle
//! built with nalgebra.

mod common;

use cga_motion::geom::{Pose, Vec3};
use cga_motion::motor::{
    dilator, embed_point, embed_sphere, extract_sphere, extract_trd, point_location, pose_motor, rotor, sandwich,
    translator,
};
use common::*;
use nalgebra::{Point3, Quaternion, Similarity3, Translation3, UnitQuaternion};
use rand::Rng;

fn oracle(p: &Pose) -> Similarity3<f64> {
    let q = p.rotation;
    Similarity3::from_parts(
        Translation3::new(p.translation.x, p.translation.y, p.translation.z),
        UnitQuaternion::from_quaternion(Quaternion::new(q.w, q.x, q.y, q.z)),
        p.scale,
    )
}

#[test]
fn sandwich_matches_similarity_matrix() {
    let mut rng = rng(11);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let pose = common::pose(&mut rng);
        let m = pose_motor(&pose).unwrap();
        let sim = oracle(&pose);
        for _ in 0..10 {
            let x = vec_in(&mut rng, 10.0);
            let got = point_location(&sandwich(&m, &embed_point(x)).unwrap()).unwrap();
            let want = sim.transform_point(&Point3::new(x.x, x.y, x.z));
            let want = Vec3::new(want.x, want.y, want.z);
            worst = worst.max(got.distance(want) / want.norm().max(1.0));
        }
    }
    assert!(worst <= 1e-6, "worst relative error {worst:e}");
}

#[test]
fn decomposition_round_trip() {
    let mut rng = rng(12);
    for _ in 0..1000 {
        let pose = common::pose(&mut rng);
        let m = translator(pose.translation) * rotor(pose.rotation).unwrap() * dilator(pose.scale).unwrap();
        let got = extract_trd(&m).unwrap();
        assert!(
            got.translation.distance(pose.translation) <= 1e-6,
            "{pose:?} -> {got:?}"
        );
        assert!(got.rotation.same_rotation(pose.rotation, 1e-6), "{pose:?} -> {got:?}");
        assert!(
            (got.scale - pose.scale).abs() <= 1e-6 * pose.scale,
            "{pose:?} -> {got:?}"
        );
    }
}

#[test]
fn unit_sphere_has_radius_one() {
    let s = extract_sphere(&embed_sphere(Vec3::ZERO, 1.0)).unwrap();
    assert!((s.radius - 1.0).abs() < 1e-15);
    assert!((s.radius - 2f64.sqrt()).abs() > 0.4);
}

#[test]
fn sphere_round_trip() {
    let mut rng = rng(13);
    for _ in 0..1000 {
        let c = vec_in(&mut rng, 10.0);
        let r = rng.gen_range(0.01..10.0);
        let s = extract_sphere(&embed_sphere(c, r)).unwrap();
        assert!(s.center.distance(c) < 1e-9);
        assert!((s.radius - r).abs() < 1e-9, "{r} -> {}", s.radius);
    }
}
