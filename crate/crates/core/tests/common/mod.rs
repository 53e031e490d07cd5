#![allow(dead_code)]

use cga_motion::geom::{Pose, Quat, Vec3};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn vec_in(rng: &mut ChaCha8Rng, r: f64) -> Vec3 {
    Vec3::new(rng.gen_range(-r..r), rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn unit_vec(rng: &mut ChaCha8Rng) -> Vec3 {
    loop {
        let v = vec_in(rng, 1.0);
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v.normalized();
        }
    }
}

pub fn quat(rng: &mut ChaCha8Rng) -> Quat {
    Quat::from_axis_angle(unit_vec(rng), rng.gen_range(0.0..std::f64::consts::TAU))
}

pub fn pose(rng: &mut ChaCha8Rng) -> Pose {
    Pose::new(vec_in(rng, 10.0), quat(rng), rng.gen_range(0.1..10.0))
}

/// A pose near `a`: relative rotation up to `max_deg` about a random axis,
/// translation offset up to `max_dt`, scale ratio within `max_ratio`.
pub fn nearby(rng: &mut ChaCha8Rng, a: &Pose, max_deg: f64, max_dt: f64, max_ratio: f64) -> Pose {
    let dq = Quat::from_axis_angle(unit_vec(rng), rng.gen_range(0.0..=max_deg.to_radians()));
    Pose::new(
        a.translation + unit_vec(rng) * rng.gen_range(0.0..=max_dt),
        a.rotation * dq,
        a.scale * rng.gen_range(1.0 / max_ratio..=max_ratio),
    )
}

/// Corners of the unit cube, the origin first.
pub fn cube_corners() -> Vec<Vec3> {
    (0..8)
        .map(|i| Vec3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64))
        .collect()
}

/// Independent basis-blade multiplier on index strings.
pub mod oracle {
    /// Metric signature: e1..e4 square to +1, e5 to -1.
    pub fn metric(i: u8) -> f64 {
        if i == 5 {
            -1.0
        } else {
            1.0
        }
    }

    /// Basis blades as sorted index lists in grade-major lexicographic order.
    pub fn basis() -> Vec<Vec<u8>> {
        fn combos(start: u8, k: usize) -> Vec<Vec<u8>> {
            if k == 0 {
                return vec![vec![]];
            }
            (start..=5)
                .flat_map(|i| {
                    combos(i + 1, k - 1).into_iter().map(move |mut rest| {
                        rest.insert(0, i);
                        rest
                    })
                })
                .collect()
        }
        (0..=5).flat_map(|k| combos(1, k)).collect()
    }

    /// Product of two basis blades: concatenate, bubble sort counting swaps,
    /// then contract equal neighbours with the metric.
    pub fn multiply(a: &[u8], b: &[u8]) -> (f64, Vec<u8>) {
        let mut v: Vec<u8> = a.iter().chain(b).copied().collect();
        let mut sign = 1.0;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    sign = -sign;
                }
            }
        }
        let mut out = Vec::new();
        let mut i = 0;
        while i < v.len() {
            if i + 1 < v.len() && v[i] == v[i + 1] {
                sign *= metric(v[i]);
                i += 2;
            } else {
                out.push(v[i]);
                i += 1;
            }
        }
        (sign, out)
    }

    pub fn name(b: &[u8]) -> String {
        if b.is_empty() {
            "1".into()
        } else {
            format!("e{}", b.iter().map(|i| i.to_string()).collect::<String>())
        }
    }
}
