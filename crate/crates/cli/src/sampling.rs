//! Seeded generators for suite inputs. Every case draws from its own stream,
//! keyed by the run seed and the case name, so cases can run in any order.

use qcalc::su2::Su2Element;
use qcalc::{AnalyticFunction, Quaternion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CaseRng = ChaCha8Rng;

/// FNV-1a, used only to mix the case name into the seed.
fn fnv1a(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

pub fn rng_for(seed: u64, case: &str) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed ^ fnv1a(case))
}

/// Uniform direction in R^3.
pub fn direction3(rng: &mut CaseRng) -> [f64; 3] {
    loop {
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if n > 1e-3 && n <= 1.0 {
            return v.map(|c| c / n);
        }
    }
}

/// Unit quaternion, uniform on the 3-sphere.
pub fn unit_quaternion(rng: &mut CaseRng) -> Quaternion {
    loop {
        let q = Quaternion::new(
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
            rng.random_range(-1.0..1.0),
        );
        let n = q.norm();
        if n > 1e-3 && n <= 1.0 {
            return q / n;
        }
    }
}

/// A point with `r_min < r < 1.5` and `|x| < 2`.
pub fn point(rng: &mut CaseRng, r_min: f64) -> Quaternion {
    loop {
        let x0 = rng.random_range(-1.2..1.2);
        let r = rng.random_range(r_min..1.5);
        let [a, b, c] = direction3(rng);
        let x = Quaternion::new(x0, a * r, b * r, c * r);
        if x.norm() < 2.0 {
            return x;
        }
    }
}

/// An su(2) element with `r_min < r < 1.5` and norm below 2.
pub fn su2_point(rng: &mut CaseRng, r_min: f64) -> Su2Element {
    let x = point(rng, r_min);
    Su2Element::new(x.q0, x.q1, x.q2, x.q3)
}

pub fn su2_direction(rng: &mut CaseRng) -> Su2Element {
    let d = unit_quaternion(rng);
    Su2Element::new(d.q0, d.q1, d.q2, d.q3)
}

pub fn real_coefficients(rng: &mut CaseRng, len: usize) -> Vec<Quaternion> {
    (0..len)
        .map(|_| Quaternion::real(rng.random_range(-1.0..1.0)))
        .collect()
}

pub fn left_coefficients(rng: &mut CaseRng, len: usize) -> Vec<Quaternion> {
    (0..len)
        .map(|_| {
            Quaternion::new(
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
                rng.random_range(-1.0..1.0),
            )
        })
        .collect()
}

/// A real-coefficient function drawn from a small zoo.
pub fn real_function(rng: &mut CaseRng) -> AnalyticFunction {
    use AnalyticFunction::*;
    match rng.random_range(0..7) {
        0 => Exp,
        1 => Sin,
        2 => Cos,
        3 => Pow(rng.random_range(1..=5)),
        4 => AnalyticFunction::poly(real_coefficients(rng, 4)),
        5 => AnalyticFunction::series(real_coefficients(rng, 3), rng.random_range(-0.5..0.5)),
        _ => AnalyticFunction::scaled(Quaternion::real(rng.random_range(-2.0..2.0)), Exp),
    }
}

/// Waypoints whose connecting segments all keep `r >= 0.3`: every vector
/// part has a component of at least 0.3 along a shared axis.
pub fn off_axis_waypoints(rng: &mut CaseRng, count: usize) -> Vec<Quaternion> {
    let n = direction3(rng);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let along = rng.random_range(0.3..1.1);
        let [a, b, c] = direction3(rng);
        let spread = rng.random_range(0.0..0.8);
        let v = [
            n[0] * along + a * spread,
            n[1] * along + b * spread,
            n[2] * along + c * spread,
        ];
        let dot = v[0] * n[0] + v[1] * n[1] + v[2] * n[2];
        let x = Quaternion::new(rng.random_range(-0.8..0.8), v[0], v[1], v[2]);
        let distinct = out
            .last()
            .is_none_or(|p: &Quaternion| (*p - x).norm() > 0.3);
        if dot >= 0.3 && x.norm() < 2.0 && distinct {
            out.push(x);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn streams_depend_on_seed_and_name() {
        let a: f64 = rng_for(1, "a").random();
        let b: f64 = rng_for(1, "b").random();
        let a2: f64 = rng_for(1, "a").random();
        let c: f64 = rng_for(2, "a").random();
        assert_eq!(a, a2);
        assert_ne!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn off_axis_paths_stay_off_axis() {
        let mut rng = rng_for(3, "paths");
        for _ in 0..50 {
            let w = off_axis_waypoints(&mut rng, 3);
            for pair in w.windows(2) {
                for k in 0..=20 {
                    let t = f64::from(k) / 20.0;
                    let p = pair[0] * (1.0 - t) + pair[1] * t;
                    assert!(p.imag_norm() >= 0.3 - 1e-12);
                }
            }
        }
    }

    #[test]
    fn points_respect_bounds() {
        let mut rng = rng_for(5, "pts");
        for _ in 0..200 {
            let x = point(&mut rng, 0.1);
            assert!(x.imag_norm() >= 0.1 && x.norm() < 2.0);
            assert!((unit_quaternion(&mut rng).norm() - 1.0).abs() < 1e-15);
        }
    }
}
