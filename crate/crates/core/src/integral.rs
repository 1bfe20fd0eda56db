//! Path integrals.
//!
//! `int_a^b D F(x)` is the sum of `D F(x_{n-1})` over the straight increments
//! `x_n - x_{n-1}` of a refined polyline; it converges to `F(b) - F(a)` at
//! rate `O(1/N)`, independently of the path. The symmetric integral places
//! the increment in every slot of `x^n` with equal weight.

use serde::{Deserialize, Serialize};

use crate::analytic::AnalyticFunction;
use crate::differential::first_order;
use crate::error::{CalcError, Result};
use crate::quaternion::Quaternion;

/// A polyline through `waypoints`, each leg cut into `segments_per_leg`
/// equal straight increments.
///
/// JSON form: `{"waypoints": [[q0,q1,q2,q3], ...], "segments_per_leg": N}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawPath")]
pub struct Path {
    waypoints: Vec<Quaternion>,
    segments_per_leg: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawPath {
    waypoints: Vec<Quaternion>,
    segments_per_leg: usize,
}

impl TryFrom<RawPath> for Path {
    type Error = CalcError;
    fn try_from(raw: RawPath) -> Result<Self> {
        Path::new(raw.waypoints, raw.segments_per_leg)
    }
}

impl Path {
    pub fn new(waypoints: Vec<Quaternion>, segments_per_leg: usize) -> Result<Self> {
        if waypoints.len() < 2 {
            return Err(CalcError::InvalidArgument(
                "a path needs at least two waypoints".into(),
            ));
        }
        if segments_per_leg == 0 {
            return Err(CalcError::InvalidArgument(
                "segments_per_leg must be positive".into(),
            ));
        }
        if let Some(w) = waypoints.iter().find(|w| !w.is_finite()) {
            return Err(CalcError::InvalidArgument(format!(
                "non-finite waypoint {w}"
            )));
        }
        if let Some(i) = waypoints.windows(2).position(|w| w[0] == w[1]) {
            return Err(CalcError::InvalidArgument(format!(
                "waypoints {i} and {} coincide",
                i + 1
            )));
        }
        Ok(Self {
            waypoints,
            segments_per_leg,
        })
    }

    /// Straight line from `a` to `b`.
    pub fn segment(a: Quaternion, b: Quaternion, n: usize) -> Result<Self> {
        Self::new(vec![a, b], n)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| CalcError::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("path serializes")
    }

    pub fn waypoints(&self) -> &[Quaternion] {
        &self.waypoints
    }

    pub fn segments_per_leg(&self) -> usize {
        self.segments_per_leg
    }

    pub fn start(&self) -> Quaternion {
        self.waypoints[0]
    }

    pub fn end(&self) -> Quaternion {
        *self.waypoints.last().expect("at least two waypoints")
    }

    /// Same waypoints, different refinement.
    pub fn with_segments(&self, segments_per_leg: usize) -> Result<Self> {
        Self::new(self.waypoints.clone(), segments_per_leg)
    }

    /// `self` followed by `other`; `other` must start where `self` ends.
    pub fn concat(&self, other: &Path) -> Result<Self> {
        if self.end() != other.start() || self.segments_per_leg != other.segments_per_leg {
            return Err(CalcError::InvalidArgument(
                "paths must share an endpoint and a refinement".into(),
            ));
        }
        let mut w = self.waypoints.clone();
        w.extend_from_slice(&other.waypoints[1..]);
        Self::new(w, self.segments_per_leg)
    }

    /// All refinement points, `x_0 = start` through `x_M = end`.
    pub fn points(&self) -> Vec<Quaternion> {
        let n = self.segments_per_leg;
        let mut pts = Vec::with_capacity(n * (self.waypoints.len() - 1) + 1);
        for leg in self.waypoints.windows(2) {
            let (a, b) = (leg[0], leg[1]);
            let step = b - a;
            for k in 0..n {
                pts.push(a + step * (k as f64 / n as f64));
            }
        }
        pts.push(self.end());
        pts
    }

    /// `(x_{n-1}, x_n - x_{n-1})` for every increment.
    pub fn increments(&self) -> Vec<(Quaternion, Quaternion)> {
        self.points()
            .windows(2)
            .map(|w| (w[0], w[1] - w[0]))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSum {
    pub value: Quaternion,
    pub increments: usize,
    /// Increments whose start point sat on the real axis.
    pub real_axis_hits: usize,
}

/// `int D F` along the path, each increment evaluated at its start.
pub fn line_integral_d(f: &AnalyticFunction, path: &Path) -> Result<PathSum> {
    let mut value = Quaternion::ZERO;
    let mut hits = 0;
    let incs = path.increments();
    for &(x, delta) in &incs {
        let d = first_order(f, x, delta)?;
        if d.frame.is_none() {
            hits += 1;
        }
        value += d.value;
    }
    Ok(PathSum {
        value,
        increments: incs.len(),
        real_axis_hits: hits,
    })
}

/// Both sides of `int F D G = F G |_a^b - int (D F) G`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PartsSides {
    pub lhs: Quaternion,
    pub rhs: Quaternion,
}

pub fn line_integral_parts(
    f: &AnalyticFunction,
    g: &AnalyticFunction,
    path: &Path,
) -> Result<PartsSides> {
    for h in [f, g] {
        if !h.is_real_coefficient() {
            return Err(CalcError::NotRealCoefficient(h.to_string()));
        }
    }
    let mut lhs = Quaternion::ZERO;
    let mut tail = Quaternion::ZERO;
    for (x, delta) in path.increments() {
        let fx = f.eval(x)?;
        let gx = g.eval(x)?;
        lhs += fx * first_order(g, x, delta)?.value;
        tail += first_order(f, x, delta)?.value * gx;
    }
    let (a, b) = (path.start(), path.end());
    let rhs = f.eval(b)? * g.eval(b)? - f.eval(a)? * g.eval(a)? - tail;
    Ok(PartsSides { lhs, rhs })
}

/// `1/(n+1) int (dx x^n + x dx x^{n-1} + ... + x^n dx)`.
pub fn symmetric_integral(n: u32, path: &Path) -> Quaternion {
    let weight = 1.0 / (f64::from(n) + 1.0);
    let n = n as usize;
    let mut acc = Quaternion::ZERO;
    let mut powers = vec![Quaternion::ONE; n + 1];
    for (x, delta) in path.increments() {
        for m in 1..=n {
            powers[m] = powers[m - 1] * x;
        }
        let mut term = Quaternion::ZERO;
        for m in 0..=n {
            term += powers[m] * delta * powers[n - m];
        }
        acc += term * weight;
    }
    acc
}

/// Real sample points used to confirm `h' = f` before integrating.
pub const ANTIDERIVATIVE_SAMPLES: [f64; 10] =
    [0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75, 2.0, 2.25, 2.5];

/// `int f(t) dt -> int D h(x) = h(x)`: integrates `D h` along the path once
/// `h' = f` has been confirmed at real sample points.
pub fn antiderivative_rule(
    integrand: &AnalyticFunction,
    antiderivative: &AnalyticFunction,
    path: &Path,
) -> Result<PathSum> {
    let dh = antiderivative.derivative();
    for t in ANTIDERIVATIVE_SAMPLES {
        let x = Quaternion::real(t);
        let (d, f) = (dh.eval(x)?, integrand.eval(x)?);
        if d.max_abs_diff(f) > 1e-10 * (1.0 + f.norm()) {
            return Err(CalcError::AntiderivativeMismatch {
                t,
                derivative: d,
                integrand: f,
            });
        }
    }
    line_integral_d(antiderivative, path)
}
