//! Hamilton quaternions, the polar form `x = x0 + u r`, and the split of a
//! displacement into the parts that commute and anticommute with `u`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{CalcError, Result};

/// `q0 + i q1 + j q2 + k q3`. Serialized as `[q0, q1, q2, q3]`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Quaternion {
    pub q0: f64,
    pub q1: f64,
    pub q2: f64,
    pub q3: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(q0: f64, q1: f64, q2: f64, q3: f64) -> Self {
        Self { q0, q1, q2, q3 }
    }

    pub const fn real(q0: f64) -> Self {
        Self::new(q0, 0.0, 0.0, 0.0)
    }

    pub fn to_array(self) -> [f64; 4] {
        [self.q0, self.q1, self.q2, self.q3]
    }

    pub fn scalar(self) -> f64 {
        self.q0
    }

    /// The imaginary part as a pure quaternion.
    pub fn vector(self) -> Self {
        Self::new(0.0, self.q1, self.q2, self.q3)
    }

    pub fn conj(self) -> Self {
        Self::new(self.q0, -self.q1, -self.q2, -self.q3)
    }

    pub fn norm_sqr(self) -> f64 {
        self.q0 * self.q0 + self.q1 * self.q1 + self.q2 * self.q2 + self.q3 * self.q3
    }

    pub fn norm(self) -> f64 {
        self.q0.hypot(self.q1).hypot(self.q2.hypot(self.q3))
    }

    /// Length of the imaginary part, `r`.
    pub fn imag_norm(self) -> f64 {
        self.q1.hypot(self.q2).hypot(self.q3)
    }

    pub fn dot(self, other: Self) -> f64 {
        self.q0 * other.q0 + self.q1 * other.q1 + self.q2 * other.q2 + self.q3 * other.q3
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(self) -> Option<Self> {
        let n2 = self.norm_sqr();
        if n2 == 0.0 || !n2.is_finite() {
            None
        } else {
            Some(self.conj() / n2)
        }
    }

    /// `self^n` by repeated squaring; negative `n` goes through the inverse.
    pub fn powi(self, n: i32) -> Option<Self> {
        let base = if n < 0 { self.inverse()? } else { self };
        let mut e = n.unsigned_abs();
        let mut acc = Self::ONE;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b;
            }
            b = b * b;
            e >>= 1;
        }
        Some(acc)
    }

    /// `a * b - b * a`.
    pub fn commutator(self, other: Self) -> Self {
        self * other - other * self
    }

    pub fn is_finite(self) -> bool {
        self.to_array().iter().all(|c| c.is_finite())
    }

    /// Componentwise `|a - b| <= atol + rtol * max(|a|, |b|)`.
    pub fn approx_eq(self, other: Self, atol: f64, rtol: f64) -> bool {
        self.to_array()
            .iter()
            .zip(other.to_array().iter())
            .all(|(a, b)| (a - b).abs() <= atol + rtol * a.abs().max(b.abs()))
    }

    /// Largest componentwise absolute difference.
    pub fn max_abs_diff(self, other: Self) -> f64 {
        (self - other)
            .to_array()
            .iter()
            .fold(0.0_f64, |m, c| m.max(c.abs()))
    }

    /// Threshold on `r` below which a point counts as pure real.
    pub fn r_min(self) -> f64 {
        R_MIN_FACTOR * (1.0 + self.norm())
    }

    /// Polar form `x0 + u r`; fails when `r <= r_min`.
    pub fn polar(self) -> Result<PolarForm> {
        let r = self.imag_norm();
        if r <= self.r_min() || !r.is_finite() {
            return Err(CalcError::PureRealInput { r });
        }
        Ok(PolarForm {
            x0: self.q0,
            r,
            u: self.vector() / r,
        })
    }

    /// Split `delta` at base point `self` into parallel and perpendicular parts.
    pub fn split(self, delta: Quaternion) -> Result<TangentSplit> {
        Ok(self.polar()?.split(delta))
    }
}

impl From<[f64; 4]> for Quaternion {
    fn from(a: [f64; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }
}

impl From<Quaternion> for [f64; 4] {
    fn from(q: Quaternion) -> Self {
        q.to_array()
    }
}

impl From<f64> for Quaternion {
    fn from(x: f64) -> Self {
        Self::real(x)
    }
}

/// Accepts a JSON 4-array `[q0, q1, q2, q3]` or a bare real number.
impl FromStr for Quaternion {
    type Err = CalcError;

    fn from_str(s: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(s.trim()).map_err(|e| CalcError::Parse(e.to_string()))?;
        let q = match value {
            serde_json::Value::Number(n) => Quaternion::real(
                n.as_f64()
                    .ok_or_else(|| CalcError::Parse(format!("not a float: {n}")))?,
            ),
            v @ serde_json::Value::Array(_) => {
                let a: [f64; 4] = serde_json::from_value(v)
                    .map_err(|e| CalcError::Parse(format!("expected [q0, q1, q2, q3]: {e}")))?;
                Quaternion::from(a)
            }
            other => {
                return Err(CalcError::Parse(format!(
                    "expected a number or a 4-array, got {other}"
                )))
            }
        };
        if !q.is_finite() {
            return Err(CalcError::Parse("non-finite component".into()));
        }
        Ok(q)
    }
}

impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}, {}]", self.q0, self.q1, self.q2, self.q3)
    }
}

impl Add for Quaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(
            self.q0 + o.q0,
            self.q1 + o.q1,
            self.q2 + o.q2,
            self.q3 + o.q3,
        )
    }
}

impl AddAssign for Quaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Quaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(
            self.q0 - o.q0,
            self.q1 - o.q1,
            self.q2 - o.q2,
            self.q3 - o.q3,
        )
    }
}

impl SubAssign for Quaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

impl Neg for Quaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.q0, -self.q1, -self.q2, -self.q3)
    }
}

/// Hamilton product.
impl Mul for Quaternion {
    type Output = Self;
    fn mul(self, b: Self) -> Self {
        let a = self;
        Self::new(
            a.q0 * b.q0 - a.q1 * b.q1 - a.q2 * b.q2 - a.q3 * b.q3,
            a.q0 * b.q1 + a.q1 * b.q0 + a.q2 * b.q3 - a.q3 * b.q2,
            a.q0 * b.q2 - a.q1 * b.q3 + a.q2 * b.q0 + a.q3 * b.q1,
            a.q0 * b.q3 + a.q1 * b.q2 - a.q2 * b.q1 + a.q3 * b.q0,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self::new(self.q0 * s, self.q1 * s, self.q2 * s, self.q3 * s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;
    fn mul(self, q: Quaternion) -> Quaternion {
        q * self
    }
}

impl Div<f64> for Quaternion {
    type Output = Self;
    fn div(self, s: f64) -> Self {
        Self::new(self.q0 / s, self.q1 / s, self.q2 / s, self.q3 / s)
    }
}

impl Sum for Quaternion {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::ZERO, |a, b| a + b)
    }
}

/// Relative factor for the pure-real threshold: `r_min = 1e-12 (1 + |x|)`.
pub const R_MIN_FACTOR: f64 = 1e-12;

/// `x = x0 + u r` with `u` a unit imaginary and `r > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolarForm {
    pub x0: f64,
    pub r: f64,
    pub u: Quaternion,
}

impl PolarForm {
    pub fn to_quaternion(&self) -> Quaternion {
        Quaternion::real(self.x0) + self.u * self.r
    }

    /// Lifts a complex number `a + i b` to `a + b u`.
    pub fn lift(&self, a: f64, b: f64) -> Quaternion {
        Quaternion::real(a) + self.u * b
    }

    pub fn split(&self, delta: Quaternion) -> TangentSplit {
        let udu = self.u * delta * self.u;
        let parallel = (delta - udu) * 0.5;
        TangentSplit {
            parallel,
            perp: delta - parallel,
            frame: *self,
        }
    }
}

/// `delta = parallel + perp`, relative to the frame of a base point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangentSplit {
    pub parallel: Quaternion,
    pub perp: Quaternion,
    pub frame: PolarForm,
}

impl TangentSplit {
    pub fn delta(&self) -> Quaternion {
        self.parallel + self.perp
    }
}
