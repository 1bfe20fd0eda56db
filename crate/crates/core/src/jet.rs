//! Truncated Taylor expansions (value plus three derivatives) at a complex
//! point, over the complex numbers and over complexified quaternions.

use std::ops::{Add, Mul};

use num_complex::Complex64;

use crate::quaternion::Quaternion;

/// Number of Taylor coefficients carried (orders 0 through 3).
pub const LEN: usize = 4;

const FACT: [f64; LEN] = [1.0, 1.0, 2.0, 6.0];

/// Taylor coefficients `f^(k)(z) / k!` of a complex function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CJet(pub [Complex64; LEN]);

impl CJet {
    pub fn constant(c: Complex64) -> Self {
        let mut a = [Complex64::new(0.0, 0.0); LEN];
        a[0] = c;
        CJet(a)
    }

    /// The identity function expanded at `z`.
    pub fn variable(z: Complex64) -> Self {
        let mut j = Self::constant(z);
        j.0[1] = Complex64::new(1.0, 0.0);
        j
    }

    /// Builds a jet from derivative values `f, f', f'', f'''`.
    pub fn from_derivatives(d: [Complex64; LEN]) -> Self {
        let mut a = d;
        for (c, f) in a.iter_mut().zip(FACT) {
            *c /= f;
        }
        CJet(a)
    }

    pub fn value(&self) -> Complex64 {
        self.0[0]
    }

    /// `f^(k)(z)`.
    pub fn derivative(&self, k: usize) -> Complex64 {
        self.0[k] * FACT[k]
    }

    /// The jet with its constant term removed.
    fn shifted(&self) -> Self {
        let mut t = *self;
        t.0[0] = Complex64::new(0.0, 0.0);
        t
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }
}

impl Add for CJet {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x += y;
        }
        CJet(a)
    }
}

impl Mul for CJet {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let mut a = [Complex64::new(0.0, 0.0); LEN];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in o.0.iter().enumerate().take(LEN - i) {
                a[i + j] += x * y;
            }
        }
        CJet(a)
    }
}

impl Mul<Complex64> for CJet {
    type Output = Self;
    fn mul(self, s: Complex64) -> Self {
        CJet(self.0.map(|c| c * s))
    }
}

/// `re + I im` with `I` a central imaginary unit commuting with `i, j, k`.
///
/// A left-coefficient function `sum c_n x^n` evaluated through the complex
/// lift accumulates `sum c_n (a_n + I b_n)`; substituting `u` for `I` on the
/// right gives the quaternion value.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Biquat {
    pub re: Quaternion,
    pub im: Quaternion,
}

impl Biquat {
    pub const ZERO: Biquat = Biquat {
        re: Quaternion::ZERO,
        im: Quaternion::ZERO,
    };

    pub fn from_complex(c: Complex64) -> Self {
        Biquat {
            re: Quaternion::real(c.re),
            im: Quaternion::real(c.im),
        }
    }

    pub fn from_quaternion(q: Quaternion) -> Self {
        Biquat {
            re: q,
            im: Quaternion::ZERO,
        }
    }

    pub fn left_mul(self, c: Quaternion) -> Self {
        Biquat {
            re: c * self.re,
            im: c * self.im,
        }
    }

    /// `re + im u`.
    pub fn lift(self, u: Quaternion) -> Quaternion {
        self.re + self.im * u
    }
}

impl Add for Biquat {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Biquat {
            re: self.re + o.re,
            im: self.im + o.im,
        }
    }
}

impl Mul<Complex64> for Biquat {
    type Output = Self;
    fn mul(self, s: Complex64) -> Self {
        Biquat {
            re: self.re * s.re - self.im * s.im,
            im: self.re * s.im + self.im * s.re,
        }
    }
}

/// Taylor coefficients with complexified-quaternion values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QJet(pub [Biquat; LEN]);

impl QJet {
    pub fn zero() -> Self {
        QJet([Biquat::ZERO; LEN])
    }

    pub fn from_complex(j: CJet) -> Self {
        QJet(j.0.map(Biquat::from_complex))
    }

    pub fn left_mul(self, c: Quaternion) -> Self {
        QJet(self.0.map(|b| b.left_mul(c)))
    }

    pub fn derivative(&self, k: usize) -> Biquat {
        let b = self.0[k];
        Biquat {
            re: b.re * FACT[k],
            im: b.im * FACT[k],
        }
    }

    /// Cauchy product with a complex jet (the complex factor is central).
    pub fn mul_complex(self, o: CJet) -> Self {
        let mut a = [Biquat::ZERO; LEN];
        for (i, x) in self.0.iter().enumerate() {
            for (j, y) in o.0.iter().enumerate().take(LEN - i) {
                a[i + j] = a[i + j] + *x * *y;
            }
        }
        QJet(a)
    }

    /// Composes `self` (expanded at `inner.value()`) with `inner`.
    pub fn compose(self, inner: CJet) -> Self {
        let t = inner.shifted();
        let mut acc = QJet::zero();
        acc.0[0] = self.0[0];
        let mut power = CJet::constant(Complex64::new(1.0, 0.0));
        for k in 1..LEN {
            power = power * t;
            let mut term = QJet::zero();
            term.0[0] = self.0[k];
            acc = acc + term.mul_complex(power);
        }
        acc
    }

    pub fn is_finite(&self) -> bool {
        self.0.iter().all(|b| b.re.is_finite() && b.im.is_finite())
    }
}

impl Add for QJet {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut a = self.0;
        for (x, y) in a.iter_mut().zip(o.0) {
            *x = *x + y;
        }
        QJet(a)
    }
}

/// Composition of complex jets.
pub fn compose_complex(outer: CJet, inner: CJet) -> CJet {
    let t = inner.shifted();
    let mut acc = CJet::constant(outer.0[0]);
    let mut power = CJet::constant(Complex64::new(1.0, 0.0));
    for k in 1..LEN {
        power = power * t;
        acc = acc + power * outer.0[k];
    }
    acc
}
