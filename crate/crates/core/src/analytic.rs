//! Real-analytic functions of a quaternion argument.
//!
//! A function with real coefficients is evaluated at `x = x0 + u r` by
//! computing `f(x0 + i r) = a + i b` over the complex numbers and returning
//! `a + b u`. Quaternion coefficients are allowed only on the left, so a
//! series `sum c_n (x - center)^n` lifts term by term to `sum c_n (a_n + b_n u)`.
//! Expressions such as `x a x` with a quaternion `a` in the middle have no
//! representation here.

use std::fmt;

use num_complex::Complex64;

use crate::error::{CalcError, Result};
use crate::jet::{compose_complex, Biquat, CJet, QJet, LEN};
use crate::quaternion::{PolarForm, Quaternion};

/// Below this imaginary radius the perpendicular ratio switches to its
/// Taylor limit `f'(x0) - f'''(x0) r^2 / 6`.
pub const R_SWITCH: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq)]
pub enum AnalyticFunction {
    Exp,
    Sin,
    Cos,
    /// Principal branch.
    Log,
    Recip,
    Pow(i32),
    /// `sum_n coeffs[n] (x - center)^n`, coefficients on the left.
    Series {
        coeffs: Vec<Quaternion>,
        center: f64,
    },
    /// `coeff * inner(x)`.
    Scaled {
        coeff: Quaternion,
        inner: Box<AnalyticFunction>,
    },
    Sum(Box<AnalyticFunction>, Box<AnalyticFunction>),
    /// `f(x) g(x)`; `g` must have real coefficients.
    Product(Box<AnalyticFunction>, Box<AnalyticFunction>),
    /// `outer(inner(x))`; `inner` must have real coefficients.
    Compose {
        outer: Box<AnalyticFunction>,
        inner: Box<AnalyticFunction>,
    },
}

/// Values of `F` and its first derivatives at `x` and at `conj(x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalValues {
    pub frame: PolarForm,
    pub value: Quaternion,
    pub value_conj: Quaternion,
    pub d1: Quaternion,
    pub d1_conj: Quaternion,
    pub d2: Quaternion,
    pub perp_ratio: Quaternion,
}

impl AnalyticFunction {
    pub fn constant(c: impl Into<Quaternion>) -> Self {
        Self::Series {
            coeffs: vec![c.into()],
            center: 0.0,
        }
    }

    /// Polynomial about the origin with left coefficients.
    pub fn poly(coeffs: Vec<Quaternion>) -> Self {
        Self::series(coeffs, 0.0)
    }

    pub fn series(coeffs: Vec<Quaternion>, center: f64) -> Self {
        Self::Series { coeffs, center }
    }

    pub fn scaled(coeff: impl Into<Quaternion>, inner: Self) -> Self {
        Self::Scaled {
            coeff: coeff.into(),
            inner: Box::new(inner),
        }
    }

    pub fn sum(a: Self, b: Self) -> Self {
        Self::Sum(Box::new(a), Box::new(b))
    }

    pub fn product(f: Self, g: Self) -> Result<Self> {
        if !g.is_real_coefficient() {
            return Err(CalcError::NotRealCoefficient(g.to_string()));
        }
        Ok(Self::Product(Box::new(f), Box::new(g)))
    }

    pub fn compose(outer: Self, inner: Self) -> Result<Self> {
        if !inner.is_real_coefficient() {
            return Err(CalcError::NotRealCoefficient(inner.to_string()));
        }
        Ok(Self::Compose {
            outer: Box::new(outer),
            inner: Box::new(inner),
        })
    }

    /// True when every coefficient is a real number.
    pub fn is_real_coefficient(&self) -> bool {
        use AnalyticFunction::*;
        match self {
            Exp | Sin | Cos | Log | Recip | Pow(_) => true,
            Series { coeffs, .. } => coeffs.iter().all(|c| c.vector() == Quaternion::ZERO),
            Scaled { coeff, inner } => {
                coeff.vector() == Quaternion::ZERO && inner.is_real_coefficient()
            }
            Sum(a, b) | Product(a, b) => a.is_real_coefficient() && b.is_real_coefficient(),
            Compose { outer, .. } => outer.is_real_coefficient(),
        }
    }

    /// `F'`, computed as if the variable were real.
    pub fn derivative(&self) -> Self {
        use AnalyticFunction::*;
        match self {
            Exp => Exp,
            Sin => Cos,
            Cos => Self::scaled(-1.0, Sin),
            Log => Recip,
            Recip => Self::scaled(-1.0, Pow(-2)),
            Pow(0) => Self::constant(0.0),
            Pow(n) => Self::scaled(f64::from(*n), Pow(n - 1)),
            Series { coeffs, center } => {
                let d: Vec<Quaternion> = coeffs
                    .iter()
                    .enumerate()
                    .skip(1)
                    .map(|(n, c)| *c * n as f64)
                    .collect();
                if d.is_empty() {
                    Self::series(vec![Quaternion::ZERO], *center)
                } else {
                    Self::series(d, *center)
                }
            }
            Scaled { coeff, inner } => Self::scaled(*coeff, inner.derivative()),
            Sum(a, b) => Self::sum(a.derivative(), b.derivative()),
            Product(f, g) => Self::sum(
                Product(Box::new(f.derivative()), g.clone()),
                Product(f.clone(), Box::new(g.derivative())),
            ),
            Compose { outer, inner } => Product(
                Box::new(Compose {
                    outer: Box::new(outer.derivative()),
                    inner: inner.clone(),
                }),
                Box::new(inner.derivative()),
            ),
        }
    }

    /// Taylor jet of a real-coefficient function at a complex point.
    pub(crate) fn complex_jet(&self, z: Complex64) -> Result<CJet> {
        use AnalyticFunction::*;
        let jet = match self {
            Exp | Sin | Cos | Log | Recip | Pow(_) => CJet::from_derivatives(elementary(self, z)?),
            Series { coeffs, center } => {
                if !self.is_real_coefficient() {
                    return Err(CalcError::NotRealCoefficient(self.to_string()));
                }
                let w = CJet::variable(z - center);
                let mut acc = CJet::constant(Complex64::new(0.0, 0.0));
                for c in coeffs.iter().rev() {
                    acc = acc * w + CJet::constant(Complex64::new(c.q0, 0.0));
                }
                acc
            }
            Scaled { coeff, inner } => {
                if coeff.vector() != Quaternion::ZERO {
                    return Err(CalcError::NotRealCoefficient(self.to_string()));
                }
                inner.complex_jet(z)? * Complex64::new(coeff.q0, 0.0)
            }
            Sum(a, b) => a.complex_jet(z)? + b.complex_jet(z)?,
            Product(f, g) => f.complex_jet(z)? * g.complex_jet(z)?,
            Compose { outer, inner } => {
                let g = inner.complex_jet(z)?;
                compose_complex(outer.complex_jet(g.value())?, g)
            }
        };
        finite_c(jet)
    }

    /// Taylor jet with complexified-quaternion values; works for left coefficients.
    pub(crate) fn jet(&self, z: Complex64) -> Result<QJet> {
        use AnalyticFunction::*;
        let jet = match self {
            Exp | Sin | Cos | Log | Recip | Pow(_) => QJet::from_complex(self.complex_jet(z)?),
            Series { coeffs, center } => {
                let w = CJet::variable(z - center);
                let mut acc = QJet::zero();
                for c in coeffs.iter().rev() {
                    acc = acc.mul_complex(w);
                    acc.0[0] = acc.0[0] + Biquat::from_quaternion(*c);
                }
                acc
            }
            Scaled { coeff, inner } => inner.jet(z)?.left_mul(*coeff),
            Sum(a, b) => a.jet(z)? + b.jet(z)?,
            Product(f, g) => f.jet(z)?.mul_complex(g.complex_jet(z)?),
            Compose { outer, inner } => {
                let g = inner.complex_jet(z)?;
                outer.jet(g.value())?.compose(g)
            }
        };
        if jet.is_finite() {
            Ok(jet)
        } else {
            Err(CalcError::Domain(format!(
                "non-finite value of {self} at {z}"
            )))
        }
    }

    /// `f(z)` for a real-coefficient function.
    pub fn eval_complex(&self, z: Complex64) -> Result<Complex64> {
        Ok(self.complex_jet(z)?.value())
    }

    /// `f^(k)(z)` for `k <= 3`, real-coefficient functions only.
    pub fn eval_complex_derivative(&self, z: Complex64, k: usize) -> Result<Complex64> {
        check_order(k)?;
        Ok(self.complex_jet(z)?.derivative(k))
    }

    /// `F(x)`.
    pub fn eval(&self, x: Quaternion) -> Result<Quaternion> {
        self.eval_derivative(x, 0)
    }

    /// `F^(k)(x)` for `k <= 3`, the derivative taken as if `x` were real.
    pub fn eval_derivative(&self, x: Quaternion, k: usize) -> Result<Quaternion> {
        check_order(k)?;
        let (z, u) = lift_point(x);
        Ok(self.jet(z)?.derivative(k).lift(u))
    }

    /// `(F(x) - F(x*)) (x - x*)^-1`.
    ///
    /// Real for real-coefficient `F`. Near the real axis the Taylor limit
    /// `F'(x0) - F'''(x0) r^2 / 6` is returned instead of the quotient.
    pub fn perp_ratio(&self, x: Quaternion) -> Result<Quaternion> {
        let r = x.imag_norm();
        if r <= R_SWITCH {
            match self.jet(Complex64::new(x.q0, 0.0)) {
                Ok(j) => return Ok(j.0[1].re - j.0[3].re * (r * r)),
                Err(e) if r == 0.0 => return Err(e),
                // Branch point on the real axis: the quotient is still defined.
                Err(_) => {}
            }
        }
        let j = self.jet(Complex64::new(x.q0, r))?;
        Ok(j.0[0].im / r)
    }

    /// Everything the first- and second-order differentials need at `x`.
    pub fn local_values(&self, x: Quaternion) -> Result<LocalValues> {
        let frame = x.polar()?;
        let j = self.jet(Complex64::new(frame.x0, frame.r))?;
        let u = frame.u;
        let d1 = j.derivative(1);
        Ok(LocalValues {
            frame,
            value: j.0[0].lift(u),
            value_conj: j.0[0].lift(-u),
            d1: d1.lift(u),
            d1_conj: d1.lift(-u),
            d2: j.derivative(2).lift(u),
            perp_ratio: self.perp_ratio(x)?,
        })
    }
}

fn check_order(k: usize) -> Result<()> {
    if k < LEN {
        Ok(())
    } else {
        Err(CalcError::InvalidArgument(format!(
            "derivative order {k} exceeds {}",
            LEN - 1
        )))
    }
}

/// `(x0 + i r, u)`; a pure-real point gets `u = 0`.
fn lift_point(x: Quaternion) -> (Complex64, Quaternion) {
    let r = x.imag_norm();
    if r > 0.0 && r.is_normal() {
        (Complex64::new(x.q0, r), x.vector() / r)
    } else {
        (Complex64::new(x.q0, 0.0), Quaternion::ZERO)
    }
}

fn finite_c(j: CJet) -> Result<CJet> {
    if j.is_finite() {
        Ok(j)
    } else {
        Err(CalcError::Domain(format!(
            "non-finite value at {}",
            j.value()
        )))
    }
}

fn cpowi(z: Complex64, n: i32) -> Complex64 {
    let base = if n < 0 { z.inv() } else { z };
    let mut e = n.unsigned_abs();
    let mut acc = Complex64::new(1.0, 0.0);
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc *= b;
        }
        b *= b;
        e >>= 1;
    }
    acc
}

/// `f, f', f'', f'''` at `z` for the named functions.
fn elementary(f: &AnalyticFunction, z: Complex64) -> Result<[Complex64; LEN]> {
    use AnalyticFunction::*;
    let zero = Complex64::new(0.0, 0.0);
    let pole = || CalcError::Domain(format!("{f} has a pole at {z}"));
    Ok(match f {
        Exp => [z.exp(); LEN],
        Sin => {
            let (s, c) = (z.sin(), z.cos());
            [s, c, -s, -c]
        }
        Cos => {
            let (s, c) = (z.sin(), z.cos());
            [c, -s, -c, s]
        }
        Log => {
            if z.im == 0.0 && z.re <= 0.0 {
                return Err(CalcError::Domain(format!(
                    "log is undefined on the cut at real {}",
                    z.re
                )));
            }
            let w = z.inv();
            [z.ln(), w, -w * w, w * w * w * 2.0]
        }
        Recip => {
            if z == zero {
                return Err(pole());
            }
            let w = z.inv();
            [w, -w * w, w * w * w * 2.0, -(w * w) * (w * w) * 6.0]
        }
        Pow(n) => {
            let n = *n;
            if n < 0 && z == zero {
                return Err(pole());
            }
            let mut out = [zero; LEN];
            let mut falling = 1.0;
            for (k, o) in out.iter_mut().enumerate() {
                if falling != 0.0 {
                    *o = cpowi(z, n - k as i32) * falling;
                }
                falling *= f64::from(n) - k as f64;
            }
            out
        }
        _ => unreachable!("not an elementary function"),
    })
}

impl fmt::Display for AnalyticFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::to_spec_string(self))
    }
}
