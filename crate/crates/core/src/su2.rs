//! First-order expansion for functions of an element of
//! `span{I, J1, J2, J3}` with `[J1, J2] = J3` (cyclic), realized in the
//! spin-1/2 representation `Ja = -(i/2) sigma_a`.
//!
//! The displacement is split without rotating the frame:
//! `d_perp = -(1/r^2) [x, [x, delta]]`, `d_par = delta - d_perp`, and
//!
//! ```text
//! F^(1) = F'(x) d_par
//!       + (F(x + ir) - F(x - ir)) (1/2ir) d_perp
//!       + (F(x + ir) + F(x - ir) - 2F(x)) (1/2r) (1/r) [x, delta]
//! ```
//!
//! where `x +- ir` shifts by the complex scalar `+- i r` times the identity.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;

use crate::analytic::AnalyticFunction;
use crate::error::{CalcError, Result};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Complex 2x2 matrix, row major.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn zero() -> Self {
        Mat2([[c(0.0, 0.0); 2]; 2])
    }

    pub fn identity() -> Self {
        Self::scalar(c(1.0, 0.0))
    }

    pub fn scalar(s: Complex64) -> Self {
        Mat2([[s, c(0.0, 0.0)], [c(0.0, 0.0), s]])
    }

    pub fn trace(&self) -> Complex64 {
        self.0[0][0] + self.0[1][1]
    }

    pub fn det(&self) -> Complex64 {
        self.0[0][0] * self.0[1][1] - self.0[0][1] * self.0[1][0]
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> Self {
        let m = self.0;
        Mat2([
            [m[0][0].conj(), m[1][0].conj()],
            [m[0][1].conj(), m[1][1].conj()],
        ])
    }

    pub fn commutator(self, o: Self) -> Self {
        self * o - o * self
    }

    /// Frobenius norm.
    pub fn norm(&self) -> f64 {
        self.0
            .iter()
            .flatten()
            .map(|z| z.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn scale(self, s: Complex64) -> Self {
        Mat2(self.0.map(|row| row.map(|z| z * s)))
    }

    pub fn is_finite(&self) -> bool {
        self.0
            .iter()
            .flatten()
            .all(|z| z.re.is_finite() && z.im.is_finite())
    }

    /// `f(M)` through the spectral decomposition, `f` given on eigenvalues.
    ///
    /// Only diagonalizable matrices are accepted: a repeated eigenvalue must
    /// come from a multiple of the identity.
    pub fn apply<F>(&self, f: F) -> Result<Self>
    where
        F: Fn(Complex64) -> Result<Complex64>,
    {
        let half_tr = self.trace() * 0.5;
        let disc = (half_tr * half_tr - self.det()).sqrt();
        let (l1, l2) = (half_tr + disc, half_tr - disc);
        let gap = l1 - l2;
        let scale = 1.0 + self.norm();
        if gap.norm() <= 1e-12 * scale {
            let off = (*self - Mat2::scalar(half_tr)).norm();
            if off > 1e-12 * scale {
                return Err(CalcError::Domain(
                    "defective matrix has no spectral decomposition".into(),
                ));
            }
            return Ok(Mat2::scalar(f(half_tr)?));
        }
        // projectors (M - l2 I)/(l1 - l2) and (M - l1 I)/(l2 - l1)
        let p1 = (*self - Mat2::scalar(l2)).scale(gap.inv());
        let p2 = (*self - Mat2::scalar(l1)).scale((-gap).inv());
        let out = p1.scale(f(l1)?) + p2.scale(f(l2)?);
        if out.is_finite() {
            Ok(out)
        } else {
            Err(CalcError::Domain("non-finite matrix function value".into()))
        }
    }
}

impl Add for Mat2 {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Mat2(std::array::from_fn(|i| {
            std::array::from_fn(|j| self.0[i][j] + o.0[i][j])
        }))
    }
}

impl Sub for Mat2 {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        self + (-o)
    }
}

impl Neg for Mat2 {
    type Output = Self;
    fn neg(self) -> Self {
        Mat2(self.0.map(|row| row.map(|z| -z)))
    }
}

impl Mul for Mat2 {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        let (a, b) = (self.0, o.0);
        let mut m = [[c(0.0, 0.0); 2]; 2];
        for (i, row) in m.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                *slot = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Mat2(m)
    }
}

impl Mul<f64> for Mat2 {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        self.scale(c(s, 0.0))
    }
}

/// `J1, J2, J3` with `Ja = -(i/2) sigma_a`.
pub fn generators() -> [Mat2; 3] {
    let z = c(0.0, 0.0);
    [
        Mat2([[z, c(0.0, -0.5)], [c(0.0, -0.5), z]]),
        Mat2([[z, c(-0.5, 0.0)], [c(0.5, 0.0), z]]),
        Mat2([[c(0.0, -0.5), z], [z, c(0.0, 0.5)]]),
    ]
}

/// Largest deviation from `[J1,J2] = J3`, `[J2,J3] = J1`, `[J3,J1] = J2`.
pub fn algebra_defect() -> f64 {
    let [j1, j2, j3] = generators();
    [
        (j1.commutator(j2) - j3).norm(),
        (j2.commutator(j3) - j1).norm(),
        (j3.commutator(j1) - j2).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max)
}

/// `x0 I + x1 J1 + x2 J2 + x3 J3` with real coefficients.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su2Element {
    pub coeffs: [f64; 4],
}

impl Su2Element {
    pub const fn new(x0: f64, x1: f64, x2: f64, x3: f64) -> Self {
        Self {
            coeffs: [x0, x1, x2, x3],
        }
    }

    pub const IDENTITY: Su2Element = Su2Element::new(1.0, 0.0, 0.0, 0.0);
    pub const J1: Su2Element = Su2Element::new(0.0, 1.0, 0.0, 0.0);
    pub const J2: Su2Element = Su2Element::new(0.0, 0.0, 1.0, 0.0);
    pub const J3: Su2Element = Su2Element::new(0.0, 0.0, 0.0, 1.0);

    pub fn matrix(&self) -> Mat2 {
        let [x0, x1, x2, x3] = self.coeffs;
        Mat2([
            [c(x0, -0.5 * x3), c(-0.5 * x2, -0.5 * x1)],
            [c(0.5 * x2, -0.5 * x1), c(x0, 0.5 * x3)],
        ])
    }

    /// Coordinates of the projection of `m` onto the real span of the basis.
    pub fn from_matrix(m: &Mat2) -> Self {
        let m = m.0;
        Self::new(
            0.5 * (m[0][0].re + m[1][1].re),
            -(m[0][1].im + m[1][0].im),
            m[1][0].re - m[0][1].re,
            m[1][1].im - m[0][0].im,
        )
    }

    /// `r = sqrt(x1^2 + x2^2 + x3^2)`.
    pub fn r(&self) -> f64 {
        let [_, x1, x2, x3] = self.coeffs;
        x1.hypot(x2).hypot(x3)
    }

    pub fn norm(&self) -> f64 {
        self.coeffs[0].hypot(self.r())
    }

    fn r_min(&self) -> f64 {
        1e-12 * (1.0 + self.norm())
    }

    fn checked_r(&self) -> Result<f64> {
        let r = self.r();
        if r > self.r_min() && r.is_finite() {
            Ok(r)
        } else {
            Err(CalcError::PureScalarInput { r })
        }
    }
}

impl Add for Su2Element {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        let mut a = self.coeffs;
        for (x, y) in a.iter_mut().zip(o.coeffs) {
            *x += y;
        }
        Self { coeffs: a }
    }
}

impl Mul<f64> for Su2Element {
    type Output = Self;
    fn mul(self, s: f64) -> Self {
        Self {
            coeffs: self.coeffs.map(|x| x * s),
        }
    }
}

/// `(d_par, d_perp)` with `d_perp = -(1/r^2) [x, [x, delta]]`.
pub fn su2_split(x: Su2Element, delta: Su2Element) -> Result<(Su2Element, Su2Element)> {
    let (par, perp) = split_matrices(x, delta)?;
    Ok((
        Su2Element::from_matrix(&par),
        Su2Element::from_matrix(&perp),
    ))
}

fn split_matrices(x: Su2Element, delta: Su2Element) -> Result<(Mat2, Mat2)> {
    let r = x.checked_r()?;
    let (xm, dm) = (x.matrix(), delta.matrix());
    let perp = xm.commutator(xm.commutator(dm)) * (-1.0 / (r * r));
    Ok((dm - perp, perp))
}

/// The first-order term of `F(x + delta)` as a 2x2 matrix.
pub fn su2_first_order(f: &AnalyticFunction, x: Su2Element, delta: Su2Element) -> Result<Mat2> {
    let r = x.checked_r()?;
    let (par, perp) = split_matrices(x, delta)?;
    let xm = x.matrix();
    let df = f.derivative();

    let value = |m: Mat2| m.apply(|z| f.eval_complex(z));
    let fp = xm.apply(|z| df.eval_complex(z))?;
    let f0 = value(xm)?;
    let shift = Mat2::scalar(c(0.0, r));
    let f_plus = value(xm + shift)?;
    let f_minus = value(xm - shift)?;

    // (1/r)[x, delta] stands in for [J3, d_perp] in the rotated frame.
    let rotated = xm.commutator(delta.matrix()) * (1.0 / r);

    let t1 = fp * par;
    let t2 = (f_plus - f_minus).scale(c(0.0, 2.0 * r).inv()) * perp;
    let t3 = (f_plus + f_minus - f0 * 2.0) * (1.0 / (2.0 * r)) * rotated;
    Ok(t1 + t2 + t3)
}

/// `exp(theta n.J)` for a unit axis `n`: `cos(theta/2) I + 2 sin(theta/2) n.J`.
pub fn group_element(theta: f64, axis: [f64; 3]) -> Mat2 {
    let len = axis[0].hypot(axis[1]).hypot(axis[2]);
    let n = Su2Element::new(0.0, axis[0] / len, axis[1] / len, axis[2] / len);
    Mat2::scalar(c((0.5 * theta).cos(), 0.0)) + n.matrix() * (2.0 * (0.5 * theta).sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use AnalyticFunction::*;

    fn el(m: &Mat2) -> Su2Element {
        Su2Element::from_matrix(m)
    }

    #[test]
    fn commutation_relations() {
        assert!(algebra_defect() <= 1e-15);
        for j in generators() {
            // Ja^2 = -I/4
            assert!((j * j - Mat2::identity() * -0.25).norm() < 1e-15);
        }
    }

    #[test]
    fn coefficient_matrix_round_trip_is_exact() {
        for x in [
            Su2Element::new(0.3, -1.7, 2.25, 1e-3),
            Su2Element::new(-5.0, 0.1, 0.2, 0.3),
            Su2Element::J2,
        ] {
            assert_eq!(Su2Element::from_matrix(&x.matrix()), x);
        }
        let [j1, j2, j3] = generators();
        assert_eq!(Su2Element::J1.matrix(), j1);
        assert_eq!(Su2Element::J2.matrix(), j2);
        assert_eq!(Su2Element::J3.matrix(), j3);
    }

    #[test]
    fn split_examples() {
        let (par, perp) = su2_split(Su2Element::J3, Su2Element::J1).unwrap();
        assert_eq!(par, Su2Element::new(0.0, 0.0, 0.0, 0.0));
        assert_eq!(perp, Su2Element::J1);

        let x = Su2Element::new(0.4, 0.5, -1.0, 2.0);
        let along = Su2Element::new(0.0, 0.5, -1.0, 2.0) * 0.3;
        let (par, perp) = su2_split(x, along).unwrap();
        assert!((par.matrix() - along.matrix()).norm() < 1e-15);
        assert!(perp.matrix().norm() < 1e-15);

        let (par, perp) = su2_split(x, Su2Element::IDENTITY).unwrap();
        assert_eq!(par, Su2Element::IDENTITY);
        assert_eq!(perp.matrix().norm(), 0.0);

        assert!(matches!(
            su2_split(Su2Element::new(2.0, 0.0, 0.0, 0.0), Su2Element::J1),
            Err(CalcError::PureScalarInput { .. })
        ));
    }

    #[test]
    fn first_order_worked_cases() {
        let x = Su2Element::new(1.0, 0.0, 0.0, 1.0);
        let got = su2_first_order(&Pow(2), x, Su2Element::J1).unwrap();
        assert!((got - Su2Element::J1.matrix() * 2.0).norm() < 1e-13);

        let got = su2_first_order(&Pow(2), Su2Element::J3, Su2Element::J1).unwrap();
        assert!(got.norm() < 1e-13);

        // delta = I is all parallel
        let x = Su2Element::new(0.2, 0.7, -0.3, 0.5);
        for f in [Exp, Sin, Pow(4)] {
            let got = su2_first_order(&f, x, Su2Element::IDENTITY).unwrap();
            let want = x
                .matrix()
                .apply(|z| f.derivative().eval_complex(z))
                .unwrap();
            assert!((got - want).norm() < 1e-13, "{f}");
        }
    }

    #[test]
    fn split_matches_commutator_identity() {
        let x = Su2Element::new(0.2, 0.7, -0.3, 0.5);
        let d = Su2Element::new(0.1, -0.4, 0.9, 0.2);
        let r = x.r();
        let (par, perp) = su2_split(x, d).unwrap();
        let once = x.matrix().commutator(d.matrix()) * (1.0 / r);
        let twice = x.matrix().commutator(once) * (-1.0 / r);
        assert!((twice - perp.matrix()).norm() < 1e-13);
        assert!((par + perp)
            .coeffs
            .iter()
            .zip(d.coeffs)
            .all(|(a, b)| (a - b).abs() < 1e-15));
        let _ = el(&once);
    }

    #[test]
    fn spectral_function_matches_power() {
        let m = Su2Element::new(0.3, 0.4, -0.2, 0.9).matrix();
        let cube = m.apply(|z| Ok(z * z * z)).unwrap();
        assert!((cube - m * m * m).norm() < 1e-14);
        assert!(
            Mat2([[c(1.0, 0.0), c(1.0, 0.0)], [c(0.0, 0.0), c(1.0, 0.0)]])
                .apply(Ok)
                .is_err()
        );
    }

    #[test]
    fn group_element_is_unitary() {
        let u = group_element(0.7, [1.0, -2.0, 0.5]);
        assert!((u * u.adjoint() - Mat2::identity()).norm() < 1e-15);
        assert!((u.det() - c(1.0, 0.0)).norm() < 1e-15);
    }
}
