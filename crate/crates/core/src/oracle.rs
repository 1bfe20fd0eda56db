//! Independent brute-force references: placement sums for powers, quadrature
//! of the exponential's first-order integral, and truncation residuals with a
//! log-log slope fit.

use serde::Serialize;

use crate::analytic::AnalyticFunction;
use crate::differential::{dcal, dcal2};
use crate::error::{CalcError, Result};
use crate::quaternion::Quaternion;
use crate::su2::{su2_first_order, Mat2, Su2Element};

/// Residuals below this are treated as rounding noise.
pub const RESIDUAL_FLOOR: f64 = 1e-14;

/// Minimum coefficient of determination for a usable slope fit.
pub const MIN_R2: f64 = 0.99;

pub const DEFAULT_EPSILONS: [f64; 3] = [1e-2, 1e-3, 1e-4];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SlopeReport {
    pub epsilons: Vec<f64>,
    pub residuals: Vec<f64>,
    pub slope: f64,
    pub r2: f64,
}

impl SlopeReport {
    /// Least-squares slope of `log(residual)` against `log(epsilon)`.
    pub fn fit(epsilons: &[f64], residuals: &[f64]) -> Result<Self> {
        if epsilons.len() != residuals.len() || epsilons.len() < 3 {
            return Err(CalcError::InvalidArgument(
                "need at least three (epsilon, residual) pairs".into(),
            ));
        }
        let decreasing = epsilons.windows(2).all(|w| w[1] < w[0]);
        if !decreasing || !epsilons.iter().all(|&e| e > 0.0) {
            return Err(CalcError::InvalidArgument(
                "epsilons must be positive and strictly decreasing".into(),
            ));
        }
        let (slope, r2) = if residuals.iter().all(|&r| r > 0.0 && r.is_finite()) {
            let xs: Vec<f64> = epsilons.iter().map(|e| e.ln()).collect();
            let ys: Vec<f64> = residuals.iter().map(|r| r.ln()).collect();
            linear_fit(&xs, &ys)
        } else {
            (f64::NAN, 0.0)
        };
        Ok(Self {
            epsilons: epsilons.to_vec(),
            residuals: residuals.to_vec(),
            slope,
            r2,
        })
    }

    pub fn usable(&self) -> bool {
        self.r2 >= MIN_R2 && self.slope.is_finite()
    }
}

/// `(slope, r^2)` of the least-squares line through `(xs, ys)`.
fn linear_fit(xs: &[f64], ys: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let syy: f64 = ys.iter().map(|y| (y - my).powi(2)).sum();
    let slope = sxy / sxx;
    let r2 = if syy == 0.0 {
        1.0
    } else {
        (sxy * sxy) / (sxx * syy)
    };
    (slope, r2)
}

/// `sum_{m=0}^{n-1} x^{n-m-1} delta x^m`: the exact first-order part of
/// `(x + delta)^n`, every placement of `delta` multiplied out.
pub fn direct_power_first_order(n: u32, x: Quaternion, delta: Quaternion) -> Quaternion {
    let powers = powers(x, n as usize);
    (0..n as usize)
        .map(|m| powers[n as usize - m - 1] * delta * powers[m])
        .sum()
}

/// The exact second-order part of `(x + delta)^n`: every word with two
/// `delta`s and `n - 2` `x`s.
pub fn direct_power_second_order(n: u32, x: Quaternion, delta: Quaternion) -> Quaternion {
    let n = n as usize;
    if n < 2 {
        return Quaternion::ZERO;
    }
    let powers = powers(x, n);
    let mut acc = Quaternion::ZERO;
    // x^a delta x^b delta x^c with a + b + c = n - 2
    for a in 0..=n - 2 {
        for b in 0..=n - 2 - a {
            let c = n - 2 - a - b;
            acc += powers[a] * delta * powers[b] * delta * powers[c];
        }
    }
    acc
}

fn powers(x: Quaternion, n: usize) -> Vec<Quaternion> {
    let mut p = Vec::with_capacity(n + 1);
    p.push(Quaternion::ONE);
    for k in 1..=n {
        p.push(p[k - 1] * x);
    }
    p
}

/// Gauss-Legendre nodes and weights on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut z = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            // P_n(z) and P_n'(z) by the three-term recurrence
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * z * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 { 1.0 } else { p1 };
            let pn1 = if n == 0 { 0.0 } else { p0 };
            dp = nf * (z * pn - pn1) / (z * z - 1.0);
            let step = pn / dp;
            z -= step;
            if step.abs() < 1e-16 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// `int_0^1 e^{(1-s) x} delta e^{s x} ds` by Gauss-Legendre quadrature.
pub fn exp_expansion_quadrature(
    x: Quaternion,
    delta: Quaternion,
    nodes: usize,
) -> Result<Quaternion> {
    if nodes < 8 {
        return Err(CalcError::InvalidArgument(format!(
            "quadrature needs at least 8 nodes, got {nodes}"
        )));
    }
    let (t, w) = gauss_legendre(nodes);
    let exp = AnalyticFunction::Exp;
    let mut acc = Quaternion::ZERO;
    for (ti, wi) in t.iter().zip(w.iter()) {
        let s = 0.5 * (ti + 1.0);
        let left = exp.eval(x * (1.0 - s))?;
        let right = exp.eval(x * s)?;
        acc += left * delta * right * (0.5 * wi);
    }
    Ok(acc)
}

/// Residuals of the order-1 or order-2 truncation of `F(x + eps delta)`.
pub fn residual_slope(
    f: &AnalyticFunction,
    x: Quaternion,
    delta: Quaternion,
    order: u8,
    epsilons: &[f64],
) -> Result<SlopeReport> {
    if !(order == 1 || order == 2) {
        return Err(CalcError::InvalidArgument(format!(
            "order must be 1 or 2, got {order}"
        )));
    }
    let fx = f.eval(x)?;
    let d1 = dcal(f, x, delta)?;
    let d2 = if order == 2 {
        dcal2(f, x, delta)?
    } else {
        Quaternion::ZERO
    };
    let residuals = epsilons
        .iter()
        .map(|&e| {
            let shifted = f.eval(x + delta * e)?;
            Ok((shifted - fx - d1 * e - d2 * (e * e)).norm())
        })
        .collect::<Result<Vec<f64>>>()?;
    if residuals.iter().all(|&r| r < RESIDUAL_FLOOR) {
        return Err(CalcError::DegenerateResidual {
            floor: RESIDUAL_FLOOR,
        });
    }
    SlopeReport::fit(epsilons, &residuals)
}

/// `M^n` by repeated multiplication.
pub fn matrix_pow(m: Mat2, n: u32) -> Mat2 {
    (0..n).fold(Mat2::identity(), |acc, _| acc * m)
}

/// `exp(M)` by scaling and squaring a 20-term Taylor sum.
pub fn matrix_exp(m: Mat2) -> Mat2 {
    let mut s = 0;
    let mut scaled = m;
    while scaled.norm() > 0.5 {
        scaled = scaled * 0.5;
        s += 1;
    }
    let mut term = Mat2::identity();
    let mut sum = Mat2::identity();
    for k in 1..=20 {
        term = term * scaled * (1.0 / k as f64);
        sum = sum + term;
    }
    (0..s).fold(sum, |acc, _| acc * acc)
}

/// Matrix functions with an independent evaluation route.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MatrixReference {
    Pow(u32),
    Exp,
}

impl MatrixReference {
    pub fn eval(&self, m: Mat2) -> Mat2 {
        match *self {
            MatrixReference::Pow(n) => matrix_pow(m, n),
            MatrixReference::Exp => matrix_exp(m),
        }
    }

    pub fn function(&self) -> AnalyticFunction {
        match *self {
            MatrixReference::Pow(n) => AnalyticFunction::Pow(n as i32),
            MatrixReference::Exp => AnalyticFunction::Exp,
        }
    }
}

/// Residuals `|F(x + eps delta) - F(x) - eps F^(1)|` for an su(2) element.
pub fn su2_residual_slope(
    f: MatrixReference,
    x: Su2Element,
    delta: Su2Element,
    epsilons: &[f64],
) -> Result<SlopeReport> {
    let first = su2_first_order(&f.function(), x, delta)?;
    let fx = f.eval(x.matrix());
    let residuals: Vec<f64> = epsilons
        .iter()
        .map(|&e| (f.eval((x + delta * e).matrix()) - fx - first * e).norm())
        .collect();
    if residuals.iter().all(|&r| r < RESIDUAL_FLOOR) {
        return Err(CalcError::DegenerateResidual {
            floor: RESIDUAL_FLOOR,
        });
    }
    SlopeReport::fit(epsilons, &residuals)
}
