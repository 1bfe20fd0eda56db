//! The first-order differential
//!
//! ```text
//! D F(x) = F'(x) d_par + (F(x) - F(x*)) (x - x*)^-1 d_perp
//! ```
//!
//! its second-order companion, the commutator arrangement of the
//! perpendicular term, and `D u_x`.

use crate::analytic::{AnalyticFunction, R_SWITCH};
use crate::error::{CalcError, Result};
use crate::quaternion::{PolarForm, Quaternion};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DifferentialResult {
    pub value: Quaternion,
    pub parallel: Quaternion,
    pub perp: Quaternion,
    /// `None` when the base point is on the real axis.
    pub frame: Option<PolarForm>,
    pub order: u8,
}

/// `D F(x)` applied to `delta`.
pub fn dcal(f: &AnalyticFunction, x: Quaternion, delta: Quaternion) -> Result<Quaternion> {
    Ok(first_order(f, x, delta)?.value)
}

/// First-order differential with the split that produced it.
///
/// On the real axis every frame is equally valid; the real part of `delta`
/// is taken as parallel, the imaginary part as perpendicular, and the
/// perpendicular coefficient is its limit `F'(x0)`, so the result is
/// `F'(x0) delta`.
pub fn first_order(
    f: &AnalyticFunction,
    x: Quaternion,
    delta: Quaternion,
) -> Result<DifferentialResult> {
    match x.polar() {
        Ok(frame) => {
            let s = frame.split(delta);
            let d1 = f.eval_derivative(x, 1)?;
            let ratio = f.perp_ratio(x)?;
            Ok(DifferentialResult {
                value: d1 * s.parallel + ratio * s.perp,
                parallel: s.parallel,
                perp: s.perp,
                frame: Some(frame),
                order: 1,
            })
        }
        Err(CalcError::PureRealInput { .. }) => {
            let d1 = f.eval_derivative(Quaternion::real(x.q0), 1)?;
            Ok(DifferentialResult {
                value: d1 * delta,
                parallel: Quaternion::real(delta.q0),
                perp: delta.vector(),
                frame: None,
                order: 1,
            })
        }
        Err(e) => Err(e),
    }
}

/// The second-order term `F^(2)` of `F(x + delta)`:
///
/// ```text
/// 1/2 F''(x) d_par^2
///   + (F(x) - F(x*)) (x - x*)^-2 (d_perp d_par - delta d_perp)
///   + F'(x) (x - x*)^-1 delta d_perp
///   + F'(x*) (x* - x)^-1 d_perp d_par
/// ```
///
/// Products are taken left to right as written.
pub fn dcal2(f: &AnalyticFunction, x: Quaternion, delta: Quaternion) -> Result<Quaternion> {
    Ok(second_order(f, x, delta)?.value)
}

pub fn second_order(
    f: &AnalyticFunction,
    x: Quaternion,
    delta: Quaternion,
) -> Result<DifferentialResult> {
    let r = x.imag_norm();
    if r <= R_SWITCH {
        return Err(CalcError::PureRealInput { r });
    }
    let v = f.local_values(x)?;
    let s = v.frame.split(delta);
    let (par, perp) = (s.parallel, s.perp);

    // x - x* = 2 u r
    let gap = x - x.conj();
    let gap_inv = gap.inverse().ok_or(CalcError::PureRealInput { r })?;
    let neg_gap_inv = (-gap).inverse().ok_or(CalcError::PureRealInput { r })?;

    let t1 = v.d2 * 0.5 * (par * par);
    let t2 = (v.value - v.value_conj) * (gap_inv * gap_inv) * (perp * par - delta * perp);
    let t3 = v.d1 * gap_inv * (delta * perp);
    let t4 = v.d1_conj * neg_gap_inv * (perp * par);
    Ok(DifferentialResult {
        value: t1 + t2 + t3 + t4,
        parallel: par,
        perp,
        frame: Some(v.frame),
        order: 2,
    })
}

/// The perpendicular term written as `[C, F(x)]` with `C = (x* - x)^-1 d_perp`.
pub fn commutator_form(
    f: &AnalyticFunction,
    x: Quaternion,
    delta: Quaternion,
) -> Result<Quaternion> {
    let frame = x.polar()?;
    let perp = frame.split(delta).perp;
    let c = (x.conj() - x)
        .inverse()
        .ok_or(CalcError::PureRealInput { r: frame.r })?
        * perp;
    let fx = f.eval(x)?;
    Ok(c.commutator(fx))
}

/// `D u_x = d_perp / r`.
pub fn d_unit_imaginary(x: Quaternion, delta: Quaternion) -> Result<Quaternion> {
    let frame = x.polar()?;
    Ok(frame.split(delta).perp / frame.r)
}
