//! Fueter's operator `box = d/dx0 + i d/dx1 + j d/dx2 + k d/dx3`, the
//! four-dimensional Laplacian, and the identity `dF/dx_perp = -1/2 box F`
//! relating `box` to the perpendicular ratio.

use crate::analytic::AnalyticFunction;
use crate::error::{CalcError, Result};
use crate::quaternion::Quaternion;

const UNITS: [Quaternion; 4] = [Quaternion::ONE, Quaternion::I, Quaternion::J, Quaternion::K];

/// Central-difference stencil: step `h`, accuracy order 2 or 4.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StencilConfig {
    h: f64,
    order: u8,
}

impl StencilConfig {
    pub fn new(h: f64, order: u8) -> Result<Self> {
        if !(h > 0.0 && h.is_finite()) {
            return Err(CalcError::InvalidArgument(format!(
                "step must be positive, got {h}"
            )));
        }
        if order != 2 && order != 4 {
            return Err(CalcError::InvalidArgument(format!(
                "stencil order must be 2 or 4, got {order}"
            )));
        }
        Ok(Self { h, order })
    }

    /// `h = 1e-4`, second order.
    pub fn first_derivative() -> Self {
        Self { h: 1e-4, order: 2 }
    }

    /// `h = 1e-3`, second order.
    pub fn second_derivative() -> Self {
        Self { h: 1e-3, order: 2 }
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn order(&self) -> u8 {
        self.order
    }
}

/// `box F(x) = -2 (F(x) - F(x*)) (x - x*)^-1`, valid for real coefficients.
pub fn box_analytic(f: &AnalyticFunction, x: Quaternion) -> Result<Quaternion> {
    if !f.is_real_coefficient() {
        return Err(CalcError::NotRealCoefficient(f.to_string()));
    }
    Ok(f.perp_ratio(x)? * -2.0)
}

/// `box F(x)` by central differences along each real coordinate.
pub fn box_numeric(f: &AnalyticFunction, x: Quaternion, cfg: StencilConfig) -> Result<Quaternion> {
    box_numeric_field(|p| f.eval(p), x, cfg)
}

/// `box g(x)` for any quaternion-valued field, units multiplying on the left.
pub fn box_numeric_field<G>(g: G, x: Quaternion, cfg: StencilConfig) -> Result<Quaternion>
where
    G: Fn(Quaternion) -> Result<Quaternion>,
{
    let mut acc = Quaternion::ZERO;
    for (axis, unit) in UNITS.iter().enumerate() {
        acc += *unit * partial(&g, x, axis, cfg)?;
    }
    Ok(acc)
}

/// `sum_mu d^2 g / dx_mu^2`, componentwise.
pub fn laplacian4<G>(g: G, x: Quaternion, cfg: StencilConfig) -> Result<Quaternion>
where
    G: Fn(Quaternion) -> Result<Quaternion>,
{
    let h = cfg.h;
    let center = g(x)?;
    let mut acc = Quaternion::ZERO;
    for unit in UNITS {
        let at = |k: f64| g(x + unit * (k * h));
        let d2 = match cfg.order {
            2 => (at(1.0)? - center * 2.0 + at(-1.0)?) / (h * h),
            _ => {
                (-at(2.0)? + at(1.0)? * 16.0 - center * 30.0 + at(-1.0)? * 16.0 - at(-2.0)?)
                    / (12.0 * h * h)
            }
        };
        acc += d2;
    }
    Ok(acc)
}

fn partial<G>(g: &G, x: Quaternion, axis: usize, cfg: StencilConfig) -> Result<Quaternion>
where
    G: Fn(Quaternion) -> Result<Quaternion>,
{
    let h = cfg.h;
    let unit = UNITS[axis];
    let at = |k: f64| g(x + unit * (k * h));
    Ok(match cfg.order {
        2 => (at(1.0)? - at(-1.0)?) / (2.0 * h),
        _ => (-at(2.0)? + at(1.0)? * 8.0 - at(-1.0)? * 8.0 + at(-2.0)?) / (12.0 * h),
    })
}

/// Outcome of checking `laplacian4(box F) = 0` at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegularityCheck {
    /// `|laplacian4(box F)(x)|`.
    pub residual: f64,
    /// Largest `|box F|` over the stencil points.
    pub scale: f64,
}

impl RegularityCheck {
    pub fn relative(&self) -> f64 {
        self.residual / (1.0 + self.scale)
    }
}

/// Applies the numeric Laplacian to the analytic `box F`.
pub fn regularity(
    f: &AnalyticFunction,
    x: Quaternion,
    cfg: StencilConfig,
) -> Result<RegularityCheck> {
    let scale = std::cell::Cell::new(0.0_f64);
    let lap = laplacian4(
        |p| {
            let b = box_analytic(f, p)?;
            scale.set(scale.get().max(b.norm()));
            Ok(b)
        },
        x,
        cfg,
    )?;
    Ok(RegularityCheck {
        residual: lap.norm(),
        scale: scale.get(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, PI};
    use AnalyticFunction::*;

    fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
        Quaternion::new(a, b, c, d)
    }

    #[test]
    fn box_analytic_examples() {
        let b = box_analytic(&Exp, Quaternion::I * FRAC_PI_2).unwrap();
        assert!(b.max_abs_diff(Quaternion::real(-4.0 / PI)) < 1e-12);
        let b = box_analytic(&Pow(2), q(1.0, 1.0, 0.0, 0.0)).unwrap();
        assert!(b.max_abs_diff(Quaternion::real(-4.0)) < 1e-12);
        let b = box_analytic(&Pow(2), Quaternion::real(3.0)).unwrap();
        assert!(b.max_abs_diff(Quaternion::real(-12.0)) < 1e-12);
        assert!(box_analytic(&AnalyticFunction::poly(vec![Quaternion::J]), Quaternion::I).is_err());
    }

    #[test]
    fn box_numeric_examples() {
        let b = box_numeric(
            &Exp,
            Quaternion::I * FRAC_PI_2,
            StencilConfig::first_derivative(),
        )
        .unwrap();
        assert!(b.max_abs_diff(Quaternion::real(-4.0 / PI)) < 1e-6);

        for (x, h) in [
            (q(0.5, -1.0, 2.0, 0.25), 0.25),
            (q(0.3, -1.0, 2.0, 0.5), 0.1),
            (q(-4.0, 0.0, 0.0, 0.1), 1e-3),
        ] {
            for order in [2, 4] {
                let b = box_numeric(&Pow(1), x, StencilConfig::new(h, order).unwrap()).unwrap();
                assert!(b.max_abs_diff(Quaternion::real(-2.0)) < 1e-12);
            }
        }
        let c = AnalyticFunction::constant(q(1.0, 2.0, 3.0, 4.0));
        let b = box_numeric(&c, q(0.1, 0.2, 0.3, 0.4), StencilConfig::first_derivative()).unwrap();
        assert_eq!(b, Quaternion::ZERO);
    }

    #[test]
    fn laplacian_examples() {
        let cfg = StencilConfig::second_derivative();
        let x = q(0.7, -0.2, 1.1, 0.4);
        let l = laplacian4(|p| Ok(Quaternion::real(p.q0 * p.q0)), x, cfg).unwrap();
        assert!((l.q0 - 2.0).abs() < 1e-6);
        let l = laplacian4(|p| Ok(Quaternion::real(p.norm_sqr())), x, cfg).unwrap();
        assert!((l.q0 - 8.0).abs() < 1e-6);
        let l = laplacian4(|p| box_analytic(&Exp, p), q(1.0, 1.0, 1.0, 0.0), cfg).unwrap();
        assert!(l.norm() < 1e-5);
    }

    #[test]
    fn fourth_order_stencil_is_more_accurate() {
        let x = q(0.2, 0.6, -0.5, 0.3);
        let exact = box_analytic(&Sin, x).unwrap();
        let e2 = box_numeric(&Sin, x, StencilConfig::new(1e-2, 2).unwrap())
            .unwrap()
            .max_abs_diff(exact);
        let e4 = box_numeric(&Sin, x, StencilConfig::new(1e-2, 4).unwrap())
            .unwrap()
            .max_abs_diff(exact);
        assert!(e4 < e2 / 100.0, "{e2} {e4}");
    }

    #[test]
    fn config_validation() {
        assert!(StencilConfig::new(0.0, 2).is_err());
        assert!(StencilConfig::new(1e-3, 3).is_err());
        assert!(StencilConfig::new(f64::NAN, 2).is_err());
    }
}
