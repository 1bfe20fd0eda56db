use serde::Serialize;

use qcalc::differential::{first_order, second_order};
use qcalc::integral::{antiderivative_rule, line_integral_d, symmetric_integral, Path};
use qcalc::{AnalyticFunction, CalcError, Quaternion};

/// A failure with its process exit code.
#[derive(Debug, Clone, PartialEq)]
pub enum CliError {
    /// Bad flags or input files: exit 2.
    Usage(String),
    /// Evaluation or verification failure: exit 1.
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failure(m) => m,
        }
    }
}

impl From<CalcError> for CliError {
    fn from(e: CalcError) -> Self {
        CliError::Failure(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DiffOutput {
    pub value: Quaternion,
    pub parallel: Quaternion,
    pub perp: Quaternion,
    pub order: u8,
}

pub fn diff(
    f: &AnalyticFunction,
    point: Quaternion,
    delta: Quaternion,
    order: u8,
) -> Result<DiffOutput, CliError> {
    let r = match order {
        1 => first_order(f, point, delta)?,
        2 => second_order(f, point, delta)?,
        _ => {
            return Err(CliError::Usage(format!(
                "order must be 1 or 2, got {order}"
            )))
        }
    };
    Ok(DiffOutput {
        value: r.value,
        parallel: r.parallel,
        perp: r.perp,
        order,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Mode {
    /// Sum of the first-order differential over the refined path.
    Dcal,
    /// Symmetric placement of the increment inside x^n.
    Symmetric,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Integrand {
    Function(AnalyticFunction),
    /// `t^n`, integrated through its antiderivative `x^(n+1)/(n+1)`.
    Power(u32),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IntegrateOutput {
    pub value: Quaternion,
    pub endpoint_difference: Quaternion,
    pub abs_error: f64,
    pub increments: usize,
    /// Increments that started on the real axis; absent for symmetric sums.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub real_axis_hits: Option<usize>,
}

fn power_antiderivative(n: u32) -> AnalyticFunction {
    AnalyticFunction::scaled(
        1.0 / (f64::from(n) + 1.0),
        AnalyticFunction::Pow(n as i32 + 1),
    )
}

pub fn integrate(
    integrand: &Integrand,
    mode: Mode,
    path: &Path,
) -> Result<IntegrateOutput, CliError> {
    let (a, b) = (path.start(), path.end());
    let (value, increments, hits, endpoint) = match (integrand, mode) {
        (Integrand::Function(f), Mode::Dcal) => {
            let s = line_integral_d(f, path)?;
            (
                s.value,
                s.increments,
                Some(s.real_axis_hits),
                f.eval(b)? - f.eval(a)?,
            )
        }
        (Integrand::Power(n), Mode::Dcal) => {
            let h = power_antiderivative(*n);
            let s = antiderivative_rule(&AnalyticFunction::Pow(*n as i32), &h, path)?;
            (
                s.value,
                s.increments,
                Some(s.real_axis_hits),
                h.eval(b)? - h.eval(a)?,
            )
        }
        (Integrand::Power(n), Mode::Symmetric) => {
            let h = power_antiderivative(*n);
            let value = symmetric_integral(*n, path);
            (
                value,
                path.increments().len(),
                None,
                h.eval(b)? - h.eval(a)?,
            )
        }
        (Integrand::Function(_), Mode::Symmetric) => {
            return Err(CliError::Usage("symmetric mode needs --power".into()));
        }
    };
    Ok(IntegrateOutput {
        value,
        endpoint_difference: endpoint,
        abs_error: (value - endpoint).norm(),
        increments,
        real_axis_hits: hits,
    })
}

pub fn read_path(file: &std::path::Path) -> Result<Path, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", file.display())))?;
    Path::from_json(&text)
        .map_err(|e| CliError::Usage(format!("bad path file {}: {e}", file.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;
    use AnalyticFunction::*;

    #[test]
    #[allow(clippy::approx_constant)] // the truncated pi/2 of the usage example
    fn diff_examples() {
        let out = diff(
            &Pow(2),
            Quaternion::new(1.0, 1.0, 0.0, 0.0),
            Quaternion::J,
            1,
        )
        .unwrap();
        assert!(out.value.max_abs_diff(Quaternion::J * 2.0) < 1e-12);
        let out = diff(
            &Exp,
            Quaternion::new(0.0, 1.5707963, 0.0, 0.0),
            Quaternion::J,
            1,
        )
        .unwrap();
        assert!(out.value.max_abs_diff(Quaternion::J * (2.0 / PI)) < 1e-7);
        let out = diff(&Pow(2), Quaternion::real(3.0), Quaternion::J, 1).unwrap();
        assert!(out.value.max_abs_diff(Quaternion::J * 6.0) < 1e-12);
        assert!(matches!(
            diff(&Log, Quaternion::real(-1.0), Quaternion::J, 1),
            Err(CliError::Failure(_))
        ));
        assert!(matches!(
            diff(&Pow(2), Quaternion::real(3.0), Quaternion::J, 2),
            Err(CliError::Failure(_))
        ));
    }

    #[test]
    fn integrate_examples() {
        let p = Path::segment(Quaternion::ONE, Quaternion::J, 10_000).unwrap();
        let out = integrate(&Integrand::Function(Pow(3)), Mode::Dcal, &p).unwrap();
        assert!(
            out.value
                .max_abs_diff(Quaternion::new(-1.0, 0.0, -1.0, 0.0))
                < 1e-3
        );
        assert!(out.abs_error <= 1e-3);

        let p = Path::new(vec![Quaternion::I, Quaternion::new(0.5, 0.0, 2.0, -1.0)], 7).unwrap();
        let out = integrate(&Integrand::Power(0), Mode::Symmetric, &p).unwrap();
        assert!(out.abs_error <= 1e-14);
        assert_eq!(out.real_axis_hits, None);

        assert!(matches!(
            integrate(&Integrand::Function(Exp), Mode::Symmetric, &p),
            Err(CliError::Usage(_))
        ));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 2);
        assert_eq!(CliError::Failure(String::new()).exit_code(), 1);
    }
}
