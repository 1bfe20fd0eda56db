mod common;

use common::*;
use proptest::prelude::*;
use qcalc::differential::dcal;
use qcalc::integral::{antiderivative_rule, line_integral_d, symmetric_integral, Path};
use qcalc::{AnalyticFunction, CalcError, Quaternion};

fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
    Quaternion::new(a, b, c, d)
}

/// Straight legs between points whose vector parts share a positive `k`
/// component of at least 0.3, so `r >= 0.3` along the whole path.
fn off_axis() -> impl Strategy<Value = Quaternion> {
    (-0.8..0.8f64, -0.7..0.7f64, -0.7..0.7f64, 0.3..1.0f64).prop_map(|(a, b, c, d)| q(a, b, c, d))
}

fn power_antiderivative(n: u32) -> AnalyticFunction {
    AnalyticFunction::scaled(1.0 / f64::from(n + 1), AnalyticFunction::Pow(n as i32 + 1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn additivity_over_concatenation(f in real_function(), a in off_axis(), m in off_axis(), b in off_axis()) {
        prop_assume!((a - m).norm() > 0.1 && (m - b).norm() > 0.1);
        let whole = line_integral_d(&f, &Path::new(vec![a, m, b], 64).unwrap()).unwrap().value;
        let first = line_integral_d(&f, &Path::segment(a, m, 64).unwrap()).unwrap().value;
        let second = line_integral_d(&f, &Path::segment(m, b, 64).unwrap()).unwrap().value;
        prop_assert!(whole.max_abs_diff(first + second) <= 1e-12 * (1.0 + whole.norm()));
    }

    #[test]
    fn symmetric_sum_is_the_sum_of_d_for_the_antiderivative(n in 0u32..=5, a in off_axis(), b in off_axis()) {
        prop_assume!((a - b).norm() > 0.1);
        let p = Path::segment(a, b, 200).unwrap();
        let sym = symmetric_integral(n, &p);
        let via_d = line_integral_d(&power_antiderivative(n), &p).unwrap().value;
        prop_assert!(sym.max_abs_diff(via_d) <= 1e-10);
    }

    #[test]
    fn error_halves_when_refinement_doubles(a in off_axis(), b in off_axis()) {
        prop_assume!((a - b).norm() > 0.3);
        let f = AnalyticFunction::Exp;
        let exact = f.eval(b).unwrap() - f.eval(a).unwrap();
        let err = |n| (line_integral_d(&f, &Path::segment(a, b, n).unwrap()).unwrap().value - exact).norm();
        let ratio = err(400) / err(800);
        prop_assert!((1.7..=2.3).contains(&ratio), "ratio {ratio}");
    }
}

#[test]
fn closed_loop_vanishes_in_the_limit() {
    let w = vec![
        q(0.2, 0.1, 0.4, 0.6),
        q(-0.5, 0.3, -0.2, 0.5),
        q(0.7, -0.4, 0.1, 0.9),
        q(0.2, 0.1, 0.4, 0.6),
    ];
    for f in [
        AnalyticFunction::Pow(3),
        AnalyticFunction::Exp,
        AnalyticFunction::Cos,
    ] {
        let l = |n| {
            line_integral_d(&f, &Path::new(w.clone(), n).unwrap())
                .unwrap()
                .value
        };
        let (coarse, fine) = (l(1000), l(2000));
        // the O(1/N) part cancels in 2 L(2N) - L(N)
        assert!(
            (fine * 2.0 - coarse).norm() <= 0.05 * (coarse - fine).norm(),
            "{f}"
        );
        assert!(fine.norm() < 1e-2);
    }
}

#[test]
fn paths_with_common_endpoints_agree() {
    let (a, b) = (q(0.1, 0.2, 0.3, 0.5), q(0.9, -0.3, 0.2, 0.8));
    let detour = vec![a, q(-0.6, 0.6, -0.4, 0.4), b];
    for f in [
        AnalyticFunction::Pow(2),
        AnalyticFunction::Pow(4),
        AnalyticFunction::Exp,
    ] {
        let i = |w: &Vec<Quaternion>, n| {
            line_integral_d(&f, &Path::new(w.clone(), n).unwrap())
                .unwrap()
                .value
        };
        let direct = vec![a, b];
        let (d1, d2) = (i(&direct, 1000), i(&direct, 2000));
        let (t1, t2) = (i(&detour, 1000), i(&detour, 2000));
        let budget = (d1 - d2).norm() + (t1 - t2).norm();
        assert!(((d2 * 2.0 - d1) - (t2 * 2.0 - t1)).norm() <= budget, "{f}");
    }
}

#[test]
fn derivative_of_the_integral() {
    let (a, x, d) = (
        q(0.1, 0.2, 0.3, 0.5),
        q(0.6, -0.4, 0.2, 0.7),
        q(0.5, 0.5, -0.5, 0.5),
    );
    let eps = 1e-3;
    for f in [AnalyticFunction::Pow(3), AnalyticFunction::Exp] {
        let short = line_integral_d(&f, &Path::segment(a, x, 10_000).unwrap())
            .unwrap()
            .value;
        let long = line_integral_d(&f, &Path::new(vec![a, x, x + d * eps], 10_000).unwrap())
            .unwrap()
            .value;
        let gap = (long - short - dcal(&f, x, d).unwrap() * eps).norm();
        assert!(gap <= 10.0 * eps * eps, "{f}: {gap}");
    }
}

#[test]
fn antiderivative_rule_checks_the_pairing() {
    let p = Path::segment(q(0.0, 0.3, 0.0, 0.0), q(1.0, 0.0, 0.8, 0.0), 500).unwrap();
    let s = antiderivative_rule(&AnalyticFunction::Cos, &AnalyticFunction::Sin, &p).unwrap();
    let exact = AnalyticFunction::Sin.eval(p.end()).unwrap()
        - AnalyticFunction::Sin.eval(p.start()).unwrap();
    assert!(s.value.max_abs_diff(exact) < 1e-2);
    assert!(matches!(
        antiderivative_rule(&AnalyticFunction::Sin, &AnalyticFunction::Sin, &p),
        Err(CalcError::AntiderivativeMismatch { .. })
    ));
}
