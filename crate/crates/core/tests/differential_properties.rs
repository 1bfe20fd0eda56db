mod common;

use common::*;
use proptest::prelude::*;
use qcalc::differential::{commutator_form, d_unit_imaginary, dcal, dcal2, first_order};
use qcalc::oracle::{
    direct_power_first_order, direct_power_second_order, residual_slope, DEFAULT_EPSILONS,
};
use qcalc::{AnalyticFunction, CalcError, Quaternion};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn first_order_residual_is_quadratic(f in real_function(), x in point(), d in unit()) {
        match residual_slope(&f, x, d, 1, &DEFAULT_EPSILONS) {
            Ok(rep) => prop_assert!(rep.usable() && (rep.slope - 2.0).abs() <= 0.2, "{rep:?}"),
            Err(CalcError::DegenerateResidual { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn second_order_residual_is_cubic(f in real_function(), x in point(), d in unit()) {
        match residual_slope(&f, x, d, 2, &DEFAULT_EPSILONS) {
            Ok(rep) => prop_assert!(rep.usable() && (rep.slope - 3.0).abs() <= 0.2, "{rep:?}"),
            Err(CalcError::DegenerateResidual { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn left_coefficients_keep_first_order_accuracy(
        c in prop::collection::vec(quaternion(), 1..6),
        x in point(),
        d in unit(),
    ) {
        let f = AnalyticFunction::poly(c);
        match residual_slope(&f, x, d, 1, &DEFAULT_EPSILONS) {
            Ok(rep) => prop_assert!(rep.usable() && (rep.slope - 2.0).abs() <= 0.2, "{rep:?}"),
            Err(CalcError::DegenerateResidual { .. }) => {}
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        }
    }

    #[test]
    fn powers_match_placement_sums(n in 1u32..=8, x in point(), d in unit()) {
        let got = dcal(&AnalyticFunction::Pow(n as i32), x, d).unwrap();
        prop_assert!(got.max_abs_diff(direct_power_first_order(n, x, d)) <= 1e-12);
        if n >= 2 {
            let got = dcal2(&AnalyticFunction::Pow(n as i32), x, d).unwrap();
            prop_assert!(got.max_abs_diff(direct_power_second_order(n, x, d)) <= 1e-11);
        }
    }

    #[test]
    fn product_rule(f in real_function(), g in real_function(), x in point(), d in unit()) {
        let fg = AnalyticFunction::product(f.clone(), g.clone()).unwrap();
        let lhs = dcal(&fg, x, d).unwrap();
        let rhs = dcal(&f, x, d).unwrap() * g.eval(x).unwrap() + f.eval(x).unwrap() * dcal(&g, x, d).unwrap();
        prop_assert!(lhs.max_abs_diff(rhs) <= 1e-11);
    }

    #[test]
    fn quotient_rule(g in real_function(), x in point(), d in unit()) {
        let gx = g.eval(x).unwrap();
        prop_assume!(gx.norm() >= 0.1);
        let inv = AnalyticFunction::compose(AnalyticFunction::Recip, g.clone()).unwrap();
        let sum = dcal(&g, x, d).unwrap() * inv.eval(x).unwrap() + gx * dcal(&inv, x, d).unwrap();
        prop_assert!(sum.norm() <= 1e-10);
    }

    #[test]
    fn commutator_form_is_the_perpendicular_term(f in real_function(), x in point(), d in unit()) {
        let c = commutator_form(&f, x, d).unwrap();
        let r = first_order(&f, x, d).unwrap();
        let term = f.perp_ratio(x).unwrap() * r.perp;
        prop_assert!(c.max_abs_diff(term) <= 1e-12);
        prop_assert!(c.max_abs_diff(r.value - f.eval_derivative(x, 1).unwrap() * r.parallel) <= 1e-12);
    }

    #[test]
    fn unit_imaginary_derivative_matches_finite_differences(x in point(), d in unit()) {
        let u = |p: Quaternion| p.vector() / p.imag_norm();
        let du = d_unit_imaginary(x, d).unwrap();
        let res: Vec<f64> = DEFAULT_EPSILONS
            .iter()
            .map(|&e| (u(x + d * e) - u(x) - du * e).norm())
            .collect();
        let rep = qcalc::oracle::SlopeReport::fit(&DEFAULT_EPSILONS, &res).unwrap();
        prop_assert!(rep.usable() && (rep.slope - 2.0).abs() <= 0.2, "{rep:?}");
    }

    #[test]
    fn unit_imaginary_ignores_parallel_displacements(x in point(), d in unit()) {
        let par = x.split(d).unwrap().parallel;
        prop_assert!(d_unit_imaginary(x, par).unwrap().norm() <= 1e-12);
    }

    #[test]
    fn scaling_the_displacement(f in real_function(), x in point(), d in unit(), s in -4.0..4.0f64) {
        let a = dcal(&f, x, d * s).unwrap();
        let b = dcal(&f, x, d).unwrap() * s;
        prop_assert!(a.max_abs_diff(b) <= 1e-14 * (1.0 + b.norm()));
    }
}

#[test]
fn real_axis_extension_is_continuous() {
    // approaching the axis, D F tends to F'(x0) delta; F'(x0 + u r) moves by O(r)
    let f = AnalyticFunction::Sin;
    let d = Quaternion::new(0.3, -0.2, 0.7, 0.1);
    let on_axis = dcal(&f, Quaternion::real(0.4), d).unwrap();
    for r in [1e-2, 1e-3, 1e-4, 1e-7, 1e-9] {
        let gap = dcal(&f, Quaternion::new(0.4, 0.0, r, 0.0), d)
            .unwrap()
            .max_abs_diff(on_axis);
        assert!(gap <= r, "r = {r}: {gap}");
    }
}
