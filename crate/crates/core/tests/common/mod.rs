#![allow(dead_code)]

use proptest::prelude::*;
use qcalc::su2::Su2Element;
use qcalc::{AnalyticFunction, Quaternion};

/// Points with `0.1 < r < 1.5` and `|x0| < 1.2`.
pub fn point() -> impl Strategy<Value = Quaternion> {
    (-1.2..1.2f64, 0.1..1.5f64, direction())
        .prop_map(|(x0, r, [a, b, c])| Quaternion::new(x0, a * r, b * r, c * r))
}

pub fn direction() -> impl Strategy<Value = [f64; 3]> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
        .prop_filter("nonzero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-4)
        .prop_map(|v| {
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            v.map(|c| c / n)
        })
}

pub fn unit() -> impl Strategy<Value = Quaternion> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
        .prop_filter("nonzero", |v| v.iter().map(|c| c * c).sum::<f64>() > 1e-4)
        .prop_map(|[a, b, c, d]| {
            let q = Quaternion::new(a, b, c, d);
            q / q.norm()
        })
}

pub fn quaternion() -> impl Strategy<Value = Quaternion> {
    [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64]
        .prop_map(|[a, b, c, d]| Quaternion::new(a, b, c, d))
}

pub fn real_function() -> impl Strategy<Value = AnalyticFunction> {
    use AnalyticFunction::*;
    prop_oneof![
        Just(Exp),
        Just(Sin),
        Just(Cos),
        (1..=6i32).prop_map(Pow),
        prop::collection::vec(-1.0..1.0f64, 1..5)
            .prop_map(|c| AnalyticFunction::poly(c.into_iter().map(Quaternion::real).collect())),
    ]
}

pub fn su2_point() -> impl Strategy<Value = Su2Element> {
    point().prop_map(|x| Su2Element::new(x.q0, x.q1, x.q2, x.q3))
}

pub fn su2_unit() -> impl Strategy<Value = Su2Element> {
    unit().prop_map(|d| Su2Element::new(d.q0, d.q1, d.q2, d.q3))
}
