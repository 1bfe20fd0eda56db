//! Verification suites. Each suite returns a list of named cases; the
//! report sorts them by name, so output does not depend on run order.

use std::f64::consts::{FRAC_PI_2, PI};

use qcalc::differential::{commutator_form, d_unit_imaginary, dcal, dcal2, first_order};
use qcalc::fueter::{box_analytic, box_numeric, regularity, StencilConfig};
use qcalc::integral::{line_integral_d, line_integral_parts, symmetric_integral, Path};
use qcalc::oracle::{
    direct_power_first_order, direct_power_second_order, exp_expansion_quadrature, residual_slope,
    su2_residual_slope, MatrixReference, SlopeReport, DEFAULT_EPSILONS,
};
use qcalc::su2::{self, group_element, su2_first_order, su2_split, Su2Element};
use qcalc::{AnalyticFunction, CalcError, Quaternion};

use crate::report::{Case, Report};
use crate::sampling::{self, rng_for, CaseRng};

use AnalyticFunction::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    FirstOrder,
    SecondOrder,
    Leibnitz,
    Commutator,
    Fueter,
    Integral,
    SymmetricIntegral,
    Su2,
    ExpQuadrature,
    All,
}

impl Suite {
    pub const EACH: [Suite; 9] = [
        Suite::FirstOrder,
        Suite::SecondOrder,
        Suite::Leibnitz,
        Suite::Commutator,
        Suite::Fueter,
        Suite::Integral,
        Suite::SymmetricIntegral,
        Suite::Su2,
        Suite::ExpQuadrature,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FirstOrder => "first-order",
            Suite::SecondOrder => "second-order",
            Suite::Leibnitz => "leibnitz",
            Suite::Commutator => "commutator",
            Suite::Fueter => "fueter",
            Suite::Integral => "integral",
            Suite::SymmetricIntegral => "symmetric-integral",
            Suite::Su2 => "su2",
            Suite::ExpQuadrature => "exp-quadrature",
            Suite::All => "all",
        }
    }

    pub fn cases(self, cfg: &Config) -> Vec<Case> {
        match self {
            Suite::FirstOrder => first_order_suite(cfg),
            Suite::SecondOrder => second_order_suite(cfg),
            Suite::Leibnitz => leibnitz_suite(cfg),
            Suite::Commutator => commutator_suite(cfg),
            Suite::Fueter => fueter_suite(cfg),
            Suite::Integral => integral_suite(cfg),
            Suite::SymmetricIntegral => symmetric_suite(cfg),
            Suite::Su2 => su2_suite(cfg),
            Suite::ExpQuadrature => quadrature_suite(cfg),
            Suite::All => Suite::EACH.iter().flat_map(|s| s.cases(cfg)).collect(),
        }
    }
}

/// Seed plus an optional override of every per-case sample count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    pub seed: u64,
    pub cases: Option<usize>,
}

impl Config {
    pub fn new(seed: u64) -> Self {
        Self { seed, cases: None }
    }

    fn count(&self, default: usize) -> usize {
        self.cases.unwrap_or(default).max(1)
    }

    fn rng(&self, case: &str) -> CaseRng {
        rng_for(self.seed, case)
    }
}

pub fn run(suite: Suite, cfg: &Config) -> Report {
    Report::new(suite.name(), suite.cases(cfg))
}

/// `pow(0..8)`, `exp`, `sin`, `cos`.
pub fn standard_functions() -> Vec<AnalyticFunction> {
    let mut fs: Vec<_> = (0..=8).map(Pow).collect();
    fs.extend([Exp, Sin, Cos]);
    fs
}

/// Worst value over a batch of samples plus any hard failures.
#[derive(Default)]
struct Tally {
    worst: f64,
    samples: usize,
    degenerate: usize,
    skipped: usize,
    errors: Vec<String>,
}

impl Tally {
    fn record(&mut self, v: f64) {
        self.samples += 1;
        if v.is_nan() {
            self.error("measurement is NaN".into());
        } else {
            self.worst = self.worst.max(v);
        }
    }

    fn error(&mut self, msg: String) {
        if self.errors.len() < 3 {
            self.errors.push(msg);
        } else if self.errors.len() == 3 {
            self.errors.push("...".into());
        }
    }

    /// Records `|slope - target|`, or an error if the fit is unusable.
    fn slope(&mut self, rep: qcalc::Result<SlopeReport>, target: f64) {
        match rep {
            Ok(rep) if rep.usable() => self.record((rep.slope - target).abs()),
            Ok(rep) => self.error(format!("unusable fit: slope {} r2 {}", rep.slope, rep.r2)),
            Err(CalcError::DegenerateResidual { .. }) => {
                self.samples += 1;
                self.degenerate += 1;
            }
            Err(e) => self.error(e.to_string()),
        }
    }

    fn finish(self, name: String, tolerance: f64, detail: &str) -> Case {
        let mut detail = format!("{detail}; {} samples", self.samples);
        if self.degenerate > 0 {
            detail += &format!(", {} exact through the tested order", self.degenerate);
        }
        if self.skipped > 0 {
            detail += &format!(", {} skipped", self.skipped);
        }
        if self.errors.is_empty() {
            Case::within(name, self.worst, tolerance, detail)
        } else {
            let mut c = Case::failed(
                name,
                format!("{detail}; errors: {}", self.errors.join("; ")),
            );
            c.measured = self.worst;
            c.tolerance = tolerance;
            c
        }
    }
}

fn single(
    name: &str,
    got: qcalc::Result<Quaternion>,
    want: Quaternion,
    tol: f64,
    detail: &str,
) -> Case {
    match got {
        Ok(v) => Case::within(
            name,
            v.max_abs_diff(want),
            tol,
            format!("{detail}; got {v}"),
        ),
        Err(e) => Case::failed(name, format!("{detail}; {e}")),
    }
}

fn rel_diff(a: Quaternion, b: Quaternion) -> f64 {
    (a - b).norm() / (1.0 + b.norm())
}

fn q(a: f64, b: f64, c: f64, d: f64) -> Quaternion {
    Quaternion::new(a, b, c, d)
}

// ---------------------------------------------------------------- first order

const FIRST_ORDER: &str =
    "F(x + eps d) = F(x) + eps [F'(x) d_par + (F(x) - F(x*))(x - x*)^-1 d_perp] + O(eps^2)";

fn first_order_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    for f in standard_functions() {
        let name = format!("first-order/slope/{f}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(200) {
            let (x, d) = (
                sampling::point(&mut rng, 0.1),
                sampling::unit_quaternion(&mut rng),
            );
            t.slope(residual_slope(&f, x, d, 1, &DEFAULT_EPSILONS), 2.0);
        }
        cases.push(t.finish(name, 0.2, &format!("|slope - 2| of {FIRST_ORDER}")));
    }

    // (x + eps d)^2 - x^2 - eps D = eps^2 d^2 exactly, |d^2| = 1
    let name = "first-order/exact/pow:2";
    let x = q(1.0, 1.0, 0.0, 0.0);
    cases.push(
        match residual_slope(&Pow(2), x, Quaternion::J, 1, &DEFAULT_EPSILONS) {
            Ok(rep) => {
                let dev = rep
                    .epsilons
                    .iter()
                    .zip(&rep.residuals)
                    .map(|(e, r)| (r - e * e).abs())
                    .fold(0.0, f64::max);
                Case::within(
                    name,
                    dev,
                    1e-12,
                    "residual of x^2 at 1+i along j equals eps^2",
                )
            }
            Err(e) => Case::failed(name, e.to_string()),
        },
    );

    for n in 1..=8u32 {
        let name = format!("first-order/power-oracle/pow:{n}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(100) {
            let (x, d) = (
                sampling::point(&mut rng, 0.1),
                sampling::unit_quaternion(&mut rng),
            );
            match dcal(&Pow(n as i32), x, d) {
                Ok(v) => t.record(v.max_abs_diff(direct_power_first_order(n, x, d))),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(name, 1e-12, "|D x^n - sum_m x^(n-m-1) d x^m|"));
    }

    for n in 1..=8u32 {
        let name = format!("first-order/geometric-sum/pow:{n}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(100) {
            let (x, d) = (
                sampling::point(&mut rng, 0.1),
                sampling::unit_quaternion(&mut rng),
            );
            let split = x.split(d).expect("sampled point is off axis");
            let powers: Vec<Quaternion> =
                std::iter::successors(Some(Quaternion::ONE), |p| Some(*p * x))
                    .take(n as usize)
                    .collect();
            let conj_powers: Vec<Quaternion> =
                std::iter::successors(Some(Quaternion::ONE), |p| Some(*p * x.conj()))
                    .take(n as usize)
                    .collect();
            let geometric: Quaternion = (0..n as usize)
                .map(|m| powers[n as usize - 1 - m] * conj_powers[m])
                .sum();
            let want =
                powers[n as usize - 1] * f64::from(n) * split.parallel + geometric * split.perp;
            match dcal(&Pow(n as i32), x, d) {
                Ok(v) => t.record(v.max_abs_diff(want)),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(
            name,
            1e-12,
            "|D x^n - n x^(n-1) d_par - (sum_m x^(n-m-1) x*^m) d_perp|",
        ));
    }

    let name = "first-order/left-coefficients".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(200) {
        let c = sampling::left_coefficients(&mut rng, 5);
        let f = if rng_bool(&mut rng) {
            AnalyticFunction::poly(c)
        } else {
            AnalyticFunction::scaled(c[0], Exp)
        };
        let (x, d) = (
            sampling::point(&mut rng, 0.1),
            sampling::unit_quaternion(&mut rng),
        );
        t.slope(residual_slope(&f, x, d, 1, &DEFAULT_EPSILONS), 2.0);
    }
    cases.push(t.finish(
        name,
        0.2,
        "|slope - 2| with left quaternion coefficients c_n x^n",
    ));

    let name = "first-order/linearity".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(200) {
        let f = sampling::real_function(&mut rng);
        let (x, d) = (
            sampling::point(&mut rng, 0.1),
            sampling::unit_quaternion(&mut rng),
        );
        // powers of two keep the scaling itself exact
        let s = [2.0, -0.5, 0.25, -8.0][rng_index(&mut rng, 4)];
        match (dcal(&f, x, d * s), dcal(&f, x, d)) {
            (Ok(a), Ok(b)) => t.record(a.max_abs_diff(b * s)),
            (Err(e), _) | (_, Err(e)) => t.error(e.to_string()),
        }
    }
    cases.push(t.finish(name, 1e-15, "D F(x)[s d] - s D F(x)[d] for dyadic s"));
    cases
}

fn rng_bool(rng: &mut CaseRng) -> bool {
    rand::Rng::random_bool(rng, 0.5)
}

fn rng_index(rng: &mut CaseRng, n: usize) -> usize {
    rand::Rng::random_range(rng, 0..n)
}

// --------------------------------------------------------------- second order

const SECOND_ORDER: &str = "F(x + eps d) - F(x) - eps D F - eps^2 D2 F = O(eps^3)";

fn second_order_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    for f in standard_functions() {
        let name = format!("second-order/slope/{f}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(200) {
            let (x, d) = (
                sampling::point(&mut rng, 0.1),
                sampling::unit_quaternion(&mut rng),
            );
            t.slope(residual_slope(&f, x, d, 2, &DEFAULT_EPSILONS), 3.0);
        }
        cases.push(t.finish(name, 0.2, &format!("|slope - 3| of {SECOND_ORDER}")));
    }

    cases.push(single(
        "second-order/example/pow:2",
        dcal2(&Pow(2), q(1.0, 1.0, 0.0, 0.0), Quaternion::J),
        -Quaternion::ONE,
        1e-12,
        "D2 x^2 at 1+i along j is j^2 = -1",
    ));
    cases.push(single(
        "second-order/example/pow:3",
        dcal2(&Pow(3), Quaternion::I, Quaternion::J),
        -Quaternion::I,
        1e-12,
        "D2 x^3 at i along j is x d d + d x d + d d x = -i",
    ));

    for n in 2..=6u32 {
        let name = format!("second-order/power-oracle/pow:{n}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(100) {
            let (x, d) = (
                sampling::point(&mut rng, 0.1),
                sampling::unit_quaternion(&mut rng),
            );
            match dcal2(&Pow(n as i32), x, d) {
                Ok(v) => t.record(v.max_abs_diff(direct_power_second_order(n, x, d))),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(name, 1e-11, "|D2 x^n - sum of all words with two d|"));
    }

    let name = "second-order/unit-imaginary/finite-difference".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(200) {
        let (x, d) = (
            sampling::point(&mut rng, 0.1),
            sampling::unit_quaternion(&mut rng),
        );
        t.slope(unit_imaginary_slope(x, d), 2.0);
    }
    cases.push(t.finish(
        name,
        0.2,
        "|slope - 2| of u(x + eps d) - u(x) - eps d_perp / r",
    ));

    cases.push(single(
        "second-order/unit-imaginary/example-1",
        d_unit_imaginary(q(1.0, 1.0, 0.0, 0.0), Quaternion::J),
        Quaternion::J,
        1e-15,
        "D u at 1+i along j is j",
    ));
    cases.push(single(
        "second-order/unit-imaginary/example-2",
        d_unit_imaginary(Quaternion::K * 2.0, Quaternion::I),
        Quaternion::I * 0.5,
        1e-15,
        "D u at 2k along i is i/2",
    ));
    cases
}

fn unit_vector(x: Quaternion) -> Quaternion {
    x.vector() / x.imag_norm()
}

pub fn unit_imaginary_slope(x: Quaternion, d: Quaternion) -> qcalc::Result<SlopeReport> {
    let du = d_unit_imaginary(x, d)?;
    let u = unit_vector(x);
    let residuals: Vec<f64> = DEFAULT_EPSILONS
        .iter()
        .map(|&e| (unit_vector(x + d * e) - u - du * e).norm())
        .collect();
    SlopeReport::fit(&DEFAULT_EPSILONS, &residuals)
}

// ------------------------------------------------------- Leibnitz, commutator

fn leibnitz_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    let name = "leibnitz/product-rule".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(200) {
        let (f, g) = (
            sampling::real_function(&mut rng),
            sampling::real_function(&mut rng),
        );
        let (x, d) = (
            sampling::point(&mut rng, 0.1),
            sampling::unit_quaternion(&mut rng),
        );
        let check = || -> qcalc::Result<f64> {
            let fg = AnalyticFunction::product(f.clone(), g.clone())?;
            let lhs = dcal(&fg, x, d)?;
            let rhs = dcal(&f, x, d)? * g.eval(x)? + f.eval(x)? * dcal(&g, x, d)?;
            Ok(lhs.max_abs_diff(rhs))
        };
        match check() {
            Ok(v) => t.record(v),
            Err(e) => t.error(e.to_string()),
        }
    }
    cases.push(t.finish(
        name,
        1e-11,
        "D(F G) - (D F) G - F (D G) for real-coefficient F, G",
    ));

    let name = "leibnitz/quotient".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(200) {
        let g = sampling::real_function(&mut rng);
        let (x, d) = (
            sampling::point(&mut rng, 0.1),
            sampling::unit_quaternion(&mut rng),
        );
        let check = || -> qcalc::Result<Option<f64>> {
            let gx = g.eval(x)?;
            if gx.norm() < 0.1 {
                return Ok(None);
            }
            let inv = AnalyticFunction::compose(Recip, g.clone())?;
            let sum = dcal(&g, x, d)? * inv.eval(x)? + gx * dcal(&inv, x, d)?;
            Ok(Some(sum.norm()))
        };
        match check() {
            Ok(Some(v)) => t.record(v),
            Ok(None) => t.skipped += 1,
            Err(e) => t.error(e.to_string()),
        }
    }
    cases.push(t.finish(
        name,
        1e-10,
        "(D G)(1/G) + G D(1/G) = D 1 = 0, |G(x)| >= 0.1",
    ));
    cases
}

fn commutator_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    for (label, against_dcal) in [("perp-term", false), ("dcal-minus-parallel", true)] {
        let name = format!("commutator/{label}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(200) {
            let f = sampling::real_function(&mut rng);
            let (x, d) = (
                sampling::point(&mut rng, 0.1),
                sampling::unit_quaternion(&mut rng),
            );
            let check = || -> qcalc::Result<f64> {
                let c = commutator_form(&f, x, d)?;
                let want = if against_dcal {
                    let par = x.split(d)?.parallel;
                    dcal(&f, x, d)? - f.eval_derivative(x, 1)? * par
                } else {
                    f.perp_ratio(x)? * first_order(&f, x, d)?.perp
                };
                Ok(c.max_abs_diff(want))
            };
            match check() {
                Ok(v) => t.record(v),
                Err(e) => t.error(e.to_string()),
            }
        }
        let detail = if against_dcal {
            "[(x* - x)^-1 d_perp, F(x)] against D F - F'(x) d_par"
        } else {
            "[(x* - x)^-1 d_perp, F(x)] against (F(x) - F(x*))(x - x*)^-1 d_perp"
        };
        cases.push(t.finish(name, 1e-12, detail));
    }
    cases
}

// -------------------------------------------------------------------- Fueter

fn fueter_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    let x = Quaternion::I * FRAC_PI_2;
    let want = Quaternion::real(-4.0 / PI);
    cases.push(single(
        "fueter/exp-at-half-pi-i/numeric",
        box_numeric(&Exp, x, StencilConfig::first_derivative()),
        want,
        1e-6,
        "box e^x = -2 e^x0 sin(r) / r = -4/pi at x = (pi/2) i, central differences h = 1e-4",
    ));
    cases.push(single(
        "fueter/exp-at-half-pi-i/analytic",
        box_analytic(&Exp, x),
        want,
        1e-12,
        "box e^x = -2 e^x0 sin(r) / r = -4/pi at x = (pi/2) i",
    ));

    let mut fs: Vec<_> = (1..=6).map(Pow).collect();
    fs.extend([Exp, Sin]);
    for f in fs {
        let name = format!("fueter/bridge/{f}");
        let mut rng = cfg.rng(&name);
        let mut bridge = Tally::default();
        let mut real = Tally::default();
        for _ in 0..cfg.count(100) {
            let x = sampling::point(&mut rng, 0.2);
            match (
                box_numeric(&f, x, StencilConfig::first_derivative()),
                box_analytic(&f, x),
            ) {
                (Ok(n), Ok(a)) => {
                    bridge.record(n.max_abs_diff(a));
                    real.record(a.imag_norm());
                }
                (Err(e), _) | (_, Err(e)) => bridge.error(e.to_string()),
            }
        }
        cases.push(bridge.finish(
            name,
            1e-5,
            "box F = -2 (F(x) - F(x*))(x - x*)^-1 against left-unit central differences",
        ));
        cases.push(real.finish(
            format!("fueter/real-valued/{f}"),
            1e-12,
            "imaginary part of box F",
        ));

        let name = format!("fueter/regularity/{f}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(100) {
            let x = sampling::point(&mut rng, 0.2);
            // order 4: the order-2 truncation h^2/12 d^4(box F) alone reaches 2e-4 for x^6
            match regularity(&f, x, regularity_stencil()) {
                Ok(check) => t.record(check.relative()),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(
            name,
            1e-4,
            "laplacian4(box F) / (1 + max |box F| on the stencil), fourth-order stencil, h = 1e-3",
        ));
    }
    cases
}

/// Fourth-order Laplacian stencil at `h = 1e-3` for the regularity check.
pub fn regularity_stencil() -> StencilConfig {
    StencilConfig::new(1e-3, 4).expect("valid stencil")
}

// ------------------------------------------------------------------ integral

/// Refinements used for the convergence-ratio checks.
pub const DOUBLING_GRID: [usize; 4] = [250, 500, 1000, 2000];

/// Functions for the path checks: `pow(2..4)` and `exp`.
pub fn path_functions() -> Vec<AnalyticFunction> {
    vec![Pow(2), Pow(3), Pow(4), Exp]
}

/// `e(N) / e(2N)` for consecutive entries of `grid`.
pub fn doubling_ratios(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| w[0] / w[1]).collect()
}

fn ratio_deviation(errors: &[f64]) -> f64 {
    doubling_ratios(errors)
        .into_iter()
        .map(|r| (r - 2.0).abs())
        .fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) })
}

/// Richardson limit of a sum with an O(1/N) error, from `N` and `2N`.
pub fn extrapolate(coarse: Quaternion, fine: Quaternion) -> Quaternion {
    fine * 2.0 - coarse
}

fn integral_at(
    f: &AnalyticFunction,
    waypoints: &[Quaternion],
    n: usize,
) -> qcalc::Result<Quaternion> {
    Ok(line_integral_d(f, &Path::new(waypoints.to_vec(), n)?)?.value)
}

fn endpoint_difference(
    f: &AnalyticFunction,
    a: Quaternion,
    b: Quaternion,
) -> qcalc::Result<Quaternion> {
    Ok(f.eval(b)? - f.eval(a)?)
}

fn integral_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    let paths = cfg.count(4);
    for f in path_functions() {
        let name = format!("integral/fundamental-theorem/{f}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..paths {
            let w = sampling::off_axis_waypoints(&mut rng, 2);
            let check = || -> qcalc::Result<f64> {
                let exact = endpoint_difference(&f, w[0], w[1])?;
                let errors = DOUBLING_GRID
                    .iter()
                    .map(|&n| Ok((integral_at(&f, &w, n)? - exact).norm()))
                    .collect::<qcalc::Result<Vec<f64>>>()?;
                Ok(ratio_deviation(&errors))
            };
            match check() {
                Ok(v) => t.record(v),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(
            name,
            0.3,
            "|e(N)/e(2N) - 2| for e(N) = |sum of D F - (F(b) - F(a))|, N = 250..2000",
        ));

        let name = format!("integral/path-independence/{f}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..paths {
            let w = sampling::off_axis_waypoints(&mut rng, 3);
            let direct = [w[0], w[2]];
            let check = || -> qcalc::Result<f64> {
                let n = 1000;
                let (d1, d2) = (
                    integral_at(&f, &direct, n)?,
                    integral_at(&f, &direct, 2 * n)?,
                );
                let (b1, b2) = (integral_at(&f, &w, n)?, integral_at(&f, &w, 2 * n)?);
                let budget = (d1 - d2).norm() + (b1 - b2).norm();
                Ok((extrapolate(d1, d2) - extrapolate(b1, b2)).norm() / budget)
            };
            match check() {
                Ok(v) => t.record(v),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(
            name,
            1.0,
            "|I_1 - I_2| / (e_1 + e_2) for two polylines a -> b, I = 2 I(2N) - I(N), e = |I(N) - I(2N)|, N = 1000",
        ));

        let name = format!("integral/closed-loop/{f}");
        let mut rng = cfg.rng(&name);
        let mut bound = Tally::default();
        let mut limit = Tally::default();
        for _ in 0..paths {
            let mut w = sampling::off_axis_waypoints(&mut rng, 3);
            w.push(w[0]);
            let check = || -> qcalc::Result<(f64, f64)> {
                let n = 1000;
                let mut leg_error: f64 = 0.0;
                for leg in w.windows(2) {
                    let err = integral_at(&f, leg, n)? - endpoint_difference(&f, leg[0], leg[1])?;
                    leg_error = leg_error.max(err.norm());
                }
                let (l1, l2) = (integral_at(&f, &w, n)?, integral_at(&f, &w, 2 * n)?);
                let extrapolated = extrapolate(l1, l2).norm();
                Ok((
                    l1.norm() / (3.0 * leg_error),
                    extrapolated / (l1 - l2).norm(),
                ))
            };
            match check() {
                Ok((a, b)) => {
                    bound.record(a);
                    limit.record(b);
                }
                Err(e) => bound.error(e.to_string()),
            }
        }
        cases.push(bound.finish(
            name.clone(),
            1.0,
            "|loop sum| / (3 max open-leg error) for a closed triangle, N = 1000",
        ));
        cases.push(limit.finish(
            format!("{name}/extrapolated"),
            0.05,
            "|2 L(2N) - L(N)| / |L(N) - L(2N)|: the loop sum tends to zero",
        ));

        let name = format!("integral/derivative-of-integral/{f}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..paths {
            let w = sampling::off_axis_waypoints(&mut rng, 2);
            let d = sampling::unit_quaternion(&mut rng);
            let check = || -> qcalc::Result<f64> {
                let (n, eps) = (10_000, 1e-3);
                let (a, x) = (w[0], w[1]);
                let short = integral_at(&f, &[a, x], n)?;
                let long = integral_at(&f, &[a, x, x + d * eps], n)?;
                let gap = (long - short - dcal(&f, x, d)? * eps).norm();
                let budget = eps * eps * (1.0 + dcal2(&f, x, d)?.norm()) + 1.0 / n as f64 * eps;
                Ok(gap / budget)
            };
            match check() {
                Ok(v) => t.record(v),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(
            name,
            1.0,
            "|I[a, x + eps d] - I[a, x] - eps D F(x)| / (eps^2 (1 + |D2 F|) + eps/N), N = 1e4, eps = 1e-3",
        ));
    }

    for (f, g) in [(Pow(1), Pow(1)), (Exp, Sin), (Pow(2), Cos), (Cos, Exp)] {
        let name = format!("integral/parts/{f}/{g}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..paths {
            let w = sampling::off_axis_waypoints(&mut rng, 2);
            let check = || -> qcalc::Result<f64> {
                let n = 1000;
                let s1 = line_integral_parts(&f, &g, &Path::new(w.clone(), n)?)?;
                let s2 = line_integral_parts(&f, &g, &Path::new(w.clone(), 2 * n)?)?;
                let budget = (s1.lhs - s2.lhs).norm() + (s1.rhs - s2.rhs).norm();
                Ok((extrapolate(s1.lhs, s2.lhs) - extrapolate(s1.rhs, s2.rhs)).norm() / budget)
            };
            match check() {
                Ok(v) => t.record(v),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(
            name,
            1.0,
            "|int F DG - (FG|_a^b - int (DF) G)| / combined |S(N) - S(2N)|, S = 2 S(2N) - S(N), N = 1000",
        ));
    }

    let name = "integral/additivity".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..paths {
        let w = sampling::off_axis_waypoints(&mut rng, 3);
        let f = sampling::real_function(&mut rng);
        let check = || -> qcalc::Result<f64> {
            let whole = integral_at(&f, &w, 300)?;
            let parts = integral_at(&f, &w[..2], 300)? + integral_at(&f, &w[1..], 300)?;
            Ok(rel_diff(whole, parts))
        };
        match check() {
            Ok(v) => t.record(v),
            Err(e) => t.error(e.to_string()),
        }
    }
    cases.push(t.finish(
        name,
        1e-13,
        "integral over a -> m -> b against a -> m plus m -> b",
    ));
    cases
}

// --------------------------------------------------------- symmetric integral

fn symmetric_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    let paths = cfg.count(4);
    for n in 0..=5u32 {
        let antiderivative = AnalyticFunction::scaled(1.0 / f64::from(n + 1), Pow(n as i32 + 1));

        let name = format!("symmetric-integral/convergence/n={n}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..paths {
            let w = sampling::off_axis_waypoints(&mut rng, 2);
            let exact = match endpoint_difference(&antiderivative, w[0], w[1]) {
                Ok(v) => v,
                Err(e) => {
                    t.error(e.to_string());
                    continue;
                }
            };
            let errors: Vec<f64> = DOUBLING_GRID
                .iter()
                .map(|&k| {
                    let p = Path::new(w.clone(), k).expect("distinct waypoints");
                    (symmetric_integral(n, &p) - exact).norm()
                })
                .collect();
            if n == 0 {
                t.record(errors.into_iter().fold(0.0, f64::max));
            } else {
                t.record(ratio_deviation(&errors));
            }
        }
        cases.push(if n == 0 {
            t.finish(name, 1e-14, "n = 0 telescopes to b - a at every refinement")
        } else {
            t.finish(
                name,
                0.3,
                "|e(N)/e(2N) - 2| against (b^(n+1) - a^(n+1))/(n+1), N = 250..2000",
            )
        });

        let name = format!("symmetric-integral/matches-dcal/n={n}");
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..paths {
            let w = sampling::off_axis_waypoints(&mut rng, 3);
            let check = || -> qcalc::Result<f64> {
                let p = Path::new(w.clone(), 1000)?;
                Ok(symmetric_integral(n, &p)
                    .max_abs_diff(line_integral_d(&antiderivative, &p)?.value))
            };
            match check() {
                Ok(v) => t.record(v),
                Err(e) => t.error(e.to_string()),
            }
        }
        cases.push(t.finish(
            name,
            1e-10,
            "symmetric sum of x^m dx x^(n-m)/(n+1) against the sum of D x^(n+1)/(n+1), same refinement",
        ));
    }
    cases
}

// ---------------------------------------------------------------------- su2

fn su2_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    cases.push(Case::within(
        "su2/commutation-relations",
        su2::algebra_defect(),
        1e-15,
        "[J1, J2] = J3 and cyclic for Ja = -(i/2) sigma_a",
    ));

    let worked = su2_first_order(&Pow(2), Su2Element::new(1.0, 0.0, 0.0, 1.0), Su2Element::J1);
    cases.push(match worked {
        Ok(m) => Case::within(
            "su2/worked-case",
            (m - Su2Element::J1.matrix() * 2.0).norm(),
            1e-13,
            "x^2 at I + J3 along J1 gives 2 J1",
        ),
        Err(e) => Case::failed("su2/worked-case", e.to_string()),
    });

    let mut refs: Vec<_> = (2..=5).map(MatrixReference::Pow).collect();
    refs.push(MatrixReference::Exp);
    for f in refs {
        let name = format!("su2/slope/{}", f.function());
        let mut rng = cfg.rng(&name);
        let mut t = Tally::default();
        for _ in 0..cfg.count(100) {
            let (x, d) = (
                sampling::su2_point(&mut rng, 0.2),
                sampling::su2_direction(&mut rng),
            );
            t.slope(su2_residual_slope(f, x, d, &DEFAULT_EPSILONS), 2.0);
        }
        cases.push(t.finish(
            name,
            0.2,
            "|slope - 2| of F(x + eps d) - F(x) - eps [F'(x) d_par + (F(x+ir) - F(x-ir))/(2ir) d_perp \
             + (F(x+ir) + F(x-ir) - 2F(x))/(2r) (1/r)[x, d]], F by power or scaled Taylor series",
        ));
    }

    let name = "su2/split-identity".to_string();
    let mut rng = cfg.rng(&name);
    let mut nested = Tally::default();
    let mut sum = Tally::default();
    for _ in 0..cfg.count(100) {
        let (x, d) = (
            sampling::su2_point(&mut rng, 0.2),
            sampling::su2_direction(&mut rng),
        );
        match su2_split(x, d) {
            Ok((par, perp)) => {
                let r = x.r();
                let once = x.matrix().commutator(d.matrix()) * (1.0 / r);
                let twice = x.matrix().commutator(once) * (-1.0 / r);
                // independent route: remove the component along the axis of x
                let [_, x1, x2, x3] = x.coeffs;
                let [_, d1, d2, d3] = d.coeffs;
                let along = (x1 * d1 + x2 * d2 + x3 * d3) / (r * r);
                let projected =
                    Su2Element::new(0.0, d1 - along * x1, d2 - along * x2, d3 - along * x3);
                nested.record(
                    (twice - perp.matrix())
                        .norm()
                        .max((projected.matrix() - perp.matrix()).norm()),
                );
                sum.record(((par + perp).matrix() - d.matrix()).norm());
            }
            Err(e) => nested.error(e.to_string()),
        }
    }
    cases.push(nested.finish(
        name,
        1e-13,
        "d_perp = -(1/r^2)[x, [x, d]] against (1/r)[x, .] applied twice and against the axis projection",
    ));
    cases.push(sum.finish("su2/split-sum".into(), 1e-15, "d_par + d_perp = d"));

    let name = "su2/rotation-invariance".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(100) {
        let (x, d) = (
            sampling::su2_point(&mut rng, 0.2),
            sampling::su2_direction(&mut rng),
        );
        let theta = rand::Rng::random_range(&mut rng, 0.0..2.0 * PI);
        let u = group_element(theta, sampling::direction3(&mut rng));
        let rotate = |e: Su2Element| Su2Element::from_matrix(&(u * e.matrix() * u.adjoint()));
        let f = MatrixReference::Exp;
        match (
            su2_residual_slope(f, x, d, &DEFAULT_EPSILONS),
            su2_residual_slope(f, rotate(x), rotate(d), &DEFAULT_EPSILONS),
        ) {
            (Ok(a), Ok(b)) => t.record(
                a.residuals
                    .iter()
                    .zip(&b.residuals)
                    .map(|(p, q)| (p - q).abs())
                    .fold(0.0, f64::max),
            ),
            (Err(e), _) | (_, Err(e)) => t.error(e.to_string()),
        }
    }
    cases.push(t.finish(
        name,
        1e-12,
        "residual norms of exp before and after x, d -> U x U^-1, U d U^-1",
    ));
    cases
}

// ----------------------------------------------------------- exp quadrature

fn quadrature_suite(cfg: &Config) -> Vec<Case> {
    let mut cases = Vec::new();
    let name = "exp-quadrature/matches-dcal".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(50) {
        let x = sampling::unit_quaternion(&mut rng) * rand::Rng::random_range(&mut rng, 0.0..3.0);
        let d = sampling::unit_quaternion(&mut rng);
        match (exp_expansion_quadrature(x, d, 64), dcal(&Exp, x, d)) {
            (Ok(a), Ok(b)) => t.record(a.max_abs_diff(b)),
            (Err(e), _) | (_, Err(e)) => t.error(e.to_string()),
        }
    }
    cases.push(t.finish(
        name,
        1e-10,
        "int_0^1 e^((1-s)x) d e^(sx) ds by 64-node Gauss-Legendre against D e^x, |x| <= 3",
    ));

    let name = "exp-quadrature/node-doubling".to_string();
    let mut rng = cfg.rng(&name);
    let mut t = Tally::default();
    for _ in 0..cfg.count(50) {
        let x = sampling::unit_quaternion(&mut rng) * rand::Rng::random_range(&mut rng, 1.0..3.0);
        let d = sampling::unit_quaternion(&mut rng);
        let check = || -> qcalc::Result<f64> {
            let exact = dcal(&Exp, x, d)?;
            let errs = [8, 16, 32]
                .iter()
                .map(|&n| Ok(exp_expansion_quadrature(x, d, n)?.max_abs_diff(exact)))
                .collect::<qcalc::Result<Vec<f64>>>()?;
            // each doubling must improve until the rounding floor
            Ok(errs
                .windows(2)
                .map(|w| if w[0] <= 1e-13 { 0.0 } else { w[1] / w[0] })
                .fold(0.0, f64::max))
        };
        match check() {
            Ok(v) => t.record(v),
            Err(e) => t.error(e.to_string()),
        }
    }
    cases.push(t.finish(
        name,
        1.0,
        "error ratio e(2n)/e(n) for n = 8, 16 above the 1e-13 floor",
    ));

    cases.push(single(
        "exp-quadrature/half-pi-i",
        exp_expansion_quadrature(Quaternion::I * FRAC_PI_2, Quaternion::J, 64),
        Quaternion::J * (2.0 / PI),
        1e-12,
        "the integral at x = (pi/2) i along j is (2/pi) j",
    ));
    cases
}
