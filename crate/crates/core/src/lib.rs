//! Differentials, path integrals and the Fueter operator for functions of a quaternion.
//!
//! The central object is the first-order differential
//! `D F(x) = F'(x) d_par + (F(x) - F(x*)) (x - x*)^-1 d_perp`, where the
//! displacement is split into the part commuting with `x` and the part that
//! conjugates it. Around it sit the second-order term, the Fueter operator,
//! path integrals of `D F`, an su(2) analogue, and brute-force oracles for
//! checking all of them.

pub mod analytic;
pub mod differential;
pub mod error;
pub mod fueter;
mod grammar;
pub mod integral;
pub mod jet;
pub mod oracle;
pub mod quaternion;
pub mod su2;

pub use analytic::AnalyticFunction;
pub use error::{CalcError, Result};
pub use quaternion::{PolarForm, Quaternion, TangentSplit};
