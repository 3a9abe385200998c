//! Unruh quantum Otto engine.
//!
//! A single qubit is driven around a four-stroke Otto cycle whose two
//! isochoric strokes are replaced by contacts with the Minkowski vacuum
//! along uniformly accelerated worldlines. This crate evaluates the
//! closed-form vacuum response, the population shift it induces, the
//! per-stroke heat and work, the cycle-closing initial population and the
//! comparison with a classical Gibbs bath. Two independent quadrature
//! oracles evaluate the regulated vacuum integral directly.
//!
//! Module map:
//!
//! * [`specfun`] Lerch transcendent by a tail-bounded series.
//! * [`response`] closed-form response `J(x, y)` and the population shift.
//! * [`oracle`] quadrature of the regulated integral (two representations).
//! * [`kinematics`] hyperbolic worldline and contact durations.
//! * [`engine`] stage ledger, critical population, cycle solution.
//! * [`exec`] parallel / sequential grid evaluation.

// `!(x > 0.0)` is how domain checks reject NaN along with the bad sign.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod engine;
pub mod error;
pub mod exec;
pub mod kinematics;
pub mod oracle;
pub mod quadrature;
pub mod response;
pub mod specfun;

pub use engine::{
    classical_delta_p, critical_probability, solve_cycle, stage_ledger, work_comparison,
    ComparisonRow, CycleSolution, EngineConfig, StageLedger,
};
pub use error::{Error, Result};
pub use exec::Execution;
pub use kinematics::{contact_durations, Worldline};
pub use oracle::{
    integrate_imagesum_1d, integrate_sinh_2d, OracleResult, QuadratureSpec, Representation,
};
pub use response::{
    delta_p, j_function, perturbative_validity, ReducedPoint, ResponseArgs, ValidityVerdict,
};
pub use specfun::{lerch_phi, LerchArgs};
