//! Closed-form vacuum response and the population shift it drives.
//!
//! `J(x, y)` takes the dimensionless gap-to-acceleration ratio `x = omega/alpha`
//! (signed) and the dimensionless contact length `y = alpha * T`:
//!
//! ```text
//! J(x, y) = (y/2)^2 e^{-|x| y} / (8 sin^2(y/2)) - 1/8 + (|x| y / 4) theta(x)
//!         + y^2 z / (32 pi^2)    [phi(z, 2, 1 + y/2pi) - phi(z, 2, 1 - y/2pi)]
//!         + |x| y^2 z / (16 pi)  [phi(z, 1, 1 + y/2pi) - phi(z, 1, 1 - y/2pi)]
//! ```
//!
//! with `z = e^{-2 pi |x|}` and `phi` the Lerch transcendent. The domain is
//! `y in (0, 2 pi)`: at `y = 2 pi` the `sin^2` term blows up and the shift
//! `1 - y/2pi` reaches zero.
//!
//! Only `theta(x)` distinguishes `J(x, y)` from `J(-x, y)`, which gives the
//! exact identity `J(x, y) - J(-x, y) = x y / 4`.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::specfun::{lerch_phi, LerchArgs, DEFAULT_TOL};

/// Upper bound on the contact speed: `y = 2 artanh(v) < 2 pi`.
pub fn speed_ceiling() -> f64 {
    PI.tanh()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResponseArgs {
    pub x: f64,
    pub y: f64,
}

impl ResponseArgs {
    pub fn new(x: f64, y: f64) -> Self {
        ResponseArgs { x, y }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.x.is_finite() || self.x == 0.0 {
            return Err(Error::domain(format!(
                "x = {} must be finite and nonzero",
                self.x
            )));
        }
        if !(self.y > 0.0 && self.y < 2.0 * PI) {
            return Err(Error::domain(format!("y = {} out of (0, 2 pi)", self.y)));
        }
        Ok(())
    }
}

/// The individual pieces of `J`, for diagnostics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JTerms {
    pub switching: f64,
    pub heaviside: f64,
    pub lerch_order2: f64,
    pub lerch_order1: f64,
    pub total: f64,
}

pub fn j_function(args: ResponseArgs) -> Result<f64> {
    j_terms(args).map(|t| t.total)
}

pub fn j_terms(args: ResponseArgs) -> Result<JTerms> {
    args.validate()?;
    let ResponseArgs { x, y } = args;
    let ax = x.abs();
    let z = (-2.0 * PI * ax).exp();
    let h = y / (2.0 * PI);

    let half = 0.5 * y;
    let s = half.sin();
    let switching = half * half * (-ax * y).exp() / (8.0 * s * s) - 0.125;
    let heaviside = if x > 0.0 { 0.25 * ax * y } else { 0.0 };

    let phi =
        |order: u32, shift: f64| lerch_phi(&LerchArgs::new(z, order, shift).with_tol(DEFAULT_TOL));
    let lerch_order2 = y * y * z / (32.0 * PI * PI) * (phi(2, 1.0 + h)? - phi(2, 1.0 - h)?);
    let lerch_order1 = ax * y * y * z / (16.0 * PI) * (phi(1, 1.0 + h)? - phi(1, 1.0 - h)?);

    Ok(JTerms {
        switching,
        heaviside,
        lerch_order2,
        lerch_order1,
        total: switching + heaviside + lerch_order2 + lerch_order1,
    })
}

/// Response at the physical arguments: `I(alpha, omega, T) = J(omega/alpha, alpha T)`.
pub fn response(alpha: f64, omega: f64, contact: f64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(Error::domain(format!("alpha = {alpha} must be positive")));
    }
    j_function(ResponseArgs::new(omega / alpha, alpha * contact))
}

/// Argument tuple of the population shift.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedPoint {
    /// Reduced acceleration `alpha / omega`.
    pub a: f64,
    /// Initial excited-state population.
    pub p: f64,
    /// Speed at the contact endpoints, units of c.
    pub v: f64,
    /// Coupling constant.
    pub g: f64,
}

impl ReducedPoint {
    pub fn new(a: f64, p: f64, v: f64, g: f64) -> Self {
        ReducedPoint { a, p, v, g }
    }

    pub fn validate(&self) -> Result<()> {
        check_reduced(self.a, self.v, self.g)?;
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::domain(format!("p = {} out of [0, 1]", self.p)));
        }
        Ok(())
    }

    /// Dimensionless contact length `2 artanh(v)`.
    pub fn contact_length(&self) -> f64 {
        2.0 * self.v.atanh()
    }
}

pub(crate) fn check_speed(v: f64) -> Result<()> {
    if !(v > 0.0 && v < speed_ceiling()) {
        return Err(Error::domain(format!("v out of (0, tanh(pi)): v = {v}")));
    }
    Ok(())
}

pub(crate) fn check_reduced(a: f64, v: f64, g: f64) -> Result<()> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!(
            "a = {a} must be positive and finite"
        )));
    }
    check_speed(v)?;
    if !(g > 0.0) || !g.is_finite() {
        return Err(Error::domain(format!("g = {g} must be positive")));
    }
    Ok(())
}

/// Population shift after one vacuum contact,
/// `g^2 [(1 - 2p) J(-1/a, 2 artanh v) - p artanh(v) / (2a)]`.
pub fn delta_p(point: ReducedPoint) -> Result<f64> {
    point.validate()?;
    delta_p_affine(point.a, point.p, point.v, point.g)
}

/// Same quantity assembled from both signs of the response,
/// `g^2 [(1 - p) J(-1/a, y) - p J(1/a, y)]`.
pub fn delta_p_unreduced(point: ReducedPoint) -> Result<f64> {
    point.validate()?;
    let y = point.contact_length();
    let absorb = j_function(ResponseArgs::new(-1.0 / point.a, y))?;
    let emit = j_function(ResponseArgs::new(1.0 / point.a, y))?;
    Ok(point.g * point.g * ((1.0 - point.p) * absorb - point.p * emit))
}

/// The affine-in-`p` form without the `p in [0, 1]` check. The cycle solver
/// needs it at unphysical `p` to report what the closure condition demands.
pub(crate) fn delta_p_affine(a: f64, p: f64, v: f64, g: f64) -> Result<f64> {
    check_reduced(a, v, g)?;
    let rapidity = v.atanh();
    let absorb = j_function(ResponseArgs::new(-1.0 / a, 2.0 * rapidity))?;
    Ok(g * g * ((1.0 - 2.0 * p) * absorb - p * rapidity / (2.0 * a)))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ValidityVerdict {
    /// `ratio >= margin`.
    pub pass: bool,
    /// `a / (g^2 artanh v)`.
    pub ratio: f64,
    /// Whether `0 < p + delta_p < 1`.
    pub in_unit_interval: bool,
    pub delta_p: f64,
}

/// Checks `a >> g^2 artanh(v)` with "much greater" meaning at least `margin` times.
pub fn perturbative_validity(point: ReducedPoint, margin: f64) -> Result<ValidityVerdict> {
    point.validate()?;
    verdict(point.a, point.p, point.v, point.g, margin)
}

pub(crate) fn verdict(a: f64, p: f64, v: f64, g: f64, margin: f64) -> Result<ValidityVerdict> {
    if !(margin > 1.0) {
        return Err(Error::domain(format!("margin = {margin} must exceed 1")));
    }
    let ratio = a / (g * g * v.atanh());
    let dp = delta_p_affine(a, p, v, g)?;
    let shifted = p + dp;
    Ok(ValidityVerdict {
        pass: ratio >= margin,
        ratio,
        in_unit_interval: shifted > 0.0 && shifted < 1.0,
        delta_p: dp,
    })
}

/// Largest contact speed with `a >= g^2 artanh(v)`, i.e. `tanh(a / g^2)`.
pub fn max_speed(a: f64, g: f64) -> f64 {
    (a / (g * g)).tanh()
}
