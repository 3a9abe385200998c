//! Lerch transcendent `phi(z, s, a) = sum_{k>=0} z^k / (k + a)^s` on the real
//! series domain `0 <= z < 1`, `a > 0`, integer `s >= 1`.
//!
//! Summation is direct. After `N` terms the remainder is bounded by the
//! geometric majorant
//!
//! ```text
//! tail(N) <= z^(N+1) / ((N + 1 + a)^s (1 - z))
//! ```
//!
//! and the loop stops as soon as that bound drops below the requested
//! tolerance, so the returned value is within `tol` of the true sum.

use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_TOL: f64 = 1e-12;
pub const DEFAULT_TERM_CAP: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LerchArgs {
    pub z: f64,
    pub s: u32,
    pub a: f64,
    pub tol: f64,
}

impl LerchArgs {
    pub fn new(z: f64, s: u32, a: f64) -> Self {
        LerchArgs {
            z,
            s,
            a,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.z >= 0.0 && self.z < 1.0) {
            return Err(Error::domain(format!(
                "lerch: z = {} out of [0, 1)",
                self.z
            )));
        }
        if self.s == 0 {
            return Err(Error::domain("lerch: order s must be a positive integer"));
        }
        if !(self.a > 0.0) || !self.a.is_finite() {
            return Err(Error::domain(format!(
                "lerch: shift a = {} must be positive",
                self.a
            )));
        }
        if !(self.tol > 0.0) {
            return Err(Error::domain(format!(
                "lerch: tol = {} must be positive",
                self.tol
            )));
        }
        Ok(())
    }
}

/// Series value together with the bookkeeping that certifies it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LerchSeries {
    pub value: f64,
    /// Number of terms summed.
    pub terms: usize,
    /// Upper bound on the omitted remainder (`< tol`).
    pub tail_bound: f64,
}

pub fn lerch_phi(args: &LerchArgs) -> Result<f64> {
    lerch_series(args, DEFAULT_TERM_CAP).map(|s| s.value)
}

pub fn lerch_series(args: &LerchArgs, term_cap: usize) -> Result<LerchSeries> {
    args.validate()?;
    let LerchArgs { z, s, a, tol } = *args;
    let s = s as i32;
    let one_minus_z = 1.0 - z;

    // Neumaier-compensated running sum; terms are positive and decreasing.
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    let mut zk = 1.0f64;
    let mut k = 0usize;
    loop {
        let term = zk / (k as f64 + a).powi(s);
        let t = sum + term;
        if sum.abs() >= term.abs() {
            comp += (sum - t) + term;
        } else {
            comp += (term - t) + sum;
        }
        sum = t;

        let z_next = zk * z;
        let tail_bound = z_next / ((k as f64 + 1.0 + a).powi(s) * one_minus_z);
        k += 1;
        if tail_bound < tol {
            return Ok(LerchSeries {
                value: sum + comp,
                terms: k,
                tail_bound,
            });
        }
        if k >= term_cap {
            return Err(Error::TermCap { z, cap: term_cap });
        }
        zk = z_next;
    }
}
