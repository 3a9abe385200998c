//! Otto cycle bookkeeping: per-stroke heat and work, the cycle-closing
//! initial population, feasibility, and the classical-bath comparison.
//!
//! Strokes: (1) adiabatic gap expansion `omega1 -> omega2`, (2) hot vacuum
//! contact at `alpha_H`, (3) adiabatic contraction `omega2 -> omega1`, (4) cold
//! vacuum contact at `alpha_C`. The reduced accelerations pair each contact
//! with the gap it sees: `a_H = alpha_H / omega2`, `a_C = alpha_C / omega1`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::response::{
    check_reduced, check_speed, delta_p_affine, j_function, verdict, ResponseArgs, ValidityVerdict,
};

/// Default "much greater than" factor for the perturbative check.
pub const DEFAULT_MARGIN: f64 = 10.0;

/// Residual allowed on `delta_p(a_H, p0) + delta_p(a_C, p0)` at unit coupling.
pub const CYCLICITY_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EngineConfig {
    pub omega1: f64,
    pub omega2: f64,
    pub alpha_hot: f64,
    pub alpha_cold: f64,
    pub v: f64,
    pub g: f64,
    pub p: f64,
}

impl EngineConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega1 > 0.0) || !self.omega1.is_finite() {
            return Err(Error::domain(format!(
                "omega1 = {} must be positive",
                self.omega1
            )));
        }
        // equal gaps allowed: zero work, zero efficiency
        if !(self.omega2 >= self.omega1) || !self.omega2.is_finite() {
            return Err(Error::domain(format!(
                "omega2 = {} must be at least omega1 = {}",
                self.omega2, self.omega1
            )));
        }
        for (name, alpha) in [
            ("alpha_hot", self.alpha_hot),
            ("alpha_cold", self.alpha_cold),
        ] {
            if !(alpha > 0.0) || !alpha.is_finite() {
                return Err(Error::domain(format!("{name} = {alpha} must be positive")));
            }
        }
        check_speed(self.v)?;
        if !(self.g > 0.0) || !self.g.is_finite() {
            return Err(Error::domain(format!("g = {} must be positive", self.g)));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::domain(format!("p = {} out of [0, 1]", self.p)));
        }
        Ok(())
    }

    pub fn a_hot(&self) -> f64 {
        self.alpha_hot / self.omega2
    }

    pub fn a_cold(&self) -> f64 {
        self.alpha_cold / self.omega1
    }

    pub fn efficiency(&self) -> f64 {
        1.0 - self.omega1 / self.omega2
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StageLedger {
    pub q1: f64,
    pub w1: f64,
    pub q2: f64,
    pub w2: f64,
    pub q3: f64,
    pub w3: f64,
    pub q4: f64,
    pub w4: f64,
    pub q_total: f64,
    pub w_total: f64,
    /// Work done by the qubit on the exterior, `-w_total`.
    pub w_ext: f64,
    pub eta: f64,
}

/// Fills every stroke given the hot-contact shift; the cold shift is `-dp_hot`.
pub fn stage_ledger(cfg: &EngineConfig, dp_hot: f64) -> Result<StageLedger> {
    cfg.validate()?;
    if !dp_hot.is_finite() {
        return Err(Error::domain(format!("dp_hot = {dp_hot} must be finite")));
    }
    let EngineConfig {
        omega1, omega2, p, ..
    } = *cfg;
    let dp_cold = -dp_hot;

    let w1 = p * (omega2 - omega1);
    let q2 = omega2 * dp_hot;
    let w3 = (p + dp_hot) * (omega1 - omega2);
    let q4 = omega1 * dp_cold;

    let q_total = q2 + q4;
    let w_total = w1 + w3;
    Ok(StageLedger {
        q1: 0.0,
        w1,
        q2,
        w2: 0.0,
        q3: 0.0,
        w3,
        q4,
        w4: 0.0,
        q_total,
        w_total,
        w_ext: -w_total,
        eta: cfg.efficiency(),
    })
}

fn check_pair(a_hot: f64, a_cold: f64, v: f64) -> Result<()> {
    check_reduced(a_hot, v, 1.0)?;
    check_reduced(a_cold, v, 1.0)
}

/// `p0 = P / (1 + 2P)` with
/// `P = 2 a_H a_C / ((a_H + a_C) artanh v) * [J(-1/a_H, y) + J(-1/a_C, y)]`.
pub fn critical_probability(a_hot: f64, a_cold: f64, v: f64) -> Result<f64> {
    check_pair(a_hot, a_cold, v)?;
    let rapidity = v.atanh();
    let y = 2.0 * rapidity;
    let j_hot = j_function(ResponseArgs::new(-1.0 / a_hot, y))?;
    let j_cold = j_function(ResponseArgs::new(-1.0 / a_cold, y))?;
    let big_p = 2.0 * a_hot * a_cold / ((a_hot + a_cold) * rapidity) * (j_hot + j_cold);
    let p0 = big_p / (1.0 + 2.0 * big_p);

    let residual = cyclicity_residual(a_hot, a_cold, v, p0)?;
    if !(residual.abs() < CYCLICITY_TOL) {
        return Err(Error::Consistency(format!(
            "cyclicity residual {residual:e} at p0 = {p0} (a_H = {a_hot}, a_C = {a_cold}, v = {v})"
        )));
    }
    Ok(p0)
}

/// `delta_p(a_H, p) + delta_p(a_C, p)` at `g = 1`. `p` may lie outside
/// `[0, 1]`; the shift is affine in it.
pub fn cyclicity_residual(a_hot: f64, a_cold: f64, v: f64, p: f64) -> Result<f64> {
    check_pair(a_hot, a_cold, v)?;
    if !p.is_finite() {
        return Err(Error::domain(format!("p = {p} must be finite")));
    }
    Ok(delta_p_affine(a_hot, p, v, 1.0)? + delta_p_affine(a_cold, p, v, 1.0)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CycleSolution {
    pub a_hot: f64,
    pub a_cold: f64,
    pub v: f64,
    pub g: f64,
    pub p0: f64,
    pub dp_hot: f64,
    pub dp_cold: f64,
    /// Heat engine (`dp_hot > 0`) rather than refrigerator.
    pub feasible: bool,
    /// `0 < p0 < 1/2`.
    pub p0_in_range: bool,
    pub hot_validity: ValidityVerdict,
    pub cold_validity: ValidityVerdict,
}

pub fn solve_cycle(cfg: &EngineConfig) -> Result<CycleSolution> {
    cfg.validate()?;
    solve_reduced(cfg.a_hot(), cfg.a_cold(), cfg.v, cfg.g, DEFAULT_MARGIN)
}

pub fn solve_cycle_with_margin(cfg: &EngineConfig, margin: f64) -> Result<CycleSolution> {
    cfg.validate()?;
    solve_reduced(cfg.a_hot(), cfg.a_cold(), cfg.v, cfg.g, margin)
}

/// Cycle solution directly in reduced accelerations.
pub fn solve_reduced(
    a_hot: f64,
    a_cold: f64,
    v: f64,
    g: f64,
    margin: f64,
) -> Result<CycleSolution> {
    check_pair(a_hot, a_cold, v)?;
    check_reduced(a_hot, v, g)?;
    let p0 = critical_probability(a_hot, a_cold, v)?;
    let hot = delta_p_affine(a_hot, p0, v, g)?;
    let cold = delta_p_affine(a_cold, p0, v, g)?;
    // At p0 the two shifts cancel; the antisymmetric half-difference equals
    // the hot shift and vanishes exactly when a_H == a_C.
    let dp_hot = 0.5 * (hot - cold);
    Ok(CycleSolution {
        a_hot,
        a_cold,
        v,
        g,
        p0,
        dp_hot,
        dp_cold: -dp_hot,
        feasible: dp_hot > 0.0,
        p0_in_range: p0 > 0.0 && p0 < 0.5,
        hot_validity: verdict(a_hot, p0, v, g, margin)?,
        cold_validity: verdict(a_cold, p0, v, g, margin)?,
    })
}

/// Reduced-acceleration triple `(a_H, a_C, v)`.
pub type GridPoint = (f64, f64, f64);

pub fn solve_grid(
    points: &[GridPoint],
    g: f64,
    margin: f64,
    exec: Execution,
) -> Result<Vec<CycleSolution>> {
    exec.try_map(points, |&(a_hot, a_cold, v)| {
        solve_reduced(a_hot, a_cold, v, g, margin)
    })
}

/// Gibbs population change between baths at temperatures equal to the
/// reduced accelerations (not the Unruh temperature `alpha / 2 pi`).
pub fn classical_delta_p(a_hot: f64, a_cold: f64) -> f64 {
    let fermi = |a: f64| 1.0 / (1.0 + (1.0 / a).exp());
    fermi(a_hot) - fermi(a_cold)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ComparisonRow {
    pub v: f64,
    pub w_unruh: f64,
    pub w_cl: f64,
}

pub fn work_comparison(
    a_hot: f64,
    a_cold: f64,
    speeds: &[f64],
    gap_diff: f64,
    g: f64,
) -> Result<Vec<ComparisonRow>> {
    if !gap_diff.is_finite() {
        return Err(Error::domain(format!(
            "gap difference {gap_diff} must be finite"
        )));
    }
    let w_cl = gap_diff * classical_delta_p(a_hot, a_cold);
    speeds
        .iter()
        .map(|&v| {
            let sol = solve_reduced(a_hot, a_cold, v, g, DEFAULT_MARGIN)?;
            Ok(ComparisonRow {
                v,
                w_unruh: gap_diff * sol.dp_hot,
                w_cl,
            })
        })
        .collect()
}
