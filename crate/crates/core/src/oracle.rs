//! Brute-force quadrature of the regulated vacuum integral
//!
//! ```text
//! I(alpha, omega, T) = int dtau int dtau' xi_T(tau) xi_T(tau') e^{i omega (tau - tau')} G+(tau - tau')
//! xi_T(tau)          = (T/2)^2 / (tau^2 + (T/2)^2)
//! ```
//!
//! in two independent representations of the accelerated-detector Wightman
//! function:
//!
//! * [`integrate_sinh_2d`]: `G+ = -alpha^2 / (16 pi^2 sinh^2(alpha dtau / 2 - i alpha eps))`,
//!   with both the centre-of-mass and the relative-time integrals done
//!   numerically.
//! * [`integrate_imagesum_1d`]: the centre-of-mass integral done in closed form,
//!   `pi T^3 / (2 (dtau^2 + T^2))`, and `G+` written as a sum over images
//!   `-1/(4 pi^2) sum_k (dtau - i eps - 2 pi i k / alpha)^-2`.
//!
//! Both are evaluated at a decreasing list of `eps` and extrapolated to
//! `eps -> 0` by Richardson (Neville) extrapolation.
//!
//! The extrapolated integral relates to the closed form by
//! `J(omega/alpha, alpha T) = 2 (I - I0)` with `I0 = 1/16`, the value left
//! over as the contact time shrinks to zero after `eps -> 0`. See
//! [`closed_form_scale`].

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_line, QuadConfig, QuadResult};

/// `lim_{T -> 0} I` with `eps -> 0` taken first.
pub const VACUUM_CONSTANT: f64 = 1.0 / 16.0;

/// Maps an extrapolated oracle value onto the normalisation of `J`.
pub fn closed_form_scale(raw: f64) -> f64 {
    2.0 * (raw - VACUUM_CONSTANT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Representation {
    Sinh2d,
    Imagesum1d,
}

impl Representation {
    pub fn name(self) -> &'static str {
        match self {
            Representation::Sinh2d => "sinh2d",
            Representation::Imagesum1d => "imagesum1d",
        }
    }
}

impl std::str::FromStr for Representation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "sinh2d" => Ok(Representation::Sinh2d),
            "imagesum1d" => Ok(Representation::Imagesum1d),
            other => Err(format!(
                "unknown representation '{other}' (sinh2d | imagesum1d)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QuadratureSpec {
    /// Regulator values, strictly decreasing, in units of `min(1/alpha, T)`.
    pub epsilon_list: Vec<f64>,
    /// Image-sum truncation order.
    pub k_max: usize,
    pub abs_tol: f64,
    pub rel_tol: f64,
    /// Relative budget for the eps-extrapolation residual.
    pub extrapolation_rel_tol: f64,
    /// Half-width of the adaptive window in units of `T`; beyond it the
    /// integrand is mapped onto unit intervals.
    pub window: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        QuadratureSpec {
            epsilon_list: vec![1e-2, 5e-3, 2.5e-3],
            k_max: 50,
            // The regulated pole cancels down by ~1/eps; tighter tolerances
            // sit below the round-off floor at the smallest regulator.
            abs_tol: 1e-12,
            rel_tol: 1e-9,
            extrapolation_rel_tol: 1e-4,
            window: 20.0,
        }
    }
}

impl QuadratureSpec {
    pub fn validate(&self) -> Result<()> {
        if self.epsilon_list.is_empty() {
            return Err(Error::domain("epsilon_list must not be empty"));
        }
        if self.epsilon_list.iter().any(|&e| !(e > 0.0)) {
            return Err(Error::domain("epsilon_list entries must be positive"));
        }
        if self.epsilon_list.windows(2).any(|w| !(w[1] < w[0])) {
            return Err(Error::domain("epsilon_list must be strictly decreasing"));
        }
        if self.k_max < 1 {
            return Err(Error::domain("k_max must be at least 1"));
        }
        if !(self.abs_tol > 0.0 && self.rel_tol > 0.0 && self.extrapolation_rel_tol > 0.0) {
            return Err(Error::domain("tolerances must be positive"));
        }
        if !(self.window > 1.0) {
            return Err(Error::domain("window must exceed 1 (units of T)"));
        }
        Ok(())
    }

    fn quad_config(&self) -> QuadConfig {
        QuadConfig {
            abs_tol: self.abs_tol,
            rel_tol: self.rel_tol,
            max_intervals: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OracleResult {
    /// Extrapolated `eps -> 0` value.
    pub value: Complex64,
    /// Quadrature error plus extrapolation residual (plus the image-sum
    /// truncation bound where it applies).
    pub error_estimate: f64,
    pub representation: Representation,
    /// Physical regulator values actually used.
    pub epsilons: Vec<f64>,
    /// Integral at each regulator value.
    pub per_epsilon: Vec<Complex64>,
    pub extrapolation_residual: f64,
    pub quadrature_error: f64,
    /// Image-sum tail bound; zero for the sinh form.
    pub truncation_bound: f64,
    /// The truncation bound alone exceeds `rel_tol * |value|`.
    pub truncation_dominated: bool,
}

impl OracleResult {
    /// `|Im value| <= error_estimate`.
    pub fn is_real(&self) -> bool {
        self.value.im.abs() <= self.error_estimate
    }
}

fn check_inputs(alpha: f64, omega: f64, contact: f64, spec: &QuadratureSpec) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!("alpha = {alpha} must be positive")));
    }
    if !omega.is_finite() {
        return Err(Error::domain(format!("omega = {omega} must be finite")));
    }
    if !(contact > 0.0) || !contact.is_finite() {
        return Err(Error::domain(format!("T = {contact} must be positive")));
    }
    spec.validate()
}

/// Smallest physical scale of the problem; regulators are measured against it.
fn regulator_unit(alpha: f64, contact: f64) -> f64 {
    (1.0 / alpha).min(contact)
}

/// Sorted breakpoints for the relative-time integral: the regulated pole at
/// the origin, the Lorentzian width `T`, and the image spacing `2 pi / alpha`.
fn relative_time_breakpoints(alpha: f64, contact: f64, eps: f64, window: f64) -> Vec<f64> {
    let w = window * contact;
    let mut pts = vec![0.0, w, contact];
    for m in [1.0, 4.0, 16.0, 64.0] {
        if m * eps < w {
            pts.push(m * eps);
        }
    }
    let spacing = 2.0 * PI / alpha;
    let mut k = 1.0;
    while k * spacing < w && k <= 64.0 {
        pts.push(k * spacing);
        k += 1.0;
    }
    let mut all: Vec<f64> = pts.iter().flat_map(|&p| [p, -p]).collect();
    all.sort_by(f64::total_cmp);
    all.dedup_by(|a, b| (*a - *b).abs() <= 1e-14 * w);
    all
}

/// Polynomial extrapolation of `(eps_i, value_i)` to `eps = 0`. Returns the
/// full-order estimate and the estimate one order lower (from the smallest
/// regulators), whose difference is the residual.
fn extrapolate(eps: &[f64], values: &[Complex64]) -> (Complex64, Complex64) {
    let n = values.len();
    let neville = |xs: &[f64], ys: &[Complex64]| {
        let mut p = ys.to_vec();
        let m = p.len();
        for level in 1..m {
            for i in 0..m - level {
                let (xi, xj) = (xs[i], xs[i + level]);
                p[i] = (p[i + 1] * xi - p[i] * xj) / (xi - xj);
            }
        }
        p[0]
    };
    let full = neville(eps, values);
    let lower = if n > 1 {
        neville(&eps[1..], &values[1..])
    } else {
        full
    };
    (full, lower)
}

fn finish(
    representation: Representation,
    spec: &QuadratureSpec,
    epsilons: Vec<f64>,
    cells: Vec<QuadResult>,
    truncation_bound: f64,
) -> Result<OracleResult> {
    if let Some(bad) = cells.iter().position(|c| !c.converged) {
        return Err(Error::NonConvergence(format!(
            "{} quadrature at eps = {:e} stopped with error {:e}",
            representation.name(),
            epsilons[bad],
            cells[bad].error
        )));
    }
    let per_epsilon: Vec<Complex64> = cells.iter().map(|c| c.value).collect();
    let quadrature_error = cells.iter().map(|c| c.error).fold(0.0, f64::max);
    let (value, lower) = extrapolate(&epsilons, &per_epsilon);
    let extrapolation_residual = (value - lower).norm();
    let budget = spec.abs_tol.max(spec.extrapolation_rel_tol * value.norm());
    if extrapolation_residual > 10.0 * budget {
        return Err(Error::NonConvergence(format!(
            "{} eps-extrapolation residual {:e} exceeds 10x budget {:e}",
            representation.name(),
            extrapolation_residual,
            budget
        )));
    }
    // Neville weights amplify per-cell errors by at most sum |l_i(0)|.
    let amplification: f64 = lagrange_weights_at_zero(&epsilons)
        .iter()
        .map(|w| w.abs())
        .sum();
    let error_estimate =
        extrapolation_residual + amplification * quadrature_error + truncation_bound;
    Ok(OracleResult {
        value,
        error_estimate,
        representation,
        epsilons,
        per_epsilon,
        extrapolation_residual,
        quadrature_error,
        truncation_bound,
        truncation_dominated: truncation_bound > spec.rel_tol * value.norm(),
    })
}

fn lagrange_weights_at_zero(xs: &[f64]) -> Vec<f64> {
    (0..xs.len())
        .map(|i| {
            xs.iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &xj)| xj / (xj - xs[i]))
                .product()
        })
        .collect()
}

/// Wightman function on the hyperbola, sinh form, regulator `eps` in time units.
fn wightman_sinh(alpha: f64, dtau: f64, eps: f64) -> Complex64 {
    let arg = Complex64::new(0.5 * alpha * dtau, -alpha * eps);
    if arg.re.abs() > 350.0 {
        return Complex64::new(0.0, 0.0);
    }
    let s = arg.sinh();
    -alpha * alpha / (16.0 * PI * PI) / (s * s)
}

/// `int dS xi_T((S + d)/2) xi_T((S - d)/2)` by quadrature.
fn switching_overlap(dtau: f64, contact: f64, cfg: &QuadConfig) -> QuadResult {
    let half = 0.5 * contact;
    let xi = |tau: f64| half * half / (tau * tau + half * half);
    let d = dtau.abs();
    let f = |s: f64| Complex64::new(xi(0.5 * (s + d)) * xi(0.5 * (s - d)), 0.0);
    let mut pts = vec![
        -d - 4.0 * contact,
        -d - contact,
        -d,
        0.0,
        d,
        d + contact,
        d + 4.0 * contact,
    ];
    pts.dedup();
    integrate_line(&f, &pts, cfg)
}

/// Double integral with the sinh-form Wightman function. The centre-of-mass
/// integral runs numerically inside the relative-time integral.
pub fn integrate_sinh_2d(
    alpha: f64,
    omega: f64,
    contact: f64,
    spec: &QuadratureSpec,
) -> Result<OracleResult> {
    check_inputs(alpha, omega, contact, spec)?;
    let unit = regulator_unit(alpha, contact);
    let epsilons: Vec<f64> = spec.epsilon_list.iter().map(|e| e * unit).collect();
    let outer = spec.quad_config();
    let inner = QuadConfig {
        abs_tol: spec.abs_tol * 1e-2,
        rel_tol: spec.rel_tol * 1e-1,
        max_intervals: 2_000,
    };

    let mut cells = Vec::with_capacity(epsilons.len());
    for &eps in &epsilons {
        let f = |dtau: f64| {
            let overlap = switching_overlap(dtau, contact, &inner).value.re;
            Complex64::new(0.0, omega * dtau).exp()
                * wightman_sinh(alpha, dtau, eps)
                * (0.5 * overlap)
        };
        let pts = relative_time_breakpoints(alpha, contact, eps, spec.window);
        cells.push(integrate_line(&f, &pts, &outer));
    }
    finish(Representation::Sinh2d, spec, epsilons, cells, 0.0)
}

/// Paired images `1/(d - i c)^2 + 1/(d + i c)^2` for `k = 1..=k_max`, plus the
/// midpoint-rule integral of the remaining tail from `k_max + 1/2`.
fn image_sum(alpha: f64, dtau: f64, k_max: usize) -> f64 {
    let d2 = dtau * dtau;
    let spacing = 2.0 * PI / alpha;
    let mut sum = 0.0;
    for k in 1..=k_max {
        let c2 = (k as f64 * spacing).powi(2);
        sum += 2.0 * (d2 - c2) / (d2 + c2).powi(2);
    }
    let c_tail = (k_max as f64 + 0.5) * spacing;
    sum - (alpha / PI) * c_tail / (d2 + c_tail * c_tail)
}

/// Bound on what the midpoint tail correction misses, propagated through
/// the Lorentzian weight.
fn image_tail_bound(alpha: f64, contact: f64, k_max: usize) -> f64 {
    let y = alpha * contact;
    let k = k_max as f64 + 0.5;
    y * y / (192.0 * PI * PI * k * k * k)
}

/// Single integral over the relative time with the image-sum Wightman function.
pub fn integrate_imagesum_1d(
    alpha: f64,
    omega: f64,
    contact: f64,
    spec: &QuadratureSpec,
) -> Result<OracleResult> {
    check_inputs(alpha, omega, contact, spec)?;
    let unit = regulator_unit(alpha, contact);
    let epsilons: Vec<f64> = spec.epsilon_list.iter().map(|e| e * unit).collect();
    let cfg = spec.quad_config();
    let prefactor = -contact.powi(3) / (16.0 * PI);

    let mut cells = Vec::with_capacity(epsilons.len());
    for &eps in &epsilons {
        let f = |dtau: f64| {
            let pole = Complex64::new(dtau, -eps);
            let images = 1.0 / (pole * pole) + image_sum(alpha, dtau, spec.k_max);
            Complex64::new(0.0, omega * dtau).exp()
                * images
                * (prefactor / (dtau * dtau + contact * contact))
        };
        let pts = relative_time_breakpoints(alpha, contact, eps, spec.window);
        cells.push(integrate_line(&f, &pts, &cfg));
    }
    let bound = image_tail_bound(alpha, contact, spec.k_max);
    finish(Representation::Imagesum1d, spec, epsilons, cells, bound)
}

pub fn integrate_with(
    representation: Representation,
    alpha: f64,
    omega: f64,
    contact: f64,
    spec: &QuadratureSpec,
) -> Result<OracleResult> {
    match representation {
        Representation::Sinh2d => integrate_sinh_2d(alpha, omega, contact, spec),
        Representation::Imagesum1d => integrate_imagesum_1d(alpha, omega, contact, spec),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn switching_overlap_matches_residue_formula() {
        let cfg = QuadConfig {
            abs_tol: 1e-15,
            rel_tol: 1e-12,
            max_intervals: 2000,
        };
        for (d, t) in [(0.0, 1.0), (0.3, 1.0), (5.0, 0.2), (-2.0, 3.0)] {
            let got = switching_overlap(d, t, &cfg).value.re;
            let exact = PI * t * t * t / (2.0 * (d * d + t * t));
            assert!(
                (got - exact).abs() < 1e-10 * exact,
                "d={d} t={t}: {got} vs {exact}"
            );
        }
    }

    #[test]
    fn image_sum_approaches_sinh_form() {
        // -1/(4 pi^2) [1/d^2 + sum_{k != 0}] = -alpha^2 / (16 pi^2 sinh^2(alpha d / 2))
        let alpha = 1.7;
        for d in [0.05, 0.4, 1.3, 4.0] {
            let lhs = -(1.0 / (d * d) + image_sum(alpha, d, 200)) / (4.0 * PI * PI);
            let rhs = -alpha * alpha / (16.0 * PI * PI * (0.5 * alpha * d).sinh().powi(2));
            // Midpoint tail error is O(k_max^-3) in absolute terms.
            assert!((lhs - rhs).abs() < 1e-10, "d={d}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn neville_recovers_quadratic() {
        let eps = [0.4, 0.2, 0.1];
        let vals: Vec<Complex64> = eps
            .iter()
            .map(|e| Complex64::new(3.0 - 2.0 * e + 5.0 * e * e, 0.0))
            .collect();
        let (full, _) = extrapolate(&eps, &vals);
        assert!((full.re - 3.0).abs() < 1e-13);
        let w = lagrange_weights_at_zero(&eps);
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-13);
    }

    #[test]
    fn spec_validation() {
        let mut s = QuadratureSpec::default();
        assert!(s.validate().is_ok());
        s.epsilon_list = vec![1e-2, 1e-2];
        assert!(s.validate().is_err());
        s.epsilon_list = vec![];
        assert!(s.validate().is_err());
        let s = QuadratureSpec {
            k_max: 0,
            ..QuadratureSpec::default()
        };
        assert!(s.validate().is_err());
        assert!(integrate_imagesum_1d(-1.0, 1.0, 1.0, &QuadratureSpec::default()).is_err());
        assert!(integrate_imagesum_1d(1.0, 1.0, 0.0, &QuadratureSpec::default()).is_err());
    }
}
