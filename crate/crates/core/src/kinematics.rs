//! Worldline of the qubit around the kinematic cycle.
//!
//! The loop has four legs: cruise at `+v`, decelerate through `-v` with
//! proper acceleration `alpha_H` (hot contact), cruise at `-v`, accelerate back
//! to `+v` with `alpha_C` (cold contact). During each contact the qubit
//! follows the hyperbola `t = sinh(alpha tau)/alpha`, `x = cosh(alpha tau)/alpha`
//! for `tau in [-artanh(v)/alpha, artanh(v)/alpha]`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::response::check_speed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Worldline {
    pub alpha: f64,
    pub tau_half: f64,
    pub v: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventPoint {
    pub tau: f64,
    pub t: f64,
    pub x: f64,
    pub velocity: f64,
}

impl Worldline {
    pub fn new(alpha: f64, v: f64) -> Result<Self> {
        check_acceleration(alpha)?;
        check_speed(v)?;
        Ok(Worldline {
            alpha,
            tau_half: v.atanh() / alpha,
            v,
        })
    }

    /// Full proper duration of the contact.
    pub fn contact_duration(&self) -> f64 {
        2.0 * self.tau_half
    }

    pub fn velocity(&self, tau: f64) -> f64 {
        (self.alpha * tau).tanh()
    }

    pub fn trajectory_point(&self, tau: f64) -> Result<(f64, f64)> {
        if !(tau.abs() <= self.tau_half) {
            return Err(Error::domain(format!(
                "tau = {tau} outside contact interval [-{0}, {0}]",
                self.tau_half
            )));
        }
        let r = self.alpha * tau;
        Ok((r.sinh() / self.alpha, r.cosh() / self.alpha))
    }

    /// `count` evenly spaced events over the contact, endpoints included.
    pub fn sample(&self, count: usize) -> Result<Vec<EventPoint>> {
        if count < 2 {
            return Err(Error::domain("trajectory needs at least 2 samples"));
        }
        let step = 2.0 * self.tau_half / (count - 1) as f64;
        (0..count)
            .map(|i| {
                let tau = if i == count - 1 {
                    self.tau_half
                } else {
                    -self.tau_half + i as f64 * step
                };
                let (t, x) = self.trajectory_point(tau)?;
                Ok(EventPoint {
                    tau,
                    t,
                    x,
                    velocity: self.velocity(tau),
                })
            })
            .collect()
    }

    /// Coordinate time elapsed during the contact, `2 sinh(alpha tau_half)/alpha`.
    pub fn coordinate_duration(&self) -> f64 {
        2.0 * (self.alpha * self.tau_half).sinh() / self.alpha
    }
}

fn check_acceleration(alpha: f64) -> Result<()> {
    if !(alpha > 0.0) || !alpha.is_finite() {
        return Err(Error::domain(format!(
            "acceleration {alpha} must be positive and finite"
        )));
    }
    Ok(())
}

/// Proper contact times `(T2, T1)` for the hot and cold contacts.
pub fn contact_durations(alpha_hot: f64, alpha_cold: f64, v: f64) -> Result<(f64, f64)> {
    let hot = Worldline::new(alpha_hot, v)?;
    let cold = Worldline::new(alpha_cold, v)?;
    Ok((hot.contact_duration(), cold.contact_duration()))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Leg {
    pub proper_time: f64,
    pub coordinate_time: f64,
    pub displacement: f64,
    pub v_start: f64,
    pub v_end: f64,
}

/// The four legs of the loop. `cruise` is the proper duration of each
/// constant-velocity leg; it carries no thermodynamic weight. Positional
/// closure is reported, not enforced.
pub fn cycle_legs(alpha_hot: f64, alpha_cold: f64, v: f64, cruise: f64) -> Result<[Leg; 4]> {
    if !(cruise >= 0.0) || !cruise.is_finite() {
        return Err(Error::domain(format!(
            "cruise duration {cruise} must be non-negative"
        )));
    }
    let hot = Worldline::new(alpha_hot, v)?;
    let cold = Worldline::new(alpha_cold, v)?;
    let gamma = 1.0 / (1.0 - v * v).sqrt();
    let cruise_leg = |sign: f64| Leg {
        proper_time: cruise,
        coordinate_time: gamma * cruise,
        displacement: sign * v * gamma * cruise,
        v_start: sign * v,
        v_end: sign * v,
    };
    // The hyperbola is symmetric in tau, so each contact returns to its
    // starting x.
    let contact_leg = |w: &Worldline, from: f64| Leg {
        proper_time: w.contact_duration(),
        coordinate_time: w.coordinate_duration(),
        displacement: 0.0,
        v_start: from,
        v_end: -from,
    };
    Ok([
        cruise_leg(1.0),
        contact_leg(&hot, v),
        cruise_leg(-1.0),
        contact_leg(&cold, -v),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn vertex_of_hyperbola() {
        let w = Worldline::new(2.5, 0.6).unwrap();
        assert_eq!(w.trajectory_point(0.0).unwrap(), (0.0, 0.4));
    }

    #[test]
    fn reference_event() {
        let w = Worldline::new(1.0, 0.8).unwrap();
        let (t, x) = w.trajectory_point(0.8f64.atanh()).unwrap();
        assert_abs_diff_eq!(t, 4.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x, 5.0 / 3.0, epsilon = 1e-12);
        assert_abs_diff_eq!(x * x - t * t, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(w.velocity(w.tau_half), 0.8, epsilon = 1e-15);
        assert_abs_diff_eq!(w.velocity(-w.tau_half), -0.8, epsilon = 1e-15);
    }

    #[test]
    fn outside_contact_is_rejected() {
        let w = Worldline::new(1.0, 0.5).unwrap();
        assert!(w.trajectory_point(w.tau_half * 1.001).is_err());
        assert!(Worldline::new(0.0, 0.5).is_err());
        assert!(Worldline::new(1.0, 0.9963).is_err());
    }

    #[test]
    fn durations() {
        let (t2, t1) = contact_durations(2.0, 2.0, 0.8).unwrap();
        assert_eq!(t2, t1);
        let (t2, _) = contact_durations(2.0, 1.0, 0.8).unwrap();
        assert_abs_diff_eq!(t2, 1.098_612_288_668_109_6, epsilon = 1e-14);
        let (t2, t1) = contact_durations(3.0, 0.5, 1e-9).unwrap();
        assert!(t2 < 1e-9 && t1 < 1e-8);
    }

    #[test]
    fn loop_speed_and_position_close() {
        let legs = cycle_legs(80.0, 15.0, 0.8, 2.0).unwrap();
        for pair in legs.windows(2) {
            assert_eq!(pair[0].v_end, pair[1].v_start);
        }
        assert_eq!(legs[3].v_end, legs[0].v_start);
        let net: f64 = legs.iter().map(|l| l.displacement).sum();
        assert_abs_diff_eq!(net, 0.0, epsilon = 1e-15);
    }

    proptest! {
        #[test]
        fn hyperbola_constraint(alpha in 1e-2f64..1e3, v in 1e-3f64..0.996, s in -1.0f64..=1.0) {
            let w = Worldline::new(alpha, v).unwrap();
            let (t, x) = w.trajectory_point(s * w.tau_half).unwrap();
            let lhs = x * x - t * t;
            let rhs = 1.0 / (alpha * alpha);
            prop_assert!((lhs - rhs).abs() <= 1e-12 * rhs);
        }

        #[test]
        fn endpoints_have_contact_speed(alpha in 1e-2f64..1e3, v in 1e-3f64..0.996) {
            let w = Worldline::new(alpha, v).unwrap();
            let samples = w.sample(5).unwrap();
            prop_assert!((samples[4].velocity - v).abs() < 1e-12);
            prop_assert!((samples[0].velocity + v).abs() < 1e-12);
        }
    }
}
