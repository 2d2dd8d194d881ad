//! Continuity penalty `k[(2ε′+4δ) g(W′/δ) + g(ε′) + 2h₂(δ)]`,
//! `δ = (ε′−ε)/(1+ε′)`, and its minimization over ε′ ∈ (ε, 1].

use std::f64::consts::LN_2;

use crate::error::{Error, Result};
use crate::gaussian_core::{g_nats, h2_nats};
use crate::optimize::{minimize_scalar, ScalarOptResult};

use super::ARG_TOL;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyParams {
    pub epsilon: f64,
    pub epsilon_prime: f64,
    /// Output energy cap in mean photons.
    pub w_prime: f64,
    /// Multiplier: 1 and 2 for the quantum bounds, 3 and 4 for the private ones.
    pub k: u32,
}

impl PenaltyParams {
    pub fn new(epsilon: f64, epsilon_prime: f64, w_prime: f64, k: u32) -> Result<Self> {
        if !(0.0..1.0).contains(&epsilon) {
            return Err(Error::Domain(format!("epsilon = {epsilon} outside [0, 1)")));
        }
        if !(epsilon_prime > epsilon && epsilon_prime <= 1.0) {
            return Err(Error::Domain(format!(
                "epsilon' = {epsilon_prime} outside ({epsilon}, 1]"
            )));
        }
        if !(w_prime >= 0.0) || !w_prime.is_finite() {
            return Err(Error::Domain(format!("W' = {w_prime} must be ≥ 0")));
        }
        if !(1..=4).contains(&k) {
            return Err(Error::Domain(format!(
                "penalty multiplier k = {k} outside 1..=4"
            )));
        }
        Ok(Self {
            epsilon,
            epsilon_prime,
            w_prime,
            k,
        })
    }

    pub fn delta(&self) -> f64 {
        (self.epsilon_prime - self.epsilon) / (1.0 + self.epsilon_prime)
    }
}

/// Penalty in nats; `+∞` when `δ ≤ 0` or any term is undefined.
pub(crate) fn penalty_nats(eps: f64, ep: f64, w: f64, k: u32) -> f64 {
    let d = (ep - eps) / (1.0 + ep);
    if !(d > 0.0) {
        return f64::INFINITY;
    }
    let terms = (|| -> Result<f64> {
        Ok((2.0 * ep + 4.0 * d) * g_nats(w / d)? + g_nats(ep)? + 2.0 * h2_nats(d)?)
    })();
    match terms {
        Ok(v) => f64::from(k) * v,
        Err(_) => f64::INFINITY,
    }
}

/// Penalty in bits; `+∞` when `δ ≤ 0`.
pub fn penalty(p: &PenaltyParams) -> f64 {
    penalty_nats(p.epsilon, p.epsilon_prime, p.w_prime, p.k) / LN_2
}

/// Penalty term chosen for a bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenaltyChoice {
    pub nats: f64,
    /// `None` when ε = 0 and no ε′ was given: the infimum 0 is reported.
    pub epsilon_prime: Option<f64>,
    pub delta: Option<f64>,
    pub opt: Option<ScalarOptResult>,
}

/// Penalty at the given ε′, or minimized over ε′ ∈ (ε, 1] when `eps_prime`
/// is `None`.
pub fn optimize_penalty(eps: f64, w: f64, k: u32, eps_prime: Option<f64>) -> Result<PenaltyChoice> {
    if !(eps >= 0.0) {
        return Err(Error::Domain(format!("epsilon = {eps} must be ≥ 0")));
    }
    if eps >= 1.0 {
        return Err(Error::Infeasible(format!(
            "epsilon = {eps} >= 1 leaves no room for epsilon'"
        )));
    }
    if let Some(ep) = eps_prime {
        let p = PenaltyParams::new(eps, ep, w, k)?;
        return Ok(PenaltyChoice {
            nats: penalty_nats(eps, ep, w, k),
            epsilon_prime: Some(ep),
            delta: Some(p.delta()),
            opt: None,
        });
    }
    if eps == 0.0 {
        return Ok(PenaltyChoice {
            nats: 0.0,
            epsilon_prime: None,
            delta: None,
            opt: None,
        });
    }
    let r = minimize_scalar(|ep| penalty_nats(eps, ep, w, k), eps, 1.0, true, ARG_TOL)?;
    if !r.value.is_finite() {
        return Err(Error::Numerical(format!(
            "penalty is infinite on all of ({eps}, 1] for W' = {w}"
        )));
    }
    Ok(PenaltyChoice {
        nats: r.value,
        epsilon_prime: Some(r.arg),
        delta: Some((r.arg - eps) / (1.0 + r.arg)),
        opt: Some(r),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoint_value() {
        let p = PenaltyParams::new(0.0, 1.0, 0.0, 1).unwrap();
        assert!((p.delta() - 0.5).abs() < 1e-16);
        assert!((penalty(&p) - 4.0).abs() < 1e-14);
    }

    #[test]
    fn linear_in_k() {
        let p1 = PenaltyParams::new(0.2, 0.5, 3.0, 1).unwrap();
        let p2 = PenaltyParams { k: 2, ..p1 };
        assert!((penalty(&p2) - 2.0 * penalty(&p1)).abs() < 1e-13);
    }

    #[test]
    fn invalid_params() {
        assert!(PenaltyParams::new(0.3, 0.3, 1.0, 1).is_err());
        assert!(PenaltyParams::new(0.3, 1.1, 1.0, 1).is_err());
        assert!(PenaltyParams::new(0.3, 0.5, 1.0, 5).is_err());
        let p = PenaltyParams {
            epsilon: 0.3,
            epsilon_prime: 0.3,
            w_prime: 1.0,
            k: 1,
        };
        assert_eq!(penalty(&p), f64::INFINITY);
    }

    #[test]
    fn zero_epsilon_reports_infimum() {
        let c = optimize_penalty(0.0, 2.0, 1, None).unwrap();
        assert_eq!(c.nats, 0.0);
        assert!(c.epsilon_prime.is_none());
    }

    #[test]
    fn optimum_is_inside_interval() {
        let c = optimize_penalty(0.1, 5.0, 1, None).unwrap();
        let ep = c.epsilon_prime.unwrap();
        assert!(ep > 0.1 && ep <= 1.0);
        for t in [0.11, 0.2, 0.5, 1.0] {
            assert!(c.nats <= penalty_nats(0.1, t, 5.0, 1));
        }
    }
}
