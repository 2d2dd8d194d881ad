//! Gaussian energy-constrained C-distance between phase-insensitive channels
//! with the same transmissivity.

use crate::channels::PhaseInsensitiveChannel;
use crate::error::{Error, Result};
use crate::gaussian_core::{tms_state, two_mode_fidelity};

use super::check_ns;

const TAU_TOL: f64 = 1e-12;

/// `√(1 − F)` between both channels applied to the second mode of
/// `TMS(N_S)`, which attains the energy-constrained optimum when `τ_a = τ_b`.
pub fn gaussian_c_distance(
    a: &PhaseInsensitiveChannel,
    b: &PhaseInsensitiveChannel,
    ns: f64,
) -> Result<f64> {
    check_ns(ns)?;
    if (a.tau() - b.tau()).abs() > TAU_TOL * a.tau().max(b.tau()).max(1.0) {
        return Err(Error::Domain(format!(
            "C-distance needs equal transmissivity, got {} and {}",
            a.tau(),
            b.tau()
        )));
    }
    let psi = tms_state(ns)?;
    let f = two_mode_fidelity(&a.apply(&psi, 1)?, &b.apply(&psi, 1)?)?;
    Ok((1.0 - f).max(0.0).sqrt())
}
