//! Thermal-state entropy `g` and binary entropy `h2`.
//!
//! Both come in a nats flavour for internal accumulation and a bits flavour
//! for the public surface. Bound formulas sum in nats and convert once.

use crate::error::{domain, Result};
use std::f64::consts::LN_2;

/// Values of `x` in `[-CLAMP, 0]` are treated as 0 (rounding noise from
/// upstream subtractions); anything below is a domain error.
pub const CLAMP: f64 = 1e-12;

/// Below this argument `g` switches to its second-order expansion.
const SERIES_CUTOFF: f64 = 1e-8;

/// `g(x) = (x+1) ln(x+1) − x ln x` in nats.
pub fn g_nats(x: f64) -> Result<f64> {
    if x.is_nan() || x < -CLAMP {
        return Err(domain(format!("g: argument {x} is negative")));
    }
    if x <= 0.0 {
        return Ok(0.0);
    }
    if x.is_infinite() {
        return Ok(f64::INFINITY);
    }
    if x < SERIES_CUTOFF {
        return Ok(x * (1.0 - x.ln()) + 0.5 * x * x);
    }
    // (x+1)ln(x+1) − x ln x = ln(1+x) + x ln(1 + 1/x); no large cancelling terms.
    Ok(x.ln_1p() + x * (1.0 / x).ln_1p())
}

/// Entropy in bits of a thermal state with mean photon number `x`.
pub fn g_entropy(x: f64) -> Result<f64> {
    g_nats(x).map(|v| v / LN_2)
}

/// Binary entropy in nats.
pub fn h2_nats(p: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("h2: argument {p} outside [0,1]")));
    }
    if p == 0.0 || p == 1.0 {
        return Ok(0.0);
    }
    Ok(-p * p.ln() - (1.0 - p) * (-p).ln_1p())
}

/// Binary entropy in bits.
pub fn binary_entropy(p: f64) -> Result<f64> {
    h2_nats(p).map(|v| v / LN_2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn g_small_values() {
        assert_eq!(g_entropy(0.0).unwrap(), 0.0);
        assert_eq!(g_entropy(-1e-13).unwrap(), 0.0);
        assert!(g_entropy(-1e-11).is_err());
        assert!((g_entropy(1.0).unwrap() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn series_matches_direct_form_at_cutoff() {
        let x = SERIES_CUTOFF;
        let direct = (x + 1.0) * x.ln_1p() - x * x.ln();
        let series = x * (1.0 - x.ln()) + 0.5 * x * x;
        assert!((direct - series).abs() < 1e-20);
        let below = g_nats(x * 0.999_999).unwrap();
        let above = g_nats(x).unwrap();
        assert!(above > below && above - below < 1e-12);
    }

    #[test]
    fn g_large_argument_is_log_plus_one() {
        let x = 1e12_f64;
        let approx = (x + 1.0).ln() + 1.0;
        assert!((g_nats(x).unwrap() - approx).abs() < 1e-9);
    }

    #[test]
    fn h2_values() {
        assert_eq!(binary_entropy(0.0).unwrap(), 0.0);
        assert_eq!(binary_entropy(1.0).unwrap(), 0.0);
        assert!((binary_entropy(0.5).unwrap() - 1.0).abs() < 1e-15);
        assert!(binary_entropy(1.5).is_err());
        assert!(binary_entropy(-0.1).is_err());
    }
}
