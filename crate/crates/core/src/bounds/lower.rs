//! Coherent information at thermal input (`Q_L`) and the displaced-thermal
//! private lower bound `P_L`.

use std::f64::consts::LN_2;

use crate::channels::ChannelKind;
use crate::error::{Error, Result};
use crate::gaussian_core::g_nats;
use crate::optimize::maximize_scalar;

use super::{check_nb, check_ns, BoundKind, BoundParams, BoundResult, ARG_TOL};

/// `I_c` of the thermal channel at thermal input, in nats.
///
/// The two environment-side arguments `(D ± a − 1)/2`, `a = (1−η)N_S − Y`,
/// `Y = (1−η)N_B`, are rationalized so neither loses digits when `D ≈ 1 ± a`:
/// `(D − a − 1)/2 = 2Y(N_S+1)/(D+1+a)` and
/// `(D + a − 1)/2 = 2N_S(1−η+Y)/(D+1−a)`.
pub(crate) fn ic_thermal_nats(eta: f64, nb: f64, ns: f64) -> Result<f64> {
    let y = (1.0 - eta) * nb;
    let l = 1.0 - eta;
    let a = l * ns - y;
    let d2 = l * l * ns * ns + 2.0 * ns * (l + (1.0 + eta) * y) + (1.0 + y) * (1.0 + y);
    if !(d2 >= 0.0) {
        return Err(Error::Numerical(format!("D² = {d2} < 0")));
    }
    let d = d2.sqrt();
    let minus = if a + 1.0 >= 0.0 {
        2.0 * y * (ns + 1.0) / (d + 1.0 + a)
    } else {
        (d - a - 1.0) / 2.0
    };
    let plus = if 1.0 - a >= 0.0 {
        2.0 * ns * (l + y) / (d + 1.0 - a)
    } else {
        (d + a - 1.0) / 2.0
    };
    Ok(g_nats(eta * ns + y)? - g_nats(plus)? - g_nats(minus)?)
}

/// `I_c` of the amplifier at thermal input, in nats. With
/// `K = (G−1)(N_B+1)`, `b = (G−1)N_S + K`:
/// `(D − b − 1)/2 = 2(G−1)N_B N_S/(D+1+b)` and
/// `(D + b − 1)/2 = 2(G−1)(N_B+1)(N_S+1)/(D+1−b)`.
pub(crate) fn ic_amp_nats(g: f64, nb: f64, ns: f64) -> Result<f64> {
    let gm = g - 1.0;
    let k = gm * (nb + 1.0);
    let b = gm * ns + k;
    let d2 =
        gm * gm * ns * ns + 2.0 * gm * ns * ((1.0 + g) * (nb + 1.0) - 1.0) + (k + 1.0) * (k + 1.0);
    let d = d2.sqrt();
    let minus = 2.0 * gm * nb * ns / (d + 1.0 + b);
    let plus = if 1.0 - b >= 0.0 {
        2.0 * gm * (nb + 1.0) * (ns + 1.0) / (d + 1.0 - b)
    } else {
        (d + b - 1.0) / 2.0
    };
    Ok(g_nats(g * ns + k)? - g_nats(plus)? - g_nats(minus)?)
}

fn check_eta(eta: f64) -> Result<()> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!("eta = {eta} outside (0, 1]")));
    }
    Ok(())
}

fn check_gain(g: f64) -> Result<()> {
    if !(g >= 1.0) || !g.is_finite() {
        return Err(Error::Domain(format!("G = {g} must be ≥ 1")));
    }
    Ok(())
}

/// `I_c(L_{η,N_B}, N_S)` in bits.
pub fn coherent_info_thermal(eta: f64, nb: f64, ns: f64) -> Result<f64> {
    check_eta(eta)?;
    check_nb(nb)?;
    check_ns(ns)?;
    Ok(ic_thermal_nats(eta, nb, ns)? / LN_2)
}

/// `I_c(A_{G,N_B}, N_S)` in bits.
pub fn coherent_info_amp(g: f64, nb: f64, ns: f64) -> Result<f64> {
    check_gain(g)?;
    check_nb(nb)?;
    check_ns(ns)?;
    Ok(ic_amp_nats(g, nb, ns)? / LN_2)
}

/// `Q_L` for the thermal channel.
pub fn q_lower_thermal(eta: f64, nb: f64, ns: f64) -> Result<BoundResult> {
    let raw = coherent_info_thermal(eta, nb, ns)?;
    let params = BoundParams::new(ChannelKind::Thermal { eta, nb }, Some(ns));
    Ok(BoundResult::from_bits(BoundKind::QL, raw, None, params))
}

/// `Q_L` for the amplifier channel.
pub fn q_lower_amp(g: f64, nb: f64, ns: f64) -> Result<BoundResult> {
    let raw = coherent_info_amp(g, nb, ns)?;
    let params = BoundParams::new(ChannelKind::Amplifier { g, nb }, Some(ns));
    Ok(BoundResult::from_bits(BoundKind::QL, raw, None, params))
}

/// `P_L = max_{N²_S ∈ [0, N_S]} I_c(N_S) − I_c(N²_S)`; `arg_opt` is `N²_S`.
pub fn p_lower_displaced(eta: f64, nb: f64, ns: f64) -> Result<BoundResult> {
    check_eta(eta)?;
    check_nb(nb)?;
    check_ns(ns)?;
    let params = BoundParams::new(ChannelKind::Thermal { eta, nb }, Some(ns));
    if ns == 0.0 {
        return Ok(BoundResult::from_nats(
            BoundKind::PL,
            0.0,
            Some(0.0),
            params,
        ));
    }
    let top = ic_thermal_nats(eta, nb, ns)?;
    let r = maximize_scalar(
        |x| ic_thermal_nats(eta, nb, x).map_or(f64::NAN, |v| top - v),
        0.0,
        ns,
        false,
        ARG_TOL * ns.max(1.0),
    )?;
    Ok(BoundResult::from_nats(
        BoundKind::PL,
        r.value,
        Some(r.arg),
        params,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian_core::g_entropy;

    #[test]
    fn lossless_limit() {
        for nb in [0.0, 0.7, 3.0] {
            let q = q_lower_thermal(1.0, nb, 4.0).unwrap();
            assert!((q.raw_bits - g_entropy(4.0).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn vacuum_input_gives_zero() {
        for (eta, nb) in [(0.3, 0.0), (0.7, 2.0), (0.99, 0.1)] {
            assert!(coherent_info_thermal(eta, nb, 0.0).unwrap().abs() < 1e-15);
        }
        assert!(coherent_info_amp(1.7, 0.4, 0.0).unwrap().abs() < 1e-15);
    }

    #[test]
    fn direct_form_agreement() {
        let direct = |eta: f64, nb: f64, ns: f64| {
            let d = (((1.0 + eta) * ns + (1.0 - eta) * nb + 1.0).powi(2)
                - 4.0 * eta * ns * (ns + 1.0))
                .sqrt();
            let y = (1.0 - eta) * nb;
            g_entropy(eta * ns + y).unwrap()
                - g_entropy((d + (1.0 - eta) * ns - y - 1.0) / 2.0).unwrap()
                - g_entropy((d - (1.0 - eta) * ns + y - 1.0) / 2.0).unwrap()
        };
        for (eta, nb, ns) in [
            (0.7, 0.2, 4.0),
            (0.55, 3.0, 0.3),
            (0.9, 0.01, 20.0),
            (0.2, 1.0, 1.0),
        ] {
            let v = coherent_info_thermal(eta, nb, ns).unwrap();
            assert!((v - direct(eta, nb, ns)).abs() < 1e-11, "{eta} {nb} {ns}");
        }
    }

    #[test]
    fn pl_at_least_ql() {
        for (eta, nb, ns) in [(0.6, 0.1, 0.1), (0.8, 0.01, 10.0), (0.3, 0.5, 2.0)] {
            let pl = p_lower_displaced(eta, nb, ns).unwrap();
            let ql = coherent_info_thermal(eta, nb, ns).unwrap();
            assert!(pl.raw_bits >= ql - 1e-12);
            assert!(pl.raw_bits >= -1e-15);
            let arg = pl.arg_opt.unwrap();
            assert!((0.0..=ns).contains(&arg));
        }
    }

    #[test]
    fn clamped_value() {
        let q = q_lower_thermal(0.3, 1.0, 2.0).unwrap();
        assert!(q.raw_bits < 0.0);
        assert_eq!(q.value_bits, 0.0);
    }
}
