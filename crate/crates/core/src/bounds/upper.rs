//! Upper bounds: data processing (`Q_U1`, `P_U1`), ε-degradable (`Q_U2`,
//! `P_U2`), ε-close-degradable (`Q_U3`, `P_U3`) and the decomposition bound
//! `Q_U4`.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::channels::{
    epsilon_close_degradable, epsilon_degradable, ChannelKind, PhaseInsensitiveChannel,
};
use crate::error::{Error, Result};
use crate::gaussian_core::g_nats;

use super::penalty::optimize_penalty;
use super::{
    check_amp, check_eta_half, check_nb, check_nbar, check_ns, BoundKind, BoundParams, BoundResult,
};

/// Private-capacity upper bound selector for [`p_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum PrivateBound {
    PU1,
    PU2,
    PU3,
}

impl PrivateBound {
    fn kind(self) -> BoundKind {
        match self {
            Self::PU1 => BoundKind::PU1,
            Self::PU2 => BoundKind::PU2,
            Self::PU3 => BoundKind::PU3,
        }
    }
}

fn mismatch(what: &str, ch: &PhaseInsensitiveChannel) -> Error {
    Error::KindMismatch(format!("{what} is not defined for {:?}", ch.kind()))
}

/// `Q_U1` in nats, validated.
pub(super) fn qu1_nats(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<f64> {
    check_ns(ns)?;
    match ch.kind() {
        ChannelKind::Thermal { eta, nb } => {
            check_eta_half(eta)?;
            check_nb(nb)?;
            let ep = eta / ((1.0 - eta) * nb + 1.0);
            Ok(g_nats(ep * ns)? - g_nats((1.0 - ep) * ns)?)
        }
        ChannelKind::Amplifier { g, nb } => {
            check_amp(g, nb)?;
            let gp = g / (1.0 + nb * (1.0 - g));
            Ok(g_nats(gp * ns + gp - 1.0)? - g_nats((gp - 1.0) * (ns + 1.0))?)
        }
        ChannelKind::AdditiveNoise { nbar } => {
            check_nbar(nbar)?;
            Ok(g_nats(ns / (nbar + 1.0))? - g_nats(nbar * ns / (nbar + 1.0))?)
        }
        ChannelKind::Raw => Err(mismatch("QU1", ch)),
    }
}

/// Data-processing bound through the degradable member of the family.
pub fn q_u1(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<BoundResult> {
    let raw = qu1_nats(ch, ns)?;
    Ok(BoundResult::from_nats(
        BoundKind::QU1,
        raw,
        None,
        BoundParams::new(ch.kind(), Some(ns)),
    ))
}

/// `η − (1−η)N_B`, or an infeasibility error when it is not positive.
fn qu4_eta_prime(eta: f64, nb: f64) -> Result<f64> {
    if !(eta > 0.0 && eta <= 1.0) {
        return Err(Error::Domain(format!("eta = {eta} outside (0, 1]")));
    }
    check_nb(nb)?;
    let ep = eta - (1.0 - eta) * nb;
    if ep <= 0.0 {
        return Err(Error::Infeasible(format!(
            "eta <= (1-eta)*NB: no pure-loss/amplifier decomposition (eta = {eta}, NB = {nb})"
        )));
    }
    Ok(ep)
}

/// Bound from writing the channel as pure loss followed by a quantum-limited
/// amplifier. Thermal and additive-noise channels only.
pub fn q_u4(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<BoundResult> {
    check_ns(ns)?;
    let raw = match ch.kind() {
        ChannelKind::Thermal { eta, nb } => {
            let ep = qu4_eta_prime(eta, nb)?;
            let out = eta * ns + (1.0 - eta) * nb;
            g_nats(out)? - g_nats((1.0 / ep - 1.0) * out)?
        }
        ChannelKind::AdditiveNoise { nbar } => {
            check_nbar(nbar)?;
            g_nats(ns + nbar)? - g_nats(nbar * (ns + nbar) / (1.0 - nbar))?
        }
        _ => return Err(mismatch("QU4", ch)),
    };
    Ok(BoundResult::from_nats(
        BoundKind::QU4,
        raw,
        None,
        BoundParams::new(ch.kind(), Some(ns)),
    ))
}

/// Symplectic spectrum `ζ±` (as photon numbers) of the 2-mode state with
/// diagonal `a`, `b` and correlation `c² = ϱ`; `ν₋` comes from `ν₊ν₋ = ab − c²`.
fn zeta_pair(a: f64, b: f64, c2: f64) -> Result<(f64, f64)> {
    let disc = (a + b) * (a + b) - 4.0 * c2;
    if !(disc >= 0.0) {
        return Err(Error::Numerical(format!(
            "negative discriminant {disc} in U_D spectrum"
        )));
    }
    let nu_plus = 0.5 * (disc.sqrt() + (a - b).abs());
    let nu_minus = (a * b - c2) / nu_plus;
    Ok(((nu_plus - 1.0) / 2.0, (nu_minus - 1.0) / 2.0))
}

/// `U_D` in nats: output entropy minus the entropy of the simulating
/// environment at thermal input.
fn ud_nats(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<f64> {
    check_ns(ns)?;
    match ch.kind() {
        ChannelKind::Thermal { eta, nb } => {
            check_eta_half(eta)?;
            check_nb(nb)?;
            let theta = eta * nb + (1.0 - eta) * ns;
            let rho = 4.0 * nb * (nb + 1.0) * (2.0 * eta - 1.0) / eta;
            let (zp, zm) = zeta_pair(1.0 + 2.0 * theta, 1.0 + 2.0 * nb, rho)?;
            Ok(g_nats(eta * ns + (1.0 - eta) * nb)? - g_nats(zp)? - g_nats(zm)?)
        }
        ChannelKind::Amplifier { g, nb } => {
            check_amp(g, nb)?;
            let theta = g * (1.0 + nb) + (g - 1.0) * ns;
            let rho = 4.0 * nb * (nb + 1.0) * (2.0 * g - 1.0) / g;
            let (zp, zm) = zeta_pair(2.0 * theta - 1.0, 1.0 + 2.0 * nb, rho)?;
            Ok(g_nats(g * ns + (g - 1.0) * (nb + 1.0))? - g_nats(zp)? - g_nats(zm)?)
        }
        _ => Err(mismatch("U_D", ch)),
    }
}

/// Closed-form `U_D` in bits, the penalty-free part of `Q_U2` and `P_U2`.
pub fn ud_closed_form(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<f64> {
    Ok(ud_nats(ch, ns)? / LN_2)
}

/// Coherent information of the degradable reference used by `Q_U3`, with
/// `(ε, W′)`.
fn close_reference(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<(f64, f64, f64)> {
    check_ns(ns)?;
    match ch.kind() {
        ChannelKind::Thermal { eta, nb } => {
            check_eta_half(eta)?;
            let eps = epsilon_close_degradable(nb)?.epsilon;
            let v = g_nats(eta * ns)? - g_nats((1.0 - eta) * ns)?;
            Ok((v, eps, eta * ns + (1.0 - eta) * nb))
        }
        ChannelKind::Amplifier { g, nb } => {
            check_amp(g, nb)?;
            let eps = epsilon_close_degradable(nb)?.epsilon;
            let v = g_nats(g * ns + g - 1.0)? - g_nats((g - 1.0) * (ns + 1.0))?;
            Ok((v, eps, g * ns + (g - 1.0) * (nb + 1.0)))
        }
        _ => Err(mismatch("QU3", ch)),
    }
}

/// `U_D` with `(ε, W′)` for the ε-degradable bounds.
fn degradable_reference(ch: &PhaseInsensitiveChannel, ns: f64) -> Result<(f64, f64, f64)> {
    let v = ud_nats(ch, ns)?;
    let eps = epsilon_degradable(ch)?.epsilon;
    let w = match ch.kind() {
        ChannelKind::Thermal { eta, nb } => (1.0 - eta) * ns + (1.0 + eta) * nb,
        ChannelKind::Amplifier { g, nb } => (g - 1.0) * (ns + 1.0) + (1.0 + g) * nb,
        _ => unreachable!("ud_nats rejects other kinds"),
    };
    Ok((v, eps, w))
}

fn penalized(
    kind: BoundKind,
    ch: &PhaseInsensitiveChannel,
    ns: f64,
    (base, eps, w): (f64, f64, f64),
    k: u32,
    eps_prime: Option<f64>,
) -> Result<BoundResult> {
    let pc = optimize_penalty(eps, w, k, eps_prime)?;
    let params = BoundParams {
        epsilon: Some(eps),
        delta: pc.delta,
        w_prime: Some(w),
        ..BoundParams::new(ch.kind(), Some(ns))
    };
    Ok(BoundResult::from_nats(
        kind,
        base + pc.nats,
        pc.epsilon_prime,
        params,
    ))
}

/// ε-degradable bound: `U_D` plus the `k = 1` penalty, ε′ optimized unless given.
pub fn q_u2(ch: &PhaseInsensitiveChannel, ns: f64, eps_prime: Option<f64>) -> Result<BoundResult> {
    penalized(
        BoundKind::QU2,
        ch,
        ns,
        degradable_reference(ch, ns)?,
        1,
        eps_prime,
    )
}

/// ε-close-degradable bound: reference coherent information plus the `k = 2` penalty.
pub fn q_u3(ch: &PhaseInsensitiveChannel, ns: f64, eps_prime: Option<f64>) -> Result<BoundResult> {
    penalized(
        BoundKind::QU3,
        ch,
        ns,
        close_reference(ch, ns)?,
        2,
        eps_prime,
    )
}

/// Private-capacity upper bounds. `P_U1` ignores `eps_prime`.
pub fn p_bounds(
    ch: &PhaseInsensitiveChannel,
    ns: f64,
    which: PrivateBound,
    eps_prime: Option<f64>,
) -> Result<BoundResult> {
    match which {
        PrivateBound::PU1 => {
            let raw = qu1_nats(ch, ns)?;
            Ok(BoundResult::from_nats(
                which.kind(),
                raw,
                None,
                BoundParams::new(ch.kind(), Some(ns)),
            ))
        }
        PrivateBound::PU2 => penalized(
            which.kind(),
            ch,
            ns,
            degradable_reference(ch, ns)?,
            3,
            eps_prime,
        ),
        PrivateBound::PU3 => {
            penalized(which.kind(), ch, ns, close_reference(ch, ns)?, 4, eps_prime)
        }
    }
}

/// `N_S → ∞` limit of `Q_U1` or `Q_U4`.
pub fn unconstrained_limit(ch: &PhaseInsensitiveChannel, kind: BoundKind) -> Result<BoundResult> {
    let raw = match (kind, ch.kind()) {
        (BoundKind::QU1, ChannelKind::Thermal { eta, nb }) => {
            check_eta_half(eta)?;
            check_nb(nb)?;
            (eta / (1.0 - eta)).ln() - nb.ln_1p()
        }
        (BoundKind::QU1, ChannelKind::Amplifier { g, nb }) => {
            check_amp(g, nb)?;
            (g / (g - 1.0)).ln() - nb.ln_1p()
        }
        (BoundKind::QU1, ChannelKind::AdditiveNoise { nbar }) => {
            check_nbar(nbar)?;
            -nbar.ln()
        }
        (BoundKind::QU4, ChannelKind::Thermal { eta, nb }) => {
            let ep = qu4_eta_prime(eta, nb)?;
            (ep / ((1.0 - eta) * (nb + 1.0))).ln()
        }
        (BoundKind::QU4, ChannelKind::AdditiveNoise { nbar }) => {
            check_nbar(nbar)?;
            ((1.0 - nbar) / nbar).ln()
        }
        (BoundKind::QU1 | BoundKind::QU4, _) => return Err(mismatch(kind.as_str(), ch)),
        _ => {
            return Err(Error::Domain(format!(
                "no unconstrained limit is provided for {kind}"
            )))
        }
    };
    Ok(BoundResult::from_nats(
        kind,
        raw,
        None,
        BoundParams::new(ch.kind(), None),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::lower::coherent_info_thermal;
    use crate::bounds::penalty::penalty_nats;
    use crate::gaussian_core::g_entropy;

    fn thermal(eta: f64, nb: f64) -> PhaseInsensitiveChannel {
        PhaseInsensitiveChannel::thermal(eta, nb).unwrap()
    }

    fn pure_loss(eta: f64, ns: f64) -> f64 {
        g_entropy(eta * ns).unwrap() - g_entropy((1.0 - eta) * ns).unwrap()
    }

    #[test]
    fn noiseless_reductions() {
        let ch = thermal(0.8, 0.0);
        let expect = pure_loss(0.8, 3.0);
        assert!((q_u1(&ch, 3.0).unwrap().raw_bits - expect).abs() < 1e-13);
        assert!((q_u4(&ch, 3.0).unwrap().raw_bits - expect).abs() < 1e-13);
        assert!((ud_closed_form(&ch, 3.0).unwrap() - expect).abs() < 1e-13);
        let q3 = q_u3(&ch, 3.0, None).unwrap();
        assert!((q3.raw_bits - expect).abs() < 1e-13);
        assert!(q3.arg_opt.is_none());
    }

    #[test]
    fn qu1_vs_ql() {
        for (eta, nb, ns) in [(0.6, 0.3, 1.0), (0.9, 2.0, 50.0), (0.75, 0.01, 0.2)] {
            let u = q_u1(&thermal(eta, nb), ns).unwrap().raw_bits;
            let l = coherent_info_thermal(eta, nb, ns).unwrap();
            assert!(u >= l - 1e-12 && u - l <= 1.0 / LN_2 + 1e-9);
        }
    }

    #[test]
    fn qu4_infeasible_message() {
        let e = q_u4(&thermal(0.5, 1.0), 1.0).unwrap_err();
        assert!(matches!(&e, Error::Infeasible(m) if m.contains("eta <= (1-eta)*NB")));
        let amp = PhaseInsensitiveChannel::amplifier(1.5, 0.1).unwrap();
        assert!(matches!(q_u4(&amp, 1.0), Err(Error::KindMismatch(_))));
    }

    #[test]
    fn additive_unconstrained() {
        let ch = PhaseInsensitiveChannel::additive_noise(0.5).unwrap();
        assert!(
            unconstrained_limit(&ch, BoundKind::QU4)
                .unwrap()
                .raw_bits
                .abs()
                < 1e-15
        );
        assert!((unconstrained_limit(&ch, BoundKind::QU1).unwrap().raw_bits - 1.0).abs() < 1e-15);
        let eb = PhaseInsensitiveChannel::additive_noise(1.0).unwrap();
        assert!(matches!(q_u1(&eb, 1.0), Err(Error::Infeasible(_))));
    }

    #[test]
    fn qu1_approaches_limit() {
        let ch = thermal(0.8, 0.7);
        let lim = unconstrained_limit(&ch, BoundKind::QU1).unwrap().raw_bits;
        let v = q_u1(&ch, 1e8).unwrap().raw_bits;
        assert!((v - lim).abs() < 1e-6);
    }

    #[test]
    fn private_shares_structure() {
        let ch = thermal(0.8, 0.2);
        let (ns, ep) = (4.0, 0.4);
        let q = q_u2(&ch, ns, Some(ep)).unwrap();
        let p = p_bounds(&ch, ns, PrivateBound::PU2, Some(ep)).unwrap();
        let (eps, w) = (q.params.epsilon.unwrap(), q.params.w_prime.unwrap());
        let diff = (penalty_nats(eps, ep, w, 3) - penalty_nats(eps, ep, w, 1)) / LN_2;
        assert!((p.raw_bits - q.raw_bits - diff).abs() < 1e-12);
        let u1 = q_u1(&ch, ns).unwrap();
        let p1 = p_bounds(&ch, ns, PrivateBound::PU1, None).unwrap();
        assert_eq!(u1.raw_bits, p1.raw_bits);
        assert_eq!(p1.kind, BoundKind::PU1);
    }

    #[test]
    fn amplifier_entanglement_breaking_is_infeasible() {
        let ch = PhaseInsensitiveChannel::amplifier(3.0, 0.5).unwrap();
        for r in [q_u1(&ch, 1.0), q_u2(&ch, 1.0, None), q_u3(&ch, 1.0, None)] {
            assert!(matches!(r, Err(Error::Infeasible(_))));
        }
    }

    #[test]
    fn eps_prime_is_recorded() {
        let r = q_u2(&thermal(0.9, 0.3), 2.0, None).unwrap();
        let (eps, ep) = (r.params.epsilon.unwrap(), r.arg_opt.unwrap());
        assert!(ep > eps && ep <= 1.0);
        let d = r.params.delta.unwrap();
        assert!((d - (ep - eps) / (1.0 + ep)).abs() < 1e-15);
    }
}
