//! Single-mode phase-insensitive Gaussian channels.
//!
//! Every channel is stored canonically as `(τ, ν)`: `X = √τ I₂`,
//! `Y = ν I₂`. The named family is kept as a tag so that bound formulas,
//! which are written in named parameters, can dispatch on it.

mod dilation;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gaussian_core::{GaussianChannel, GaussianState};

pub use dilation::{
    degrading_dilation, degrading_simulation_check, degrading_simulation_states, noisy_tms_state,
    simulating_output, stinespring_output, Dilation,
};

/// Slack used by the CPTP and entanglement-breaking predicates.
pub const PREDICATE_SLACK: f64 = 1e-12;

/// Named family of a phase-insensitive channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ChannelKind {
    /// Beamsplitter of transmissivity `eta` with a thermal environment of `nb` photons.
    Thermal {
        eta: f64,
        nb: f64,
    },
    /// Two-mode squeezer of gain `g` with a thermal environment of `nb` photons.
    Amplifier {
        g: f64,
        nb: f64,
    },
    /// Classical Gaussian noise of variance `nbar` per quadrature (in photon units).
    AdditiveNoise {
        nbar: f64,
    },
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhaseInsensitiveChannel {
    tau: f64,
    nu: f64,
    kind: ChannelKind,
}

fn finite_nonneg(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::Domain(format!(
            "{name} = {v} must be finite and ≥ 0"
        )));
    }
    Ok(())
}

impl PhaseInsensitiveChannel {
    pub fn thermal(eta: f64, nb: f64) -> Result<Self> {
        if !(eta > 0.0 && eta <= 1.0) {
            return Err(Error::Domain(format!("eta = {eta} outside (0,1]")));
        }
        finite_nonneg("NB", nb)?;
        let ch = Self {
            tau: eta,
            nu: (1.0 - eta) * (2.0 * nb + 1.0),
            kind: ChannelKind::Thermal { eta, nb },
        };
        debug_assert!(ch.is_cptp());
        Ok(ch)
    }

    pub fn amplifier(g: f64, nb: f64) -> Result<Self> {
        if !(g >= 1.0) || !g.is_finite() {
            return Err(Error::Domain(format!("G = {g} must be ≥ 1")));
        }
        finite_nonneg("NB", nb)?;
        let ch = Self {
            tau: g,
            nu: (g - 1.0) * (2.0 * nb + 1.0),
            kind: ChannelKind::Amplifier { g, nb },
        };
        debug_assert!(ch.is_cptp());
        Ok(ch)
    }

    pub fn additive_noise(nbar: f64) -> Result<Self> {
        if !(nbar > 0.0) || !nbar.is_finite() {
            return Err(Error::Domain(format!("nbar = {nbar} must be > 0")));
        }
        Ok(Self {
            tau: 1.0,
            nu: 2.0 * nbar,
            kind: ChannelKind::AdditiveNoise { nbar },
        })
    }

    /// Arbitrary `(τ, ν)`; fails unless `ν ≥ |1 − τ|`.
    pub fn raw(tau: f64, nu: f64) -> Result<Self> {
        finite_nonneg("tau", tau)?;
        finite_nonneg("nu", nu)?;
        let ch = Self {
            tau,
            nu,
            kind: ChannelKind::Raw,
        };
        if !ch.is_cptp() {
            return Err(Error::InvalidChannel(format!(
                "nu = {nu} < |1 - tau| = {}",
                (1.0 - tau).abs()
            )));
        }
        Ok(ch)
    }

    /// Builds the channel described by `kind`.
    pub fn from_kind(kind: ChannelKind) -> Result<Self> {
        match kind {
            ChannelKind::Thermal { eta, nb } => Self::thermal(eta, nb),
            ChannelKind::Amplifier { g, nb } => Self::amplifier(g, nb),
            ChannelKind::AdditiveNoise { nbar } => Self::additive_noise(nbar),
            ChannelKind::Raw => Err(Error::KindMismatch("Raw needs explicit (tau, nu)".into())),
        }
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn nu(&self) -> f64 {
        self.nu
    }

    pub fn kind(&self) -> ChannelKind {
        self.kind
    }

    /// `ν ≥ 0` and `ν² ≥ (1−τ)²`.
    pub fn is_cptp(&self) -> bool {
        self.nu >= 0.0 && self.nu >= (1.0 - self.tau).abs() - PREDICATE_SLACK
    }

    /// `ν ≥ τ + 1`. The boundary counts as entanglement-breaking.
    pub fn is_entanglement_breaking(&self) -> bool {
        self.nu >= self.tau + 1.0 - PREDICATE_SLACK
    }

    /// Covariance-level action on one mode.
    pub fn gaussian_channel(&self) -> Result<GaussianChannel> {
        GaussianChannel::phase_insensitive(self.tau, self.nu)
    }

    /// Applies the channel to `mode` of `state`.
    pub fn apply(&self, state: &GaussianState, mode: usize) -> Result<GaussianState> {
        self.gaussian_channel()?.apply_on(state, &[mode])
    }

    /// `next ∘ self` as a raw channel.
    pub fn then(&self, next: &Self) -> Self {
        Self {
            tau: next.tau * self.tau,
            nu: next.tau * self.nu + next.nu,
            kind: ChannelKind::Raw,
        }
    }

    /// Mean output photon number for an input with `ns` photons.
    pub fn output_photons(&self, ns: f64) -> f64 {
        self.tau * ns + (self.tau + self.nu - 1.0) / 2.0
    }
}

/// Order of the two factors in a [`Decomposition`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DecompositionOrder {
    /// Pure loss, then a quantum-limited amplifier.
    LossThenAmp,
    /// Quantum-limited amplifier, then pure loss.
    AmpThenLoss,
}

/// `source = second ∘ first`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decomposition {
    pub first: PhaseInsensitiveChannel,
    pub second: PhaseInsensitiveChannel,
    pub order: DecompositionOrder,
}

impl Decomposition {
    /// `(τ, ν)` of `second ∘ first`.
    pub fn recompose(&self) -> (f64, f64) {
        let c = self.first.then(&self.second);
        (c.tau, c.nu)
    }

    /// Transmissivity of the pure-loss factor.
    pub fn loss_eta(&self) -> f64 {
        match self.order {
            DecompositionOrder::LossThenAmp => self.first.tau,
            DecompositionOrder::AmpThenLoss => self.second.tau,
        }
    }

    /// Gain of the amplifier factor.
    pub fn gain(&self) -> f64 {
        match self.order {
            DecompositionOrder::LossThenAmp => self.second.tau,
            DecompositionOrder::AmpThenLoss => self.first.tau,
        }
    }
}

/// Thermal channel as pure loss `η/G` followed by a quantum-limited
/// amplifier of gain `G = (1−η)N_B + 1`.
pub fn decompose_loss_then_amp(ch: &PhaseInsensitiveChannel) -> Result<Decomposition> {
    let ChannelKind::Thermal { eta, nb } = ch.kind else {
        return Err(Error::KindMismatch(
            "loss-then-amp needs a thermal channel".into(),
        ));
    };
    let g = (1.0 - eta) * nb + 1.0;
    Ok(Decomposition {
        first: PhaseInsensitiveChannel::thermal(eta / g, 0.0)?,
        second: PhaseInsensitiveChannel::amplifier(g, 0.0)?,
        order: DecompositionOrder::LossThenAmp,
    })
}

/// Any non-entanglement-breaking channel as a quantum-limited amplifier of
/// gain `G = τ/η` followed by pure loss `η = (τ + 1 − ν)/2`.
pub fn decompose_amp_then_loss(ch: &PhaseInsensitiveChannel) -> Result<Decomposition> {
    if ch.is_entanglement_breaking() {
        return Err(Error::Infeasible(format!(
            "channel is entanglement-breaking: nu = {} >= tau + 1 = {}",
            ch.nu,
            ch.tau + 1.0
        )));
    }
    let eta = ((ch.tau + 1.0 - ch.nu) / 2.0).min(1.0);
    let g = (ch.tau / eta).max(1.0);
    Ok(Decomposition {
        first: PhaseInsensitiveChannel::amplifier(g, 0.0)?,
        second: PhaseInsensitiveChannel::thermal(eta, 0.0)?,
        order: DecompositionOrder::AmpThenLoss,
    })
}

/// How an [`EpsilonReport`] was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum EpsilonMethod {
    /// Distance between the complementary channel and channel-then-degrading-map.
    EpsDegradable,
    /// Distance to the noiseless (degradable) member of the family.
    EpsCloseDegradable,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EpsilonReport {
    pub epsilon: f64,
    pub lower: Option<f64>,
    pub method: EpsilonMethod,
}

/// `κ(x, N_B) = x² + N_B(N_B+1)[1 + 3x² − 2x(1 + √(2x−1))]`.
pub fn kappa(x: f64, nb: f64) -> f64 {
    x * x + nb * (nb + 1.0) * kappa_bracket(x)
}

/// `1 + 3x² − 2x(1+√(2x−1))` rewritten as `(1−x)²[1 + 2x/(x + √(2x−1))]`,
/// which is exact at `x = 1` and never negative.
fn kappa_bracket(x: f64) -> f64 {
    let r = (2.0 * x - 1.0).sqrt();
    (1.0 - x).powi(2) * (1.0 + 2.0 * x / (x + r))
}

/// `ε = √(1 − x²/κ(x, N_B))` for a thermal (`x = η`) or amplifier (`x = G`) channel.
pub fn epsilon_degradable(ch: &PhaseInsensitiveChannel) -> Result<EpsilonReport> {
    let (x, nb) = match ch.kind {
        ChannelKind::Thermal { eta, nb } => {
            if eta < 0.5 {
                return Err(Error::Domain(format!("eta = {eta} < 1/2")));
            }
            (eta, nb)
        }
        ChannelKind::Amplifier { g, nb } => (g, nb),
        _ => {
            return Err(Error::KindMismatch(
                "epsilon_degradable needs a thermal or amplifier channel".into(),
            ))
        }
    };
    // 1 − x²/κ = N_B(N_B+1)·bracket/κ, avoiding the subtraction.
    let num = nb * (nb + 1.0) * kappa_bracket(x);
    let epsilon = (num / (x * x + num)).sqrt();
    Ok(EpsilonReport {
        epsilon,
        lower: None,
        method: EpsilonMethod::EpsDegradable,
    })
}

/// `ε = N_B/(N_B+1)` with lower bound `1 − 1/√(N_B+1)`.
pub fn epsilon_close_degradable(nb: f64) -> Result<EpsilonReport> {
    finite_nonneg("NB", nb)?;
    Ok(EpsilonReport {
        epsilon: nb / (nb + 1.0),
        lower: Some(1.0 - 1.0 / (nb + 1.0).sqrt()),
        method: EpsilonMethod::EpsCloseDegradable,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_constructors() {
        let t = PhaseInsensitiveChannel::thermal(0.6, 1.0).unwrap();
        assert_eq!((t.tau(), t.nu()), (0.6, 0.4 * 3.0));
        let a = PhaseInsensitiveChannel::amplifier(2.0, 0.0).unwrap();
        assert_eq!((a.tau(), a.nu()), (2.0, 1.0));
        let n = PhaseInsensitiveChannel::additive_noise(0.5).unwrap();
        assert_eq!((n.tau(), n.nu()), (1.0, 1.0));
        assert!(PhaseInsensitiveChannel::thermal(0.0, 1.0).is_err());
        assert!(PhaseInsensitiveChannel::thermal(0.5, -1.0).is_err());
        assert!(PhaseInsensitiveChannel::amplifier(0.5, 0.0).is_err());
        assert!(PhaseInsensitiveChannel::additive_noise(0.0).is_err());
    }

    #[test]
    fn raw_cptp() {
        assert!(PhaseInsensitiveChannel::raw(2.0, 0.5).is_err());
        assert!(PhaseInsensitiveChannel::raw(0.5, 0.4).is_err());
        assert!(PhaseInsensitiveChannel::raw(0.5, 0.5).is_ok());
    }

    #[test]
    fn entanglement_breaking_boundaries() {
        assert!(PhaseInsensitiveChannel::additive_noise(1.0)
            .unwrap()
            .is_entanglement_breaking());
        assert!(!PhaseInsensitiveChannel::additive_noise(0.99)
            .unwrap()
            .is_entanglement_breaking());
        assert!(PhaseInsensitiveChannel::amplifier(3.0, 1.0)
            .unwrap()
            .is_entanglement_breaking());
        assert!(!PhaseInsensitiveChannel::amplifier(3.0, 0.49)
            .unwrap()
            .is_entanglement_breaking());
        // ν ≥ τ+1 for a thermal channel reduces to η ≤ N_B/(N_B+1), i.e. 2/3 at N_B = 2.
        assert!(PhaseInsensitiveChannel::thermal(2.0 / 3.0, 2.0)
            .unwrap()
            .is_entanglement_breaking());
        assert!(!PhaseInsensitiveChannel::thermal(0.67, 2.0)
            .unwrap()
            .is_entanglement_breaking());
        // Q_U1 already vanishes for η ≤ (N_B+1)/(N_B+2) = 3/4, a different, larger threshold.
        assert!(!PhaseInsensitiveChannel::thermal(0.75, 2.0)
            .unwrap()
            .is_entanglement_breaking());
    }

    #[test]
    fn loss_then_amp_examples() {
        let d =
            decompose_loss_then_amp(&PhaseInsensitiveChannel::thermal(0.8, 0.0).unwrap()).unwrap();
        assert_eq!((d.gain(), d.loss_eta()), (1.0, 0.8));
        let d =
            decompose_loss_then_amp(&PhaseInsensitiveChannel::thermal(0.5, 1.0).unwrap()).unwrap();
        assert!((d.gain() - 1.5).abs() < 1e-15);
        assert!((d.loss_eta() - 1.0 / 3.0).abs() < 1e-15);
        let amp = PhaseInsensitiveChannel::amplifier(2.0, 0.1).unwrap();
        assert!(matches!(
            decompose_loss_then_amp(&amp),
            Err(Error::KindMismatch(_))
        ));
    }

    #[test]
    fn amp_then_loss_examples() {
        let (eta, nb) = (0.9, 0.3);
        let d =
            decompose_amp_then_loss(&PhaseInsensitiveChannel::thermal(eta, nb).unwrap()).unwrap();
        assert!((d.loss_eta() - (eta - (1.0 - eta) * nb)).abs() < 1e-15);
        let nbar = 0.4;
        let d = decompose_amp_then_loss(&PhaseInsensitiveChannel::additive_noise(nbar).unwrap())
            .unwrap();
        assert!((d.loss_eta() - (1.0 - nbar)).abs() < 1e-15);
        assert!((d.gain() - 1.0 / (1.0 - nbar)).abs() < 1e-14);
        let eb = PhaseInsensitiveChannel::thermal(0.5, 2.0).unwrap();
        assert!(matches!(
            decompose_amp_then_loss(&eb),
            Err(Error::Infeasible(_))
        ));
    }

    #[test]
    fn epsilon_limits() {
        let e = epsilon_degradable(&PhaseInsensitiveChannel::thermal(0.7, 0.0).unwrap()).unwrap();
        assert_eq!(e.epsilon, 0.0);
        let e = epsilon_degradable(&PhaseInsensitiveChannel::thermal(1.0, 2.0).unwrap()).unwrap();
        assert_eq!(e.epsilon, 0.0);
        assert!(epsilon_degradable(&PhaseInsensitiveChannel::thermal(0.4, 1.0).unwrap()).is_err());
        let c = epsilon_close_degradable(1.0).unwrap();
        assert_eq!(c.epsilon, 0.5);
        let c = epsilon_close_degradable(3.0).unwrap();
        assert_eq!(c.lower, Some(0.5));
        assert_eq!(epsilon_close_degradable(0.0).unwrap().lower, Some(0.0));
    }

    #[test]
    fn kappa_bracket_matches_expanded_form() {
        for &x in &[0.5, 0.6, 0.75, 0.9, 0.999, 1.0, 1.5, 3.0] {
            let direct = 1.0 + 3.0 * x * x - 2.0 * x * (1.0 + (2.0 * x - 1.0f64).sqrt());
            assert!((kappa_bracket(x) - direct).abs() < 1e-13, "{x}");
        }
    }

    #[test]
    fn output_photons_thermal() {
        let ch = PhaseInsensitiveChannel::thermal(0.7, 0.3).unwrap();
        assert!((ch.output_photons(2.0) - (0.7 * 2.0 + 0.3 * 0.3)).abs() < 1e-15);
        let a = PhaseInsensitiveChannel::amplifier(2.0, 0.5).unwrap();
        assert!((a.output_photons(3.0) - (2.0 * 3.0 + 1.0 * 1.5)).abs() < 1e-15);
    }
}
