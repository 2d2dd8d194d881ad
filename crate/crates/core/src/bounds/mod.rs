//! Energy-constrained quantum and private capacity bounds.
//!
//! Everything is evaluated in nats and converted to bits once at the end.
//! `value_bits` is clamped at zero for the data-processing bounds, `Q_U4`,
//! `Q_L` and `RMG`; the approximate-degradability bounds are reported raw.

mod comparison;
mod divergence;
mod lower;
mod penalty;
mod upper;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::channels::{ChannelKind, PhaseInsensitiveChannel};
use crate::error::{Error, Result};

pub use comparison::{comparison_bounds, gap_qu1_ql, ComparisonBound};
pub use divergence::gaussian_c_distance;
pub use lower::{
    coherent_info_amp, coherent_info_thermal, p_lower_displaced, q_lower_amp, q_lower_thermal,
};
pub use penalty::{optimize_penalty, penalty, PenaltyChoice, PenaltyParams};
pub use upper::{
    p_bounds, q_u1, q_u2, q_u3, q_u4, ud_closed_form, unconstrained_limit, PrivateBound,
};

/// Tolerance on ε′ and N²_S for the inner optimizations.
pub const ARG_TOL: f64 = 1e-9;

/// Bound identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum BoundKind {
    QL,
    QU1,
    QU2,
    QU3,
    QU4,
    PU1,
    PU2,
    PU3,
    PL,
    PLOB,
    RMG,
}

impl BoundKind {
    pub const ALL: [BoundKind; 11] = [
        Self::QL,
        Self::QU1,
        Self::QU2,
        Self::QU3,
        Self::QU4,
        Self::PU1,
        Self::PU2,
        Self::PU3,
        Self::PL,
        Self::PLOB,
        Self::RMG,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::QL => "QL",
            Self::QU1 => "QU1",
            Self::QU2 => "QU2",
            Self::QU3 => "QU3",
            Self::QU4 => "QU4",
            Self::PU1 => "PU1",
            Self::PU2 => "PU2",
            Self::PU3 => "PU3",
            Self::PL => "PL",
            Self::PLOB => "PLOB",
            Self::RMG => "RMG",
        }
    }

    /// Whether `value_bits = max(0, raw_bits)`.
    pub fn is_clamped(self) -> bool {
        matches!(
            self,
            Self::QL | Self::QU1 | Self::PU1 | Self::QU4 | Self::RMG
        )
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase();
        Self::ALL
            .into_iter()
            .find(|k| k.as_str() == up)
            .ok_or_else(|| Error::Domain(format!("unknown bound kind '{s}'")))
    }
}

/// Inputs and intermediate parameters behind a [`BoundResult`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundParams {
    pub channel: ChannelKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ns: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub w_prime: Option<f64>,
}

impl BoundParams {
    pub(crate) fn new(channel: ChannelKind, ns: Option<f64>) -> Self {
        Self {
            channel,
            ns,
            epsilon: None,
            delta: None,
            w_prime: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoundResult {
    pub kind: BoundKind,
    pub value_bits: f64,
    pub raw_bits: f64,
    /// ε′ for the penalty bounds, N²_S for `PL`.
    pub arg_opt: Option<f64>,
    pub params: BoundParams,
}

impl BoundResult {
    pub(crate) fn from_nats(
        kind: BoundKind,
        raw_nats: f64,
        arg_opt: Option<f64>,
        params: BoundParams,
    ) -> Self {
        Self::from_bits(kind, raw_nats / std::f64::consts::LN_2, arg_opt, params)
    }

    pub(crate) fn from_bits(
        kind: BoundKind,
        raw_bits: f64,
        arg_opt: Option<f64>,
        params: BoundParams,
    ) -> Self {
        let value_bits = if kind.is_clamped() {
            raw_bits.max(0.0)
        } else {
            raw_bits
        };
        Self {
            kind,
            value_bits,
            raw_bits,
            arg_opt,
            params,
        }
    }
}

/// Evaluates `kind` for `ch` at input energy `ns`.
///
/// `QL` and `PL` dispatch on the channel family (`PL` is thermal only);
/// `PLOB` picks the variant matching the channel; `PLOB` and `RMG` ignore
/// `ns`. `eps_prime` fixes ε′ for `QU2`, `QU3`, `PU2`, `PU3` instead of
/// optimizing it.
pub fn evaluate(
    ch: &PhaseInsensitiveChannel,
    ns: f64,
    kind: BoundKind,
    eps_prime: Option<f64>,
) -> Result<BoundResult> {
    match kind {
        BoundKind::QL => match ch.kind() {
            ChannelKind::Thermal { eta, nb } => q_lower_thermal(eta, nb, ns),
            ChannelKind::Amplifier { g, nb } => q_lower_amp(g, nb, ns),
            _ => Err(Error::KindMismatch(
                "QL needs a thermal or amplifier channel".into(),
            )),
        },
        BoundKind::QU1 => q_u1(ch, ns),
        BoundKind::QU2 => q_u2(ch, ns, eps_prime),
        BoundKind::QU3 => q_u3(ch, ns, eps_prime),
        BoundKind::QU4 => q_u4(ch, ns),
        BoundKind::PU1 => p_bounds(ch, ns, PrivateBound::PU1, eps_prime),
        BoundKind::PU2 => p_bounds(ch, ns, PrivateBound::PU2, eps_prime),
        BoundKind::PU3 => p_bounds(ch, ns, PrivateBound::PU3, eps_prime),
        BoundKind::PL => match ch.kind() {
            ChannelKind::Thermal { eta, nb } => p_lower_displaced(eta, nb, ns),
            _ => Err(Error::KindMismatch("PL needs a thermal channel".into())),
        },
        BoundKind::PLOB => {
            let which = match ch.kind() {
                ChannelKind::Thermal { .. } => ComparisonBound::PlobThermal,
                ChannelKind::Amplifier { .. } => ComparisonBound::PlobAmp,
                ChannelKind::AdditiveNoise { .. } => ComparisonBound::PlobAddNoise,
                ChannelKind::Raw => {
                    return Err(Error::KindMismatch("PLOB needs a named channel".into()))
                }
            };
            comparison::comparison_result(ch, which)
        }
        BoundKind::RMG => comparison::comparison_result(ch, ComparisonBound::Rmg),
    }
}

pub(crate) fn check_ns(ns: f64) -> Result<()> {
    if !ns.is_finite() || ns < 0.0 {
        return Err(Error::Domain(format!("NS = {ns} must be finite and ≥ 0")));
    }
    Ok(())
}

pub(crate) fn check_nb(nb: f64) -> Result<()> {
    if !nb.is_finite() || nb < 0.0 {
        return Err(Error::Domain(format!("NB = {nb} must be finite and ≥ 0")));
    }
    Ok(())
}

/// Thermal η ∈ [1/2, 1].
pub(crate) fn check_eta_half(eta: f64) -> Result<()> {
    if !(0.5..=1.0).contains(&eta) {
        return Err(Error::Domain(format!("eta = {eta} outside [1/2, 1]")));
    }
    Ok(())
}

/// Amplifier with `G ≥ 1` that is not entanglement-breaking.
pub(crate) fn check_amp(g: f64, nb: f64) -> Result<()> {
    if !(g >= 1.0) || !g.is_finite() {
        return Err(Error::Domain(format!("G = {g} must be ≥ 1")));
    }
    check_nb(nb)?;
    if (g - 1.0) * nb >= 1.0 {
        return Err(Error::Infeasible(format!(
            "(G-1)*NB >= 1: amplifier is entanglement-breaking ((G-1)*NB = {})",
            (g - 1.0) * nb
        )));
    }
    Ok(())
}

pub(crate) fn check_nbar(nbar: f64) -> Result<()> {
    if !(nbar > 0.0) || !nbar.is_finite() {
        return Err(Error::Domain(format!("nbar = {nbar} must be > 0")));
    }
    if nbar >= 1.0 {
        return Err(Error::Infeasible(format!(
            "nbar >= 1: additive-noise channel is entanglement-breaking (nbar = {nbar})"
        )));
    }
    Ok(())
}
