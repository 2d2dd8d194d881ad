//! Unconstrained comparison bounds and the `Q_U1 − Q_L` gap.

use std::f64::consts::LN_2;

use serde::Serialize;

use crate::channels::{ChannelKind, PhaseInsensitiveChannel};
use crate::error::{Error, Result};
use crate::gaussian_core::g_nats;

use super::lower::ic_thermal_nats;
use super::upper::qu1_nats;
use super::{check_eta_half, check_nb, check_ns, BoundKind, BoundParams, BoundResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ComparisonBound {
    /// `−log₂((1−η)η^{N_B}) − g(N_B)`.
    PlobThermal,
    /// `log₂(G^{N_B+1}/(G−1)) − g(N_B)`.
    PlobAmp,
    /// `(n̄−1)/ln 2 + log₂(1/n̄)`.
    PlobAddNoise,
    /// `log₂((η − (1−η)N_B)/((1−η)(N_B+1)))`, clamped at 0.
    Rmg,
}

impl ComparisonBound {
    fn kind(self) -> BoundKind {
        match self {
            Self::Rmg => BoundKind::RMG,
            _ => BoundKind::PLOB,
        }
    }
}

fn wrong_kind(which: ComparisonBound, ch: &PhaseInsensitiveChannel) -> Error {
    Error::KindMismatch(format!("{which:?} is not defined for {:?}", ch.kind()))
}

pub(crate) fn comparison_result(
    ch: &PhaseInsensitiveChannel,
    which: ComparisonBound,
) -> Result<BoundResult> {
    let raw_nats = match (which, ch.kind()) {
        (ComparisonBound::PlobThermal, ChannelKind::Thermal { eta, nb }) => {
            check_nb(nb)?;
            if !(eta > 0.0 && eta < 1.0) {
                return Err(Error::Domain(format!(
                    "PLOB thermal needs eta in (0, 1), got {eta}"
                )));
            }
            -(-eta).ln_1p() - nb * eta.ln() - g_nats(nb)?
        }
        (ComparisonBound::PlobAmp, ChannelKind::Amplifier { g, nb }) => {
            check_nb(nb)?;
            if !(g > 1.0) {
                return Err(Error::Domain(format!(
                    "PLOB amplifier needs G > 1, got {g}"
                )));
            }
            (nb + 1.0) * g.ln() - (g - 1.0).ln() - g_nats(nb)?
        }
        (ComparisonBound::PlobAddNoise, ChannelKind::AdditiveNoise { nbar }) => {
            if !(nbar > 0.0) || !nbar.is_finite() {
                return Err(Error::Domain(format!("nbar = {nbar} must be > 0")));
            }
            nbar - 1.0 - nbar.ln()
        }
        (ComparisonBound::Rmg, ChannelKind::Thermal { eta, nb }) => {
            check_nb(nb)?;
            if !(eta > 0.0 && eta < 1.0) {
                return Err(Error::Domain(format!("RMG needs eta in (0, 1), got {eta}")));
            }
            let ep = eta - (1.0 - eta) * nb;
            if ep <= 0.0 {
                return Err(Error::Infeasible(format!(
                    "eta <= (1-eta)*NB: RMG undefined (eta = {eta}, NB = {nb})"
                )));
            }
            (ep / ((1.0 - eta) * (nb + 1.0))).ln()
        }
        _ => return Err(wrong_kind(which, ch)),
    };
    Ok(BoundResult::from_nats(
        which.kind(),
        raw_nats,
        None,
        BoundParams::new(ch.kind(), None),
    ))
}

/// Comparison bound in bits (`RMG` clamped at 0, PLOB variants raw).
pub fn comparison_bounds(ch: &PhaseInsensitiveChannel, which: ComparisonBound) -> Result<f64> {
    comparison_result(ch, which).map(|r| r.value_bits)
}

/// `Q_U1 − Q_L` for the thermal channel in bits, both unclamped.
pub fn gap_qu1_ql(eta: f64, nb: f64, ns: f64) -> Result<f64> {
    check_eta_half(eta)?;
    check_nb(nb)?;
    check_ns(ns)?;
    let ch = PhaseInsensitiveChannel::thermal(eta, nb)?;
    Ok((qu1_nats(&ch, ns)? - ic_thermal_nats(eta, nb, ns)?) / LN_2)
}
