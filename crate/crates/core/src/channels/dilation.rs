//! Covariance-level dilations of thermal and amplifier channels, the
//! approximate degrading map, and the channel that simulates
//! degrading ∘ channel with a noisy two-mode squeezed environment.
//!
//! Thermal channel of transmissivity η: beamsplitter `B(η)` on `(A, E′)`
//! with `E′E₁` in `TMS(N_B)`, giving `(B, E₂)`. The degrading map mixes `B`
//! with `F` of a fresh `TMS(N_B)_{FE′₁}` on `B′((1−η)/η)`, giving
//! `(E′₂, G)`. The amplifier replaces both beamsplitters by squeezers of
//! gain `G` and `(2G−1)/G`; there `E′₂` leaves the second port.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::gaussian_core::{
    beamsplitter_symplectic, tms_state, two_mode_squeezer_symplectic, BeamsplitterKind,
    GaussianState, SymplecticMatrix,
};

use super::{ChannelKind, PhaseInsensitiveChannel};

#[derive(Debug, Clone, Copy)]
enum Family {
    Thermal { eta: f64, nb: f64 },
    Amplifier { g: f64, nb: f64 },
}

impl Family {
    fn of(ch: &PhaseInsensitiveChannel) -> Result<Self> {
        match ch.kind() {
            ChannelKind::Thermal { eta, nb } => Ok(Self::Thermal { eta, nb }),
            ChannelKind::Amplifier { g, nb } => Ok(Self::Amplifier { g, nb }),
            _ => Err(Error::KindMismatch(
                "dilations are defined for thermal and amplifier channels".into(),
            )),
        }
    }

    fn nb(self) -> f64 {
        match self {
            Self::Thermal { nb, .. } | Self::Amplifier { nb, .. } => nb,
        }
    }

    /// The `η` or `G` that parametrizes ω.
    fn x(self) -> f64 {
        match self {
            Self::Thermal { eta, .. } => eta,
            Self::Amplifier { g, .. } => g,
        }
    }

    fn channel_unitary(self) -> Result<SymplecticMatrix> {
        match self {
            Self::Thermal { eta, .. } => beamsplitter_symplectic(BeamsplitterKind::B, eta),
            Self::Amplifier { g, .. } => two_mode_squeezer_symplectic(g),
        }
    }

    fn degrading_unitary(self) -> Result<SymplecticMatrix> {
        match self {
            Self::Thermal { eta, .. } => {
                if eta < 0.5 {
                    return Err(Error::Domain(format!(
                        "degrading map needs eta >= 1/2, got {eta}"
                    )));
                }
                beamsplitter_symplectic(BeamsplitterKind::BPrime, (1.0 - eta) / eta)
            }
            Self::Amplifier { g, .. } => two_mode_squeezer_symplectic((2.0 * g - 1.0) / g),
        }
    }
}

/// Noisy two-mode squeezed state ω: diagonal `2N_B+1`, q-block off-diagonal
/// `2√(N_B(N_B+1)(2x−1))/x`, p-block off-diagonal negated. `x` is η for
/// thermal channels and G for amplifiers.
pub fn noisy_tms_state(x: f64, nb: f64) -> Result<GaussianState> {
    if !(x >= 0.5) || !x.is_finite() || !(nb >= 0.0) || !nb.is_finite() {
        return Err(Error::Domain(format!(
            "noisy TMS needs x >= 1/2, NB >= 0; got {x}, {nb}"
        )));
    }
    let c = 2.0 * (nb * (nb + 1.0) * (2.0 * x - 1.0)).sqrt() / x;
    GaussianState::symmetric_two_mode(2.0 * nb + 1.0, c)
}

/// Output of the full degrading construction.
///
/// Modes are the input's reference modes followed by
/// `(E′₂, E₂, E₁, G, E′₁)`.
#[derive(Debug, Clone)]
pub struct Dilation {
    pub state: GaussianState,
    pub refs: usize,
}

impl Dilation {
    pub fn e2_prime(&self) -> usize {
        self.refs
    }

    pub fn e2(&self) -> usize {
        self.refs + 1
    }

    pub fn e1(&self) -> usize {
        self.refs + 2
    }

    pub fn g(&self) -> usize {
        self.refs + 3
    }

    pub fn e1_prime(&self) -> usize {
        self.refs + 4
    }
}

fn channel_input_mode(input: &GaussianState) -> usize {
    input.modes() - 1
}

/// Stinespring dilation. `input`'s last mode is the channel input `A`, all
/// earlier modes are references. Output modes: references, then `(B, E₂, E₁)`.
pub fn stinespring_output(
    ch: &PhaseInsensitiveChannel,
    input: &GaussianState,
) -> Result<GaussianState> {
    let fam = Family::of(ch)?;
    let a = channel_input_mode(input);
    let joint = input.tensor(&tms_state(fam.nb())?);
    let n = joint.modes();
    joint.transform(&fam.channel_unitary()?.embed(&[a, a + 1], n)?)
}

/// Channel dilation followed by the degrading map. See [`Dilation`].
pub fn degrading_dilation(ch: &PhaseInsensitiveChannel, input: &GaussianState) -> Result<Dilation> {
    let fam = Family::of(ch)?;
    let refs = channel_input_mode(input);
    let after = stinespring_output(ch, input)?;
    // Modes: refs | B E₂ E₁ | F E′₁
    let joint = after.tensor(&tms_state(fam.nb())?);
    let n = joint.modes();
    let (b, f) = (refs, refs + 3);
    let out = joint.transform(&fam.degrading_unitary()?.embed(&[b, f], n)?)?;
    let mut order: Vec<usize> = (0..refs).collect();
    match fam {
        // Beamsplitter: B → E′₂, F → G.
        Family::Thermal { .. } => order.extend([b, b + 1, b + 2, f, f + 1]),
        // Squeezer: B → G (first port), F → E′₂ (second port).
        Family::Amplifier { .. } => order.extend([f, b + 1, b + 2, b, f + 1]),
    }
    Ok(Dilation {
        state: out.reduce(&order)?,
        refs,
    })
}

/// Simulating channel: the channel's own unitary with ω in place of
/// `TMS(N_B)` on `(E′, E₁)`, tracing out `B`. Output modes: references,
/// then `(E₂, E₁)`.
pub fn simulating_output(
    ch: &PhaseInsensitiveChannel,
    input: &GaussianState,
) -> Result<GaussianState> {
    let fam = Family::of(ch)?;
    let a = channel_input_mode(input);
    let joint = input.tensor(&noisy_tms_state(fam.x(), fam.nb())?);
    let n = joint.modes();
    let out = joint.transform(&fam.channel_unitary()?.embed(&[a, a + 1], n)?)?;
    let mut keep: Vec<usize> = (0..a).collect();
    keep.extend([a + 1, a + 2]);
    out.reduce(&keep)
}

/// Both sides of the degrading/simulating identity: references plus
/// `(E′₂, E′₁)` from the degrading construction, and references plus
/// `(E₂, E₁)` from the simulating channel.
pub fn degrading_simulation_states(
    ch: &PhaseInsensitiveChannel,
    input: &GaussianState,
) -> Result<(GaussianState, GaussianState)> {
    let dil = degrading_dilation(ch, input)?;
    let mut keep: Vec<usize> = (0..dil.refs).collect();
    keep.extend([dil.e2_prime(), dil.e1_prime()]);
    let degraded = dil.state.reduce(&keep)?;
    Ok((degraded, simulating_output(ch, input)?))
}

/// Two-mode `(R, A)` state whose q-block is `q` and whose p-block is `q⁻¹`
/// (a pure state, valid for every positive-definite `q`).
fn input_from_qblock(q: &DMatrix<f64>) -> Result<GaussianState> {
    if q.shape() != (2, 2) {
        return Err(Error::Dimension(format!(
            "input q-block is {:?}, want 2×2",
            q.shape()
        )));
    }
    let sym = (q[(0, 1)] - q[(1, 0)]).abs();
    let det = q[(0, 0)] * q[(1, 1)] - q[(0, 1)] * q[(1, 0)];
    if sym > 1e-12 * q.amax().max(1.0) || !(q[(0, 0)] > 0.0) || !(det > 0.0) {
        return Err(Error::InvalidState(
            "input q-block must be symmetric positive definite".into(),
        ));
    }
    let p = q
        .clone()
        .try_inverse()
        .ok_or_else(|| Error::InvalidState("singular input q-block".into()))?;
    let mut v = DMatrix::zeros(4, 4);
    v.view_mut((0, 0), (2, 2)).copy_from(q);
    v.view_mut((2, 2), (2, 2)).copy_from(&p);
    GaussianState::new(v, DVector::zeros(4))
}

/// Position blocks of `(R, E′₂, E′₁)` from the degrading construction and
/// of `(R, E₂, E₁)` from the simulating channel for a thermal channel,
/// given the q-block of the input `(R, A)`.
pub fn degrading_simulation_check(
    eta: f64,
    nb: f64,
    input_qblock: &DMatrix<f64>,
) -> Result<(DMatrix<f64>, DMatrix<f64>)> {
    if !(0.5..=1.0).contains(&eta) {
        return Err(Error::Domain(format!("eta = {eta} outside [1/2, 1]")));
    }
    let ch = PhaseInsensitiveChannel::thermal(eta, nb)?;
    let (a, b) = degrading_simulation_states(&ch, &input_from_qblock(input_qblock)?)?;
    Ok((a.q_block(), b.q_block()))
}
