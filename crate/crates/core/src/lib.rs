//! Upper and lower bounds on the energy-constrained quantum and private
//! capacities of phase-insensitive bosonic Gaussian channels (thermal,
//! amplifier, additive noise), built on a small Gaussian-state core that
//! doubles as the numerical oracle for every closed form.

// `!(x >= 0.0)` style checks are deliberate: they reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod bounds;
pub mod channels;
pub mod error;
pub mod gaussian_core;
pub mod optimize;
pub mod verify;

pub use bounds::{evaluate, BoundKind, BoundParams, BoundResult};
pub use channels::{ChannelKind, PhaseInsensitiveChannel};
pub use error::{Error, Result};
pub use gaussian_core::{GaussianState, SymplecticMatrix};
