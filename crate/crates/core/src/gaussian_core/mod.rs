//! Gaussian-state calculus on covariance matrices: entropies, symplectic
//! spectra, fidelities and channel action.

mod entropy;
mod fidelity;
mod ops;
mod state;

pub use entropy::{binary_entropy, g_entropy, g_nats, h2_nats, CLAMP};
pub use fidelity::{fidelity, two_mode_fidelity, PURE_TOL};
pub use ops::{
    apply_gaussian_channel, beamsplitter_symplectic, two_mode_squeezer_symplectic,
    BeamsplitterKind, GaussianChannel, PSD_FLOOR,
};
pub use state::{
    from_interleaved, gaussian_entropy, interleaved_omega, omega, symplectic_eigenvalues,
    symplectic_eigenvalues_general, tms_state, to_interleaved, EntropySpectrum, GaussianState,
    SymplecticMatrix, SYMMETRY_TOL, SYMPLECTIC_TOL, UNCERTAINTY_TOL,
};
