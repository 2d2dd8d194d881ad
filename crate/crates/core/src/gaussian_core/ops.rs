//! Two-mode Gaussian unitaries and general Gaussian channels on covariances.

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use super::state::{embed, omega, GaussianState, SymplecticMatrix};

/// Eigenvalue floor for the channel complete-positivity test.
pub const PSD_FLOOR: f64 = -1e-8;

/// Sign convention of a beamsplitter.
///
/// `B` maps `(a, e)` to `(√t a − √(1−t) e, √(1−t) a + √t e)`;
/// `BPrime` maps `(c, d)` to `(√t c + √(1−t) d, −√(1−t) c + √t d)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BeamsplitterKind {
    B,
    BPrime,
}

fn two_mode_symplectic(q: [[f64; 2]; 2], p: [[f64; 2]; 2]) -> Result<SymplecticMatrix> {
    let mut s = DMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            s[(i, j)] = q[i][j];
            s[(i + 2, j + 2)] = p[i][j];
        }
    }
    SymplecticMatrix::new(s)
}

/// Beamsplitter of transmissivity `t` acting identically on q and p.
///
/// The degrading beamsplitter for a thermal channel of transmissivity η is
/// `BPrime` with `t = (1−η)/η`.
pub fn beamsplitter_symplectic(kind: BeamsplitterKind, t: f64) -> Result<SymplecticMatrix> {
    if !(0.0..=1.0).contains(&t) {
        return Err(Error::Domain(format!("transmissivity {t} outside [0,1]")));
    }
    let (c, s) = (t.sqrt(), (1.0 - t).sqrt());
    let m = match kind {
        BeamsplitterKind::B => [[c, -s], [s, c]],
        BeamsplitterKind::BPrime => [[c, s], [-s, c]],
    };
    two_mode_symplectic(m, m)
}

/// Two-mode squeezer of gain `g`: `b = √G a + √(G−1) e†`, `e' = √(G−1) a† + √G e`.
pub fn two_mode_squeezer_symplectic(g: f64) -> Result<SymplecticMatrix> {
    if !(g >= 1.0) || !g.is_finite() {
        return Err(Error::Domain(format!("squeezer gain {g} must be ≥ 1")));
    }
    let (c, s) = (g.sqrt(), (g - 1.0).sqrt());
    two_mode_symplectic([[c, s], [s, c]], [[c, -s], [-s, c]])
}

/// Gaussian channel `μ ↦ Xμ + d`, `V ↦ XVXᵀ + Y` from `l` input modes to `m`
/// output modes.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianChannel {
    x: DMatrix<f64>,
    y: DMatrix<f64>,
    d: DVector<f64>,
}

impl GaussianChannel {
    /// Checks shapes and `Y + iΩ − iXΩXᵀ ⪰ 0`.
    pub fn new(x: DMatrix<f64>, y: DMatrix<f64>, d: DVector<f64>) -> Result<Self> {
        let (rows, cols) = x.shape();
        if rows % 2 != 0 || cols % 2 != 0 || rows == 0 || cols == 0 {
            return Err(Error::Dimension(format!("X is {rows}×{cols}")));
        }
        if y.shape() != (rows, rows) || d.len() != rows {
            return Err(Error::Dimension(format!(
                "Y is {:?} and d has length {} for X of {rows}×{cols}",
                y.shape(),
                d.len()
            )));
        }
        let asym = (&y - y.transpose()).amax();
        if asym > 1e-12 * y.amax().max(1.0) {
            return Err(Error::InvalidChannel(format!("Y asymmetric by {asym:e}")));
        }
        let lowest = cp_min_eigenvalue(&x, &y)?;
        if lowest < PSD_FLOOR {
            return Err(Error::InvalidChannel(format!(
                "Y + iΩ − iXΩXᵀ has eigenvalue {lowest:e}"
            )));
        }
        Ok(Self { x, y, d })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            x: DMatrix::identity(2 * m, 2 * m),
            y: DMatrix::zeros(2 * m, 2 * m),
            d: DVector::zeros(2 * m),
        }
    }

    /// Phase-insensitive single-mode channel `X = √τ I₂`, `Y = ν I₂`.
    pub fn phase_insensitive(tau: f64, nu: f64) -> Result<Self> {
        if !(tau >= 0.0) || !(nu >= 0.0) {
            return Err(Error::Domain(format!("tau={tau}, nu={nu} must be ≥ 0")));
        }
        Self::new(
            DMatrix::identity(2, 2) * tau.sqrt(),
            DMatrix::identity(2, 2) * nu,
            DVector::zeros(2),
        )
    }

    pub fn x(&self) -> &DMatrix<f64> {
        &self.x
    }

    pub fn y(&self) -> &DMatrix<f64> {
        &self.y
    }

    pub fn d(&self) -> &DVector<f64> {
        &self.d
    }

    pub fn input_modes(&self) -> usize {
        self.x.ncols() / 2
    }

    pub fn output_modes(&self) -> usize {
        self.x.nrows() / 2
    }

    /// Applies the channel to every mode of `state`.
    pub fn apply(&self, state: &GaussianState) -> Result<GaussianState> {
        if state.modes() != self.input_modes() {
            return Err(Error::Dimension(format!(
                "{}-mode channel on a {}-mode state",
                self.input_modes(),
                state.modes()
            )));
        }
        let cov = &self.x * state.cov() * self.x.transpose() + &self.y;
        let mean = &self.x * state.mean() + &self.d;
        GaussianState::from_parts_unchecked(cov, mean)
    }

    /// Applies a mode-preserving channel to `targets`, identity elsewhere.
    pub fn apply_on(&self, state: &GaussianState, targets: &[usize]) -> Result<GaussianState> {
        if self.input_modes() != self.output_modes() || targets.len() != self.input_modes() {
            return Err(Error::Dimension(format!(
                "channel {}→{} modes cannot act on targets {targets:?}",
                self.input_modes(),
                self.output_modes()
            )));
        }
        let n = state.modes();
        if targets.iter().any(|&t| t >= n) {
            return Err(Error::Dimension(format!(
                "targets {targets:?} out of range for {n} modes"
            )));
        }
        let x = embed(&self.x, targets, n, 1.0);
        let y = embed(&self.y, targets, n, 0.0);
        let mut d = DVector::zeros(2 * n);
        let idx = super::state::quadrature_indices(targets, n);
        for (a, &g) in idx.iter().enumerate() {
            d[g] = self.d[a];
        }
        let cov = &x * state.cov() * x.transpose() + y;
        let mean = x * state.mean() + d;
        GaussianState::from_parts_unchecked(cov, mean)
    }

    /// `next ∘ self`: `(X₂X₁, X₂Y₁X₂ᵀ + Y₂, X₂d₁ + d₂)`.
    pub fn then(&self, next: &Self) -> Result<Self> {
        if next.input_modes() != self.output_modes() {
            return Err(Error::Dimension(
                "channel composition shape mismatch".into(),
            ));
        }
        Ok(Self {
            x: &next.x * &self.x,
            y: &next.x * &self.y * next.x.transpose() + &next.y,
            d: &next.x * &self.d + &next.d,
        })
    }
}

/// Smallest eigenvalue of the Hermitian matrix `Y + i(Ω_m − XΩ_lXᵀ)`.
fn cp_min_eigenvalue(x: &DMatrix<f64>, y: &DMatrix<f64>) -> Result<f64> {
    let (rows, cols) = x.shape();
    let anti = omega(rows / 2) - x * omega(cols / 2) * x.transpose();
    let h = DMatrix::from_fn(rows, rows, |i, j| {
        Complex::new(
            0.5 * (y[(i, j)] + y[(j, i)]),
            0.5 * (anti[(i, j)] - anti[(j, i)]),
        )
    });
    let eig = SymmetricEigen::try_new(h, 1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("channel validity eigensolve did not converge".into()))?;
    Ok(eig.eigenvalues.min())
}

/// Applies `(X, Y, d)` to `state`, validating the channel first.
pub fn apply_gaussian_channel(
    x: &DMatrix<f64>,
    y: &DMatrix<f64>,
    d: &DVector<f64>,
    state: &GaussianState,
) -> Result<GaussianState> {
    GaussianChannel::new(x.clone(), y.clone(), d.clone())?.apply(state)
}
