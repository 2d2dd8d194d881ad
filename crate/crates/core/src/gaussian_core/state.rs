//! Covariance-matrix representation of Gaussian states.
//!
//! Convention: vacuum covariance is the identity and quadratures are stored
//! in block order `(q1..qm, p1..pm)`, so `Ω = [[0, I], [−I, 0]]`. The
//! interleaved order `(q1, p1, q2, p2, ...)` is reachable through
//! [`to_interleaved`] / [`from_interleaved`].

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix, DVector, SymmetricEigen};

use super::entropy::g_nats;

/// Tolerance on the symmetry of a covariance matrix (scaled by its largest entry).
pub const SYMMETRY_TOL: f64 = 1e-12;
/// Symplectic eigenvalues may undershoot 1 by at most this much.
pub const UNCERTAINTY_TOL: f64 = 1e-9;
/// Tolerance on `SΩSᵀ = Ω`.
pub const SYMPLECTIC_TOL: f64 = 1e-10;

const EIG_EPS: f64 = 1e-15;
const EIG_MAX_ITER: usize = 10_000;

/// Symplectic form in block ordering for `m` modes.
pub fn omega(m: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        o[(i, m + i)] = 1.0;
        o[(m + i, i)] = -1.0;
    }
    o
}

/// Symplectic form in interleaved ordering, `[[0,1],[−1,0]] ⊗ I_m` after the permutation.
pub fn interleaved_omega(m: usize) -> DMatrix<f64> {
    let mut o = DMatrix::zeros(2 * m, 2 * m);
    for i in 0..m {
        o[(2 * i, 2 * i + 1)] = 1.0;
        o[(2 * i + 1, 2 * i)] = -1.0;
    }
    o
}

/// Position of block index `i` in the interleaved ordering.
fn interleaved_index(i: usize, m: usize) -> usize {
    if i < m {
        2 * i
    } else {
        2 * (i - m) + 1
    }
}

/// Reorders a block-ordered `2m×2m` matrix into interleaved ordering.
pub fn to_interleaved(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let m = n / 2;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(interleaved_index(i, m), interleaved_index(j, m))] = a[(i, j)];
        }
    }
    out
}

/// Inverse of [`to_interleaved`].
pub fn from_interleaved(a: &DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let m = n / 2;
    let mut out = DMatrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            out[(i, j)] = a[(interleaved_index(i, m), interleaved_index(j, m))];
        }
    }
    out
}

/// Global quadrature indices of the listed modes: all q's, then all p's.
pub(crate) fn quadrature_indices(modes: &[usize], total: usize) -> Vec<usize> {
    modes
        .iter()
        .copied()
        .chain(modes.iter().map(|&k| k + total))
        .collect()
}

/// Embeds a `2k×2k` block-ordered matrix acting on `targets` into a
/// `2n×2n` matrix, with `fill` on the diagonal of untouched quadratures.
pub(crate) fn embed(local: &DMatrix<f64>, targets: &[usize], n: usize, fill: f64) -> DMatrix<f64> {
    let idx = quadrature_indices(targets, n);
    let mut out = DMatrix::identity(2 * n, 2 * n) * fill;
    for (a, &ga) in idx.iter().enumerate() {
        for (b, &gb) in idx.iter().enumerate() {
            out[(ga, gb)] = local[(a, b)];
        }
    }
    out
}

fn check_square_even(a: &DMatrix<f64>, what: &str) -> Result<usize> {
    if a.nrows() != a.ncols() || !a.nrows().is_multiple_of(2) || a.nrows() == 0 {
        return Err(Error::Dimension(format!(
            "{what} must be a non-empty 2m×2m matrix, got {}×{}",
            a.nrows(),
            a.ncols()
        )));
    }
    Ok(a.nrows() / 2)
}

/// Real `2m×2m` matrix with `SΩSᵀ = Ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct SymplecticMatrix {
    s: DMatrix<f64>,
}

impl SymplecticMatrix {
    pub fn new(s: DMatrix<f64>) -> Result<Self> {
        let m = check_square_even(&s, "symplectic matrix")?;
        let o = omega(m);
        let residual = (&s * &o * s.transpose() - &o).amax();
        if residual.is_nan() || residual > SYMPLECTIC_TOL {
            return Err(Error::NotSymplectic(residual));
        }
        Ok(Self { s })
    }

    pub fn identity(m: usize) -> Self {
        Self {
            s: DMatrix::identity(2 * m, 2 * m),
        }
    }

    pub fn modes(&self) -> usize {
        self.s.nrows() / 2
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.s
    }

    /// Lifts this transformation onto `targets` of an `n`-mode system.
    pub fn embed(&self, targets: &[usize], n: usize) -> Result<Self> {
        if targets.len() != self.modes() || targets.iter().any(|&t| t >= n) {
            return Err(Error::Dimension(format!(
                "cannot embed a {}-mode transformation at {targets:?} of {n} modes",
                self.modes()
            )));
        }
        let mut sorted = targets.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != targets.len() {
            return Err(Error::Dimension(format!(
                "repeated target modes {targets:?}"
            )));
        }
        Ok(Self {
            s: embed(&self.s, targets, n, 1.0),
        })
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        if self.modes() != other.modes() {
            return Err(Error::Dimension("mode counts differ".into()));
        }
        Ok(Self {
            s: &self.s * &other.s,
        })
    }
}

/// Symplectic spectrum, ascending.
#[derive(Debug, Clone, PartialEq)]
pub struct EntropySpectrum {
    pub nus: Vec<f64>,
}

impl EntropySpectrum {
    /// `Σ g((ν−1)/2)` in nats. Undershoot below 1 allowed by the state
    /// invariant is treated as exactly pure.
    pub fn entropy_nats(&self) -> Result<f64> {
        self.nus
            .iter()
            .map(|&nu| g_nats(((nu - 1.0) / 2.0).max(0.0)))
            .sum()
    }

    pub fn entropy_bits(&self) -> Result<f64> {
        self.entropy_nats().map(|v| v / std::f64::consts::LN_2)
    }
}

/// Gaussian state: mean vector and covariance matrix in block ordering.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussianState {
    mean: DVector<f64>,
    cov: DMatrix<f64>,
}

impl GaussianState {
    /// Validates symmetry and the uncertainty principle; the stored
    /// covariance is symmetrized.
    pub fn new(cov: DMatrix<f64>, mean: DVector<f64>) -> Result<Self> {
        let state = Self::unchecked(cov, mean)?;
        let nus = symplectic_spectrum(&state.cov)?;
        if let Some(&lo) = nus.first() {
            if lo < 1.0 - UNCERTAINTY_TOL {
                return Err(Error::InvalidState(format!(
                    "smallest symplectic eigenvalue {lo} < 1"
                )));
            }
        }
        Ok(state)
    }

    /// Zero-mean state.
    pub fn from_cov(cov: DMatrix<f64>) -> Result<Self> {
        let n = cov.nrows();
        Self::new(cov, DVector::zeros(n))
    }

    /// Shape and symmetry checks only.
    fn unchecked(cov: DMatrix<f64>, mean: DVector<f64>) -> Result<Self> {
        check_square_even(&cov, "covariance")?;
        if mean.len() != cov.nrows() {
            return Err(Error::Dimension(format!(
                "mean has length {}, covariance is {}×{}",
                mean.len(),
                cov.nrows(),
                cov.ncols()
            )));
        }
        if cov.iter().chain(mean.iter()).any(|v| !v.is_finite()) {
            return Err(Error::InvalidState("non-finite entry".into()));
        }
        let asym = (&cov - cov.transpose()).amax();
        if asym > SYMMETRY_TOL * cov.amax().max(1.0) {
            return Err(Error::InvalidState(format!(
                "covariance asymmetric by {asym:e}"
            )));
        }
        let cov = (&cov + cov.transpose()) * 0.5;
        Ok(Self { mean, cov })
    }

    pub fn vacuum(m: usize) -> Self {
        Self {
            mean: DVector::zeros(2 * m),
            cov: DMatrix::identity(2 * m, 2 * m),
        }
    }

    /// Single-mode thermal state with mean photon number `n`.
    pub fn thermal(n: f64) -> Result<Self> {
        if !(n >= 0.0) || !n.is_finite() {
            return Err(Error::Domain(format!(
                "thermal photon number {n} must be ≥ 0"
            )));
        }
        Ok(Self {
            mean: DVector::zeros(2),
            cov: DMatrix::identity(2, 2) * (2.0 * n + 1.0),
        })
    }

    /// Two-mode state with q-block `[[a, c], [c, a]]` and p-block `[[a, −c], [−c, a]]`.
    pub fn symmetric_two_mode(a: f64, c: f64) -> Result<Self> {
        let mut v = DMatrix::zeros(4, 4);
        v[(0, 0)] = a;
        v[(1, 1)] = a;
        v[(2, 2)] = a;
        v[(3, 3)] = a;
        v[(0, 1)] = c;
        v[(1, 0)] = c;
        v[(2, 3)] = -c;
        v[(3, 2)] = -c;
        Self::from_cov(v)
    }

    pub fn modes(&self) -> usize {
        self.cov.nrows() / 2
    }

    pub fn cov(&self) -> &DMatrix<f64> {
        &self.cov
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    /// Position-quadrature block.
    pub fn q_block(&self) -> DMatrix<f64> {
        let m = self.modes();
        self.cov.view((0, 0), (m, m)).into_owned()
    }

    /// Momentum-quadrature block.
    pub fn p_block(&self) -> DMatrix<f64> {
        let m = self.modes();
        self.cov.view((m, m), (m, m)).into_owned()
    }

    /// Reduced state on `keep` (in the listed order).
    pub fn reduce(&self, keep: &[usize]) -> Result<Self> {
        let m = self.modes();
        if keep.is_empty() || keep.iter().any(|&k| k >= m) {
            return Err(Error::Dimension(format!(
                "cannot keep modes {keep:?} of {m}"
            )));
        }
        let idx = quadrature_indices(keep, m);
        let cov = DMatrix::from_fn(idx.len(), idx.len(), |i, j| self.cov[(idx[i], idx[j])]);
        let mean = DVector::from_fn(idx.len(), |i, _| self.mean[idx[i]]);
        Ok(Self { mean, cov })
    }

    /// `self ⊗ other`; the modes of `other` follow those of `self`.
    pub fn tensor(&self, other: &Self) -> Self {
        let (m1, m2) = (self.modes(), other.modes());
        let m = m1 + m2;
        let mut cov = DMatrix::zeros(2 * m, 2 * m);
        let mut mean = DVector::zeros(2 * m);
        let i1 = quadrature_indices(&(0..m1).collect::<Vec<_>>(), m);
        let i2 = quadrature_indices(&(m1..m).collect::<Vec<_>>(), m);
        for (a, &ga) in i1.iter().enumerate() {
            mean[ga] = self.mean[a];
            for (b, &gb) in i1.iter().enumerate() {
                cov[(ga, gb)] = self.cov[(a, b)];
            }
        }
        for (a, &ga) in i2.iter().enumerate() {
            mean[ga] = other.mean[a];
            for (b, &gb) in i2.iter().enumerate() {
                cov[(ga, gb)] = other.cov[(a, b)];
            }
        }
        Self { mean, cov }
    }

    /// Applies a Gaussian unitary: `V ↦ SVSᵀ`, `μ ↦ Sμ`.
    pub fn transform(&self, s: &SymplecticMatrix) -> Result<Self> {
        if s.modes() != self.modes() {
            return Err(Error::Dimension(format!(
                "{}-mode transformation on a {}-mode state",
                s.modes(),
                self.modes()
            )));
        }
        let m = s.matrix();
        let cov = m * &self.cov * m.transpose();
        Ok(Self {
            mean: m * &self.mean,
            cov: (&cov + cov.transpose()) * 0.5,
        })
    }

    /// Mean photon number of `mode`, including displacement.
    pub fn mean_photons(&self, mode: usize) -> f64 {
        let m = self.modes();
        let (q, p) = (mode, mode + m);
        (self.cov[(q, q)] + self.cov[(p, p)] - 2.0) / 4.0
            + (self.mean[q].powi(2) + self.mean[p].powi(2)) / 2.0
    }

    pub fn symplectic_eigenvalues(&self) -> Result<EntropySpectrum> {
        symplectic_spectrum(&self.cov).map(|nus| EntropySpectrum { nus })
    }

    /// Von Neumann entropy in bits.
    pub fn entropy(&self) -> Result<f64> {
        self.symplectic_eigenvalues()?.entropy_bits()
    }

    /// Von Neumann entropy in nats.
    pub fn entropy_nats(&self) -> Result<f64> {
        self.symplectic_eigenvalues()?.entropy_nats()
    }

    pub(crate) fn from_parts_unchecked(cov: DMatrix<f64>, mean: DVector<f64>) -> Result<Self> {
        Self::unchecked(cov, mean)
    }
}

/// Two-mode squeezed vacuum with `n` photons per mode.
pub fn tms_state(n: f64) -> Result<GaussianState> {
    if !(n >= 0.0) || !n.is_finite() {
        return Err(Error::Domain(format!("TMS photon number {n} must be ≥ 0")));
    }
    GaussianState::symmetric_two_mode(2.0 * n + 1.0, 2.0 * (n * (n + 1.0)).sqrt())
}

/// Symplectic eigenvalues of `state`, ascending.
pub fn symplectic_eigenvalues(state: &GaussianState) -> Result<EntropySpectrum> {
    state.symplectic_eigenvalues()
}

/// Entropy in bits of `state`.
pub fn gaussian_entropy(state: &GaussianState) -> Result<f64> {
    state.entropy()
}

/// Spectrum of `iVΩ` through the Hermitian matrix `i V^{1/2} Ω V^{1/2}`,
/// which is similar to it. Its eigenvalues are `±ν_k`; the `m` positive
/// ones are returned in ascending order.
pub(crate) fn symplectic_spectrum(v: &DMatrix<f64>) -> Result<Vec<f64>> {
    let m = check_square_even(v, "covariance")?;
    let eig = SymmetricEigen::try_new(v.clone(), EIG_EPS, EIG_MAX_ITER)
        .ok_or_else(|| Error::Numerical("covariance eigensolve did not converge".into()))?;
    let wmin = eig.eigenvalues.min();
    if !(wmin > 0.0) {
        return Err(Error::InvalidState(format!(
            "covariance not positive definite (eigenvalue {wmin:e})"
        )));
    }
    let sqrt_w = eig.eigenvalues.map(f64::sqrt);
    let u = &eig.eigenvectors;
    let root = u * DMatrix::from_diagonal(&sqrt_w) * u.transpose();
    let a = &root * omega(m) * &root;
    let h = DMatrix::from_fn(2 * m, 2 * m, |i, j| {
        let anti = 0.5 * (a[(i, j)] - a[(j, i)]);
        Complex::new(0.0, anti)
    });
    let heig = SymmetricEigen::try_new(h, EIG_EPS, EIG_MAX_ITER)
        .ok_or_else(|| Error::Numerical("symplectic eigensolve did not converge".into()))?;
    let mut vals: Vec<f64> = heig.eigenvalues.iter().copied().collect();
    vals.sort_by(|x, y| x.total_cmp(y));
    Ok(vals[m..].to_vec())
}

/// Moduli of the eigenvalues of the real, non-symmetric matrix `VΩ`
/// (`±iν_k`), paired and sorted ascending. Slower and less accurate near
/// pure states than [`symplectic_eigenvalues`]; kept as a second route.
pub fn symplectic_eigenvalues_general(state: &GaussianState) -> Result<Vec<f64>> {
    let m = state.modes();
    let mat = state.cov() * omega(m);
    let schur = mat
        .try_schur(EIG_EPS, EIG_MAX_ITER)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let mut moduli: Vec<f64> = schur
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    moduli.sort_by(|x, y| x.total_cmp(y));
    Ok(moduli.chunks(2).map(|c| 0.5 * (c[0] + c[1])).collect())
}
