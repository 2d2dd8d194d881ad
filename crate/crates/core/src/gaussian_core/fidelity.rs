//! Uhlmann fidelity `F = ‖√ρ√σ‖₁²` between Gaussian states.
//!
//! Mixed states use the auxiliary-matrix formula of Banchi, Braunstein and
//! Pirandola (PRL 115, 260501). In units where vacuum is `I/2`:
//!
//! ```text
//! √F      = F_tot · det(V₁+V₂)^{-1/4} · exp(−¼ δᵀ(V₁+V₂)⁻¹δ)
//! F_tot⁴  = det(V_aux) · Π_λ 2(1 + √(1 + λ⁻²/4)),   λ ∈ spec(V_aux Ω)
//! V_aux   = Ωᵀ (V₁+V₂)⁻¹ (Ω/4 + V₂ Ω V₁)
//! ```
//!
//! The square root in `F_tot` has infinite slope at pure states, so a
//! rounding-level impurity costs about eight digits. When either state is
//! pure to within [`PURE_TOL`] the overlap `⟨ψ|σ|ψ⟩` is used instead, which
//! in vacuum = I units is `2^m exp(−δᵀ(V₁+V₂)⁻¹δ) / √det(V₁+V₂)`.

use crate::error::{Error, Result};
use nalgebra::{Complex, DMatrix};

use super::state::{omega, GaussianState};

/// A state whose largest symplectic eigenvalue is within this of 1 is pure.
pub const PURE_TOL: f64 = 1e-12;

fn is_pure(state: &GaussianState) -> Result<bool> {
    let nus = state.symplectic_eigenvalues()?.nus;
    Ok(nus.last().is_some_and(|&top| top - 1.0 <= PURE_TOL))
}

/// Uhlmann fidelity between two Gaussian states with the same mode count.
pub fn fidelity(a: &GaussianState, b: &GaussianState) -> Result<f64> {
    if a.modes() != b.modes() {
        return Err(Error::Dimension(format!(
            "fidelity between {}- and {}-mode states",
            a.modes(),
            b.modes()
        )));
    }
    let m = a.modes();
    let sum = a.cov() + b.cov();
    let chol = sum
        .clone()
        .cholesky()
        .ok_or_else(|| Error::Numerical("V₁+V₂ is not positive definite".into()))?;
    let delta = a.mean() - b.mean();
    let displacement = (-delta.dot(&chol.solve(&delta))).exp();
    let det_sum = chol.determinant();
    if !det_sum.is_finite() || det_sum <= 0.0 {
        return Err(Error::Numerical(format!("det(V₁+V₂) = {det_sum}")));
    }

    if is_pure(a)? || is_pure(b)? {
        let f = 2f64.powi(m as i32) * displacement / det_sum.sqrt();
        return Ok(f.clamp(0.0, 1.0));
    }

    // Switch to vacuum = I/2 units.
    let v1 = a.cov() * 0.5;
    let v2 = b.cov() * 0.5;
    let o = omega(m);
    let half_sum = &sum * 0.5;
    let rhs = &o * 0.25 + &v2 * &o * &v1;
    let solved = half_sum
        .cholesky()
        .ok_or_else(|| Error::Numerical("V₁+V₂ is not positive definite".into()))?
        .solve(&rhs);
    let v_aux: DMatrix<f64> = o.transpose() * solved;
    let det_aux = v_aux.determinant();
    let schur = (&v_aux * &o)
        .try_schur(1e-15, 10_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?;
    let mut prod = Complex::new(det_aux, 0.0);
    for lam in schur.complex_eigenvalues().iter() {
        let inner = Complex::new(1.0, 0.0) + (lam * lam).inv() * 0.25;
        prod *= (Complex::new(1.0, 0.0) + inner.sqrt()) * 2.0;
    }
    if !prod.re.is_finite() || prod.re <= 0.0 {
        return Err(Error::Numerical(format!("F_tot⁴ = {prod}")));
    }
    // F = F_tot² / √det((V₁+V₂)/2) in I/2 units.
    let det_half = det_sum / 2f64.powi(2 * m as i32);
    let f = prod.re.sqrt() / det_half.sqrt() * displacement;
    Ok(f.clamp(0.0, 1.0))
}

/// Fidelity restricted to two-mode states.
pub fn two_mode_fidelity(a: &GaussianState, b: &GaussianState) -> Result<f64> {
    if a.modes() != 2 || b.modes() != 2 {
        return Err(Error::Dimension(format!(
            "two_mode_fidelity needs 2-mode states, got {} and {}",
            a.modes(),
            b.modes()
        )));
    }
    fidelity(a, b)
}
