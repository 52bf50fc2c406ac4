//! Environment-induced entanglement: two oscillators that do not couple to
//! each other but both couple to a third (environment) oscillator.
//!
//! After scaling to dimensionless couplings the potential matrix is
//! K = [[1, 0, α̃], [0, 1, β̃], [α̃, β̃, k]], whose eigenvalues have the
//! closed form κ₁ = 1, κ₂‚₃ = ½(1 + k ∓ √((k−1)² + 4(α̃²+β̃²))). The sign
//! of k − (α̃²+β̃²) selects the regime; at the free-particle point κ₂ = 0
//! the reduced-state entropy of either outer oscillator diverges.

use crate::error::{Error, Result};
use crate::gaussian::{entanglement_entropy, EntropyValue, QuadraticHamiltonian, DEFAULT_ZERO_TOL};
use crate::matrix::Matrix;

/// Physical masses, frequencies and couplings of the three-oscillator system.
#[derive(Debug, Clone, Copy)]
pub struct TripartiteParams {
    /// Mass of the two outer oscillators.
    pub mass: f64,
    /// Mass of the environment oscillator.
    pub env_mass: f64,
    /// Frequency of the outer oscillators.
    pub omega: f64,
    /// Frequency of the environment oscillator.
    pub env_omega: f64,
    /// Couplings of x₁ and x₂ to the environment coordinate.
    pub alpha: f64,
    pub beta: f64,
}

impl TripartiteParams {
    pub fn new(
        mass: f64,
        env_mass: f64,
        omega: f64,
        env_omega: f64,
        alpha: f64,
        beta: f64,
    ) -> Result<Self> {
        if mass <= 0.0 || env_mass <= 0.0 || omega <= 0.0 || env_omega <= 0.0 {
            return Err(Error::Domain(
                "masses and frequencies must be positive".into(),
            ));
        }
        Ok(Self {
            mass,
            env_mass,
            omega,
            env_omega,
            alpha,
            beta,
        })
    }

    pub fn scale(&self) -> ScaledCouplings {
        let denom = (self.env_mass * self.mass).sqrt() * self.omega * self.omega;
        ScaledCouplings {
            alpha: self.alpha / denom,
            beta: self.beta / denom,
            k: (self.env_omega / self.omega).powi(2),
        }
    }
}

/// Dimensionless couplings: α̃ = α/(√(Mm)ω²), β̃ = β/(√(Mm)ω²), k = Ω²/ω².
#[derive(Debug, Clone, Copy)]
pub struct ScaledCouplings {
    pub alpha: f64,
    pub beta: f64,
    pub k: f64,
}

impl ScaledCouplings {
    pub fn new(alpha: f64, beta: f64, k: f64) -> Self {
        Self { alpha, beta, k }
    }

    pub fn coupling_sq(&self) -> f64 {
        self.alpha * self.alpha + self.beta * self.beta
    }

    /// The scaled potential matrix [[1, 0, α̃], [0, 1, β̃], [α̃, β̃, k]].
    pub fn coupling_matrix(&self, zero_tol: f64) -> Result<QuadraticHamiltonian> {
        let (a, b, k) = (self.alpha, self.beta, self.k);
        let m = Matrix::from_fn(3, 3, |i, j| match (i, j) {
            (0, 0) | (1, 1) => 1.0,
            (2, 2) => k,
            (0, 2) | (2, 0) => a,
            (1, 2) | (2, 1) => b,
            _ => 0.0,
        });
        QuadraticHamiltonian::new(m, zero_tol)
    }
}

/// Eigenvalues of the scaled potential matrix in closed form.
/// κ₁ = 1 identically; κ₂ ≤ κ₃.
pub fn kappa_closed_form(c: &ScaledCouplings) -> (f64, f64, f64) {
    let root = ((c.k - 1.0) * (c.k - 1.0) + 4.0 * c.coupling_sq()).sqrt();
    let kappa2 = 0.5 * (1.0 + c.k - root);
    let kappa3 = 0.5 * (1.0 + c.k + root);
    (1.0, kappa2, kappa3)
}

/// Regime of the three-oscillator system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegimeLabel {
    Normal,
    FreeParticle,
    Inverted,
}

#[derive(Debug, Clone, Copy)]
pub struct Regime {
    pub label: RegimeLabel,
    /// The critical eigenvalue κ₂ whose sign decides the regime.
    pub kappa2: f64,
}

/// Classify by the sign of k − (α̃² + β̃²), equivalently the sign of κ₂.
pub fn classify(c: &ScaledCouplings, zero_tol: f64) -> Regime {
    let (_, kappa2, kappa3) = kappa_closed_form(c);
    let threshold = zero_tol * kappa3.abs().max(1.0);
    let label = if kappa2.abs() <= threshold {
        RegimeLabel::FreeParticle
    } else if kappa2 < 0.0 {
        RegimeLabel::Inverted
    } else {
        RegimeLabel::Normal
    };
    Regime { label, kappa2 }
}

/// Orthonormal normal-coordinate rows at the free-particle point
/// k = α̃² + β̃², ordered to match the eigenvalues (1, 0, 1 + α̃² + β̃²).
pub fn normal_coordinates(alpha: f64, beta: f64) -> Result<Matrix> {
    let c = alpha * alpha + beta * beta;
    if c == 0.0 {
        return Err(Error::DegenerateCoupling);
    }
    let s1 = c.sqrt();
    let s2 = (1.0 + c).sqrt();
    let s3 = (c * (1.0 + c)).sqrt();
    let rows = [
        [-beta / s1, alpha / s1, 0.0],
        [-alpha / s2, -beta / s2, 1.0 / s2],
        [alpha / s3, beta / s3, c / s3],
    ];
    Ok(Matrix::from_fn(3, 3, |i, j| rows[i][j]))
}

/// Entropy of the reduced state of x₁ (the complement {x₂, y} is traced).
///
/// Finite in the normal regime, the flagged zero-mode sentinel at the
/// free-particle point, and an error in the inverted regime.
pub fn entropy_x1(c: &ScaledCouplings, zero_tol: f64) -> Result<EntropyValue> {
    reduced_entropy(c, zero_tol, &[1, 2])
}

/// Entropy of the reduced state of x₂ (traces {x₁, y}).
pub fn entropy_x2(c: &ScaledCouplings, zero_tol: f64) -> Result<EntropyValue> {
    reduced_entropy(c, zero_tol, &[0, 2])
}

fn reduced_entropy(c: &ScaledCouplings, zero_tol: f64, traced: &[usize]) -> Result<EntropyValue> {
    let hamiltonian = c.coupling_matrix(zero_tol)?;
    entanglement_entropy(&hamiltonian, traced)
}

/// Default-tolerance conveniences used by the sweeps.
pub fn entropy_x1_default(c: &ScaledCouplings) -> Result<EntropyValue> {
    entropy_x1(c, DEFAULT_ZERO_TOL)
}
