//! Generic machinery for N coupled oscillators in unit-mass form
//! H = Σ p_i²/2 + ½ xᵀK x.
//!
//! The ground state is the Gaussian Ψ ∝ exp(−½ xᵀΩx) with Ω = K^{1/2}.
//! Tracing out a subset of oscillators leaves a reduced state whose spectrum
//! is a product of geometric ladders p_n = (1−ξ)ξⁿ, one ξ per kept mode:
//! partition Ω = [[A, B], [Bᵀ, C]] with A the traced block, put
//! β = ½BᵀA⁻¹B and γ = C − β, and take ξ_j = β'_j / (1 + √(1 − β'_j²))
//! over the eigenvalues β'_j of γ⁻¹β. A zero-mode of K that overlaps both
//! sides of the cut drives some β'_j → 1, i.e. ξ_j → 1, and the entropy
//! diverges; that outcome is reported through a sentinel, never an error.

use crate::eigen::jacobi_eigh;
use crate::error::{Error, Result};
use crate::matrix::{Cholesky, Matrix};

/// Default relative tolerance for classifying an eigenvalue as zero.
pub const DEFAULT_ZERO_TOL: f64 = 1e-10;

/// Unit-mass quadratic Hamiltonian: a validated symmetric potential matrix
/// plus the zero-classification tolerance.
#[derive(Debug, Clone)]
pub struct QuadraticHamiltonian {
    potential: Matrix,
    zero_tol: f64,
}

impl QuadraticHamiltonian {
    /// Validates symmetry (relative asymmetry ≤ 1e−12) and dimension ≥ 1.
    pub fn new(potential: Matrix, zero_tol: f64) -> Result<Self> {
        potential.check_symmetric()?;
        if zero_tol <= 0.0 {
            return Err(Error::Domain("zero_tol must be positive".into()));
        }
        Ok(Self {
            potential,
            zero_tol,
        })
    }

    pub fn with_default_tol(potential: Matrix) -> Result<Self> {
        Self::new(potential, DEFAULT_ZERO_TOL)
    }

    pub fn dimension(&self) -> usize {
        self.potential.rows()
    }

    pub fn potential(&self) -> &Matrix {
        &self.potential
    }

    pub fn zero_tol(&self) -> f64 {
        self.zero_tol
    }
}

/// Sign regime of a squared normal frequency.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeRegime {
    Positive,
    Zero,
    Negative,
}

/// Eigenvalues (ascending), orthonormal eigenvectors (columns) and per-mode
/// regime labels of a potential matrix.
#[derive(Debug, Clone)]
pub struct NormalModeSpectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: Matrix,
    pub regimes: Vec<ModeRegime>,
}

impl NormalModeSpectrum {
    pub fn zero_mode_count(&self) -> usize {
        self.regimes
            .iter()
            .filter(|r| **r == ModeRegime::Zero)
            .count()
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues[0]
    }
}

/// Absolute threshold below which an eigenvalue counts as zero:
/// `zero_tol · max(1, |κ_max|)`.
pub fn zero_threshold(eigenvalues: &[f64], zero_tol: f64) -> f64 {
    let max_abs = eigenvalues.iter().fold(0.0_f64, |m, k| m.max(k.abs()));
    zero_tol * max_abs.max(1.0)
}

/// Label each eigenvalue as positive, zero or negative under `zero_tol`.
pub fn classify_modes(eigenvalues: &[f64], zero_tol: f64) -> Vec<ModeRegime> {
    let threshold = zero_threshold(eigenvalues, zero_tol);
    eigenvalues
        .iter()
        .map(|&k| {
            if k.abs() <= threshold {
                ModeRegime::Zero
            } else if k < 0.0 {
                ModeRegime::Negative
            } else {
                ModeRegime::Positive
            }
        })
        .collect()
}

/// Symmetric eigendecomposition of the potential matrix with regime labels.
pub fn eigendecompose_symmetric(hamiltonian: &QuadraticHamiltonian) -> NormalModeSpectrum {
    let (eigenvalues, eigenvectors) = jacobi_eigh(hamiltonian.potential());
    let regimes = classify_modes(&eigenvalues, hamiltonian.zero_tol());
    NormalModeSpectrum {
        eigenvalues,
        eigenvectors,
        regimes,
    }
}

/// Spectral square root Ω of a positive-semidefinite potential matrix.
///
/// Eigenvalues within `-zero_threshold` of zero are clipped to zero before
/// the square root; anything more negative is an inverted oscillator and an
/// error, since the spectrum is then unbounded below.
pub fn matrix_sqrt_psd(hamiltonian: &QuadraticHamiltonian) -> Result<Matrix> {
    let spectrum = eigendecompose_symmetric(hamiltonian);
    sqrt_from_spectrum(&spectrum, hamiltonian.zero_tol())
}

fn sqrt_from_spectrum(spectrum: &NormalModeSpectrum, zero_tol: f64) -> Result<Matrix> {
    let threshold = zero_threshold(&spectrum.eigenvalues, zero_tol);
    let mut roots = Vec::with_capacity(spectrum.eigenvalues.len());
    for &k in &spectrum.eigenvalues {
        if k < -threshold {
            return Err(Error::InvertedOscillator {
                eigenvalue: k,
                threshold,
            });
        }
        // The whole zero band collapses to an exact zero: the square root
        // would otherwise turn a roundoff-level eigenvalue into a spurious
        // √eps frequency and mask the zero-mode.
        roots.push(if k.abs() <= threshold { 0.0 } else { k.sqrt() });
    }
    let v = &spectrum.eigenvectors;
    let mut omega = v.mul(&Matrix::diagonal(&roots)).mul(&v.transpose());
    omega.symmetrize();
    Ok(omega)
}

/// Per-mode ξ parameters of a reduced Gaussian state.
///
/// Each stored ξ lies in [0, 1); a mode that reaches the ξ → 1 limit sets the
/// `divergent` flag instead of being stored.
#[derive(Debug, Clone)]
pub struct XiSpectrum {
    pub xis: Vec<f64>,
    pub divergent: bool,
}

impl XiSpectrum {
    pub fn product_state() -> Self {
        Self {
            xis: Vec::new(),
            divergent: false,
        }
    }
}

/// Trace out the oscillators listed in `traced` and return the ξ spectrum of
/// the reduced state of the complement.
pub fn reduce_to_xi(hamiltonian: &QuadraticHamiltonian, traced: &[usize]) -> Result<XiSpectrum> {
    let n = hamiltonian.dimension();
    validate_partition(n, traced)?;
    let kept: Vec<usize> = (0..n).filter(|i| !traced.contains(i)).collect();

    let spectrum = eigendecompose_symmetric(hamiltonian);
    let omega = sqrt_from_spectrum(&spectrum, hamiltonian.zero_tol())?;
    let threshold = zero_threshold(&spectrum.eigenvalues, hamiltonian.zero_tol());

    let a = omega.submatrix(traced, traced);
    let b = omega.submatrix(traced, &kept);
    let c = omega.submatrix(&kept, &kept);

    // A singular means a zero-mode of K lives entirely inside the traced
    // block: the global ground state is non-normalizable there and the
    // reduced-state entropy is divergent.
    let chol = match Cholesky::new(&a, hamiltonian.zero_tol()) {
        Ok(chol) => chol,
        Err(Error::SingularBlock(pivot)) => {
            if spectrum.eigenvalues.iter().any(|&k| k.abs() <= threshold) {
                return Ok(XiSpectrum {
                    xis: Vec::new(),
                    divergent: true,
                });
            }
            return Err(Error::SingularBlock(pivot));
        }
        Err(e) => return Err(e),
    };

    // β = ½ Bᵀ A⁻¹ B, γ = C − β, both symmetric on the kept block.
    let a_inv_b = chol.solve(&b);
    let mut beta = b.transpose().mul(&a_inv_b);
    for x in 0..beta.rows() {
        for y in 0..beta.cols() {
            beta[(x, y)] *= 0.5;
        }
    }
    beta.symmetrize();
    let mut gamma = c.clone();
    for x in 0..gamma.rows() {
        for y in 0..gamma.cols() {
            gamma[(x, y)] -= beta[(x, y)];
        }
    }
    gamma.symmetrize();

    // γ⁻¹β solved through the symmetric whitened form γ^{-1/2} β γ^{-1/2},
    // which has the same eigenvalues but guarantees a real spectrum.
    let (g_vals, g_vecs) = jacobi_eigh(&gamma);
    let g_scale = g_vals.iter().fold(0.0_f64, |m, v| m.max(v.abs())).max(1.0);
    if g_vals[0] <= hamiltonian.zero_tol() * g_scale {
        // γ singular: a zero-mode confined to the kept block.
        return Ok(XiSpectrum {
            xis: Vec::new(),
            divergent: true,
        });
    }
    let inv_sqrt: Vec<f64> = g_vals.iter().map(|v| 1.0 / v.sqrt()).collect();
    let g_inv_half = g_vecs
        .mul(&Matrix::diagonal(&inv_sqrt))
        .mul(&g_vecs.transpose());
    let mut whitened = g_inv_half.mul(&beta).mul(&g_inv_half);
    whitened.symmetrize();
    let (beta_primes, _) = jacobi_eigh(&whitened);

    let mut xis = Vec::with_capacity(beta_primes.len());
    let mut divergent = false;
    for bp in beta_primes {
        // β' lies in [0, 1] for a PSD Ω; clip roundoff excursions. The
        // ξ → 1 limit is detected on β' itself: the square root doubles the
        // distance from 1 in log scale, so a ξ-side test could never fire
        // at f64 precision.
        let bp = bp.clamp(0.0, 1.0);
        if bp >= 1.0 - hamiltonian.zero_tol() {
            divergent = true;
            continue;
        }
        let xi = bp / (1.0 + (1.0 - bp * bp).sqrt());
        xis.push(xi);
    }
    xis.sort_by(|a, b| a.partial_cmp(b).unwrap());
    Ok(XiSpectrum { xis, divergent })
}

fn validate_partition(n: usize, traced: &[usize]) -> Result<()> {
    if traced.is_empty() {
        return Err(Error::Partition("traced set is empty".into()));
    }
    if traced.len() >= n {
        return Err(Error::Partition(format!(
            "traced set of size {} is not a proper subset of {n} oscillators",
            traced.len()
        )));
    }
    let mut seen = vec![false; n];
    for &i in traced {
        if i >= n {
            return Err(Error::Partition(format!(
                "index {i} out of range for dimension {n}"
            )));
        }
        if seen[i] {
            return Err(Error::Partition(format!("duplicate index {i}")));
        }
        seen[i] = true;
    }
    Ok(())
}

/// Why an entropy is reported as +∞.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceCause {
    ZeroMode,
    QuadratureOverflow,
}

impl DivergenceCause {
    pub fn as_str(self) -> &'static str {
        match self {
            DivergenceCause::ZeroMode => "zero-mode",
            DivergenceCause::QuadratureOverflow => "quadrature overflow",
        }
    }
}

/// Nonnegative entropy in nats, or an explicit divergent sentinel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyValue {
    nats: f64,
    cause: Option<DivergenceCause>,
}

impl EntropyValue {
    /// Finite nonnegative entropy. Roundoff-level negatives are clipped to
    /// zero; anything further negative is a caller bug.
    pub fn finite(nats: f64) -> Self {
        assert!(
            nats > -1e-9 && nats.is_finite(),
            "entropy must be nonnegative, got {nats}"
        );
        Self {
            nats: nats.max(0.0),
            cause: None,
        }
    }

    pub fn divergent(cause: DivergenceCause) -> Self {
        Self {
            nats: f64::INFINITY,
            cause: Some(cause),
        }
    }

    pub fn nats(&self) -> f64 {
        self.nats
    }

    pub fn is_divergent(&self) -> bool {
        self.cause.is_some()
    }

    pub fn cause(&self) -> Option<DivergenceCause> {
        self.cause
    }
}

impl std::fmt::Display for EntropyValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.cause {
            Some(c) => write!(f, "inf ({})", c.as_str()),
            None => write!(f, "{}", self.nats),
        }
    }
}

/// Entropy of a single geometric ladder: S(ξ) = −ln(1−ξ) − ξ/(1−ξ) ln ξ.
pub fn single_mode_entropy(xi: f64) -> f64 {
    assert!((0.0..1.0).contains(&xi), "xi must lie in [0,1), got {xi}");
    if xi == 0.0 {
        return 0.0;
    }
    -(1.0 - xi).ln() - xi / (1.0 - xi) * xi.ln()
}

/// Total entanglement entropy of a ξ spectrum, summed over modes.
pub fn entropy_from_xi(spectrum: &XiSpectrum) -> EntropyValue {
    if spectrum.divergent {
        return EntropyValue::divergent(DivergenceCause::ZeroMode);
    }
    EntropyValue::finite(spectrum.xis.iter().map(|&xi| single_mode_entropy(xi)).sum())
}

/// Reduce and evaluate in one step: entropy of the subsystem complementary to
/// `traced`.
pub fn entanglement_entropy(
    hamiltonian: &QuadraticHamiltonian,
    traced: &[usize],
) -> Result<EntropyValue> {
    Ok(entropy_from_xi(&reduce_to_xi(hamiltonian, traced)?))
}
