use thiserror::Error;

/// Errors produced by the entropy pipelines.
///
/// A physical zero-mode is *not* an error: divergent entropies are reported
/// through the sentinel state of [`crate::gaussian::EntropyValue`]. Errors are
/// reserved for inputs outside the model's domain (inverted oscillators,
/// malformed matrices, failed quadrature).
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not symmetric: relative asymmetry {0:.3e} exceeds {max:.0e}", max = crate::matrix::SYMMETRY_TOL)]
    NotSymmetric(f64),

    #[error("matrix dimension must be at least 1")]
    EmptyMatrix,

    #[error("matrix is not square: {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },

    #[error("inverted oscillator: eigenvalue {eigenvalue:.6e} is below -{threshold:.3e}; the spectrum is unbounded and the entropy undefined")]
    InvertedOscillator { eigenvalue: f64, threshold: f64 },

    #[error("traced block is singular (pivot {0:.3e}) with no zero-mode of the full potential to account for it")]
    SingularBlock(f64),

    #[error("imaginary normal mode: 2*omega1^2 = {two_omega1_sq:.6e} exceeds omega0^2 = {omega0_sq:.6e}")]
    ImaginaryMode { two_omega1_sq: f64, omega0_sq: f64 },

    #[error("invalid partition: {0}")]
    Partition(String),

    #[error("center-of-mass momentum must be positive: the normalization volume is undefined for an atom at rest")]
    DegenerateMomentum,

    #[error("degenerate coupling: alpha and beta cannot both vanish")]
    DegenerateCoupling,

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
