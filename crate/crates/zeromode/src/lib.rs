//! Entanglement entropy of coupled-oscillator (quadratic-Hamiltonian)
//! systems and continuous reduced-density-matrix spectra, with explicit
//! detection of zero-mode (infrared) divergences.
//!
//! The crate is organized around one engine and four model front-ends:
//!
//! * [`gaussian`]: generic N-oscillator machinery: symmetric
//!   eigendecomposition, PSD matrix square root, block reduction to the
//!   per-mode ξ spectrum, and the ladder entropy S(ξ).
//! * [`closed_form`]: the negatively-coupled oscillator pair, its
//!   free-particle (plane-wave) limit, the IR energy choice, a brute-force
//!   grid oracle, and the perturbative oscillator-coordinate eigenvalue.
//! * [`hydrogen`]: the electron–proton system: continuous spectrum,
//!   entropy quadratures in the (η, ζ) scales, and mapping checks.
//! * [`tripartite`]: environment-induced entanglement of two mutually
//!   uncoupled oscillators.
//! * [`lattice`]: the periodic massive scalar chain.
//!
//! Divergent entropies are values, not errors: every pipeline reports the
//! zero-mode limit through the sentinel state of
//! [`gaussian::EntropyValue`]. All operations are pure functions of their
//! inputs and safe to call from any number of threads.

pub mod closed_form;
pub mod eigen;
pub mod error;
pub mod gaussian;
pub mod hydrogen;
pub mod lattice;
pub mod matrix;
pub mod quadrature;
pub mod rng;
pub mod tripartite;

pub use error::{Error, Result};
pub use gaussian::{DivergenceCause, EntropyValue, QuadraticHamiltonian, XiSpectrum};
pub use matrix::Matrix;
pub use quadrature::QuadratureConfig;
