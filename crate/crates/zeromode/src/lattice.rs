//! Discretized 1D massive scalar field on a periodic chain: circulant
//! coupling matrix, analytic dispersion, the canonical transformation that
//! exposes the near-zero-mode structure, and half-chain entropies through
//! the Gaussian engine.
//!
//! After rescaling to unit kinetic coefficient the potential matrix is the
//! circulant with diagonal m_f² + 2/a² and nearest-neighbour entries −1/a²
//! (wrapping), whose eigenvalues are ω_k² = m_f² + (4/a²) sin²(πk/N). Only
//! the massless case has a zero-mode (k = 0); the canonically transformed
//! system with μ = 2/(2 + a²m_f²) develops one as μ → 1.

use crate::error::{Error, Result};
use crate::gaussian::{entanglement_entropy, EntropyValue, QuadraticHamiltonian};
use crate::matrix::Matrix;

use std::f64::consts::PI;

/// Periodic chain parameters (the boundary is always periodic).
#[derive(Debug, Clone, Copy)]
pub struct LatticeParams {
    pub sites: usize,
    pub spacing: f64,
    pub field_mass: f64,
}

impl LatticeParams {
    pub fn new(sites: usize, spacing: f64, field_mass: f64) -> Result<Self> {
        if sites < 2 {
            return Err(Error::Domain("lattice needs at least 2 sites".into()));
        }
        if spacing <= 0.0 {
            return Err(Error::Domain("lattice spacing must be positive".into()));
        }
        if field_mass < 0.0 {
            return Err(Error::Domain("field mass cannot be negative".into()));
        }
        Ok(Self {
            sites,
            spacing,
            field_mass,
        })
    }

    /// μ = 2/(2 + a²m_f²); equal to 1 exactly when a·m_f = 0.
    pub fn mu(&self) -> f64 {
        let am = self.spacing * self.field_mass;
        2.0 / (2.0 + am * am)
    }
}

/// Circulant potential matrix in unit-kinetic form: diagonal m_f² + 2/a²,
/// nearest neighbours −1/a² with periodic wrapping (the two wrap entries
/// coincide at N = 2, giving −2/a²).
pub fn coupling_matrix(params: &LatticeParams) -> QuadraticHamiltonian {
    let n = params.sites;
    let inv_a2 = 1.0 / (params.spacing * params.spacing);
    let diag = params.field_mass * params.field_mass + 2.0 * inv_a2;
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = diag;
        m[(i, (i + 1) % n)] += -inv_a2;
        m[(i, (i + n - 1) % n)] += -inv_a2;
    }
    QuadraticHamiltonian::with_default_tol(m).expect("circulant matrix is symmetric")
}

/// Dispersion relation ω_k² = m_f² + (4/a²) sin²(πk/N) for 0 ≤ k < N.
pub fn dispersion(k: usize, params: &LatticeParams) -> f64 {
    assert!(k < params.sites, "mode index {k} out of range");
    let s = (PI * k as f64 / params.sites as f64).sin();
    params.field_mass * params.field_mass + 4.0 / (params.spacing * params.spacing) * s * s
}

/// Spectrum after the canonical transformation that trades the UV scale for
/// a near-zero-mode: ω̄ᵢ = √(1 − μ + 2μ sin²(πi/N)).
#[derive(Debug, Clone)]
pub struct TransformedSpectrum {
    pub mu: f64,
    pub omega_bar: Vec<f64>,
}

pub fn transformed_modes(params: &LatticeParams) -> TransformedSpectrum {
    transformed_modes_from_mu(params.mu(), params.sites)
}

pub fn transformed_modes_from_mu(mu: f64, sites: usize) -> TransformedSpectrum {
    let omega_bar = (0..sites)
        .map(|i| {
            let s = (PI * i as f64 / sites as f64).sin();
            (1.0 - mu + 2.0 * mu * s * s).max(0.0).sqrt()
        })
        .collect();
    TransformedSpectrum { mu, omega_bar }
}

/// Transformed potential matrix: circulant with diagonal 1 and neighbour
/// entries −μ/2, whose eigenvalues are the ω̄ᵢ² above.
pub fn transformed_coupling_matrix(mu: f64, sites: usize) -> Result<QuadraticHamiltonian> {
    if !(0.0..=1.0).contains(&mu) {
        return Err(Error::Domain(format!("mu must lie in [0, 1], got {mu}")));
    }
    if sites < 2 {
        return Err(Error::Domain("lattice needs at least 2 sites".into()));
    }
    let mut m = Matrix::zeros(sites, sites);
    for i in 0..sites {
        m[(i, i)] = 1.0;
        m[(i, (i + 1) % sites)] += -0.5 * mu;
        m[(i, (i + sites - 1) % sites)] += -0.5 * mu;
    }
    QuadraticHamiltonian::with_default_tol(m)
}

/// Count eigenvalues at zero under the relative threshold
/// `zero_tol · max(1, |max eigenvalue|)`.
pub fn zero_mode_count(eigenvalues: &[f64], zero_tol: f64) -> usize {
    let threshold = crate::gaussian::zero_threshold(eigenvalues, zero_tol);
    eigenvalues.iter().filter(|k| k.abs() <= threshold).count()
}

/// Half-chain (or arbitrary-cut) entanglement entropy through the Gaussian
/// engine. With `use_transformed` the canonically transformed chain is
/// reduced instead of the bare one.
pub fn half_chain_entropy(
    params: &LatticeParams,
    cut: &[usize],
    use_transformed: bool,
) -> Result<EntropyValue> {
    let hamiltonian = if use_transformed {
        transformed_coupling_matrix(params.mu(), params.sites)?
    } else {
        coupling_matrix(params)
    };
    entanglement_entropy(&hamiltonian, cut)
}

/// Entropy of the transformed chain at a given μ, tracing `cut`.
pub fn transformed_entropy(mu: f64, sites: usize, cut: &[usize]) -> Result<EntropyValue> {
    let hamiltonian = transformed_coupling_matrix(mu, sites)?;
    entanglement_entropy(&hamiltonian, cut)
}

/// First-half cut {0, …, N/2 − 1}.
pub fn first_half_cut(sites: usize) -> Vec<usize> {
    (0..sites / 2).collect()
}

/// The three-site matrix stated for the open chain (no wrap entries), with
/// the mass term read as m_f² on the diagonal:
/// tridiag(−1/a², m_f² + 2/a², −1/a²).
pub fn three_site_open_chain_matrix(params: &LatticeParams) -> QuadraticHamiltonian {
    let inv_a2 = 1.0 / (params.spacing * params.spacing);
    let diag = params.field_mass * params.field_mass + 2.0 * inv_a2;
    let m = Matrix::from_fn(3, 3, |i, j| {
        if i == j {
            diag
        } else if i.abs_diff(j) == 1 {
            -inv_a2
        } else {
            0.0
        }
    });
    QuadraticHamiltonian::with_default_tol(m).expect("tridiagonal matrix is symmetric")
}

/// Closed-form modes of the three-site open chain:
/// m_f² + (2−√2)/a², m_f² + 2/a², m_f² + (2+√2)/a².
///
/// These differ from the periodic dispersion at N = 3 (m_f², m_f² + 3/a²
/// twice); the mismatch is a documented discrepancy between the two stated
/// three-site descriptions, reported by the verification suite as expected.
pub fn three_site_open_chain_modes(params: &LatticeParams) -> [f64; 3] {
    let inv_a2 = 1.0 / (params.spacing * params.spacing);
    let m2 = params.field_mass * params.field_mass;
    let r = std::f64::consts::SQRT_2;
    [
        m2 + (2.0 - r) * inv_a2,
        m2 + 2.0 * inv_a2,
        m2 + (2.0 + r) * inv_a2,
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gaussian::eigendecompose_symmetric;

    #[test]
    fn three_site_periodic_matrix_entries() {
        let p = LatticeParams::new(3, 0.5, 2.0).unwrap();
        let k = coupling_matrix(&p);
        let inv_a2 = 4.0;
        assert_eq!(k.potential()[(0, 0)], 4.0 + 2.0 * inv_a2);
        assert_eq!(k.potential()[(0, 1)], -inv_a2);
        assert_eq!(k.potential()[(0, 2)], -inv_a2);
    }

    #[test]
    fn two_site_wrap_doubles_the_coupling() {
        let p = LatticeParams::new(2, 1.0, 1.0).unwrap();
        let k = coupling_matrix(&p);
        assert_eq!(k.potential()[(0, 0)], 3.0);
        assert_eq!(k.potential()[(0, 1)], -2.0);
        let s = eigendecompose_symmetric(&k);
        assert!((s.eigenvalues[0] - dispersion(0, &p)).abs() < 1e-12);
        assert!((s.eigenvalues[1] - dispersion(1, &p)).abs() < 1e-12);
    }

    #[test]
    fn massless_rows_sum_to_zero() {
        let p = LatticeParams::new(6, 0.7, 0.0).unwrap();
        let k = coupling_matrix(&p);
        for i in 0..6 {
            let sum: f64 = (0..6).map(|j| k.potential()[(i, j)]).sum();
            assert!(sum.abs() < 1e-12);
        }
    }

    #[test]
    fn dispersion_matches_circulant_eigenvalues() {
        for &(n, a, m) in &[(3usize, 1.0, 1.0), (8, 0.5, 0.3), (17, 2.0, 0.0)] {
            let p = LatticeParams::new(n, a, m).unwrap();
            let spectrum = eigendecompose_symmetric(&coupling_matrix(&p));
            let mut expected: Vec<f64> = (0..n).map(|k| dispersion(k, &p)).collect();
            expected.sort_by(|x, y| x.partial_cmp(y).unwrap());
            for (got, want) in spectrum.eigenvalues.iter().zip(expected.iter()) {
                assert!((got - want).abs() < 1e-12, "n={n}: {got} vs {want}");
            }
        }
    }

    #[test]
    fn dispersion_endpoints() {
        let p = LatticeParams::new(3, 1.0, 2.0).unwrap();
        assert_eq!(dispersion(0, &p), 4.0);
        assert!((dispersion(1, &p) - (4.0 + 3.0)).abs() < 1e-12);
        let massless = LatticeParams::new(5, 1.0, 0.0).unwrap();
        assert_eq!(dispersion(0, &massless), 0.0);
    }

    #[test]
    fn transformed_modes_limits() {
        let p = LatticeParams::new(4, 1.0, 2.0_f64.sqrt()).unwrap();
        assert!((p.mu() - 0.5).abs() < 1e-14);
        let t = transformed_modes(&p);
        assert!((t.omega_bar[0] - 0.5_f64.sqrt()).abs() < 1e-14);
        // even N: the i = N/2 mode reaches sqrt(1 + mu)
        assert!((t.omega_bar[2] - 1.5_f64.sqrt()).abs() < 1e-14);
    }

    #[test]
    fn transformed_zero_mode_at_mu_one() {
        let t = transformed_modes_from_mu(1.0, 5);
        assert_eq!(t.omega_bar[0], 0.0);
        let squared: Vec<f64> = t.omega_bar.iter().map(|w| w * w).collect();
        assert_eq!(zero_mode_count(&squared, 1e-10), 1);
    }

    #[test]
    fn exactly_one_zero_mode_when_massless() {
        for n in [2usize, 3, 7, 12] {
            let p = LatticeParams::new(n, 1.0, 0.0).unwrap();
            let vals: Vec<f64> = (0..n).map(|k| dispersion(k, &p)).collect();
            assert_eq!(zero_mode_count(&vals, 1e-10), 1, "n={n}");
        }
        let massive = LatticeParams::new(5, 1.0, 1.0).unwrap();
        let vals: Vec<f64> = (0..5).map(|k| dispersion(k, &massive)).collect();
        assert_eq!(zero_mode_count(&vals, 1e-10), 0);
    }

    #[test]
    fn heavy_two_site_chain_is_nearly_product() {
        let p = LatticeParams::new(2, 1.0, 10.0).unwrap();
        let s = half_chain_entropy(&p, &[0], false).unwrap();
        assert!(s.nats() < 0.01, "entropy {}", s.nats());
    }

    #[test]
    fn transformed_entropy_grows_with_mu() {
        let cut = first_half_cut(32);
        let mut previous = -1.0;
        for &mu in &[0.9, 0.99, 0.999] {
            let s = transformed_entropy(mu, 32, &cut).unwrap();
            assert!(s.nats() > previous, "mu={mu}: {} vs {previous}", s.nats());
            previous = s.nats();
        }
    }

    #[test]
    fn wide_spacing_decouples_the_chain() {
        let p = LatticeParams::new(8, 1e4, 1.0).unwrap();
        let s = half_chain_entropy(&p, &first_half_cut(8), false).unwrap();
        assert!(s.nats() < 1e-6, "entropy {}", s.nats());
    }

    #[test]
    fn open_chain_modes_match_its_matrix() {
        let p = LatticeParams::new(3, 0.8, 1.3).unwrap();
        let spectrum = eigendecompose_symmetric(&three_site_open_chain_matrix(&p));
        let expected = three_site_open_chain_modes(&p);
        for (got, want) in spectrum.eigenvalues.iter().zip(expected.iter()) {
            assert!((got - want).abs() < 1e-12, "{got} vs {want}");
        }
    }

    #[test]
    fn open_chain_disagrees_with_periodic_dispersion() {
        let p = LatticeParams::new(3, 1.0, 1.0).unwrap();
        let open = three_site_open_chain_modes(&p);
        let mut periodic: Vec<f64> = (0..3).map(|k| dispersion(k, &p)).collect();
        periodic.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let gap = open
            .iter()
            .zip(periodic.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0_f64, f64::max);
        assert!(gap > 0.4, "expected a visible mismatch, got {gap}");
    }
}
