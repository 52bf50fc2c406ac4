//! Hydrogen atom as a bipartite electron–proton system: continuous reduced
//! spectrum, entropy quadratures in the dimensionless (η, ζ) scales, and the
//! oscillator-mapping consistency checks.
//!
//! The electron's reduced density matrix is homogeneous, with eigenvalue
//! density ρ̃(k) = (64π a₀³/Ω) / (1 + a₀²|k − k_e|²)⁴. Its entropy
//! S = −∫ d³k (Ω/(2π)³) ρ̃ ln ρ̃ is computed along two independent routes:
//!
//! * the κ = k/k_e parametrization, with the angular average folded into a
//!   1D integrand g(κ) so S = ∫₀^∞ g(κ) dκ, and
//! * the radial integral in the shifted variable q = |k − k_e|, where the
//!   translation invariance of the spectrum is manifest.
//!
//! The two must agree (and be independent of η) for every ζ; they serve as
//! mutual oracles. ζ → 0 is the zero-mode limit of the regularizing trap and
//! drives the entropy up without bound.

use crate::error::{Error, Result};
use crate::quadrature::{integrate_semi_infinite, Quadrature, QuadratureConfig};

use std::f64::consts::PI;

/// Physical parameters of the trapped two-body Coulomb system.
#[derive(Debug, Clone, Copy)]
pub struct HydrogenParams {
    pub electron_mass: f64,
    pub proton_mass: f64,
    /// Squared charge e² (Gaussian units).
    pub charge_sq: f64,
    pub hbar: f64,
    /// Center-of-mass momentum magnitude P.
    pub momentum: f64,
    /// Frequency ω of the regularizing center-of-mass trap.
    pub omega: f64,
}

impl HydrogenParams {
    pub fn new(
        electron_mass: f64,
        proton_mass: f64,
        charge_sq: f64,
        hbar: f64,
        momentum: f64,
        omega: f64,
    ) -> Result<Self> {
        if electron_mass <= 0.0 || proton_mass <= 0.0 || charge_sq <= 0.0 || hbar <= 0.0 {
            return Err(Error::Domain(
                "masses, charge and hbar must be positive".into(),
            ));
        }
        if momentum < 0.0 {
            return Err(Error::Domain(
                "momentum magnitude cannot be negative".into(),
            ));
        }
        if omega <= 0.0 {
            return Err(Error::Domain("trap frequency must be positive".into()));
        }
        Ok(Self {
            electron_mass,
            proton_mass,
            charge_sq,
            hbar,
            momentum,
            omega,
        })
    }

    pub fn reduced_mass(&self) -> f64 {
        self.electron_mass * self.proton_mass / (self.electron_mass + self.proton_mass)
    }

    pub fn total_mass(&self) -> f64 {
        self.electron_mass + self.proton_mass
    }

    pub fn bohr_radius(&self) -> f64 {
        bohr_radius(self.reduced_mass(), self.charge_sq, self.hbar)
    }

    /// Electron-sector wavenumber shift k_e = m_e P / (M ħ).
    pub fn electron_wavenumber(&self) -> f64 {
        self.electron_mass * self.momentum / (self.total_mass() * self.hbar)
    }

    /// Shift vector k_e with the momentum split equally over the axes.
    pub fn electron_wavenumber_vector(&self) -> [f64; 3] {
        let c = self.electron_wavenumber() / 3.0_f64.sqrt();
        [c, c, c]
    }

    pub fn com_volume(&self) -> Result<f64> {
        com_volume(self.momentum, self.total_mass(), self.omega)
    }

    /// Dimensionless scales (η, ζ) of the reduced spectrum.
    pub fn spectral_scale(&self) -> Result<SpectralScale> {
        let a0 = self.bohr_radius();
        let eta = a0 * self.electron_wavenumber();
        if eta <= 0.0 {
            return Err(Error::DegenerateMomentum);
        }
        let volume = self.com_volume()?;
        Ok(SpectralScale {
            eta,
            zeta: 64.0 * PI * a0.powi(3) / volume,
        })
    }
}

/// Dimensionless spectral scales: η = a₀ k_e sets the profile position,
/// ζ = 64π a₀³/Ω its height. ζ → 0 as the trap frequency ω → 0.
#[derive(Debug, Clone, Copy)]
pub struct SpectralScale {
    pub eta: f64,
    pub zeta: f64,
}

/// Bohr radius a₀ = ħ²/(m e²) for reduced mass m.
pub fn bohr_radius(reduced_mass: f64, charge_sq: f64, hbar: f64) -> f64 {
    hbar * hbar / (reduced_mass * charge_sq)
}

/// Center-of-mass normalization volume Ω = (πP/(√3 M ω))³.
///
/// ω = 0 returns +∞ (the zero-mode limit); P = 0 leaves Ω undefined and is
/// rejected.
pub fn com_volume(momentum: f64, total_mass: f64, omega: f64) -> Result<f64> {
    if momentum <= 0.0 {
        return Err(Error::DegenerateMomentum);
    }
    if total_mass <= 0.0 || omega < 0.0 {
        return Err(Error::Domain(
            "total mass must be positive and omega nonnegative".into(),
        ));
    }
    if omega == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok((PI * momentum / (3.0_f64.sqrt() * total_mass * omega)).powi(3))
}

/// Reduced-spectrum eigenvalue at wavevector `k`:
/// ρ̃(k) = (1/Ω) · 64π a₀³ / (1 + a₀²|k − k_e|²)⁴.
pub fn rho_eigenvalue(k: [f64; 3], params: &HydrogenParams) -> Result<f64> {
    let volume = params.com_volume()?;
    if volume.is_infinite() {
        return Ok(0.0);
    }
    let ke = params.electron_wavenumber_vector();
    let dq = [k[0] - ke[0], k[1] - ke[1], k[2] - ke[2]];
    let q = (dq[0] * dq[0] + dq[1] * dq[1] + dq[2] * dq[2]).sqrt();
    Ok(rho_radial(q, params.bohr_radius(), volume))
}

/// Radial profile shared by the direct and the oscillator-mapped pipelines:
/// ρ̃(q) = (64π a₀³/Ω) / (1 + a₀²q²)⁴ at distance q from the peak.
pub fn rho_radial(q: f64, bohr: f64, volume: f64) -> f64 {
    let w = 1.0 + bohr * bohr * q * q;
    64.0 * PI * bohr.powi(3) / (volume * w.powi(4))
}

#[inline]
fn weights(kappa: f64, eta: f64) -> (f64, f64) {
    let dm = 1.0 - kappa;
    let dp = 1.0 + kappa;
    (1.0 + eta * eta * dm * dm, 1.0 + eta * eta * dp * dp)
}

/// Integrand of the unit-trace check in the κ parametrization:
/// t(κ) = (8η/3π) κ [w₋⁻³ − w₊⁻³], with w∓ = 1 + η²(1∓κ)²;
/// ∫₀^∞ t dκ = 1 for every η.
pub fn trace_integrand(kappa: f64, eta: f64) -> f64 {
    let (wm, wp) = weights(kappa, eta);
    8.0 * eta / (3.0 * PI) * kappa * (wm.powi(-3) - wp.powi(-3))
}

/// Spectral trace (Ω/(2π)³) ∫ d³k ρ̃(k) evaluated by quadrature in κ.
pub fn spectral_trace(eta: f64, cfg: &QuadratureConfig) -> Result<f64> {
    if eta <= 0.0 {
        return Err(Error::Domain("eta must be positive".into()));
    }
    // For κ ≥ 4: w₋ ≥ 9η²κ²/16, so |t| ≤ (8η/3π)(16/9)³ η⁻⁶ κ⁻⁵ and the
    // discarded tail is ≤ c·K⁻⁴/4.
    let c = 8.0 / (3.0 * PI * eta.powi(5)) * (16.0_f64 / 9.0).powi(3);
    let q = integrate_semi_infinite(
        |kappa| trace_integrand(kappa, eta),
        |upper| 0.25 * c / upper.powi(4),
        cfg,
    )?;
    Ok(q.value)
}

/// Entropy integrand g(κ): the angular average of −ρ̃ ln ρ̃ over the sphere
/// |k| = κ k_e, reduced to one dimension so that S = ∫₀^∞ g(κ) dκ.
///
/// g(0) = 0 and g decays like κ⁻⁵ ln κ; for small ζ the −ln ζ part dominates
/// and g is positive on a mid-κ window.
pub fn g_integrand(kappa: f64, eta: f64, zeta: f64) -> f64 {
    if kappa == 0.0 {
        return 0.0;
    }
    let (wm, wp) = weights(kappa, eta);
    let im = wm.powi(-3);
    let ip = wp.powi(-3);
    let delta = im - ip;
    let log_part = im * wm.ln() - ip * wp.ln();
    16.0 * eta / PI
        * kappa
        * (-zeta.ln() / 6.0 * delta + (2.0 / 3.0) * log_part + (2.0 / 9.0) * delta)
}

fn g_tail_bound(upper: f64, eta: f64, zeta: f64) -> f64 {
    // For κ ≥ 2: w ≥ η²κ²/4, so w⁻³ ≤ 64/(η⁶κ⁶) and ln w₊ ≤ 2ln(2ηκ) + 1.
    // |g| ≤ A κ⁻⁵ (B + (4/3)·2 ln(κ/K)) with the constants below, giving
    // tail ≤ (A K⁻⁴/4)(B + 2/3).
    let a = 16.0 / PI * 128.0 / eta.powi(5);
    let b = zeta.ln().abs() / 3.0
        + (2.0 / 3.0) * 2.0 * (2.0 * (2.0 * eta * upper).max(1.0).ln() + 1.0)
        + 4.0 / 9.0;
    0.25 * a / upper.powi(4) * (b + 2.0 / 3.0)
}

/// Converged entropy value with its quadrature error estimate and the upper
/// κ limit actually used.
#[derive(Debug, Clone, Copy)]
pub struct SpectralEntropy {
    /// Entropy in nats. Negative values only occur in the unphysical
    /// large-ζ regime; toward the zero-mode limit ζ → 0 the value grows as
    /// −ln ζ without bound.
    pub nats: f64,
    pub abs_error: f64,
    pub kappa_max: f64,
}

impl From<Quadrature> for SpectralEntropy {
    fn from(q: Quadrature) -> Self {
        Self {
            nats: q.value,
            abs_error: q.abs_error,
            kappa_max: q.upper,
        }
    }
}

/// Entanglement entropy S = ∫₀^∞ g(κ) dκ of the reduced electron state.
pub fn entropy(eta: f64, zeta: f64, cfg: &QuadratureConfig) -> Result<SpectralEntropy> {
    if eta <= 0.0 || zeta <= 0.0 {
        return Err(Error::Domain("eta and zeta must be positive".into()));
    }
    let q = integrate_semi_infinite(
        |kappa| g_integrand(kappa, eta, zeta),
        |upper| g_tail_bound(upper, eta, zeta),
        cfg,
    )?;
    Ok(q.into())
}

/// Independent route: the same entropy as a radial integral in the shifted
/// variable x = a₀|k − k_e|, where η drops out of the expression entirely:
/// S = −(32/π) ∫₀^∞ x²(1+x²)⁻⁴ [ln ζ − 4 ln(1+x²)] dx.
pub fn entropy_shifted_radial(zeta: f64, cfg: &QuadratureConfig) -> Result<SpectralEntropy> {
    if zeta <= 0.0 {
        return Err(Error::Domain("zeta must be positive".into()));
    }
    let ln_zeta = zeta.ln();
    let q = integrate_semi_infinite(
        |x| {
            let w = 1.0 + x * x;
            let f = x * x * w.powi(-4);
            -(32.0 / PI) * f * (ln_zeta - 4.0 * w.ln())
        },
        |upper| {
            // |f| ≤ (32/π) x⁻⁶ (|lnζ| + 8 ln x + 4); integrate the bound.
            let b = ln_zeta.abs() + 8.0 * upper.max(1.0).ln() + 4.0;
            32.0 / PI * (b + 8.0 / 5.0) / (5.0 * upper.powi(5))
        },
        cfg,
    )?;
    Ok(q.into())
}

/// Rydberg binding energy B = m e⁴ / (2 n² ħ²).
pub fn rydberg_binding(n: u32, reduced_mass: f64, charge_sq: f64, hbar: f64) -> f64 {
    assert!(n >= 1, "principal quantum number starts at 1");
    reduced_mass * charge_sq * charge_sq / (2.0 * (n as f64) * (n as f64) * hbar * hbar)
}

/// The two oscillator images of the Coulomb ground state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MappingVariant {
    /// Constrained four-dimensional oscillator: ω̃ = √(2B/m), β = 2mω̃/ħ.
    FourDimOscillator,
    /// Radial isotonic oscillator under r = x²: ω̃ = √(8B/m), β = mω̃/ħ.
    Isotonic,
}

/// Inverse-length scale β of the mapped ground state exp(−βr/2).
///
/// Both variants give β·a₀ = 2 at the ground-state binding energy, i.e. the
/// mapped state is exactly exp(−r/a₀).
pub fn mapping_beta(binding: f64, reduced_mass: f64, hbar: f64, variant: MappingVariant) -> f64 {
    assert!(binding > 0.0 && reduced_mass > 0.0 && hbar > 0.0);
    match variant {
        MappingVariant::FourDimOscillator => {
            let omega_t = (2.0 * binding / reduced_mass).sqrt();
            2.0 * reduced_mass * omega_t / hbar
        }
        MappingVariant::Isotonic => {
            let omega_t = (8.0 * binding / reduced_mass).sqrt();
            reduced_mass * omega_t / hbar
        }
    }
}

/// Effective Bohr radius of a mapped state: exp(−βr/2) = exp(−r/a₀) means
/// a₀ = 2/β.
pub fn mapped_bohr_radius(beta: f64) -> f64 {
    2.0 / beta
}

/// One row of the mapping-equivalence report.
#[derive(Debug, Clone, Copy)]
pub struct MappingCheck {
    pub eta: f64,
    pub zeta: f64,
    pub unmapped_nats: f64,
    pub mapped_nats: f64,
    pub delta: f64,
}

/// Compare the unmapped entropy (κ-space route) against the mapped pipeline
/// (shared radial spectrum, integrated in the shifted variable) at the given
/// (η, ζ) samples. Passes when every |Δ| < `tol`.
pub fn mapping_equivalence_check(
    samples: &[(f64, f64)],
    tol: f64,
    cfg: &QuadratureConfig,
) -> Result<(bool, Vec<MappingCheck>)> {
    let mut rows = Vec::with_capacity(samples.len());
    let mut all_ok = true;
    for &(eta, zeta) in samples {
        let unmapped = entropy(eta, zeta, cfg)?.nats;
        let mapped = entropy_shifted_radial(zeta, cfg)?.nats;
        let delta = (unmapped - mapped).abs();
        all_ok &= delta < tol;
        rows.push(MappingCheck {
            eta,
            zeta,
            unmapped_nats: unmapped,
            mapped_nats: mapped,
            delta,
        });
    }
    Ok((all_ok, rows))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg() -> QuadratureConfig {
        QuadratureConfig::default()
    }

    /// Exact value of the entropy integral, obtained by Beta-function
    /// integrals of the radial form: S = −ln ζ + 8 ln 2 − 10/3.
    fn exact_entropy(zeta: f64) -> f64 {
        -zeta.ln() + 8.0 * std::f64::consts::LN_2 - 10.0 / 3.0
    }

    #[test]
    fn bohr_radius_natural_units() {
        assert_eq!(bohr_radius(1.0, 1.0, 1.0), 1.0);
        assert_eq!(bohr_radius(2.0, 1.0, 1.0), 0.5);
        assert_eq!(bohr_radius(1.0, 2.0, 1.0), 0.5);
    }

    #[test]
    fn com_volume_inversion_and_scaling() {
        let p = 3.0_f64.sqrt() * 2.0 * 0.7 / PI;
        let v = com_volume(p, 2.0, 0.7).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
        let v1 = com_volume(1.0, 1.0, 0.5).unwrap();
        let v2 = com_volume(1.0, 1.0, 1.0).unwrap();
        assert!((v1 / v2 - 8.0).abs() < 1e-12);
        assert!(com_volume(1.0, 1.0, 0.0).unwrap().is_infinite());
        assert!(matches!(
            com_volume(0.0, 1.0, 1.0),
            Err(Error::DegenerateMomentum)
        ));
    }

    #[test]
    fn rho_peaks_at_shift_with_value_zeta_over_volume() {
        let params = HydrogenParams::new(1.0, 1836.0, 1.0, 1.0, 2.0, 0.05).unwrap();
        let scale = params.spectral_scale().unwrap();
        let _volume = params.com_volume().unwrap();
        let ke = params.electron_wavenumber_vector();
        let peak = rho_eigenvalue(ke, &params).unwrap();
        assert!((peak - scale.zeta).abs() / scale.zeta < 1e-12);
        // one inverse Bohr radius away the profile drops by 2^4
        let a0 = params.bohr_radius();
        let off = rho_eigenvalue([ke[0] + 1.0 / a0, ke[1], ke[2]], &params).unwrap();
        assert!((off - scale.zeta / 16.0).abs() / scale.zeta < 1e-12);
    }

    #[test]
    fn spectral_trace_is_unity_across_eta() {
        for &eta in &[0.1, 0.5, 1.0, 3.0, 8.0] {
            let t = spectral_trace(eta, &cfg()).unwrap();
            assert!((t - 1.0).abs() < 1e-8, "eta={eta}: trace {t}");
        }
    }

    #[test]
    fn g_vanishes_at_zero_and_in_the_tail() {
        assert_eq!(g_integrand(0.0, 1.0, 1e-2), 0.0);
        assert!(g_integrand(1e6, 1.0, 1e-2).abs() < 1e-15);
    }

    #[test]
    fn g_positive_on_mid_window_for_small_zeta() {
        let mut max_g = f64::MIN;
        for i in 1..200 {
            let kappa = i as f64 * 0.05;
            max_g = max_g.max(g_integrand(kappa, 1.0, 1e-2));
        }
        assert!(max_g > 0.0);
    }

    #[test]
    fn entropy_matches_exact_closed_form() {
        for &zeta in &[1e-1, 1e-2, 1e-3] {
            let s = entropy(1.0, zeta, &cfg()).unwrap();
            let expect = exact_entropy(zeta);
            assert!(
                (s.nats - expect).abs() < 1e-6,
                "zeta={zeta}: quadrature {} vs exact {expect}",
                s.nats
            );
        }
    }

    #[test]
    fn entropy_is_eta_invariant() {
        let reference = entropy(1.0, 1e-2, &cfg()).unwrap().nats;
        for &eta in &[0.25, 0.5, 2.0, 4.0] {
            let s = entropy(eta, 1e-2, &cfg()).unwrap().nats;
            assert!(
                (s - reference).abs() < 1e-6,
                "eta={eta}: {s} vs {reference}"
            );
        }
    }

    #[test]
    fn entropy_routes_agree() {
        for &(eta, zeta) in &[(0.5, 1e-1), (1.0, 1e-3), (2.0, 1e-4)] {
            let a = entropy(eta, zeta, &cfg()).unwrap().nats;
            let b = entropy_shifted_radial(zeta, &cfg()).unwrap().nats;
            assert!((a - b).abs() < 1e-6, "({eta},{zeta}): {a} vs {b}");
        }
    }

    #[test]
    fn entropy_increases_as_zeta_shrinks() {
        let s1 = entropy(1.0, 1e-1, &cfg()).unwrap().nats;
        let s2 = entropy(1.0, 1e-2, &cfg()).unwrap().nats;
        let s3 = entropy(1.0, 1e-3, &cfg()).unwrap().nats;
        assert!(s1 < s2 && s2 < s3);
    }

    #[test]
    fn rydberg_values() {
        assert_eq!(rydberg_binding(1, 1.0, 1.0, 1.0), 0.5);
        assert_eq!(rydberg_binding(2, 1.0, 1.0, 1.0), 0.125);
        let b1 = rydberg_binding(3, 1.0, 1.0, 1.0);
        let b2 = rydberg_binding(6, 1.0, 1.0, 1.0);
        assert!((b1 / b2 - 4.0).abs() < 1e-12);
    }

    #[test]
    fn mapping_betas_agree_and_fix_bohr_radius() {
        let b = rydberg_binding(1, 1.0, 1.0, 1.0);
        let beta_osc = mapping_beta(b, 1.0, 1.0, MappingVariant::FourDimOscillator);
        let beta_iso = mapping_beta(b, 1.0, 1.0, MappingVariant::Isotonic);
        assert_eq!(beta_osc, beta_iso);
        assert!((beta_osc - 2.0).abs() < 1e-15);
        assert!((mapped_bohr_radius(beta_osc) - 1.0).abs() < 1e-15);

        // off natural units: beta * a0 = 2 must still hold
        let (m, e2, hbar) = (0.8, 1.7, 1.3);
        let b = rydberg_binding(1, m, e2, hbar);
        let a0 = bohr_radius(m, e2, hbar);
        for variant in [MappingVariant::FourDimOscillator, MappingVariant::Isotonic] {
            let beta = mapping_beta(b, m, hbar, variant);
            assert!((beta * a0 - 2.0).abs() < 1e-12, "{variant:?}");
        }
    }

    #[test]
    fn mapping_equivalence_holds() {
        let samples = [(1.0, 1e-2), (1.0, 1e-4), (2.0, 1e-3)];
        let (ok, rows) = mapping_equivalence_check(&samples, 1e-6, &cfg()).unwrap();
        assert!(ok, "{rows:?}");
    }
}
