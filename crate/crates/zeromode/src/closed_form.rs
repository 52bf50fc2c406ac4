//! Closed-form entanglement results for the negatively-coupled oscillator
//! pair, its free-particle (plane-wave) limit, and the perturbative
//! oscillator-coordinate eigenvalue, together with a brute-force grid
//! diagonalization oracle for the reduced kernel.

use crate::error::{Error, Result};
use crate::gaussian::{single_mode_entropy, DivergenceCause, EntropyValue, QuadraticHamiltonian};
use crate::matrix::Matrix;
use crate::quadrature::{integrate, QuadratureConfig};

/// Two oscillators with a negative coupling term:
/// H = −ħ²/2m (∂₁² + ∂₂²) + ½m[ω₀²(x₁² + x₂²) − ω₁²(x₁ − x₂)²].
#[derive(Debug, Clone, Copy)]
pub struct CoupledPair {
    pub omega0: f64,
    pub omega1: f64,
    pub mass: f64,
    pub hbar: f64,
}

impl CoupledPair {
    /// Natural units (m = ħ = 1).
    pub fn new(omega0: f64, omega1: f64) -> Result<Self> {
        Self::with_units(omega0, omega1, 1.0, 1.0)
    }

    pub fn with_units(omega0: f64, omega1: f64, mass: f64, hbar: f64) -> Result<Self> {
        if omega0 <= 0.0 || omega1 < 0.0 || mass <= 0.0 || hbar <= 0.0 {
            return Err(Error::Domain(
                "coupled pair requires omega0 > 0, omega1 >= 0, mass > 0, hbar > 0".into(),
            ));
        }
        let two_omega1_sq = 2.0 * omega1 * omega1;
        let omega0_sq = omega0 * omega0;
        // Equality is the zero-mode boundary and allowed; leave roundoff room.
        if two_omega1_sq > omega0_sq * (1.0 + 1e-12) {
            return Err(Error::ImaginaryMode {
                two_omega1_sq,
                omega0_sq,
            });
        }
        Ok(Self {
            omega0,
            omega1,
            mass,
            hbar,
        })
    }

    /// Normal-mode frequencies and inverse-length² scales:
    /// ω₊ = ω₀, ω₋ = √(ω₀² − 2ω₁²), β± = mω±/ħ.
    pub fn normal_modes(&self) -> ModePair {
        let omega_plus = self.omega0;
        let omega_minus = (self.omega0 * self.omega0 - 2.0 * self.omega1 * self.omega1)
            .max(0.0)
            .sqrt();
        ModePair {
            omega_plus,
            omega_minus,
            beta_plus: self.mass * omega_plus / self.hbar,
            beta_minus: self.mass * omega_minus / self.hbar,
        }
    }

    /// R = ω₋/ω₊ = β₋/β₊ ∈ [0, 1].
    pub fn ratio(&self) -> f64 {
        let modes = self.normal_modes();
        modes.omega_minus / modes.omega_plus
    }

    /// Unit-mass potential matrix in the original coordinates,
    /// K = [[ω₀²−ω₁², ω₁²], [ω₁², ω₀²−ω₁²]], for cross-checks against the
    /// generic N-oscillator engine.
    pub fn scaled_potential(&self) -> QuadraticHamiltonian {
        let d = self.omega0 * self.omega0 - self.omega1 * self.omega1;
        let c = self.omega1 * self.omega1;
        let m = Matrix::from_fn(2, 2, |i, j| if i == j { d } else { c });
        QuadraticHamiltonian::with_default_tol(m).expect("2x2 symmetric by construction")
    }
}

/// Normal-mode data of a [`CoupledPair`].
#[derive(Debug, Clone, Copy)]
pub struct ModePair {
    pub omega_plus: f64,
    pub omega_minus: f64,
    pub beta_plus: f64,
    pub beta_minus: f64,
}

/// ξ(R) = (1−R)² / (1 + R² + 6R + 4(1+R)√R) for R ∈ [0, 1].
///
/// ξ(1) = 0 (decoupled), ξ(0) = 1 (zero-mode limit). The expression is
/// invariant under R → 1/R, so the β₊/β₋ labelling does not matter.
pub fn xi_of_ratio(r: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&r) {
        return Err(Error::Domain(format!(
            "ratio R must lie in [0, 1], got {r}"
        )));
    }
    let sqrt_r = r.sqrt();
    let num = (1.0 - r) * (1.0 - r);
    let den = 1.0 + r * r + 6.0 * r + 4.0 * (1.0 + r) * sqrt_r;
    Ok(num / den)
}

/// Ground-state entanglement entropy of the pair as a function of R.
/// Finite for R > 0; the R → 0 zero-mode limit is the divergent sentinel.
pub fn entropy_closed(r: f64) -> Result<EntropyValue> {
    let xi = xi_of_ratio(r)?;
    if r == 0.0 {
        return Ok(EntropyValue::divergent(DivergenceCause::ZeroMode));
    }
    Ok(EntropyValue::finite(single_mode_entropy(xi)))
}

/// Parameters of the reduced one-oscillator kernel
/// ρ₁(x, x′) = √((γ₁−γ₂)/π) exp(−γ₁(x²+x′²)/2 + γ₂ x x′).
#[derive(Debug, Clone, Copy)]
pub struct ReducedKernel {
    pub gamma1: f64,
    pub gamma2: f64,
    pub varrho: f64,
    pub xi: f64,
}

/// γ₁, γ₂, ϱ = √(β₊β₋) and ξ = γ₂/(γ₁+ϱ) from the normal-mode scales.
pub fn reduced_kernel_params(pair: &CoupledPair) -> ReducedKernel {
    let m = pair.normal_modes();
    let (bp, bm) = (m.beta_plus, m.beta_minus);
    let denom = 4.0 * (bp + bm);
    let gamma1 = (bp * bp + bm * bm + 6.0 * bp * bm) / denom;
    let gamma2 = (bp - bm) * (bp - bm) / denom;
    let varrho = (bp * bm).sqrt();
    let xi = gamma2 / (gamma1 + varrho);
    ReducedKernel {
        gamma1,
        gamma2,
        varrho,
        xi,
    }
}

/// Grid for the brute-force kernel diagonalization.
#[derive(Debug, Clone, Copy)]
pub struct GridSpec {
    /// Half-width L of the symmetric domain [−L, L]; `None` picks
    /// 6/√(min effective β), six Gaussian widths of the slowest scale.
    pub half_width: Option<f64>,
    /// Number of grid points (≥ 64).
    pub points: usize,
}

impl GridSpec {
    pub fn with_points(points: usize) -> Self {
        Self {
            half_width: None,
            points,
        }
    }
}

/// Brute-force oracle: discretize the reduced kernel on an n-point grid,
/// diagonalize the symmetric Nyström matrix h·ρ(x_i, x_j), and sum
/// −p ln p over eigenvalues above 1e−14.
pub fn grid_entropy(pair: &CoupledPair, grid: &GridSpec) -> Result<EntropyValue> {
    let kernel = reduced_kernel_params(pair);
    let width = kernel.gamma1 - kernel.gamma2;
    if width <= 0.0 {
        // Zero-mode boundary: the kernel is no longer normalizable.
        return Ok(EntropyValue::divergent(DivergenceCause::ZeroMode));
    }
    let modes = pair.normal_modes();
    let beta_min = modes
        .beta_plus
        .min(modes.beta_minus)
        .min(kernel.varrho)
        .min(width);
    let half_width = grid.half_width.unwrap_or(6.0 / beta_min.sqrt());
    grid_entropy_from_kernel(kernel.gamma1, kernel.gamma2, half_width, grid.points)
}

/// Ladder eigenvalues of a scalar Gaussian kernel
/// ρ(x, x′) = √((γ−β)/π) exp(−γ(x²+x′²)/2 + β x x′), found by diagonalizing
/// the symmetric Nyström matrix h·ρ(x_i, x_j). Returned descending, clipped
/// at zero.
pub fn kernel_grid_eigenvalues(
    gamma: f64,
    beta: f64,
    half_width: f64,
    points: usize,
) -> Result<Vec<f64>> {
    if points < 64 {
        return Err(Error::Domain(format!(
            "grid needs at least 64 points, got {points}"
        )));
    }
    if half_width <= 0.0 {
        return Err(Error::Domain("grid half-width must be positive".into()));
    }
    if gamma <= beta.abs() {
        return Err(Error::Domain(
            "kernel requires gamma > |beta| to be normalizable".into(),
        ));
    }

    let n = points;
    let h = 2.0 * half_width / (n as f64 - 1.0);
    let norm = ((gamma - beta) / std::f64::consts::PI).sqrt();
    let xs: Vec<f64> = (0..n).map(|i| -half_width + h * i as f64).collect();

    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let v = h
                * norm
                * (-0.5 * gamma * (xs[i] * xs[i] + xs[j] * xs[j]) + beta * xs[i] * xs[j]).exp();
            m[(i, j)] = v;
            m[(j, i)] = v;
        }
    }

    let mut eigenvalues = crate::eigen::symmetric_eigenvalues(&m);
    eigenvalues.reverse();
    for p in &mut eigenvalues {
        *p = p.max(0.0);
    }
    Ok(eigenvalues)
}

/// Grid diagonalization of a general scalar Gaussian kernel: entropy
/// −Σ p ln p over eigenvalues above 1e−14.
pub fn grid_entropy_from_kernel(
    gamma: f64,
    beta: f64,
    half_width: f64,
    points: usize,
) -> Result<EntropyValue> {
    let eigenvalues = kernel_grid_eigenvalues(gamma, beta, half_width, points)?;
    let mut s = 0.0;
    for p in eigenvalues {
        if p > 1e-14 {
            s -= p * p.ln();
        }
    }
    Ok(EntropyValue::finite(s))
}

/// ξ estimated from the grid spectrum as the ratio of the two largest ladder
/// eigenvalues, p₁/p₀.
pub fn grid_xi_estimate(pair: &CoupledPair, grid: &GridSpec) -> Result<f64> {
    let kernel = reduced_kernel_params(pair);
    let width = kernel.gamma1 - kernel.gamma2;
    if width <= 0.0 {
        return Err(Error::Domain(
            "zero-mode boundary: kernel not normalizable".into(),
        ));
    }
    let modes = pair.normal_modes();
    let beta_min = modes
        .beta_plus
        .min(modes.beta_minus)
        .min(kernel.varrho)
        .min(width);
    let half_width = grid.half_width.unwrap_or(6.0 / beta_min.sqrt());
    let p = kernel_grid_eigenvalues(kernel.gamma1, kernel.gamma2, half_width, grid.points)?;
    if p[0] <= 0.0 {
        return Err(Error::Domain("grid spectrum degenerate".into()));
    }
    Ok(p[1] / p[0])
}

/// Grid oracle with the doubling policy: n starts at 256 and doubles until
/// two successive estimates differ by less than `1e-4` (cap 2048).
pub fn grid_entropy_converged(pair: &CoupledPair) -> Result<(EntropyValue, usize)> {
    let mut n = 256;
    let mut prev = grid_entropy(pair, &GridSpec::with_points(n))?;
    loop {
        let next_n = n * 2;
        let next = grid_entropy(pair, &GridSpec::with_points(next_n))?;
        if (next.nats() - prev.nats()).abs() < 1e-4 {
            return Ok((next, next_n));
        }
        if next_n >= 2048 {
            return Err(Error::Quadrature(format!(
                "grid entropy not converged at n = {next_n}: delta {:.3e}",
                (next.nats() - prev.nats()).abs()
            )));
        }
        n = next_n;
        prev = next;
    }
}

/// Free-particle limit of a soft oscillator mode at fixed energy: the
/// oscillator eigenstate becomes a plane wave of wavenumber k = √(2mE)/ħ
/// spanning the normalization volume Ω = πħk/(mω), which opens up to the
/// whole line as ω → 0.
#[derive(Debug, Clone, Copy)]
pub struct PlaneWaveLimit {
    pub energy: f64,
    pub wavenumber: f64,
    pub volume: f64,
}

impl PlaneWaveLimit {
    pub fn new(energy: f64, omega: f64, mass: f64, hbar: f64) -> Result<Self> {
        if energy <= 0.0 {
            return Err(Error::Domain("plane-wave energy must be positive".into()));
        }
        let wavenumber = (2.0 * mass * energy).sqrt() / hbar;
        let volume = plane_wave_volume(wavenumber, omega, mass, hbar)?;
        Ok(Self {
            energy,
            wavenumber,
            volume,
        })
    }
}

/// Plane-wave normalization volume Ω = πħk/(mω) of the free-particle limit.
/// Returns +∞ when ω = 0 (the limit the approximation is built for).
pub fn plane_wave_volume(k: f64, omega: f64, mass: f64, hbar: f64) -> Result<f64> {
    if k <= 0.0 || omega < 0.0 || mass <= 0.0 || hbar <= 0.0 {
        return Err(Error::Domain(
            "plane-wave volume requires k > 0, omega >= 0, mass > 0, hbar > 0".into(),
        ));
    }
    if omega == 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(std::f64::consts::PI * hbar * k / (mass * omega))
}

/// IR energy that matches the plane-wave entropy to the exact two-oscillator
/// result: E₋ = 8ħω₀/(πe²) with e the Euler number.
pub fn ir_energy_choice(omega0: f64, hbar: f64) -> f64 {
    let e = std::f64::consts::E;
    8.0 * hbar * omega0 / (std::f64::consts::PI * e * e)
}

/// Entanglement entropy in the free-particle limit of the soft mode:
/// S = −√2 ln( (4ω₋/(e k₋)) √(m/(πħω₊)) ), with k₋ = √(2mE₋)/ħ.
///
/// With `e_minus` = [`ir_energy_choice`]`(ω₊)` this reduces algebraically to
/// −√2 ln(ω₋/ω₊). ω₋ = 0 gives the divergent zero-mode sentinel. Parameter
/// combinations that would make the formula negative (beyond roundoff) are
/// outside the approximation's validity and rejected.
pub fn free_particle_entropy(
    omega_plus: f64,
    omega_minus: f64,
    e_minus: f64,
    mass: f64,
    hbar: f64,
) -> Result<EntropyValue> {
    if omega_plus <= 0.0 || omega_minus < 0.0 || e_minus <= 0.0 || mass <= 0.0 || hbar <= 0.0 {
        return Err(Error::Domain(
            "free-particle entropy requires positive inputs (omega_minus may be zero)".into(),
        ));
    }
    if omega_minus == 0.0 {
        return Ok(EntropyValue::divergent(DivergenceCause::ZeroMode));
    }
    let e = std::f64::consts::E;
    let k_minus = (2.0 * mass * e_minus).sqrt() / hbar;
    let arg = 4.0 * omega_minus / (e * k_minus)
        * (mass / (std::f64::consts::PI * hbar * omega_plus)).sqrt();
    let s = -std::f64::consts::SQRT_2 * arg.ln();
    if s < -1e-9 {
        return Err(Error::Domain(format!(
            "free-particle entropy is negative ({s:.6e}); outside the soft-mode regime"
        )));
    }
    Ok(EntropyValue::finite(s.max(0.0)))
}

/// Eigenvalue density of the plane-wave reduced state at wavenumber `k`:
/// a Gaussian profile centred on k₋/√2 whose width is set by the bound
/// mode's β₊, normalized so that (Ω/2π) ∫ ρ̃ dk = 1.
///
/// `beta_minus` only controls the collapse of the soft mode (it does not
/// enter the reduced spectrum's shape) and is validated for interface parity.
pub fn plane_wave_reduced_eigenvalue(
    k: f64,
    k_minus: f64,
    beta_plus: f64,
    beta_minus: f64,
    volume: f64,
) -> Result<f64> {
    if beta_plus <= 0.0 || beta_minus < 0.0 || volume <= 0.0 || k_minus < 0.0 {
        return Err(Error::Domain(
            "plane-wave spectrum requires beta_plus > 0, beta_minus >= 0, volume > 0".into(),
        ));
    }
    let u = std::f64::consts::SQRT_2 * k - k_minus;
    let amp = 2.0 * std::f64::consts::SQRT_2 / volume * (std::f64::consts::PI / beta_plus).sqrt();
    Ok(amp * (-u * u / beta_plus).exp())
}

/// Trace of the plane-wave reduced spectrum, (Ω/2π) ∫ ρ̃ dk, by quadrature.
pub fn plane_wave_spectrum_trace(
    k_minus: f64,
    beta_plus: f64,
    beta_minus: f64,
    volume: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let center = k_minus / std::f64::consts::SQRT_2;
    let spread = (beta_plus.sqrt() * 10.0).max(1.0);
    let q = integrate(
        |k| plane_wave_reduced_eigenvalue(k, k_minus, beta_plus, beta_minus, volume).unwrap(),
        center - spread,
        center + spread,
        cfg,
    )?;
    Ok(volume / (2.0 * std::f64::consts::PI) * q.value)
}

/// Spectral entropy −(Ω/2π) ∫ ρ̃ ln ρ̃ dk of the plane-wave reduced state.
///
/// Unlike the bounded ladder entropy this continuum expression is meaningful
/// only toward the zero-mode regime (it grows without bound as Ω → ∞ and can
/// go negative for a stiff soft mode), so it is returned as a bare number.
pub fn plane_wave_spectral_entropy(
    k_minus: f64,
    beta_plus: f64,
    beta_minus: f64,
    volume: f64,
    cfg: &QuadratureConfig,
) -> Result<f64> {
    let center = k_minus / std::f64::consts::SQRT_2;
    let spread = (beta_plus.sqrt() * 10.0).max(1.0);
    let q = integrate(
        |k| {
            let rho =
                plane_wave_reduced_eigenvalue(k, k_minus, beta_plus, beta_minus, volume).unwrap();
            if rho > 0.0 {
                rho * rho.ln()
            } else {
                0.0
            }
        },
        center - spread,
        center + spread,
        cfg,
    )?;
    Ok(-volume / (2.0 * std::f64::consts::PI) * q.value)
}

/// Perturbative value with its expansion-window flag.
#[derive(Debug, Clone, Copy)]
pub struct PerturbativeValue {
    pub value: f64,
    /// Set for ε > 0.2, where the cubic truncation starts to strain.
    pub beyond_window: bool,
}

/// Leading reduced-state eigenvalue in the distorted oscillator coordinates
/// at point separation ε: λ = 1 − ε/4 − ε²/24 − ε³/64.
///
/// Valid for small ε; |ε| above 0.5 is rejected, above 0.2 flagged.
pub fn distorted_lambda(epsilon: f64) -> Result<PerturbativeValue> {
    if epsilon.abs() > 0.5 {
        return Err(Error::Domain(format!(
            "separation parameter must satisfy |eps| <= 0.5, got {epsilon}"
        )));
    }
    let e2 = epsilon * epsilon;
    let value = 1.0 - epsilon / 4.0 - e2 / 24.0 - e2 * epsilon / 64.0;
    Ok(PerturbativeValue {
        value,
        beyond_window: epsilon.abs() > 0.2,
    })
}

/// Entropy of the single perturbative eigenvalue: S = −λ ln λ.
pub fn distorted_entropy(epsilon: f64) -> Result<PerturbativeValue> {
    let lambda = distorted_lambda(epsilon)?;
    let l = lambda.value;
    // + 0.0 normalizes the -0.0 that -1·ln(1) would produce at ε = 0
    let s = if l > 0.0 { -l * l.ln() + 0.0 } else { 0.0 };
    Ok(PerturbativeValue {
        value: s,
        beyond_window: lambda.beyond_window,
    })
}
