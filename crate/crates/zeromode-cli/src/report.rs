//! The `oracle` verification suite: every cross-route invariant of the
//! library is evaluated and reported as one check line. Checks fall into
//! three outcomes: `pass`, `fail`, and `divergent-as-expected` for the
//! zero-mode sentinels that are supposed to fire. One entry
//! (`lattice_n3_open_vs_periodic_mismatch`) asserts the *presence* of the
//! documented discrepancy between the two stated three-site descriptions;
//! it would fail if the mismatch ever disappeared.
//!
//! Measured values and statuses are deterministic (fixed seeds, fixed
//! grids); wall-clock timings are kept out of the report so consecutive
//! runs are byte-identical.

use std::fmt::Write as _;
use std::time::Instant;

use zeromode::closed_form::{
    distorted_entropy, distorted_lambda, entropy_closed, free_particle_entropy, grid_entropy,
    grid_xi_estimate, ir_energy_choice, plane_wave_spectral_entropy, plane_wave_spectrum_trace,
    reduced_kernel_params, xi_of_ratio, CoupledPair, GridSpec,
};
use zeromode::gaussian::{eigendecompose_symmetric, entanglement_entropy};
use zeromode::hydrogen;
use zeromode::lattice;
use zeromode::quadrature::QuadratureConfig;
use zeromode::rng::SplitMix64;
use zeromode::tripartite::{
    classify, entropy_x1, entropy_x2, kappa_closed_form, RegimeLabel, ScaledCouplings,
};

use crate::output::format_float;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    DivergentAsExpected,
}

impl CheckStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::DivergentAsExpected => "divergent-as-expected",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub measured: f64,
    pub tolerance: f64,
    /// Wall time of the check; reported on stderr only, never serialized.
    pub wall_ms: f64,
}

impl CheckResult {
    pub fn is_failure(&self) -> bool {
        self.status == CheckStatus::Fail
    }
}

struct Suite {
    results: Vec<CheckResult>,
    cfg: QuadratureConfig,
    zero_tol: f64,
}

impl Suite {
    fn run(
        &mut self,
        name: &'static str,
        tolerance: f64,
        body: impl FnOnce(&QuadratureConfig) -> (f64, CheckStatus),
    ) {
        let start = Instant::now();
        let (measured, status) = body(&self.cfg);
        self.results.push(CheckResult {
            name,
            status,
            measured,
            tolerance,
            wall_ms: start.elapsed().as_secs_f64() * 1e3,
        });
    }

    /// Pass iff the measured error is within tolerance.
    fn check(
        &mut self,
        name: &'static str,
        tolerance: f64,
        body: impl FnOnce(&QuadratureConfig) -> f64,
    ) {
        self.run(name, tolerance, |cfg| {
            let measured = body(cfg);
            let status = if measured.is_finite() && measured <= tolerance {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            (measured, status)
        });
    }

    /// Pass iff the measured value strictly exceeds the threshold (used for
    /// gaps and monotonicity margins).
    fn check_exceeds(
        &mut self,
        name: &'static str,
        threshold: f64,
        body: impl FnOnce(&QuadratureConfig) -> f64,
    ) {
        self.run(name, threshold, |cfg| {
            let measured = body(cfg);
            let status = if measured > threshold {
                CheckStatus::Pass
            } else {
                CheckStatus::Fail
            };
            (measured, status)
        });
    }

    /// Records an expected divergence: pass (as divergent-as-expected) iff
    /// the sentinel fired.
    fn check_divergent(
        &mut self,
        name: &'static str,
        body: impl FnOnce(&QuadratureConfig) -> bool,
    ) {
        self.run(name, f64::INFINITY, |cfg| {
            if body(cfg) {
                (f64::INFINITY, CheckStatus::DivergentAsExpected)
            } else {
                (0.0, CheckStatus::Fail)
            }
        });
    }
}

fn pair_with_ratio(r: f64) -> CoupledPair {
    let omega1 = ((1.0 - r * r) / 2.0_f64).sqrt();
    CoupledPair::new(1.0, omega1).expect("ratio in (0,1] is valid")
}

/// Run every registered check. Deterministic: fixed seeds and grids.
pub fn run_all(rel_tol: f64, zero_tol: f64) -> Vec<CheckResult> {
    let mut suite = Suite {
        results: Vec::new(),
        cfg: QuadratureConfig {
            rel_tol,
            ..Default::default()
        },
        zero_tol,
    };
    let zt = suite.zero_tol;
    let s = &mut suite;

    // ── two-oscillator closed forms ──────────────────────────────
    s.check("pair_entropy_decoupled_zero", 1e-12, |_| {
        entropy_closed(1.0).unwrap().nats().abs()
    });

    s.check_exceeds("pair_entropy_monotone_decreasing", 0.0, |_| {
        let grid = crate::grid::GridRange::new(1e-4, 1.0, 1000, crate::grid::Spacing::Geometric)
            .unwrap()
            .values();
        let mut min_drop = f64::INFINITY;
        for w in grid.windows(2) {
            let drop = entropy_closed(w[0]).unwrap().nats() - entropy_closed(w[1]).unwrap().nats();
            min_drop = min_drop.min(drop);
        }
        min_drop
    });

    s.check_divergent("pair_zero_mode_sentinel", |_| {
        entropy_closed(0.0).unwrap().is_divergent()
    });

    s.check("grid_oracle_agreement", 1e-3, |_| {
        let mut worst = 0.0_f64;
        for &r in &[0.3, 0.5, 0.8] {
            let pair = pair_with_ratio(r);
            let closed = entropy_closed(r).unwrap().nats();
            for &n in &[256usize, 512, 1024] {
                let grid = grid_entropy(&pair, &GridSpec::with_points(n))
                    .unwrap()
                    .nats();
                worst = worst.max((grid - closed).abs());
            }
        }
        worst
    });

    s.check("xi_consistency_algebraic", 1e-12, |_| {
        let mut worst = 0.0_f64;
        for &r in &[0.1, 0.25, 0.5, 0.8, 0.95] {
            let pair = pair_with_ratio(r);
            let formula = xi_of_ratio(r).unwrap();
            worst = worst.max((formula - reduced_kernel_params(&pair).xi).abs());
        }
        worst
    });

    s.check("xi_consistency_grid_fit", 1e-3, |_| {
        let mut worst = 0.0_f64;
        for &r in &[0.3, 0.5, 0.8] {
            let pair = pair_with_ratio(r);
            let formula = xi_of_ratio(r).unwrap();
            let fitted = grid_xi_estimate(&pair, &GridSpec::with_points(512)).unwrap();
            worst = worst.max((formula - fitted).abs());
        }
        worst
    });

    // ── free-particle limit ──────────────────────────────────────
    s.check("free_particle_identity", 1e-12, |_| {
        let mut rng = SplitMix64::new(31);
        let mut worst = 0.0_f64;
        let mut done = 0;
        while done < 100 {
            let omega0 = rng.uniform(0.05, 20.0);
            let omega1 = (rng.next_f64() * omega0 * omega0 / 2.0).sqrt();
            let modes = CoupledPair::new(omega0, omega1).unwrap().normal_modes();
            if modes.omega_minus == 0.0 {
                continue;
            }
            let e_minus = ir_energy_choice(modes.omega_plus, 1.0);
            let s = free_particle_entropy(modes.omega_plus, modes.omega_minus, e_minus, 1.0, 1.0)
                .unwrap()
                .nats();
            let expected = -std::f64::consts::SQRT_2 * (modes.omega_minus / modes.omega_plus).ln();
            worst = worst.max((s - expected).abs());
            done += 1;
        }
        worst
    });

    s.check("plane_wave_unit_trace", 1e-9, |cfg| {
        let mut worst = 0.0_f64;
        for &(k_minus, beta_plus, volume) in &[(0.0, 1.0, 5.0), (2.0, 0.3, 40.0), (10.0, 4.0, 2.0)]
        {
            let t = plane_wave_spectrum_trace(k_minus, beta_plus, 0.5, volume, cfg).unwrap();
            worst = worst.max((t - 1.0).abs());
        }
        worst
    });

    s.check("plane_wave_phase_invariance", 1e-8, |cfg| {
        let reference = plane_wave_spectral_entropy(0.0, 1.0, 0.5, 50.0, cfg).unwrap();
        let mut worst = 0.0_f64;
        for &k_minus in &[1.0, 10.0] {
            let s = plane_wave_spectral_entropy(k_minus, 1.0, 0.5, 50.0, cfg).unwrap();
            worst = worst.max((s - reference).abs());
        }
        worst
    });

    s.check_divergent("free_particle_zero_mode_sentinel", |_| {
        free_particle_entropy(1.0, 0.0, 1.0, 1.0, 1.0)
            .unwrap()
            .is_divergent()
    });

    // ── hydrogen ─────────────────────────────────────────────────
    s.check("hydrogen_unit_trace", 1e-6, |cfg| {
        let mut rng = SplitMix64::new(4242);
        let mut worst = 0.0_f64;
        let mut done = 0;
        while done < 20 {
            let params = hydrogen::HydrogenParams::new(
                rng.log_uniform(0.2, 5.0),
                rng.log_uniform(10.0, 4000.0),
                rng.log_uniform(0.2, 5.0),
                rng.log_uniform(0.5, 2.0),
                rng.log_uniform(0.1, 10.0),
                rng.log_uniform(1e-3, 1.0),
            )
            .unwrap();
            let scale = params.spectral_scale().unwrap();
            if !(0.05..=20.0).contains(&scale.eta) {
                continue;
            }
            let t = hydrogen::spectral_trace(scale.eta, cfg).unwrap();
            worst = worst.max((t - 1.0).abs());
            done += 1;
        }
        worst
    });

    s.check("hydrogen_eta_invariance", 1e-4, |cfg| {
        let mut spread = 0.0_f64;
        for &zeta in &[1e-1, 1e-2, 1e-3] {
            let mut lo = f64::INFINITY;
            let mut hi = f64::NEG_INFINITY;
            for &eta in &[0.25, 0.5, 1.0, 2.0, 4.0] {
                let v = hydrogen::entropy(eta, zeta, cfg).unwrap().nats;
                lo = lo.min(v);
                hi = hi.max(v);
            }
            spread = spread.max(hi - lo);
        }
        spread
    });

    s.check_exceeds("hydrogen_zeta_monotone", 0.0, |cfg| {
        let mut previous = f64::NEG_INFINITY;
        let mut min_step = f64::INFINITY;
        for k in 0..=10 {
            let zeta = 10f64.powf(-1.0 - 0.5 * k as f64);
            let v = hydrogen::entropy(1.0, zeta, cfg).unwrap().nats;
            if previous.is_finite() {
                min_step = min_step.min(v - previous);
            }
            previous = v;
        }
        min_step
    });

    s.check_exceeds("hydrogen_divergence_gap", 1.0, |cfg| {
        hydrogen::entropy(1.0, 1e-6, cfg).unwrap().nats
            - hydrogen::entropy(1.0, 1e-3, cfg).unwrap().nats
    });

    s.check("hydrogen_route_agreement", 1e-6, |cfg| {
        let mut worst = 0.0_f64;
        for &(eta, zeta) in &[(0.5, 1e-1), (1.0, 1e-3), (2.0, 1e-4)] {
            let a = hydrogen::entropy(eta, zeta, cfg).unwrap().nats;
            let b = hydrogen::entropy_shifted_radial(zeta, cfg).unwrap().nats;
            worst = worst.max((a - b).abs());
        }
        worst
    });

    s.check("hydrogen_g_endpoints", 1e-12, |cfg| {
        let origin = hydrogen::g_integrand(0.0, 1.0, 1e-2).abs();
        let tail = hydrogen::entropy(1.0, 1e-2, cfg)
            .map(|s| hydrogen::g_integrand(s.kappa_max, 1.0, 1e-2).abs())
            .unwrap();
        origin.max(tail)
    });

    s.check("mapping_bohr_identity", 1e-12, |_| {
        let (m, e2, hbar) = (0.9, 1.4, 1.1);
        let binding = hydrogen::rydberg_binding(1, m, e2, hbar);
        let a0 = hydrogen::bohr_radius(m, e2, hbar);
        let mut worst = 0.0_f64;
        for variant in [
            hydrogen::MappingVariant::FourDimOscillator,
            hydrogen::MappingVariant::Isotonic,
        ] {
            let beta = hydrogen::mapping_beta(binding, m, hbar, variant);
            worst = worst.max((beta * a0 - 2.0).abs());
        }
        worst
    });

    s.check("mapping_equivalence", 1e-6, |cfg| {
        let samples = [(1.0, 1e-2), (1.0, 1e-4), (2.0, 1e-3)];
        let (_, rows) = hydrogen::mapping_equivalence_check(&samples, 1e-6, cfg).unwrap();
        rows.iter().map(|r| r.delta).fold(0.0, f64::max)
    });

    // ── tripartite ───────────────────────────────────────────────
    s.check("tripartite_closed_vs_numeric", 1e-10, |_| {
        let mut rng = SplitMix64::new(2024);
        let mut worst = 0.0_f64;
        for _ in 0..1000 {
            let c = ScaledCouplings::new(
                rng.uniform(-3.0, 3.0),
                rng.uniform(-3.0, 3.0),
                rng.uniform(0.05, 9.0),
            );
            let (k1, k2, k3) = kappa_closed_form(&c);
            let mut expected = [k1, k2, k3];
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            let spectrum = eigendecompose_symmetric(&c.coupling_matrix(zt).unwrap());
            for (got, want) in spectrum.eigenvalues.iter().zip(expected.iter()) {
                worst = worst.max((got - want).abs());
            }
        }
        worst
    });

    s.check_divergent("tripartite_free_particle_sentinel", |_| {
        let c = ScaledCouplings::new(1.0, 1.0, 2.0);
        classify(&c, zt).label == RegimeLabel::FreeParticle
            && entropy_x1(&c, zt).unwrap().is_divergent()
    });

    s.check_exceeds("tripartite_monotone_growth", 0.0, |_| {
        let mut previous = f64::NEG_INFINITY;
        let mut min_step = f64::INFINITY;
        for &delta in &[1e-2, 1e-4, 1e-8] {
            let c = ScaledCouplings::new(1.0, 1.0, 2.0 * (1.0 + delta));
            let v = entropy_x1(&c, zt).unwrap().nats();
            if previous.is_finite() {
                min_step = min_step.min(v - previous);
            }
            previous = v;
        }
        min_step
    });

    s.check("tripartite_swap_symmetry", 1e-10, |_| {
        let mut worst = 0.0_f64;
        for &(alpha, beta, k) in &[(0.9, 0.3, 2.0), (1.2, -0.4, 3.0), (0.2, 1.1, 4.0)] {
            let s1 = entropy_x1(&ScaledCouplings::new(alpha, beta, k), zt)
                .unwrap()
                .nats();
            let s2 = entropy_x2(&ScaledCouplings::new(beta, alpha, k), zt)
                .unwrap()
                .nats();
            worst = worst.max((s1 - s2).abs());
        }
        worst
    });

    // ── lattice ──────────────────────────────────────────────────
    s.check("lattice_dispersion_identity", 1e-12, |_| {
        let mut worst = 0.0_f64;
        for n in 2..=64usize {
            let p = lattice::LatticeParams::new(n, 1.0, 1.0).unwrap();
            let spectrum = eigendecompose_symmetric(&lattice::coupling_matrix(&p));
            let mut expected: Vec<f64> = (0..n).map(|k| lattice::dispersion(k, &p)).collect();
            expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
            for (got, want) in spectrum.eigenvalues.iter().zip(expected.iter()) {
                worst = worst.max((got - want).abs());
            }
        }
        worst
    });

    s.check("lattice_massless_single_zero_mode", 0.0, |_| {
        let mut worst = 0.0_f64;
        for n in 2..=64usize {
            let p = lattice::LatticeParams::new(n, 1.0, 0.0).unwrap();
            let vals: Vec<f64> = (0..n).map(|k| lattice::dispersion(k, &p)).collect();
            worst = worst.max((lattice::zero_mode_count(&vals, zt) as f64 - 1.0).abs());
        }
        worst
    });

    s.check_exceeds("lattice_transformed_ir_monotone", 0.0, |_| {
        let cut = lattice::first_half_cut(32);
        let mut previous = f64::NEG_INFINITY;
        let mut min_step = f64::INFINITY;
        for &mu in &[0.9, 0.99, 0.999] {
            let v = lattice::transformed_entropy(mu, 32, &cut).unwrap().nats();
            if previous.is_finite() {
                min_step = min_step.min(v - previous);
            }
            previous = v;
        }
        min_step
    });

    s.check_exceeds("lattice_uv_monotone", 0.0, |_| {
        let cut = lattice::first_half_cut(16);
        let mut previous = f64::NEG_INFINITY;
        let mut min_step = f64::INFINITY;
        for &a in &[2.0, 1.0, 0.5, 0.25] {
            let p = lattice::LatticeParams::new(16, a, 1.0).unwrap();
            let v = lattice::half_chain_entropy(&p, &cut, false).unwrap().nats();
            if previous.is_finite() {
                min_step = min_step.min(v - previous);
            }
            previous = v;
        }
        min_step
    });

    s.check("lattice_two_site_pair_identity", 1e-10, |_| {
        let mut worst = 0.0_f64;
        for &(a, m) in &[(1.0, 10.0), (0.7, 2.0), (2.0, 0.5)] {
            let p = lattice::LatticeParams::new(2, a, m).unwrap();
            let engine = lattice::half_chain_entropy(&p, &[0], false).unwrap().nats();
            let r = m / (m * m + 4.0 / (a * a)).sqrt();
            worst = worst.max((engine - entropy_closed(r).unwrap().nats()).abs());
        }
        worst
    });

    s.check("lattice_n3_open_chain_modes", 1e-12, |_| {
        let p = lattice::LatticeParams::new(3, 0.8, 1.3).unwrap();
        let spectrum = eigendecompose_symmetric(&lattice::three_site_open_chain_matrix(&p));
        let expected = lattice::three_site_open_chain_modes(&p);
        spectrum
            .eigenvalues
            .iter()
            .zip(expected.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });

    // The two stated three-site descriptions genuinely disagree (open chain
    // vs periodic dispersion); this check asserts the documented mismatch
    // is present, so it would fail if the two ever started agreeing.
    s.check_exceeds("lattice_n3_open_vs_periodic_mismatch", 0.4, |_| {
        let p = lattice::LatticeParams::new(3, 1.0, 1.0).unwrap();
        let open = lattice::three_site_open_chain_modes(&p);
        let mut periodic: Vec<f64> = (0..3).map(|k| lattice::dispersion(k, &p)).collect();
        periodic.sort_by(|a, b| a.partial_cmp(b).unwrap());
        open.iter()
            .zip(periodic.iter())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    });

    s.check_divergent("lattice_transformed_zero_mode_sentinel", |_| {
        lattice::transformed_entropy(1.0, 8, &lattice::first_half_cut(8))
            .unwrap()
            .is_divergent()
    });

    // ── perturbative eigenvalue ──────────────────────────────────
    s.check("perturbative_lambda_value", 1e-12, |_| {
        (distorted_lambda(0.2).unwrap().value - 0.9482083333333334).abs()
    });

    s.check("perturbative_small_slope", 0.05, |_| {
        let eps = 1e-4;
        let slope = distorted_entropy(eps).unwrap().value / eps;
        (slope - 0.25).abs() / 0.25
    });

    // ── generic engine invariants ────────────────────────────────
    s.check("engine_partition_symmetry", 1e-8, |_| {
        let mut rng = SplitMix64::new(0xacce55);
        let mut worst = 0.0_f64;
        for _ in 0..50 {
            let n = 3 + rng.below(4);
            let mut a = zeromode::Matrix::zeros(n, n);
            for i in 0..n {
                for j in 0..=i {
                    let x = rng.uniform(-1.0, 1.0);
                    a[(i, j)] = x;
                    a[(j, i)] = x;
                }
            }
            let mut k = a.mul(&a.transpose());
            for i in 0..n {
                k[(i, i)] += 0.2;
            }
            k.symmetrize();
            let h = zeromode::QuadraticHamiltonian::with_default_tol(k).unwrap();
            let cut = 1 + rng.below(n - 1);
            let traced: Vec<usize> = (0..cut).collect();
            let complement: Vec<usize> = (cut..n).collect();
            let s1 = entanglement_entropy(&h, &traced).unwrap().nats();
            let s2 = entanglement_entropy(&h, &complement).unwrap().nats();
            worst = worst.max((s1 - s2).abs());
        }
        worst
    });

    suite.results
}

/// One deterministic line per check, suitable for stdout.
pub fn render_lines(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let _ = writeln!(
            out,
            "{:<24} {}  measured={} tolerance={}",
            r.status.as_str().to_uppercase(),
            r.name,
            format_float(r.measured),
            format_float(r.tolerance),
        );
    }
    let failures = results.iter().filter(|r| r.is_failure()).count();
    let _ = writeln!(out, "{} checks, {} failures", results.len(), failures);
    out
}

/// Deterministic JSON report (no timings).
pub fn render_json(results: &[CheckResult]) -> String {
    let mut out = String::new();
    out.push_str("{\n  \"meta\": {\n");
    let _ = writeln!(out, "    \"version\": \"{}\",", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "    \"checks\": {},", results.len());
    let _ = write!(
        out,
        "    \"failures\": {}\n  }},\n  \"checks\": [",
        results.iter().filter(|r| r.is_failure()).count()
    );
    for (i, r) in results.iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        let measured = if r.measured.is_finite() {
            format_float(r.measured)
        } else {
            format!("\"{}\"", format_float(r.measured))
        };
        let tolerance = if r.tolerance.is_finite() {
            format_float(r.tolerance)
        } else {
            format!("\"{}\"", format_float(r.tolerance))
        };
        let _ = write!(
            out,
            "\n    {{\"name\": \"{}\", \"status\": \"{}\", \"measured\": {}, \"tolerance\": {}}}",
            r.name,
            r.status.as_str(),
            measured,
            tolerance,
        );
    }
    out.push_str("\n  ]\n}\n");
    out
}
