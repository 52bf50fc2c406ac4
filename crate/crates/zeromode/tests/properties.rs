//! Property tests for the invariants the pipelines are supposed to hold
//! regardless of parameters: spectral reconstruction, partition symmetry of
//! pure-state entropies, ξ ranges, product-state nullity, closed-form
//! consistency and monotone approach to the zero-mode divergences.

use proptest::prelude::*;

use zeromode::closed_form::{
    entropy_closed, free_particle_entropy, ir_energy_choice, xi_of_ratio, CoupledPair,
};
use zeromode::gaussian::{
    eigendecompose_symmetric, entanglement_entropy, matrix_sqrt_psd, reduce_to_xi,
    QuadraticHamiltonian,
};
use zeromode::lattice::{coupling_matrix, dispersion, LatticeParams};
use zeromode::matrix::Matrix;
use zeromode::rng::SplitMix64;
use zeromode::tripartite::{kappa_closed_form, ScaledCouplings};

fn random_symmetric(n: usize, rng: &mut SplitMix64, scale: f64) -> Matrix {
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..=i {
            let x = rng.uniform(-scale, scale);
            m[(i, j)] = x;
            m[(j, i)] = x;
        }
    }
    m
}

/// Random positive-definite potential with smallest eigenvalue bounded away
/// from zero (no zero-modes).
fn random_pd(n: usize, rng: &mut SplitMix64) -> Matrix {
    let a = random_symmetric(n, rng, 1.0);
    let mut k = a.mul(&a.transpose());
    for i in 0..n {
        k[(i, i)] += 0.2;
    }
    k.symmetrize();
    k
}

#[test]
fn reconstruction_over_a_thousand_random_matrices() {
    let mut rng = SplitMix64::new(0x5eed);
    for trial in 0..1000 {
        let n = 2 + rng.below(7);
        let k = random_symmetric(n, &mut rng, 3.0);
        let h = QuadraticHamiltonian::with_default_tol(k.clone()).unwrap();
        let s = eigendecompose_symmetric(&h);
        let v = &s.eigenvectors;
        let back = v.mul(&Matrix::diagonal(&s.eigenvalues)).mul(&v.transpose());
        let mut diff = back.clone();
        for i in 0..n {
            for j in 0..n {
                diff[(i, j)] -= k[(i, j)];
            }
        }
        let rel = diff.frobenius_norm() / k.frobenius_norm().max(1e-300);
        assert!(
            rel < 1e-9,
            "trial {trial} (n={n}): relative error {rel:.3e}"
        );

        // orthogonality of the eigenvector matrix
        let vtv = v.transpose().mul(v);
        for i in 0..n {
            for j in 0..n {
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((vtv[(i, j)] - expect).abs() < 1e-10);
            }
        }
    }
}

#[test]
fn complementary_partitions_have_equal_entropy() {
    let mut rng = SplitMix64::new(0xc0ffee);
    for trial in 0..200 {
        let n = 3 + rng.below(5);
        let k = random_pd(n, &mut rng);
        let h = QuadraticHamiltonian::with_default_tol(k).unwrap();
        let cut = 1 + rng.below(n - 1);
        let traced: Vec<usize> = (0..cut).collect();
        let complement: Vec<usize> = (cut..n).collect();
        let s1 = entanglement_entropy(&h, &traced).unwrap();
        let s2 = entanglement_entropy(&h, &complement).unwrap();
        assert!(
            (s1.nats() - s2.nats()).abs() < 1e-8,
            "trial {trial} (n={n}, cut={cut}): {} vs {}",
            s1.nats(),
            s2.nats()
        );
    }
}

#[test]
fn product_states_have_exactly_zero_entropy() {
    let mut rng = SplitMix64::new(0xb10c);
    for _ in 0..100 {
        let na = 1 + rng.below(3);
        let nb = 1 + rng.below(3);
        let ka = random_pd(na, &mut rng);
        let kb = random_pd(nb, &mut rng);
        let n = na + nb;
        let k = Matrix::from_fn(n, n, |i, j| {
            if i < na && j < na {
                ka[(i, j)]
            } else if i >= na && j >= na {
                kb[(i - na, j - na)]
            } else {
                0.0
            }
        });
        let h = QuadraticHamiltonian::with_default_tol(k).unwrap();
        let traced: Vec<usize> = (0..na).collect();
        let s = entanglement_entropy(&h, &traced).unwrap();
        assert_eq!(s.nats(), 0.0);
    }
}

#[test]
fn xi_values_always_in_unit_interval() {
    let mut rng = SplitMix64::new(0x71e5);
    for _ in 0..300 {
        let n = 2 + rng.below(6);
        let k = random_pd(n, &mut rng);
        let h = QuadraticHamiltonian::with_default_tol(k).unwrap();
        let traced: Vec<usize> = (0..1 + rng.below(n - 1)).collect();
        let xi = reduce_to_xi(&h, &traced).unwrap();
        for x in &xi.xis {
            assert!((0.0..1.0).contains(x), "xi out of range: {x}");
        }
    }
}

#[test]
fn entropy_grows_monotonically_into_the_zero_mode() {
    // Two-oscillator path: R decreasing toward 0.
    let mut previous = -1.0;
    for i in (1..=12).rev() {
        let r = 10f64.powf(-(13 - i) as f64 * 0.25);
        let s = entropy_closed(r).unwrap().nats();
        assert!(s > previous, "R={r}: {s} vs {previous}");
        previous = s;
    }

    // Tripartite path: k decreasing toward the free-particle point, the
    // zero-mode eigenvector overlapping both sides of every cut.
    let mut previous = -1.0;
    for &delta in &[1e-1, 1e-2, 1e-3, 1e-4, 1e-5, 1e-6] {
        let c = ScaledCouplings::new(1.0, 1.0, 2.0 * (1.0 + delta));
        let s = zeromode::tripartite::entropy_x1(&c, 1e-10).unwrap().nats();
        assert!(s > previous, "delta={delta}: {s} vs {previous}");
        previous = s;
    }
}

proptest! {
    #[test]
    fn sqrt_squares_back_to_potential(seed in any::<u64>()) {
        let mut rng = SplitMix64::new(seed);
        let n = 2 + rng.below(5);
        let k = random_pd(n, &mut rng);
        let h = QuadraticHamiltonian::with_default_tol(k.clone()).unwrap();
        let omega = matrix_sqrt_psd(&h).unwrap();
        let sq = omega.mul(&omega);
        let mut diff = sq.clone();
        for i in 0..n {
            for j in 0..n {
                diff[(i, j)] -= k[(i, j)];
            }
        }
        let rel = diff.frobenius_norm() / k.frobenius_norm();
        prop_assert!(rel < 1e-9, "relative error {rel:.3e}");
    }

    #[test]
    fn closed_form_entropy_decreases_in_ratio(a in 1e-3f64..1.0, b in 1e-3f64..1.0) {
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        prop_assume!(hi - lo > 1e-9);
        let s_lo = entropy_closed(lo).unwrap().nats();
        let s_hi = entropy_closed(hi).unwrap().nats();
        prop_assert!(s_lo > s_hi, "S({lo}) = {s_lo} vs S({hi}) = {s_hi}");
    }

    #[test]
    fn xi_of_ratio_stays_in_closed_unit_interval(r in 0.0f64..=1.0) {
        let xi = xi_of_ratio(r).unwrap();
        prop_assert!((0.0..=1.0).contains(&xi));
    }

    #[test]
    fn free_particle_identity_holds(omega0 in 0.05f64..20.0, frac in 0.0f64..1.0) {
        // omega1^2 = frac * omega0^2 / 2 keeps omega_minus real.
        let omega1 = (frac * omega0 * omega0 / 2.0).sqrt();
        let pair = CoupledPair::new(omega0, omega1).unwrap();
        let modes = pair.normal_modes();
        prop_assume!(modes.omega_minus > 0.0);
        let e_minus = ir_energy_choice(modes.omega_plus, 1.0);
        let s = free_particle_entropy(modes.omega_plus, modes.omega_minus, e_minus, 1.0, 1.0)
            .unwrap()
            .nats();
        let expected = -std::f64::consts::SQRT_2 * (modes.omega_minus / modes.omega_plus).ln();
        prop_assert!((s - expected).abs() < 1e-12, "{s} vs {expected}");
    }

    #[test]
    fn tripartite_closed_form_matches_eigensolver(
        alpha in -3.0f64..3.0,
        beta in -3.0f64..3.0,
        k in 0.05f64..9.0,
    ) {
        let c = ScaledCouplings::new(alpha, beta, k);
        let (k1, k2, k3) = kappa_closed_form(&c);
        let mut expected = [k1, k2, k3];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let h = c.coupling_matrix(1e-10).unwrap();
        let spectrum = eigendecompose_symmetric(&h);
        for (got, want) in spectrum.eigenvalues.iter().zip(expected.iter()) {
            prop_assert!((got - want).abs() < 1e-10, "{got} vs {want}");
        }
        prop_assert!((k1 - 1.0).abs() == 0.0);
    }

    #[test]
    fn lattice_dispersion_equals_circulant_spectrum(
        sites in 2usize..24,
        spacing in 0.2f64..3.0,
        mass in 0.0f64..2.0,
    ) {
        let p = LatticeParams::new(sites, spacing, mass).unwrap();
        let spectrum = eigendecompose_symmetric(&coupling_matrix(&p));
        let mut expected: Vec<f64> = (0..sites).map(|k| dispersion(k, &p)).collect();
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (got, want) in spectrum.eigenvalues.iter().zip(expected.iter()) {
            prop_assert!((got - want).abs() < 1e-12 * expected[sites - 1].max(1.0));
        }
    }
}
