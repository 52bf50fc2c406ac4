//! Sweep implementations behind the data-producing subcommands. Each returns
//! a [`Table`] in grid order; points are evaluated concurrently up to the
//! jobs bound and collected by index, so the output is independent of
//! scheduling.

use zeromode::closed_form::{
    distorted_entropy, entropy_closed, free_particle_entropy, ir_energy_choice,
};
use zeromode::gaussian::eigendecompose_symmetric;
use zeromode::hydrogen;
use zeromode::lattice;
use zeromode::quadrature::QuadratureConfig;
use zeromode::tripartite::{classify, RegimeLabel, ScaledCouplings};
use zeromode::Result;

use crate::grid::{parallel_map, GridRange};
use crate::output::{Table, Value};

fn entropy_cell(e: &zeromode::EntropyValue) -> Value {
    Value::Num(e.nats())
}

/// Two-oscillator closed-form entropy S(R) over a ratio grid.
pub fn fig1(grid: &GridRange, jobs: usize) -> Result<Table> {
    let rs = grid.values();
    let entries = parallel_map(rs.len(), jobs, |i| entropy_closed(rs[i]));
    let mut table = Table::new("two_oscillator_entropy", &["r", "s"]);
    table.push_meta("grid_points", Value::Int(rs.len() as u64));
    for (r, s) in rs.iter().zip(entries) {
        let s = s?;
        table.push_row(vec![Value::Num(*r), entropy_cell(&s)]);
    }
    Ok(table)
}

/// Free-particle-limit entropy over R = ω₋/ω₊ with the IR energy choice,
/// which reduces to S = −√2 ln R.
pub fn fig2(grid: &GridRange, omega_plus: f64, jobs: usize) -> Result<Table> {
    let rs = grid.values();
    let e_minus = ir_energy_choice(omega_plus, 1.0);
    let entries = parallel_map(rs.len(), jobs, |i| {
        free_particle_entropy(omega_plus, rs[i] * omega_plus, e_minus, 1.0, 1.0)
    });
    let mut table = Table::new("free_particle_entropy", &["r", "s"]);
    table.push_meta("omega_plus", Value::Num(omega_plus));
    table.push_meta("e_minus", Value::Num(e_minus));
    for (r, s) in rs.iter().zip(entries) {
        let s = s?;
        table.push_row(vec![Value::Num(*r), entropy_cell(&s)]);
    }
    Ok(table)
}

/// Hydrogen entropy integrand g(κ) sampled per ζ, with the quadrature
/// entropy repeated in the `s` column of each row.
pub fn fig3(
    kappa_grid: &GridRange,
    zetas: &[f64],
    eta: f64,
    rel_tol: f64,
    jobs: usize,
) -> Result<Table> {
    let cfg = QuadratureConfig {
        rel_tol,
        ..Default::default()
    };
    let kappas = kappa_grid.values();
    let entropies: Vec<f64> = zetas
        .iter()
        .map(|&zeta| hydrogen::entropy(eta, zeta, &cfg).map(|s| s.nats))
        .collect::<Result<_>>()?;

    let total = zetas.len() * kappas.len();
    let g_values = parallel_map(total, jobs, |idx| {
        let zeta = zetas[idx / kappas.len()];
        let kappa = kappas[idx % kappas.len()];
        hydrogen::g_integrand(kappa, eta, zeta)
    });

    let mut table = Table::new("hydrogen_entropy_integrand", &["zeta", "kappa", "g", "s"]);
    table.push_meta("eta", Value::Num(eta));
    table.push_meta("rel_tol", Value::Num(rel_tol));
    for (zi, &zeta) in zetas.iter().enumerate() {
        for (ki, &kappa) in kappas.iter().enumerate() {
            table.push_row(vec![
                Value::Num(zeta),
                Value::Num(kappa),
                Value::Num(g_values[zi * kappas.len() + ki]),
                Value::Num(entropies[zi]),
            ]);
        }
    }
    Ok(table)
}

/// Perturbative oscillator-coordinate entropy over the separation grid.
pub fn fig4(grid: &GridRange, jobs: usize) -> Result<Table> {
    let eps = grid.values();
    let entries = parallel_map(eps.len(), jobs, |i| distorted_entropy(eps[i]));
    let mut table = Table::new(
        "distorted_coordinate_entropy",
        &["eps", "s", "beyond_window"],
    );
    for (e, s) in eps.iter().zip(entries) {
        let s = s?;
        table.push_row(vec![
            Value::Num(*e),
            Value::Num(s.value),
            Value::Int(u64::from(s.beyond_window)),
        ]);
    }
    Ok(table)
}

fn regime_name(label: RegimeLabel) -> &'static str {
    match label {
        RegimeLabel::Normal => "normal",
        RegimeLabel::FreeParticle => "free_particle",
        RegimeLabel::Inverted => "inverted",
    }
}

/// Environment-induced entanglement along k = (α̃²+β̃²)(1+δ): the entropy of
/// either outer oscillator grows without bound as δ → 0.
pub fn tripartite_sweep(
    delta_grid: &GridRange,
    alpha: f64,
    beta: f64,
    zero_tol: f64,
    jobs: usize,
) -> Result<Table> {
    let deltas = delta_grid.values();
    let critical = alpha * alpha + beta * beta;
    let rows = parallel_map(deltas.len(), jobs, |i| {
        let delta = deltas[i];
        let c = ScaledCouplings::new(alpha, beta, critical * (1.0 + delta));
        let regime = classify(&c, zero_tol);
        let (s1, s2) = if regime.label == RegimeLabel::Inverted {
            (f64::NAN, f64::NAN)
        } else {
            let s1 = zeromode::tripartite::entropy_x1(&c, zero_tol)?.nats();
            let s2 = zeromode::tripartite::entropy_x2(&c, zero_tol)?.nats();
            (s1, s2)
        };
        Ok::<_, zeromode::Error>((delta, c.k, regime, s1, s2))
    });

    let mut table = Table::new(
        "environment_induced_entanglement",
        &["delta", "k", "kappa2", "regime", "s1", "s2"],
    );
    table.push_meta("alpha", Value::Num(alpha));
    table.push_meta("beta", Value::Num(beta));
    table.push_meta("critical_k", Value::Num(critical));
    table.push_meta("zero_tol", Value::Num(zero_tol));
    for row in rows {
        let (delta, k, regime, s1, s2) = row?;
        table.push_row(vec![
            Value::Num(delta),
            Value::Num(k),
            Value::Num(regime.kappa2),
            Value::Text(regime_name(regime.label).to_string()),
            Value::Num(s1),
            Value::Num(s2),
        ]);
    }
    Ok(table)
}

/// Which lattice parameter the sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LatticeVariable {
    Mu,
    Spacing,
}

/// Half-chain entropy of the periodic scalar chain, swept either over the
/// transformed-system μ (IR behaviour) or over the lattice spacing a
/// (UV behaviour).
pub fn lattice_sweep(
    var: LatticeVariable,
    grid: &GridRange,
    sites: usize,
    field_mass: f64,
    zero_tol: f64,
    jobs: usize,
) -> Result<Table> {
    let values = grid.values();
    let cut = lattice::first_half_cut(sites);
    let rows = parallel_map(values.len(), jobs, |i| {
        let v = values[i];
        let hamiltonian = match var {
            LatticeVariable::Mu => lattice::transformed_coupling_matrix(v, sites)?,
            LatticeVariable::Spacing => {
                lattice::coupling_matrix(&lattice::LatticeParams::new(sites, v, field_mass)?)
            }
        };
        let spectrum = eigendecompose_symmetric(&hamiltonian);
        let zero_modes = lattice::zero_mode_count(&spectrum.eigenvalues, zero_tol) as u64;
        let s = zeromode::gaussian::entanglement_entropy(&hamiltonian, &cut)?;
        Ok::<_, zeromode::Error>((v, spectrum.min_eigenvalue(), zero_modes, s.nats()))
    });

    let var_name = match var {
        LatticeVariable::Mu => "mu",
        LatticeVariable::Spacing => "spacing",
    };
    let mut table = Table::new(
        "lattice_half_chain_entropy",
        &[var_name, "min_mode_sq", "zero_modes", "s"],
    );
    table.push_meta("sites", Value::Int(sites as u64));
    table.push_meta("field_mass", Value::Num(field_mass));
    table.push_meta("zero_tol", Value::Num(zero_tol));
    for row in rows {
        let (v, min_mode, zero_modes, s) = row?;
        table.push_row(vec![
            Value::Num(v),
            Value::Num(min_mode),
            Value::Int(zero_modes),
            Value::Num(s),
        ]);
    }
    Ok(table)
}
