//! Command-line driver: reproduces the entropy curves as CSV/JSON data
//! files, runs divergence sweeps, and executes the verification suite.
//!
//! Exit codes: 0 success, 1 verification-check failure, 2 usage error,
//! 3 numeric or I/O error.

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use zeromode_cli::grid::{GridRange, Spacing};
use zeromode_cli::output::Table;
use zeromode_cli::{figures, report};

#[derive(Parser)]
#[command(
    name = "zeromode",
    version,
    about = "Entanglement entropy of coupled-oscillator systems and its zero-mode divergences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct CommonArgs {
    /// Output path; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,

    /// Parameter grid, start:stop:count[:geom|lin].
    #[arg(long)]
    grid: Option<String>,

    /// Worker threads for sweep evaluation (defaults to the host parallelism).
    #[arg(long)]
    jobs: Option<usize>,

    /// Relative tolerance for classifying an eigenvalue as zero.
    #[arg(long, default_value_t = zeromode::gaussian::DEFAULT_ZERO_TOL)]
    zero_tol: f64,

    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    rel_tol: f64,
}

impl CommonArgs {
    fn jobs(&self) -> usize {
        self.jobs.unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
    }

    fn grid_or(&self, default: GridRange) -> Result<GridRange, CliError> {
        match &self.grid {
            Some(text) => GridRange::parse(text).map_err(CliError::Usage),
            None => Ok(default),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Two-oscillator entropy S(R) over a ratio grid.
    Fig1(Fig1Args),
    /// Free-particle-limit entropy with the IR energy choice, S = -sqrt(2) ln R.
    Fig2(Fig2Args),
    /// Hydrogen entropy integrand g(kappa) and quadrature entropy per zeta.
    Fig3(Fig3Args),
    /// Perturbative oscillator-coordinate entropy over the separation eps.
    Fig4(Fig4Args),
    /// Entropy of an outer oscillator as the environment coupling approaches
    /// the free-particle point.
    #[command(name = "tripartite-sweep")]
    TripartiteSweep(TripartiteArgs),
    /// Half-chain entropy of the periodic scalar chain.
    #[command(name = "lattice-sweep")]
    LatticeSweep(LatticeArgs),
    /// Run the full verification suite and emit a machine-readable report.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct Fig1Args {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct Fig2Args {
    #[command(flatten)]
    common: CommonArgs,

    /// Stiff-mode frequency omega_plus.
    #[arg(long, default_value_t = 1.0)]
    omega_plus: f64,
}

#[derive(Args)]
struct Fig3Args {
    #[command(flatten)]
    common: CommonArgs,

    /// Profile-position scale eta = a0 * k_e.
    #[arg(long, default_value_t = 1.0)]
    eta: f64,

    /// Comma-separated zeta values (profile-height scale; smaller means
    /// closer to the zero-mode limit).
    #[arg(long, default_value = "1e-1,1e-2,1e-3", value_delimiter = ',')]
    zetas: Vec<f64>,
}

#[derive(Args)]
struct Fig4Args {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(Args)]
struct TripartiteArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Scaled coupling of x1 to the environment.
    #[arg(long, default_value_t = 1.0)]
    alpha: f64,

    /// Scaled coupling of x2 to the environment.
    #[arg(long, default_value_t = 1.0)]
    beta: f64,
}

#[derive(Args)]
struct LatticeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Number of chain sites.
    #[arg(long, default_value_t = 32)]
    sites: usize,

    /// Field mass (used by the spacing sweep).
    #[arg(long, default_value_t = 1.0)]
    mass: f64,

    /// Swept variable: the transformed-system mu, or the lattice spacing.
    #[arg(long, value_enum, default_value = "mu")]
    var: LatticeVar,
}

#[derive(Clone, Copy, ValueEnum)]
enum LatticeVar {
    Mu,
    Spacing,
}

#[derive(Args)]
struct OracleArgs {
    /// Path for the JSON report (stdout carries the per-check lines either way).
    #[arg(long)]
    out: Option<PathBuf>,

    /// Relative quadrature tolerance.
    #[arg(long, default_value_t = 1e-8)]
    rel_tol: f64,

    /// Relative tolerance for classifying an eigenvalue as zero.
    #[arg(long, default_value_t = zeromode::gaussian::DEFAULT_ZERO_TOL)]
    zero_tol: f64,
}

enum CliError {
    Usage(String),
    Numeric(zeromode::Error),
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    ChecksFailed(usize),
}

impl From<zeromode::Error> for CliError {
    fn from(e: zeromode::Error) -> Self {
        CliError::Numeric(e)
    }
}

fn write_table(table: &Table, out: &Option<PathBuf>, format: Format) -> Result<(), CliError> {
    let body = match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json(),
    };
    match out {
        Some(path) => std::fs::write(path, body).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{body}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Fig1(args) => {
            let grid = args
                .common
                .grid_or(GridRange::new(1e-4, 1.0, 100, Spacing::Geometric).unwrap())?;
            let table = figures::fig1(&grid, args.common.jobs())?;
            write_table(&table, &args.common.out, args.common.format)
        }
        Command::Fig2(args) => {
            let grid = args
                .common
                .grid_or(GridRange::new(1e-4, 1.0, 100, Spacing::Geometric).unwrap())?;
            let table = figures::fig2(&grid, args.omega_plus, args.common.jobs())?;
            write_table(&table, &args.common.out, args.common.format)
        }
        Command::Fig3(args) => {
            if args.zetas.is_empty() || args.zetas.iter().any(|z| *z <= 0.0) {
                return Err(CliError::Usage("zetas must be positive".into()));
            }
            let grid = args
                .common
                .grid_or(GridRange::new(0.0, 8.0, 161, Spacing::Linear).unwrap())?;
            let table = figures::fig3(
                &grid,
                &args.zetas,
                args.eta,
                args.common.rel_tol,
                args.common.jobs(),
            )?;
            write_table(&table, &args.common.out, args.common.format)
        }
        Command::Fig4(args) => {
            let grid = args
                .common
                .grid_or(GridRange::new(0.0, 0.5, 101, Spacing::Linear).unwrap())?;
            let table = figures::fig4(&grid, args.common.jobs())?;
            write_table(&table, &args.common.out, args.common.format)
        }
        Command::TripartiteSweep(args) => {
            let grid = args
                .common
                .grid_or(GridRange::new(1e-8, 1e-1, 8, Spacing::Geometric).unwrap())?;
            let table = figures::tripartite_sweep(
                &grid,
                args.alpha,
                args.beta,
                args.common.zero_tol,
                args.common.jobs(),
            )?;
            write_table(&table, &args.common.out, args.common.format)
        }
        Command::LatticeSweep(args) => {
            if !(2..=1024).contains(&args.sites) {
                return Err(CliError::Usage(format!(
                    "sites must lie in 2..=1024, got {}",
                    args.sites
                )));
            }
            let (var, default_grid) = match args.var {
                LatticeVar::Mu => (
                    figures::LatticeVariable::Mu,
                    GridRange::new(0.9, 0.999, 10, Spacing::Linear).unwrap(),
                ),
                LatticeVar::Spacing => (
                    figures::LatticeVariable::Spacing,
                    GridRange::new(2.0, 0.125, 5, Spacing::Geometric).unwrap(),
                ),
            };
            let grid = args.common.grid_or(default_grid)?;
            let table = figures::lattice_sweep(
                var,
                &grid,
                args.sites,
                args.mass,
                args.common.zero_tol,
                args.common.jobs(),
            )?;
            write_table(&table, &args.common.out, args.common.format)
        }
        Command::Oracle(args) => {
            let results = report::run_all(args.rel_tol, args.zero_tol);
            print!("{}", report::render_lines(&results));
            for r in &results {
                eprintln!("# {:<40} {:8.1} ms", r.name, r.wall_ms);
            }
            if let Some(path) = &args.out {
                std::fs::write(path, report::render_json(&results)).map_err(|source| {
                    CliError::Io {
                        path: path.clone(),
                        source,
                    }
                })?;
            }
            let failures = results.iter().filter(|r| r.is_failure()).count();
            if failures > 0 {
                return Err(CliError::ChecksFailed(failures));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::ChecksFailed(n)) => {
            let _ = writeln!(std::io::stderr(), "error: {n} verification checks failed");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(std::io::stderr(), "usage error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Numeric(e)) => {
            let _ = writeln!(std::io::stderr(), "numeric error: {e}");
            ExitCode::from(3)
        }
        Err(CliError::Io { path, source }) => {
            let _ = writeln!(
                std::io::stderr(),
                "i/o error on {}: {source}",
                path.display()
            );
            ExitCode::from(3)
        }
    }
}
