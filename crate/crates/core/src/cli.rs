//! Command-line front end. Exit codes: 0 ok, 1 verification failure,
//! 2 usage or parse error, 3 numeric invariant violation.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::fuzz::{DEFAULT_SEED, RNG_ALGORITHM};
use crate::graphene::*;
use crate::hamiltonian::{classify, CoefficientSet, DEFAULT_TOL};
use crate::io::*;
use crate::quartic::solve_quartic;
use crate::solver::solve;
use crate::thermo::{thermal_report, ThermalBranch};
use crate::verify::{run_suite, SUITES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

/// Eigensystem invariants above this fail `solve` with exit 3.
pub const INVARIANT_TOL: f64 = 1e-8;

#[derive(Parser, Debug)]
#[command(name = "su2su2", version, about = "Closed-form two-qubit spectra, entanglement and bilayer graphene grids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GrapheneArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub t: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub t3: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub tperp: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub m: f64,
    /// Bias Λ
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    pub bias: f64,
    #[arg(long, default_value_t = 1.0)]
    pub lattice: f64,
    /// Samples per axis
    #[arg(long, default_value_t = 201)]
    pub grid: usize,
    /// none | hex
    #[arg(long, default_value = "none")]
    pub mask: String,
}

impl GrapheneArgs {
    fn params(&self) -> GrapheneParams {
        GrapheneParams { t: self.t, t3: self.t3, tperp: self.tperp, m: self.m, lambda_bias: self.bias, lattice: self.lattice }
    }

    fn grid_spec(&self) -> Result<GridSpec, Error> {
        let p = self.params();
        p.validate()?;
        let g = GridSpec { samples: self.grid, mask: self.mask.parse()?, ..GridSpec::default_for(p.lattice) };
        g.validate()?;
        Ok(g)
    }
}

#[derive(Args, Debug, Clone)]
pub struct TemperatureArgs {
    #[arg(long, default_value_t = 0.01)]
    pub tmin: f64,
    #[arg(long, default_value_t = 100.0)]
    pub tmax: f64,
    #[arg(long, default_value_t = 50)]
    pub steps: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Eigensystem of a coefficient set
    Solve {
        input: PathBuf,
        #[arg(long, short, default_value = "eigensystem.json")]
        output: PathBuf,
    },
    /// Case label and residuals of a coefficient set
    Classify { input: PathBuf },
    /// Seeded closed-form versus oracle suites
    Verify {
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Run one suite only
        #[arg(long)]
        suite: Option<String>,
    },
    /// Partition function, purity and concurrence over temperature
    Thermo {
        input: PathBuf,
        #[command(flatten)]
        temps: TemperatureArgs,
        /// full | positive
        #[arg(long, default_value = "full")]
        branch: String,
        #[arg(long, short, default_value = "thermo.csv")]
        output: PathBuf,
    },
    /// Positive bands E1, E2 over the k grid
    GrapheneBands {
        #[command(flatten)]
        g: GrapheneArgs,
        #[arg(long, short, default_value = "bands.csv")]
        output: PathBuf,
    },
    /// Eigenstate concurrence over the k grid
    GrapheneConcurrence {
        #[command(flatten)]
        g: GrapheneArgs,
        #[arg(long, default_value_t = 2)]
        branch_m: u8,
        #[arg(long, default_value_t = 1)]
        branch_n: u8,
        #[arg(long, short, default_value = "concurrence.csv")]
        output: PathBuf,
    },
    /// Thermal concurrence at one k point (default: a Dirac point)
    GrapheneThermal {
        #[command(flatten)]
        g: GrapheneArgs,
        #[arg(long, allow_negative_numbers = true)]
        kx: Option<f64>,
        #[arg(long, allow_negative_numbers = true)]
        ky: Option<f64>,
        #[command(flatten)]
        temps: TemperatureArgs,
        #[arg(long, short, default_value = "thermal.csv")]
        output: PathBuf,
    },
    /// Roots of c4 x⁴ + c3 x³ + c2 x² + c1 x + c0
    Quartic {
        #[arg(allow_negative_numbers = true, num_args = 5, required = true)]
        coeffs: Vec<f64>,
    },
}

enum Failure {
    Usage(String),
    Numeric(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NegativeRadicand(_) | Error::Degenerate(_) => Failure::Numeric(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = std::result::Result<(), Failure>;

fn read_set(path: &Path) -> std::result::Result<CoefficientSet, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    Ok(parse_coefficients(&text)?)
}

fn write_file(path: &Path, text: &str) -> Outcome {
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

/// Parse and run; all text goes to `out`, diagnostics to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{e}");
                return EXIT_USAGE;
            }
            let _ = write!(out, "{e}");
            return EXIT_OK;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(m)) => {
            let _ = writeln!(err, "numeric invariant violated: {m}");
            EXIT_NUMERIC
        }
        Err(Failure::Verify(m)) => {
            let _ = writeln!(err, "verification failed: {m}");
            EXIT_VERIFY
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Solve { input, output } => cmd_solve(&input, &output, out),
        Command::Classify { input } => cmd_classify(&input, out),
        Command::Verify { samples, seed, suite } => cmd_verify(samples, seed, suite, out),
        Command::Thermo { input, temps, branch, output } => cmd_thermo(&input, &temps, &branch, &output, out),
        Command::GrapheneBands { g, output } => cmd_graphene_bands(&g, &output, out),
        Command::GrapheneConcurrence { g, branch_m, branch_n, output } => {
            cmd_graphene_concurrence(&g, branch_m, branch_n, &output, out)
        }
        Command::GrapheneThermal { g, kx, ky, temps, output } => cmd_graphene_thermal(&g, kx, ky, &temps, &output, out),
        Command::Quartic { coeffs } => cmd_quartic(&coeffs, out),
    }
}

fn cmd_solve(input: &Path, output: &Path, out: &mut dyn Write) -> Outcome {
    let c = read_set(input)?;
    let es = solve(&c)?;
    let h = c.hamiltonian();
    writeln!(out, "method: {}", es.method.as_str())?;
    if es.degenerate {
        writeln!(out, "degenerate: true")?;
    }
    for p in &es.eigenvalues {
        writeln!(out, "eps({},{}) = {}", p.m, p.n, fmt_f64(p.value))?;
    }
    write_file(output, &eigensystem_json(&es))?;
    let r = es.check(&h);
    let worst = r.completeness.max(r.trace).max(r.eigen_residual).max(r.orthonormality);
    if !(worst <= INVARIANT_TOL) {
        return Err(Failure::Numeric(format!("eigensystem invariants {r:?}")));
    }
    Ok(())
}

fn cmd_classify(input: &Path, out: &mut dyn Write) -> Outcome {
    let c = read_set(input)?;
    let label = classify(&c, DEFAULT_TOL);
    writeln!(out, "case: {:?}", label.case)?;
    writeln!(out, "{}", serde_json::to_string_pretty(&label.residuals).expect("residuals serialize"))?;
    Ok(())
}

fn cmd_verify(samples: usize, seed: u64, suite: Option<String>, out: &mut dyn Write) -> Outcome {
    if samples == 0 {
        return Err(Failure::Usage("--samples must be at least 1".into()));
    }
    let names: Vec<String> = match suite {
        Some(s) => vec![s],
        None => SUITES.iter().map(|s| s.to_string()).collect(),
    };
    writeln!(out, "rng: {RNG_ALGORITHM} seed {seed}, samples {samples}")?;
    let mut failed = Vec::new();
    for name in &names {
        let rep = run_suite(name, samples, seed)?;
        let status = if rep.passed { "PASS" } else { "FAIL" };
        writeln!(out, "{status} {:<20} max deviation {:.3e} (tol {:.0e})", rep.name, rep.max_deviation, rep.tolerance)?;
        for n in &rep.notes {
            writeln!(out, "    {n}")?;
        }
        if !rep.passed {
            failed.push(rep.name);
        }
    }
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verify(failed.join(", ")))
    }
}

fn cmd_thermo(input: &Path, temps: &TemperatureArgs, branch: &str, output: &Path, out: &mut dyn Write) -> Outcome {
    let c = read_set(input)?;
    let branch: ThermalBranch = branch.parse()?;
    let ts = log_temperatures(temps.tmin, temps.tmax, temps.steps)?;
    let rows = ts.iter().map(|&t| thermal_report(&c, t, branch)).collect::<Result<Vec<_>, _>>()?;
    if let Some(bad) = rows.iter().find(|r| !(r.z_value > 0.0) || !(0.25 - 1e-9..=1.0 + 1e-9).contains(&r.purity)) {
        return Err(Failure::Numeric(format!("thermal report out of range at T = {}", bad.temperature)));
    }
    write_file(output, &thermo_csv(&rows))?;
    let (first, last) = (rows[0], rows[rows.len() - 1]);
    writeln!(out, "rows: {}", rows.len())?;
    writeln!(out, "purity(T={}) = {}", first.temperature, fmt_f64(first.purity))?;
    writeln!(out, "purity(T={}) = {}", last.temperature, fmt_f64(last.purity))?;
    Ok(())
}

fn cmd_graphene_bands(g: &GrapheneArgs, output: &Path, out: &mut dyn Write) -> Outcome {
    let spec = g.grid_spec()?;
    let pts = band_grid(&g.params(), &spec)?;
    write_file(output, &bands_csv(&pts))?;
    let min_e1 = pts.iter().map(|b| b.e1).fold(f64::INFINITY, f64::min);
    writeln!(out, "points: {}", pts.len())?;
    writeln!(out, "min E1 = {}", fmt_f64(min_e1))?;
    Ok(())
}

fn cmd_graphene_concurrence(g: &GrapheneArgs, m: u8, n: u8, output: &Path, out: &mut dyn Write) -> Outcome {
    let spec = g.grid_spec()?;
    let pts = concurrence_grid(&g.params(), &spec, m, n)?;
    write_file(output, &concurrence_csv(&pts))?;
    let flagged = pts.iter().filter(|p| p.flag != 0).count();
    let max_c = pts.iter().map(|p| p.c).fold(0.0, f64::max);
    writeln!(out, "points: {}, flagged: {flagged}", pts.len())?;
    writeln!(out, "max C = {}", fmt_f64(max_c))?;
    Ok(())
}

fn cmd_graphene_thermal(
    g: &GrapheneArgs,
    kx: Option<f64>,
    ky: Option<f64>,
    temps: &TemperatureArgs,
    output: &Path,
    out: &mut dyn Write,
) -> Outcome {
    let p = g.params();
    p.validate()?;
    let k = match (kx, ky) {
        (Some(x), Some(y)) => KPoint::new(x, y),
        (None, None) => dirac_point(&p),
        _ => return Err(Failure::Usage("give both --kx and --ky or neither".into())),
    };
    let ts = log_temperatures(temps.tmin, temps.tmax, temps.steps)?;
    let rows = thermal_concurrence_curve(&p, k, &ts)?;
    write_file(output, &thermal_curve_csv(&rows))?;
    writeln!(out, "k = ({}, {}), |Gamma| = {}", fmt_f64(k.kx), fmt_f64(k.ky), fmt_f64(structure_factor(&p, k).norm()))?;
    let gamma = p.t3 * structure_factor(&p, k).norm();
    match crate::thermo::death_temperature(p.tperp, gamma) {
        Some(t) => writeln!(out, "death temperature = {}", fmt_f64(t))?,
        None => writeln!(out, "death temperature: none (t_perp <= t3|Gamma|)")?,
    }
    Ok(())
}

fn cmd_quartic(c: &[f64], out: &mut dyn Write) -> Outcome {
    let roots = solve_quartic(c[0], c[1], c[2], c[3], c[4])?;
    for r in roots {
        writeln!(out, "{} {}", fmt_f64(r.re), fmt_f64(r.im))?;
    }
    Ok(())
}
