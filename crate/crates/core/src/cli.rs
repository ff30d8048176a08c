//! Command-line front end. [`run`] parses arguments, dispatches one
//! subcommand and writes a CSV or JSON table to `out`.

use std::fmt::Write as _;
use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::error::Error;
use crate::identities::identity_suite;
use crate::oracle::fd_eigenvalues_richardson;
use crate::physical::{
    dimensionless, zero_point_energy, AdsorptionSystem, ANGSTROM, ATOMIC_MASS_UNIT, ELECTRON_VOLT,
    HBAR,
};
use crate::spectrum::{eigenvalues, spectrum_scan, WellConfig, DEFAULT_TOL, MAX_CLOSED_FORM_Q0};
use crate::variational::{ritz_values, RitzProblem};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_CONVERGENCE: i32 = 4;

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "hardwall",
    version,
    about = "Harmonic oscillator with a hard wall at q = -q0",
    allow_negative_numbers = true
)]
struct Cli {
    #[command(flatten)]
    output: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args, Serialize)]
struct OutputArgs {
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Significant digits in printed values.
    #[arg(long, global = true, default_value_t = 12, value_parser = clap::value_parser!(u32).range(6..=17))]
    precision: u32,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "lowercase")]
enum Command {
    /// Exact levels from the roots of the wall condition.
    Eigen {
        #[arg(long, allow_negative_numbers = true)]
        q0: f64,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
        /// Use the finite-difference solver instead (any q0 >= 0).
        #[arg(long)]
        oracle: bool,
    },
    /// Levels and gaps over an evenly spaced range of q0.
    Scan {
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        q0_start: f64,
        #[arg(long, default_value_t = 4.0, allow_negative_numbers = true)]
        q0_end: f64,
        #[arg(long, default_value_t = 200)]
        steps: usize,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Rayleigh–Ritz upper bounds with an N-function basis.
    Variational {
        #[arg(long, allow_negative_numbers = true)]
        q0: f64,
        /// Basis size N.
        #[arg(long, default_value_t = 8)]
        n: usize,
    },
    /// Virial, hypervirial and boundary-derivative residuals.
    Identities {
        #[arg(long, allow_negative_numbers = true)]
        q0: f64,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
    /// Zero-point energy of an adsorbed atom.
    Adsorb {
        #[arg(long, conflicts_with_all = ["mass_amu", "k_npm", "d_angstrom"])]
        preset: Option<String>,
        #[arg(long, requires_all = ["k_npm", "d_angstrom"], allow_negative_numbers = true)]
        mass_amu: Option<f64>,
        #[arg(long, requires_all = ["mass_amu", "d_angstrom"], allow_negative_numbers = true)]
        k_npm: Option<f64>,
        #[arg(long, requires_all = ["mass_amu", "k_npm"], allow_negative_numbers = true)]
        d_angstrom: Option<f64>,
    },
    /// Richardson-extrapolated finite-difference levels.
    Oracle {
        #[arg(long, allow_negative_numbers = true)]
        q0: f64,
        #[arg(long, default_value_t = 3)]
        n_max: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

/// Column-labelled rows, printed as CSV or JSON.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

/// Rounds to `precision` significant digits, then prints the shortest string
/// that reads back to the rounded value. Exponent form outside `[1e-4, 1e15)`.
pub fn format_float(x: f64, precision: u32) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let rounded = round_sig(x, precision);
    if rounded == 0.0 {
        return "0".into();
    }
    let a = rounded.abs();
    if (1e-4..1e15).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn round_sig(x: f64, precision: u32) -> f64 {
    let digits = precision.saturating_sub(1) as usize;
    format!("{x:.digits$e}").parse().unwrap_or(x)
}

impl Table {
    pub fn new(header: impl IntoIterator<Item = impl Into<String>>) -> Self {
        Self {
            header: header.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self, precision: u32) -> String {
        let mut s = self.header.join(",");
        s.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row
                .iter()
                .map(|c| match c {
                    Cell::Int(i) => i.to_string(),
                    Cell::Float(x) => format_float(*x, precision),
                    Cell::Text(t) => t.clone(),
                })
                .collect();
            let _ = writeln!(s, "{}", cells.join(","));
        }
        s
    }

    /// Inverse of [`Table::to_csv`].
    pub fn from_csv(text: &str) -> Result<Self, String> {
        let mut lines = text.lines();
        let header: Vec<String> = lines
            .next()
            .ok_or("empty input")?
            .split(',')
            .map(String::from)
            .collect();
        let mut table = Table {
            header,
            rows: Vec::new(),
        };
        for (i, line) in lines.enumerate() {
            let row: Vec<Cell> = line
                .split(',')
                .map(|f| {
                    if let Ok(v) = f.parse::<i64>() {
                        Cell::Int(v)
                    } else if let Ok(v) = f.parse::<f64>() {
                        Cell::Float(v)
                    } else {
                        Cell::Text(f.to_string())
                    }
                })
                .collect();
            if row.len() != table.header.len() {
                return Err(format!(
                    "row {}: expected {} fields",
                    i + 1,
                    table.header.len()
                ));
            }
            table.rows.push(row);
        }
        Ok(table)
    }

    pub fn to_json_rows(&self, precision: u32) -> Value {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut obj = Map::new();
                for (key, cell) in self.header.iter().zip(row) {
                    let v = match cell {
                        Cell::Int(i) => json!(i),
                        Cell::Float(x) if x.is_finite() => json!(round_sig(*x, precision)),
                        Cell::Float(_) => Value::Null,
                        Cell::Text(t) => json!(t),
                    };
                    obj.insert(key.clone(), v);
                }
                Value::Object(obj)
            })
            .collect();
        Value::Array(rows)
    }
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

/// Exit status for a numerical error.
pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InvalidInput(_) => EXIT_USAGE,
        Error::UnsupportedRange { .. }
        | Error::DomainError { .. }
        | Error::IllConditioned { .. }
        | Error::InvalidZeroIndex { .. } => EXIT_DOMAIN,
        Error::NonConvergence { .. } | Error::RootNotFound { .. } | Error::GridTooCoarse(_) => {
            EXIT_CONVERGENCE
        }
    }
}

fn int(v: usize) -> Cell {
    Cell::Int(v as i64)
}

fn closed_form_config(q0: f64) -> Result<WellConfig, Failure> {
    let cfg = WellConfig::new(q0)?;
    if q0 > MAX_CLOSED_FORM_Q0 {
        return Err(Error::UnsupportedRange {
            q0,
            max: MAX_CLOSED_FORM_Q0,
        }
        .into());
    }
    Ok(cfg)
}

fn cmd_eigen(q0: f64, n_max: usize, oracle: bool) -> Result<Table, Failure> {
    if oracle {
        return cmd_oracle(q0, n_max);
    }
    let cfg = closed_form_config(q0)?;
    let mut t = Table::new(["n", "epsilon", "weber_order", "node_count"]);
    for s in eigenvalues(n_max, &cfg, DEFAULT_TOL)? {
        t.push(vec![
            int(s.n),
            Cell::Float(s.epsilon),
            Cell::Float(s.weber_order),
            int(s.node_count),
        ]);
    }
    Ok(t)
}

fn cmd_oracle(q0: f64, n_max: usize) -> Result<Table, Failure> {
    let cfg = WellConfig::new(q0)?;
    let mut t = Table::new(["n", "epsilon"]);
    for (n, e) in fd_eigenvalues_richardson(&cfg, n_max)?
        .into_iter()
        .enumerate()
    {
        t.push(vec![int(n), Cell::Float(e)]);
    }
    Ok(t)
}

fn scan_grid(start: f64, end: f64, steps: usize) -> Result<Vec<f64>, Failure> {
    if !(start.is_finite() && end.is_finite() && 0.0 <= start && start < end) {
        return Err(Failure::Usage(format!(
            "need 0 <= q0-start < q0-end, got {start} and {end}"
        )));
    }
    if steps < 2 {
        return Err(Failure::Usage(format!(
            "steps must be at least 2, got {steps}"
        )));
    }
    if end > MAX_CLOSED_FORM_Q0 {
        return Err(Error::UnsupportedRange {
            q0: end,
            max: MAX_CLOSED_FORM_Q0,
        }
        .into());
    }
    let last = (steps - 1) as f64;
    Ok((0..steps)
        .map(|i| {
            if i == steps - 1 {
                end
            } else {
                start + (end - start) * (i as f64 / last)
            }
        })
        .collect())
}

fn cmd_scan(start: f64, end: f64, steps: usize, n_max: usize) -> Result<Table, Failure> {
    let grid = scan_grid(start, end, steps)?;
    let mut header = vec!["q0".to_string()];
    header.extend((0..=n_max).map(|n| format!("eps{n}")));
    header.extend((0..n_max).map(|n| format!("gap{n}")));
    let mut t = Table::new(header);
    for row in spectrum_scan(&grid, n_max, DEFAULT_TOL)? {
        let mut cells = vec![Cell::Float(row.q0)];
        cells.extend(row.epsilons.iter().map(|&e| Cell::Float(e)));
        cells.extend(row.gaps.iter().map(|&g| Cell::Float(g)));
        t.push(cells);
    }
    Ok(t)
}

fn cmd_variational(q0: f64, n: usize) -> Result<Table, Failure> {
    let problem = RitzProblem::new(n, q0)?;
    let result = ritz_values(&problem)?;
    let exact = if q0 <= MAX_CLOSED_FORM_Q0 {
        let cfg = WellConfig::new(q0)?;
        Some(eigenvalues(n - 1, &cfg, DEFAULT_TOL)?)
    } else {
        None
    };
    let mut header = vec!["n", "w"];
    if exact.is_some() {
        header.extend(["epsilon", "gap"]);
    }
    let mut t = Table::new(header);
    for (k, &w) in result.values.iter().enumerate() {
        let mut row = vec![int(k), Cell::Float(w)];
        if let Some(levels) = &exact {
            let e = levels[k].epsilon;
            row.extend([Cell::Float(e), Cell::Float(w - e)]);
        }
        t.push(row);
    }
    Ok(t)
}

fn cmd_identities(q0: f64, n_max: usize) -> Result<Table, Failure> {
    let cfg = closed_form_config(q0)?;
    let mut t = Table::new(["n", "q0", "identity", "lhs", "rhs", "residual"]);
    for r in identity_suite(n_max, &cfg)? {
        t.push(vec![
            int(r.n),
            Cell::Float(r.q0),
            Cell::Text(r.identity_tag.as_str().into()),
            Cell::Float(r.lhs),
            Cell::Float(r.rhs),
            Cell::Float(r.residual),
        ]);
    }
    Ok(t)
}

fn cmd_adsorb(
    preset: Option<&str>,
    mass_amu: Option<f64>,
    k_npm: Option<f64>,
    d_angstrom: Option<f64>,
) -> Result<Table, Failure> {
    let sys = match (preset, mass_amu, k_npm, d_angstrom) {
        (Some(label), ..) => AdsorptionSystem::preset(label).ok_or_else(|| {
            Failure::Usage(format!(
                "unknown preset {label:?}; available: {}",
                AdsorptionSystem::preset_labels().join(", ")
            ))
        })?,
        (None, Some(m), Some(k), Some(d)) => AdsorptionSystem::from_lab_units(m, k, d, "custom")?,
        _ => {
            return Err(Failure::Usage(
                "give --preset or all of --mass-amu, --k-npm, --d-angstrom".into(),
            ))
        }
    };
    let form = dimensionless(&sys);
    let zpe = zero_point_energy(&sys)?;
    let mut t = Table::new([
        "label",
        "mass_amu",
        "k_npm",
        "d_angstrom",
        "length_unit_m",
        "omega_rad_s",
        "energy_unit_j",
        "q0",
        "epsilon0",
        "e0_joule",
        "e0_mev",
        "solver",
    ]);
    t.push(vec![
        Cell::Text(sys.label().into()),
        Cell::Float(sys.mass() / ATOMIC_MASS_UNIT),
        Cell::Float(sys.force_constant()),
        Cell::Float(sys.wall_distance() / ANGSTROM),
        Cell::Float(form.length_unit),
        Cell::Float(form.omega),
        Cell::Float(form.energy_unit),
        Cell::Float(form.q0),
        Cell::Float(zpe.epsilon0),
        Cell::Float(zpe.joule),
        Cell::Float(zpe.mev),
        Cell::Text(
            if zpe.from_oracle {
                "oracle"
            } else {
                "closed-form"
            }
            .into(),
        ),
    ]);
    Ok(t)
}

fn execute(command: &Command) -> Result<Table, Failure> {
    match *command {
        Command::Eigen { q0, n_max, oracle } => cmd_eigen(q0, n_max, oracle),
        Command::Scan {
            q0_start,
            q0_end,
            steps,
            n_max,
        } => cmd_scan(q0_start, q0_end, steps, n_max),
        Command::Variational { q0, n } => cmd_variational(q0, n),
        Command::Identities { q0, n_max } => cmd_identities(q0, n_max),
        Command::Adsorb {
            ref preset,
            mass_amu,
            k_npm,
            d_angstrom,
        } => cmd_adsorb(preset.as_deref(), mass_amu, k_npm, d_angstrom),
        Command::Oracle { q0, n_max } => cmd_oracle(q0, n_max),
    }
}

fn render(cli: &Cli, table: &Table) -> String {
    let precision = cli.output.precision;
    match cli.output.format {
        Format::Csv => table.to_csv(precision),
        Format::Json => {
            let doc = json!({
                "meta": {
                    "version": env!("CARGO_PKG_VERSION"),
                    "constants": {
                        "hbar_js": HBAR,
                        "atomic_mass_unit_kg": ATOMIC_MASS_UNIT,
                        "electron_volt_j": ELECTRON_VOLT,
                    },
                    "flags": cli,
                },
                "rows": table.to_json_rows(precision),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("serializable document");
            s.push('\n');
            s
        }
    }
}

/// Runs one invocation; `args` includes the program name. Returns the exit
/// status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{e}");
                EXIT_OK
            };
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(table) => {
            if out.write_all(render(&cli, &table).as_bytes()).is_err() {
                return EXIT_USAGE;
            }
            EXIT_OK
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Numeric(e)) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, Error::UnsupportedRange { .. }) {
                let _ = writeln!(
                    err,
                    "hint: rerun with `eigen --oracle` or the `oracle` subcommand"
                );
            }
            exit_code(&e)
        }
    }
}
