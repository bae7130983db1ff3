//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage error, 2 constraint violation,
//! 3 verification failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::QesError;
use crate::oracle::{cross_validate, ode_residual, Grid};
use crate::output::{csv_table, json_array, number, Record};
use crate::potentials::{Family, PotentialSpec};
use crate::quantization::{
    mixed_coulomb_solve_with, mixed_energy_with, sextic_constraint_solve, singular_b_solve_with, singular_energy,
    solve, QesSolution, SexticUnknown, SolveOptions,
};
use crate::recurrence::FormulaSet;
use crate::wavefunction::normalize;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CONSTRAINT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Relative output paths are resolved against this directory when set.
pub const OUTPUT_DIR_ENV: &str = "QES2D_OUTPUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "qes2d", version, about = "Closed-form bound states of 2D central potentials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Quantized energies and series coefficients for one configuration.
    Solve(SolveArgs),
    /// The coefficient value(s) that make a configuration solvable.
    Constrain(ConstrainArgs),
    /// Cross-check closed-form states against the finite-difference spectrum.
    Verify(VerifyArgs),
    /// Tabulate r, R(r), R'(r), V_eff(r) for a normalized state.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sextic,
    Mixed,
    #[value(alias = "singular-even-power")]
    Singular,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Sextic => Family::Sextic,
            FamilyArg::Mixed => Family::Mixed,
            FamilyArg::Singular => Family::SingularEvenPower,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Coefficient {
    A,
    B,
    C,
    D,
}

impl Coefficient {
    fn name(self) -> &'static str {
        match self {
            Coefficient::A => "a",
            Coefficient::B => "b",
            Coefficient::C => "c",
            Coefficient::D => "d",
        }
    }
}

#[derive(Debug, Args)]
struct PotentialArgs {
    #[arg(long, value_enum)]
    family: FamilyArg,
    #[arg(long, allow_negative_numbers = true)]
    a: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    c: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    d: Option<f64>,
    /// Angular momentum quantum number.
    #[arg(long, default_value_t = 0)]
    m: u32,
    /// Truncation order of the series.
    #[arg(long, default_value_t = 0)]
    p: usize,
    /// Use the as-published closed forms instead of the corrected ones.
    #[arg(long = "use-paper-formulas")]
    use_paper_formulas: bool,
    /// Relative tolerance of the quantization conditions.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

impl PotentialArgs {
    fn family(&self) -> Family {
        self.family.into()
    }

    fn formulas(&self) -> FormulaSet {
        if self.use_paper_formulas {
            FormulaSet::Printed
        } else {
            FormulaSet::Corrected
        }
    }

    fn options(&self) -> SolveOptions {
        SolveOptions { formulas: self.formulas(), tolerance: self.tolerance }
    }

    fn coefficient(&self, name: &str) -> Option<f64> {
        match name {
            "a" => self.a,
            "b" => self.b,
            "c" => self.c,
            "d" => self.d,
            _ => None,
        }
    }

    fn require(&self, name: &str) -> Result<f64, Failure> {
        self.coefficient(name)
            .ok_or_else(|| Failure::usage(format!("--{name} is required for the {} family", self.family())))
    }

    fn spec(&self) -> Result<PotentialSpec, Failure> {
        let family = self.family();
        let coeffs = family.coefficient_names().iter().map(|n| self.require(n)).collect::<Result<Vec<_>, _>>()?;
        if family != Family::SingularEvenPower && self.d.is_some() {
            return Err(Failure::usage(format!("--d is not a coefficient of the {family} family")));
        }
        PotentialSpec::from_coefficients(family, &coeffs)?.validate().map_err(Failure::from)
    }
}

#[derive(Debug, Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GridArgs {
    #[arg(long)]
    r_min: Option<f64>,
    #[arg(long)]
    r_max: Option<f64>,
    #[arg(long)]
    n_points: Option<usize>,
}

#[derive(Debug, Args)]
struct SolveArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct ConstrainArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// Coefficient to solve for.
    #[arg(long, value_enum)]
    solve_for: Coefficient,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Debug, Args)]
struct SampleArgs {
    #[command(flatten)]
    potential: PotentialArgs,
    /// First radius of the table.
    #[arg(long, default_value_t = 0.01)]
    from: f64,
    /// Last radius of the table.
    #[arg(long, default_value_t = 4.0)]
    to: f64,
    #[arg(long, default_value_t = 400)]
    rows: usize,
    /// Which state (sorted by energy) to sample.
    #[arg(long, default_value_t = 0)]
    index: usize,
    /// Write to this file instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

/// A failed command: exit code plus message for standard error.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Self { code: EXIT_USAGE, message }
    }
}

impl From<QesError> for Failure {
    fn from(e: QesError) -> Self {
        let code = match e {
            QesError::ConstraintViolated { .. }
            | QesError::NoRealRoots
            | QesError::NoSolution(_)
            | QesError::NonRealEnergy { .. } => EXIT_CONSTRAINT,
            _ => EXIT_USAGE,
        };
        let message = match &e {
            QesError::ConstraintViolated { condition, parameter, residual, nearest } => {
                let nearest: Vec<String> = nearest.iter().map(|&v| number(v)).collect();
                format!(
                    "{condition} violated: residual {}; admissible {parameter}: [{}]",
                    number(*residual),
                    nearest.join(", ")
                )
            }
            other => other.to_string(),
        };
        Self { code, message }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    EXIT_OK
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    EXIT_USAGE
                }
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Constrain(a) => cmd_constrain(a, out, err),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Sample(a) => cmd_sample(a, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<(), Failure> {
    match path {
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::usage(format!("cannot write output: {e}"))),
        Some(path) => {
            let path = match std::env::var_os(OUTPUT_DIR_ENV) {
                Some(dir) if path.is_relative() => PathBuf::from(dir).join(path),
                _ => path.clone(),
            };
            std::fs::write(&path, text).map_err(|e| Failure::usage(format!("cannot write {}: {e}", path.display())))
        }
    }
}

fn formulas_name(f: FormulaSet) -> &'static str {
    match f {
        FormulaSet::Corrected => "corrected",
        FormulaSet::Printed => "printed",
    }
}

/// Per-state fields shared by `solve` and `verify`.
struct StateRow {
    solution: QesSolution,
    normalization: f64,
    node_count: usize,
    ode_residual: f64,
}

fn state_rows(solutions: Vec<QesSolution>) -> Result<Vec<StateRow>, Failure> {
    solutions
        .into_iter()
        .map(|solution| {
            let residual = ode_residual(&solution);
            let (normalization, node_count) = match normalize(solution.clone()) {
                Ok(state) => (state.normalization, state.node_count),
                // printed-formula states need not be normalizable
                Err(_) if solution.formulas == FormulaSet::Printed => {
                    (f64::NAN, crate::wavefunction::node_count(&solution))
                }
                Err(e) => return Err(Failure::from(e)),
            };
            Ok(StateRow { solution, normalization, node_count, ode_residual: residual })
        })
        .collect()
}

fn base_record(row: &StateRow) -> Record {
    let s = &row.solution;
    Record::new()
        .text("family", s.family().name())
        .integer("m", u64::from(s.m))
        .integer("p", s.p as u64)
        .number("E", s.energy)
        .numbers("coefficients", s.coefficients.values())
        .number("normalization", row.normalization)
        .integer("node_count", row.node_count as u64)
        .integer("multiplicity", s.multiplicity as u64)
        .number("termination_residual", s.termination_residual)
        .number("determinant_residual", s.determinant_residual)
        .number("ode_residual", row.ode_residual)
        .text("formulas", formulas_name(s.formulas))
}

const STATE_HEADER: [&str; 12] = [
    "family",
    "m",
    "p",
    "E",
    "normalization",
    "node_count",
    "multiplicity",
    "termination_residual",
    "determinant_residual",
    "ode_residual",
    "formulas",
    "coefficients",
];

fn base_csv(row: &StateRow) -> Vec<String> {
    let s = &row.solution;
    let coeffs: Vec<String> = s.coefficients.values().iter().map(|&v| number(v)).collect();
    vec![
        s.family().name().to_string(),
        s.m.to_string(),
        s.p.to_string(),
        number(s.energy),
        number(row.normalization),
        row.node_count.to_string(),
        s.multiplicity.to_string(),
        number(s.termination_residual),
        number(s.determinant_residual),
        number(row.ode_residual),
        formulas_name(s.formulas).to_string(),
        coeffs.join(";"),
    ]
}

fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let pot = &args.potential;
    let spec = pot.spec()?;
    let rows = state_rows(solve(&spec, pot.m, pot.p, pot.options())?)?;
    let text = match args.output.format {
        Format::Json => json_array(&rows.iter().map(base_record).collect::<Vec<_>>()),
        Format::Csv => csv_table(&STATE_HEADER, &rows.iter().map(base_csv).collect::<Vec<_>>()),
    };
    emit(&text, args.output.output.as_ref(), out)?;
    Ok(EXIT_OK)
}

/// Admissible values plus the energy they belong to (when fixed).
fn constraint_values(
    pot: &PotentialArgs,
    target: Coefficient,
    formulas: FormulaSet,
) -> Result<(Vec<f64>, Option<f64>), Failure> {
    let family = pot.family();
    let (m, p) = (pot.m, pot.p);
    let unsupported = || {
        Failure::usage(format!(
            "cannot solve the {family} family for {}; supported: {}",
            target.name(),
            match family {
                Family::Sextic => "a, b, c",
                Family::Mixed => "c",
                Family::SingularEvenPower => "b",
            }
        ))
    };
    match (family, target) {
        (Family::Sextic, Coefficient::D) => Err(unsupported()),
        (Family::Sextic, _) => {
            let known = match target {
                Coefficient::A => SexticUnknown::A { b: pot.require("b")?, c: pot.require("c")? },
                Coefficient::B => SexticUnknown::B { a: pot.require("a")?, c: pot.require("c")? },
                _ => SexticUnknown::C { a: pot.require("a")?, b: pot.require("b")? },
            };
            Ok((sextic_constraint_solve(m, p, known)?, None))
        }
        (Family::Mixed, Coefficient::C) => {
            let (a, b) = (pot.require("a")?, pot.require("b")?);
            let spec = PotentialSpec::Mixed { a, b, c: 0.0 }.validate()?;
            let energy = mixed_energy_with(&spec, m, p, formulas)?;
            Ok((mixed_coulomb_solve_with(a, b, m, p, formulas)?, Some(energy)))
        }
        (Family::SingularEvenPower, Coefficient::B) => {
            let (a, c, d) = (pot.require("a")?, pot.require("c")?, pot.require("d")?);
            let spec = PotentialSpec::SingularEvenPower { a, b: 0.0, c, d }.validate()?;
            let energy = singular_energy(&spec, m, p)?;
            Ok((singular_b_solve_with(a, c, d, m, p, formulas)?, Some(energy)))
        }
        _ => Err(unsupported()),
    }
}

/// ODE residual of the state obtained by setting `target = value`.
fn residual_for(pot: &PotentialArgs, target: Coefficient, value: f64, formulas: FormulaSet) -> f64 {
    let family = pot.family();
    let coeffs: Vec<f64> = family
        .coefficient_names()
        .iter()
        .map(|n| if *n == target.name() { Some(value) } else { pot.coefficient(n) })
        .collect::<Option<Vec<_>>>()
        .unwrap_or_default();
    let Ok(spec) = PotentialSpec::from_coefficients(family, &coeffs) else {
        return f64::NAN;
    };
    let options = SolveOptions { formulas, tolerance: pot.tolerance };
    match solve(&spec, pot.m, pot.p, options) {
        Ok(sols) => sols.iter().map(ode_residual).fold(0.0, f64::max),
        Err(_) => f64::NAN,
    }
}

fn cmd_constrain(args: &ConstrainArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let pot = &args.potential;
    let formulas = pot.formulas();
    let target = args.solve_for;
    let (values, energy) = constraint_values(pot, target, formulas)?;

    if formulas == FormulaSet::Corrected {
        if let Ok((printed, printed_energy)) = constraint_values(pot, target, FormulaSet::Printed) {
            let differs = printed.len() != values.len()
                || printed.iter().zip(&values).any(|(x, y)| (x - y).abs() > 1e-9 * y.abs().max(1.0))
                || match (printed_energy, energy) {
                    (Some(x), Some(y)) => (x - y).abs() > 1e-9 * y.abs().max(1.0),
                    _ => false,
                };
            if differs {
                for &v in &printed {
                    let _ = writeln!(
                        err,
                        "WARNING: as-published closed form gives {} = {}{}; its ODE residual is {} \
                         (corrected {} = [{}] has residual {})",
                        target.name(),
                        number(v),
                        printed_energy.map(|e| format!(" at E = {}", number(e))).unwrap_or_default(),
                        number(residual_for(pot, target, v, FormulaSet::Printed)),
                        target.name(),
                        values.iter().map(|&x| number(x)).collect::<Vec<_>>().join(", "),
                        number(
                            values
                                .iter()
                                .map(|&x| residual_for(pot, target, x, FormulaSet::Corrected))
                                .fold(0.0, f64::max)
                        ),
                    );
                }
            }
        }
    }

    let family = pot.family();
    let text = match args.output.format {
        Format::Json => json_array(&[Record::new()
            .text("family", family.name())
            .integer("m", u64::from(pot.m))
            .integer("p", pot.p as u64)
            .text("solve_for", target.name())
            .optional_number("E", energy)
            .numbers("values", &values)
            .text("formulas", formulas_name(formulas))]),
        Format::Csv => csv_table(
            &["family", "m", "p", "solve_for", "E", "value", "formulas"],
            &values
                .iter()
                .map(|&v| {
                    vec![
                        family.name().to_string(),
                        pot.m.to_string(),
                        pot.p.to_string(),
                        target.name().to_string(),
                        energy.map(number).unwrap_or_default(),
                        number(v),
                        formulas_name(formulas).to_string(),
                    ]
                })
                .collect::<Vec<_>>(),
        ),
    };
    emit(&text, args.output.output.as_ref(), out)?;
    Ok(EXIT_OK)
}

fn grid_for(family: Family, args: &GridArgs) -> Result<Grid, Failure> {
    let d = Grid::default_for(family);
    Grid::new(args.r_min.unwrap_or(d.r_min), args.r_max.unwrap_or(d.r_max), args.n_points.unwrap_or(d.n_points))
        .map_err(Failure::from)
}

fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let pot = &args.potential;
    let spec = pot.spec()?;
    let grid = grid_for(spec.family(), &args.grid)?;
    let formulas = pot.formulas();

    let solutions = match solve(&spec, pot.m, pot.p, pot.options()) {
        Ok(s) => s,
        Err(QesError::NonRealEnergy { discriminant }) if formulas == FormulaSet::Printed => {
            // the published expression has no real value here: that is itself a failed check
            let record = Record::new()
                .text("family", spec.family().name())
                .integer("m", u64::from(pot.m))
                .integer("p", pot.p as u64)
                .optional_number("E", None)
                .number("discriminant", discriminant)
                .text("formulas", formulas_name(formulas))
                .text("verdict", "FAIL");
            let text = match args.output.format {
                Format::Json => json_array(&[record]),
                Format::Csv => csv_table(
                    &["family", "m", "p", "E", "discriminant", "formulas", "verdict"],
                    &[vec![
                        spec.family().name().to_string(),
                        pot.m.to_string(),
                        pot.p.to_string(),
                        String::new(),
                        number(discriminant),
                        formulas_name(formulas).to_string(),
                        "FAIL".to_string(),
                    ]],
                ),
            };
            emit(&text, args.output.output.as_ref(), out)?;
            return Ok(EXIT_VERIFY);
        }
        Err(e) => return Err(e.into()),
    };

    let report = cross_validate(&solutions, &grid)?;
    let rows = state_rows(solutions)?;
    let verdict = |pass: bool| if pass { "PASS" } else { "FAIL" };
    let text = match args.output.format {
        Format::Json => json_array(
            &rows
                .iter()
                .zip(&report.matched)
                .map(|(row, cmp)| {
                    base_record(row)
                        .number("oracle_E", cmp.oracle)
                        .integer("oracle_index", cmp.index as u64)
                        .number("delta", cmp.delta)
                        .integer("oracle_sign_changes", cmp.sign_changes as u64)
                        .text("verdict", verdict(cmp.pass))
                })
                .collect::<Vec<_>>(),
        ),
        Format::Csv => {
            let mut header = STATE_HEADER.to_vec();
            header.extend(["oracle_E", "oracle_index", "delta", "oracle_sign_changes", "verdict"]);
            let body: Vec<Vec<String>> = rows
                .iter()
                .zip(&report.matched)
                .map(|(row, cmp)| {
                    let mut line = base_csv(row);
                    line.extend([
                        number(cmp.oracle),
                        cmp.index.to_string(),
                        number(cmp.delta),
                        cmp.sign_changes.to_string(),
                        verdict(cmp.pass).to_string(),
                    ]);
                    line
                })
                .collect();
            csv_table(&header, &body)
        }
    };
    emit(&text, args.output.output.as_ref(), out)?;
    Ok(if report.all_pass() { EXIT_OK } else { EXIT_VERIFY })
}

fn cmd_sample(args: &SampleArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let pot = &args.potential;
    let spec = pot.spec()?;
    if !(args.from > 0.0 && args.to > args.from) || args.rows < 2 {
        return Err(Failure::usage("need 0 < --from < --to and --rows ≥ 2".into()));
    }
    let mut solutions = solve(&spec, pot.m, pot.p, pot.options())?;
    if args.index >= solutions.len() {
        return Err(Failure::usage(format!(
            "--index {} out of range: {} state(s) available",
            args.index,
            solutions.len()
        )));
    }
    let state = normalize(solutions.swap_remove(args.index))?;
    let step = (args.to - args.from) / (args.rows - 1) as f64;
    let body = (0..args.rows)
        .map(|i| {
            let r = if i + 1 == args.rows { args.to } else { args.from + i as f64 * step };
            let (value, first, _) = state.derivatives(r)?;
            Ok(vec![number(r), number(value), number(first), number(spec.effective(pot.m, r)?)])
        })
        .collect::<Result<Vec<_>, QesError>>()?;
    let text = csv_table(&["r", "R", "Rprime", "Veff"], &body);
    emit(&text, args.output.as_ref(), out)?;
    Ok(EXIT_OK)
}
