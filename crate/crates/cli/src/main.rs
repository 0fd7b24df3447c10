use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex;

use qdc_core::grid::{format_complex, format_group_function, format_matrix, parse_group_function};
use qdc_core::report::schema_text;
use qdc_core::suites::{group_failure_report, verify, Options, Suite};
use qdc_core::twist::{product_direct, weyl_rep};
use qdc_core::{Error, FiniteGroup, GroupFunction, PairFunction, QuantumGroupPair, Twist};

const DEFAULT_MAX_ORDER: usize = 24;

#[derive(Parser)]
#[command(
    name = "qdc",
    version,
    about = "Quantum double of a finite group: identity verification and computations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run verification suites and print a report.
    Verify {
        /// Builtin spec (cyclic:n, dihedral:n, symmetric:n, quaternion8,
        /// product:A,B, trivial) or a Cayley table file.
        group: String,
        /// Comma-separated suites: base, double, rmatrix, twist, weyl,
        /// fourier, pairing, all.
        #[arg(long, default_value = "all")]
        suites: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Raise every suite cap to this order.
        #[arg(long)]
        cap_override: Option<usize>,
        /// Report zero elapsed time, for byte-identical reruns.
        #[arg(long)]
        no_timing: bool,
        /// Run the rmatrix suite on R with one sign flipped.
        #[arg(long)]
        mis_signed_r: bool,
    },
    /// Evaluate one object and print it in grid format.
    Compute {
        group: String,
        #[arg(value_enum)]
        what: What,
        /// Inline grids (rows separated by `;`) or files holding them.
        operands: Vec<String>,
        #[arg(long)]
        cap_override: Option<usize>,
    },
    /// Print the report field list.
    Schema,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Clone, Copy, ValueEnum)]
enum What {
    /// `<μ_b | L_a>` for operands `a b`.
    Pairing,
    /// Operator-level Fourier transform of `L_a`, as a function `b`.
    Fourier,
    ProductDirect,
    ProductFourier,
    ProductFunctional,
    WeylMatrix,
}

impl What {
    fn arity(self) -> usize {
        match self {
            What::Fourier | What::WeylMatrix => 1,
            _ => 2,
        }
    }

    fn suite(self) -> Suite {
        match self {
            What::Pairing => Suite::Pairing,
            What::Fourier => Suite::Fourier,
            What::WeylMatrix => Suite::Weyl,
            _ => Suite::Twist,
        }
    }
}

fn max_order(cap_override: Option<usize>) -> Result<usize, Error> {
    let base = match std::env::var("QDC_MAX_ORDER") {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            Error::Parse(format!(
                "QDC_MAX_ORDER must be a positive integer, got `{v}`"
            ))
        })?,
        Err(_) => DEFAULT_MAX_ORDER,
    };
    Ok(cap_override.map_or(base, |c| c.max(base)))
}

fn is_file(spec: &str) -> bool {
    Path::new(spec).is_file()
}

fn load_group(spec: &str, cap_override: Option<usize>) -> Result<FiniteGroup, Error> {
    if is_file(spec) {
        FiniteGroup::from_cayley_file(spec)
    } else {
        FiniteGroup::builtin(spec, max_order(cap_override)?)
    }
}

fn operand_text(op: &str) -> Result<String, Error> {
    if is_file(op) {
        Ok(std::fs::read_to_string(op)?)
    } else {
        Ok(op.to_string())
    }
}

fn run_verify(group: &str, suites: &str, opts: Options, format: Format) -> Result<ExitCode, Error> {
    let suites = Suite::parse_list(suites)?;
    let report = match load_group(group, opts.cap_override) {
        Ok(g) => verify(&g, &suites, &opts)?,
        Err(e @ Error::AxiomViolation { .. }) => group_failure_report(group, &e, &opts),
        Err(e) => return Err(e),
    };
    match format {
        Format::Json => println!("{}", report.to_json()),
        Format::Table => print!("{}", report.to_table()),
    }
    Ok(if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn run_compute(
    group: &str,
    what: What,
    operands: &[String],
    cap_override: Option<usize>,
) -> Result<String, Error> {
    let g = load_group(group, cap_override)?;
    let opts = Options {
        cap_override,
        ..Options::default()
    };
    let cap = opts.cap(what.suite());
    if g.order() > cap {
        return Err(Error::SizeLimit {
            what: "compute".into(),
            order: g.order(),
            cap,
        });
    }
    if operands.len() != what.arity() {
        return Err(Error::ShapeMismatch(format!(
            "expected {} operand(s), found {}",
            what.arity(),
            operands.len()
        )));
    }
    let texts = operands
        .iter()
        .map(|o| operand_text(o))
        .collect::<Result<Vec<_>, _>>()?;
    let function =
        |k: usize| -> Result<GroupFunction, Error> { parse_group_function(&texts[k], &g) };
    let grid = |k: usize| -> Result<PairFunction, Error> { PairFunction::parse(&texts[k], &g) };
    let out = match what {
        What::Pairing => {
            let p = QuantumGroupPair::new(&g)?;
            let value: Complex<f64> = p.pair(&function(1)?, &function(0)?);
            format!("{}\n", format_complex(&value))
        }
        What::Fourier => {
            let p = QuantumGroupPair::new(&g)?;
            let y = p.fourier_op(&p.left_regular(&function(0)?)?)?;
            format_group_function(&p.mu_coords(&y)?)
        }
        What::ProductDirect => product_direct(&g, &grid(0)?, &grid(1)?).to_text(),
        What::ProductFourier => Twist::from_group(&g)?
            .product_fourier(&grid(0)?, &grid(1)?)?
            .to_text(),
        What::ProductFunctional => Twist::from_group(&g)?
            .product_functional(&grid(0)?, &grid(1)?)?
            .to_text(),
        What::WeylMatrix => format_matrix(&weyl_rep(&g, &grid(0)?)),
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Verify {
            group,
            suites,
            seed,
            tol,
            format,
            cap_override,
            no_timing,
            mis_signed_r,
        } => {
            let opts = Options {
                seed,
                tol,
                timing: !no_timing,
                cap_override,
                mis_signed_r,
            };
            run_verify(&group, &suites, opts, format)
        }
        Command::Compute {
            group,
            what,
            operands,
            cap_override,
        } => run_compute(&group, what, &operands, cap_override).map(|s| {
            print!("{s}");
            ExitCode::SUCCESS
        }),
        Command::Schema => {
            print!("{}", schema_text());
            Ok(ExitCode::SUCCESS)
        }
    };
    result.unwrap_or_else(|e| {
        eprintln!("error: {e}");
        ExitCode::from(2)
    })
}
