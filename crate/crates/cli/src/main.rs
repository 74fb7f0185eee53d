mod commands;
mod input;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use gkz_hodge_core::homological::{DEFAULT_KOSZUL_BOUND, DEFAULT_STRICTNESS_BOUND};
use gkz_hodge_core::toric::DEFAULT_SATURATION_BOUND;

use commands::{BuildKind, HodgeBounds, OrderName};
use input::{load, parse_box, parse_list, parse_matrix, IntList};
use report::RunReport;

const DEFAULT_BERNSTEIN_BOUND: usize = 8;

/// Exact computations for GKZ hypergeometric systems and their Hodge filtrations.
///
/// Matrices are read from JSON (`[[..]]`, `{"matrix": [[..]]}` or
/// `{"rows", "cols", "entries"}`) or from whitespace-separated text rows.
/// Exit status: 0 when every verdict holds, 2 when a verdict fails, 1 on usage
/// or input errors.
#[derive(Parser, Debug)]
#[command(name = "gkz-hodge", version)]
struct Cli {
    /// Print the full JSON report instead of a summary.
    #[arg(long, global = true)]
    json: bool,
    /// Reduction step budget for Groebner computations (sets GKZ_HODGE_BUDGET).
    #[arg(long, global = true, value_name = "STEPS")]
    budget: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Cone, saturation, Gorenstein vector and c' decompositions of NB.
    Toric {
        matrix: PathBuf,
        /// Search bound for the saturation certificate.
        #[arg(long, default_value_t = DEFAULT_SATURATION_BOUND)]
        bound: u32,
    },
    /// Build a presentation: gkz, fl, graph, chart, kernel, rees or the A^s matrices.
    Build {
        #[arg(value_enum)]
        kind: BuildKind,
        matrix: PathBuf,
        /// Parameter vector, comma separated (default 0).
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        beta: Option<IntList>,
        /// Chart index u.
        #[arg(long, default_value_t = 0)]
        chart: usize,
    },
    /// Groebner basis of a GKZ system (matrix input) or of listed operators.
    Groebner {
        input: PathBuf,
        #[arg(long, value_parser = parse_list, allow_hyphen_values = true)]
        beta: Option<IntList>,
        #[arg(long, value_enum, default_value_t = OrderName::Weyl)]
        order: OrderName,
    },
    /// Bernstein exponent m of the graph embedding, with b(x) = x^m.
    Bernstein {
        matrix: PathBuf,
        /// Largest degree tried for the Bernstein polynomial.
        #[arg(long, default_value_t = DEFAULT_BERNSTEIN_BOUND)]
        bound: usize,
    },
    /// Ishida complex cohomology of C[N A^s] in every degree of a box.
    Ishida {
        matrix: PathBuf,
        /// Degree box a:b applied to every coordinate.
        #[arg(long = "box", value_parser = parse_box, allow_hyphen_values = true)]
        bx: Option<(i64, i64)>,
    },
    /// Strictness of P -> P R (morphism file) or of the duality morphism (matrix Ã).
    Strict {
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_STRICTNESS_BOUND)]
        bound: usize,
    },
    /// Duality data c̃, the dual parameter and the shift c_0 + n for a homogenized Ã.
    Duality {
        matrix: PathBuf,
        /// Line bundle data k,l,m of a total space.
        #[arg(long, value_parser = parse_list)]
        fiber: Option<IntList>,
    },
    /// Full evidence chain for the order filtration of M^0_Ã and its dual.
    VerifyHodge {
        matrix: PathBuf,
        /// The input is already Ã (first row of ones, first column e_0).
        #[arg(long)]
        homogenized: bool,
        /// Degree bound for the strictness scan.
        #[arg(long, default_value_t = DEFAULT_STRICTNESS_BOUND)]
        bound: usize,
        #[arg(long, default_value_t = DEFAULT_KOSZUL_BOUND)]
        koszul_bound: usize,
        #[arg(long, default_value_t = DEFAULT_BERNSTEIN_BOUND)]
        bernstein_bound: usize,
        /// Use chart u for the Koszul regularity check.
        #[arg(long)]
        chart: Option<usize>,
    },
}

fn run(cli: Cli, argv: Vec<String>) -> Result<RunReport, Box<dyn std::error::Error>> {
    let path = match &cli.command {
        Command::Toric { matrix, .. }
        | Command::Build { matrix, .. }
        | Command::Bernstein { matrix, .. }
        | Command::Ishida { matrix, .. }
        | Command::Duality { matrix, .. }
        | Command::VerifyHodge { matrix, .. } => matrix,
        Command::Groebner { input, .. } | Command::Strict { input, .. } => input,
    };
    let loaded = load(path)?;
    let mut report = RunReport::new(argv, vec![loaded.digest]);
    let text = &loaded.text;
    match cli.command {
        Command::Toric { bound, .. } => commands::toric(&parse_matrix(text)?, bound, &mut report)?,
        Command::Build { kind, beta, chart, .. } => commands::build(kind, &parse_matrix(text)?, beta.map(|b| b.0), chart, &mut report)?,
        Command::Groebner { beta, order, .. } => commands::groebner(text, beta.map(|b| b.0), order, &mut report)?,
        Command::Bernstein { bound, .. } => commands::bernstein(&parse_matrix(text)?, bound, &mut report)?,
        Command::Ishida { bx, .. } => commands::ishida(&parse_matrix(text)?, bx, &mut report)?,
        Command::Strict { bound, .. } => commands::strict(text, bound, &mut report)?,
        Command::Duality { fiber, .. } => commands::duality(&parse_matrix(text)?, fiber.map(|f| f.0), &mut report)?,
        Command::VerifyHodge { homogenized, bound, koszul_bound, bernstein_bound, chart, .. } => {
            let (a, a_tilde) = commands::split_tilde(&parse_matrix(text)?, homogenized)?;
            let bounds = HodgeBounds { koszul: koszul_bound, strictness: bound, bernstein: bernstein_bound, chart: chart.unwrap_or(0) };
            commands::verify_hodge(&a, &a_tilde, &bounds, &mut report)?
        }
    }
    Ok(report)
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(b) = cli.budget {
        std::env::set_var("GKZ_HODGE_BUDGET", b.to_string());
    }
    let json = cli.json;
    let start = Instant::now();
    match run(cli, argv[1..].to_vec()) {
        Ok(report) => {
            let out = if json { report.to_json() + "\n" } else { report.summary() };
            // A closed pipe on stdout is not an error of the computation.
            let _ = std::io::stdout().write_all(out.as_bytes());
            eprintln!("gkz-hodge: finished in {:.3}s", start.elapsed().as_secs_f64());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                for (name, _) in report.verdicts.iter().filter(|(_, ok)| !**ok) {
                    eprintln!("gkz-hodge: verdict failed: {name}");
                }
                ExitCode::from(2)
            }
        }
        Err(e) => {
            eprintln!("gkz-hodge: error: {e}");
            ExitCode::from(1)
        }
    }
}
