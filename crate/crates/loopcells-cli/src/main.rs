//! Command-line driver: tableau display, the kappa report, Bruhat cell
//! extraction for matrix files, and the full verification sweep.
//!
//! Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 input
//! error, 3 singular or otherwise invalid matrix.

use clap::{Args, Parser, Subcommand, ValueEnum};
use loopcells::affine::Side;
use loopcells::constructions::{kappa_report, KappaReport};
use loopcells::error::Error;
use loopcells::laurent::parse_matrix_auto;
use loopcells::tableau::{build_tableau, ParabolicDescriptor, ParabolicTableau};
use loopcells::verify::{descriptor_sweep, run_all, CheckOutcome, DescriptorOutcome, SuiteConfig};
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_MATRIX: u8 = 3;

#[derive(Parser)]
#[command(
    name = "loopcells",
    about = "Affine Weyl group combinatorics and Iwahori-Bruhat cells of Laurent matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Args)]
struct ShapeArgs {
    /// Matrix size n >= 2.
    #[arg(short = 'n', long)]
    n: usize,
    /// Omitted simple roots d_1 < ... < d_{r-1}, comma separated; empty for P = G.
    #[arg(short = 'd', long, value_delimiter = ',', num_args = 0.., default_value = "")]
    d: Vec<String>,
    #[arg(long, value_enum, default_value = "text")]
    output: OutputFormat,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Quotient {
    /// Full Iwahori cell B w B.
    None,
    /// Modulo the finite parahoric (cells of the affine Grassmannian).
    S0,
    /// Modulo the parahoric of the descriptor given by -d.
    Sp,
}

#[derive(Subcommand)]
enum Command {
    /// Build and display the tableau of a parabolic descriptor.
    Tableau(ShapeArgs),
    /// Build kappa, tau_q, varpi and the factorization, and verify the
    /// attached identities.
    Kappa(ShapeArgs),
    /// Extract the Bruhat cell of a Laurent matrix file (JSON or text).
    Cell {
        /// Path to the matrix file.
        file: PathBuf,
        #[arg(long = "mod", value_enum, default_value = "none")]
        quotient: Quotient,
        /// Descriptor for --mod sp, comma separated.
        #[arg(short = 'd', long, value_delimiter = ',', num_args = 0.., default_value = "")]
        d: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
    /// Run the verification sweep and the full criteria suite.
    CheckAll {
        /// Exhaustive bound: all descriptors with n <= max-n (<= 8 advised).
        #[arg(long = "max-n", default_value_t = 5)]
        max_n: usize,
        /// Randomized trial count for the sampled checks.
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Seed for all randomized trials (env LOOPCELLS_SEED overrides the default).
        #[arg(long)]
        seed: Option<u64>,
        /// Skip descriptors whose Laurent products would exceed this term budget.
        #[arg(long = "term-budget", default_value_t = 200_000)]
        term_budget: usize,
        #[arg(long, value_enum, default_value = "text")]
        output: OutputFormat,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {}", err);
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Singular | Error::NonUnimodular(_) | Error::NonMonomial(_) | Error::NotNilpotent => {
            EXIT_MATRIX
        }
        Error::Internal(_) => EXIT_CHECK_FAILED,
        _ => EXIT_INPUT,
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Tableau(shape) => cmd_tableau(&shape),
        Command::Kappa(shape) => cmd_kappa(&shape),
        Command::Cell {
            file,
            quotient,
            d,
            output,
        } => cmd_cell(&file, quotient, &d, output),
        Command::CheckAll {
            max_n,
            trials,
            seed,
            term_budget,
            output,
        } => cmd_check_all(max_n, trials, seed, term_budget, output),
    }
}

fn parse_d(parts: &[String]) -> Result<Vec<usize>, Error> {
    let mut out = Vec::new();
    for part in parts {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        out.push(
            part.parse::<usize>()
                .map_err(|_| Error::Parse(format!("bad descriptor entry '{}'", part)))?,
        );
    }
    Ok(out)
}

fn tableau_for(shape: &ShapeArgs) -> Result<ParabolicTableau, Error> {
    let d = parse_d(&shape.d)?;
    let desc = ParabolicDescriptor::new(shape.n, d)?;
    Ok(build_tableau(&desc))
}

/// Write the JSON text to `$LOOPCELLS_OUTDIR/<name>.json` when the
/// environment variable is set.
fn mirror_to_outdir(name: &str, json: &str) {
    if let Ok(dir) = std::env::var("LOOPCELLS_OUTDIR") {
        if dir.is_empty() {
            return;
        }
        let path = std::path::Path::new(&dir).join(format!("{}.json", name));
        if let Err(e) = std::fs::write(&path, json) {
            eprintln!("warning: could not write {}: {}", path.display(), e);
        }
    }
}

fn cmd_tableau(shape: &ShapeArgs) -> Result<ExitCode, Error> {
    let tab = tableau_for(shape)?;
    match shape.output {
        OutputFormat::Json => {
            let json = serde_json::to_string_pretty(&tab).expect("serializable");
            println!("{}", json);
            mirror_to_outdir("tableau", &json);
        }
        OutputFormat::Text => {
            println!("{}", tab.render());
            println!("lambda = {:?}", tab.lambda);
            println!("nu     = {}", tab.nu);
            println!("rows r = {}, columns s = {}", tab.r, tab.s);
            println!("red    = {:?}", tab.l_seq);
            println!("m_seq  = {:?}", tab.m_seq);
            println!("t_seq  = {:?}", tab.t_seq);
            println!("dim G/P = {}", tab.dim_g_mod_p());
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct KappaOutput<'a> {
    report: &'a KappaReport,
    all_pass: bool,
}

fn cmd_kappa(shape: &ShapeArgs) -> Result<ExitCode, Error> {
    let tab = tableau_for(shape)?;
    let report = kappa_report(&tab);
    let all_pass = report.checks.all_pass();
    match shape.output {
        OutputFormat::Json => {
            let json = serde_json::to_string_pretty(&KappaOutput {
                report: &report,
                all_pass,
            })
            .expect("serializable");
            println!("{}", json);
            mirror_to_outdir("kappa", &json);
        }
        OutputFormat::Text => {
            println!("descriptor   : {}", report.descriptor);
            println!("lambda       : {:?}", report.lambda);
            println!("nu           : {:?}", report.nu);
            println!("dim G/P      : {}", report.dim_g_mod_p);
            println!(
                "kappa        : {}  ({})",
                report.kappa.window, report.kappa.matrix
            );
            println!(
                "varpi        : {}  ({})",
                report.varpi.window, report.varpi.matrix
            );
            println!(
                "tau_q        : {}  ({})",
                report.tau_q.window, report.tau_q.matrix
            );
            if let (Some(wg), Some(wp)) = (&report.w_g, &report.w_p) {
                println!("w_g          : {}", wg.window);
                println!("w_p          : {}", wp.window);
            }
            println!(
                "lengths      : kappa {}, tau_q {}, sigma {}",
                report.lengths.kappa, report.lengths.tau_q, report.lengths.sigma
            );
            println!(
                "verdicts     : g_stable {}, minimal in W^P {}, length formula {}, compactification {}",
                report.checks.g_stable,
                report.checks.kappa_minimal_in_wp,
                report.checks.kappa_length_formula,
                report.checks.is_compactification
            );
        }
    }
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        let failing = report.checks.first_failure().unwrap_or("unknown");
        eprintln!("check failed: {}", failing);
        Ok(ExitCode::from(EXIT_CHECK_FAILED))
    }
}

#[derive(Serialize)]
struct CellOutput {
    window: String,
    matrix: String,
    length: u64,
    n: usize,
    sigma: Vec<usize>,
    exps: Vec<i64>,
}

fn cmd_cell(
    file: &std::path::Path,
    quotient: Quotient,
    d: &[String],
    output: OutputFormat,
) -> Result<ExitCode, Error> {
    let content = std::fs::read_to_string(file)
        .map_err(|e| Error::Parse(format!("cannot read {}: {}", file.display(), e)))?;
    let matrix = parse_matrix_auto(&content)?;
    let cell = loopcells::laurent::extract_cell(&matrix)?;
    let cell = match quotient {
        Quotient::None => cell,
        Quotient::S0 => {
            let s0: Vec<usize> = (1..matrix.n()).collect();
            cell.min_coset_rep(&s0, Side::Right)?
        }
        Quotient::Sp => {
            let desc = ParabolicDescriptor::new(matrix.n(), parse_d(d)?)?;
            cell.min_coset_rep(&desc.sp_indices(), Side::Right)?
        }
    };
    match output {
        OutputFormat::Json => {
            let out = CellOutput {
                window: cell.window_string(),
                matrix: cell.monomial_string(),
                length: cell.length(),
                n: cell.n(),
                sigma: cell.sigma().to_vec(),
                exps: cell.exps().to_vec(),
            };
            let json = serde_json::to_string_pretty(&out).expect("serializable");
            println!("{}", json);
            mirror_to_outdir("cell", &json);
        }
        OutputFormat::Text => {
            println!("window : {}", cell.window_string());
            println!("matrix : {}", cell.monomial_string());
            println!("length : {}", cell.length());
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckAllOutput {
    config: SuiteConfig,
    descriptors: Vec<DescriptorOutcome>,
    criteria: Vec<CheckOutcome>,
    all_pass: bool,
}

fn cmd_check_all(
    max_n: usize,
    trials: usize,
    seed: Option<u64>,
    term_budget: usize,
    output: OutputFormat,
) -> Result<ExitCode, Error> {
    if max_n < 2 {
        return Err(Error::Parse("--max-n must be at least 2".into()));
    }
    if trials == 0 {
        return Err(Error::Parse("--trials must be at least 1".into()));
    }
    let env_seed = std::env::var("LOOPCELLS_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok());
    let cfg = SuiteConfig {
        max_n,
        trials,
        seed: seed.or(env_seed).unwrap_or(SuiteConfig::default().seed),
        term_budget,
    };
    let descriptors = descriptor_sweep(&cfg);
    let criteria = run_all(&cfg);
    let all_pass =
        descriptors.iter().all(|d| d.passed || d.skipped) && criteria.iter().all(|c| c.passed);
    match output {
        OutputFormat::Json => {
            let out = CheckAllOutput {
                config: cfg,
                descriptors,
                criteria,
                all_pass,
            };
            let json = serde_json::to_string_pretty(&out).expect("serializable");
            println!("{}", json);
            mirror_to_outdir("check-all", &json);
        }
        OutputFormat::Text => {
            for row in &descriptors {
                if row.skipped {
                    println!("SKIP {} (term budget)", row.descriptor);
                } else if row.passed {
                    println!(
                        "PASS {} l(kappa)={}",
                        row.descriptor,
                        row.kappa_length.unwrap_or(0)
                    );
                } else {
                    println!(
                        "FAIL {} at {}",
                        row.descriptor,
                        row.first_failure.as_deref().unwrap_or("unknown")
                    );
                }
            }
            for c in &criteria {
                println!(
                    "{} criterion {:2}: {} - {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.criterion,
                    c.name,
                    c.details
                );
            }
        }
    }
    if all_pass {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_CHECK_FAILED))
    }
}
