use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use kolmogorov_approx::bench::{run_bench, write_bench_csv, BenchConfig};
use kolmogorov_approx::io::{parse_distribution_csv, parse_schedule_json, write_distribution_csv};
use kolmogorov_approx::{
    compress, dual_approx, evaluate, kolmogorov_distance, one_sided_excess, Algorithm,
    Distribution, DualMode, Error, Schedule,
};

const EXIT_USAGE: u8 = 2;
const EXIT_DATA: u8 = 3;
const EXIT_RESOURCE: u8 = 4;

#[derive(Parser)]
#[command(
    name = "kapprox",
    version,
    about = "Optimal one-sided Kolmogorov compression of discrete distributions"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmArg {
    Binsearch,
    Saddleback,
    Linear,
    Oracle,
}

impl From<AlgorithmArg> for Algorithm {
    fn from(a: AlgorithmArg) -> Self {
        match a {
            AlgorithmArg::Binsearch => Algorithm::Binsearch,
            AlgorithmArg::Saddleback => Algorithm::Saddleback,
            AlgorithmArg::Linear => Algorithm::Linear,
            AlgorithmArg::Oracle => Algorithm::Oracle,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Strict,
    Paper,
}

#[derive(Subcommand)]
enum Command {
    /// Compress a distribution to at most M points, or to a fixed error.
    Compress {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, required_unless_present = "epsilon")]
        m: Option<usize>,
        #[arg(long, value_enum, default_value = "linear")]
        algorithm: AlgorithmArg,
        /// Run the fixed-error greedy scan instead of budget optimization.
        #[arg(long)]
        epsilon: Option<f64>,
        #[arg(long, value_enum, default_value = "strict")]
        mode: ModeArg,
        #[arg(long)]
        output: PathBuf,
    },
    /// Kolmogorov distance between two distributions.
    Distance {
        a: PathBuf,
        b: PathBuf,
        /// Print sup_t F_B(t) - F_A(t) instead.
        #[arg(long)]
        one_sided: bool,
    },
    /// Deadline-miss probability of a series-parallel schedule.
    Schedule {
        #[arg(long)]
        tree: PathBuf,
        #[arg(long)]
        trim: usize,
        #[arg(long, value_enum, default_value = "linear")]
        algorithm: AlgorithmArg,
        #[arg(long)]
        deadline: f64,
    },
    /// Time the optimizers on generated instances and write a CSV.
    Bench {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        m: usize,
        #[arg(
            long,
            value_enum,
            value_delimiter = ',',
            default_value = "saddleback,linear"
        )]
        algorithms: Vec<AlgorithmArg>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 64)]
        grid: u64,
        #[arg(long)]
        output: PathBuf,
    },
}

enum Failure {
    Io(PathBuf, std::io::Error),
    Domain(Option<PathBuf>, Error),
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Io(..) => EXIT_DATA,
            Failure::Domain(_, e) if e.is_resource_limit() => EXIT_RESOURCE,
            Failure::Domain(_, Error::InvalidParams(_))
            | Failure::Domain(_, Error::InvalidBudget(_)) => EXIT_USAGE,
            Failure::Domain(..) => EXIT_DATA,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Io(path, e) => format!("{}: {e}", path.display()),
            Failure::Domain(Some(path), e) => format!("{}: {e}", path.display()),
            Failure::Domain(None, e) => e.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(None, e)
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(path.to_path_buf(), e))
}

fn load_distribution(path: &Path) -> Result<Distribution, Failure> {
    parse_distribution_csv(&read(path)?).map_err(|e| Failure::Domain(Some(path.to_path_buf()), e))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compress {
            input,
            m,
            algorithm,
            epsilon,
            mode,
            output,
        } => {
            let dist = load_distribution(&input)?;
            let approx = match epsilon {
                Some(eps) => {
                    let mode = match mode {
                        ModeArg::Strict => DualMode::Strict,
                        ModeArg::Paper => DualMode::PaperLiteral,
                    };
                    dual_approx(&dist, eps, mode)?
                }
                None => compress(
                    &dist,
                    m.expect("clap enforces --m without --epsilon"),
                    algorithm.into(),
                )?,
            };
            write(&output, &write_distribution_csv(&approx.dist))?;
            println!("epsilon: {}", approx.epsilon);
            println!("support: {}", approx.support_size());
        }
        Command::Distance { a, b, one_sided } => {
            let da = load_distribution(&a)?;
            let db = load_distribution(&b)?;
            let d = if one_sided {
                one_sided_excess(&da, &db)
            } else {
                kolmogorov_distance(&da, &db)
            };
            println!("{d}");
        }
        Command::Schedule {
            tree,
            trim,
            algorithm,
            deadline,
        } => {
            let text = read(&tree)?;
            let node: Schedule =
                parse_schedule_json(&text).map_err(|e| Failure::Domain(Some(tree.clone()), e))?;
            let result = evaluate(&node, trim, algorithm.into())?;
            let interval = result.miss_probability(deadline);
            println!("miss_probability: {interval}");
            println!("budget_total: {}", result.budget.total());
            println!("support: {}", result.dist.len());
        }
        Command::Bench {
            sizes,
            m,
            algorithms,
            seed,
            grid,
            output,
        } => {
            let config = BenchConfig {
                sizes,
                m,
                algorithms: algorithms.into_iter().map(Algorithm::from).collect(),
                seed,
                grid,
            };
            let records = run_bench(&config)?;
            write(&output, &write_bench_csv(&records))?;
            println!("wrote {} records to {}", records.len(), output.display());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            ExitCode::from(failure.exit_code())
        }
    }
}
