use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand};
use permlabel::harness::{self, Instances};
use permlabel::{random_permutation, render, Labeling, Permutation, Scheme};

#[derive(Parser)]
#[command(name = "permlabel", version, about = "Distance labels for permutation graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a uniformly random permutation of 1..=n.
    Gen { n: usize, seed: u64 },
    /// Label every vertex of a permutation graph.
    Encode {
        #[arg(long, default_value = "L3")]
        scheme: Scheme,
        perm: PathBuf,
    },
    /// Distance between two vertices, from their labels only.
    Query { labels: PathBuf, u: u32, v: u32 },
    /// Compare decoded distances with breadth-first search.
    #[command(group(ArgGroup::new("input").required(true).args(["perm", "random", "exhaustive"])))]
    Verify {
        /// Scheme to check; all three when omitted.
        #[arg(long)]
        scheme: Option<Scheme>,
        #[arg(long)]
        perm: Option<PathBuf>,
        /// Random instances: size, count and first seed.
        #[arg(long, num_args = 3, value_names = ["N", "COUNT", "SEED"])]
        random: Option<Vec<u64>>,
        /// Every permutation of this size.
        #[arg(long)]
        exhaustive: Option<usize>,
    },
    /// Label sizes of all schemes over random permutations, as CSV.
    Stats {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the grid representation as SVG.
    Render {
        perm: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Draw the set with its auxiliary boundary points.
        #[arg(long)]
        augmented: bool,
    },
    /// Time decoding on random queries.
    Bench {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        queries: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "L3")]
        scheme: Scheme,
    },
}

enum Failure {
    /// Bad arguments or unreadable input.
    Usage(String),
    /// A run that went through and found something wrong.
    Failed(String),
}

impl From<permlabel::Error> for Failure {
    fn from(e: permlabel::Error) -> Self {
        use permlabel::Error as E;
        match e {
            E::InvalidPermutation { .. }
            | E::EmptyPermutation
            | E::EnumerationTooLarge { .. }
            | E::TooSmall(_)
            | E::Disconnected
            | E::MalformedLabel(_)
            | E::Parse(_) => Failure::Usage(e.to_string()),
            other => Failure::Failed(other.to_string()),
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn read_perm(path: &Path) -> Result<Permutation, Failure> {
    Ok(read(path)?.parse()?)
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Gen { n, seed } => print!("{}", random_permutation(n, seed)?.to_text()),
        Command::Encode { scheme, perm } => print!("{}", permlabel::encode(&read_perm(&perm)?, scheme)?.to_text()),
        Command::Query { labels, u, v } => {
            let labeling: Labeling = read(&labels)?.parse()?;
            let n = labeling.labels.len() as u32;
            for id in [u, v] {
                if id == 0 || id > n {
                    return Err(Failure::Usage(format!("vertex {id} not in 1..={n}")));
                }
            }
            println!("{}", labeling.distance(u, v)?);
        }
        Command::Verify { scheme, perm, random, exhaustive } => {
            let instances = match (perm, random, exhaustive) {
                (Some(p), _, _) => Instances::Given(vec![read_perm(&p)?]),
                (_, Some(r), _) => Instances::Random { n: r[0] as usize, count: r[1] as usize, seed: r[2] },
                (_, _, Some(n)) => Instances::Exhaustive(n),
                _ => unreachable!("clap requires one input"),
            };
            let schemes = scheme.map_or(Scheme::ALL.to_vec(), |s| vec![s]);
            let mut failed = Vec::new();
            for report in harness::verify(&instances, &schemes)? {
                println!("{} {report}", if report.passed() { "PASS" } else { "FAIL" });
                if let Some(first) = report.mismatches.first() {
                    println!("counterexample: {first}");
                    if let Some(min) = harness::shrink(&first.perm, report.scheme)? {
                        println!("minimal: {min}");
                    }
                    failed.push(report.scheme.to_string());
                }
            }
            if !failed.is_empty() {
                return Err(Failure::Failed(format!("mismatches for {}", failed.join(", "))));
            }
        }
        Command::Stats { sizes, seeds, out } => {
            if sizes.contains(&0) {
                return Err(Failure::Usage("sizes must be positive".into()));
            }
            let csv = harness::stats_csv(&harness::stats_sweep(&sizes, seeds)?);
            match out {
                Some(path) => write(&path, &csv)?,
                None => print!("{csv}"),
            }
        }
        Command::Render { perm, out, augmented } => {
            write(&out, &render::render_svg(&read_perm(&perm)?, augmented)?)?;
        }
        Command::Bench { n, queries, seed, scheme } => {
            println!("{}", harness::bench(n, queries, seed, scheme)?);
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse().command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
