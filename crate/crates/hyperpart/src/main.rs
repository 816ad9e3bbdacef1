use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use hyperpart::cli::{check_determinism, evaluate_report, run_partition, run_sweep, sweep_csv};
use hyperpart::io::{parse_partition, partition_bytes, read_hgr_file};
use hyperpart::kway::KwayError;
use hyperpart::matching::MatchingPolicy;
use hyperpart::params::{Imbalance, Params};
use hyperpart::partition::Partition;
use hyperpart::Hypergraph;

/// Deterministic parallel multilevel hypergraph partitioner.
#[derive(Parser)]
#[command(name = "hyperpart", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct PipelineFlags {
    /// Input hypergraph in hMetis .hgr format.
    #[arg(long)]
    input: PathBuf,
    /// Number of parts.
    #[arg(long, default_value_t = 2)]
    k: u32,
    /// Imbalance parameter (decimal).
    #[arg(long, default_value = "0.1")]
    epsilon: Imbalance,
    /// Matching policy: LDH, HDH, LWD, HWD, or RAND.
    #[arg(long, default_value = "LDH")]
    policy: MatchingPolicy,
    /// Maximum coarsening levels.
    #[arg(long = "coarse-to", default_value_t = 25)]
    coarse_to: u32,
    /// Refinement rounds per level.
    #[arg(long = "refine-iters", default_value_t = 2)]
    refine_iters: u32,
    /// Worker threads (default: all cores). Never affects results.
    #[arg(long)]
    threads: Option<usize>,
}

impl PipelineFlags {
    fn params(&self) -> Params {
        Params {
            policy: self.policy,
            coarse_to: self.coarse_to,
            refine_iters: self.refine_iters,
            epsilon: self.epsilon,
            k: self.k,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Partition a hypergraph and write the assignment file.
    Partition {
        #[command(flatten)]
        flags: PipelineFlags,
        /// Output partition file (default: <input>.part<k>).
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Evaluate an existing partition file.
    Evaluate {
        /// Input hypergraph in hMetis .hgr format.
        #[arg(long)]
        input: PathBuf,
        /// Partition assignment file.
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value = "0.1")]
        epsilon: Imbalance,
    },
    /// Run the pipeline across thread counts and verify byte-identical output.
    CheckDeterminism {
        #[command(flatten)]
        flags: PipelineFlags,
        /// Comma-separated worker pool sizes to compare.
        #[arg(long = "thread-list", default_value = "1,2,4,8", value_delimiter = ',')]
        thread_list: Vec<usize>,
        /// Repetitions per thread count.
        #[arg(long, default_value_t = 3)]
        repeats: usize,
    },
    /// Run a parameter sweep and write a CSV for offline Pareto analysis.
    Sweep {
        #[command(flatten)]
        flags: PipelineFlags,
        /// Policies to sweep.
        #[arg(long, default_value = "LDH,HDH,LWD,HWD,RAND", value_delimiter = ',')]
        policies: Vec<MatchingPolicy>,
        /// Coarsening caps to sweep.
        #[arg(long = "coarse-to-list", default_value = "25", value_delimiter = ',')]
        coarse_to_list: Vec<u32>,
        /// Refinement iteration counts to sweep.
        #[arg(long = "refine-iters-list", default_value = "2", value_delimiter = ',')]
        refine_iters_list: Vec<u32>,
        /// Output CSV path.
        #[arg(long)]
        csv: PathBuf,
    },
}

const EXIT_PARSE: u8 = 1;
const EXIT_FLAGS: u8 = 2;
const EXIT_MISMATCH: u8 = 3;

fn fail(code: u8, err: anyhow::Error) -> ExitCode {
    eprintln!("error: {err:#}");
    ExitCode::from(code)
}

fn validate(params: &Params, threads: Option<usize>, nodes: usize) -> Result<(), String> {
    if let Err(e) = params.check() {
        return Err(e.to_string());
    }
    if params.k as usize > nodes {
        return Err(KwayError::MorePartsThanNodes { k: params.k, nodes }.to_string());
    }
    if threads == Some(0) {
        return Err("--threads must be >= 1".into());
    }
    Ok(())
}

fn load_graph(path: &Path) -> Result<Hypergraph, anyhow::Error> {
    read_hgr_file(path).with_context(|| format!("reading {}", path.display()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Partition { flags, output } => {
            let h = match load_graph(&flags.input) {
                Ok(h) => h,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let params = flags.params();
            if let Err(msg) = validate(&params, flags.threads, h.num_nodes) {
                return fail(EXIT_FLAGS, anyhow::anyhow!(msg));
            }
            let (partition, summary) = match run_partition(&h, &params, flags.threads) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_FLAGS, e.into()),
            };
            let output = output.unwrap_or_else(|| {
                let mut name = flags.input.as_os_str().to_owned();
                name.push(format!(".part{}", params.k));
                PathBuf::from(name)
            });
            if let Err(e) = fs::write(&output, partition_bytes(&partition)) {
                return fail(
                    EXIT_PARSE,
                    anyhow::Error::new(e).context("writing partition file"),
                );
            }
            println!("{}", summary.line());
            ExitCode::SUCCESS
        }
        Command::Evaluate {
            input,
            partition,
            k,
            epsilon,
        } => {
            let h = match load_graph(&input) {
                Ok(h) => h,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            if k < 1 {
                return fail(EXIT_FLAGS, anyhow::anyhow!("k must be >= 1"));
            }
            let part = match fs::File::open(&partition)
                .map_err(anyhow::Error::new)
                .and_then(|f| {
                    parse_partition(std::io::BufReader::new(f), h.num_nodes, k)
                        .map_err(anyhow::Error::new)
                }) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, e.context("reading partition file")),
            };
            let p = match Partition::from_parts(part, k, &h) {
                Ok(p) => p,
                Err(e) => return fail(EXIT_PARSE, e.into()),
            };
            let params = Params {
                k,
                epsilon,
                ..Params::default()
            };
            print!("{}", evaluate_report(&h, &p, &params));
            ExitCode::SUCCESS
        }
        Command::CheckDeterminism {
            flags,
            thread_list,
            repeats,
        } => {
            let h = match load_graph(&flags.input) {
                Ok(h) => h,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let params = flags.params();
            if let Err(msg) = validate(&params, flags.threads, h.num_nodes) {
                return fail(EXIT_FLAGS, anyhow::anyhow!(msg));
            }
            if thread_list.is_empty() || thread_list.contains(&0) || repeats == 0 {
                return fail(
                    EXIT_FLAGS,
                    anyhow::anyhow!("--thread-list entries and --repeats must be >= 1"),
                );
            }
            let report = match check_determinism(&h, &params, &thread_list, repeats) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_FLAGS, e.into()),
            };
            match report.mismatch {
                None => {
                    println!(
                        "determinism: OK ({} runs over thread counts {:?})",
                        report.runs, thread_list
                    );
                    ExitCode::SUCCESS
                }
                Some(m) => {
                    println!(
                        "determinism: MISMATCH at node {}: part {} (threads={}) vs part {} (threads={}, repeat={})",
                        m.node,
                        m.baseline_part,
                        m.baseline_threads,
                        m.other_part,
                        m.other_threads,
                        m.other_repeat
                    );
                    ExitCode::from(EXIT_MISMATCH)
                }
            }
        }
        Command::Sweep {
            flags,
            policies,
            coarse_to_list,
            refine_iters_list,
            csv,
        } => {
            let h = match load_graph(&flags.input) {
                Ok(h) => h,
                Err(e) => return fail(EXIT_PARSE, e),
            };
            let params = flags.params();
            if let Err(msg) = validate(&params, flags.threads, h.num_nodes) {
                return fail(EXIT_FLAGS, anyhow::anyhow!(msg));
            }
            if policies.is_empty() || coarse_to_list.is_empty() || refine_iters_list.is_empty() {
                return fail(EXIT_FLAGS, anyhow::anyhow!("sweep lists must be non-empty"));
            }
            let rows = match run_sweep(
                &h,
                &params,
                &policies,
                &coarse_to_list,
                &refine_iters_list,
                flags.threads,
            ) {
                Ok(r) => r,
                Err(e) => return fail(EXIT_FLAGS, e.into()),
            };
            if let Err(e) = fs::write(&csv, sweep_csv(&rows)) {
                return fail(EXIT_PARSE, anyhow::Error::new(e).context("writing CSV"));
            }
            println!("sweep: {} rows -> {}", rows.len(), csv.display());
            ExitCode::SUCCESS
        }
    }
}
