//! `dualheap`: sort keys, benchmark the sorters, plot results, run the
//! oracle suite and simulate cache behaviour.

mod commands;
mod error;
mod keys;
mod record;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dualheap::{Algorithm, CacheConfig, Distribution, ParallelPolicy};

use commands::KeyFormat;

#[derive(Parser)]
#[command(name = "dualheap", version, about = "Instrumented dual-heap sorting lab")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sort unsigned 64-bit keys read from a file or stdin.
    Sort {
        /// Input file; stdin when absent or "-".
        input: Option<PathBuf>,
        /// Output file; stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
        #[arg(long, default_value = "dualheap")]
        algo: Algorithm,
        #[arg(long, value_enum, default_value = "text")]
        format: KeyFormat,
        /// Run the parallel dual-heap sort on this many workers.
        #[arg(long, value_name = "N")]
        parallel: Option<usize>,
    },
    /// Count operations over a grid of algorithms, sizes and distributions.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "heapsort,heapsort_modified,dualheap")]
        algos: Vec<Algorithm>,
        #[arg(long, value_delimiter = ',', default_value = "1024,4096,16384")]
        sizes: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "uniform")]
        dists: Vec<Distribution>,
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
        reps: u64,
        /// Repetition r uses seed `seed0 + r`.
        #[arg(long, default_value_t = 1)]
        seed0: u64,
        /// Workers for dualheap_parallel.
        #[arg(long)]
        threads: Option<usize>,
        /// CSV destination; stdout when absent.
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Render a benchmark CSV as an SVG scatter plot.
    Plot {
        csv: PathBuf,
        #[arg(short, long)]
        out: Option<PathBuf>,
    },
    /// Run the oracle suite: exhaustive permutations plus random inputs.
    Verify {
        #[arg(long, default_value_t = 8)]
        exhaustive_max: usize,
        #[arg(long, default_value_t = 1000)]
        random: u64,
    },
    /// Replay one sort's access trace through a set-associative LRU cache.
    Cachesim {
        #[arg(long, default_value = "dualheap")]
        algo: Algorithm,
        #[arg(long, default_value_t = 1 << 16)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value = "uniform")]
        dist: Distribution,
        /// Line size in bytes.
        #[arg(long, default_value_t = 64)]
        line: u64,
        #[arg(long, default_value_t = 64)]
        sets: u64,
        #[arg(long, default_value_t = 8)]
        ways: usize,
        #[arg(long, default_value_t = 8)]
        element_bytes: u64,
        /// Also write the trace, one "R i" / "W i" line per access.
        #[arg(long, value_name = "PATH")]
        dump_trace: Option<PathBuf>,
    },
}

fn run(cli: Cli) -> error::Result<()> {
    match cli.command {
        Command::Sort {
            input,
            out,
            algo,
            format,
            parallel,
        } => commands::sort(commands::SortArgs {
            input,
            output: out,
            algo,
            format,
            parallel,
        }),
        Command::Bench {
            algos,
            sizes,
            dists,
            reps,
            seed0,
            threads,
            out,
        } => commands::bench(commands::BenchArgs {
            algos,
            sizes,
            dists,
            reps,
            seed0,
            threads: threads.unwrap_or_else(|| ParallelPolicy::default().max_concurrency()),
            out,
        }),
        Command::Plot { csv, out } => commands::plot(&csv, out.as_deref()),
        Command::Verify { exhaustive_max, random } => commands::verify(exhaustive_max, random),
        Command::Cachesim {
            algo,
            n,
            seed,
            dist,
            line,
            sets,
            ways,
            element_bytes,
            dump_trace,
        } => commands::cachesim(commands::CacheArgs {
            algo,
            n,
            seed,
            dist,
            cfg: CacheConfig {
                line_bytes: line,
                num_sets: sets,
                ways,
                element_bytes,
            },
            dump_trace,
        }),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("dualheap: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
