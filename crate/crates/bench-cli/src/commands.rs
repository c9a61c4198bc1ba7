use std::collections::BTreeMap;
use std::fs;
use std::io::{self, BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use dualheap::instrumentation::TraceEvent;
use dualheap::oracle::suite::run_verification;
use dualheap::{
    gen_input, Algorithm, CacheConfig, CacheSim, CountingContext, Distribution, InputSpec, NullContext,
    ParallelPolicy, TraceSink,
};

use crate::error::{CliError, Result};
use crate::keys;
use crate::record::{parse_csv, write_csv, BenchmarkRecord};
use crate::svg;

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum KeyFormat {
    Text,
    Binary,
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        Some(p) if p != Path::new("-") => Ok(fs::read(p)?),
        _ => {
            let mut buf = Vec::new();
            io::stdin().lock().read_to_end(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) if p != Path::new("-") => Ok(fs::write(p, bytes)?),
        _ => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            Ok(out.flush()?)
        }
    }
}

fn policy(threads: usize) -> Result<ParallelPolicy> {
    ParallelPolicy::with_concurrency(threads).map_err(|e| CliError::Usage(e.to_string()))
}

pub struct SortArgs {
    pub input: Option<PathBuf>,
    pub output: Option<PathBuf>,
    pub algo: Algorithm,
    pub format: KeyFormat,
    pub parallel: Option<usize>,
}

pub fn sort(args: SortArgs) -> Result<()> {
    let raw = read_input(args.input.as_deref())?;
    let mut keys = match args.format {
        KeyFormat::Text => keys::parse_text(&raw)?,
        KeyFormat::Binary => keys::parse_binary(&raw)?,
    };
    let (algo, threads) = match args.parallel {
        Some(t) => match args.algo {
            Algorithm::Dualheap | Algorithm::DualheapParallel => (Algorithm::DualheapParallel, t),
            other => {
                return Err(CliError::Usage(format!("--parallel applies to dualheap only, not {other}")));
            }
        },
        None => (args.algo, ParallelPolicy::default().max_concurrency()),
    };
    algo.sort(&mut keys, &mut NullContext, &policy(threads)?);
    let bytes = match args.format {
        KeyFormat::Text => keys::write_text(&keys),
        KeyFormat::Binary => keys::write_binary(&keys),
    };
    write_output(args.output.as_deref(), &bytes)
}

pub struct BenchArgs {
    pub algos: Vec<Algorithm>,
    pub sizes: Vec<usize>,
    pub dists: Vec<Distribution>,
    pub reps: u64,
    pub seed0: u64,
    pub threads: usize,
    pub out: Option<PathBuf>,
}

/// Seeds run from `seed0` to `seed0 + reps - 1`.
pub fn run_bench(args: &BenchArgs) -> Result<Vec<BenchmarkRecord>> {
    let policy = policy(args.threads)?;
    let mut records = Vec::new();
    for &algorithm in &args.algos {
        for &n in &args.sizes {
            for &distribution in &args.dists {
                for rep in 0..args.reps {
                    let seed = args.seed0.wrapping_add(rep);
                    let input = gen_input(&InputSpec::new(distribution, n, seed));

                    let mut counted = input.clone();
                    let outcome = algorithm.sort_counted(&mut counted, &policy);

                    let mut timed = input;
                    let start = Instant::now();
                    algorithm.sort(&mut timed, &mut NullContext, &policy);
                    let wall_ns = start.elapsed().as_nanos().min(u128::from(u64::MAX)) as u64;
                    if timed != counted {
                        return Err(CliError::Failed(format!(
                            "{algorithm} n={n} {distribution} seed={seed}: timed and counted runs disagree"
                        )));
                    }

                    let c = outcome.counters;
                    records.push(BenchmarkRecord {
                        algorithm,
                        n,
                        seed,
                        distribution,
                        comparisons: c.comparisons,
                        moves: c.moves,
                        tree_swaps: c.tree_swaps,
                        max_depth: c.max_depth,
                        wall_ns,
                    });
                }
            }
        }
    }
    Ok(records)
}

/// Mean comparisons + moves per (algorithm, n, distribution), with the ratio
/// to heapsort where heapsort ran on the same inputs.
pub fn summarize(records: &[BenchmarkRecord]) -> String {
    let mut groups: BTreeMap<(usize, String, usize), (Algorithm, u64, u64)> = BTreeMap::new();
    for r in records {
        let pos = Algorithm::ALL.iter().position(|a| *a == r.algorithm).unwrap_or(0);
        let e = groups
            .entry((r.n, r.distribution.to_string(), pos))
            .or_insert((r.algorithm, 0, 0));
        e.1 += r.operations();
        e.2 += 1;
    }
    let mut out = String::from("algorithm,n,distribution,runs,mean_ops,ratio_to_heapsort\n");
    for ((n, dist, _), (algo, total, runs)) in &groups {
        let mean = *total as f64 / *runs as f64;
        let base = groups
            .get(&(*n, dist.clone(), 0))
            .map(|(_, t, r)| *t as f64 / *r as f64);
        let ratio = base.map_or_else(|| "-".to_string(), |b| format!("{:.4}", mean / b));
        out.push_str(&format!("{algo},{n},{dist},{runs},{mean:.1},{ratio}\n"));
    }
    out
}

pub fn bench(args: BenchArgs) -> Result<()> {
    let records = run_bench(&args)?;
    write_output(args.out.as_deref(), write_csv(&records).as_bytes())?;
    eprint!("{}", summarize(&records));
    Ok(())
}

pub fn plot(csv: &Path, out: Option<&Path>) -> Result<()> {
    let text = fs::read_to_string(csv)?;
    let records = parse_csv(&text)?;
    write_output(out, svg::render(&records).as_bytes())
}

pub fn verify(exhaustive_max: usize, random: u64) -> Result<()> {
    let report = run_verification(exhaustive_max, random);
    print!("{report}");
    if report.passed() {
        Ok(())
    } else {
        let failed = report.checks.iter().filter(|c| !c.passed()).count();
        Err(CliError::Failed(format!("{failed} checks failed")))
    }
}

/// Feeds the cache model and, optionally, a trace dump.
struct Tee<W> {
    sim: CacheSim,
    dump: Option<W>,
    error: Option<io::Error>,
}

impl<W: Write> TraceSink for Tee<W> {
    fn record(&mut self, event: TraceEvent) {
        self.sim.access(event.index);
        if let (Some(w), None) = (self.dump.as_mut(), self.error.as_ref()) {
            if let Err(e) = writeln!(w, "{event}") {
                self.error = Some(e);
            }
        }
    }
}

pub struct CacheArgs {
    pub algo: Algorithm,
    pub n: usize,
    pub seed: u64,
    pub dist: Distribution,
    pub cfg: CacheConfig,
    pub dump_trace: Option<PathBuf>,
}

pub fn cachesim_report(args: &CacheArgs) -> Result<String> {
    let sim = CacheSim::new(args.cfg).map_err(|e| CliError::Usage(e.to_string()))?;
    if args.algo == Algorithm::DualheapParallel {
        return Err(CliError::Usage(
            "traces are recorded from sequential runs; use dualheap instead of dualheap_parallel".to_string(),
        ));
    }
    let dump = match &args.dump_trace {
        Some(p) => Some(BufWriter::new(fs::File::create(p)?)),
        None => None,
    };
    let mut ctx = CountingContext::with_sink(Tee {
        sim,
        dump,
        error: None,
    });
    let mut keys = gen_input(&InputSpec::new(args.dist, args.n, args.seed));
    args.algo.sort_sequential(&mut keys, &mut ctx);
    let (counters, tee) = ctx.into_parts();
    if let Some(e) = tee.error {
        return Err(e.into());
    }
    if let Some(mut w) = tee.dump {
        w.flush()?;
    }
    let stats = tee.sim.stats();
    let cfg = args.cfg;
    Ok(format!(
        "algorithm={} n={} seed={} distribution={}\n\
         line_bytes={} num_sets={} ways={} element_bytes={} capacity_bytes={}\n\
         comparisons={} moves={}\n\
         accesses={}\nmisses={}\nmiss_rate={:.6}\n",
        args.algo,
        args.n,
        args.seed,
        args.dist,
        cfg.line_bytes,
        cfg.num_sets,
        cfg.ways,
        cfg.element_bytes,
        cfg.capacity_bytes(),
        counters.comparisons,
        counters.moves,
        stats.accesses,
        stats.misses,
        stats.miss_rate()
    ))
}

pub fn cachesim(args: CacheArgs) -> Result<()> {
    let report = cachesim_report(&args)?;
    print!("{report}");
    Ok(())
}
