use std::io::Cursor;

use dualheap::instrumentation::{read_trace, write_trace, AccessKind};
use dualheap::{
    cache_simulate, gen_input, Algorithm, CacheConfig, CountingContext, Distribution, InputSpec, TraceEvent,
};

fn traced(algo: Algorithm, input: &[u64]) -> (dualheap::OpCounters, Vec<TraceEvent>, Vec<u64>) {
    let mut v = input.to_vec();
    let mut ctx = CountingContext::with_sink(Vec::new());
    assert!(algo.sort_sequential(&mut v, &mut ctx));
    let (counters, trace) = ctx.into_parts();
    (counters, trace, v)
}

const SEQUENTIAL: [Algorithm; 3] = [Algorithm::Heapsort, Algorithm::HeapsortModified, Algorithm::Dualheap];

#[test]
fn tracing_does_not_change_counts_or_output() {
    for algo in SEQUENTIAL {
        for d in Distribution::ALL {
            let input = gen_input(&InputSpec::new(d, 3001, 9));
            let mut plain = input.clone();
            let mut ctx = CountingContext::new();
            algo.sort_sequential(&mut plain, &mut ctx);
            let (counters, trace, out) = traced(algo, &input);
            assert_eq!(ctx.counters(), counters, "{algo} {d}");
            assert_eq!(plain, out);
            let writes = trace.iter().filter(|e| e.kind == AccessKind::Write).count() as u64;
            assert_eq!(writes, counters.moves, "{algo} {d}: one write per move");
        }
    }
}

#[test]
fn trace_indices_stay_in_bounds() {
    let n = 777;
    let input = gen_input(&InputSpec::new(Distribution::Uniform, n, 2));
    for algo in SEQUENTIAL {
        let (_, trace, _) = traced(algo, &input);
        assert!(trace.iter().all(|e| (1..=n).contains(&e.index)), "{algo}");
    }
}

#[test]
fn dump_round_trips() {
    let input = gen_input(&InputSpec::new(Distribution::Uniform, 500, 4));
    let (_, trace, _) = traced(Algorithm::Dualheap, &input);
    let mut buf = Vec::new();
    write_trace(&trace, &mut buf).unwrap();
    let back = read_trace(Cursor::new(buf)).unwrap().unwrap();
    assert_eq!(back, trace);
}

#[test]
fn more_ways_never_add_misses() {
    // LRU within a set is a stack policy: a bigger set holds a superset.
    let input = gen_input(&InputSpec::new(Distribution::Uniform, 20_000, 6));
    for algo in SEQUENTIAL {
        let (_, trace, _) = traced(algo, &input);
        let mut last = u64::MAX;
        for ways in [1, 2, 4, 8, 16] {
            let cfg = CacheConfig {
                ways,
                num_sets: 16,
                ..CacheConfig::default()
            };
            let stats = cache_simulate(&trace, &cfg).unwrap();
            assert_eq!(stats.accesses, trace.len() as u64);
            assert!(stats.misses <= last, "{algo}: {ways} ways missed {} > {last}", stats.misses);
            last = stats.misses;
        }
    }
}

#[test]
fn resident_data_misses_once_per_line() {
    let input = gen_input(&InputSpec::new(Distribution::Uniform, 4096, 8));
    let cfg = CacheConfig::default();
    assert!(4096 * cfg.element_bytes <= cfg.capacity_bytes());
    for algo in SEQUENTIAL {
        let (_, trace, _) = traced(algo, &input);
        let stats = cache_simulate(&trace, &cfg).unwrap();
        assert_eq!(stats.misses, 4096 * cfg.element_bytes / cfg.line_bytes, "{algo}");
    }
}
