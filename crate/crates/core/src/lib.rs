//! An instrumented sorting lab: heapsort, heapsort with two placements per
//! pass, and dualheap sort (sequential and fork-join), all counting their
//! comparisons and moves through a pluggable [`Instrument`], plus a
//! set-associative cache model fed by logical access traces.
//!
//! ```
//! use dualheap::{dualheap_sort, CountingContext};
//!
//! let mut keys = vec![5u64, 2, 8, 1, 9, 3, 7, 4];
//! let mut ctx = CountingContext::new();
//! dualheap_sort(&mut keys, &mut ctx);
//! assert_eq!(keys, [1, 2, 3, 4, 5, 7, 8, 9]);
//! assert!(ctx.counters().comparisons > 0);
//! ```

pub mod heapcore;
pub mod instrumentation;
pub mod oracle;
pub mod parallel;
pub mod sorters;

pub use heapcore::{build_heap, heap_check, sift_down, Direction, HeapKind, HeapView};
pub use instrumentation::{
    cache_simulate, CacheConfig, CacheSim, CacheStats, CountingContext, Instrument, NoTrace, NullContext,
    OpCounters, TraceEvent, TraceSink,
};
pub use oracle::{gen_input, Distribution, InputSpec};
pub use parallel::{dualheap_sort_parallel, ParallelPolicy, TaskContext};
pub use sorters::{
    dualheap_partition, dualheap_sort, exchange_phase, heapsort, heapsort_modified, partition_heap,
    partition_step, tree_swap, Algorithm, PartitionRegion, SortOutcome,
};
