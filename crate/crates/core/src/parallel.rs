//! Fork-join dualheap sort.
//!
//! The two recursive partitions of a region touch disjoint ranges, and so do
//! the small- and large-subheap constructions. Both pairs run under
//! `rayon::join` on split sub-slices. The exchange phase stays sequential.
//! Every task counts into its own context; contexts merge at the join, so
//! the result and the merged counters do not depend on the schedule.

use std::ops::RangeInclusive;

use rayon::ThreadPoolBuilder;
use thiserror::Error;

use crate::heapcore::{HeapView, Slots};
use crate::instrumentation::{CountingContext, Instrument, NoTrace, NullContext};
use crate::sorters::PartitionRegion;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ParallelPolicy {
    max_concurrency: usize,
    sequential_cutoff: usize,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PolicyError {
    #[error("max_concurrency must be at least 1")]
    Concurrency,
    #[error("sequential_cutoff must be at least 4, got {0}")]
    Cutoff(usize),
}

impl ParallelPolicy {
    pub const DEFAULT_CUTOFF: usize = 4096;

    pub fn new(max_concurrency: usize, sequential_cutoff: usize) -> Result<Self, PolicyError> {
        if max_concurrency == 0 {
            return Err(PolicyError::Concurrency);
        }
        if sequential_cutoff < 4 {
            return Err(PolicyError::Cutoff(sequential_cutoff));
        }
        Ok(ParallelPolicy {
            max_concurrency,
            sequential_cutoff,
        })
    }

    pub fn with_concurrency(max_concurrency: usize) -> Result<Self, PolicyError> {
        Self::new(max_concurrency, Self::DEFAULT_CUTOFF)
    }

    pub fn max_concurrency(&self) -> usize {
        self.max_concurrency
    }

    /// Regions shorter than this are partitioned inline.
    pub fn sequential_cutoff(&self) -> usize {
        self.sequential_cutoff
    }
}

impl Default for ParallelPolicy {
    fn default() -> Self {
        let threads = std::thread::available_parallelism().map_or(1, |n| n.get());
        ParallelPolicy {
            max_concurrency: threads,
            sequential_cutoff: Self::DEFAULT_CUTOFF,
        }
    }
}

/// An [`Instrument`] that can be split across tasks.
pub trait TaskContext: Instrument + Send + Sized {
    /// Context for a task that owns the 1-based positions in `region`.
    fn fork(&self, region: RangeInclusive<usize>) -> Self;
    /// Folds a finished child back in.
    fn join(&mut self, child: Self);
}

impl TaskContext for NullContext {
    fn fork(&self, _region: RangeInclusive<usize>) -> Self {
        NullContext
    }

    fn join(&mut self, _child: Self) {}
}

impl TaskContext for CountingContext<NoTrace> {
    fn fork(&self, _region: RangeInclusive<usize>) -> Self {
        self.child()
    }

    fn join(&mut self, child: Self) {
        self.absorb_counters(child.counters());
    }
}

/// Dualheap sort on a pool of at most `policy.max_concurrency()` threads.
///
/// Produces the same array and the same comparison, move, tree-swap and
/// depth totals as [`crate::sorters::dualheap_sort`].
pub fn dualheap_sort_parallel<T, C>(data: &mut [T], ctx: &mut C, policy: &ParallelPolicy)
where
    T: Copy + Ord + Send,
    C: TaskContext,
{
    let n = data.len();
    if n < 2 {
        return;
    }
    let pool = ThreadPoolBuilder::new()
        .num_threads(policy.max_concurrency)
        .build()
        .expect("failed to start sort thread pool");
    let cutoff = policy.sequential_cutoff;
    pool.install(|| {
        Slots::new(&mut *data, &mut *ctx).dualheap_head();
        if n > 3 {
            partition_task(&mut data[2..], 2, ctx, cutoff);
        }
    });
}

/// Sorts the whole of `data`, which starts after `origin` master positions.
fn partition_task<T, C>(data: &mut [T], origin: usize, ctx: &mut C, cutoff: usize)
where
    T: Copy + Ord + Send,
    C: TaskContext,
{
    let n = data.len();
    let region = PartitionRegion::new(1, n);
    if n < cutoff {
        Slots::with_origin(data, origin, ctx).partition_heap(region);
        return;
    }

    ctx.enter();
    let (ns, nl) = (region.small_size(), region.large_size());
    {
        let (left, right) = data.split_at_mut(ns);
        let mut lctx = ctx.fork(origin + 1..=origin + ns);
        let mut rctx = ctx.fork(origin + ns + 1..=origin + n);
        rayon::join(
            || Slots::with_origin(left, origin, &mut lctx).build_heap(&HeapView::max_leftward(ns, ns)),
            || Slots::with_origin(right, origin + ns, &mut rctx).build_heap(&HeapView::min_rightward(1, nl)),
        );
        ctx.join(lctx);
        ctx.join(rctx);
    }
    {
        let (small, large) = (region.small_view(), region.large_view());
        let mut slots = Slots::with_origin(&mut *data, origin, &mut *ctx);
        slots.exchange_phase(&small, &large);
        slots.set_aside(&small, &large);
    }

    // Positions ns-1..=ns+2 are final; the pieces on either side are not.
    let (head, rest) = data.split_at_mut(ns - 2);
    let tail = &mut rest[4..];
    let tail_origin = origin + ns + 2;
    let mut lctx = ctx.fork(origin + 1..=origin + ns - 2);
    let mut rctx = ctx.fork(tail_origin + 1..=origin + n);
    rayon::join(
        || {
            if ns > 3 {
                partition_task(head, origin, &mut lctx, cutoff);
            }
        },
        || {
            if nl > 3 {
                partition_task(tail, tail_origin, &mut rctx, cutoff);
            }
        },
    );
    ctx.join(lctx);
    ctx.join(rctx);
    ctx.leave();
}
