//! Heapsort, heapsort with two placements per pass, and dualheap sort.
//!
//! Dualheap sort orders the array by recursive exact-median partitioning.
//! Each partition step lays a leftward max-heap (the small side) and a
//! rightward min-heap (the large side) over the two halves of a region, roots
//! adjacent, then tree-swaps values across the boundary until every small
//! value is at most every large value. The two roots and their superior
//! children are then in final position, and the remaining two pieces are
//! partitioned in turn.

use std::fmt;
use std::str::FromStr;

use crate::heapcore::{HeapView, Slots};
use crate::instrumentation::{CountingContext, Instrument, OpCounters};
use crate::parallel::{self, ParallelPolicy};

/// A contiguous window of the master array handed to one partition step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PartitionRegion {
    offset: usize,
    n: usize,
}

impl PartitionRegion {
    /// `offset` is the 1-based position of the region's first element.
    pub fn new(offset: usize, n: usize) -> Self {
        assert!(offset >= 1, "region offset is a 1-based position");
        PartitionRegion { offset, n }
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// Half the length, rounded down to an even number.
    pub fn small_size(&self) -> usize {
        (self.n / 2) & !1
    }

    pub fn large_size(&self) -> usize {
        self.n - self.small_size()
    }

    /// Leftward max-heap over region positions `1..=small_size`, root at the top end.
    pub fn small_view(&self) -> HeapView {
        let ns = self.small_size();
        HeapView::max_leftward(self.offset + ns.max(1) - 1, ns)
    }

    /// Rightward min-heap over the rest of the region, root just after the small root.
    pub fn large_view(&self) -> HeapView {
        HeapView::min_rightward(self.offset + self.small_size(), self.large_size())
    }

    fn check_fits(&self, len: usize) {
        assert!(
            self.offset - 1 + self.n <= len,
            "region at {} of length {} exceeds array of length {len}",
            self.offset,
            self.n
        );
    }
}

/// Counters and size of one sort.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SortOutcome {
    pub counters: OpCounters,
    pub n: usize,
}

impl<'a, T: Copy + Ord, C: Instrument> Slots<'a, T, C> {
    /// Puts the smaller of two slots first.
    fn order_pair(&mut self, lo: usize, hi: usize) {
        let x = self.get(lo);
        let y = self.get(hi);
        if self.greater(&x, &y) {
            self.put(lo, y);
            self.put(hi, x);
        }
    }

    pub(crate) fn heapsort(&mut self) {
        let n = self.len();
        if n < 2 {
            return;
        }
        let heap = HeapView::max_rightward(1, n);
        self.build_heap(&heap);
        for m in (2..=n).rev() {
            self.exchange(0, m - 1);
            self.sift_down(&heap.with_size(m - 1), 1);
        }
    }

    /// Places the root and then the larger root child on each pass, so every
    /// other sift starts one level down.
    pub(crate) fn heapsort_modified(&mut self) {
        let n = self.len();
        if n < 2 {
            return;
        }
        let heap = HeapView::max_rightward(1, n);
        self.build_heap(&heap);
        let mut m = n;
        while m > 3 {
            self.exchange(0, m - 1);
            let left = self.get(1);
            let right = self.get(2);
            let i = if self.greater(&left, &right) { 2 } else { 3 };
            self.exchange(i - 1, m - 2);
            let live = heap.with_size(m - 2);
            if i <= live.size() {
                self.sift_down(&live, i);
            }
            self.sift_down(&live, 1);
            m -= 2;
        }
        // The child selection reads both children before anything is
        // overwritten.
        if m == 3 {
            let top = self.get(0);
            let left = self.get(1);
            let right = self.get(2);
            if self.greater(&left, &right) {
                self.put(2, top);
                self.put(0, right);
            } else {
                self.put(2, top);
                self.put(1, right);
                self.put(0, left);
            }
        } else if m == 2 {
            self.exchange(0, 1);
        }
    }

    /// Whole-array min-heap, then the second-smallest goes to position 2.
    pub(crate) fn dualheap_head(&mut self) {
        let n = self.len();
        if n < 2 {
            return;
        }
        self.build_heap(&HeapView::min_rightward(1, n));
        if n >= 3 {
            self.order_pair(1, 2);
        }
    }

    pub(crate) fn dualheap_sort(&mut self) {
        self.dualheap_head();
        let n = self.len();
        if n > 3 {
            self.partition_heap(PartitionRegion::new(3, n - 2));
        }
    }

    /// Regions of two or three elements: min-heap, then order positions 2 and 3.
    fn order_small(&mut self, region: PartitionRegion) {
        let n = region.len();
        self.build_heap(&HeapView::min_rightward(region.offset(), n));
        if n == 3 {
            self.order_pair(region.offset(), region.offset() + 1);
        }
    }

    pub(crate) fn build_subheaps(&mut self, region: PartitionRegion) -> (HeapView, HeapView) {
        let small = region.small_view();
        let large = region.large_view();
        self.build_heap(&small);
        self.build_heap(&large);
        (small, large)
    }

    /// Moves the second-largest small value next to the small root and the
    /// second-smallest large value next to the large root.
    pub(crate) fn set_aside(&mut self, small: &HeapView, large: &HeapView) {
        if small.size() >= 3 {
            let a = self.node(small, 2);
            let b = self.node(small, 3);
            if self.less(&a, &b) {
                self.put(small.slot(2), b);
                self.put(small.slot(3), a);
            }
        }
        if large.size() >= 3 {
            let a = self.node(large, 2);
            let b = self.node(large, 3);
            if self.greater(&a, &b) {
                self.put(large.slot(2), b);
                self.put(large.slot(3), a);
            }
        }
    }

    /// Tree-swaps at the roots until the small root no longer exceeds the
    /// large root. Returns the number of root-level swaps.
    pub(crate) fn exchange_phase(&mut self, small: &HeapView, large: &HeapView) -> usize {
        if small.size() == 0 || large.size() == 0 {
            return 0;
        }
        let mut swaps = 0;
        loop {
            let s = self.node(small, 1);
            let l = self.node(large, 1);
            if !self.greater(&s, &l) {
                return swaps;
            }
            self.tree_swap(small, large, 1, 1);
            swaps += 1;
        }
    }

    /// Exchanges small node `ks` with large node `kl`, first exchanging the
    /// superior child pair (and then the sibling pair) when they are out of
    /// order across the boundary.
    pub(crate) fn tree_swap(&mut self, small: &HeapView, large: &HeapView, ks: usize, kl: usize) {
        let (ns, nl) = (small.size(), large.size());
        assert!(
            ks >= 1 && ks <= ns && kl >= 1 && kl <= nl,
            "tree_swap on nodes ({ks}, {kl}) of heaps sized ({ns}, {nl})"
        );
        self.ctx().enter();
        self.ctx().tree_swapped();

        let mut js = 2 * ks;
        let mut jl = 2 * kl;
        if js <= ns && jl <= nl {
            if js < ns {
                let sibling = self.node(small, js + 1);
                let child = self.node(small, js);
                if self.greater(&sibling, &child) {
                    js += 1;
                }
            }
            if jl < nl {
                let sibling = self.node(large, jl + 1);
                let child = self.node(large, jl);
                if self.less(&sibling, &child) {
                    jl += 1;
                }
            }
            let s = self.node(small, js);
            let l = self.node(large, jl);
            if self.greater(&s, &l) {
                self.tree_swap(small, large, js, jl);
                let (os, ol) = (js ^ 1, jl ^ 1);
                if os <= ns && ol <= nl {
                    let s = self.node(small, os);
                    let l = self.node(large, ol);
                    if self.greater(&s, &l) {
                        self.tree_swap(small, large, os, ol);
                    }
                }
            }
        }

        let s = self.node(small, ks);
        let l = self.node(large, kl);
        self.put(small.slot(ks), l);
        self.put(large.slot(kl), s);
        self.sift_down(small, ks);
        self.sift_down(large, kl);
        self.ctx().leave();
    }

    /// Builds both subheaps and runs the exchange phase. Returns the small size.
    pub(crate) fn dualheap_partition(&mut self, region: PartitionRegion) -> usize {
        assert!(region.len() >= 2, "partition of a region of length {}", region.len());
        let ns = region.small_size();
        if ns == 0 {
            return 0;
        }
        let (small, large) = self.build_subheaps(region);
        self.exchange_phase(&small, &large);
        ns
    }

    /// One partition step without recursion. Afterwards the region is
    /// split around the small-size boundary, and the two positions on each
    /// side of it hold their final values.
    pub(crate) fn partition_step(&mut self, region: PartitionRegion) -> usize {
        assert!(region.len() >= 2, "partition of a region of length {}", region.len());
        if region.len() < 4 {
            self.order_small(region);
            return 0;
        }
        let (small, large) = self.build_subheaps(region);
        self.exchange_phase(&small, &large);
        self.set_aside(&small, &large);
        small.size()
    }

    /// Sorts `region` ascending by recursive partitioning.
    pub(crate) fn partition_heap(&mut self, region: PartitionRegion) {
        self.ctx().enter();
        let ns = self.partition_step(region);
        if ns > 0 {
            let nl = region.large_size();
            if ns > 3 {
                self.partition_heap(PartitionRegion::new(region.offset(), ns - 2));
            }
            if nl > 3 {
                self.partition_heap(PartitionRegion::new(region.offset() + ns + 2, nl - 2));
            }
        }
        self.ctx().leave();
    }
}

/// Classic heapsort: max-heap, then repeatedly move the root behind the heap.
pub fn heapsort<T: Copy + Ord, C: Instrument>(data: &mut [T], ctx: &mut C) {
    Slots::new(data, ctx).heapsort();
}

/// Heapsort placing two elements per pass.
pub fn heapsort_modified<T: Copy + Ord, C: Instrument>(data: &mut [T], ctx: &mut C) {
    Slots::new(data, ctx).heapsort_modified();
}

/// Dualheap sort. Ascending; performs no moves on already sorted input.
pub fn dualheap_sort<T: Copy + Ord, C: Instrument>(data: &mut [T], ctx: &mut C) {
    Slots::new(data, ctx).dualheap_sort();
}

/// Sorts `region` of `data` ascending by recursive partitioning.
///
/// Panics if the region is shorter than 2 or does not fit.
pub fn partition_heap<T: Copy + Ord, C: Instrument>(data: &mut [T], region: PartitionRegion, ctx: &mut C) {
    region.check_fits(data.len());
    assert!(region.len() >= 2, "partition of a region of length {}", region.len());
    Slots::new(data, ctx).partition_heap(region);
}

/// A single partition step including the set-asides, without recursion.
/// Returns the small size (0 for regions of length 2 or 3, which come back sorted).
pub fn partition_step<T: Copy + Ord, C: Instrument>(data: &mut [T], region: PartitionRegion, ctx: &mut C) -> usize {
    region.check_fits(data.len());
    Slots::new(data, ctx).partition_step(region)
}

/// Exact-position selection: afterwards the first `small_size` positions of
/// the region hold its `small_size` smallest values. Returns `small_size`.
pub fn dualheap_partition<T: Copy + Ord, C: Instrument>(
    data: &mut [T],
    region: PartitionRegion,
    ctx: &mut C,
) -> usize {
    region.check_fits(data.len());
    Slots::new(data, ctx).dualheap_partition(region)
}

/// Exchanges between two valid opposing heaps until max(small) <= min(large).
/// Returns the number of root-level tree swaps.
pub fn exchange_phase<T: Copy + Ord, C: Instrument>(
    data: &mut [T],
    small: HeapView,
    large: HeapView,
    ctx: &mut C,
) -> usize {
    check_pair(&small, &large, data.len());
    Slots::new(data, ctx).exchange_phase(&small, &large)
}

pub fn tree_swap<T: Copy + Ord, C: Instrument>(
    data: &mut [T],
    small: HeapView,
    large: HeapView,
    ks: usize,
    kl: usize,
    ctx: &mut C,
) {
    check_pair(&small, &large, data.len());
    Slots::new(data, ctx).tree_swap(&small, &large, ks, kl);
}

fn check_pair(small: &HeapView, large: &HeapView, len: usize) {
    let (a, b) = (small.footprint(), large.footprint());
    assert!(a.end <= len && b.end <= len, "heap views exceed array of length {len}");
    assert!(
        a.is_empty() || b.is_empty() || a.end <= b.start || b.end <= a.start,
        "heap views {small:?} and {large:?} overlap"
    );
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Heapsort,
    HeapsortModified,
    Dualheap,
    DualheapParallel,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Heapsort,
        Algorithm::HeapsortModified,
        Algorithm::Dualheap,
        Algorithm::DualheapParallel,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::Heapsort => "heapsort",
            Algorithm::HeapsortModified => "heapsort_modified",
            Algorithm::Dualheap => "dualheap",
            Algorithm::DualheapParallel => "dualheap_parallel",
        }
    }

    /// Sorts with any context that can be forked. `policy` only matters for
    /// the parallel variant.
    pub fn sort<T, C>(&self, data: &mut [T], ctx: &mut C, policy: &ParallelPolicy)
    where
        T: Copy + Ord + Send,
        C: parallel::TaskContext,
    {
        match self {
            Algorithm::Heapsort => heapsort(data, ctx),
            Algorithm::HeapsortModified => heapsort_modified(data, ctx),
            Algorithm::Dualheap => dualheap_sort(data, ctx),
            Algorithm::DualheapParallel => parallel::dualheap_sort_parallel(data, ctx, policy),
        }
    }

    /// Sequential algorithms only; used where the context cannot be forked
    /// (tracing). Returns false for the parallel variant.
    pub fn sort_sequential<T: Copy + Ord, C: Instrument>(&self, data: &mut [T], ctx: &mut C) -> bool {
        match self {
            Algorithm::Heapsort => heapsort(data, ctx),
            Algorithm::HeapsortModified => heapsort_modified(data, ctx),
            Algorithm::Dualheap => dualheap_sort(data, ctx),
            Algorithm::DualheapParallel => return false,
        }
        true
    }

    pub fn sort_counted<T: Copy + Ord + Send>(&self, data: &mut [T], policy: &ParallelPolicy) -> SortOutcome {
        let mut ctx = CountingContext::new();
        self.sort(data, &mut ctx, policy);
        SortOutcome {
            counters: ctx.counters(),
            n: data.len(),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("unknown algorithm {0:?} (expected heapsort, heapsort_modified, dualheap or dualheap_parallel)")]
pub struct UnknownAlgorithm(pub String);

impl FromStr for Algorithm {
    type Err = UnknownAlgorithm;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| UnknownAlgorithm(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::heapcore::{build_heap, heap_check, sift_down};
    use crate::instrumentation::{AccessKind, NullContext};
    use itertools::Itertools;

    fn sorted(v: &[u64]) -> Vec<u64> {
        let mut s = v.to_vec();
        s.sort_unstable();
        s
    }

    fn run(f: fn(&mut [u64], &mut CountingContext), v: &[u64]) -> (Vec<u64>, OpCounters) {
        let mut a = v.to_vec();
        let mut ctx = CountingContext::new();
        f(&mut a, &mut ctx);
        (a, ctx.counters())
    }

    #[test]
    fn region_split_sizes() {
        let sizes = |n| {
            let r = PartitionRegion::new(1, n);
            (r.small_size(), r.large_size())
        };
        assert_eq!(sizes(10), (4, 6));
        assert_eq!(sizes(7), (2, 5));
        assert_eq!(sizes(16), (8, 8));
        assert_eq!(sizes(3), (0, 3));
        for n in 4..200 {
            let (ns, nl) = sizes(n);
            assert_eq!(ns % 2, 0);
            assert!(ns <= nl && nl <= ns + 3, "n={n}");
        }
    }

    #[test]
    fn region_views_meet_at_boundary() {
        let r = PartitionRegion::new(5, 10);
        assert_eq!(r.small_view().footprint(), 4..8);
        assert_eq!(r.large_view().footprint(), 8..14);
        assert_eq!(r.small_view().slot(1) + 1, r.large_view().slot(1));
    }

    #[test]
    fn heapsort_small_cases() {
        assert_eq!(run(heapsort, &[3, 1, 2]).0, vec![1, 2, 3]);
        assert_eq!(run(heapsort, &[]).1, OpCounters::ZERO);
        assert_eq!(run(heapsort, &[7]), (vec![7], OpCounters::ZERO));
        let (out, c) = run(heapsort, &[2, 1]);
        assert_eq!(out, vec![1, 2]);
        assert_eq!((c.comparisons, c.moves), (1, 2));
    }

    #[test]
    fn heapsort_two_trace_ends_with_exchange() {
        let mut a = [2u64, 1];
        let mut ctx = CountingContext::with_sink(Vec::new());
        heapsort(&mut a, &mut ctx);
        let t = ctx.sink();
        let tail: Vec<_> = t[t.len() - 2..].iter().map(|e| e.kind).collect();
        assert_eq!(tail, vec![AccessKind::Write, AccessKind::Write]);
    }

    #[test]
    fn modified_heapsort_small_cases() {
        assert_eq!(run(heapsort_modified, &[2, 1]).0, vec![1, 2]);
        assert_eq!(run(heapsort_modified, &[3, 1, 2]).0, vec![1, 2, 3]);
        assert_eq!(run(heapsort_modified, &[1]).1, OpCounters::ZERO);
    }

    #[test]
    fn modified_heapsort_exhaustive_seven() {
        for p in (1..=7u64).permutations(7) {
            assert_eq!(run(heapsort_modified, &p).0, (1..=7).collect::<Vec<_>>(), "{p:?}");
        }
    }

    #[test]
    fn modified_heapsort_saves_work_on_sorted() {
        let v: Vec<u64> = (1..=16).collect();
        let (out, h) = run(heapsort, &v);
        let (out2, m) = run(heapsort_modified, &v);
        assert_eq!(out, v);
        assert_eq!(out2, v);
        assert!(h.operations() > m.operations(), "{h:?} vs {m:?}");
    }

    // The tail of the modified loop exactly as printed: positions are
    // overwritten before they are read.
    fn heapsort_modified_as_printed(a: &mut [u64]) {
        let n = a.len();
        if n < 2 {
            return;
        }
        let heap = HeapView::max_rightward(1, n);
        build_heap(a, heap, &mut NullContext);
        let mut m = n;
        while m > 3 {
            a.swap(0, m - 1);
            let i = if a[1] > a[2] { 2 } else { 3 };
            a.swap(i - 1, m - 2);
            let live = heap.with_size(m - 2);
            if i <= m - 2 {
                sift_down(a, live, i, &mut NullContext);
            }
            sift_down(a, live, 1, &mut NullContext);
            m -= 2;
        }
        if m == 3 {
            a[2] = a[0];
            let i = if a[1] > a[2] { 2 } else { 3 };
            a[1] = a[i - 1];
            a[0] = a[(i ^ 1) - 1];
        } else {
            a[m - 1] = a[0];
            a[m - 2] = a[1];
        }
    }

    #[test]
    fn printed_tail_corrupts_data() {
        let broken = (2..=5u64).find_map(|n| {
            (1..=n).permutations(n as usize).find(|p| {
                let mut a = p.clone();
                heapsort_modified_as_printed(&mut a);
                a != sorted(p)
            })
        });
        assert!(broken.is_some());
        let mut two = [2u64, 1];
        heapsort_modified_as_printed(&mut two);
        assert_eq!(two, [2, 2]);
    }

    #[test]
    fn dualheap_example() {
        assert_eq!(
            run(dualheap_sort, &[5, 2, 8, 1, 9, 3, 7, 4]).0,
            vec![1, 2, 3, 4, 5, 7, 8, 9]
        );
        assert_eq!(run(dualheap_sort, &[2, 1]).0, vec![1, 2]);
        assert_eq!(run(dualheap_sort, &[]).1, OpCounters::ZERO);
    }

    #[test]
    fn dualheap_sorted_input_moves_nothing() {
        for n in [256usize, 1000, 1024, 4096] {
            let v: Vec<u64> = (0..n as u64).collect();
            let (out, c) = run(dualheap_sort, &v);
            assert_eq!(out, v);
            assert_eq!(c.moves, 0, "n={n}");
            assert_eq!(c.tree_swaps, 0);
        }
    }

    // Straight-line model of the three-element path: DownHeapL at node 1 then
    // the position 2/3 set-aside, with the move convention applied.
    fn three_element_truth(v: [u64; 3]) -> ([u64; 3], u64, u64) {
        let mut a = v;
        let mut moves = 0;
        let j = if a[2] < a[1] { 2 } else { 1 };
        if a[j] < a[0] {
            a.swap(0, j);
            moves += 2;
        }
        if a[1] > a[2] {
            a.swap(1, 2);
            moves += 2;
        }
        (a, 3, moves)
    }

    #[test]
    fn dualheap_three_truth_table() {
        for p in (1..=3u64).permutations(3) {
            let (out, c) = run(dualheap_sort, &p);
            let (want, cmp, mv) = three_element_truth([p[0], p[1], p[2]]);
            assert_eq!(out, want.to_vec());
            assert_eq!((c.comparisons, c.moves), (cmp, mv), "{p:?}");
        }
    }

    #[test]
    fn partition_heap_small_regions() {
        let mut a = [2u64, 1];
        partition_heap(&mut a, PartitionRegion::new(1, 2), &mut NullContext);
        assert_eq!(a, [1, 2]);
        let mut b = [3u64, 1, 2];
        partition_heap(&mut b, PartitionRegion::new(1, 3), &mut NullContext);
        assert_eq!(b, [1, 2, 3]);
    }

    #[test]
    #[should_panic(expected = "region of length 1")]
    fn partition_heap_rejects_single() {
        partition_heap(&mut [1u64], PartitionRegion::new(1, 1), &mut NullContext);
    }

    #[test]
    fn partition_step_sets_aside_middle_order_statistics() {
        let mut a = [5u64, 2, 8, 1, 9, 3, 7, 4];
        let ns = partition_step(&mut a, PartitionRegion::new(1, 8), &mut NullContext);
        assert_eq!(ns, 4);
        assert_eq!(&a[2..6], &[3, 4, 5, 7]);
        let mut b = [5u64, 2, 8, 1, 9, 3, 7, 4];
        partition_heap(&mut b, PartitionRegion::new(1, 8), &mut NullContext);
        assert_eq!(b, [1, 2, 3, 4, 5, 7, 8, 9]);
    }

    #[test]
    fn partition_inside_larger_array() {
        let mut a = [0u64, 0, 6, 5, 4, 3, 2, 1, 99];
        partition_heap(&mut a, PartitionRegion::new(3, 6), &mut NullContext);
        assert_eq!(a, [0, 0, 1, 2, 3, 4, 5, 6, 99]);
    }

    #[test]
    fn dualheap_partition_splits_exactly() {
        let mut a = [9u64, 1, 8, 2, 7, 3];
        let ns = dualheap_partition(&mut a, PartitionRegion::new(1, 6), &mut NullContext);
        assert_eq!(ns, 2);
        assert_eq!(sorted(&a[..2]), vec![1, 2]);

        let mut b = [1u64, 2, 3, 4, 5, 6];
        let mut ctx = CountingContext::new();
        dualheap_partition(&mut b, PartitionRegion::new(1, 6), &mut ctx);
        assert_eq!(ctx.counters().tree_swaps, 0);
    }

    #[test]
    fn exchange_phase_no_swap_when_ordered() {
        // small {1,3} as leftward max-heap: node1 = 3 at index 1, node2 = 1 at index 0.
        let mut a = [1u64, 3, 5, 6];
        let small = HeapView::max_leftward(2, 2);
        let large = HeapView::min_rightward(3, 2);
        let before = a;
        assert_eq!(exchange_phase(&mut a, small, large, &mut NullContext), 0);
        assert_eq!(a, before);
    }

    #[test]
    fn exchange_phase_empty_view() {
        let mut a = [3u64, 1];
        let swaps = exchange_phase(
            &mut a,
            HeapView::max_leftward(1, 0),
            HeapView::min_rightward(1, 2),
            &mut NullContext,
        );
        assert_eq!((swaps, a), (0, [3, 1]));
    }

    #[test]
    fn exchange_phase_separates_single_value() {
        let mut a = [4u64, 1, 2, 3];
        let small = HeapView::max_leftward(1, 1);
        let large = HeapView::min_rightward(2, 3);
        let swaps = exchange_phase(&mut a, small, large, &mut NullContext);
        assert_eq!(swaps, 1);
        assert_eq!(a[0], 1);
        assert!(heap_check(&a, large));
    }

    #[test]
    fn tree_swap_roots_without_recursion() {
        // small: node1 = 9, node2 = 2; large: node1 = 1, node2 = 8
        let mut a = [2u64, 9, 1, 8];
        let small = HeapView::max_leftward(2, 2);
        let large = HeapView::min_rightward(3, 2);
        let mut ctx = CountingContext::new();
        tree_swap(&mut a, small, large, 1, 1, &mut ctx);
        assert_eq!(ctx.counters().tree_swaps, 1);
        assert_eq!(sorted(&a[..2]), vec![1, 2]);
        assert_eq!(sorted(&a[2..]), vec![8, 9]);
        assert!(heap_check(&a, small) && heap_check(&a, large));
    }

    #[test]
    fn tree_swap_at_leaves() {
        let mut a = [5u64, 1];
        let small = HeapView::max_leftward(1, 1);
        let large = HeapView::min_rightward(2, 1);
        let mut ctx = CountingContext::new();
        tree_swap(&mut a, small, large, 1, 1, &mut ctx);
        assert_eq!(a, [1, 5]);
        assert_eq!((ctx.counters().moves, ctx.counters().comparisons), (2, 0));
    }

    #[test]
    fn sibling_recursion_needs_both_siblings() {
        // nS = 2 has no node 3, so at most two activations can ever nest.
        for p in (1..=5u64).permutations(5) {
            let mut a = p.clone();
            let small = HeapView::max_leftward(2, 2);
            let large = HeapView::min_rightward(3, 3);
            build_heap(&mut a, small, &mut NullContext);
            build_heap(&mut a, large, &mut NullContext);
            let mut ctx = CountingContext::new();
            let top = exchange_phase(&mut a, small, large, &mut ctx);
            let c = ctx.counters();
            assert!(c.tree_swaps <= 2 * top as u64, "{p:?}: {c:?}");
            assert!(c.max_depth <= 2);
            assert_eq!(sorted(&a[..2]), sorted(&p)[..2].to_vec());
        }
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>(), Ok(a));
        }
        assert!("quicksort".parse::<Algorithm>().is_err());
    }

    #[test]
    fn sequential_dispatch_refuses_parallel() {
        let mut a = [2u64, 1];
        assert!(!Algorithm::DualheapParallel.sort_sequential(&mut a, &mut NullContext));
        assert!(Algorithm::Dualheap.sort_sequential(&mut a, &mut NullContext));
        assert_eq!(a, [1, 2]);
    }
}
