//! Binary-heap primitives shared by every sorter.
//!
//! Positions are 1-based throughout, as are heap node numbers: node `k` has
//! children `2k` and `2k + 1`. The single storage convention is that
//! 1-based position `p` lives at slice index `p - 1`.
//!
//! A [`HeapView`] lays a heap over a contiguous window of the array in one of
//! two orientations. A rightward view stores node `k` at `anchor + k - 1`; a
//! leftward view stores it at `anchor - k + 1`, so the heap grows toward
//! lower positions. The dualheap partition pairs a leftward max-heap with a
//! rightward min-heap whose roots sit side by side.

use std::ops::Range;

use crate::instrumentation::Instrument;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HeapKind {
    /// Parents are not smaller than their children.
    Max,
    /// Parents are not larger than their children.
    Min,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Leftward,
    Rightward,
}

/// An oriented heap over part of an array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct HeapView {
    anchor: usize,
    size: usize,
    kind: HeapKind,
    direction: Direction,
}

impl HeapView {
    /// `anchor` is the 1-based position of node 1.
    ///
    /// Panics if the view would reach below position 1.
    pub fn new(kind: HeapKind, direction: Direction, anchor: usize, size: usize) -> Self {
        assert!(anchor >= 1, "heap anchor is a 1-based position");
        if direction == Direction::Leftward {
            assert!(
                size <= anchor,
                "leftward heap of {size} nodes does not fit below position {anchor}"
            );
        }
        HeapView {
            anchor,
            size,
            kind,
            direction,
        }
    }

    pub fn max_leftward(anchor: usize, size: usize) -> Self {
        Self::new(HeapKind::Max, Direction::Leftward, anchor, size)
    }

    pub fn max_rightward(anchor: usize, size: usize) -> Self {
        Self::new(HeapKind::Max, Direction::Rightward, anchor, size)
    }

    pub fn min_rightward(anchor: usize, size: usize) -> Self {
        Self::new(HeapKind::Min, Direction::Rightward, anchor, size)
    }

    pub fn anchor(&self) -> usize {
        self.anchor
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn kind(&self) -> HeapKind {
        self.kind
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    /// Same anchor and orientation over the first `size` nodes.
    pub fn with_size(self, size: usize) -> Self {
        Self::new(self.kind, self.direction, self.anchor, size)
    }

    /// Slice index of node `k`.
    #[inline]
    pub fn slot(&self, k: usize) -> usize {
        debug_assert!(k >= 1 && k <= self.size, "node {k} outside heap of {}", self.size);
        match self.direction {
            Direction::Rightward => self.anchor + k - 2,
            Direction::Leftward => self.anchor - k,
        }
    }

    /// Slice indices covered by the view.
    pub fn footprint(&self) -> Range<usize> {
        match self.direction {
            Direction::Rightward => self.anchor - 1..self.anchor - 1 + self.size,
            Direction::Leftward => self.anchor - self.size..self.anchor,
        }
    }

    /// Strict superiority under this view's order.
    #[inline]
    fn superior<T: Ord>(&self, a: &T, b: &T) -> bool {
        match self.kind {
            HeapKind::Max => a > b,
            HeapKind::Min => a < b,
        }
    }
}

/// Exclusive access to an array window plus the instrument that observes it.
///
/// All key reads, key writes and key comparisons performed by the sorters go
/// through here. `origin` is the number of master-array positions preceding
/// the window, so traced indices stay master-relative when a task works on a
/// sub-slice.
pub(crate) struct Slots<'a, T, C> {
    data: &'a mut [T],
    origin: usize,
    ctx: &'a mut C,
}

impl<'a, T: Copy + Ord, C: Instrument> Slots<'a, T, C> {
    pub(crate) fn new(data: &'a mut [T], ctx: &'a mut C) -> Self {
        Self::with_origin(data, 0, ctx)
    }

    pub(crate) fn with_origin(data: &'a mut [T], origin: usize, ctx: &'a mut C) -> Self {
        Slots { data, origin, ctx }
    }

    pub(crate) fn len(&self) -> usize {
        self.data.len()
    }

    pub(crate) fn ctx(&mut self) -> &mut C {
        self.ctx
    }

    #[inline]
    pub(crate) fn get(&mut self, i: usize) -> T {
        self.ctx.read(self.origin + i + 1);
        self.data[i]
    }

    #[inline]
    pub(crate) fn put(&mut self, i: usize, v: T) {
        self.ctx.write(self.origin + i + 1);
        self.ctx.moved();
        self.data[i] = v;
    }

    /// Two moves, or none when `a == b`.
    #[inline]
    pub(crate) fn exchange(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        let x = self.get(a);
        let y = self.get(b);
        self.put(a, y);
        self.put(b, x);
    }

    #[inline]
    pub(crate) fn less(&mut self, a: &T, b: &T) -> bool {
        self.ctx.compared();
        a < b
    }

    #[inline]
    pub(crate) fn greater(&mut self, a: &T, b: &T) -> bool {
        self.ctx.compared();
        a > b
    }

    #[inline]
    fn superior(&mut self, view: &HeapView, a: &T, b: &T) -> bool {
        self.ctx.compared();
        view.superior(a, b)
    }

    /// Value of node `k` in `view`.
    #[inline]
    pub(crate) fn node(&mut self, view: &HeapView, k: usize) -> T {
        self.get(view.slot(k))
    }

    /// Restores the heap condition for the subtree rooted at node `k`,
    /// assuming both child subtrees already satisfy it.
    ///
    /// Hole-based: the held value descends past strictly superior children
    /// and is written once at its landing node. A value that does not move
    /// costs no moves.
    pub(crate) fn sift_down(&mut self, view: &HeapView, k: usize) {
        let size = view.size;
        assert!(k >= 1 && k <= size, "sift_down at node {k} of a {size}-node heap");
        if 2 * k > size {
            return;
        }
        let held = self.node(view, k);
        let mut hole = k;
        loop {
            let mut child = 2 * hole;
            if child > size {
                break;
            }
            let mut value = self.node(view, child);
            if child < size {
                let sibling = self.node(view, child + 1);
                if self.superior(view, &sibling, &value) {
                    child += 1;
                    value = sibling;
                }
            }
            if !self.superior(view, &value, &held) {
                break;
            }
            self.put(view.slot(hole), value);
            hole = child;
        }
        if hole != k {
            self.put(view.slot(hole), held);
        }
    }

    pub(crate) fn build_heap(&mut self, view: &HeapView) {
        for i in (1..=view.size / 2).rev() {
            self.sift_down(view, i);
        }
    }
}

fn check_fits(view: &HeapView, len: usize) {
    assert!(
        view.size() == 0 || view.footprint().end <= len,
        "heap view {view:?} exceeds array of length {len}"
    );
}

/// Sifts node `k` of `view` down to restore the heap condition below it.
///
/// Panics if `k` is not a node of the view or the view does not fit `data`.
pub fn sift_down<T: Copy + Ord, C: Instrument>(data: &mut [T], view: HeapView, k: usize, ctx: &mut C) {
    check_fits(&view, data.len());
    Slots::new(data, ctx).sift_down(&view, k);
}

/// Arranges the whole view into a heap, bottom-up.
pub fn build_heap<T: Copy + Ord, C: Instrument>(data: &mut [T], view: HeapView, ctx: &mut C) {
    check_fits(&view, data.len());
    Slots::new(data, ctx).build_heap(&view);
}

/// True when no node is strictly superior to its parent. Touches no counters.
pub fn heap_check<T: Ord>(data: &[T], view: HeapView) -> bool {
    check_fits(&view, data.len());
    (2..=view.size).all(|k| !view.superior(&data[view.slot(k)], &data[view.slot(k / 2)]))
}
