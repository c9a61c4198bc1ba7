//! Operation counters, logical access tracing and a set-associative LRU
//! cache model.
//!
//! Every sorter in this crate routes its key comparisons and slot writes
//! through an [`Instrument`]. [`NullContext`] turns all hooks into no-ops so
//! the counting cost disappears from wall-time runs; [`CountingContext`]
//! tallies [`OpCounters`] and optionally streams [`TraceEvent`]s into a
//! [`TraceSink`] (a `Vec`, a [`CacheSim`], or [`NoTrace`]).

use std::fmt;
use std::io::{self, BufRead, Write};
use std::str::FromStr;

use thiserror::Error;

/// Tallies for one instrumented run.
///
/// `max_depth` is the deepest nesting of partition and tree-swap frames
/// observed; the other fields are plain event counts.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct OpCounters {
    pub comparisons: u64,
    pub moves: u64,
    pub tree_swaps: u64,
    pub max_depth: u64,
}

impl OpCounters {
    pub const ZERO: OpCounters = OpCounters {
        comparisons: 0,
        moves: 0,
        tree_swaps: 0,
        max_depth: 0,
    };

    /// Field-wise merge: sums for the event counts, maximum for depth.
    ///
    /// Panics on overflow rather than wrapping or saturating.
    pub fn merge(self, other: OpCounters) -> OpCounters {
        fn add(a: u64, b: u64, what: &str) -> u64 {
            a.checked_add(b)
                .unwrap_or_else(|| panic!("{what} counter overflowed during merge"))
        }
        OpCounters {
            comparisons: add(self.comparisons, other.comparisons, "comparison"),
            moves: add(self.moves, other.moves, "move"),
            tree_swaps: add(self.tree_swaps, other.tree_swaps, "tree-swap"),
            max_depth: self.max_depth.max(other.max_depth),
        }
    }

    /// Comparisons plus moves, the quantity plotted per run.
    pub fn operations(&self) -> u64 {
        self.comparisons + self.moves
    }
}

/// Hooks every algorithm calls on its hot path.
pub trait Instrument {
    /// One order predicate between two keys was evaluated.
    fn compared(&mut self);
    /// One key was written into a slot it did not occupy immediately before.
    fn moved(&mut self);
    /// One tree-swap activation started.
    fn tree_swapped(&mut self);
    /// A partition or tree-swap frame was entered.
    fn enter(&mut self);
    fn leave(&mut self);
    /// A key was read from 1-based logical position `index`.
    fn read(&mut self, index: usize);
    /// A key was written to 1-based logical position `index`.
    fn write(&mut self, index: usize);
}

/// Instrument with no state. Everything inlines away.
#[derive(Clone, Copy, Debug, Default)]
pub struct NullContext;

impl Instrument for NullContext {
    #[inline(always)]
    fn compared(&mut self) {}
    #[inline(always)]
    fn moved(&mut self) {}
    #[inline(always)]
    fn tree_swapped(&mut self) {}
    #[inline(always)]
    fn enter(&mut self) {}
    #[inline(always)]
    fn leave(&mut self) {}
    #[inline(always)]
    fn read(&mut self, _index: usize) {}
    #[inline(always)]
    fn write(&mut self, _index: usize) {}
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AccessKind {
    Read,
    Write,
}

/// One logical array access. `index` is a 1-based position in the master array.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TraceEvent {
    pub kind: AccessKind,
    pub index: usize,
}

impl TraceEvent {
    pub fn read(index: usize) -> Self {
        TraceEvent {
            kind: AccessKind::Read,
            index,
        }
    }

    pub fn write(index: usize) -> Self {
        TraceEvent {
            kind: AccessKind::Write,
            index,
        }
    }
}

impl fmt::Display for TraceEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.kind {
            AccessKind::Read => 'R',
            AccessKind::Write => 'W',
        };
        write!(f, "{tag} {}", self.index)
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TraceParseError {
    #[error("line {line}: expected `R <index>` or `W <index>`, found {found:?}")]
    Malformed { line: usize, found: String },
    #[error("line {line}: trace indices are 1-based, found 0")]
    ZeroIndex { line: usize },
}

impl FromStr for TraceEvent {
    type Err = TraceParseError;

    /// Parses a single event; errors report line 1.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_event(s, 1)
    }
}

fn parse_event(s: &str, line: usize) -> Result<TraceEvent, TraceParseError> {
    let malformed = || TraceParseError::Malformed {
        line,
        found: s.to_string(),
    };
    let mut parts = s.split_ascii_whitespace();
    let kind = match parts.next() {
        Some("R") => AccessKind::Read,
        Some("W") => AccessKind::Write,
        _ => return Err(malformed()),
    };
    let index: usize = parts
        .next()
        .and_then(|t| t.parse().ok())
        .ok_or_else(malformed)?;
    if parts.next().is_some() {
        return Err(malformed());
    }
    if index == 0 {
        return Err(TraceParseError::ZeroIndex { line });
    }
    Ok(TraceEvent { kind, index })
}

/// Writes one event per line in the `R <index>` / `W <index>` dump format.
pub fn write_trace<W: Write>(events: &[TraceEvent], mut out: W) -> io::Result<()> {
    for e in events {
        writeln!(out, "{e}")?;
    }
    Ok(())
}

/// Reads a trace dump. Blank lines are skipped.
pub fn read_trace<R: BufRead>(input: R) -> io::Result<Result<Vec<TraceEvent>, TraceParseError>> {
    let mut events = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        match parse_event(&line, i + 1) {
            Ok(e) => events.push(e),
            Err(e) => return Ok(Err(e)),
        }
    }
    Ok(Ok(events))
}

/// Destination for access events.
pub trait TraceSink {
    fn record(&mut self, event: TraceEvent);
}

/// Sink that drops everything.
#[derive(Clone, Copy, Debug, Default)]
pub struct NoTrace;

impl TraceSink for NoTrace {
    #[inline(always)]
    fn record(&mut self, _event: TraceEvent) {}
}

impl TraceSink for Vec<TraceEvent> {
    fn record(&mut self, event: TraceEvent) {
        self.push(event);
    }
}

impl<S: TraceSink + ?Sized> TraceSink for &mut S {
    fn record(&mut self, event: TraceEvent) {
        (**self).record(event);
    }
}

/// Counts operations and forwards accesses to a [`TraceSink`].
#[derive(Clone, Debug, Default)]
pub struct CountingContext<S = NoTrace> {
    counters: OpCounters,
    depth: u64,
    sink: S,
}

impl CountingContext<NoTrace> {
    pub fn new() -> Self {
        Self::default()
    }
}

impl<S: TraceSink> CountingContext<S> {
    pub fn with_sink(sink: S) -> Self {
        CountingContext {
            counters: OpCounters::ZERO,
            depth: 0,
            sink,
        }
    }

    pub fn counters(&self) -> OpCounters {
        self.counters
    }

    pub fn sink(&self) -> &S {
        &self.sink
    }

    pub fn into_parts(self) -> (OpCounters, S) {
        (self.counters, self.sink)
    }

    /// Current frame nesting.
    pub fn depth(&self) -> u64 {
        self.depth
    }

    /// Appends an event to the sink in program order.
    pub fn trace_record(&mut self, event: TraceEvent) {
        self.sink.record(event);
    }

    /// Context for a forked task: zero counts, nesting continues from ours.
    pub(crate) fn child(&self) -> CountingContext<S>
    where
        S: Default,
    {
        CountingContext {
            counters: OpCounters::ZERO,
            depth: self.depth,
            sink: S::default(),
        }
    }

    pub(crate) fn absorb_counters(&mut self, other: OpCounters) {
        self.counters = self.counters.merge(other);
    }
}

impl<S: TraceSink> Instrument for CountingContext<S> {
    #[inline]
    fn compared(&mut self) {
        self.counters.comparisons += 1;
    }

    #[inline]
    fn moved(&mut self) {
        self.counters.moves += 1;
    }

    #[inline]
    fn tree_swapped(&mut self) {
        self.counters.tree_swaps += 1;
    }

    #[inline]
    fn enter(&mut self) {
        self.depth += 1;
        if self.depth > self.counters.max_depth {
            self.counters.max_depth = self.depth;
        }
    }

    #[inline]
    fn leave(&mut self) {
        debug_assert!(self.depth > 0, "unbalanced frame exit");
        self.depth -= 1;
    }

    #[inline]
    fn read(&mut self, index: usize) {
        self.sink.record(TraceEvent::read(index));
    }

    #[inline]
    fn write(&mut self, index: usize) {
        self.sink.record(TraceEvent::write(index));
    }
}

/// Geometry of the simulated cache.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CacheConfig {
    pub line_bytes: u64,
    pub num_sets: u64,
    pub ways: usize,
    pub element_bytes: u64,
}

impl Default for CacheConfig {
    /// 32 KiB, 64-byte lines, 8-way, 8-byte keys.
    fn default() -> Self {
        CacheConfig {
            line_bytes: 64,
            num_sets: 64,
            ways: 8,
            element_bytes: 8,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CacheConfigError {
    #[error("line size must be a power of two, got {0}")]
    LineBytes(u64),
    #[error("set count must be a power of two, got {0}")]
    NumSets(u64),
    #[error("associativity must be at least 1")]
    Ways,
    #[error("element size must be at least 1 byte")]
    ElementBytes,
}

impl CacheConfig {
    pub fn validate(&self) -> Result<(), CacheConfigError> {
        if !self.line_bytes.is_power_of_two() {
            return Err(CacheConfigError::LineBytes(self.line_bytes));
        }
        if !self.num_sets.is_power_of_two() {
            return Err(CacheConfigError::NumSets(self.num_sets));
        }
        if self.ways == 0 {
            return Err(CacheConfigError::Ways);
        }
        if self.element_bytes == 0 {
            return Err(CacheConfigError::ElementBytes);
        }
        Ok(())
    }

    pub fn capacity_bytes(&self) -> u64 {
        self.line_bytes * self.num_sets * self.ways as u64
    }

    /// Cache line holding 1-based element position `index`.
    pub fn line_of(&self, index: usize) -> u64 {
        debug_assert!(index >= 1);
        (index as u64 - 1) * self.element_bytes / self.line_bytes
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CacheStats {
    pub accesses: u64,
    pub misses: u64,
}

impl CacheStats {
    pub fn miss_rate(&self) -> f64 {
        if self.accesses == 0 {
            0.0
        } else {
            self.misses as f64 / self.accesses as f64
        }
    }
}

/// Set-associative LRU cache over logical element positions. Reads and
/// writes are treated alike and allocate on miss.
#[derive(Clone, Debug)]
pub struct CacheSim {
    cfg: CacheConfig,
    // Per set, resident line numbers ordered most recently used first.
    sets: Vec<Vec<u64>>,
    stats: CacheStats,
}

impl CacheSim {
    pub fn new(cfg: CacheConfig) -> Result<Self, CacheConfigError> {
        cfg.validate()?;
        let sets = (0..cfg.num_sets)
            .map(|_| Vec::with_capacity(cfg.ways))
            .collect();
        Ok(CacheSim {
            cfg,
            sets,
            stats: CacheStats::default(),
        })
    }

    pub fn config(&self) -> &CacheConfig {
        &self.cfg
    }

    /// Touches 1-based position `index`; returns true on a hit.
    pub fn access(&mut self, index: usize) -> bool {
        let line = self.cfg.line_of(index);
        let set = &mut self.sets[(line & (self.cfg.num_sets - 1)) as usize];
        self.stats.accesses += 1;
        match set.iter().position(|&l| l == line) {
            Some(0) => true,
            Some(pos) => {
                set[..=pos].rotate_right(1);
                true
            }
            None => {
                self.stats.misses += 1;
                if set.len() == self.cfg.ways {
                    set.pop();
                }
                set.insert(0, line);
                false
            }
        }
    }

    pub fn stats(&self) -> CacheStats {
        self.stats
    }
}

impl TraceSink for CacheSim {
    #[inline]
    fn record(&mut self, event: TraceEvent) {
        self.access(event.index);
    }
}

/// Replays a recorded trace through a fresh cache.
pub fn cache_simulate(trace: &[TraceEvent], cfg: &CacheConfig) -> Result<CacheStats, CacheConfigError> {
    let mut sim = CacheSim::new(*cfg)?;
    for e in trace {
        sim.access(e.index);
    }
    Ok(sim.stats())
}
