//! The oracle suite run by `dualheap verify`.

use std::fmt;

use itertools::Itertools;

use super::{
    depth_bound, gen_input, partition_oracle, reference_order_statistics, verify_sorted_permutation,
    Distribution, InputSpec, SplitMix64,
};
use crate::heapcore::build_heap;
use crate::instrumentation::{CountingContext, NullContext};
use crate::parallel::ParallelPolicy;
use crate::sorters::{exchange_phase, partition_step, Algorithm, PartitionRegion};

/// Random cases draw sizes from `0..=MAX_RANDOM_LEN`.
pub const MAX_RANDOM_LEN: usize = 512;

const KEPT_FAILURES: usize = 5;

/// Outcome of one named family of checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckResult {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    /// The first few failing cases, described.
    pub examples: Vec<String>,
}

impl CheckResult {
    fn new(name: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            cases: 0,
            failures: 0,
            examples: Vec::new(),
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures += 1;
            if self.examples.len() < KEPT_FAILURES {
                self.examples.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} cases, {} failures)", self.name, self.cases, self.failures)?;
        for e in &self.examples {
            write!(f, "\n    {e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Sorts `input` with every algorithm and records the verdicts and the depth bound.
fn check_sorts(input: &[u64], sorts: &mut [CheckResult], depth: &mut CheckResult, policy: &ParallelPolicy) {
    for (algo, check) in Algorithm::ALL.iter().zip(sorts.iter_mut()) {
        let mut out = input.to_vec();
        let outcome = algo.sort_counted(&mut out, policy);
        let verdict = verify_sorted_permutation(input, &out);
        check.record(verdict.is_pass(), || format!("{input:?}: {verdict}"));
        if matches!(algo, Algorithm::Dualheap | Algorithm::DualheapParallel) {
            let d = outcome.counters.max_depth;
            depth.record(d <= depth_bound(input.len()), || {
                format!("{algo} n={}: depth {d} > {}", input.len(), depth_bound(input.len()))
            });
        }
    }
}

/// Partition, exchange and set-aside checks on a region covering all of `input`.
fn check_partition(input: &[u64], split: &mut CheckResult, exchange: &mut CheckResult, aside: &mut CheckResult) {
    let n = input.len();
    let region = PartitionRegion::new(1, n);
    let ns = region.small_size();

    let mut a = input.to_vec();
    let small = region.small_view();
    let large = region.large_view();
    build_heap(&mut a, small, &mut NullContext);
    build_heap(&mut a, large, &mut NullContext);
    let swaps = exchange_phase(&mut a, small, large, &mut NullContext);
    let verdict = partition_oracle(input, &a, ns);
    split.record(verdict.is_pass(), || format!("{input:?}: {verdict}"));
    exchange.record(swaps <= ns, || format!("{input:?}: {swaps} root swaps > nS = {ns}"));

    let mut b = input.to_vec();
    partition_step(&mut b, region, &mut CountingContext::new());
    let positions: Vec<usize> = (ns - 1..=ns + 2).collect();
    let want = reference_order_statistics(input, &positions);
    let got: Vec<u64> = positions.iter().map(|&p| b[p - 1]).collect();
    aside.record(got == want, || {
        format!("{input:?}: positions {positions:?} hold {got:?}, expected {want:?}")
    });
}

struct Checks {
    sorts: Vec<CheckResult>,
    depth: CheckResult,
    split: CheckResult,
    exchange: CheckResult,
    aside: CheckResult,
}

impl Checks {
    fn new(family: &str) -> Self {
        Checks {
            sorts: Algorithm::ALL
                .iter()
                .map(|a| CheckResult::new(format!("{family} sort {a}")))
                .collect(),
            depth: CheckResult::new(format!("{family} depth bound")),
            split: CheckResult::new(format!("{family} partition split")),
            exchange: CheckResult::new(format!("{family} exchange swaps <= nS")),
            aside: CheckResult::new(format!("{family} set-aside order statistics")),
        }
    }

    fn run(&mut self, input: &[u64], policy: &ParallelPolicy) {
        check_sorts(input, &mut self.sorts, &mut self.depth, policy);
        if input.len() >= 4 {
            check_partition(input, &mut self.split, &mut self.exchange, &mut self.aside);
        }
    }

    fn into_results(self) -> impl Iterator<Item = CheckResult> {
        self.sorts
            .into_iter()
            .chain([self.depth, self.split, self.exchange, self.aside])
            .filter(|c| c.cases > 0)
    }
}

/// Runs every permutation of `0..n` for `n` in `1..=exhaustive_max`, then
/// `random_cases` generated inputs of length up to [`MAX_RANDOM_LEN`] cycling
/// through all distributions. Zero for either disables that family.
pub fn run_verification(exhaustive_max: usize, random_cases: u64) -> VerifyReport {
    // A tiny cutoff makes the parallel path split even small inputs.
    let policy = ParallelPolicy::new(2, 4).expect("valid policy");
    let mut report = VerifyReport::default();

    if exhaustive_max > 0 {
        let mut checks = Checks::new("exhaustive");
        for n in 1..=exhaustive_max {
            for p in (0..n as u64).permutations(n) {
                checks.run(&p, &policy);
            }
        }
        report.checks.extend(checks.into_results());
    }

    if random_cases > 0 {
        let mut checks = Checks::new("random");
        let mut sizes = SplitMix64::new(0x5EED);
        for case in 0..random_cases {
            let n = sizes.below(MAX_RANDOM_LEN as u64 + 1) as usize;
            let distribution = match case % 5 {
                0 => Distribution::Uniform,
                1 => Distribution::Sorted,
                2 => Distribution::Reversed,
                3 => Distribution::Constant,
                _ => Distribution::FewDistinct(1 + sizes.below(8)),
            };
            let input = gen_input(&InputSpec::new(distribution, n, case + 1));
            checks.run(&input, &policy);
        }
        report.checks.extend(checks.into_results());
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_run_reports_nothing() {
        let r = run_verification(0, 0);
        assert!(r.checks.is_empty());
        assert!(r.passed());
        assert_eq!(r.to_string(), "");
    }

    #[test]
    fn small_run_passes() {
        let r = run_verification(6, 200);
        assert!(r.passed(), "{r}");
        let names: Vec<_> = r.checks.iter().map(|c| c.name.as_str()).collect();
        assert!(names.contains(&"exhaustive sort dualheap"));
        assert!(names.contains(&"random set-aside order statistics"));
        let exhaustive = r.checks.iter().find(|c| c.name == "exhaustive sort heapsort").unwrap();
        assert_eq!(exhaustive.cases, 1 + 2 + 6 + 24 + 120 + 720);
    }

    #[test]
    fn failures_are_reported() {
        let mut c = CheckResult::new("demo");
        for i in 0..10 {
            c.record(i % 2 == 0, || format!("case {i}"));
        }
        assert!(!c.passed());
        assert_eq!(c.examples.len(), KEPT_FAILURES);
        assert!(c.to_string().starts_with("FAIL demo (10 cases, 5 failures)"));
    }
}
