//! Input generators and ground-truth checks.
//!
//! Everything here is independent of the sorters: verdicts are computed from
//! sorted copies made with the standard library.

pub mod suite;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// The splitmix64 sequence.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// Value in `0..bound` by modular reduction. `bound` must be nonzero.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Distribution {
    Uniform,
    Sorted,
    Reversed,
    Constant,
    /// Uniform outputs reduced modulo `k`.
    FewDistinct(u64),
}

impl Distribution {
    /// One of each kind, with 8 distinct values for the few-distinct case.
    pub const ALL: [Distribution; 5] = [
        Distribution::Uniform,
        Distribution::Sorted,
        Distribution::Reversed,
        Distribution::Constant,
        Distribution::FewDistinct(8),
    ];
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distribution::Uniform => f.write_str("uniform"),
            Distribution::Sorted => f.write_str("sorted"),
            Distribution::Reversed => f.write_str("reversed"),
            Distribution::Constant => f.write_str("constant"),
            Distribution::FewDistinct(k) => write!(f, "few_distinct:{k}"),
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("unknown distribution {0:?} (expected uniform, sorted, reversed, constant or few_distinct:K with K >= 1)")]
pub struct UnknownDistribution(pub String);

impl FromStr for Distribution {
    type Err = UnknownDistribution;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let d = match s {
            "uniform" => Distribution::Uniform,
            "sorted" => Distribution::Sorted,
            "reversed" => Distribution::Reversed,
            "constant" => Distribution::Constant,
            _ => match s.strip_prefix("few_distinct:").map(str::parse::<u64>) {
                Some(Ok(k)) if k >= 1 => Distribution::FewDistinct(k),
                _ => return Err(UnknownDistribution(s.to_string())),
            },
        };
        Ok(d)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct InputSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub seed: u64,
}

impl InputSpec {
    pub fn new(distribution: Distribution, n: usize, seed: u64) -> Self {
        InputSpec {
            distribution,
            n,
            seed,
        }
    }
}

/// Deterministic input for `spec`.
///
/// Sorted and reversed inputs are `0..n` ascending or descending and ignore
/// the seed. A constant input repeats the seed's first splitmix64 output.
pub fn gen_input(spec: &InputSpec) -> Vec<u64> {
    let n = spec.n;
    let mut rng = SplitMix64::new(spec.seed);
    match spec.distribution {
        Distribution::Uniform => (0..n).map(|_| rng.next_u64()).collect(),
        Distribution::Sorted => (0..n as u64).collect(),
        Distribution::Reversed => (0..n as u64).rev().collect(),
        Distribution::Constant => vec![rng.next_u64(); n],
        Distribution::FewDistinct(k) => {
            assert!(k >= 1, "few_distinct needs at least one value");
            (0..n).map(|_| rng.below(k)).collect()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    /// `output[position] > output[position + 1]` (0-based).
    NotAscending { position: usize },
    /// The output is not a rearrangement of the input.
    NotPermutation,
    /// The low part of a partition is not the smallest values.
    WrongSplit,
}

impl Verdict {
    pub fn is_pass(&self) -> bool {
        *self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("PASS"),
            Verdict::NotAscending { position } => {
                write!(f, "FAIL: descent at positions {} and {}", position + 1, position + 2)
            }
            Verdict::NotPermutation => f.write_str("FAIL: multiset changed"),
            Verdict::WrongSplit => f.write_str("FAIL: low part is not the smallest values"),
        }
    }
}

fn sorted_copy<T: Ord + Clone>(v: &[T]) -> Vec<T> {
    let mut s = v.to_vec();
    s.sort();
    s
}

/// Passes iff `output` is ascending and holds the same multiset as `input`.
pub fn verify_sorted_permutation<T: Ord + Clone>(input: &[T], output: &[T]) -> Verdict {
    if let Some(position) = output.windows(2).position(|w| w[0] > w[1]) {
        return Verdict::NotAscending { position };
    }
    if input.len() != output.len() || sorted_copy(input) != output {
        return Verdict::NotPermutation;
    }
    Verdict::Pass
}

/// Passes iff the multiset is preserved and `after[..ns]` holds the `ns`
/// smallest values of `before`.
///
/// Panics if the lengths differ or `ns` exceeds them.
pub fn partition_oracle<T: Ord + Clone>(before: &[T], after: &[T], ns: usize) -> Verdict {
    assert_eq!(before.len(), after.len(), "partition oracle needs equal lengths");
    assert!(ns <= before.len(), "split {ns} beyond length {}", before.len());
    let reference = sorted_copy(before);
    if sorted_copy(after) != reference {
        return Verdict::NotPermutation;
    }
    if sorted_copy(&after[..ns]) != reference[..ns] {
        return Verdict::WrongSplit;
    }
    Verdict::Pass
}

/// Values of `sorted(arr)` at the given 1-based positions.
///
/// Panics on a position outside `1..=arr.len()`.
pub fn reference_order_statistics<T: Ord + Clone>(arr: &[T], positions: &[usize]) -> Vec<T> {
    let s = sorted_copy(arr);
    positions
        .iter()
        .map(|&p| {
            assert!(p >= 1 && p <= s.len(), "order statistic {p} outside 1..={}", s.len());
            s[p - 1].clone()
        })
        .collect()
}

/// Recursion depth allowed for an input of length `n`: `2 * floor(lg n) + 4`.
pub fn depth_bound(n: usize) -> u64 {
    2 * u64::from(n.max(1).ilog2()) + 4
}
