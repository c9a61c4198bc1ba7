//! Benchmark rows and their CSV form.

use dualheap::{Algorithm, Distribution};

use crate::error::{CliError, Result};

pub const CSV_HEADER: &str = "algorithm,n,seed,distribution,comparisons,moves,tree_swaps,max_depth,wall_ns";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchmarkRecord {
    pub algorithm: Algorithm,
    pub n: usize,
    pub seed: u64,
    pub distribution: Distribution,
    pub comparisons: u64,
    pub moves: u64,
    pub tree_swaps: u64,
    pub max_depth: u64,
    pub wall_ns: u64,
}

impl BenchmarkRecord {
    pub fn operations(&self) -> u64 {
        self.comparisons + self.moves
    }

    pub fn to_csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{}",
            self.algorithm,
            self.n,
            self.seed,
            self.distribution,
            self.comparisons,
            self.moves,
            self.tree_swaps,
            self.max_depth,
            self.wall_ns
        )
    }
}

pub fn write_csv(records: &[BenchmarkRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        out.push_str(&r.to_csv_row());
        out.push('\n');
    }
    out
}

fn field<T: std::str::FromStr>(value: &str, name: &str, line: usize) -> Result<T> {
    value
        .parse()
        .map_err(|_| CliError::Input(format!("line {line}: bad {name} value {value:?}")))
}

/// Parses CSV written by [`write_csv`]. The header must match exactly.
pub fn parse_csv(text: &str) -> Result<Vec<BenchmarkRecord>> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h.trim_end() == CSV_HEADER => {}
        Some(h) => return Err(CliError::Input(format!("line 1: unexpected header {h:?}, expected {CSV_HEADER:?}"))),
        None => return Err(CliError::Input("empty CSV: missing header".to_string())),
    }
    let mut records = Vec::new();
    for (i, line) in lines.enumerate() {
        let line_no = i + 2;
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 9 {
            return Err(CliError::Input(format!("line {line_no}: expected 9 fields, found {}", f.len())));
        }
        records.push(BenchmarkRecord {
            algorithm: field(f[0], "algorithm", line_no)?,
            n: field(f[1], "n", line_no)?,
            seed: field(f[2], "seed", line_no)?,
            distribution: field(f[3], "distribution", line_no)?,
            comparisons: field(f[4], "comparisons", line_no)?,
            moves: field(f[5], "moves", line_no)?,
            tree_swaps: field(f[6], "tree_swaps", line_no)?,
            max_depth: field(f[7], "max_depth", line_no)?,
            wall_ns: field(f[8], "wall_ns", line_no)?,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> BenchmarkRecord {
        BenchmarkRecord {
            algorithm: Algorithm::Dualheap,
            n: 256,
            seed: 3,
            distribution: Distribution::FewDistinct(4),
            comparisons: 10,
            moves: 20,
            tree_swaps: 3,
            max_depth: 7,
            wall_ns: 999,
        }
    }

    #[test]
    fn row_layout() {
        assert_eq!(sample().to_csv_row(), "dualheap,256,3,few_distinct:4,10,20,3,7,999");
        let csv = write_csv(&[sample()]);
        assert!(csv.starts_with(CSV_HEADER));
        assert_eq!(parse_csv(&csv).unwrap(), vec![sample()]);
    }

    #[test]
    fn schema_errors() {
        assert!(parse_csv("").is_err());
        assert!(parse_csv("algorithm,n\n").is_err());
        let short = format!("{CSV_HEADER}\ndualheap,1,2\n");
        assert!(parse_csv(&short).unwrap_err().to_string().contains("line 2"));
        let bad = format!("{CSV_HEADER}\nbogosort,1,1,uniform,1,1,1,1,1\n");
        assert!(parse_csv(&bad).is_err());
        assert!(parse_csv(&format!("{CSV_HEADER}\n")).unwrap().is_empty());
    }
}
