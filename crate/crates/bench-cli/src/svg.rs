//! Scatter plot of comparisons + moves against n, one colour per algorithm.

use std::fmt::Write;

use dualheap::Algorithm;

use crate::record::BenchmarkRecord;

const WIDTH: f64 = 760.0;
const HEIGHT: f64 = 480.0;
const LEFT: f64 = 90.0;
const RIGHT: f64 = 190.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 60.0;
const TICKS: u32 = 5;

fn color(algo: Algorithm) -> &'static str {
    match algo {
        Algorithm::Heapsort => "#1f77b4",
        Algorithm::HeapsortModified => "#2ca02c",
        Algorithm::Dualheap => "#d62728",
        Algorithm::DualheapParallel => "#9467bd",
    }
}

/// Smallest 1, 2 or 5 times a power of ten that is >= `x` (and >= 1).
fn nice_ceiling(x: f64) -> f64 {
    if x <= 1.0 {
        return 1.0;
    }
    let mut base = 1.0;
    while base * 10.0 < x {
        base *= 10.0;
    }
    [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * base)
        .find(|&v| v >= x)
        .unwrap_or(base * 10.0)
}

fn tick_label(v: f64) -> String {
    format!("{}", v.round() as u64)
}

/// Renders a standalone SVG 1.1 document. Output depends only on `records`.
pub fn render(records: &[BenchmarkRecord]) -> String {
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x_max = nice_ceiling(records.iter().map(|r| r.n as f64).fold(0.0, f64::max));
    let y_max = nice_ceiling(records.iter().map(|r| r.operations() as f64).fold(0.0, f64::max));
    let sx = |n: f64| LEFT + n / x_max * plot_w;
    let sy = |v: f64| TOP + plot_h - v / y_max * plot_h;

    let mut s = String::new();
    s.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{WIDTH}\" height=\"{HEIGHT}\" viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
    );
    s.push_str("<title>Operations by algorithm</title>\n");
    let _ = writeln!(s, "<rect x=\"0\" y=\"0\" width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>");

    s.push_str("<g class=\"axes\" stroke=\"black\" stroke-width=\"1\" font-family=\"sans-serif\" font-size=\"11\">\n");
    let (x0, y0, x1, y1) = (LEFT, TOP + plot_h, LEFT + plot_w, TOP);
    let _ = writeln!(s, "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x1:.2}\" y2=\"{y0:.2}\"/>");
    let _ = writeln!(s, "<line x1=\"{x0:.2}\" y1=\"{y0:.2}\" x2=\"{x0:.2}\" y2=\"{y1:.2}\"/>");
    for i in 0..=TICKS {
        let xv = x_max * f64::from(i) / f64::from(TICKS);
        let px = sx(xv);
        let _ = writeln!(s, "<line x1=\"{px:.2}\" y1=\"{y0:.2}\" x2=\"{px:.2}\" y2=\"{:.2}\"/>", y0 + 5.0);
        let _ = writeln!(
            s,
            "<text x=\"{px:.2}\" y=\"{:.2}\" text-anchor=\"middle\" stroke=\"none\">{}</text>",
            y0 + 18.0,
            tick_label(xv)
        );
        let yv = y_max * f64::from(i) / f64::from(TICKS);
        let py = sy(yv);
        let _ = writeln!(s, "<line x1=\"{:.2}\" y1=\"{py:.2}\" x2=\"{x0:.2}\" y2=\"{py:.2}\"/>", x0 - 5.0);
        let _ = writeln!(
            s,
            "<text x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\" stroke=\"none\">{}</text>",
            x0 - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    s.push_str("</g>\n");
    let _ = writeln!(
        s,
        "<text class=\"axis-label\" x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">n</text>",
        LEFT + plot_w / 2.0,
        HEIGHT - 15.0
    );
    let (lx, ly) = (22.0, TOP + plot_h / 2.0);
    let _ = writeln!(
        s,
        "<text class=\"axis-label\" x=\"{lx:.2}\" y=\"{ly:.2}\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" transform=\"rotate(-90 {lx:.2} {ly:.2})\">comparisons + moves</text>"
    );

    s.push_str("<g class=\"marks\">\n");
    for r in records {
        let _ = writeln!(
            s,
            "<circle class=\"mark\" cx=\"{:.2}\" cy=\"{:.2}\" r=\"2.5\" fill=\"{}\" fill-opacity=\"0.7\"/>",
            sx(r.n as f64),
            sy(r.operations() as f64),
            color(r.algorithm)
        );
    }
    s.push_str("</g>\n");

    s.push_str("<g class=\"legend\" font-family=\"sans-serif\" font-size=\"12\">\n");
    let present = Algorithm::ALL
        .into_iter()
        .filter(|a| records.iter().any(|r| r.algorithm == *a));
    for (i, algo) in present.enumerate() {
        let y = TOP + 10.0 + 20.0 * i as f64;
        let x = WIDTH - RIGHT + 20.0;
        let _ = writeln!(
            s,
            "<g class=\"legend-entry\"><rect x=\"{x:.2}\" y=\"{:.2}\" width=\"10\" height=\"10\" fill=\"{}\"/><text x=\"{:.2}\" y=\"{:.2}\">{algo}</text></g>",
            y - 9.0,
            color(algo),
            x + 16.0,
            y
        );
    }
    s.push_str("</g>\n</svg>\n");
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use dualheap::Distribution;

    fn rec(algorithm: Algorithm, n: usize, ops: u64) -> BenchmarkRecord {
        BenchmarkRecord {
            algorithm,
            n,
            seed: 1,
            distribution: Distribution::Uniform,
            comparisons: ops / 2,
            moves: ops - ops / 2,
            tree_swaps: 0,
            max_depth: 0,
            wall_ns: 0,
        }
    }

    fn count(svg: &str, needle: &str) -> usize {
        svg.matches(needle).count()
    }

    #[test]
    fn one_mark_per_row() {
        let svg = render(&[rec(Algorithm::Heapsort, 256, 5000), rec(Algorithm::Dualheap, 256, 7000)]);
        assert_eq!(count(&svg, "class=\"mark\""), 2);
        assert_eq!(count(&svg, "class=\"legend-entry\""), 2);
        assert!(svg.starts_with("<?xml"));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn empty_data_still_has_axes() {
        let svg = render(&[]);
        assert_eq!(count(&svg, "class=\"mark\""), 0);
        assert_eq!(count(&svg, "class=\"legend-entry\""), 0);
        assert!(svg.contains("class=\"axes\""));
        assert!(svg.contains(">comparisons + moves</text>"));
    }

    #[test]
    fn legend_has_one_entry_per_algorithm() {
        let rows: Vec<_> = [Algorithm::Heapsort, Algorithm::HeapsortModified, Algorithm::Dualheap]
            .into_iter()
            .flat_map(|a| [rec(a, 100, 10), rec(a, 200, 30)])
            .collect();
        let svg = render(&rows);
        assert_eq!(count(&svg, "class=\"legend-entry\""), 3);
        assert_eq!(count(&svg, "class=\"mark\""), 6);
    }

    #[test]
    fn deterministic_bytes() {
        let rows = vec![rec(Algorithm::Dualheap, 1000, 123_456), rec(Algorithm::Heapsort, 10, 7)];
        assert_eq!(render(&rows), render(&rows));
    }

    #[test]
    fn nice_ceilings() {
        assert_eq!(nice_ceiling(0.0), 1.0);
        assert_eq!(nice_ceiling(3.0), 5.0);
        assert_eq!(nice_ceiling(32768.0), 50000.0);
        assert_eq!(nice_ceiling(100.0), 100.0);
        assert_eq!(nice_ceiling(101.0), 200.0);
    }

    #[test]
    fn marks_stay_inside_plot_area() {
        let svg = render(&[rec(Algorithm::Dualheap, 32768, 1_800_000)]);
        let cx: f64 = svg
            .split("cx=\"")
            .nth(1)
            .and_then(|t| t.split('"').next())
            .and_then(|v| v.parse().ok())
            .unwrap();
        assert!(cx > LEFT && cx <= WIDTH - RIGHT);
    }
}
