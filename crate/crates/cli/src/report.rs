//! Level tables and SVG level schemes.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};
use crate::record::{ensure_dir, write_levels, write_text, LevelRow, RunRecord};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 80.0;
const MARGIN_RIGHT: f64 = 20.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 60.0;
const COLUMN_GAP: f64 = 0.15;
const COLORS: [&str; 6] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
];

/// Exact energies closer than this are drawn as one reference line.
const SAME_LEVEL: f64 = 1e-9;

/// Record files named directly, plus every `*.json` inside named directories.
pub fn collect_records(inputs: &[PathBuf]) -> Result<Vec<RunRecord>> {
    let mut files = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut inside: Vec<PathBuf> = std::fs::read_dir(input)
                .map_err(|e| CliError::at(input, e))?
                .filter_map(|e| e.ok().map(|e| e.path()))
                .filter(|p| p.extension().is_some_and(|x| x == "json"))
                .collect();
            inside.sort();
            files.extend(inside);
        } else {
            files.push(input.clone());
        }
    }
    if files.is_empty() {
        return Err(CliError::input("no run records given"));
    }
    files.iter().map(|f| RunRecord::load(f)).collect()
}

/// Distinct values in first-seen order.
fn ordered_unique(items: impl Iterator<Item = String>) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for item in items {
        if !out.contains(&item) {
            out.push(item);
        }
    }
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Level scheme: one group per sector label, one column per method inside
/// it, a solid line per computed level and a dashed line per distinct exact
/// energy across the group.
pub fn level_scheme_svg(rows: &[LevelRow]) -> Result<String> {
    if rows.is_empty() {
        return Err(CliError::input("no levels to draw"));
    }
    let labels = ordered_unique(rows.iter().map(|r| r.label.clone()));
    let methods = ordered_unique(rows.iter().map(|r| r.method.clone()));
    let energies = rows
        .iter()
        .flat_map(|r| std::iter::once(r.median).chain(r.exact));
    let (lo, hi) = energies.fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), e| {
        (a.min(e), b.max(e))
    });
    let span = if hi > lo { hi - lo } else { 1.0 };
    let (lo, hi) = (lo - 0.05 * span, hi + 0.05 * span);
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let y = |e: f64| MARGIN_TOP + (hi - e) / (hi - lo) * plot_h;
    let group_w = (WIDTH - MARGIN_LEFT - MARGIN_RIGHT) / labels.len() as f64;

    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(svg, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let axis_x = MARGIN_LEFT - 10.0;
    let _ = writeln!(
        svg,
        r#"<line class="axis" x1="{axis_x}" y1="{MARGIN_TOP}" x2="{axis_x}" y2="{:.2}" stroke="black"/>"#,
        HEIGHT - MARGIN_BOTTOM
    );
    for t in 0..=4 {
        let e = lo + (hi - lo) * t as f64 / 4.0;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{e:.3}</text>"#,
            axis_x - 4.0,
            y(e) + 4.0
        );
    }
    let _ = writeln!(
        svg,
        r#"<text x="16" y="{:.2}" transform="rotate(-90 16 {:.2})" text-anchor="middle">Energy (MeV)</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_TOP + plot_h / 2.0
    );
    for (g, label) in labels.iter().enumerate() {
        let x0 = MARGIN_LEFT + g as f64 * group_w;
        let in_group: Vec<&LevelRow> = rows.iter().filter(|r| &r.label == label).collect();
        let group_methods = ordered_unique(in_group.iter().map(|r| r.method.clone()));
        let col_w = group_w / group_methods.len() as f64;
        let _ = writeln!(
            svg,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            x0 + group_w / 2.0,
            HEIGHT - MARGIN_BOTTOM / 2.0 + 14.0,
            escape(label)
        );
        let mut exact: Vec<f64> = Vec::new();
        for r in &in_group {
            if let Some(e) = r.exact {
                if !exact.iter().any(|x| (x - e).abs() < SAME_LEVEL) {
                    exact.push(e);
                }
            }
        }
        for e in exact {
            let _ = writeln!(
                svg,
                r#"<line class="exact" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="gray" stroke-dasharray="6 4"><title>{} exact {e:.6}</title></line>"#,
                x0 + 4.0,
                y(e),
                x0 + group_w - 4.0,
                y(e),
                escape(label)
            );
        }
        for (c, method) in group_methods.iter().enumerate() {
            let color =
                COLORS[methods.iter().position(|m| m == method).unwrap_or(0) % COLORS.len()];
            let (a, b) = (
                x0 + (c as f64 + COLUMN_GAP) * col_w,
                x0 + (c as f64 + 1.0 - COLUMN_GAP) * col_w,
            );
            let _ = writeln!(
                svg,
                r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" fill="{color}">{}</text>"#,
                (a + b) / 2.0,
                HEIGHT - MARGIN_BOTTOM / 2.0 - 4.0,
                escape(method)
            );
            for r in in_group.iter().filter(|r| &r.method == method) {
                let _ = writeln!(
                    svg,
                    r#"<line class="level" x1="{a:.2}" y1="{:.2}" x2="{b:.2}" y2="{:.2}" stroke="{color}" stroke-width="2"><title>{} {} level {}: {:.6} ± {:.6}</title></line>"#,
                    y(r.median),
                    y(r.median),
                    escape(label),
                    escape(method),
                    r.level,
                    r.median,
                    r.mad
                );
            }
        }
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}

/// Write `levels.csv` and `levels.svg` for `records` into `dir`.
pub fn write_report(records: &[RunRecord], dir: &Path) -> Result<(PathBuf, PathBuf)> {
    if records.is_empty() {
        return Err(CliError::input("no run records given"));
    }
    let rows: Vec<LevelRow> = records.iter().flat_map(RunRecord::level_rows).collect();
    ensure_dir(dir)?;
    let csv = dir.join("levels.csv");
    let svg = dir.join("levels.svg");
    write_levels(&csv, &rows)?;
    write_text(&svg, &level_scheme_svg(&rows)?)?;
    Ok((csv, svg))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(label: &str, method: &str, level: usize, median: f64, exact: Option<f64>) -> LevelRow {
        LevelRow {
            label: label.into(),
            method: method.into(),
            level,
            median,
            mad: 0.01,
            exact,
        }
    }

    #[test]
    fn one_line_per_level_and_distinct_exact_value() {
        let mut rows = Vec::new();
        for m in ["vqe", "adapt"] {
            for (k, e) in [-3.0, -2.0, -1.0].into_iter().enumerate() {
                rows.push(row("x", m, k, e + 0.01, Some(e)));
            }
        }
        let svg = level_scheme_svg(&rows).unwrap();
        assert_eq!(svg.matches(r#"class="level""#).count(), 6);
        assert_eq!(svg.matches(r#"class="exact""#).count(), 3);
        assert!(svg.starts_with("<svg") && svg.ends_with("</svg>\n"));
    }

    #[test]
    fn empty_inputs_are_rejected() {
        assert!(level_scheme_svg(&[]).is_err());
        assert!(write_report(&[], Path::new("unused")).is_err());
        assert!(collect_records(&[]).is_err());
    }

    #[test]
    fn labels_are_escaped() {
        let svg = level_scheme_svg(&[row("a<b", "vqe", 0, 1.0, None)]).unwrap();
        assert!(svg.contains("a&lt;b") && !svg.contains("a<b"));
    }
}
