//! Minimal deterministic SVG plots: scatter, line and histogram.
//!
//! Coordinates are printed with two decimals so identical input gives
//! identical bytes.

use std::fmt::Write as _;
use std::io;
use std::path::Path;

use crate::table::Table;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlotKind {
    Scatter,
    Line,
    Histogram,
}

const W: f64 = 800.0;
const H: f64 = 500.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 50.0;
const TICKS: usize = 5;

#[derive(Debug, thiserror::Error)]
pub enum SvgError {
    #[error("nothing to plot: {0}")]
    EmptyDataset(&'static str),
    #[error(transparent)]
    Io(#[from] io::Error),
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn new(
        xs: impl Iterator<Item = f64> + Clone,
        ys: impl Iterator<Item = f64> + Clone,
    ) -> Option<Self> {
        let span = |it: &mut dyn Iterator<Item = f64>| {
            it.fold(None, |acc: Option<(f64, f64)>, v| match acc {
                None => Some((v, v)),
                Some((lo, hi)) => Some((lo.min(v), hi.max(v))),
            })
        };
        let (mut x0, mut x1) = span(&mut xs.clone())?;
        let (mut y0, mut y1) = span(&mut ys.clone())?;
        for (lo, hi) in [(&mut x0, &mut x1), (&mut y0, &mut y1)] {
            if *hi - *lo < 1e-12 {
                *lo -= 0.5;
                *hi += 0.5;
            }
        }
        Some(Self { x0, x1, y0, y1 })
    }

    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (W - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        H - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (H - TOP - BOTTOM)
    }
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn axes(out: &mut String, f: &Frame, title: &str, xlabel: &str, ylabel: &str) {
    let (bx, by) = (H - BOTTOM, W - RIGHT);
    let _ = writeln!(
        out,
        r#"<rect x="{LEFT}" y="{TOP}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        by - LEFT,
        bx - TOP
    );
    for i in 0..=TICKS {
        let t = i as f64 / TICKS as f64;
        let xv = f.x0 + t * (f.x1 - f.x0);
        let yv = f.y0 + t * (f.y1 - f.y0);
        let (px, py) = (f.px(xv), f.py(yv));
        let _ = writeln!(
            out,
            r#"<line x1="{px:.2}" y1="{bx:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/><text x="{px:.2}" y="{:.2}" font-size="12" text-anchor="middle">{}</text>"#,
            bx + 5.0,
            bx + 20.0,
            tick_label(xv)
        );
        let _ = writeln!(
            out,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{LEFT:.2}" y2="{py:.2}" stroke="black"/><text x="{:.2}" y="{:.2}" font-size="12" text-anchor="end">{}</text>"#,
            LEFT - 5.0,
            LEFT - 8.0,
            py + 4.0,
            tick_label(yv)
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="24" font-size="16" text-anchor="middle">{}</text>"#,
        W / 2.0,
        escape(title)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" font-size="13" text-anchor="middle">{}</text>"#,
        (LEFT + W - RIGHT) / 2.0,
        H - 10.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text x="16" y="{:.2}" font-size="13" text-anchor="middle" transform="rotate(-90 16 {:.2})">{}</text>"#,
        (TOP + H - BOTTOM) / 2.0,
        (TOP + H - BOTTOM) / 2.0,
        escape(ylabel)
    );
}

/// Renders `table` as SVG. Scatter and line plots use columns `x` and `y`;
/// histograms expect `bin_left,bin_right,density`.
pub fn render(
    table: &Table,
    kind: PlotKind,
    x: &str,
    y: &str,
    title: &str,
) -> Result<String, SvgError> {
    let (xi, yi) = match kind {
        PlotKind::Histogram => (
            table
                .column("bin_left")
                .ok_or(SvgError::EmptyDataset("no bin_left column"))?,
            table
                .column("density")
                .ok_or(SvgError::EmptyDataset("no density column"))?,
        ),
        _ => (
            table
                .column(x)
                .ok_or(SvgError::EmptyDataset("x column missing"))?,
            table
                .column(y)
                .ok_or(SvgError::EmptyDataset("y column missing"))?,
        ),
    };
    let pts: Vec<(f64, f64)> = table
        .rows
        .iter()
        .filter_map(|r| Some((r[xi].as_f64()?, r[yi].as_f64()?)))
        .filter(|(a, b)| a.is_finite() && b.is_finite())
        .collect();
    if pts.is_empty() {
        return Err(SvgError::EmptyDataset("no finite points"));
    }

    let frame = match kind {
        PlotKind::Histogram => {
            let ri = table
                .column("bin_right")
                .ok_or(SvgError::EmptyDataset("no bin_right column"))?;
            let rights = table.rows.iter().filter_map(|r| r[ri].as_f64());
            let xs = pts.iter().map(|p| p.0).chain(rights);
            let ys = pts.iter().map(|p| p.1).chain(std::iter::once(0.0));
            Frame::new(
                xs.collect::<Vec<_>>().into_iter(),
                ys.collect::<Vec<_>>().into_iter(),
            )
        }
        _ => Frame::new(pts.iter().map(|p| p.0), pts.iter().map(|p| p.1)),
    }
    .ok_or(SvgError::EmptyDataset("no finite points"))?;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#
    );
    let _ = writeln!(out, r#"<rect width="{W}" height="{H}" fill="white"/>"#);
    match kind {
        PlotKind::Scatter => {
            for &(a, b) in &pts {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="0.6" fill="black"/>"#,
                    frame.px(a),
                    frame.py(b)
                );
            }
        }
        PlotKind::Line => {
            let mut d = String::new();
            for (i, &(a, b)) in pts.iter().enumerate() {
                let _ = write!(
                    d,
                    "{}{:.2},{:.2}",
                    if i == 0 { "M" } else { " L" },
                    frame.px(a),
                    frame.py(b)
                );
            }
            let _ = writeln!(
                out,
                r#"<path d="{d}" fill="none" stroke="navy" stroke-width="1"/>"#
            );
        }
        PlotKind::Histogram => {
            let ri = table.column("bin_right").expect("checked above");
            for r in &table.rows {
                let (Some(l), Some(rr), Some(dv)) =
                    (r[xi].as_f64(), r[ri].as_f64(), r[yi].as_f64())
                else {
                    continue;
                };
                let (x0, x1, y0) = (frame.px(l), frame.px(rr), frame.py(dv));
                let _ = writeln!(
                    out,
                    r#"<rect x="{x0:.2}" y="{y0:.2}" width="{:.2}" height="{:.2}" fill="steelblue" stroke="white" stroke-width="0.5"/>"#,
                    x1 - x0,
                    frame.py(0.0) - y0
                );
            }
        }
    }
    let (xlabel, ylabel) = match kind {
        PlotKind::Histogram => ("value", "density"),
        _ => (x, y),
    };
    axes(&mut out, &frame, title, xlabel, ylabel);
    out.push_str("</svg>\n");
    Ok(out)
}

pub fn write_svg(
    table: &Table,
    path: &Path,
    kind: PlotKind,
    x: &str,
    y: &str,
    title: &str,
) -> Result<(), SvgError> {
    let svg = render(table, kind, x, y, title)?;
    std::fs::write(path, svg)
        .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Cell;

    fn line_table() -> Table {
        let mut t = Table::new(&["param", "average"]);
        for i in 0..20 {
            t.push(vec![Cell::Num(i as f64 * 0.1), Cell::Num((i as f64).sin())]);
        }
        t
    }

    #[test]
    fn deterministic_and_well_formed() {
        let a = render(&line_table(), PlotKind::Line, "param", "average", "t").unwrap();
        let b = render(&line_table(), PlotKind::Line, "param", "average", "t").unwrap();
        assert_eq!(a, b);
        assert!(a.starts_with("<svg") && a.trim_end().ends_with("</svg>"));
        assert!(a.contains("<path"));
    }

    #[test]
    fn empty_dataset_is_an_error() {
        let t = Table::new(&["param", "average"]);
        assert!(matches!(
            render(&t, PlotKind::Scatter, "param", "average", "t"),
            Err(SvgError::EmptyDataset(_))
        ));
    }
}
