//! Single-panel SVG line plots of witness series.

use std::fmt::Write;

use ifs_cavity::sweep::{SweepMode, Witness, WitnessSeries};

use crate::error::{CliError, CliResult};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 70.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 55.0;

fn colour(mode: SweepMode) -> &'static str {
    match mode {
        SweepMode::Paper => "#1f5fa8",
        SweepMode::Oracle => "#c8362b",
    }
}

fn axis_label(witness: Witness) -> &'static str {
    match witness {
        Witness::Mandel => "Q",
        Witness::Squeezing => "S_opt",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Roughly five round tick positions covering [lo, hi].
fn ticks(lo: f64, hi: f64) -> Vec<f64> {
    let raw = (hi - lo) / 5.0;
    let mag = 10f64.powf(raw.log10().floor());
    let step = [1.0, 2.0, 5.0, 10.0]
        .into_iter()
        .map(|m| m * mag)
        .find(|s| *s >= raw)
        .unwrap_or(10.0 * mag);
    let first = (lo / step).ceil() as i64;
    let last = (hi / step).floor() as i64;
    (first..=last).map(|i| i as f64 * step).collect()
}

fn tick_label(x: f64) -> String {
    let s = format!("{x:.3}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

struct Frame {
    x0: f64,
    x1: f64,
    y0: f64,
    y1: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        LEFT + (x - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - BOTTOM - (y - self.y0) / (self.y1 - self.y0) * (HEIGHT - TOP - BOTTOM)
    }
}

/// Draws every series on one set of axes, one polyline per series. Undefined
/// values break the line.
pub fn emit_svg(series: &[WitnessSeries], title: &str) -> CliResult<String> {
    let points: Vec<(f64, f64)> = series
        .iter()
        .flat_map(|s| s.values().filter_map(|(gt, v)| v.map(|v| (gt, v))))
        .collect();
    if points.is_empty() {
        return Err(CliError::Config(
            "nothing to plot: the series has no defined values".into(),
        ));
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, pick: fn(&(f64, f64)) -> f64| points.iter().map(pick).fold(init, f);
    let (mut x0, mut x1) = (
        fold(f64::min, f64::INFINITY, |p| p.0),
        fold(f64::max, f64::NEG_INFINITY, |p| p.0),
    );
    if x0 == x1 {
        x0 -= 1.0;
        x1 += 1.0;
    }
    let y_lo = fold(f64::min, 0.0, |p| p.1);
    let y_hi = fold(f64::max, 0.0, |p| p.1);
    let pad = if y_hi > y_lo { 0.05 * (y_hi - y_lo) } else { 1.0 };
    let frame = Frame {
        x0,
        x1,
        y0: y_lo - pad,
        y1: y_hi + pad,
    };

    let witnesses: Vec<Witness> = {
        let mut w: Vec<Witness> = series.iter().map(|s| s.witness).collect();
        w.sort();
        w.dedup();
        w
    };
    let y_label = witnesses.iter().map(|w| axis_label(*w)).collect::<Vec<_>>().join(", ");

    let mut svg = String::new();
    let w = &mut svg;
    let _ = writeln!(w, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        w,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(w, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="22" text-anchor="middle" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    );

    let (left, right, top, bottom) = (LEFT, WIDTH - RIGHT, TOP, HEIGHT - BOTTOM);
    let _ = writeln!(
        w,
        r#"<rect x="{left:.2}" y="{top:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="black"/>"#,
        right - left,
        bottom - top
    );
    for x in ticks(frame.x0, frame.x1) {
        let px = frame.px(x);
        let _ = writeln!(
            w,
            r#"<line x1="{px:.2}" y1="{bottom:.2}" x2="{px:.2}" y2="{:.2}" stroke="black"/>"#,
            bottom + 5.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{px:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            bottom + 18.0,
            tick_label(x)
        );
    }
    for y in ticks(frame.y0, frame.y1) {
        let py = frame.py(y);
        let _ = writeln!(
            w,
            r#"<line x1="{:.2}" y1="{py:.2}" x2="{left:.2}" y2="{py:.2}" stroke="black"/>"#,
            left - 5.0
        );
        let _ = writeln!(
            w,
            r#"<text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            left - 8.0,
            py + 4.0,
            tick_label(y)
        );
    }
    let _ = writeln!(
        w,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">gt</text>"#,
        (left + right) / 2.0,
        HEIGHT - 12.0
    );
    let _ = writeln!(
        w,
        r#"<text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">{}</text>"#,
        (top + bottom) / 2.0,
        (top + bottom) / 2.0,
        escape(&y_label)
    );
    let zero = frame.py(0.0);
    let _ = writeln!(
        w,
        r#"<line class="zero" x1="{left:.2}" y1="{zero:.2}" x2="{right:.2}" y2="{zero:.2}" stroke="grey" stroke-dasharray="4 3"/>"#
    );

    for s in series {
        let mut runs: Vec<Vec<String>> = vec![Vec::new()];
        for (gt, v) in s.values() {
            match v {
                Some(v) => runs
                    .last_mut()
                    .expect("non-empty")
                    .push(format!("{:.2},{:.2}", frame.px(gt), frame.py(v))),
                None if !runs.last().expect("non-empty").is_empty() => runs.push(Vec::new()),
                None => {}
            }
        }
        for run in runs.iter().filter(|r| !r.is_empty()) {
            let _ = writeln!(
                w,
                r#"<polyline class="{}" fill="none" stroke="{}" stroke-width="1.5" points="{}"/>"#,
                s.mode.label(),
                colour(s.mode),
                run.join(" ")
            );
        }
    }

    let mut entries: Vec<(String, SweepMode)> = Vec::new();
    for s in series {
        let label = if witnesses.len() > 1 {
            format!("{} {}", s.witness.label(), s.mode.label())
        } else {
            s.mode.label().to_owned()
        };
        if !entries.iter().any(|(l, _)| *l == label) {
            entries.push((label, s.mode));
        }
    }
    for (i, (label, mode)) in entries.iter().enumerate() {
        let y = top + 16.0 + 16.0 * i as f64;
        let x = right - 90.0;
        let _ = writeln!(
            w,
            r#"<line x1="{x:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{}" stroke-width="1.5"/>"#,
            y - 4.0,
            x + 20.0,
            y - 4.0,
            colour(*mode)
        );
        let _ = writeln!(
            w,
            r#"<text class="legend" x="{:.2}" y="{y:.2}">{}</text>"#,
            x + 26.0,
            escape(label)
        );
    }
    let _ = writeln!(w, "</svg>");
    Ok(svg)
}
