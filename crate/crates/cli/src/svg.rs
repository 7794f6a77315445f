// Copyright 2026 abcage Contributors
// SPDX-License-Identifier: Apache-2.0

//! Bare-bones SVG scatter panels and heatmaps. Decorative only.

use std::fmt::Write;

const PANEL_W: f64 = 360.0;
const PANEL_H: f64 = 260.0;
const MARGIN: f64 = 48.0;

pub struct Panel<'a> {
    pub xlabel: &'a str,
    pub ylabel: &'a str,
    pub points: Vec<(f64, f64)>,
}

fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if !lo.is_finite() {
        return (-1.0, 1.0);
    }
    if hi - lo < 1e-12 {
        return (lo - 1.0, hi + 1.0);
    }
    let pad = 0.05 * (hi - lo);
    (lo - pad, hi + pad)
}

fn header(out: &mut String, width: f64, height: f64, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="18" text-anchor="middle" font-size="13">{}</text>"#,
        width / 2.0,
        escape(title)
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn axes(
    out: &mut String,
    x0: f64,
    y0: f64,
    xr: (f64, f64),
    yr: (f64, f64),
    xlabel: &str,
    ylabel: &str,
) {
    let (w, h) = (PANEL_W - 2.0 * MARGIN, PANEL_H - 2.0 * MARGIN);
    let _ = writeln!(
        out,
        r#"<rect x="{:.1}" y="{:.1}" width="{w:.1}" height="{h:.1}" fill="none" stroke="black"/>"#,
        x0 + MARGIN,
        y0 + MARGIN
    );
    let bottom = y0 + PANEL_H - MARGIN;
    for (x, v) in [(x0 + MARGIN, xr.0), (x0 + PANEL_W - MARGIN, xr.1)] {
        let _ = writeln!(
            out,
            r#"<text x="{x:.1}" y="{:.1}" text-anchor="middle">{v:.3}</text>"#,
            bottom + 14.0
        );
    }
    for (y, v) in [(bottom, yr.0), (y0 + MARGIN, yr.1)] {
        let _ = writeln!(
            out,
            r#"<text x="{:.1}" y="{:.1}" text-anchor="end">{v:.3}</text>"#,
            x0 + MARGIN - 4.0,
            y + 4.0
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        x0 + PANEL_W / 2.0,
        bottom + 30.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle" transform="rotate(-90 {:.1} {:.1})">{}</text>"#,
        x0 + 12.0,
        y0 + PANEL_H / 2.0,
        x0 + 12.0,
        y0 + PANEL_H / 2.0,
        escape(ylabel)
    );
}

/// Side-by-side scatter panels.
pub fn scatter(title: &str, panels: &[Panel]) -> String {
    let width = PANEL_W * panels.len().max(1) as f64;
    let height = PANEL_H + 24.0;
    let mut out = String::new();
    header(&mut out, width, height, title);
    for (i, p) in panels.iter().enumerate() {
        let x0 = PANEL_W * i as f64;
        let y0 = 24.0;
        let xr = range(p.points.iter().map(|q| q.0));
        let yr = range(p.points.iter().map(|q| q.1));
        axes(&mut out, x0, y0, xr, yr, p.xlabel, p.ylabel);
        let (w, h) = (PANEL_W - 2.0 * MARGIN, PANEL_H - 2.0 * MARGIN);
        for &(x, y) in p
            .points
            .iter()
            .filter(|q| q.0.is_finite() && q.1.is_finite())
        {
            let cx = x0 + MARGIN + (x - xr.0) / (xr.1 - xr.0) * w;
            let cy = y0 + MARGIN + (1.0 - (y - yr.0) / (yr.1 - yr.0)) * h;
            let _ = writeln!(
                out,
                r##"<circle cx="{cx:.2}" cy="{cy:.2}" r="2" fill="#1f5fa8"/>"##
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Heatmap with `values[column][row]` in `[0, 1]`; row 0 is drawn at the top.
pub fn heatmap(title: &str, xlabel: &str, ylabel: &str, x: &[f64], values: &[Vec<f64>]) -> String {
    let rows = values.first().map_or(0, Vec::len);
    let cols = values.len();
    let mut out = String::new();
    let (w, h) = (PANEL_W * 1.5, PANEL_H);
    header(&mut out, w + 2.0 * MARGIN, h + 2.0 * MARGIN + 24.0, title);
    let (x0, y0) = (MARGIN, MARGIN + 24.0);
    if rows > 0 && cols > 0 {
        let cw = w / cols as f64;
        let rh = h / rows as f64;
        for (c, column) in values.iter().enumerate() {
            for (r, v) in column.iter().enumerate() {
                let level = (255.0 * (1.0 - v.clamp(0.0, 1.0))).round() as u8;
                let _ = writeln!(
                    out,
                    r#"<rect x="{:.2}" y="{:.2}" width="{:.2}" height="{:.2}" fill="rgb(255,{level},{level})"/>"#,
                    x0 + c as f64 * cw,
                    y0 + r as f64 * rh,
                    cw + 0.05,
                    rh + 0.05
                );
            }
        }
    }
    let _ = writeln!(
        out,
        r#"<rect x="{x0:.1}" y="{y0:.1}" width="{w:.1}" height="{h:.1}" fill="none" stroke="black"/>"#
    );
    if let (Some(first), Some(last)) = (x.first(), x.last()) {
        for (px, v) in [(x0, first), (x0 + w, last)] {
            let _ = writeln!(
                out,
                r#"<text x="{px:.1}" y="{:.1}" text-anchor="middle">{v:.3}</text>"#,
                y0 + h + 14.0
            );
        }
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.1}" y="{:.1}" text-anchor="middle">{}</text>"#,
        x0 + w / 2.0,
        y0 + h + 30.0,
        escape(xlabel)
    );
    let _ = writeln!(
        out,
        r#"<text x="14" y="{:.1}" text-anchor="middle" transform="rotate(-90 14 {:.1})">{}</text>"#,
        y0 + h / 2.0,
        y0 + h / 2.0,
        escape(ylabel)
    );
    out.push_str("</svg>\n");
    out
}
