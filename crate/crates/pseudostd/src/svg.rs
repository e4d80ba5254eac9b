//! Static SVG line chart of a complexity profile against the line `4n`.

use std::fmt::Write;

use pseudostandard_core::complexity::ComplexityRow;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 400.0;
const MARGIN: f64 = 50.0;

pub fn complexity_chart(title: &str, rows: &[ComplexityRow]) -> String {
    let n_max = rows.last().map_or(1, |r| r.n).max(1) as f64;
    let y_max = rows
        .iter()
        .map(|r| r.c as f64)
        .fold(4.0 * n_max, f64::max)
        .max(1.0);
    let x = |n: f64| MARGIN + n / n_max * (WIDTH - 2.0 * MARGIN);
    let y = |v: f64| HEIGHT - MARGIN - v / y_max * (HEIGHT - 2.0 * MARGIN);
    let (x0, y0, x1, y1) = (x(0.0), y(0.0), x(n_max), y(y_max));

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(out, r#"<text x="{}" y="24" font-family="monospace" font-size="14" text-anchor="middle">{}</text>"#, WIDTH / 2.0, escape(title));
    let _ = writeln!(out, r#"<line x1="{x0:.1}" y1="{y0:.1}" x2="{x1:.1}" y2="{y0:.1}" stroke="black"/>"#);
    let _ = writeln!(out, r#"<line x1="{x0:.1}" y1="{y0:.1}" x2="{x0:.1}" y2="{y1:.1}" stroke="black"/>"#);
    let _ = writeln!(out, r#"<text x="{x1:.1}" y="{:.1}" font-family="monospace" font-size="12" text-anchor="end">n = {}</text>"#, y0 + 20.0, n_max);
    let _ = writeln!(out, r#"<text x="{:.1}" y="{y1:.1}" font-family="monospace" font-size="12" text-anchor="end">{}</text>"#, x0 - 6.0, y_max);
    let _ = writeln!(
        out,
        r#"<line x1="{x0:.1}" y1="{y0:.1}" x2="{x1:.1}" y2="{:.1}" stroke="gray" stroke-dasharray="6 4"/>"#,
        y(4.0 * n_max)
    );
    let points: Vec<String> = rows
        .iter()
        .map(|r| format!("{:.1},{:.1}", x(r.n as f64), y(r.c as f64)))
        .collect();
    let _ = writeln!(out, r#"<polyline fill="none" stroke="steelblue" stroke-width="2" points="{}"/>"#, points.join(" "));
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12" fill="steelblue">C(n)</text>"#, x0 + 10.0, y1 + 14.0);
    let _ = writeln!(out, r#"<text x="{:.1}" y="{:.1}" font-family="monospace" font-size="12" fill="gray">4n</text>"#, x0 + 10.0, y1 + 30.0);
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
