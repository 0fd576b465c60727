//! Minimal deterministic SVG charts: fixed viewbox, fixed number
//! formatting, colours keyed by series label.

use std::fmt::Write as _;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const TICKS: usize = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    /// Join the points with a polyline as well as marking them.
    pub line: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Chart {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<Series>,
    /// Labelled horizontal reference lines.
    pub references: Vec<(String, f64)>,
    /// Draw the `y = x` breakeven line.
    pub diagonal: bool,
}

pub fn colour(label: &str) -> &'static str {
    match label {
        "qaoa" => "#1f77b4",
        "sdp" => "#ff7f0e",
        "exact" => "#2ca02c",
        "brute" => "#9467bd",
        _ => "#7f7f7f",
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

/// `[lo, hi]` padded by 5%, widened when degenerate.
fn range(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        return (0.0, 1.0);
    }
    let span = hi - lo;
    if span <= 1e-12 * (1.0 + lo.abs()) {
        return (lo - 0.5, hi + 0.5);
    }
    (lo - 0.05 * span, hi + 0.05 * span)
}

fn fmt(v: f64) -> String {
    let s = format!("{v:.3}");
    if s == "-0.000" {
        "0.000".into()
    } else {
        s
    }
}

pub fn render(chart: &Chart) -> String {
    let xs = chart.series.iter().flat_map(|s| s.points.iter().map(|p| p.0));
    let ys = chart.series.iter().flat_map(|s| s.points.iter().map(|p| p.1));
    let refs = chart.references.iter().map(|r| r.1);
    let (mut x0, mut x1) = range(xs.clone());
    let (mut y0, mut y1) = range(ys.clone().chain(refs));
    if chart.diagonal {
        let (lo, hi) = range(xs.chain(ys));
        (x0, x1, y0, y1) = (lo, hi, lo, hi);
    }
    let px = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
    let _ = writeln!(s, r#"<text x="{}" y="24" text-anchor="middle" font-size="14">{}</text>"#, WIDTH / 2.0, escape(&chart.title));
    let (l, r, t, b) = (MARGIN, WIDTH - MARGIN, MARGIN, HEIGHT - MARGIN);
    let _ = writeln!(s, r#"<path d="M{l} {t} L{l} {b} L{r} {b}" fill="none" stroke="black"/>"#);
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let (xv, yv) = (x0 + f * (x1 - x0), y0 + f * (y1 - y0));
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, fmt(px(xv)), b + 18.0, fmt(xv));
        let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="end">{}</text>"#, l - 6.0, fmt(py(yv) + 4.0), fmt(yv));
    }
    let _ = writeln!(s, r#"<text x="{}" y="{}" text-anchor="middle">{}</text>"#, WIDTH / 2.0, HEIGHT - 16.0, escape(&chart.x_label));
    let _ = writeln!(
        s,
        r#"<text x="16" y="{}" text-anchor="middle" transform="rotate(-90 16 {})">{}</text>"#,
        HEIGHT / 2.0,
        HEIGHT / 2.0,
        escape(&chart.y_label)
    );
    if chart.diagonal {
        let (lo, hi) = (x0.max(y0), x1.min(y1));
        let _ = writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="red" stroke-dasharray="2 4"/>"#,
            fmt(px(lo)),
            fmt(py(lo)),
            fmt(px(hi)),
            fmt(py(hi))
        );
    }
    for (label, v) in &chart.references {
        let _ = writeln!(
            s,
            r#"<line x1="{l}" y1="{y}" x2="{r}" y2="{y}" stroke="{c}" stroke-dasharray="6 3"/><text x="{r}" y="{ty}" text-anchor="end" fill="{c}">{}</text>"#,
            escape(label),
            y = fmt(py(*v)),
            ty = fmt(py(*v) - 4.0),
            c = colour(label)
        );
    }
    for series in &chart.series {
        let c = colour(&series.label);
        if series.line && series.points.len() > 1 {
            let pts: Vec<String> = series.points.iter().map(|&(x, y)| format!("{},{}", fmt(px(x)), fmt(py(y)))).collect();
            let _ = writeln!(s, r#"<polyline points="{}" fill="none" stroke="{c}"/>"#, pts.join(" "));
        }
        for &(x, y) in &series.points {
            let _ = writeln!(s, r#"<circle cx="{}" cy="{}" r="3" fill="{c}"/>"#, fmt(px(x)), fmt(py(y)));
        }
    }
    for (i, series) in chart.series.iter().enumerate() {
        let y = MARGIN + 16.0 * i as f64;
        let _ = writeln!(
            s,
            r#"<rect x="{}" y="{}" width="10" height="10" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            r + 6.0,
            y - 9.0,
            colour(&series.label),
            r + 20.0,
            y,
            escape(&series.label)
        );
    }
    s.push_str("</svg>\n");
    s
}
