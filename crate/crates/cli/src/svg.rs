//! Minimal SVG line plots in the `(tanh(ρ/2), t)` plane.

use std::fmt::Write;

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 640.0;
const MARGIN: f64 = 40.0;
const COLORS: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub dashed: bool,
}

pub struct Plot {
    pub title: String,
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
    pub series: Vec<Series>,
    /// Horizontal reference lines `(y, label)`.
    pub hlines: Vec<(f64, String)>,
    /// Vertical reference lines `(x, label)`.
    pub vlines: Vec<(f64, String)>,
}

impl Plot {
    pub fn new(title: impl Into<String>, x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        Self { title: title.into(), x_range, y_range, series: Vec::new(), hlines: Vec::new(), vlines: Vec::new() }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        let px = MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
        let py = HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);
        (px, py)
    }

    fn inside(&self, y: f64) -> bool {
        y.is_finite() && y >= self.y_range.0 && y <= self.y_range.1
    }

    pub fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
        );
        let _ = writeln!(s, r#"<title>{}</title>"#, escape(&self.title));
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#);
        let (ax0, ay0) = self.map(self.x_range.0, self.y_range.0);
        let (ax1, ay1) = self.map(self.x_range.1, self.y_range.1);
        let _ = writeln!(
            s,
            r#"<rect class="frame" x="{:.3}" y="{:.3}" width="{:.3}" height="{:.3}" fill="none" stroke="black"/>"#,
            ax0,
            ay1,
            ax1 - ax0,
            ay0 - ay1
        );
        for (y, label) in &self.hlines {
            let (x0, py) = self.map(self.x_range.0, *y);
            let (x1, _) = self.map(self.x_range.1, *y);
            let _ = writeln!(
                s,
                r#"<line class="reference" x1="{x0:.3}" y1="{py:.3}" x2="{x1:.3}" y2="{py:.3}" stroke="gray" stroke-dasharray="2,4"><title>{}</title></line>"#,
                escape(label)
            );
        }
        for (x, label) in &self.vlines {
            let (px, y0) = self.map(*x, self.y_range.0);
            let (_, y1) = self.map(*x, self.y_range.1);
            let _ = writeln!(
                s,
                r#"<line class="reference" x1="{px:.3}" y1="{y0:.3}" x2="{px:.3}" y2="{y1:.3}" stroke="gray" stroke-dasharray="2,4"><title>{}</title></line>"#,
                escape(label)
            );
        }
        for (i, series) in self.series.iter().enumerate() {
            let color = COLORS[i % COLORS.len()];
            let dash = if series.dashed { r#" stroke-dasharray="6,3""# } else { "" };
            // Break the polyline wherever it leaves the plotting window.
            for run in series.points.split(|&(_, y)| !self.inside(y)).filter(|r| r.len() > 1) {
                let pts: Vec<String> = run
                    .iter()
                    .map(|&(x, y)| {
                        let (px, py) = self.map(x, y);
                        format!("{px:.4},{py:.4}")
                    })
                    .collect();
                let _ = writeln!(
                    s,
                    r#"<polyline class="series" data-label="{}" fill="none" stroke="{color}" stroke-width="1.5"{dash} points="{}"/>"#,
                    escape(&series.label),
                    pts.join(" ")
                );
            }
            let _ = writeln!(
                s,
                r#"<text x="{:.1}" y="{:.1}" font-size="12" fill="{color}">{}</text>"#,
                MARGIN + 8.0,
                MARGIN + 16.0 * (i + 1) as f64,
                escape(&series.label)
            );
        }
        let _ = writeln!(s, r#"<text x="{:.1}" y="{:.1}" font-size="14">{}</text>"#, MARGIN, MARGIN - 12.0, escape(&self.title));
        s.push_str("</svg>\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}
