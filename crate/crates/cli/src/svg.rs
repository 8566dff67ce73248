//! Minimal self-contained SVG line plots: linear axes, a handful of
//! polylines, corner tick labels. No external resources.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 560.0;
const MARGIN: f64 = 56.0;

pub struct Plot {
    x_range: (f64, f64),
    y_range: (f64, f64),
    shapes: String,
}

impl Plot {
    /// A plot covering the given data ranges (padded slightly on y).
    pub fn new(x_range: (f64, f64), y_range: (f64, f64)) -> Self {
        let pad = 0.05 * (y_range.1 - y_range.0).max(1e-12);
        Self {
            x_range,
            y_range: (y_range.0 - pad, y_range.1 + pad),
            shapes: String::new(),
        }
    }

    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        let fx = (x - self.x_range.0) / (self.x_range.1 - self.x_range.0).max(1e-300);
        let fy = (y - self.y_range.0) / (self.y_range.1 - self.y_range.0).max(1e-300);
        (
            MARGIN + fx * (WIDTH - 2.0 * MARGIN),
            HEIGHT - MARGIN - fy * (HEIGHT - 2.0 * MARGIN),
        )
    }

    pub fn polyline(&mut self, points: &[(f64, f64)], stroke: &str, dashed: bool) {
        if points.is_empty() {
            return;
        }
        let mut d = String::new();
        for (i, &(x, y)) in points.iter().enumerate() {
            let (px, py) = self.map(x, y);
            let _ = write!(d, "{}{px:.2},{py:.2}", if i == 0 { "" } else { " " });
        }
        let dash = if dashed { " stroke-dasharray=\"6,4\"" } else { "" };
        let _ = writeln!(
            self.shapes,
            "  <polyline points=\"{d}\" fill=\"none\" stroke=\"{stroke}\" stroke-width=\"1.5\"{dash}/>"
        );
    }

    pub fn render(self, x_label: &str, y_label: &str) -> String {
        let (x0, x1) = self.x_range;
        let (y0, y1) = self.y_range;
        let left = MARGIN;
        let right = WIDTH - MARGIN;
        let top = MARGIN;
        let bottom = HEIGHT - MARGIN;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
             viewBox=\"0 0 {WIDTH} {HEIGHT}\">"
        );
        let _ = writeln!(
            s,
            "  <rect width=\"{WIDTH}\" height=\"{HEIGHT}\" fill=\"white\"/>"
        );
        let _ = writeln!(
            s,
            "  <line x1=\"{left}\" y1=\"{bottom}\" x2=\"{right}\" y2=\"{bottom}\" stroke=\"black\"/>"
        );
        let _ = writeln!(
            s,
            "  <line x1=\"{left}\" y1=\"{top}\" x2=\"{left}\" y2=\"{bottom}\" stroke=\"black\"/>"
        );
        s.push_str(&self.shapes);
        let text = |s: &mut String, x: f64, y: f64, anchor: &str, label: &str| {
            let _ = writeln!(
                s,
                "  <text x=\"{x:.1}\" y=\"{y:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
                 text-anchor=\"{anchor}\">{label}</text>"
            );
        };
        text(&mut s, left, bottom + 16.0, "middle", &trim(x0));
        text(&mut s, right, bottom + 16.0, "middle", &trim(x1));
        text(&mut s, left - 6.0, bottom + 4.0, "end", &trim(y0));
        text(&mut s, left - 6.0, top + 4.0, "end", &trim(y1));
        text(&mut s, (left + right) / 2.0, bottom + 32.0, "middle", x_label);
        let _ = writeln!(
            s,
            "  <text x=\"16\" y=\"{:.1}\" font-family=\"sans-serif\" font-size=\"12\" \
             text-anchor=\"middle\" transform=\"rotate(-90 16 {:.1})\">{y_label}</text>",
            (top + bottom) / 2.0,
            (top + bottom) / 2.0
        );
        s.push_str("</svg>\n");
        s
    }
}

fn trim(v: f64) -> String {
    let s = format!("{v:.2}");
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
