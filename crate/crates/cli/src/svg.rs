//! Minimal SVG line chart: probability against time, one polyline per trace,
//! each peak labeled.

use std::fmt::Write;

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 420.0;
const LEFT: f64 = 60.0;
const RIGHT: f64 = 20.0;
const TOP: f64 = 20.0;
const BOTTOM: f64 = 50.0;
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf", "#8c564b", "#e377c2",
];

#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    /// `(t, P(t))`.
    pub points: Vec<(f64, f64)>,
}

impl Series {
    /// First point of maximal probability.
    pub fn peak(&self) -> Option<(f64, f64)> {
        self.points
            .iter()
            .copied()
            .fold(None, |best, p| match best {
                Some(b) if b.1 >= p.1 => Some(b),
                _ => Some(p),
            })
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

pub fn render(series: &[Series], title: &str) -> String {
    let t_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|p| p.0))
        .fold(1.0f64, f64::max);
    let plot_w = WIDTH - LEFT - RIGHT;
    let plot_h = HEIGHT - TOP - BOTTOM;
    let x = |t: f64| LEFT + plot_w * t / t_max;
    let y = |p: f64| TOP + plot_h * (1.0 - p.clamp(0.0, 1.0));

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"#
    );
    let _ = writeln!(out, "<title>{}</title>", escape(title));
    let _ = writeln!(
        out,
        r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#
    );
    let _ = writeln!(out, r#"<g class="axes" stroke="black" stroke-width="1">"#);
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{}" x2="{}" y2="{}"/>"#,
        y(0.0),
        x(t_max),
        y(0.0)
    );
    let _ = writeln!(
        out,
        r#"<line x1="{LEFT}" y1="{}" x2="{LEFT}" y2="{}"/>"#,
        y(0.0),
        y(1.0)
    );
    let _ = writeln!(out, "</g>");
    let _ = writeln!(out, r#"<g class="ticks" fill="black">"#);
    for k in 0..=4 {
        let p = k as f64 / 4.0;
        let _ = writeln!(
            out,
            r#"<text class="axis" x="{}" y="{:.2}" text-anchor="end">{p}</text>"#,
            LEFT - 6.0,
            y(p) + 4.0
        );
        let t = t_max * p;
        let _ = writeln!(
            out,
            r#"<text class="axis" x="{:.2}" y="{}" text-anchor="middle">{}</text>"#,
            x(t),
            y(0.0) + 16.0,
            t.round()
        );
    }
    let _ = writeln!(
        out,
        r#"<text class="axis" x="{}" y="{}" text-anchor="middle">t</text>"#,
        LEFT + plot_w / 2.0,
        HEIGHT - 10.0
    );
    let _ = writeln!(
        out,
        r#"<text class="axis" x="14" y="{}" text-anchor="middle" transform="rotate(-90 14 {})">P(t)</text>"#,
        TOP + plot_h / 2.0,
        TOP + plot_h / 2.0
    );
    let _ = writeln!(out, "</g>");

    for (i, s) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let pts: Vec<String> = s
            .points
            .iter()
            .map(|&(t, p)| format!("{:.2},{:.2}", x(t), y(p)))
            .collect();
        let _ = writeln!(
            out,
            r#"<polyline class="trace" fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
            pts.join(" ")
        );
        if let Some((t, p)) = s.peak() {
            let _ = writeln!(
                out,
                r#"<text class="peak-label" x="{:.2}" y="{:.2}" fill="{color}" text-anchor="middle">{}</text>"#,
                x(t),
                (y(p) - 6.0).max(TOP - 4.0),
                escape(&s.label)
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn peaks() {
        let s = Series {
            label: "1/3".into(),
            points: vec![(0.0, 0.2), (1.0, 0.9), (2.0, 0.9), (3.0, 0.1)],
        };
        assert_eq!(s.peak(), Some((1.0, 0.9)));
        assert_eq!(
            Series {
                label: String::new(),
                points: vec![]
            }
            .peak(),
            None
        );
    }

    #[test]
    fn labels_are_escaped() {
        let svg = render(
            &[Series {
                label: "a<b".into(),
                points: vec![(0.0, 0.5)],
            }],
            "x & y",
        );
        assert!(svg.contains("a&lt;b"));
        assert!(svg.contains("x &amp; y"));
    }
}
