//! Self-contained SVG line charts of effectiveness curves.
//!
//! Output is a single `<svg>` document with inline styling only — no
//! scripts, no external fonts — and every coordinate is formatted with a
//! fixed precision, so identical input yields byte-identical files.

use std::fmt::Write as _;

/// One plotted curve: points are `(p, 1/λ₁)` sorted by `p`.
#[derive(Debug, Clone)]
pub struct Series {
    pub name: String,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 480.0;
const MARGIN_LEFT: f64 = 72.0;
const MARGIN_RIGHT: f64 = 150.0;
const MARGIN_TOP: f64 = 42.0;
const MARGIN_BOTTOM: f64 = 58.0;
const TICKS: usize = 5;

/// Fixed palette, assigned to series in the order given.
const PALETTE: [&str; 8] = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f",
];

fn coord(v: f64) -> String {
    format!("{v:.2}")
}

fn tick_label(v: f64) -> String {
    let s = format!("{v:.4}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s.is_empty() { "0".to_owned() } else { s.to_owned() }
}

/// Render the chart: x = pinned fraction `p`, y = `1/λ₁`, one polyline per
/// series (plus point markers, so single-point series stay visible), legend
/// on the right.
pub fn render_chart(series: &[Series], title: &str) -> String {
    let x_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|&(p, _)| p))
        .fold(0.0_f64, f64::max)
        .max(1e-12);
    let y_max = series
        .iter()
        .flat_map(|s| s.points.iter().map(|&(_, y)| y))
        .fold(0.0_f64, f64::max)
        .max(1e-12)
        * 1.05;

    let plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT;
    let plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM;
    let sx = |p: f64| MARGIN_LEFT + p / x_max * plot_w;
    let sy = |v: f64| MARGIN_TOP + plot_h - v / y_max * plot_h;

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="{WIDTH}" height="{HEIGHT}" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="24" font-family="sans-serif" font-size="16" text-anchor="middle">{}</text>"#,
        coord(MARGIN_LEFT + plot_w / 2.0),
        escape(title)
    )
    .unwrap();

    // Axes with tick marks and labels.
    let x0 = coord(MARGIN_LEFT);
    let y0 = coord(MARGIN_TOP + plot_h);
    let x1 = coord(MARGIN_LEFT + plot_w);
    let y1 = coord(MARGIN_TOP);
    writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}" stroke="black"/>"#).unwrap();
    writeln!(s, r#"<line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}" stroke="black"/>"#).unwrap();
    for i in 0..=TICKS {
        let f = i as f64 / TICKS as f64;
        let tx = coord(MARGIN_LEFT + f * plot_w);
        let ty = coord(MARGIN_TOP + plot_h - f * plot_h);
        writeln!(
            s,
            r#"<line x1="{tx}" y1="{y0}" x2="{tx}" y2="{}" stroke="black"/>"#,
            coord(MARGIN_TOP + plot_h + 5.0)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{tx}" y="{}" font-family="sans-serif" font-size="12" text-anchor="middle">{}</text>"#,
            coord(MARGIN_TOP + plot_h + 20.0),
            tick_label(f * x_max)
        )
        .unwrap();
        writeln!(
            s,
            r#"<line x1="{}" y1="{ty}" x2="{x0}" y2="{ty}" stroke="black"/>"#,
            coord(MARGIN_LEFT - 5.0)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" text-anchor="end">{}</text>"#,
            coord(MARGIN_LEFT - 9.0),
            coord(MARGIN_TOP + plot_h - f * plot_h + 4.0),
            tick_label(f * y_max)
        )
        .unwrap();
    }
    writeln!(
        s,
        r#"<text x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle">p = c / N</text>"#,
        coord(MARGIN_LEFT + plot_w / 2.0),
        coord(HEIGHT - 14.0)
    )
    .unwrap();
    writeln!(
        s,
        r#"<text x="20" y="{}" font-family="sans-serif" font-size="14" text-anchor="middle" transform="rotate(-90 20 {})">1/λ₁</text>"#,
        coord(MARGIN_TOP + plot_h / 2.0),
        coord(MARGIN_TOP + plot_h / 2.0)
    )
    .unwrap();

    // Curves.
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        if ser.points.len() >= 2 {
            let pts: Vec<String> = ser
                .points
                .iter()
                .map(|&(p, v)| format!("{},{}", coord(sx(p)), coord(sy(v))))
                .collect();
            writeln!(
                s,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"#,
                pts.join(" ")
            )
            .unwrap();
        }
        for &(p, v) in &ser.points {
            writeln!(
                s,
                r#"<circle cx="{}" cy="{}" r="3" fill="{color}"/>"#,
                coord(sx(p)),
                coord(sy(v))
            )
            .unwrap();
        }
    }

    // Legend.
    let lx = MARGIN_LEFT + plot_w + 16.0;
    for (i, ser) in series.iter().enumerate() {
        let color = PALETTE[i % PALETTE.len()];
        let ly = MARGIN_TOP + 10.0 + 22.0 * i as f64;
        writeln!(
            s,
            r#"<line x1="{}" y1="{}" x2="{}" y2="{}" stroke="{color}" stroke-width="2"/>"#,
            coord(lx),
            coord(ly),
            coord(lx + 22.0),
            coord(ly)
        )
        .unwrap();
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="13">{}</text>"#,
            coord(lx + 28.0),
            coord(ly + 4.0),
            escape(&ser.name)
        )
        .unwrap();
    }
    s.push_str("</svg>\n");
    s
}

fn escape(text: &str) -> String {
    text.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn demo() -> Vec<Series> {
        vec![
            Series {
                name: "A2".into(),
                points: vec![(0.1, 0.5), (0.2, 0.9), (0.3, 2.0)],
            },
            Series {
                name: "DC".into(),
                points: vec![(0.1, 0.4), (0.2, 0.6), (0.3, 1.1)],
            },
        ]
    }

    #[test]
    fn chart_has_axes_legend_and_one_polyline_per_series() {
        let svg = render_chart(&demo(), "demo");
        assert!(svg.starts_with("<svg "));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<polyline").count(), 2);
        assert!(svg.contains(">A2<") && svg.contains(">DC<"));
        assert!(svg.contains("p = c / N") && svg.contains("1/λ₁"));
    }

    #[test]
    fn single_point_series_renders_a_marker_without_polyline() {
        let svg = render_chart(
            &[Series {
                name: "EXH".into(),
                points: vec![(0.5, 1.0)],
            }],
            "one",
        );
        assert_eq!(svg.matches("<polyline").count(), 0);
        assert_eq!(svg.matches("<circle").count(), 1);
    }

    #[test]
    fn rendering_is_byte_deterministic() {
        assert_eq!(render_chart(&demo(), "t"), render_chart(&demo(), "t"));
    }

    #[test]
    fn titles_are_escaped() {
        let svg = render_chart(&demo(), "a<b&c");
        assert!(svg.contains("a&lt;b&amp;c"));
    }
}
