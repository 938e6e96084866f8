//! A minimal SVG scatter plot, enough to eyeball the scan output.

use std::fmt::Write as _;

pub struct Series<'a> {
    pub name: &'a str,
    pub color: &'a str,
    pub points: Vec<(f64, f64)>,
}

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 500.0;
const MARGIN: f64 = 50.0;

pub fn scatter(title: &str, x_range: (f64, f64), series: &[Series]) -> String {
    let ys = series.iter().flat_map(|s| s.points.iter().map(|p| p.1));
    let (mut y0, mut y1) = ys.fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), y| {
        (lo.min(y), hi.max(y))
    });
    if !y0.is_finite() {
        (y0, y1) = (0.0, 1.0);
    }
    if y1 - y0 < 1e-9 {
        y0 -= 0.5;
        y1 += 0.5;
    }
    let (x0, mut x1) = x_range;
    if x1 - x0 < 1e-9 {
        x1 = x0 + 1.0;
    }
    let sx = |x: f64| MARGIN + (x - x0) / (x1 - x0) * (WIDTH - 2.0 * MARGIN);
    let sy = |y: f64| HEIGHT - MARGIN - (y - y0) / (y1 - y0) * (HEIGHT - 2.0 * MARGIN);

    let mut s = String::new();
    writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    )
    .unwrap();
    writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    writeln!(
        s,
        r#"<text x="{}" y="20" text-anchor="middle" font-family="sans-serif" font-size="14">{}</text>"#,
        WIDTH / 2.0,
        escape(title)
    )
    .unwrap();
    // axes box and range labels
    writeln!(
        s,
        r#"<rect x="{MARGIN}" y="{MARGIN}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    )
    .unwrap();
    for (x, y, anchor, label) in [
        (MARGIN, HEIGHT - MARGIN + 16.0, "start", x0),
        (WIDTH - MARGIN, HEIGHT - MARGIN + 16.0, "end", x1),
        (MARGIN - 4.0, HEIGHT - MARGIN, "end", y0),
        (MARGIN - 4.0, MARGIN + 4.0, "end", y1),
    ] {
        writeln!(
            s,
            r#"<text x="{x}" y="{y}" text-anchor="{anchor}" font-family="sans-serif" font-size="11">{label:.3}</text>"#
        )
        .unwrap();
    }
    for (i, series) in series.iter().enumerate() {
        writeln!(
            s,
            r#"<text x="{}" y="{}" font-family="sans-serif" font-size="12" fill="{}">{}</text>"#,
            WIDTH - MARGIN - 60.0,
            MARGIN + 16.0 + 14.0 * i as f64,
            series.color,
            escape(series.name)
        )
        .unwrap();
        for &(x, y) in &series.points {
            writeln!(
                s,
                r#"<circle cx="{:.2}" cy="{:.2}" r="2" fill="{}"/>"#,
                sx(x),
                sy(y),
                series.color
            )
            .unwrap();
        }
    }
    s.push_str("</svg>\n");
    s
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_circle_per_point() {
        let s = scatter(
            "t",
            (1.0, 2.0),
            &[Series {
                name: "ES",
                color: "red",
                points: vec![(1.0, 0.0), (2.0, 1.0), (1.5, 0.5)],
            }],
        );
        assert!(s.starts_with("<svg"));
        assert_eq!(s.matches("<circle").count(), 3);
    }

    #[test]
    fn empty_plot_is_still_valid() {
        let s = scatter("empty", (0.0, 0.0), &[]);
        assert!(s.trim_end().ends_with("</svg>"));
    }
}
