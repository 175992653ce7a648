//! SVG rendering: membership bar charts and centroid reference diagrams.
//!
//! Output is a single standalone document (viewBox based, no external
//! references). Each distribution gets a chart of five unit-width bars;
//! each comparison gets a reference diagram with the landmark triangle and
//! the two centroid markers. Chart elements carry `data-*` attributes with
//! the exact chart coordinates so the geometry is machine-checkable.

use crate::centroid::reference_points;
use crate::io::{format_decimal_trim, AssessmentReport};
use crate::label::ALL_LABELS;
use crate::Rational;

const CHART_W: f64 = 360.0;
const CHART_H: f64 = 220.0;
const MARGIN: f64 = 40.0;
const GAP: f64 = 30.0;

fn fmt(r: Rational) -> String {
    format_decimal_trim(r, 6)
}

fn fx(v: f64) -> String {
    // fixed decimal layout keeps output byte-identical across runs
    format!("{v:.2}")
}

struct Canvas {
    body: String,
    cursor_y: f64,
}

impl Canvas {
    fn new() -> Self {
        Self { body: String::new(), cursor_y: GAP }
    }

    fn push(&mut self, s: &str) {
        self.body.push_str(s);
        self.body.push('\n');
    }
}

/// Renders the report as one standalone SVG document.
pub fn render_svg(report: &AssessmentReport) -> String {
    let mut canvas = Canvas::new();

    for group in &report.groups {
        for (i, stage) in group.stage_names.iter().enumerate() {
            bar_chart(
                &mut canvas,
                &format!("{} / {}", group.name, stage),
                group.normalized[i].weights(),
                group.centroids[i].x,
                group.centroids[i].y,
            );
        }
    }

    for cmp in &report.comparisons {
        triangle_diagram(&mut canvas, cmp);
    }

    let total_h = canvas.cursor_y + GAP;
    let width = CHART_W + 2.0 * MARGIN;
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {} {}\">\n\
         <rect width=\"{}\" height=\"{}\" fill=\"white\"/>\n{}</svg>\n",
        fx(width),
        fx(total_h),
        fx(width),
        fx(total_h),
        canvas.body
    )
}

fn bar_chart(canvas: &mut Canvas, title: &str, weights: &[Rational; 5], x_c: Rational, y_c: Rational) {
    let top = canvas.cursor_y;
    let x0 = MARGIN;
    let y0 = top + CHART_H; // baseline
    let unit_x = CHART_W / 5.0;
    let unit_y = CHART_H; // membership 1.0 spans the full chart height

    canvas.push(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\">{}</text>",
        fx(x0),
        fx(top - 8.0),
        xml_escape(title)
    ));
    canvas.push(&format!(
        "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"black\"/>",
        fx(x0),
        fx(y0),
        fx(x0 + CHART_W),
        fx(y0)
    ));
    for (i, (label, w)) in ALL_LABELS.iter().zip(weights).enumerate() {
        let h = rational_f64(*w) * unit_y;
        canvas.push(&format!(
            "<rect class=\"bar\" x=\"{}\" y=\"{}\" width=\"{}\" height=\"{}\" \
             fill=\"#4878a8\" stroke=\"black\" data-label=\"{}\" data-height=\"{}\"/>",
            fx(x0 + i as f64 * unit_x),
            fx(y0 - h),
            fx(unit_x),
            fx(h),
            label.symbol(),
            fmt(*w)
        ));
        canvas.push(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\">{}</text>",
            fx(x0 + (i as f64 + 0.5) * unit_x),
            fx(y0 + 14.0),
            label.symbol()
        ));
    }
    // centroid marker in chart coordinates (x in [0,5], y in [0,1])
    let cx = x0 + rational_f64(x_c) * unit_x;
    let cy = y0 - rational_f64(y_c) * unit_y;
    canvas.push(&format!(
        "<circle class=\"centroid\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"#c03030\" \
         data-x=\"{}\" data-y=\"{}\"/>",
        fx(cx),
        fx(cy),
        fmt(x_c),
        fmt(y_c)
    ));
    canvas.cursor_y = y0 + GAP + 20.0;
}

fn triangle_diagram(canvas: &mut Canvas, cmp: &crate::io::ComparisonRecord) {
    let top = canvas.cursor_y;
    let x0 = MARGIN;
    let y0 = top + CHART_H;
    let unit_x = CHART_W / 5.0;
    let unit_y = CHART_H / 0.6; // y axis spans [0, 0.6]
    let place = |x: Rational, y: Rational| {
        (x0 + rational_f64(x) * unit_x, y0 - rational_f64(y) * unit_y)
    };

    let title = format!(
        "{} vs {} / {}: {}",
        cmp.first_group, cmp.second_group, cmp.stage_name, cmp.comparison.verdict
    );
    canvas.push(&format!(
        "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"13\">{}</text>",
        fx(x0),
        fx(top - 8.0),
        xml_escape(&title)
    ));

    let refs = reference_points();
    let pts = [refs.worst, refs.center, refs.ideal];
    let poly: Vec<String> = pts
        .iter()
        .map(|p| {
            let (x, y) = place(p.x, p.y);
            format!("{},{}", fx(x), fx(y))
        })
        .collect();
    canvas.push(&format!(
        "<polygon class=\"reference-triangle\" points=\"{}\" fill=\"none\" stroke=\"#888\" stroke-dasharray=\"4 3\"/>",
        poly.join(" ")
    ));
    for (name, p) in [("F_w", refs.worst), ("F_m", refs.center), ("F_i", refs.ideal)] {
        let (x, y) = place(p.x, p.y);
        canvas.push(&format!(
            "<text x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#555\">{}</text>",
            fx(x + 5.0),
            fx(y - 5.0),
            name
        ));
    }

    let markers = [
        (&cmp.first_group, cmp.comparison.first, "#c03030"),
        (&cmp.second_group, cmp.comparison.second, "#3060b0"),
    ];
    for (idx, (name, point, color)) in markers.iter().enumerate() {
        let (x, y) = place(point.x, point.y);
        canvas.push(&format!(
            "<circle class=\"centroid\" cx=\"{}\" cy=\"{}\" r=\"4\" fill=\"{}\" data-x=\"{}\" data-y=\"{}\"/>",
            fx(x),
            fx(y),
            color,
            fmt(point.x),
            fmt(point.y)
        ));
        // legend
        let ly = top + 10.0 + idx as f64 * 16.0;
        canvas.push(&format!(
            "<rect class=\"legend-swatch\" x=\"{}\" y=\"{}\" width=\"10\" height=\"10\" fill=\"{}\"/>",
            fx(x0 + CHART_W - 120.0),
            fx(ly),
            color
        ));
        canvas.push(&format!(
            "<text class=\"legend\" x=\"{}\" y=\"{}\" font-family=\"sans-serif\" font-size=\"11\">{}</text>",
            fx(x0 + CHART_W - 105.0),
            fx(ly + 9.0),
            xml_escape(name)
        ));
    }
    canvas.cursor_y = y0 + GAP;
}

fn rational_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}
