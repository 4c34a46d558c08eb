//! SVG drawings of level-1 configurations.

use std::collections::BTreeSet;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use snf_core::glp::{decide_glp_even, Verdict};
use snf_core::model::global_barycenter;
use snf_core::FractalSpec;

#[derive(Debug, Clone, PartialEq)]
pub struct RenderOptions {
    pub show_labels: bool,
    pub show_classes: bool,
    pub show_slices: bool,
    /// Cells to outline in red; a `NoGlp` verdict's witness is used when
    /// this is `None`.
    pub highlight_cycle: Option<Vec<usize>>,
    /// Pixels per unit length.
    pub scale: f64,
    /// Blank border around the drawing, in units.
    pub margin: f64,
}

impl Default for RenderOptions {
    fn default() -> Self {
        Self {
            show_labels: false,
            show_classes: false,
            show_slices: false,
            highlight_cycle: None,
            scale: 60.0,
            margin: 0.5,
        }
    }
}

const CELL_FILL: &str = "#e6e6e6";
const CLASS_FILLS: [&str; 2] = ["#cfe2f3", "#f9cb9c"];
const WITNESS: &str = "#d62728";

/// Letter for small alphabets, residue otherwise.
pub fn label_text(k: usize, label: usize) -> String {
    if k <= 26 {
        char::from(b'A' + label as u8).to_string()
    } else {
        label.to_string()
    }
}

fn unit_circle(k: usize, j: usize) -> (f64, f64) {
    let t = TAU * j as f64 / k as f64;
    (t.cos(), t.sin())
}

/// Renders the spec; `verdict` supplies labels and the witness cycle.
pub fn render_svg(spec: &FractalSpec, verdict: Option<&Verdict>, options: &RenderOptions) -> String {
    assert!(options.scale > 0.0, "scale must be positive");
    let k = spec.k();
    let s = options.scale;
    let centres: Vec<(f64, f64)> = spec.barycenters().map(|b| b.to_cartesian()).collect();
    let vertex = |i: usize, j: usize| {
        let (dx, dy) = unit_circle(k, j);
        (centres[i].0 + dx, centres[i].1 + dy)
    };
    // page coordinates: y grows downwards
    let px = |p: (f64, f64)| (p.0 * s, -p.1 * s);

    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for i in 0..spec.len() {
        for j in 0..k {
            let (x, y) = vertex(i, j);
            min_x = min_x.min(x);
            max_x = max_x.max(x);
            min_y = min_y.min(y);
            max_y = max_y.max(y);
        }
    }
    let m = options.margin;
    let (vx, vy) = ((min_x - m) * s, -(max_y + m) * s);
    let (vw, vh) = ((max_x - min_x + 2.0 * m) * s, (max_y - min_y + 2.0 * m) * s);

    let classes = if options.show_classes && k % 2 == 0 {
        decide_glp_even(spec).ok().and_then(|d| d.classes)
    } else {
        None
    };
    let highlight: Vec<usize> = options
        .highlight_cycle
        .clone()
        .or_else(|| verdict.and_then(|v| v.witness().map(<[usize]>::to_vec)))
        .unwrap_or_default();
    let highlighted: BTreeSet<usize> = highlight.iter().copied().collect();

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{vw:.6}\" height=\"{vh:.6}\" viewBox=\"{vx:.6} {vy:.6} {vw:.6} {vh:.6}\">"
    );

    out.push_str("<g id=\"cells\">\n");
    for i in 0..spec.len() {
        let points: Vec<String> = (0..k)
            .map(|j| {
                let (x, y) = px(vertex(i, j));
                format!("{x:.6},{y:.6}")
            })
            .collect();
        let fill = match &classes {
            Some(c) => CLASS_FILLS[c[i] as usize - 1],
            None => CELL_FILL,
        };
        let (stroke, width) = if highlighted.contains(&i) { (WITNESS, 2.5) } else { ("#000000", 1.0) };
        let _ = writeln!(
            out,
            "<polygon data-cell=\"{i}\" points=\"{}\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"{width:.6}\"/>",
            points.join(" ")
        );
    }
    out.push_str("</g>\n");

    out.push_str("<g id=\"vertices\">\n");
    for i in 0..spec.len() {
        for j in 0..k {
            let (x, y) = px(vertex(i, j));
            let _ = writeln!(out, "<circle cx=\"{x:.6}\" cy=\"{y:.6}\" r=\"{:.6}\" fill=\"#000000\"/>", 0.04 * s);
        }
    }
    out.push_str("</g>\n");

    if options.show_labels {
        if let Some(labeling) = verdict.and_then(Verdict::labeling) {
            out.push_str("<g id=\"labels\" font-family=\"sans-serif\" text-anchor=\"middle\">\n");
            let font = 0.22 * s;
            for v in &labeling.labels {
                let (x, y) = px(v.point.to_cartesian());
                let _ = writeln!(
                    out,
                    "<text x=\"{x:.6}\" y=\"{:.6}\" font-size=\"{font:.6}\">{}</text>",
                    y - 0.08 * s,
                    label_text(k, v.label)
                );
            }
            out.push_str("</g>\n");
        }
    }

    if let Some(classes) = &classes {
        out.push_str("<g id=\"classes\" font-family=\"sans-serif\" text-anchor=\"middle\">\n");
        for (i, c) in classes.iter().enumerate() {
            let (x, y) = px(centres[i]);
            let _ = writeln!(
                out,
                "<text x=\"{x:.6}\" y=\"{:.6}\" font-size=\"{:.6}\">{c}</text>",
                y + 0.1 * s,
                0.3 * s
            );
        }
        out.push_str("</g>\n");
    }

    if options.show_slices {
        let (sum, n) = global_barycenter(spec);
        let (cx, cy) = sum.to_cartesian();
        let origin = (cx / n as f64, cy / n as f64);
        let reach = (max_x - min_x).hypot(max_y - min_y);
        out.push_str("<g id=\"slices\" stroke=\"#555555\" stroke-dasharray=\"6 4\">\n");
        for j in 0..k {
            let (dx, dy) = unit_circle(k, j);
            let (x1, y1) = px(origin);
            let (x2, y2) = px((origin.0 + reach * dx, origin.1 + reach * dy));
            let _ = writeln!(out, "<line x1=\"{x1:.6}\" y1=\"{y1:.6}\" x2=\"{x2:.6}\" y2=\"{y2:.6}\"/>");
        }
        out.push_str("</g>\n");
    }

    if highlight.len() >= 2 && highlight.iter().all(|&i| i < spec.len()) {
        let points: Vec<String> = highlight
            .iter()
            .map(|&i| {
                let (x, y) = px(centres[i]);
                format!("{x:.6},{y:.6}")
            })
            .collect();
        let _ = writeln!(
            out,
            "<polygon id=\"witness\" points=\"{}\" fill=\"none\" stroke=\"{WITNESS}\" stroke-width=\"{:.6}\"/>",
            points.join(" "),
            0.05 * s
        );
    }
    out.push_str("</svg>\n");
    out
}
