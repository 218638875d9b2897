//! Deterministic SVG 1.1 renderings.
//!
//! The whole complex is drawn in light grey; chain edges are drawn on top
//! with an arrowhead in the direction of their coefficient's sign and a
//! stroke width growing with `|coefficient|`. Decomposition components take
//! colours from a fixed palette by index. Coordinates are printed with two
//! decimals, so equal inputs give byte-identical files.

use std::fmt::Write as _;

use thiserror::Error;

use crate::chain::Chain1;
use crate::complex::{MetricComplex, Side};
use crate::curves::CurvePiece;
use crate::decompose::Decomposition;
use crate::planar::PixelSet;
use crate::rational::to_f64;
use crate::report::BatchReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RenderError {
    #[error("complex has vertices without coordinates")]
    MissingCoordinates,
    #[error("object belongs to a different complex")]
    ComplexMismatch,
}

pub const PALETTE: [&str; 8] = ["#d62728", "#1f77b4", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#17becf"];

const SIZE: f64 = 480.0;
const MARGIN: f64 = 40.0;
const BACKGROUND_EDGE: &str = "#c8c8c8";

/// Maps data coordinates to the canvas, flipping `y` so it points up.
struct Frame {
    min: [f64; 2],
    scale: f64,
    height: f64,
}

impl Frame {
    fn fit(points: impl Iterator<Item = [f64; 2]>) -> Frame {
        let mut min = [f64::INFINITY; 2];
        let mut max = [f64::NEG_INFINITY; 2];
        for p in points {
            for k in 0..2 {
                min[k] = min[k].min(p[k]);
                max[k] = max[k].max(p[k]);
            }
        }
        if !min[0].is_finite() {
            min = [0.0, 0.0];
            max = [1.0, 1.0];
        }
        let span = (max[0] - min[0]).max(max[1] - min[1]).max(1e-9);
        let scale = (SIZE - 2.0 * MARGIN) / span;
        Frame { min, scale, height: (max[1] - min[1]) * scale + 2.0 * MARGIN }
    }

    fn width(&self, max_x: f64) -> f64 {
        (max_x - self.min[0]) * self.scale + 2.0 * MARGIN
    }

    fn map(&self, p: [f64; 2]) -> (f64, f64) {
        (MARGIN + (p[0] - self.min[0]) * self.scale, self.height - MARGIN - (p[1] - self.min[1]) * self.scale)
    }
}

struct Canvas {
    body: String,
    markers: Vec<&'static str>,
}

impl Canvas {
    fn new() -> Self {
        Canvas { body: String::new(), markers: Vec::new() }
    }

    fn marker(&mut self, color: &'static str) -> usize {
        match self.markers.iter().position(|&c| c == color) {
            Some(i) => i,
            None => {
                self.markers.push(color);
                self.markers.len() - 1
            }
        }
    }

    fn finish(self, width: f64, height: f64) -> String {
        let mut out = String::new();
        writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#).expect("write to string");
        writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
        )
        .expect("write to string");
        out.push_str("<defs>\n");
        for (i, color) in self.markers.iter().enumerate() {
            writeln!(
                out,
                r#"<marker id="arrow{i}" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="6" markerHeight="6" orient="auto"><path d="M0,0 L10,5 L0,10 z" fill="{color}"/></marker>"#
            )
            .expect("write to string");
        }
        out.push_str("</defs>\n");
        writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).expect("write to string");
        out.push_str(&self.body);
        out.push_str("</svg>\n");
        out
    }
}

fn axes(canvas: &mut Canvas, frame: &Frame, width: f64) {
    let (x0, y0) = (MARGIN / 2.0, frame.height - MARGIN / 2.0);
    writeln!(
        canvas.body,
        r##"<g class="axes" stroke="#404040" stroke-width="1"><line x1="{x0:.2}" y1="{y0:.2}" x2="{:.2}" y2="{y0:.2}"/><line x1="{x0:.2}" y1="{y0:.2}" x2="{x0:.2}" y2="{:.2}"/></g>"##,
        width - MARGIN / 2.0,
        MARGIN / 2.0,
    )
    .expect("write to string");
}

fn coords(cx: &MetricComplex) -> Result<Vec<[f64; 2]>, RenderError> {
    cx.vertices().iter().map(|v| v.coords.ok_or(RenderError::MissingCoordinates)).collect()
}

/// Path data for one edge, traversed in the direction of `sign`. Parallel
/// edges bend apart; self-loops become small circles above their vertex.
fn edge_path(cx: &MetricComplex, frame: &Frame, pts: &[[f64; 2]], side: Side) -> String {
    let e = cx.edge(side.edge);
    let (a, b) = if side.sign > 0 { (e.tail, e.head) } else { (e.head, e.tail) };
    let (x1, y1) = frame.map(pts[a]);
    let (x2, y2) = frame.map(pts[b]);
    let rank = cx
        .incident_edges(e.tail)
        .iter()
        .filter(|&&o| {
            let f = cx.edge(o);
            (f.tail, f.head) == (e.tail, e.head) || (f.tail, f.head) == (e.head, e.tail)
        })
        .position(|&o| o == side.edge)
        .unwrap_or(0);
    if a == b {
        let r = 12.0 + 6.0 * rank as f64;
        let sweep = if side.sign > 0 { 1 } else { 0 };
        return format!("M{x1:.2},{y1:.2} a{r:.2},{r:.2} 0 1,{sweep} 0.01,0");
    }
    if rank == 0 {
        return format!("M{x1:.2},{y1:.2} L{x2:.2},{y2:.2}");
    }
    // Bend perpendicular to the stored orientation so both directions agree.
    let (sx, sy) = frame.map(pts[e.tail]);
    let (hx, hy) = frame.map(pts[e.head]);
    let (dx, dy) = (hx - sx, hy - sy);
    let len = (dx * dx + dy * dy).sqrt().max(1e-9);
    let off = 14.0 * rank as f64;
    let (cxp, cyp) = ((x1 + x2) / 2.0 - dy / len * off, (y1 + y2) / 2.0 + dx / len * off);
    format!("M{x1:.2},{y1:.2} Q{cxp:.2},{cyp:.2} {x2:.2},{y2:.2}")
}

fn draw_background(canvas: &mut Canvas, cx: &MetricComplex, frame: &Frame, pts: &[[f64; 2]]) {
    canvas.body.push_str("<g class=\"complex\">\n");
    for i in 0..cx.edges().len() {
        let d = edge_path(cx, frame, pts, Side { edge: i, sign: 1 });
        writeln!(canvas.body, r#"<path d="{d}" fill="none" stroke="{BACKGROUND_EDGE}" stroke-width="1"/>"#)
            .expect("write to string");
    }
    for (v, p) in cx.vertices().iter().zip(pts) {
        let (x, y) = frame.map(*p);
        writeln!(
            canvas.body,
            r##"<circle cx="{x:.2}" cy="{y:.2}" r="2.5" fill="#606060"><title>{}</title></circle>"##,
            v.name
        )
        .expect("write to string");
    }
    canvas.body.push_str("</g>\n");
}

fn draw_chain(
    canvas: &mut Canvas,
    cx: &MetricComplex,
    frame: &Frame,
    pts: &[[f64; 2]],
    t: &Chain1,
    color: &'static str,
    class: &str,
) {
    let marker = canvas.marker(color);
    writeln!(canvas.body, r#"<g class="{class}">"#).expect("write to string");
    for (e, c) in t.iter() {
        let d = edge_path(cx, frame, pts, Side { edge: e, sign: c.signum() });
        let width = 1.5 + c.abs() as f64;
        writeln!(
            canvas.body,
            r#"<path d="{d}" fill="none" stroke="{color}" stroke-width="{width:.1}" marker-end="url(#arrow{marker})"><title>{} {c}</title></path>"#,
            cx.edge(e).name
        )
        .expect("write to string");
    }
    canvas.body.push_str("</g>\n");
}

/// A canvas with axes drawn, its frame, the vertex positions and the width.
type Scene = (Canvas, Frame, Vec<[f64; 2]>, f64);

fn canvas_for(cx: &MetricComplex) -> Result<Scene, RenderError> {
    let pts = coords(cx)?;
    let frame = Frame::fit(pts.iter().copied());
    let max_x = pts.iter().map(|p| p[0]).fold(frame.min[0] + 1.0, f64::max);
    let width = if pts.is_empty() { SIZE } else { frame.width(max_x) };
    let mut canvas = Canvas::new();
    axes(&mut canvas, &frame, width);
    Ok((canvas, frame, pts, width))
}

pub fn render_chain(cx: &MetricComplex, t: &Chain1) -> Result<String, RenderError> {
    if t.complex_id() != cx.id() {
        return Err(RenderError::ComplexMismatch);
    }
    let (mut canvas, frame, pts, width) = canvas_for(cx)?;
    draw_background(&mut canvas, cx, &frame, &pts);
    draw_chain(&mut canvas, cx, &frame, &pts, t, PALETTE[0], "chain");
    let height = frame.height;
    Ok(canvas.finish(width, height))
}

pub fn render_decomposition(cx: &MetricComplex, dec: &Decomposition) -> Result<String, RenderError> {
    if dec.parent().complex_id() != cx.id() {
        return Err(RenderError::ComplexMismatch);
    }
    let (mut canvas, frame, pts, width) = canvas_for(cx)?;
    draw_background(&mut canvas, cx, &frame, &pts);
    for (i, c) in dec.components().iter().enumerate() {
        draw_chain(
            &mut canvas,
            cx,
            &frame,
            &pts,
            c,
            PALETTE[i % PALETTE.len()],
            &format!("component component-{}", i + 1),
        );
    }
    let height = frame.height;
    Ok(canvas.finish(width, height))
}

/// Filled cells, and the traced loop as one stroked path if given.
pub fn render_pixels(a: &PixelSet, jordan: Option<&CurvePiece>) -> Result<String, RenderError> {
    let cx = a.complex();
    let (mut canvas, frame, pts, width) = canvas_for(cx)?;
    canvas.body.push_str("<g class=\"cells\">\n");
    for &(x, y) in a.cells() {
        let (px, py) = frame.map([x as f64, (y + 1) as f64]);
        writeln!(
            canvas.body,
            r##"<rect x="{px:.2}" y="{py:.2}" width="{s:.2}" height="{s:.2}" fill="#9ecae1" stroke="#6baed6" stroke-width="0.5"/>"##,
            s = frame.scale
        )
        .expect("write to string");
    }
    canvas.body.push_str("</g>\n");
    if let Some(lp) = jordan {
        let marker = canvas.marker(PALETTE[0]);
        let mut d = String::new();
        for (i, &v) in lp.vertices().iter().enumerate() {
            let (x, y) = frame.map(pts[v]);
            write!(d, "{}{x:.2},{y:.2}", if i == 0 { "M" } else { " L" }).expect("write to string");
        }
        writeln!(
            canvas.body,
            r#"<path class="jordan-loop" d="{d}" fill="none" stroke="{}" stroke-width="2.5" marker-mid="url(#arrow{marker})"/>"#,
            PALETTE[0]
        )
        .expect("write to string");
    }
    let height = frame.height;
    Ok(canvas.finish(width, height))
}

/// Scatter plot of `N(T)` against `F(T) / (N(T₁) N(T))`, one dot per row.
pub fn render_report_scatter(report: &BatchReport) -> String {
    let points: Vec<[f64; 2]> =
        report.rows.iter().map(|r| [to_f64(&r.iso.normal_mass), to_f64(&r.bound.empirical_constant)]).collect();
    let max_n = points.iter().map(|p| p[0]).fold(1.0, f64::max);
    let max_c = points.iter().map(|p| p[1]).fold(1e-9, f64::max);
    let plot = SIZE - 2.0 * MARGIN;
    let mut canvas = Canvas::new();
    let frame = Frame { min: [0.0, 0.0], scale: 1.0, height: SIZE };
    axes(&mut canvas, &frame, SIZE);
    canvas.body.push_str("<g class=\"points\">\n");
    for (r, p) in report.rows.iter().zip(&points) {
        let x = MARGIN + p[0] / max_n * plot;
        let y = SIZE - MARGIN - p[1] / max_c * plot;
        writeln!(
            canvas.body,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="{}"><title>{}</title></circle>"#,
            PALETTE[1], r.label
        )
        .expect("write to string");
    }
    canvas.body.push_str("</g>\n");
    writeln!(
        canvas.body,
        r#"<text x="{:.2}" y="{:.2}" font-size="11" text-anchor="end">N(T), max {max_n:.2}</text>"#,
        SIZE - MARGIN,
        SIZE - 4.0
    )
    .expect("write to string");
    writeln!(canvas.body, r#"<text x="4" y="14" font-size="11">F/(N(T1)N), max {max_c:.4}</text>"#)
        .expect("write to string");
    canvas.finish(SIZE, SIZE)
}
