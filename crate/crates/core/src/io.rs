//! Line-oriented text formats.
//!
//! | extension | header      | body                                                  |
//! |-----------|-------------|-------------------------------------------------------|
//! | `.cx1`    | `cx1`       | `vertex <id> [x y]`, `edge <id> <tail> <head> <len>`, `face <id> <±edge>… <area>` |
//! | `.ch1`    | `chain <k>` | `<cell-id> <integer>`                                 |
//! | `.wlk`    | `walk`      | `<vertex-id> [<±edge-id>]`                             |
//! | `.dec`    | `dec`       | `method`, `component` blocks holding `.ch1` text, `certificate` lines |
//! | `.pbm`    | `P1`        | `width height`, then `0`/`1` pixels, top row first    |
//!
//! Tokens are whitespace-separated and `#` starts a comment. Rationals are
//! written `p/q` or as integers. In a walk the optional signed edge names
//! the edge used to reach that vertex; without it the lowest-index edge
//! between the two vertices is used.

use std::fmt::Write as _;

use thiserror::Error;

use crate::chain::{CellKind, Chain, Chain1};
use crate::complex::{ComplexError, MetricComplex, Side};
use crate::curves::CurvePiece;
use crate::decompose::{Decomposition, Method};
use crate::planar::PixelSet;
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError { line, message: message.into() })
}

/// Non-empty lines with comments removed, as (1-based line number, tokens).
fn tokens(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let body = line.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        (!toks.is_empty()).then_some((i + 1, toks))
    })
}

fn expect_header<'a>(
    lines: &mut impl Iterator<Item = (usize, Vec<&'a str>)>,
    header: &str,
) -> Result<(usize, Vec<&'a str>), ParseError> {
    match lines.next() {
        Some((n, toks)) if toks[0] == header => Ok((n, toks)),
        Some((n, toks)) => err(n, format!("expected header `{header}`, found `{}`", toks[0])),
        None => err(0, format!("missing header `{header}`")),
    }
}

fn rational(line: usize, text: &str) -> Result<Rational, ParseError> {
    parse_rational(text).map_or_else(|| err(line, format!("invalid rational `{text}`")), Ok)
}

fn integer(line: usize, text: &str) -> Result<i64, ParseError> {
    text.parse().or_else(|_| err(line, format!("invalid integer `{text}`")))
}

fn complex_err<T>(line: usize) -> impl FnOnce(ComplexError) -> Result<T, ParseError> {
    move |e| err(line, e.to_string())
}

fn signed_name(line: usize, token: &str) -> Result<(&str, i64), ParseError> {
    match token.split_at(token.len().min(1)) {
        ("+", rest) if !rest.is_empty() => Ok((rest, 1)),
        ("-", rest) if !rest.is_empty() => Ok((rest, -1)),
        _ => err(line, format!("expected a signed edge like `+ab` or `-ab`, found `{token}`")),
    }
}

pub fn parse_complex(text: &str) -> Result<MetricComplex, ParseError> {
    let mut lines = tokens(text);
    let (n, header) = expect_header(&mut lines, "cx1")?;
    if header.len() != 1 {
        return err(n, "unexpected tokens after `cx1`");
    }
    let mut b = MetricComplex::builder();
    for (n, toks) in lines {
        match (toks[0], toks.len()) {
            ("vertex", 2) => b.vertex(toks[1], None).map(drop).or_else(complex_err(n))?,
            ("vertex", 4) => {
                let coord = |t: &str| t.parse::<f64>().or_else(|_| err(n, format!("invalid coordinate `{t}`")));
                let coords = [coord(toks[2])?, coord(toks[3])?];
                b.vertex(toks[1], Some(coords)).map(drop).or_else(complex_err(n))?
            }
            ("edge", 5) => {
                let length = rational(n, toks[4])?;
                b.edge(toks[1], toks[2], toks[3], length).map(drop).or_else(complex_err(n))?
            }
            ("face", k) if k >= 4 => {
                let sides = toks[2..k - 1].iter().map(|t| signed_name(n, t)).collect::<Result<Vec<_>, _>>()?;
                let area = rational(n, toks[k - 1])?;
                b.face(toks[1], &sides, area).map(drop).or_else(complex_err(n))?
            }
            (kw @ ("vertex" | "edge" | "face"), _) => return err(n, format!("wrong number of fields for `{kw}`")),
            (other, _) => return err(n, format!("unknown record `{other}`")),
        }
    }
    Ok(b.build())
}

pub fn write_complex(cx: &MetricComplex) -> String {
    let mut out = String::from("cx1\n");
    for v in cx.vertices() {
        match v.coords {
            Some([x, y]) => writeln!(out, "vertex {} {x} {y}", v.name),
            None => writeln!(out, "vertex {}", v.name),
        }
        .expect("write to string");
    }
    for e in cx.edges() {
        let (t, h) = (&cx.vertex(e.tail).name, &cx.vertex(e.head).name);
        writeln!(out, "edge {} {t} {h} {}", e.name, format_rational(&e.length)).expect("write to string");
    }
    for f in cx.faces() {
        let sides: Vec<String> =
            f.sides.iter().map(|s| format!("{}{}", if s.sign > 0 { '+' } else { '-' }, cx.edge(s.edge).name)).collect();
        writeln!(out, "face {} {} {}", f.name, sides.join(" "), format_rational(&f.area)).expect("write to string");
    }
    out
}

fn dim_digit<K: CellKind>() -> usize {
    match K::DIM {
        crate::complex::CellDim::Vertex => 0,
        crate::complex::CellDim::Edge => 1,
        crate::complex::CellDim::Face => 2,
    }
}

fn parse_chain_lines<'a, K: CellKind>(
    cx: &MetricComplex,
    mut lines: impl Iterator<Item = (usize, Vec<&'a str>)>,
) -> Result<Chain<K>, ParseError> {
    let (n, header) = expect_header(&mut lines, "chain")?;
    let want = dim_digit::<K>();
    match header.get(1).map(|t| t.parse::<usize>()) {
        Some(Ok(k)) if k == want && header.len() == 2 => {}
        Some(Ok(k)) if k <= 2 => return err(n, format!("expected a {want}-chain, found a {k}-chain")),
        _ => return err(n, "header must be `chain <0|1|2>`"),
    }
    let mut coeffs = Vec::new();
    for (n, toks) in lines {
        if toks.len() != 2 {
            return err(n, "expected `<cell-id> <integer>`");
        }
        let cell = K::index(cx, toks[0]).or_else(complex_err(n))?;
        coeffs.push((cell, integer(n, toks[1])?));
    }
    Chain::from_coeffs(cx, coeffs).or_else(complex_err(n))
}

pub fn parse_chain<K: CellKind>(cx: &MetricComplex, text: &str) -> Result<Chain<K>, ParseError> {
    parse_chain_lines(cx, tokens(text))
}

pub fn write_chain<K: CellKind>(cx: &MetricComplex, t: &Chain<K>) -> String {
    let mut out = format!("chain {}\n", dim_digit::<K>());
    for (cell, c) in t.iter() {
        writeln!(out, "{} {c}", K::name(cx, cell)).expect("write to string");
    }
    out
}

pub fn parse_walk(cx: &MetricComplex, text: &str) -> Result<CurvePiece, ParseError> {
    let mut lines = tokens(text);
    let (n, header) = expect_header(&mut lines, "walk")?;
    if header.len() != 1 {
        return err(n, "unexpected tokens after `walk`");
    }
    let mut start = None;
    let mut steps = Vec::new();
    let mut last_line = n;
    for (n, toks) in lines {
        last_line = n;
        if toks.len() > 2 {
            return err(n, "expected `<vertex-id> [<±edge-id>]`");
        }
        let v = cx.vertex_id(toks[0]).or_else(complex_err(n))?;
        let Some(first) = start else {
            if toks.len() == 2 {
                return err(n, "the first vertex of a walk has no incoming edge");
            }
            start = Some(v);
            continue;
        };
        let prev = walk_end(cx, first, &steps);
        let side = match toks.get(1) {
            Some(t) => {
                let (name, sign) = signed_name(n, t)?;
                let side = Side { edge: cx.edge_id(name).or_else(complex_err(n))?, sign };
                let e = cx.edge(side.edge);
                let (from, to) = if sign > 0 { (e.tail, e.head) } else { (e.head, e.tail) };
                if (from, to) != (prev, v) {
                    return err(n, format!("edge `{t}` does not run from `{}` to `{}`", cx.vertex(prev).name, toks[0]));
                }
                side
            }
            None => match cx.edge_between(prev, v) {
                Some(side) => side,
                None => return err(n, format!("`{}` and `{}` are not adjacent", cx.vertex(prev).name, toks[0])),
            },
        };
        steps.push(side);
    }
    let Some(start) = start else {
        return err(last_line, "walk has no vertices");
    };
    CurvePiece::from_steps(cx, start, &steps).or_else(|e| err(last_line, e.to_string()))
}

fn walk_end(cx: &MetricComplex, start: usize, steps: &[Side]) -> usize {
    steps.last().map_or(start, |s| {
        let e = cx.edge(s.edge);
        if s.sign > 0 {
            e.head
        } else {
            e.tail
        }
    })
}

pub fn write_walk(cx: &MetricComplex, c: &CurvePiece) -> String {
    let mut out = String::from("walk\n");
    let vs = c.vertices();
    writeln!(out, "{}", cx.vertex(vs[0]).name).expect("write to string");
    for (i, step) in c.steps().iter().enumerate() {
        let name = &cx.vertex(vs[i + 1]).name;
        if cx.edge_between(vs[i], vs[i + 1]) == Some(*step) {
            writeln!(out, "{name}")
        } else {
            let sign = if step.sign > 0 { '+' } else { '-' };
            writeln!(out, "{name} {sign}{}", cx.edge(step.edge).name)
        }
        .expect("write to string");
    }
    out
}

/// Components as inline `.ch1` blocks between `component <i>` and `end`,
/// followed by the certificate summary.
pub fn write_decomposition(cx: &MetricComplex, dec: &Decomposition) -> String {
    let mut out = format!("dec\nmethod {}\ncomponents {}\n", dec.method(), dec.len());
    for (i, c) in dec.components().iter().enumerate() {
        writeln!(out, "component {}", i + 1).expect("write to string");
        out.push_str(&write_chain(cx, c));
        out.push_str("end\n");
    }
    let cert = dec.certificate();
    let n = cx.normal_mass(dec.parent()).expect("decomposition lives on cx");
    writeln!(out, "certificate sums_to_parent {}", cert.sums_to_parent).expect("write to string");
    writeln!(out, "certificate mass_additive {}", cert.mass_additive).expect("write to string");
    writeln!(out, "certificate boundary_mass_additive {}", cert.boundary_mass_additive).expect("write to string");
    writeln!(out, "certificate normal_mass {}", format_rational(&n)).expect("write to string");
    out
}

/// Parses a `.dec` file and re-validates it: the parent is the sum of the
/// components, and every certificate line must match the recomputed value.
pub fn parse_decomposition(cx: &MetricComplex, text: &str) -> Result<Decomposition, ParseError> {
    let all: Vec<(usize, Vec<&str>)> = tokens(text).collect();
    let mut it = all.into_iter().peekable();
    expect_header(&mut it, "dec")?;
    let method: Method = match it.next() {
        Some((n, t)) if t[0] == "method" && t.len() == 2 => t[1].parse().or_else(|e: String| err(n, e))?,
        Some((n, _)) => return err(n, "expected `method <name>`"),
        None => return err(0, "missing `method` line"),
    };
    let count: usize = match it.next() {
        Some((n, t)) if t[0] == "components" && t.len() == 2 => {
            t[1].parse().or_else(|_| err(n, format!("invalid count `{}`", t[1])))?
        }
        Some((n, _)) => return err(n, "expected `components <count>`"),
        None => return err(0, "missing `components` line"),
    };
    let mut components = Vec::with_capacity(count);
    while let Some((n, t)) = it.next_if(|(_, t)| t[0] == "component") {
        if t.len() != 2 || t[1] != (components.len() + 1).to_string() {
            return err(n, format!("expected `component {}`", components.len() + 1));
        }
        let mut block = Vec::new();
        loop {
            match it.next() {
                Some((_, t)) if t == ["end"] => break,
                Some(line) => block.push(line),
                None => return err(n, "component block is missing `end`"),
            }
        }
        components.push(parse_chain_lines::<crate::chain::EdgeCell>(cx, block.into_iter())?);
    }
    if components.len() != count {
        return err(0, format!("declared {count} components, found {}", components.len()));
    }
    let parent = Chain1::sum(cx, &components).or_else(complex_err(0))?;
    let dec = Decomposition::new(cx, &parent, components, method).or_else(|e| err(0, e.to_string()))?;
    let cert = dec.certificate();
    let n = cx.normal_mass(&parent).or_else(complex_err(0))?;
    for (line, t) in it {
        let ok = match (t.first().copied(), t.get(1).copied(), t.get(2).copied(), t.len()) {
            (Some("certificate"), Some("sums_to_parent"), Some(v), 3) => v == cert.sums_to_parent.to_string(),
            (Some("certificate"), Some("mass_additive"), Some(v), 3) => v == cert.mass_additive.to_string(),
            (Some("certificate"), Some("boundary_mass_additive"), Some(v), 3) => {
                v == cert.boundary_mass_additive.to_string()
            }
            (Some("certificate"), Some("normal_mass"), Some(v), 3) => rational(line, v)? == n,
            _ => return err(line, "expected a `certificate <field> <value>` line"),
        };
        if !ok {
            return err(line, "certificate value does not match the components");
        }
    }
    Ok(dec)
}

/// Plain PBM (`P1`). Image rows run top to bottom, so image row `r` is grid
/// row `y = height - 1 - r`.
pub fn parse_pbm(text: &str) -> Result<PixelSet, ParseError> {
    let mut values = Vec::new();
    let mut header_line = 0;
    for (n, toks) in tokens(text) {
        for tok in toks {
            if values.is_empty() && header_line == 0 {
                if tok != "P1" {
                    return err(n, format!("expected magic `P1`, found `{tok}`"));
                }
                header_line = n;
                values.push((n, tok.to_string()));
            } else if values.len() < 3 {
                values.push((n, tok.to_string()));
            } else {
                // Pixels may be packed without separating whitespace.
                values.extend(tok.chars().map(|c| (n, c.to_string())));
            }
        }
    }
    if values.len() < 3 {
        return err(header_line, "missing width or height");
    }
    let dim = |(n, t): &(usize, String)| t.parse::<usize>().or_else(|_| err(*n, format!("invalid dimension `{t}`")));
    let (width, height) = (dim(&values[1])?, dim(&values[2])?);
    let pixels = &values[3..];
    if pixels.len() != width * height {
        let line = pixels.last().map_or(values[2].0, |p| p.0);
        return err(line, format!("expected {} pixels, found {}", width * height, pixels.len()));
    }
    let mut cells = Vec::new();
    for (i, (n, p)) in pixels.iter().enumerate() {
        match p.as_str() {
            "1" => cells.push((i % width, height - 1 - i / width)),
            "0" => {}
            other => return err(*n, format!("invalid pixel `{other}`")),
        }
    }
    PixelSet::new(width, height, cells).or_else(|e| err(header_line, e.to_string()))
}

pub fn write_pbm(a: &PixelSet) -> String {
    let mut out = format!("P1\n{} {}\n", a.width(), a.height());
    for y in (0..a.height()).rev() {
        let row: Vec<&str> = (0..a.width()).map(|x| if a.contains(x, y) { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
