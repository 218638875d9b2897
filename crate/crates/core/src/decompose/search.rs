//! Simple path / cycle subcurrents of an integer 1-chain.
//!
//! Every edge in the support is oriented by the sign of its coefficient.
//! A unit simple path from `u` to `w` in that oriented graph is a
//! subcurrent exactly when `∂S(u) ≤ -1` and `∂S(w) ≥ 1`; every simple
//! directed cycle is one.

use std::collections::HashMap;

use num_traits::Zero;

use crate::chain::Chain1;
use crate::complex::{ComplexError, MetricComplex, Side};
use crate::rational::{int, Rational};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum ShapeKind {
    Path,
    Cycle,
}

/// A unit simple path or simple cycle. For cycles `vertices` is closed: the
/// first vertex is repeated at the end.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimpleShape {
    pub kind: ShapeKind,
    pub vertices: Vec<usize>,
    pub steps: Vec<Side>,
}

impl SimpleShape {
    pub fn chain(&self, cx: &MetricComplex) -> Result<Chain1, ComplexError> {
        Chain1::from_coeffs(cx, self.steps.iter().map(|s| (s.edge, s.sign)))
    }

    pub fn sorted_edges(&self) -> Vec<usize> {
        let mut edges: Vec<usize> = self.steps.iter().map(|s| s.edge).collect();
        edges.sort_unstable();
        edges
    }

    pub fn length(&self, cx: &MetricComplex) -> Rational {
        self.steps.iter().fold(Rational::zero(), |acc, s| acc + &cx.edge(s.edge).length)
    }

    /// Normal mass: length, plus two unit Dirac masses for an open path.
    pub fn normal_mass(&self, cx: &MetricComplex) -> Rational {
        match self.kind {
            ShapeKind::Path => self.length(cx) + int(2),
            ShapeKind::Cycle => self.length(cx),
        }
    }
}

/// Orders shapes by larger normal mass first, then by sorted edge ids.
pub fn prefer(cx: &MetricComplex, a: &SimpleShape, b: &SimpleShape) -> std::cmp::Ordering {
    b.normal_mass(cx).cmp(&a.normal_mass(cx)).then_with(|| a.sorted_edges().cmp(&b.sorted_edges()))
}

/// Oriented support of a chain with dense coefficient and boundary tables.
pub(crate) struct OrientedSupport {
    /// Outgoing `(head, side)` arcs per vertex, ascending by edge id.
    pub out: Vec<Vec<(usize, Side)>>,
    pub boundary: Vec<i64>,
    pub coeffs: Vec<i64>,
}

impl OrientedSupport {
    pub fn new(cx: &MetricComplex, s: &Chain1) -> Self {
        let mut out = vec![Vec::new(); cx.vertices().len()];
        let mut boundary = vec![0i64; cx.vertices().len()];
        let mut coeffs = vec![0i64; cx.edges().len()];
        for (e, c) in s.iter() {
            let edge = cx.edge(e);
            let sign = c.signum();
            let (from, to) = if sign > 0 { (edge.tail, edge.head) } else { (edge.head, edge.tail) };
            out[from].push((to, Side { edge: e, sign }));
            boundary[edge.head] += c;
            boundary[edge.tail] -= c;
            coeffs[e] = c;
        }
        OrientedSupport { out, boundary, coeffs }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetExceeded;

struct Enumerator<'a> {
    support: &'a OrientedSupport,
    on_path: Vec<bool>,
    vertices: Vec<usize>,
    steps: Vec<Side>,
    found: Vec<SimpleShape>,
    budget: usize,
}

impl Enumerator<'_> {
    fn record(&mut self, shape: SimpleShape) -> Result<(), BudgetExceeded> {
        if self.found.len() >= self.budget {
            return Err(BudgetExceeded);
        }
        self.found.push(shape);
        Ok(())
    }

    fn paths_from(&mut self, v: usize) -> Result<(), BudgetExceeded> {
        for i in 0..self.support.out[v].len() {
            let (w, side) = self.support.out[v][i];
            if self.on_path[w] {
                continue;
            }
            self.on_path[w] = true;
            self.vertices.push(w);
            self.steps.push(side);
            if self.support.boundary[w] >= 1 {
                let shape =
                    SimpleShape { kind: ShapeKind::Path, vertices: self.vertices.clone(), steps: self.steps.clone() };
                self.record(shape)?;
            }
            self.paths_from(w)?;
            self.steps.pop();
            self.vertices.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }

    fn cycles_from(&mut self, root: usize, v: usize) -> Result<(), BudgetExceeded> {
        for i in 0..self.support.out[v].len() {
            let (w, side) = self.support.out[v][i];
            if w == root {
                let mut vertices = self.vertices.clone();
                vertices.push(root);
                let mut steps = self.steps.clone();
                steps.push(side);
                self.record(SimpleShape { kind: ShapeKind::Cycle, vertices, steps })?;
                continue;
            }
            if w < root || self.on_path[w] {
                continue;
            }
            self.on_path[w] = true;
            self.vertices.push(w);
            self.steps.push(side);
            self.cycles_from(root, w)?;
            self.steps.pop();
            self.vertices.pop();
            self.on_path[w] = false;
        }
        Ok(())
    }
}

/// All sign-consistent unit simple paths and cycles contained in `s`.
pub(crate) fn simple_subcurrents(
    cx: &MetricComplex,
    s: &Chain1,
    budget: usize,
) -> Result<Vec<SimpleShape>, BudgetExceeded> {
    let support = OrientedSupport::new(cx, s);
    let n = cx.vertices().len();
    let mut en = Enumerator {
        support: &support,
        on_path: vec![false; n],
        vertices: Vec::new(),
        steps: Vec::new(),
        found: Vec::new(),
        budget,
    };
    for u in 0..n {
        if support.boundary[u] <= -1 {
            en.on_path[u] = true;
            en.vertices.push(u);
            en.paths_from(u)?;
            en.vertices.pop();
            en.on_path[u] = false;
        }
    }
    for v in 0..n {
        if support.out[v].is_empty() {
            continue;
        }
        en.on_path[v] = true;
        en.vertices.push(v);
        en.cycles_from(v, v)?;
        en.vertices.pop();
        en.on_path[v] = false;
    }
    Ok(en.found)
}

/// One unit path or cycle subcurrent found by a loop-erased walk.
///
/// With a nonzero boundary the walk starts at the lowest-index source
/// (`∂S < 0`), erases loops as they close and stops at the first sink
/// (`∂S > 0`), giving a path. Without boundary it starts at the lowest
/// support vertex and returns the first loop that closes. Returns `None`
/// only for the zero chain.
pub fn loop_erased_component(cx: &MetricComplex, s: &Chain1) -> Option<SimpleShape> {
    if s.is_zero() {
        return None;
    }
    let support = OrientedSupport::new(cx, s);
    let mut avail: Vec<i64> = support.coeffs.iter().map(|c| c.abs()).collect();
    let source = support.boundary.iter().position(|&b| b < 0);
    let start = source.unwrap_or_else(|| {
        (0..support.out.len()).find(|&v| !support.out[v].is_empty()).expect("nonzero chain has an arc")
    });
    let mut vertices = vec![start];
    let mut steps: Vec<Side> = Vec::new();
    let mut pos: HashMap<usize, usize> = HashMap::from([(start, 0)]);
    loop {
        let v = *vertices.last().expect("walk is never empty");
        let &(w, side) = support.out[v]
            .iter()
            .find(|(_, side)| avail[side.edge] > 0)
            .expect("flow conservation guarantees an unused outgoing arc");
        avail[side.edge] -= 1;
        if let Some(&at) = pos.get(&w) {
            if source.is_none() {
                let mut cycle_vertices = vertices[at..].to_vec();
                cycle_vertices.push(w);
                let mut cycle_steps = steps[at..].to_vec();
                cycle_steps.push(side);
                return Some(SimpleShape { kind: ShapeKind::Cycle, vertices: cycle_vertices, steps: cycle_steps });
            }
            for erased in vertices.drain(at + 1..) {
                pos.remove(&erased);
            }
            steps.truncate(at);
            continue;
        }
        pos.insert(w, vertices.len());
        vertices.push(w);
        steps.push(side);
        if source.is_some() && support.boundary[w] > 0 {
            return Some(SimpleShape { kind: ShapeKind::Path, vertices, steps });
        }
    }
}
