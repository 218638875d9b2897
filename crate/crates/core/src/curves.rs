//! Polyline curves as vertex walks, their currentification, and the
//! characterisation of indecomposable 1-chains as injective paths and loops.
//!
//! A walk is a parametrised curve up to reparametrisation; constant-speed
//! parametrisations play no role at this scale. Each step records the edge it
//! crosses, so walks on multigraphs are unambiguous.
//!
//! A walk of length zero is a constant curve, which is not injective on a
//! nondegenerate parameter interval; it classifies as [`Classification::Neither`].
//! A closed walk is an injective loop only if its edges are pairwise distinct
//! as well as its vertices: walking `a → b → a` back along the same edge
//! revisits every interior point of that edge.

use std::collections::HashSet;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::certificate::verify_decomposition;
use crate::chain::Chain1;
use crate::complex::{ComplexError, ComplexId, MetricComplex, Side};
use crate::decompose::{indecomposability, DecomposeError, Decomposition, Indecomposability, Method, ShapeKind};
use crate::rational::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CurveError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("walk vertices `{from}` and `{to}` at step {step} are not joined by an edge")]
    NotAdjacent { step: usize, from: String, to: String },
    #[error("step {step} does not start where the previous one ended")]
    BrokenWalk { step: usize },
    #[error("walk is empty")]
    EmptyWalk,
    #[error("curve is already an injective path or loop")]
    NotApplicable,
    #[error("curve traverses an edge in both directions; its mass is below its length")]
    CancellingCurve,
    #[error("chain is zero")]
    ZeroChain,
    #[error("chain is not supported on the curve's edges")]
    SupportViolation,
    #[error("chain has nonzero boundary")]
    NonZeroBoundary,
    #[error("boundary of the chain differs from the boundary of the curve")]
    BoundaryMismatch,
    #[error("curve is not an injective loop")]
    NotInjectiveLoop,
    #[error("curve is not an injective path")]
    NotInjectivePath,
    #[error("chain is not indecomposable")]
    NotIndecomposable,
    #[error(transparent)]
    Decompose(#[from] DecomposeError),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    InjectivePath,
    InjectiveLoop,
    Neither,
}

impl Classification {
    pub fn is_injective(self) -> bool {
        self != Classification::Neither
    }
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classification::InjectivePath => "injective_path",
            Classification::InjectiveLoop => "injective_loop",
            Classification::Neither => "neither",
        })
    }
}

/// A vertex walk `v₀, …, v_m` together with the edge crossed at each step.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurvePiece {
    complex: ComplexId,
    vertices: Vec<usize>,
    steps: Vec<Side>,
    classification: Classification,
}

impl CurvePiece {
    /// Builds a walk from vertex indices, crossing the lowest-index edge
    /// between each consecutive pair.
    pub fn from_vertices(cx: &MetricComplex, vertices: &[usize]) -> Result<Self, CurveError> {
        let Some(&first) = vertices.first() else {
            return Err(CurveError::EmptyWalk);
        };
        check_vertex(cx, first)?;
        let mut steps = Vec::with_capacity(vertices.len().saturating_sub(1));
        for (i, pair) in vertices.windows(2).enumerate() {
            check_vertex(cx, pair[1])?;
            let side = cx.edge_between(pair[0], pair[1]).ok_or_else(|| CurveError::NotAdjacent {
                step: i,
                from: cx.vertex(pair[0]).name.clone(),
                to: cx.vertex(pair[1]).name.clone(),
            })?;
            steps.push(side);
        }
        Ok(Self::assemble(cx, vertices.to_vec(), steps))
    }

    pub fn from_names(cx: &MetricComplex, names: &[&str]) -> Result<Self, CurveError> {
        let vertices = names.iter().map(|n| cx.vertex_id(n)).collect::<Result<Vec<_>, _>>()?;
        Self::from_vertices(cx, &vertices)
    }

    /// Builds a walk from a start vertex and signed edge steps.
    pub fn from_steps(cx: &MetricComplex, start: usize, steps: &[Side]) -> Result<Self, CurveError> {
        check_vertex(cx, start)?;
        let mut vertices = vec![start];
        for (i, side) in steps.iter().enumerate() {
            if side.edge >= cx.edges().len() {
                return Err(ComplexError::UnknownIndex { dim: crate::complex::CellDim::Edge, index: side.edge }.into());
            }
            let (tail, head) = oriented(cx, *side);
            if tail != *vertices.last().expect("nonempty") || side.sign.abs() != 1 {
                return Err(CurveError::BrokenWalk { step: i });
            }
            vertices.push(head);
        }
        Ok(Self::assemble(cx, vertices, steps.to_vec()))
    }

    fn assemble(cx: &MetricComplex, vertices: Vec<usize>, steps: Vec<Side>) -> Self {
        let classification = classify_walk(&vertices, &steps);
        CurvePiece { complex: cx.id(), vertices, steps, classification }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn steps(&self) -> &[Side] {
        &self.steps
    }

    /// Number of steps `m`.
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn classification(&self) -> Classification {
        self.classification
    }

    pub fn names<'a>(&self, cx: &'a MetricComplex) -> Vec<&'a str> {
        self.vertices.iter().map(|&v| cx.vertex(v).name.as_str()).collect()
    }

    fn ensure_on(&self, cx: &MetricComplex) -> Result<(), CurveError> {
        if self.complex == cx.id() {
            Ok(())
        } else {
            Err(ComplexError::ComplexMismatch.into())
        }
    }

    fn sub_walk(&self, cx: &MetricComplex, from: usize, to: usize) -> CurvePiece {
        Self::assemble(cx, self.vertices[from..=to].to_vec(), self.steps[from..to].to_vec())
    }
}

fn check_vertex(cx: &MetricComplex, v: usize) -> Result<(), CurveError> {
    if v < cx.vertices().len() {
        Ok(())
    } else {
        Err(ComplexError::UnknownIndex { dim: crate::complex::CellDim::Vertex, index: v }.into())
    }
}

fn oriented(cx: &MetricComplex, side: Side) -> (usize, usize) {
    let e = cx.edge(side.edge);
    if side.sign > 0 {
        (e.tail, e.head)
    } else {
        (e.head, e.tail)
    }
}

fn all_distinct<T: Copy + Eq + std::hash::Hash>(items: impl IntoIterator<Item = T>) -> bool {
    let mut seen = HashSet::new();
    items.into_iter().all(|x| seen.insert(x))
}

fn classify_walk(vertices: &[usize], steps: &[Side]) -> Classification {
    let m = steps.len();
    if m == 0 {
        Classification::Neither
    } else if all_distinct(vertices.iter().copied()) {
        Classification::InjectivePath
    } else if vertices[0] == vertices[m]
        && all_distinct(vertices[..m].iter().copied())
        && all_distinct(steps.iter().map(|s| s.edge))
    {
        Classification::InjectiveLoop
    } else {
        Classification::Neither
    }
}

/// The chain `[[γ]]`: signed sum of traversed edges, with cancellation.
pub fn currentify(cx: &MetricComplex, c: &CurvePiece) -> Result<Chain1, CurveError> {
    c.ensure_on(cx)?;
    Ok(Chain1::from_coeffs(cx, c.steps.iter().map(|s| (s.edge, s.sign)))?)
}

/// `ℓ(γ)`: total length of traversed edges, counted with multiplicity.
pub fn length(cx: &MetricComplex, c: &CurvePiece) -> Result<Rational, CurveError> {
    c.ensure_on(cx)?;
    Ok(c.steps.iter().fold(Rational::zero(), |acc, s| acc + &cx.edge(s.edge).length))
}

pub fn classify(c: &CurvePiece) -> Classification {
    c.classification
}

/// `M([[γ]]) = ℓ(γ)`.
pub fn is_non_cancelling(cx: &MetricComplex, c: &CurvePiece) -> Result<bool, CurveError> {
    Ok(cx.mass(&currentify(cx, c)?)? == length(cx, c)?)
}

/// Splits a non-cancelling, non-injective walk into injective paths and
/// loops, cutting at the earliest repeated vertex each time: the closed
/// sub-walk between the two visits becomes a loop and the walk continues
/// with it removed. The remainder comes last.
pub fn split_at_self_intersection(cx: &MetricComplex, c: &CurvePiece) -> Result<Vec<CurvePiece>, CurveError> {
    c.ensure_on(cx)?;
    if c.classification.is_injective() {
        return Err(CurveError::NotApplicable);
    }
    if !is_non_cancelling(cx, c)? {
        return Err(CurveError::CancellingCurve);
    }
    let mut pieces = Vec::new();
    let mut rest = c.clone();
    while !rest.classification.is_injective() && !rest.is_empty() {
        let (i, j) = earliest_repeat(&rest.vertices).expect("non-injective walk repeats a vertex");
        let lp = rest.sub_walk(cx, i, j);
        debug_assert_eq!(lp.classification, Classification::InjectiveLoop);
        let mut vertices = rest.vertices[..=i].to_vec();
        vertices.extend_from_slice(&rest.vertices[j + 1..]);
        let mut steps = rest.steps[..i].to_vec();
        steps.extend_from_slice(&rest.steps[j..]);
        pieces.push(lp);
        rest = CurvePiece::assemble(cx, vertices, steps);
    }
    if !rest.is_empty() {
        pieces.push(rest);
    }
    let whole = currentify(cx, c)?;
    let parts = pieces.iter().map(|p| currentify(cx, p)).collect::<Result<Vec<_>, _>>()?;
    assert!(
        verify_decomposition(cx, &whole, &parts)?.is_valid(),
        "curve split of a non-cancelling walk must be additive"
    );
    Ok(pieces)
}

/// First `(i, j)` with `i < j` and `v_i = v_j`, minimising `j`.
fn earliest_repeat(vertices: &[usize]) -> Option<(usize, usize)> {
    let mut first_seen = std::collections::HashMap::new();
    for (j, &v) in vertices.iter().enumerate() {
        if let Some(&i) = first_seen.get(&v) {
            return Some((i, j));
        }
        first_seen.insert(v, j);
    }
    None
}

/// The components of a non-cancelling walk, as a decomposition of its
/// currentification.
pub fn curve_split_decomposition(cx: &MetricComplex, c: &CurvePiece) -> Result<Decomposition, CurveError> {
    let pieces = if c.classification.is_injective() { vec![c.clone()] } else { split_at_self_intersection(cx, c)? };
    let whole = currentify(cx, c)?;
    let parts = pieces.iter().map(|p| currentify(cx, p)).collect::<Result<Vec<_>, _>>()?;
    Ok(Decomposition::new(cx, &whole, parts, Method::CurveSplit)?)
}

fn check_support(t: &Chain1, c: &CurvePiece) -> Result<(), CurveError> {
    let edges: HashSet<usize> = c.steps.iter().map(|s| s.edge).collect();
    if t.support().all(|e| edges.contains(&e)) {
        Ok(())
    } else {
        Err(CurveError::SupportViolation)
    }
}

/// For a boundaryless chain carried by an injective loop, the integer `k`
/// with `t = k·[[γ]]`.
pub fn constant_multiple_on_cycle(cx: &MetricComplex, t: &Chain1, c: &CurvePiece) -> Result<i64, CurveError> {
    cx.ensure_owns(t)?;
    c.ensure_on(cx)?;
    if c.classification != Classification::InjectiveLoop {
        return Err(CurveError::NotInjectiveLoop);
    }
    if t.is_zero() {
        return Err(CurveError::ZeroChain);
    }
    check_support(t, c)?;
    if !cx.boundary(t)?.is_zero() {
        return Err(CurveError::NonZeroBoundary);
    }
    let first = c.steps[0];
    let k = t.coeff(first.edge) * first.sign;
    assert!(
        c.steps.iter().all(|s| t.coeff(s.edge) * s.sign == k),
        "a cycle chain without boundary has constant coefficient"
    );
    Ok(k)
}

/// Confirms that a chain carried by an injective path with the path's
/// boundary is the path itself.
///
/// # Panics
///
/// If the preconditions hold but `t ≠ [[γ]]`, which would be a bug.
pub fn unit_path_on_arc(cx: &MetricComplex, t: &Chain1, c: &CurvePiece) -> Result<(), CurveError> {
    cx.ensure_owns(t)?;
    c.ensure_on(cx)?;
    if c.classification != Classification::InjectivePath {
        return Err(CurveError::NotInjectivePath);
    }
    check_support(t, c)?;
    let curve = currentify(cx, c)?;
    if cx.boundary(t)? != cx.boundary(&curve)? {
        return Err(CurveError::BoundaryMismatch);
    }
    assert_eq!(t, &curve, "chain on an injective arc with the arc's boundary must equal the arc");
    Ok(())
}

/// An injective path or loop whose currentification is `component`.
pub fn curve_of_component(cx: &MetricComplex, component: &Chain1) -> Result<CurvePiece, CurveError> {
    match indecomposability(cx, component)? {
        Indecomposability::Indecomposable(shape) => {
            let piece = CurvePiece::from_steps(cx, shape.vertices[0], &shape.steps)?;
            debug_assert_eq!(
                piece.classification,
                match shape.kind {
                    ShapeKind::Path => Classification::InjectivePath,
                    ShapeKind::Cycle => Classification::InjectiveLoop,
                }
            );
            Ok(piece)
        }
        Indecomposability::Zero => Err(CurveError::ZeroChain),
        Indecomposability::Decomposable { .. } => Err(CurveError::NotIndecomposable),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decompose::{greedy_decompose, is_indecomposable, SearchMode};
    use crate::fixtures;
    use crate::rational::int;
    use proptest::prelude::*;

    fn walk(cx: &MetricComplex, names: &[&str]) -> CurvePiece {
        CurvePiece::from_names(cx, names).unwrap()
    }

    fn tadpole() -> MetricComplex {
        let mut b = MetricComplex::builder();
        for v in ["a", "b", "c", "d", "e"] {
            b.vertex(v, None).unwrap();
        }
        for (n, t, h) in [("ab", "a", "b"), ("bc", "b", "c"), ("cd", "c", "d"), ("db", "d", "b"), ("be", "b", "e")] {
            b.edge(n, t, h, int(1)).unwrap();
        }
        b.build()
    }

    #[test]
    fn currentify_examples() {
        let cx = fixtures::triangle();
        let path = walk(&cx, &["a", "b", "c"]);
        let t = currentify(&cx, &path).unwrap();
        assert_eq!(t, Chain1::from_named(&cx, [("ab", 1), ("bc", 1)]).unwrap());
        assert_eq!(cx.mass(&t).unwrap(), length(&cx, &path).unwrap());

        let back = walk(&cx, &["a", "b", "a"]);
        assert!(currentify(&cx, &back).unwrap().is_zero());
        assert_eq!(length(&cx, &back).unwrap(), int(2));
        assert!(!is_non_cancelling(&cx, &back).unwrap());

        let lp = walk(&cx, &["a", "b", "c", "a"]);
        assert_eq!(currentify(&cx, &lp).unwrap(), fixtures::triangle_cycle(&cx));
        assert!(cx.boundary(&currentify(&cx, &lp).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn non_adjacent_walk_is_rejected() {
        let cx = fixtures::figure_eight();
        assert!(matches!(CurvePiece::from_names(&cx, &["a", "d"]), Err(CurveError::NotAdjacent { step: 0, .. })));
        assert_eq!(CurvePiece::from_vertices(&cx, &[]).unwrap_err(), CurveError::EmptyWalk);
        let ab = cx.edge_id("ab").unwrap();
        assert_eq!(
            CurvePiece::from_steps(&cx, 2, &[Side { edge: ab, sign: 1 }]).unwrap_err(),
            CurveError::BrokenWalk { step: 0 }
        );
    }

    #[test]
    fn classify_examples() {
        let cx = fixtures::triangle();
        assert_eq!(classify(&walk(&cx, &["a", "b", "c"])), Classification::InjectivePath);
        assert_eq!(classify(&walk(&cx, &["a", "b", "c", "a"])), Classification::InjectiveLoop);
        assert_eq!(classify(&walk(&cx, &["a", "b", "c", "b"])), Classification::Neither);
        assert_eq!(classify(&walk(&cx, &["a", "b", "a"])), Classification::Neither);
        assert_eq!(classify(&walk(&cx, &["a"])), Classification::Neither);
    }

    #[test]
    fn parallel_edges_make_a_two_step_loop() {
        let cx = fixtures::hexagon_multigraph();
        let ab = cx.edge_id("ab").unwrap();
        let ab2 = cx.edge_id("ab2").unwrap();
        let a = cx.vertex_id("a").unwrap();
        let lp = CurvePiece::from_steps(&cx, a, &[Side { edge: ab, sign: 1 }, Side { edge: ab2, sign: -1 }]).unwrap();
        assert_eq!(classify(&lp), Classification::InjectiveLoop);
        assert!(is_indecomposable(&cx, &currentify(&cx, &lp).unwrap()).unwrap());

        let c = cx.vertex_id("c").unwrap();
        let cc = cx.edge_id("cc").unwrap();
        let once = CurvePiece::from_steps(&cx, c, &[Side { edge: cc, sign: 1 }]).unwrap();
        assert_eq!(classify(&once), Classification::InjectiveLoop);
        let twice = CurvePiece::from_steps(&cx, c, &[Side { edge: cc, sign: 1 }; 2]).unwrap();
        assert_eq!(classify(&twice), Classification::Neither);
    }

    #[test]
    fn split_tadpole_at_repeated_vertex() {
        let cx = tadpole();
        let c = walk(&cx, &["a", "b", "c", "d", "b", "e"]);
        let pieces = split_at_self_intersection(&cx, &c).unwrap();
        let names: Vec<Vec<&str>> = pieces.iter().map(|p| p.names(&cx)).collect();
        assert_eq!(names, vec![vec!["b", "c", "d", "b"], vec!["a", "b", "e"]]);
    }

    #[test]
    fn split_loop_through_start() {
        let mut b = MetricComplex::builder();
        for v in ["a", "b", "c", "d"] {
            b.vertex(v, None).unwrap();
        }
        for (n, t, h) in [("ab", "a", "b"), ("bc", "b", "c"), ("ca", "c", "a"), ("ad", "a", "d")] {
            b.edge(n, t, h, int(1)).unwrap();
        }
        let cx = b.build();
        let pieces = split_at_self_intersection(&cx, &walk(&cx, &["a", "b", "c", "a", "d"])).unwrap();
        let names: Vec<Vec<&str>> = pieces.iter().map(|p| p.names(&cx)).collect();
        assert_eq!(names, vec![vec!["a", "b", "c", "a"], vec!["a", "d"]]);
        let dec = curve_split_decomposition(&cx, &walk(&cx, &["a", "b", "c", "a", "d"])).unwrap();
        assert_eq!(dec.method(), Method::CurveSplit);
        assert_eq!(dec.len(), 2);
    }

    #[test]
    fn split_preconditions() {
        let cx = fixtures::triangle();
        assert_eq!(
            split_at_self_intersection(&cx, &walk(&cx, &["a", "b", "c"])).unwrap_err(),
            CurveError::NotApplicable
        );
        assert_eq!(
            split_at_self_intersection(&cx, &walk(&cx, &["a", "b", "c", "b"])).unwrap_err(),
            CurveError::CancellingCurve
        );
        assert!(split_at_self_intersection(&cx, &walk(&cx, &["a"])).unwrap().is_empty());
    }

    #[test]
    fn constant_multiple_examples() {
        let cx = fixtures::triangle();
        let c = walk(&cx, &["a", "b", "c", "a"]);
        let cycle = fixtures::triangle_cycle(&cx);
        assert_eq!(constant_multiple_on_cycle(&cx, &cycle.scaled(3), &c).unwrap(), 3);
        assert_eq!(constant_multiple_on_cycle(&cx, &cycle.neg(), &c).unwrap(), -1);
        let uneven = Chain1::from_named(&cx, [("ab", 1), ("bc", 2), ("ca", 1)]).unwrap();
        assert_eq!(constant_multiple_on_cycle(&cx, &uneven, &c).unwrap_err(), CurveError::NonZeroBoundary);
        assert_eq!(constant_multiple_on_cycle(&cx, &Chain1::zero(&cx), &c).unwrap_err(), CurveError::ZeroChain);
        assert_eq!(
            constant_multiple_on_cycle(&cx, &cycle, &walk(&cx, &["a", "b"])).unwrap_err(),
            CurveError::NotInjectiveLoop
        );

        let cx = fixtures::figure_eight();
        let c = walk(&cx, &["a", "b", "c", "a"]);
        let square = Chain1::from_named(&cx, [("cd", 1), ("de", 1), ("ef", 1), ("fc", 1)]).unwrap();
        assert_eq!(constant_multiple_on_cycle(&cx, &square, &c).unwrap_err(), CurveError::SupportViolation);
    }

    #[test]
    fn unit_path_examples() {
        let cx = fixtures::figure_eight();
        let c = walk(&cx, &["a", "b", "c"]);
        let t = currentify(&cx, &c).unwrap();
        unit_path_on_arc(&cx, &t, &c).unwrap();
        let ab = Chain1::from_named(&cx, [("ab", 1)]).unwrap();
        assert_eq!(unit_path_on_arc(&cx, &ab, &c).unwrap_err(), CurveError::BoundaryMismatch);
        let square = Chain1::from_named(&cx, [("cd", 1), ("de", 1), ("ef", 1), ("fc", 1)]).unwrap();
        let off = t.checked_add(&square).unwrap();
        assert_eq!(unit_path_on_arc(&cx, &off, &c).unwrap_err(), CurveError::SupportViolation);
        assert_eq!(
            unit_path_on_arc(&cx, &t, &walk(&cx, &["a", "b", "c", "a"])).unwrap_err(),
            CurveError::NotInjectivePath
        );
    }

    #[test]
    fn figure_eight_components_are_curves() {
        let cx = fixtures::figure_eight();
        let t = Chain1::from_coeffs(&cx, (0..7).map(|e| (e, 1))).unwrap();
        let dec = greedy_decompose(&cx, &t, SearchMode::Exact).unwrap();
        for comp in dec.components() {
            let c = curve_of_component(&cx, comp).unwrap();
            assert_eq!(classify(&c), Classification::InjectiveLoop);
            assert_eq!(&currentify(&cx, &c).unwrap(), comp);
        }
        assert_eq!(curve_of_component(&cx, &t).unwrap_err(), CurveError::NotIndecomposable);
    }

    /// Random walk on the hexagon multigraph from `start`, choosing among
    /// incident edges by the given indices.
    fn random_walk(cx: &MetricComplex, start: usize, choices: &[(usize, bool)]) -> CurvePiece {
        let mut v = start;
        let mut steps = Vec::new();
        for &(pick, flip) in choices {
            let inc = cx.incident_edges(v);
            let e = inc[pick % inc.len()];
            let edge = cx.edge(e);
            let sign = if edge.tail == edge.head {
                if flip {
                    -1
                } else {
                    1
                }
            } else if edge.tail == v {
                1
            } else {
                -1
            };
            steps.push(Side { edge: e, sign });
            v = if sign > 0 { edge.head } else { edge.tail };
        }
        CurvePiece::from_steps(cx, start, &steps).unwrap()
    }

    /// Walk following edges forward only, so it never cancels.
    fn forward_walk(cx: &MetricComplex, start: usize, choices: &[usize]) -> CurvePiece {
        let mut v = start;
        let mut steps = Vec::new();
        for &pick in choices {
            let out: Vec<usize> = cx.incident_edges(v).iter().copied().filter(|&e| cx.edge(e).tail == v).collect();
            let e = out[pick % out.len()];
            steps.push(Side { edge: e, sign: 1 });
            v = cx.edge(e).head;
        }
        CurvePiece::from_steps(cx, start, &steps).unwrap()
    }

    proptest! {
        #[test]
        fn boundary_telescopes(start in 0usize..6, choices in proptest::collection::vec((0usize..8, any::<bool>()), 0..10)) {
            let cx = fixtures::hexagon_multigraph();
            let c = random_walk(&cx, start, &choices);
            let b = cx.boundary(&currentify(&cx, &c).unwrap()).unwrap();
            let first = c.vertices()[0];
            let last = *c.vertices().last().unwrap();
            let mut expected = crate::chain::Chain0::zero(&cx);
            expected.add_at(last, 1);
            expected.add_at(first, -1);
            prop_assert_eq!(b, expected);
            prop_assert!(cx.mass(&currentify(&cx, &c).unwrap()).unwrap() <= length(&cx, &c).unwrap());
        }

        #[test]
        fn split_is_sound(start in 0usize..6, choices in proptest::collection::vec(0usize..4, 1..12)) {
            let cx = fixtures::hexagon_multigraph();
            let c = forward_walk(&cx, start, &choices);
            prop_assert!(is_non_cancelling(&cx, &c).unwrap());
            prop_assume!(!classify(&c).is_injective());
            let pieces = split_at_self_intersection(&cx, &c).unwrap();
            let parts: Vec<Chain1> = pieces.iter().map(|p| currentify(&cx, p).unwrap()).collect();
            prop_assert!(verify_decomposition(&cx, &currentify(&cx, &c).unwrap(), &parts).unwrap().is_valid());
            for p in &pieces {
                prop_assert!(classify(p).is_injective());
            }
        }
    }
}
