//! Pushforward of chains along cellular maps between complexes.

use crate::chain::{Chain0, Chain1};
use crate::complex::{ComplexError, ComplexId, MetricComplex, Side};

/// A cellular map: each source vertex goes to a target vertex and each
/// source edge to a (possibly empty) signed-edge walk in the target running
/// from the image of its tail to the image of its head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellMap {
    source: ComplexId,
    target: ComplexId,
    vertex_map: Vec<usize>,
    edge_walks: Vec<Vec<Side>>,
}

impl CellMap {
    pub fn new(
        source: &MetricComplex,
        target: &MetricComplex,
        vertex_map: Vec<usize>,
        edge_walks: Vec<Vec<Side>>,
    ) -> Result<Self, ComplexError> {
        if vertex_map.len() != source.vertices().len() {
            return Err(ComplexError::VertexMapLength { expected: source.vertices().len(), got: vertex_map.len() });
        }
        if let Some(&v) = vertex_map.iter().find(|&&v| v >= target.vertices().len()) {
            return Err(ComplexError::UnknownIndex { dim: crate::complex::CellDim::Vertex, index: v });
        }
        if edge_walks.len() != source.edges().len() {
            return Err(ComplexError::UnknownIndex { dim: crate::complex::CellDim::Edge, index: edge_walks.len() });
        }
        for (e, walk) in edge_walks.iter().enumerate() {
            let edge = source.edge(e);
            let mut at = vertex_map[edge.tail];
            for side in walk {
                if side.edge >= target.edges().len() || side.sign.abs() != 1 {
                    return Err(ComplexError::InconsistentImageWalk { edge: edge.name.clone() });
                }
                let image = target.edge(side.edge);
                let (from, to) = if side.sign > 0 { (image.tail, image.head) } else { (image.head, image.tail) };
                if from != at {
                    return Err(ComplexError::InconsistentImageWalk { edge: edge.name.clone() });
                }
                at = to;
            }
            if at != vertex_map[edge.head] {
                return Err(ComplexError::InconsistentImageWalk { edge: edge.name.clone() });
            }
        }
        Ok(CellMap { source: source.id(), target: target.id(), vertex_map, edge_walks })
    }

    /// Relabeling by vertex names: each source edge maps to the lowest-index
    /// target edge between the images of its endpoints (or to the empty walk
    /// when both endpoints collapse to one vertex).
    pub fn from_vertex_names(
        source: &MetricComplex,
        target: &MetricComplex,
        names: &[(&str, &str)],
    ) -> Result<Self, ComplexError> {
        let mut vertex_map = vec![usize::MAX; source.vertices().len()];
        for &(from, to) in names {
            vertex_map[source.vertex_id(from)?] = target.vertex_id(to)?;
        }
        if vertex_map.contains(&usize::MAX) {
            return Err(ComplexError::VertexMapLength { expected: source.vertices().len(), got: names.len() });
        }
        let mut walks = Vec::with_capacity(source.edges().len());
        for edge in source.edges() {
            let (a, b) = (vertex_map[edge.tail], vertex_map[edge.head]);
            if a == b {
                walks.push(Vec::new());
            } else {
                let side = target
                    .edge_between(a, b)
                    .ok_or_else(|| ComplexError::InconsistentImageWalk { edge: edge.name.clone() })?;
                walks.push(vec![side]);
            }
        }
        Self::new(source, target, vertex_map, walks)
    }

    pub fn push_edges(&self, target: &MetricComplex, t: &Chain1) -> Result<Chain1, ComplexError> {
        self.check(target, t.complex_id())?;
        let mut out = Chain1::zero(target);
        for (e, c) in t.iter() {
            for side in &self.edge_walks[e] {
                out.add_at(side.edge, c * side.sign);
            }
        }
        Ok(out)
    }

    pub fn push_vertices(&self, target: &MetricComplex, t: &Chain0) -> Result<Chain0, ComplexError> {
        self.check(target, t.complex_id())?;
        let mut out = Chain0::zero(target);
        for (v, c) in t.iter() {
            out.add_at(self.vertex_map[v], c);
        }
        Ok(out)
    }

    fn check(&self, target: &MetricComplex, chain: ComplexId) -> Result<(), ComplexError> {
        if target.id() != self.target || chain != self.source {
            return Err(ComplexError::ComplexMismatch);
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn identity_relabeling_preserves_chain_and_mass() {
        let src = fixtures::triangle();
        let dst = fixtures::triangle();
        let map = CellMap::from_vertex_names(&src, &dst, &[("a", "a"), ("b", "b"), ("c", "c")]).unwrap();
        let t = Chain1::from_named(&src, [("ab", 2), ("bc", -1)]).unwrap();
        let pushed = map.push_edges(&dst, &t).unwrap();
        assert_eq!(pushed, Chain1::from_named(&dst, [("ab", 2), ("bc", -1)]).unwrap());
        assert_eq!(src.mass_report(&t).unwrap(), dst.mass_report(&pushed).unwrap());
    }

    #[test]
    fn collapsed_edge_pushes_to_zero() {
        let src = fixtures::triangle();
        let dst = fixtures::triangle();
        let map = CellMap::from_vertex_names(&src, &dst, &[("a", "a"), ("b", "a"), ("c", "c")]).unwrap();
        let t = Chain1::from_named(&src, [("ab", 1)]).unwrap();
        assert!(map.push_edges(&dst, &t).unwrap().is_zero());
    }

    #[test]
    fn folded_cycle_pushes_to_zero() {
        let src = fixtures::triangle();
        let dst = fixtures::triangle();
        let ab = dst.edge_id("ab").unwrap();
        // c ↦ a; ab ↦ (a→b), bc ↦ (b→a), ca ↦ empty.
        let map = CellMap::new(
            &src,
            &dst,
            vec![0, 1, 0],
            vec![vec![Side { edge: ab, sign: 1 }], vec![Side { edge: ab, sign: -1 }], vec![]],
        )
        .unwrap();
        let t = fixtures::triangle_cycle(&src);
        assert!(map.push_edges(&dst, &t).unwrap().is_zero());
    }

    #[test]
    fn inconsistent_walk_is_rejected() {
        let src = fixtures::triangle();
        let dst = fixtures::triangle();
        let ab = dst.edge_id("ab").unwrap();
        let err = CellMap::new(&src, &dst, vec![0, 1, 2], vec![vec![Side { edge: ab, sign: -1 }], vec![], vec![]])
            .unwrap_err();
        assert!(matches!(err, ComplexError::InconsistentImageWalk { .. }));
    }

    proptest! {
        // Random vertex maps from the figure-eight onto the Möbius strip's K5
        // 1-skeleton always admit edge images, so every such map is cellular.
        #[test]
        fn pushforward_commutes_with_boundary(
            images in proptest::collection::vec(0usize..5, 6),
            coeffs in proptest::collection::vec(-3i64..=3, 7),
        ) {
            let src = fixtures::figure_eight();
            let dst = fixtures::mobius_strip();
            let names: Vec<(String, String)> = src
                .vertices()
                .iter()
                .zip(&images)
                .map(|(v, &i)| (v.name.clone(), format!("m{i}")))
                .collect();
            let pairs: Vec<(&str, &str)> = names.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
            let map = CellMap::from_vertex_names(&src, &dst, &pairs).unwrap();
            let t = Chain1::from_coeffs(&src, coeffs.into_iter().enumerate()).unwrap();
            let lhs = dst.boundary(&map.push_edges(&dst, &t).unwrap()).unwrap();
            let rhs = map.push_vertices(&dst, &src.boundary(&t).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
