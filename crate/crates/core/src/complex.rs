//! Weighted oriented 1-/2-complexes.
//!
//! A [`MetricComplex`] is the arena every chain lives on: vertices, oriented
//! edges with positive lengths, and oriented polygonal faces with positive
//! areas. Parallel edges and self-loops are allowed. Complexes are immutable
//! once built and carry a process-unique [`ComplexId`] so that chains from two
//! different complexes can never be combined by accident.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU64, Ordering};

use thiserror::Error;

use crate::rational::{is_positive, Rational};

static NEXT_COMPLEX_ID: AtomicU64 = AtomicU64::new(1);

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ComplexId(u64);

impl ComplexId {
    fn fresh() -> Self {
        ComplexId(NEXT_COMPLEX_ID.fetch_add(1, Ordering::Relaxed))
    }
}

/// Dimension tag used in error messages and file headers.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum CellDim {
    Vertex,
    Edge,
    Face,
}

impl fmt::Display for CellDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CellDim::Vertex => "vertex",
            CellDim::Edge => "edge",
            CellDim::Face => "face",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("duplicate {dim} id `{name}`")]
    DuplicateId { dim: CellDim, name: String },
    #[error("unknown {dim} id `{name}`")]
    UnknownCell { dim: CellDim, name: String },
    #[error("{dim} index {index} out of range")]
    UnknownIndex { dim: CellDim, index: usize },
    #[error("{dim} `{name}` must have a strictly positive weight")]
    NonPositiveWeight { dim: CellDim, name: String },
    #[error("face `{name}` does not bound a closed walk")]
    OpenFace { name: String },
    #[error("chain belongs to a different complex")]
    ComplexMismatch,
    #[error("image walk of edge `{edge}` does not run from the image of its tail to the image of its head")]
    InconsistentImageWalk { edge: String },
    #[error("vertex map has {got} entries, source complex has {expected} vertices")]
    VertexMapLength { expected: usize, got: usize },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Vertex {
    pub name: String,
    pub coords: Option<[f64; 2]>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    pub tail: usize,
    pub head: usize,
    pub length: Rational,
}

/// One signed edge on a face boundary; `sign` is `+1` or `-1`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub edge: usize,
    pub sign: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    pub sides: Vec<Side>,
    pub area: Rational,
}

#[derive(Debug)]
pub struct MetricComplex {
    id: ComplexId,
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    face_index: HashMap<String, usize>,
    /// Edges incident to each vertex, ascending. A self-loop is listed once.
    incident: Vec<Vec<usize>>,
}

impl MetricComplex {
    pub fn builder() -> ComplexBuilder {
        ComplexBuilder::default()
    }

    pub fn id(&self) -> ComplexId {
        self.id
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn vertex(&self, index: usize) -> &Vertex {
        &self.vertices[index]
    }

    pub fn edge(&self, index: usize) -> &Edge {
        &self.edges[index]
    }

    pub fn face(&self, index: usize) -> &Face {
        &self.faces[index]
    }

    pub fn vertex_id(&self, name: &str) -> Result<usize, ComplexError> {
        lookup(&self.vertex_index, CellDim::Vertex, name)
    }

    pub fn edge_id(&self, name: &str) -> Result<usize, ComplexError> {
        lookup(&self.edge_index, CellDim::Edge, name)
    }

    pub fn face_id(&self, name: &str) -> Result<usize, ComplexError> {
        lookup(&self.face_index, CellDim::Face, name)
    }

    pub fn incident_edges(&self, vertex: usize) -> &[usize] {
        &self.incident[vertex]
    }

    /// Lowest-index edge joining `a` and `b` in either orientation, with the
    /// sign under which it runs from `a` to `b`.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<Side> {
        self.incident.get(a)?.iter().find_map(|&e| {
            let edge = &self.edges[e];
            if edge.tail == a && edge.head == b {
                Some(Side { edge: e, sign: 1 })
            } else if edge.head == a && edge.tail == b {
                Some(Side { edge: e, sign: -1 })
            } else {
                None
            }
        })
    }

    pub fn has_coordinates(&self) -> bool {
        self.vertices.iter().all(|v| v.coords.is_some())
    }
}

fn lookup(map: &HashMap<String, usize>, dim: CellDim, name: &str) -> Result<usize, ComplexError> {
    map.get(name).copied().ok_or_else(|| ComplexError::UnknownCell { dim, name: name.to_string() })
}

/// Incrementally validated construction of a [`MetricComplex`].
#[derive(Default, Debug)]
pub struct ComplexBuilder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    vertex_index: HashMap<String, usize>,
    edge_index: HashMap<String, usize>,
    face_index: HashMap<String, usize>,
}

impl ComplexBuilder {
    pub fn vertex(&mut self, name: impl Into<String>, coords: Option<[f64; 2]>) -> Result<usize, ComplexError> {
        let name = name.into();
        let index = self.vertices.len();
        insert_unique(&mut self.vertex_index, CellDim::Vertex, &name, index)?;
        self.vertices.push(Vertex { name, coords });
        Ok(index)
    }

    pub fn edge(
        &mut self,
        name: impl Into<String>,
        tail: &str,
        head: &str,
        length: Rational,
    ) -> Result<usize, ComplexError> {
        let name = name.into();
        let tail = lookup(&self.vertex_index, CellDim::Vertex, tail)?;
        let head = lookup(&self.vertex_index, CellDim::Vertex, head)?;
        if !is_positive(&length) {
            return Err(ComplexError::NonPositiveWeight { dim: CellDim::Edge, name });
        }
        let index = self.edges.len();
        insert_unique(&mut self.edge_index, CellDim::Edge, &name, index)?;
        self.edges.push(Edge { name, tail, head, length });
        Ok(index)
    }

    /// Adds a face bounded by the signed edges in `sides`, listed in cyclic
    /// order: the head of each signed edge must be the tail of the next.
    pub fn face(
        &mut self,
        name: impl Into<String>,
        sides: &[(&str, i64)],
        area: Rational,
    ) -> Result<usize, ComplexError> {
        let name = name.into();
        let mut resolved = Vec::with_capacity(sides.len());
        for &(edge, sign) in sides {
            let edge = lookup(&self.edge_index, CellDim::Edge, edge)?;
            if sign != 1 && sign != -1 {
                return Err(ComplexError::OpenFace { name });
            }
            resolved.push(Side { edge, sign });
        }
        if !is_positive(&area) {
            return Err(ComplexError::NonPositiveWeight { dim: CellDim::Face, name });
        }
        if !self.is_closed_walk(&resolved) {
            return Err(ComplexError::OpenFace { name });
        }
        let index = self.faces.len();
        insert_unique(&mut self.face_index, CellDim::Face, &name, index)?;
        self.faces.push(Face { name, sides: resolved, area });
        Ok(index)
    }

    fn oriented_ends(&self, side: Side) -> (usize, usize) {
        let e = &self.edges[side.edge];
        if side.sign > 0 {
            (e.tail, e.head)
        } else {
            (e.head, e.tail)
        }
    }

    fn is_closed_walk(&self, sides: &[Side]) -> bool {
        if sides.is_empty() {
            return false;
        }
        (0..sides.len()).all(|i| {
            let (_, end) = self.oriented_ends(sides[i]);
            let (start, _) = self.oriented_ends(sides[(i + 1) % sides.len()]);
            end == start
        })
    }

    pub fn build(self) -> MetricComplex {
        let mut incident = vec![Vec::new(); self.vertices.len()];
        for (i, e) in self.edges.iter().enumerate() {
            incident[e.tail].push(i);
            if e.head != e.tail {
                incident[e.head].push(i);
            }
        }
        MetricComplex {
            id: ComplexId::fresh(),
            vertices: self.vertices,
            edges: self.edges,
            faces: self.faces,
            vertex_index: self.vertex_index,
            edge_index: self.edge_index,
            face_index: self.face_index,
            incident,
        }
    }
}

fn insert_unique(map: &mut HashMap<String, usize>, dim: CellDim, name: &str, index: usize) -> Result<(), ComplexError> {
    if map.contains_key(name) {
        return Err(ComplexError::DuplicateId { dim, name: name.to_string() });
    }
    map.insert(name.to_string(), index);
    Ok(())
}
