//! Sparse integer chains.

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::marker::PhantomData;

use crate::complex::{CellDim, ComplexError, ComplexId, MetricComplex};
use crate::rational::Rational;

mod sealed {
    pub trait Sealed {}
}

/// Marker for the cell dimension a chain lives on.
pub trait CellKind: sealed::Sealed + Copy + Clone + fmt::Debug + PartialEq + Eq + Hash + Send + Sync + 'static {
    const DIM: CellDim;
    fn count(cx: &MetricComplex) -> usize;
    fn weight(cx: &MetricComplex, index: usize) -> Rational;
    fn name(cx: &MetricComplex, index: usize) -> &str;
    fn index(cx: &MetricComplex, name: &str) -> Result<usize, ComplexError>;
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct VertexCell;
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeCell;
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub struct FaceCell;

impl sealed::Sealed for VertexCell {}
impl sealed::Sealed for EdgeCell {}
impl sealed::Sealed for FaceCell {}

impl CellKind for VertexCell {
    const DIM: CellDim = CellDim::Vertex;
    fn count(cx: &MetricComplex) -> usize {
        cx.vertices().len()
    }
    /// Dirac masses have unit weight.
    fn weight(_cx: &MetricComplex, _index: usize) -> Rational {
        crate::rational::int(1)
    }
    fn name(cx: &MetricComplex, index: usize) -> &str {
        &cx.vertex(index).name
    }
    fn index(cx: &MetricComplex, name: &str) -> Result<usize, ComplexError> {
        cx.vertex_id(name)
    }
}

impl CellKind for EdgeCell {
    const DIM: CellDim = CellDim::Edge;
    fn count(cx: &MetricComplex) -> usize {
        cx.edges().len()
    }
    fn weight(cx: &MetricComplex, index: usize) -> Rational {
        cx.edge(index).length.clone()
    }
    fn name(cx: &MetricComplex, index: usize) -> &str {
        &cx.edge(index).name
    }
    fn index(cx: &MetricComplex, name: &str) -> Result<usize, ComplexError> {
        cx.edge_id(name)
    }
}

impl CellKind for FaceCell {
    const DIM: CellDim = CellDim::Face;
    fn count(cx: &MetricComplex) -> usize {
        cx.faces().len()
    }
    fn weight(cx: &MetricComplex, index: usize) -> Rational {
        cx.face(index).area.clone()
    }
    fn name(cx: &MetricComplex, index: usize) -> &str {
        &cx.face(index).name
    }
    fn index(cx: &MetricComplex, name: &str) -> Result<usize, ComplexError> {
        cx.face_id(name)
    }
}

/// An integer chain: finitely many cells of one dimension with nonzero
/// integer coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chain<K: CellKind> {
    complex: ComplexId,
    coeffs: BTreeMap<usize, i64>,
    kind: PhantomData<K>,
}

pub type Chain0 = Chain<VertexCell>;
pub type Chain1 = Chain<EdgeCell>;
pub type Chain2 = Chain<FaceCell>;

impl<K: CellKind> fmt::Debug for Chain<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chain{:?}", self.coeffs)
    }
}

impl<K: CellKind> Chain<K> {
    pub fn zero(cx: &MetricComplex) -> Self {
        Self::zero_on(cx.id())
    }

    pub(crate) fn zero_on(complex: ComplexId) -> Self {
        Chain { complex, coeffs: BTreeMap::new(), kind: PhantomData }
    }

    /// Builds a chain from `(cell index, coefficient)` pairs, summing repeats.
    pub fn from_coeffs(
        cx: &MetricComplex,
        coeffs: impl IntoIterator<Item = (usize, i64)>,
    ) -> Result<Self, ComplexError> {
        let count = K::count(cx);
        let mut chain = Self::zero(cx);
        for (index, c) in coeffs {
            if index >= count {
                return Err(ComplexError::UnknownIndex { dim: K::DIM, index });
            }
            chain.add_at(index, c);
        }
        Ok(chain)
    }

    /// Builds a chain from `(cell id, coefficient)` pairs, summing repeats.
    pub fn from_named<'a>(
        cx: &MetricComplex,
        coeffs: impl IntoIterator<Item = (&'a str, i64)>,
    ) -> Result<Self, ComplexError> {
        let mut chain = Self::zero(cx);
        for (name, c) in coeffs {
            chain.add_at(K::index(cx, name)?, c);
        }
        Ok(chain)
    }

    pub fn unit(cx: &MetricComplex, index: usize) -> Result<Self, ComplexError> {
        Self::from_coeffs(cx, [(index, 1)])
    }

    pub(crate) fn add_at(&mut self, index: usize, c: i64) {
        if c == 0 {
            return;
        }
        let slot = self.coeffs.entry(index).or_insert(0);
        *slot += c;
        if *slot == 0 {
            self.coeffs.remove(&index);
        }
    }

    pub fn complex_id(&self) -> ComplexId {
        self.complex
    }

    pub fn coeff(&self, index: usize) -> i64 {
        self.coeffs.get(&index).copied().unwrap_or(0)
    }

    /// Nonzero `(cell, coefficient)` pairs in ascending cell order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.coeffs.iter().map(|(&i, &c)| (i, c))
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.keys().copied()
    }

    pub fn support_len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Sum of absolute coefficients, ignoring weights.
    pub fn abs_sum(&self) -> i64 {
        self.coeffs.values().map(|c| c.abs()).sum()
    }

    pub fn max_abs_coeff(&self) -> i64 {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or(0)
    }

    fn same_complex(&self, other: &Self) -> Result<(), ComplexError> {
        if self.complex == other.complex {
            Ok(())
        } else {
            Err(ComplexError::ComplexMismatch)
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, ComplexError> {
        self.same_complex(other)?;
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_at(i, c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, ComplexError> {
        self.same_complex(other)?;
        let mut out = self.clone();
        for (i, c) in other.iter() {
            out.add_at(i, -c);
        }
        Ok(out)
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::zero_on(self.complex);
        if k != 0 {
            out.coeffs = self.coeffs.iter().map(|(&i, &c)| (i, c * k)).collect();
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scaled(-1)
    }

    /// Sums chains that must all live on `cx`.
    pub fn sum<'a>(cx: &MetricComplex, chains: impl IntoIterator<Item = &'a Self>) -> Result<Self, ComplexError> {
        let mut out = Self::zero(cx);
        for c in chains {
            out = out.checked_add(c)?;
        }
        Ok(out)
    }

    /// Human-readable `name:coeff` listing, mostly for diagnostics.
    pub fn describe(&self, cx: &MetricComplex) -> String {
        let parts: Vec<String> = self.iter().map(|(i, c)| format!("{}:{}", K::name(cx, i), c)).collect();
        format!("[{}]", parts.join(" "))
    }
}
