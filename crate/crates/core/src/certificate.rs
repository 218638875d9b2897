//! Machine-checkable certificate that a finite splitting `T = Σ T_i` is
//! additive in normal mass.
//!
//! Additivity of `N` over a finite sum is equivalent to two local sign
//! conditions: on every edge the nonzero part coefficients share the parent's
//! sign, and the same holds vertexwise for the boundaries. The certificate
//! records the per-cell tables so a reader can re-check them by hand.

use std::collections::BTreeSet;

use crate::chain::{CellKind, Chain, Chain1};
use crate::complex::{ComplexError, MetricComplex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellSplit {
    pub cell: usize,
    pub parent: i64,
    pub parts: Vec<i64>,
}

impl CellSplit {
    /// All nonzero parts share the parent's sign and the parts sum to it.
    pub fn is_additive(&self) -> bool {
        self.parts.iter().sum::<i64>() == self.parent
            && self.parts.iter().all(|&p| p == 0 || p.signum() == self.parent.signum())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdditivityCertificate {
    pub edges: Vec<CellSplit>,
    pub vertices: Vec<CellSplit>,
    pub sums_to_parent: bool,
    pub mass_additive: bool,
    pub boundary_mass_additive: bool,
}

impl AdditivityCertificate {
    /// `Σ parts = parent` and `N(parent) = Σ N(part)`.
    pub fn is_valid(&self) -> bool {
        self.sums_to_parent && self.mass_additive && self.boundary_mass_additive
    }
}

fn split_table<K: CellKind>(parent: &Chain<K>, parts: &[Chain<K>]) -> Vec<CellSplit> {
    let cells: BTreeSet<usize> = parent.support().chain(parts.iter().flat_map(|p| p.support())).collect();
    cells
        .into_iter()
        .map(|cell| CellSplit {
            cell,
            parent: parent.coeff(cell),
            parts: parts.iter().map(|p| p.coeff(cell)).collect(),
        })
        .collect()
}

/// Builds the additivity certificate for `t = Σ parts`.
pub fn verify_decomposition(
    cx: &MetricComplex,
    t: &Chain1,
    parts: &[Chain1],
) -> Result<AdditivityCertificate, ComplexError> {
    cx.ensure_owns(t)?;
    for p in parts {
        cx.ensure_owns(p)?;
    }
    let sums_to_parent = Chain1::sum(cx, parts)? == *t;
    let edges = split_table(t, parts);
    let parent_boundary = cx.boundary(t)?;
    let part_boundaries = parts.iter().map(|p| cx.boundary(p)).collect::<Result<Vec<_>, _>>()?;
    let vertices = split_table(&parent_boundary, &part_boundaries);
    let mass_additive = edges.iter().all(CellSplit::is_additive);
    let boundary_mass_additive = vertices.iter().all(CellSplit::is_additive);
    Ok(AdditivityCertificate { edges, vertices, sums_to_parent, mass_additive, boundary_mass_additive })
}
