//! Boundary, mass, normal mass and restriction.

use std::collections::BTreeSet;

use crate::chain::{CellKind, Chain, Chain0, Chain1, Chain2};
use crate::complex::{CellDim, ComplexError, MetricComplex};
use crate::rational::{abs_int_times, Rational};
use num_traits::Zero;

/// Mass `M`, boundary mass `M(∂T)` and normal mass `N = M + M(∂T)`.
///
/// For 0- and 2-chains the boundary fields are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MassReport {
    pub mass: Rational,
    pub boundary_mass: Rational,
    pub normal_mass: Rational,
}

impl MetricComplex {
    pub(crate) fn ensure_owns<K: CellKind>(&self, chain: &Chain<K>) -> Result<(), ComplexError> {
        if chain.complex_id() == self.id() {
            Ok(())
        } else {
            Err(ComplexError::ComplexMismatch)
        }
    }

    /// `∂t = Σ t(e) (δ_head − δ_tail)`.
    pub fn boundary(&self, t: &Chain1) -> Result<Chain0, ComplexError> {
        self.ensure_owns(t)?;
        let mut out = Chain0::zero(self);
        for (e, c) in t.iter() {
            let edge = self.edge(e);
            out.add_at(edge.head, c);
            out.add_at(edge.tail, -c);
        }
        Ok(out)
    }

    /// Boundary of a 2-chain: each face contributes its signed sides.
    pub fn face_boundary(&self, s: &Chain2) -> Result<Chain1, ComplexError> {
        self.ensure_owns(s)?;
        let mut out = Chain1::zero(self);
        for (f, c) in s.iter() {
            for side in &self.face(f).sides {
                out.add_at(side.edge, c * side.sign);
            }
        }
        Ok(out)
    }

    /// Weighted absolute coefficient sum.
    pub fn mass<K: CellKind>(&self, chain: &Chain<K>) -> Result<Rational, ComplexError> {
        self.ensure_owns(chain)?;
        Ok(chain.iter().fold(Rational::zero(), |acc, (i, c)| acc + abs_int_times(&K::weight(self, i), c)))
    }

    pub fn mass_report<K: CellKind>(&self, chain: &Chain<K>) -> Result<MassReport, ComplexError> {
        let mass = self.mass(chain)?;
        let boundary_mass = if K::DIM == CellDim::Edge {
            let edges = Chain1::from_coeffs(self, chain.iter())?;
            self.mass(&self.boundary(&edges)?)?
        } else {
            Rational::zero()
        };
        let normal_mass = &mass + &boundary_mass;
        Ok(MassReport { mass, boundary_mass, normal_mass })
    }

    pub fn normal_mass(&self, t: &Chain1) -> Result<Rational, ComplexError> {
        Ok(self.mass(t)? + self.mass(&self.boundary(t)?)?)
    }

    /// Keeps the coefficients on `edges` and drops the rest.
    pub fn restrict(&self, t: &Chain1, edges: &BTreeSet<usize>) -> Result<Chain1, ComplexError> {
        self.ensure_owns(t)?;
        if let Some(&bad) = edges.iter().find(|&&e| e >= self.edges().len()) {
            return Err(ComplexError::UnknownIndex { dim: CellDim::Edge, index: bad });
        }
        Chain1::from_coeffs(self, t.iter().filter(|(e, _)| edges.contains(e)))
    }
}
