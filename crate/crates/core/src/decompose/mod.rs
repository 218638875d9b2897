//! Decomposition of integer 1-chains into indecomposable components.
//!
//! A nonzero chain is indecomposable exactly when it is a unit simple path
//! or a unit simple cycle in its oriented support. Everything here works
//! with *subcurrents*: `A ≼ S` when `A` and `S - A` satisfy the edgewise and
//! vertexwise sign conditions, i.e. `N(S) = N(A) + N(S - A)`.
//!
//! Decompositions are finite, so the grouping of small components used for
//! countable partitions is the identity here.

mod bound;
mod greedy;
mod search;
mod variational;

use std::fmt;

use thiserror::Error;

use crate::certificate::{verify_decomposition, AdditivityCertificate};
use crate::chain::Chain1;
use crate::complex::{ComplexError, MetricComplex};
use crate::flat::FlatNormError;

pub use bound::{big_component_bound_check, BigComponentReport};
pub use greedy::{greedy_decompose, greedy_decompose_with_budget, SearchMode, DEFAULT_EXACT_BUDGET};
pub use search::{loop_erased_component, prefer, ShapeKind, SimpleShape};
pub use variational::{
    variational_oracle, EnergyValue, VariationalOracle, VariationalResult, DEFAULT_ALPHA_DEN, DEFAULT_ALPHA_NUM,
    DEFAULT_MASS_BOUND, ENERGY_SLACK,
};

pub(crate) use search::OrientedSupport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecomposeError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    FlatNorm(#[from] FlatNormError),
    #[error("instance too large: {size} exceeds the limit {limit}")]
    InstanceTooLarge { size: usize, limit: usize },
    #[error("alpha must lie strictly between 1 and 2")]
    InvalidAlpha,
    #[error("invalid decomposition: {0}")]
    InvalidDecomposition(String),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    Greedy,
    VariationalOracle,
    CurveSplit,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Greedy => "greedy",
            Method::VariationalOracle => "variational_oracle",
            Method::CurveSplit => "curve_split",
        })
    }
}

impl std::str::FromStr for Method {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "greedy" => Ok(Method::Greedy),
            "variational_oracle" => Ok(Method::VariationalOracle),
            "curve_split" => Ok(Method::CurveSplit),
            other => Err(format!("unknown decomposition method `{other}`")),
        }
    }
}

/// Ordered indecomposable components of a chain with their certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    parent: Chain1,
    components: Vec<Chain1>,
    certificate: AdditivityCertificate,
    method: Method,
}

impl Decomposition {
    /// Validates that `components` are nonzero, indecomposable, sum to
    /// `parent` and split its normal mass additively.
    pub fn new(
        cx: &MetricComplex,
        parent: &Chain1,
        components: Vec<Chain1>,
        method: Method,
    ) -> Result<Self, DecomposeError> {
        let certificate = verify_decomposition(cx, parent, &components)?;
        if !certificate.is_valid() {
            return Err(DecomposeError::InvalidDecomposition("additivity certificate fails".into()));
        }
        for (i, c) in components.iter().enumerate() {
            if !indecomposability(cx, c)?.is_indecomposable() {
                return Err(DecomposeError::InvalidDecomposition(format!("component {i} is decomposable")));
            }
        }
        Ok(Decomposition { parent: parent.clone(), components, certificate, method })
    }

    pub fn parent(&self) -> &Chain1 {
        &self.parent
    }

    pub fn components(&self) -> &[Chain1] {
        &self.components
    }

    pub fn certificate(&self) -> &AdditivityCertificate {
        &self.certificate
    }

    pub fn method(&self) -> Method {
        self.method
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Components as a sorted multiset, for order-insensitive comparison.
    pub fn component_multiset(&self) -> Vec<Chain1> {
        let mut parts = self.components.clone();
        parts.sort_by(|a, b| a.iter().cmp(b.iter()));
        parts
    }
}

/// Outcome of the indecomposability test, with a witness either way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Indecomposability {
    /// The zero chain; neither decomposable nor indecomposable, reported as
    /// not indecomposable.
    Zero,
    Indecomposable(SimpleShape),
    /// A nonzero split `t = first + second` with additive normal mass.
    Decomposable {
        first: Chain1,
        second: Chain1,
    },
}

impl Indecomposability {
    pub fn is_indecomposable(&self) -> bool {
        matches!(self, Indecomposability::Indecomposable(_))
    }
}

/// Decides indecomposability of `t`.
pub fn indecomposability(cx: &MetricComplex, t: &Chain1) -> Result<Indecomposability, ComplexError> {
    cx.ensure_owns(t)?;
    if t.is_zero() {
        return Ok(Indecomposability::Zero);
    }
    if t.max_abs_coeff() == 1 {
        if let Some(shape) = trace_simple_shape(cx, t) {
            return Ok(Indecomposability::Indecomposable(shape));
        }
    }
    let first = loop_erased_component(cx, t).expect("nonzero chain").chain(cx)?;
    let second = t.checked_sub(&first)?;
    debug_assert!(!second.is_zero());
    debug_assert!(verify_decomposition(cx, t, &[first.clone(), second.clone()])?.is_valid());
    Ok(Indecomposability::Decomposable { first, second })
}

pub fn is_indecomposable(cx: &MetricComplex, t: &Chain1) -> Result<bool, ComplexError> {
    Ok(indecomposability(cx, t)?.is_indecomposable())
}

/// For a `±1` chain: the single path or cycle its oriented support forms,
/// if it forms one.
fn trace_simple_shape(cx: &MetricComplex, t: &Chain1) -> Option<SimpleShape> {
    let support = OrientedSupport::new(cx, t);
    let n = cx.vertices().len();
    let mut indeg = vec![0usize; n];
    for arcs in &support.out {
        if arcs.len() > 1 {
            return None;
        }
        for &(w, _) in arcs {
            indeg[w] += 1;
        }
    }
    if indeg.iter().any(|&d| d > 1) {
        return None;
    }
    let start = (0..n).find(|&v| indeg[v] == 0 && !support.out[v].is_empty());
    let (kind, first) = match start {
        Some(v) => (ShapeKind::Path, v),
        None => (ShapeKind::Cycle, (0..n).find(|&v| !support.out[v].is_empty())?),
    };
    let mut vertices = vec![first];
    let mut steps = Vec::new();
    let mut v = first;
    while let Some(&(w, side)) = support.out[v].first() {
        steps.push(side);
        vertices.push(w);
        v = w;
        if w == first {
            break;
        }
    }
    (steps.len() == t.support_len()).then_some(SimpleShape { kind, vertices, steps })
}
