//! Integral 1-currents at discrete scale.
//!
//! Integer chains on weighted complexes with exact rational weights, their
//! mass, boundary and flat norm, decomposition into indecomposable
//! components, the curve characterisation of those components, and pixel
//! sets of finite perimeter in the plane.

pub mod certificate;
pub mod chain;
pub mod complex;
pub mod curves;
pub mod decompose;
pub mod fixtures;
pub mod flat;
pub mod io;
pub mod lp;
pub mod ops;
pub mod planar;
pub mod pushforward;
pub mod rational;
pub mod render;
pub mod report;

pub use certificate::{verify_decomposition, AdditivityCertificate, CellSplit};
pub use chain::{CellKind, Chain, Chain0, Chain1, Chain2, EdgeCell, FaceCell, VertexCell};
pub use complex::{CellDim, ComplexBuilder, ComplexError, ComplexId, MetricComplex, Side};
pub use curves::{classify, currentify, Classification, CurveError, CurvePiece};
pub use decompose::{
    big_component_bound_check, greedy_decompose, indecomposability, is_indecomposable, variational_oracle,
    BigComponentReport, DecomposeError, Decomposition, Indecomposability, Method, SearchMode, VariationalOracle,
    VariationalResult,
};
pub use flat::{flat_norm, isoperimetric_report, minimal_filling, FlatNormCache, FlatNormError, FlatNormResult};
pub use ops::MassReport;
pub use planar::{
    boundary_current, indecomposable_components, is_simple, jordan_loop, PixelSet, PlanarError, SimplicityMethod,
};
pub use pushforward::CellMap;
pub use rational::Rational;
pub use render::RenderError;
pub use report::{report_row, row_from_decomposition, BatchReport, ReportRow};
