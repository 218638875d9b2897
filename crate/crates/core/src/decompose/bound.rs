//! Instance-checkable links of the big-component estimate.
//!
//! For a good partition `(Tₙ)` of `T` with `T₁` the component of largest
//! normal mass, the provable links are `F(T) ≤ Σ F(Tₙ)` (subadditivity)
//! and `F(Tₙ) ≤ N(Tₙ)`. The constant in front of `N(T₁)` is not known
//! numerically, so only the per-instance ratio `F(T) / (N(T₁) N(T))` is
//! reported.

use num_traits::{Signed, Zero};

use crate::chain::Chain1;
use crate::complex::MetricComplex;
use crate::flat::FlatNormCache;
use crate::rational::Rational;

use super::{DecomposeError, Decomposition};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigComponentReport {
    pub flat_parent: Rational,
    pub normal_parent: Rational,
    /// Largest component normal mass.
    pub first_component_normal: Rational,
    pub component_flats: Vec<Rational>,
    pub component_normals: Vec<Rational>,
    /// `F(T) / (N(T₁) N(T))`, zero when either factor vanishes.
    pub empirical_constant: Rational,
    pub chain_inequalities_ok: bool,
}

pub fn big_component_bound_check(
    cx: &MetricComplex,
    t: &Chain1,
    dec: &Decomposition,
    cache: &FlatNormCache,
) -> Result<BigComponentReport, DecomposeError> {
    if dec.parent() != t || !dec.certificate().is_valid() {
        return Err(DecomposeError::InvalidDecomposition("not a certified decomposition of this chain".into()));
    }
    let flat_parent = cache.value(cx, t)?;
    let normal_parent = cx.normal_mass(t)?;
    let mut component_flats = Vec::with_capacity(dec.len());
    let mut component_normals = Vec::with_capacity(dec.len());
    for c in dec.components() {
        component_flats.push(cache.value(cx, c)?);
        component_normals.push(cx.normal_mass(c)?);
    }
    let first_component_normal = component_normals.iter().max().cloned().unwrap_or_else(Rational::zero);
    let flat_sum = component_flats.iter().fold(Rational::zero(), |acc, f| acc + f);
    let chain_inequalities_ok =
        flat_parent <= flat_sum && component_flats.iter().zip(&component_normals).all(|(f, n)| f <= n);
    let denominator = &first_component_normal * &normal_parent;
    let empirical_constant = if denominator.is_positive() { &flat_parent / denominator } else { Rational::zero() };
    Ok(BigComponentReport {
        flat_parent,
        normal_parent,
        first_component_normal,
        component_flats,
        component_normals,
        empirical_constant,
        chain_inequalities_ok,
    })
}
