//! Greedy extraction of indecomposable components.

use crate::chain::Chain1;
use crate::complex::MetricComplex;

use super::search::{prefer, simple_subcurrents, BudgetExceeded};
use super::{loop_erased_component, DecomposeError, Decomposition, Method};

/// Upper bound on the number of candidate shapes enumerated per step in
/// exact mode.
pub const DEFAULT_EXACT_BUDGET: usize = 1_000_000;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Default)]
pub enum SearchMode {
    /// Each step removes a component of maximal normal mass among all
    /// indecomposable subcurrents of the remainder.
    Exact,
    /// Each step removes the component found by a loop-erased walk.
    #[default]
    Heuristic,
}

impl std::str::FromStr for SearchMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(SearchMode::Exact),
            "heuristic" => Ok(SearchMode::Heuristic),
            other => Err(format!("unknown search mode `{other}`")),
        }
    }
}

pub fn greedy_decompose(cx: &MetricComplex, t: &Chain1, mode: SearchMode) -> Result<Decomposition, DecomposeError> {
    greedy_decompose_with_budget(cx, t, mode, DEFAULT_EXACT_BUDGET)
}

/// `S₀ = t`; repeatedly take an indecomposable subcurrent `Tₙ ≼ Sₙ` and set
/// `Sₙ₊₁ = Sₙ − Tₙ` until the remainder vanishes.
pub fn greedy_decompose_with_budget(
    cx: &MetricComplex,
    t: &Chain1,
    mode: SearchMode,
    budget: usize,
) -> Result<Decomposition, DecomposeError> {
    cx.ensure_owns(t)?;
    let mut remainder = t.clone();
    let mut remainder_normal = cx.normal_mass(&remainder)?;
    let mut components = Vec::new();
    while !remainder.is_zero() {
        let shape = match mode {
            SearchMode::Heuristic => loop_erased_component(cx, &remainder).expect("nonzero remainder"),
            SearchMode::Exact => {
                let shapes = simple_subcurrents(cx, &remainder, budget)
                    .map_err(|BudgetExceeded| DecomposeError::InstanceTooLarge { size: budget + 1, limit: budget })?;
                shapes
                    .into_iter()
                    .min_by(|a, b| prefer(cx, a, b))
                    .expect("a nonzero chain always contains a path or cycle subcurrent")
            }
        };
        let component = shape.chain(cx)?;
        let next = remainder.checked_sub(&component)?;
        let next_normal = cx.normal_mass(&next)?;
        assert_eq!(
            &next_normal + shape.normal_mass(cx),
            remainder_normal,
            "extracted component is not a subcurrent of the remainder"
        );
        components.push(component);
        remainder = next;
        remainder_normal = next_normal;
    }
    Decomposition::new(cx, t, components, Method::Greedy)
}
