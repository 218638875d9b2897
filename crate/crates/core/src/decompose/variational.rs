//! Exhaustive maximiser of the concave energy `Σ F(Tᵢ)^{1/α}`.
//!
//! Enumerates every multiset of indecomposable subcurrents that splits the
//! chain additively. Because `x ↦ x^{1/α}` is strictly concave and the flat
//! norm is subadditive, refining a partition never lowers the energy, so the
//! maximum over fully refined partitions is the maximum over all of them.
//! Only meant for small instances.

use num_rational::Ratio;
use num_traits::{One, ToPrimitive, Zero};

use crate::chain::Chain1;
use crate::complex::MetricComplex;
use crate::flat::FlatNormCache;
use crate::rational::{int, to_f64, Rational};

use super::search::{simple_subcurrents, BudgetExceeded, OrientedSupport, ShapeKind, SimpleShape};
use super::{DecomposeError, Decomposition, Method};

/// Largest total integer edge mass `Σ |t(e)|` accepted by default.
pub const DEFAULT_MASS_BOUND: usize = 12;
pub const DEFAULT_ALPHA_NUM: i64 = 3;
pub const DEFAULT_ALPHA_DEN: i64 = 2;
/// Two energies closer than this are treated as equal.
pub const ENERGY_SLACK: f64 = 1e-12;

const CANDIDATE_BUDGET: usize = 200_000;

#[derive(Clone, Debug, PartialEq)]
pub struct EnergyValue {
    pub alpha: Rational,
    pub value: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VariationalResult {
    pub decomposition: Decomposition,
    pub energy: EnergyValue,
    /// No other partition reaches the maximum within [`ENERGY_SLACK`].
    pub unique: bool,
    pub partitions_explored: usize,
}

/// Reusable oracle; keeps flat norms of components across calls.
#[derive(Debug)]
pub struct VariationalOracle<'a> {
    cx: &'a MetricComplex,
    alpha: Rational,
    exponent: f64,
    mass_bound: usize,
    cache: FlatNormCache,
}

pub fn variational_oracle(
    cx: &MetricComplex,
    t: &Chain1,
    alpha: &Rational,
) -> Result<VariationalResult, DecomposeError> {
    VariationalOracle::new(cx, alpha.clone(), DEFAULT_MASS_BOUND)?.run(t)
}

impl<'a> VariationalOracle<'a> {
    pub fn new(cx: &'a MetricComplex, alpha: Rational, mass_bound: usize) -> Result<Self, DecomposeError> {
        if alpha <= Rational::one() || alpha >= int(2) {
            return Err(DecomposeError::InvalidAlpha);
        }
        let exponent = 1.0 / to_f64(&alpha);
        Ok(VariationalOracle { cx, alpha, exponent, mass_bound, cache: FlatNormCache::new() })
    }

    pub fn default_alpha() -> Rational {
        Ratio::new(DEFAULT_ALPHA_NUM.into(), DEFAULT_ALPHA_DEN.into())
    }

    pub fn cache(&self) -> &FlatNormCache {
        &self.cache
    }

    pub fn run(&self, t: &Chain1) -> Result<VariationalResult, DecomposeError> {
        let cx = self.cx;
        cx.ensure_owns(t)?;
        let size = t.abs_sum() as usize;
        if size > self.mass_bound {
            return Err(DecomposeError::InstanceTooLarge { size, limit: self.mass_bound });
        }
        let mut shapes = simple_subcurrents(cx, t, CANDIDATE_BUDGET).map_err(|BudgetExceeded| {
            DecomposeError::InstanceTooLarge { size: CANDIDATE_BUDGET + 1, limit: CANDIDATE_BUDGET }
        })?;
        shapes.sort_by_key(SimpleShape::sorted_edges);
        let support = OrientedSupport::new(cx, t);
        let mut search = Search {
            shapes: &shapes,
            energies: vec![None; shapes.len()],
            coeffs: support.coeffs,
            boundary: support.boundary,
            picked: Vec::new(),
            best: None,
            unique: true,
            explored: 0,
        };
        search.descend(self, 0)?;
        let (best_energy, picked) = search.best.take().unwrap_or((0.0, Vec::new()));
        let components = picked.iter().map(|&i| shapes[i].chain(cx)).collect::<Result<Vec<_>, _>>()?;
        let decomposition = Decomposition::new(cx, t, components, Method::VariationalOracle)?;
        Ok(VariationalResult {
            decomposition,
            energy: EnergyValue { alpha: self.alpha.clone(), value: best_energy },
            unique: search.unique,
            partitions_explored: search.explored,
        })
    }

    fn energy_of(&self, shape: &SimpleShape) -> Result<f64, DecomposeError> {
        let flat = self.cache.value(self.cx, &shape.chain(self.cx)?)?;
        Ok(if flat.is_zero() { 0.0 } else { flat.to_f64().unwrap_or(f64::NAN).powf(self.exponent) })
    }
}

struct Search<'s> {
    shapes: &'s [SimpleShape],
    energies: Vec<Option<f64>>,
    coeffs: Vec<i64>,
    boundary: Vec<i64>,
    picked: Vec<usize>,
    best: Option<(f64, Vec<usize>)>,
    unique: bool,
    explored: usize,
}

impl Search<'_> {
    fn fits(&self, shape: &SimpleShape) -> bool {
        if !shape.steps.iter().all(|s| self.coeffs[s.edge] * s.sign >= 1) {
            return false;
        }
        match shape.kind {
            ShapeKind::Cycle => true,
            ShapeKind::Path => {
                let first = shape.vertices[0];
                let last = *shape.vertices.last().expect("path has vertices");
                self.boundary[first] <= -1 && self.boundary[last] >= 1
            }
        }
    }

    fn apply(&mut self, shape: &SimpleShape, dir: i64) {
        for s in &shape.steps {
            self.coeffs[s.edge] -= dir * s.sign;
        }
        if shape.kind == ShapeKind::Path {
            self.boundary[shape.vertices[0]] += dir;
            self.boundary[*shape.vertices.last().expect("path has vertices")] -= dir;
        }
    }

    fn descend(&mut self, oracle: &VariationalOracle<'_>, start: usize) -> Result<(), DecomposeError> {
        if self.coeffs.iter().all(|&c| c == 0) {
            self.explored += 1;
            let mut energy = 0.0;
            for &i in &self.picked {
                energy += match self.energies[i] {
                    Some(e) => e,
                    None => {
                        let e = oracle.energy_of(&self.shapes[i])?;
                        self.energies[i] = Some(e);
                        e
                    }
                };
            }
            match &self.best {
                None => self.best = Some((energy, self.picked.clone())),
                Some((best, _)) if energy > best + ENERGY_SLACK => {
                    self.best = Some((energy, self.picked.clone()));
                    self.unique = true;
                }
                // Enumeration runs in lexicographic order, so the incumbent
                // already wins the tie-break.
                Some((best, _)) if (energy - best).abs() <= ENERGY_SLACK => self.unique = false,
                Some(_) => {}
            }
            return Ok(());
        }
        for i in start..self.shapes.len() {
            let shapes = self.shapes;
            if !self.fits(&shapes[i]) {
                continue;
            }
            self.apply(&shapes[i], 1);
            self.picked.push(i);
            self.descend(oracle, i)?;
            self.picked.pop();
            self.apply(&shapes[i], -1);
        }
        Ok(())
    }
}
