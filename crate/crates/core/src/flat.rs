//! Flat norm, minimal fillings and isoperimetric diagnostics.
//!
//! `F(T) = min { M(R) + M(S) : T = R + ∂S }` over integer chains, solved as
//! an integer program: the L1 objective is linearised by splitting every
//! coefficient into nonnegative positive and negative parts.

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::chain::{Chain1, Chain2};
use crate::complex::{ComplexError, MetricComplex};
use crate::lp::{IntegerOutcome, LinearProgram, Relation};
use crate::rational::{int, Rational};

pub const DEFAULT_NODE_LIMIT: usize = 20_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FlatNormError {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error("chain has nonzero boundary; only cycles can be filled")]
    NonZeroBoundary,
    #[error("branch and bound node limit reached without an integer filling")]
    SearchLimit,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlatNormResult {
    pub value: Rational,
    pub r: Chain1,
    pub s: Chain2,
    /// Proven optimal (false only if the node limit cut the search short).
    pub optimal: bool,
    /// The linear relaxation was already integral.
    pub relaxation_integral: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FillingResult {
    pub s: Chain2,
    pub fill_mass: Rational,
    pub feasible: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoperimetricReport {
    pub flat: Rational,
    pub mass: Rational,
    pub normal_mass: Rational,
    /// `F / N²`, zero when `N = 0`.
    pub ratio_flat_normal_sq: Rational,
}

/// Edge-by-face incidence restricted to edges that bound some face.
struct FaceIncidence {
    edges: Vec<usize>,
    /// Per face, `(row, signed multiplicity)`.
    columns: Vec<Vec<(usize, i64)>>,
}

impl FaceIncidence {
    fn new(cx: &MetricComplex) -> Self {
        let mut rows: BTreeMap<usize, usize> = BTreeMap::new();
        for face in cx.faces() {
            for side in &face.sides {
                rows.entry(side.edge).or_insert(0);
            }
        }
        for (i, slot) in rows.values_mut().enumerate() {
            *slot = i;
        }
        let columns = cx
            .faces()
            .iter()
            .map(|face| {
                let mut col: BTreeMap<usize, i64> = BTreeMap::new();
                for side in &face.sides {
                    *col.entry(rows[&side.edge]).or_insert(0) += side.sign;
                }
                col.into_iter().filter(|(_, c)| *c != 0).collect()
            })
            .collect();
        FaceIncidence { edges: rows.into_keys().collect(), columns }
    }
}

fn chain2_from_split(cx: &MetricComplex, x: &[Rational], offset: usize) -> Result<Chain2, ComplexError> {
    let coeffs = (0..cx.faces().len()).map(|f| {
        let v = &x[offset + 2 * f] - &x[offset + 2 * f + 1];
        (f, v.to_integer().to_i64().expect("filling coefficient fits in i64"))
    });
    Chain2::from_coeffs(cx, coeffs)
}

/// Exact flat norm with an optimal witness `t = r + ∂s`.
pub fn flat_norm(cx: &MetricComplex, t: &Chain1) -> Result<FlatNormResult, FlatNormError> {
    flat_norm_with_limit(cx, t, DEFAULT_NODE_LIMIT)
}

pub fn flat_norm_with_limit(
    cx: &MetricComplex,
    t: &Chain1,
    node_limit: usize,
) -> Result<FlatNormResult, FlatNormError> {
    cx.ensure_owns(t)?;
    if t.is_zero() || cx.faces().is_empty() {
        return Ok(FlatNormResult {
            value: cx.mass(t)?,
            r: t.clone(),
            s: Chain2::zero(cx),
            optimal: true,
            relaxation_integral: true,
        });
    }
    let inc = FaceIncidence::new(cx);
    let rows = inc.edges.len();
    let face_offset = 2 * rows;
    let mut lp = LinearProgram::new(face_offset + 2 * cx.faces().len());
    for (k, &e) in inc.edges.iter().enumerate() {
        let len = cx.edge(e).length.clone();
        lp.set_cost(2 * k, len.clone());
        lp.set_cost(2 * k + 1, len);
    }
    for (f, face) in cx.faces().iter().enumerate() {
        lp.set_cost(face_offset + 2 * f, face.area.clone());
        lp.set_cost(face_offset + 2 * f + 1, face.area.clone());
    }
    let mut terms: Vec<Vec<(usize, Rational)>> =
        (0..rows).map(|k| vec![(2 * k, int(1)), (2 * k + 1, int(-1))]).collect();
    for (f, col) in inc.columns.iter().enumerate() {
        for &(row, c) in col {
            terms[row].push((face_offset + 2 * f, int(c)));
            terms[row].push((face_offset + 2 * f + 1, int(-c)));
        }
    }
    for (k, row) in terms.into_iter().enumerate() {
        lp.add_constraint(row, Relation::Eq, int(t.coeff(inc.edges[k])));
    }
    // r = t, s = 0 is always feasible.
    let mut incumbent = vec![Rational::zero(); lp.num_vars()];
    for (k, &e) in inc.edges.iter().enumerate() {
        let c = t.coeff(e);
        incumbent[if c >= 0 { 2 * k } else { 2 * k + 1 }] = int(c.abs());
    }
    let solution = match lp.solve_integer(Some(incumbent), node_limit) {
        IntegerOutcome::Solved(s) => s,
        other => unreachable!("flat norm program always has a feasible point, got {other:?}"),
    };
    let s = chain2_from_split(cx, &solution.x, face_offset)?;
    let r = t.checked_sub(&cx.face_boundary(&s)?)?;
    let value = cx.mass(&r)? + cx.mass(&s)?;
    let outside: Rational = t
        .iter()
        .filter(|(e, _)| inc.edges.binary_search(e).is_err())
        .fold(Rational::zero(), |acc, (e, c)| acc + &cx.edge(e).length * int(c.abs()));
    if solution.proven_optimal {
        assert_eq!(value, &solution.value + outside, "flat norm witness disagrees with solver objective");
    }
    Ok(FlatNormResult {
        value,
        r,
        s,
        optimal: solution.proven_optimal,
        relaxation_integral: solution.relaxation_integral,
    })
}

/// Least-area integer 2-chain `s` with `∂s = t`, if one exists.
pub fn minimal_filling(cx: &MetricComplex, t: &Chain1) -> Result<FillingResult, FlatNormError> {
    cx.ensure_owns(t)?;
    if !cx.boundary(t)?.is_zero() {
        return Err(FlatNormError::NonZeroBoundary);
    }
    let infeasible = || FillingResult { s: Chain2::zero(cx), fill_mass: Rational::zero(), feasible: false };
    if t.is_zero() {
        return Ok(FillingResult { s: Chain2::zero(cx), fill_mass: Rational::zero(), feasible: true });
    }
    let inc = FaceIncidence::new(cx);
    if t.support().any(|e| inc.edges.binary_search(&e).is_err()) {
        return Ok(infeasible());
    }
    let mut lp = LinearProgram::new(2 * cx.faces().len());
    for (f, face) in cx.faces().iter().enumerate() {
        lp.set_cost(2 * f, face.area.clone());
        lp.set_cost(2 * f + 1, face.area.clone());
    }
    let mut terms: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); inc.edges.len()];
    for (f, col) in inc.columns.iter().enumerate() {
        for &(row, c) in col {
            terms[row].push((2 * f, int(c)));
            terms[row].push((2 * f + 1, int(-c)));
        }
    }
    for (k, row) in terms.into_iter().enumerate() {
        lp.add_constraint(row, Relation::Eq, int(t.coeff(inc.edges[k])));
    }
    match lp.solve_integer(None, DEFAULT_NODE_LIMIT) {
        IntegerOutcome::Solved(sol) => {
            let s = chain2_from_split(cx, &sol.x, 0)?;
            debug_assert_eq!(cx.face_boundary(&s)?, *t);
            let fill_mass = cx.mass(&s)?;
            Ok(FillingResult { s, fill_mass, feasible: true })
        }
        IntegerOutcome::Infeasible => Ok(infeasible()),
        IntegerOutcome::LimitReached => Err(FlatNormError::SearchLimit),
        IntegerOutcome::Unbounded => unreachable!("filling objective is bounded below by zero"),
    }
}

/// `F`, `M`, `N` and `F / N²` for one chain. Panics if `F ≤ M ≤ N` fails.
pub fn isoperimetric_report(cx: &MetricComplex, t: &Chain1) -> Result<IsoperimetricReport, FlatNormError> {
    let flat = flat_norm(cx, t)?.value;
    let masses = cx.mass_report(t)?;
    assert!(flat <= masses.mass && masses.mass <= masses.normal_mass, "F ≤ M ≤ N violated");
    let ratio_flat_normal_sq = if masses.normal_mass.is_positive() {
        &flat / (&masses.normal_mass * &masses.normal_mass)
    } else {
        Rational::zero()
    };
    Ok(IsoperimetricReport { flat, mass: masses.mass, normal_mass: masses.normal_mass, ratio_flat_normal_sq })
}

/// Memoised flat norms for batches that revisit the same components.
#[derive(Debug, Default)]
pub struct FlatNormCache {
    values: Mutex<HashMap<Chain1, Rational>>,
}

impl FlatNormCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn value(&self, cx: &MetricComplex, t: &Chain1) -> Result<Rational, FlatNormError> {
        if let Some(v) = self.values.lock().expect("cache lock").get(t) {
            return Ok(v.clone());
        }
        let v = flat_norm(cx, t)?.value;
        self.values.lock().expect("cache lock").insert(t.clone(), v.clone());
        Ok(v)
    }

    pub fn len(&self) -> usize {
        self.values.lock().expect("cache lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use proptest::prelude::*;

    #[test]
    fn triangle_cycle_is_filled() {
        let cx = fixtures::triangle();
        let t = fixtures::triangle_cycle(&cx);
        let res = flat_norm(&cx, &t).unwrap();
        assert_eq!(res.value, int(1));
        assert!(res.r.is_zero());
        assert_eq!(res.s.abs_sum(), 1);
        assert!(res.optimal);
    }

    #[test]
    fn zero_chain_has_zero_flat_norm() {
        let cx = fixtures::triangle();
        assert_eq!(flat_norm(&cx, &Chain1::zero(&cx)).unwrap().value, int(0));
    }

    #[test]
    fn single_edge_is_not_worth_filling() {
        let cx = fixtures::triangle();
        let t = Chain1::from_named(&cx, [("ab", 1)]).unwrap();
        let res = flat_norm(&cx, &t).unwrap();
        assert_eq!(res.value, int(1));
        assert_eq!(res.r, t);
        assert!(res.s.is_zero());
    }

    #[test]
    fn no_faces_means_flat_norm_is_mass() {
        let cx = fixtures::figure_eight();
        let t = Chain1::from_named(&cx, [("ab", 2), ("de", -1)]).unwrap();
        let res = flat_norm(&cx, &t).unwrap();
        assert_eq!(res.value, int(3));
        assert_eq!(res.r, t);
    }

    #[test]
    fn fillings() {
        let cx = fixtures::triangle();
        let t = fixtures::triangle_cycle(&cx);
        let fill = minimal_filling(&cx, &t).unwrap();
        assert!(fill.feasible);
        assert_eq!(fill.s, Chain2::from_named(&cx, [("f", 1)]).unwrap());
        assert_eq!(fill.fill_mass, int(1));

        let zero = minimal_filling(&cx, &Chain1::zero(&cx)).unwrap();
        assert!(zero.feasible && zero.s.is_zero() && zero.fill_mass.is_zero());

        let edge = Chain1::from_named(&cx, [("ab", 1)]).unwrap();
        assert_eq!(minimal_filling(&cx, &edge), Err(FlatNormError::NonZeroBoundary));
    }

    #[test]
    fn annulus_inner_cycle_has_no_filling() {
        let cx = fixtures::annulus();
        let t = fixtures::annulus_inner_cycle(&cx);
        assert!(!minimal_filling(&cx, &t).unwrap().feasible);
    }

    #[test]
    fn sphere_filling_picks_the_cheaper_side() {
        let cx = fixtures::tetrahedron();
        // Boundary of face pqr: one face on one side, three on the other.
        let t = cx.face_boundary(&Chain2::from_named(&cx, [("pqr", 1)]).unwrap()).unwrap();
        let fill = minimal_filling(&cx, &t).unwrap();
        assert_eq!(fill.fill_mass, int(1));
        assert_eq!(flat_norm(&cx, &t).unwrap().value, int(1));
    }

    #[test]
    fn isoperimetric_examples() {
        let cx = fixtures::triangle();
        let r = isoperimetric_report(&cx, &fixtures::triangle_cycle(&cx)).unwrap();
        assert_eq!((r.flat, r.mass, r.normal_mass), (int(1), int(3), int(3)));
        assert_eq!(r.ratio_flat_normal_sq, int(1) / int(9));

        let r = isoperimetric_report(&cx, &Chain1::zero(&cx)).unwrap();
        assert!(r.flat.is_zero() && r.normal_mass.is_zero() && r.ratio_flat_normal_sq.is_zero());

        let edge = Chain1::from_named(&cx, [("ab", 1)]).unwrap();
        let r = isoperimetric_report(&cx, &edge).unwrap();
        assert_eq!((r.flat, r.mass, r.normal_mass), (int(1), int(1), int(3)));
        assert_eq!(r.ratio_flat_normal_sq, int(1) / int(9));
    }

    #[test]
    fn cache_reuses_values() {
        let cx = fixtures::triangle();
        let cache = FlatNormCache::new();
        let t = fixtures::triangle_cycle(&cx);
        assert_eq!(cache.value(&cx, &t).unwrap(), int(1));
        assert_eq!(cache.value(&cx, &t).unwrap(), int(1));
        assert_eq!(cache.len(), 1);
    }

    fn mobius_chain() -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-2i64..=2, 10)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn witness_is_valid_and_bounded(coeffs in mobius_chain()) {
            let cx = fixtures::mobius_strip();
            let t = Chain1::from_coeffs(&cx, coeffs.into_iter().enumerate()).unwrap();
            let res = flat_norm(&cx, &t).unwrap();
            prop_assert_eq!(res.r.checked_add(&cx.face_boundary(&res.s).unwrap()).unwrap(), t.clone());
            prop_assert_eq!(&res.value, &(cx.mass(&res.r).unwrap() + cx.mass(&res.s).unwrap()));
            let m = cx.mass_report(&t).unwrap();
            prop_assert!(res.value <= m.mass && m.mass <= m.normal_mass);
        }

        #[test]
        fn flat_norm_is_subadditive(a in mobius_chain(), b in mobius_chain()) {
            let cx = fixtures::mobius_strip();
            let ta = Chain1::from_coeffs(&cx, a.into_iter().enumerate()).unwrap();
            let tb = Chain1::from_coeffs(&cx, b.into_iter().enumerate()).unwrap();
            let sum = flat_norm(&cx, &ta.checked_add(&tb).unwrap()).unwrap().value;
            prop_assert!(sum <= flat_norm(&cx, &ta).unwrap().value + flat_norm(&cx, &tb).unwrap().value);
        }

        // Any explicit splitting t = (t - ∂s) + ∂s upper-bounds F(t).
        #[test]
        fn explicit_witnesses_upper_bound(coeffs in mobius_chain(), s in proptest::collection::vec(-2i64..=2, 5)) {
            let cx = fixtures::mobius_strip();
            let t = Chain1::from_coeffs(&cx, coeffs.into_iter().enumerate()).unwrap();
            let s = Chain2::from_coeffs(&cx, s.into_iter().enumerate()).unwrap();
            let r = t.checked_sub(&cx.face_boundary(&s).unwrap()).unwrap();
            let witness = cx.mass(&r).unwrap() + cx.mass(&s).unwrap();
            prop_assert!(flat_norm(&cx, &t).unwrap().value <= witness);
        }
    }
}
