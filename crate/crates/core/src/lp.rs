//! Exact rational linear and integer programming.
//!
//! Dense two-phase simplex over [`Rational`] with Bland's rule, plus a
//! best-first branch and bound for all-integer programs. Intended for
//! desk-scale instances (tens of rows); every pivot is exact.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub terms: Vec<(usize, Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
}

/// `minimize c·x  subject to  constraints, x ≥ 0`.
#[derive(Clone, Debug)]
pub struct LinearProgram {
    objective: Vec<Rational>,
    constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

impl LinearProgram {
    pub fn new(num_vars: usize) -> Self {
        LinearProgram { objective: vec![Rational::zero(); num_vars], constraints: Vec::new() }
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn set_cost(&mut self, var: usize, cost: Rational) {
        self.objective[var] = cost;
    }

    pub fn add_constraint(&mut self, terms: Vec<(usize, Rational)>, relation: Relation, rhs: Rational) {
        debug_assert!(terms.iter().all(|(v, _)| *v < self.num_vars()));
        self.constraints.push(Constraint { terms, relation, rhs });
    }

    pub fn objective_value(&self, x: &[Rational]) -> Rational {
        self.objective.iter().zip(x).fold(Rational::zero(), |acc, (c, v)| acc + c * v)
    }

    pub fn solve(&self) -> LpOutcome {
        Tableau::build(&self.objective, &self.constraints).run()
    }
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs; the last slot holds minus the objective value.
    objective_row: Vec<Rational>,
    num_original: usize,
    first_artificial: usize,
    costs: Vec<Rational>,
}

/// Coefficients, relation and right-hand side of one constraint.
type SparseRow = (Vec<(usize, Rational)>, Relation, Rational);

impl Tableau {
    fn build(costs: &[Rational], constraints: &[Constraint]) -> Self {
        let n = costs.len();
        let slack_count = constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        // Normalise to nonnegative right-hand sides first; that decides which
        // rows need an artificial variable.
        let normalised: Vec<SparseRow> = constraints
            .iter()
            .map(|c| {
                if c.rhs.is_negative() {
                    let rel = match c.relation {
                        Relation::Le => Relation::Ge,
                        Relation::Ge => Relation::Le,
                        Relation::Eq => Relation::Eq,
                    };
                    (c.terms.iter().map(|(v, a)| (*v, -a)).collect(), rel, -&c.rhs)
                } else {
                    (c.terms.clone(), c.relation, c.rhs.clone())
                }
            })
            .collect();
        let artificial_count = normalised.iter().filter(|(_, rel, _)| *rel != Relation::Le).count();
        let width = n + slack_count + artificial_count;
        let first_artificial = n + slack_count;

        let mut rows = Vec::with_capacity(normalised.len());
        let mut basis = Vec::with_capacity(normalised.len());
        let mut next_slack = n;
        let mut next_artificial = first_artificial;
        for (terms, rel, rhs) in normalised {
            let mut row = vec![Rational::zero(); width + 1];
            for (v, a) in terms {
                row[v] += a;
            }
            row[width] = rhs;
            match rel {
                Relation::Le => {
                    row[next_slack] = Rational::one();
                    basis.push(next_slack);
                    next_slack += 1;
                }
                Relation::Ge => {
                    row[next_slack] = -Rational::one();
                    next_slack += 1;
                    row[next_artificial] = Rational::one();
                    basis.push(next_artificial);
                    next_artificial += 1;
                }
                Relation::Eq => {
                    row[next_artificial] = Rational::one();
                    basis.push(next_artificial);
                    next_artificial += 1;
                }
            }
            rows.push(row);
        }
        let mut full_costs = vec![Rational::zero(); width];
        full_costs[..n].clone_from_slice(costs);
        Tableau { rows, basis, objective_row: Vec::new(), num_original: n, first_artificial, costs: full_costs }
    }

    fn width(&self) -> usize {
        self.costs.len()
    }

    fn canonical_objective(&mut self, costs: &[Rational]) {
        let width = self.width();
        let mut z = costs.to_vec();
        z.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let coef = z[b].clone();
            if coef.is_zero() {
                continue;
            }
            for j in 0..=width {
                if !row[j].is_zero() {
                    z[j] -= &coef * &row[j];
                }
            }
        }
        self.objective_row = z;
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.width();
        let inv = self.rows[r][c].recip();
        for v in self.rows[r].iter_mut() {
            if !v.is_zero() {
                *v *= &inv;
            }
        }
        let pivot_row = self.rows[r].clone();
        let nonzero: Vec<usize> = (0..=width).filter(|&j| !pivot_row[j].is_zero()).collect();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for &j in &nonzero {
                row[j] -= &f * &pivot_row[j];
            }
        }
        if !self.objective_row[c].is_zero() {
            let f = self.objective_row[c].clone();
            for &j in &nonzero {
                self.objective_row[j] -= &f * &pivot_row[j];
            }
        }
        self.basis[r] = c;
    }

    /// Bland's rule iterations; `allowed` bounds the entering columns.
    fn iterate(&mut self, allowed: usize) -> bool {
        let width = self.width();
        loop {
            let Some(c) = (0..allowed).find(|&j| self.objective_row[j].is_negative()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[c].is_positive() {
                    continue;
                }
                let ratio = &row[width] / &row[c];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => match ratio.cmp(br) {
                        Ordering::Less => true,
                        Ordering::Equal => self.basis[i] < self.basis[*bi],
                        Ordering::Greater => false,
                    },
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                Some((r, _)) => self.pivot(r, c),
                None => return false,
            }
        }
    }

    fn run(mut self) -> LpOutcome {
        let width = self.width();
        if self.first_artificial < width {
            let mut phase_one = vec![Rational::zero(); width];
            for c in phase_one.iter_mut().skip(self.first_artificial) {
                *c = Rational::one();
            }
            self.canonical_objective(&phase_one);
            self.iterate(width);
            if !self.objective_row[width].is_zero() {
                return LpOutcome::Infeasible;
            }
            // Drive remaining (zero-valued) artificials out of the basis.
            let mut r = 0;
            while r < self.rows.len() {
                if self.basis[r] >= self.first_artificial {
                    match (0..self.first_artificial).find(|&j| !self.rows[r][j].is_zero()) {
                        Some(c) => {
                            self.pivot(r, c);
                            r += 1;
                        }
                        None => {
                            self.rows.swap_remove(r);
                            self.basis.swap_remove(r);
                        }
                    }
                } else {
                    r += 1;
                }
            }
        }
        let costs = self.costs.clone();
        self.canonical_objective(&costs);
        if !self.iterate(self.first_artificial) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![Rational::zero(); self.num_original];
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            if b < self.num_original {
                x[b] = row[width].clone();
            }
        }
        let value = -self.objective_row[width].clone();
        LpOutcome::Optimal(LpSolution { x, value })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct IntegerSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
    /// False when the node limit stopped the search early.
    pub proven_optimal: bool,
    /// The root relaxation was already integral.
    pub relaxation_integral: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub enum IntegerOutcome {
    Solved(IntegerSolution),
    Infeasible,
    Unbounded,
    /// Node limit reached before any integer point was found.
    LimitReached,
}

struct Node {
    bound: Rational,
    seq: usize,
    extra: Vec<(usize, Relation, Rational)>,
    solution: LpSolution,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Node {
    // Max-heap on the reversed key: smallest bound first, then oldest node.
    fn cmp(&self, other: &Self) -> Ordering {
        other.bound.cmp(&self.bound).then(other.seq.cmp(&self.seq))
    }
}

fn first_fractional(x: &[Rational]) -> Option<usize> {
    x.iter().position(|v| !v.is_integer())
}

impl LinearProgram {
    fn with_bounds(&self, extra: &[(usize, Relation, Rational)]) -> LinearProgram {
        let mut lp = self.clone();
        for (v, rel, b) in extra {
            lp.add_constraint(vec![(*v, Rational::one())], *rel, b.clone());
        }
        lp
    }

    /// Best-first branch and bound with every variable integral.
    ///
    /// `incumbent`, when given, must be a feasible integer point; it is
    /// returned if nothing strictly better exists.
    pub fn solve_integer(&self, incumbent: Option<Vec<Rational>>, node_limit: usize) -> IntegerOutcome {
        let root = match self.solve() {
            LpOutcome::Optimal(s) => s,
            LpOutcome::Infeasible => return IntegerOutcome::Infeasible,
            LpOutcome::Unbounded => return IntegerOutcome::Unbounded,
        };
        let relaxation_integral = first_fractional(&root.x).is_none();
        if relaxation_integral {
            return IntegerOutcome::Solved(IntegerSolution {
                x: root.x,
                value: root.value,
                proven_optimal: true,
                relaxation_integral,
            });
        }
        let mut best: Option<(Vec<Rational>, Rational)> = incumbent.map(|x| {
            let v = self.objective_value(&x);
            (x, v)
        });
        let mut heap = BinaryHeap::new();
        let mut seq = 0usize;
        let mut explored = 0usize;
        heap.push(Node { bound: root.value.clone(), seq, extra: Vec::new(), solution: root });
        while let Some(node) = heap.pop() {
            if let Some((_, v)) = &best {
                if node.bound >= *v {
                    continue;
                }
            }
            if explored >= node_limit {
                return match best {
                    Some((x, value)) => {
                        IntegerOutcome::Solved(IntegerSolution { x, value, proven_optimal: false, relaxation_integral })
                    }
                    None => IntegerOutcome::LimitReached,
                };
            }
            explored += 1;
            let sol = node.solution;
            match first_fractional(&sol.x) {
                None => {
                    if best.as_ref().is_none_or(|(_, v)| sol.value < *v) {
                        best = Some((sol.x, sol.value));
                    }
                }
                Some(j) => {
                    let down = sol.x[j].floor();
                    let up = sol.x[j].ceil();
                    for (rel, b) in [(Relation::Le, down), (Relation::Ge, up)] {
                        let mut extra = node.extra.clone();
                        extra.push((j, rel, b));
                        if let LpOutcome::Optimal(child) = self.with_bounds(&extra).solve() {
                            if best.as_ref().is_some_and(|(_, v)| child.value >= *v) {
                                continue;
                            }
                            seq += 1;
                            heap.push(Node { bound: child.value.clone(), seq, extra, solution: child });
                        }
                    }
                }
            }
        }
        match best {
            Some((x, value)) => {
                IntegerOutcome::Solved(IntegerSolution { x, value, proven_optimal: true, relaxation_integral })
            }
            None => IntegerOutcome::Infeasible,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn solves_textbook_lp() {
        // max 3x + 5y s.t. x ≤ 4, 2y ≤ 12, 3x + 2y ≤ 18  →  (2, 6), 36.
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, int(-3));
        lp.set_cost(1, int(-5));
        lp.add_constraint(vec![(0, int(1))], Relation::Le, int(4));
        lp.add_constraint(vec![(1, int(2))], Relation::Le, int(12));
        lp.add_constraint(vec![(0, int(3)), (1, int(2))], Relation::Le, int(18));
        let LpOutcome::Optimal(s) = lp.solve() else { panic!("expected optimum") };
        assert_eq!(s.x, vec![int(2), int(6)]);
        assert_eq!(s.value, int(-36));
    }

    #[test]
    fn handles_equalities_and_negative_rhs() {
        // min x + y s.t. x - y = -1, x + y ≥ 2  →  x = 1/2, y = 3/2.
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, int(1));
        lp.set_cost(1, int(1));
        lp.add_constraint(vec![(0, int(1)), (1, int(-1))], Relation::Eq, int(-1));
        lp.add_constraint(vec![(0, int(1)), (1, int(1))], Relation::Ge, int(2));
        let LpOutcome::Optimal(s) = lp.solve() else { panic!("expected optimum") };
        assert_eq!(s.value, int(2));
        assert_eq!(s.x, vec![q(1, 2), q(3, 2)]);
    }

    #[test]
    fn detects_infeasible_and_unbounded() {
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(vec![(0, int(1))], Relation::Le, int(-1));
        assert_eq!(lp.solve(), LpOutcome::Infeasible);

        let mut lp = LinearProgram::new(1);
        lp.set_cost(0, int(-1));
        assert_eq!(lp.solve(), LpOutcome::Unbounded);
    }

    #[test]
    fn redundant_equalities_are_dropped() {
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, int(1));
        lp.add_constraint(vec![(0, int(1)), (1, int(1))], Relation::Eq, int(3));
        lp.add_constraint(vec![(0, int(2)), (1, int(2))], Relation::Eq, int(6));
        let LpOutcome::Optimal(s) = lp.solve() else { panic!("expected optimum") };
        assert_eq!(s.value, int(0));
        assert_eq!(s.x, vec![int(0), int(3)]);
    }

    #[test]
    fn branch_and_bound_finds_integer_optimum() {
        // min -x - y s.t. 2x + 2y ≤ 3  →  LP 3/2, IP 1.
        let mut lp = LinearProgram::new(2);
        lp.set_cost(0, int(-1));
        lp.set_cost(1, int(-1));
        lp.add_constraint(vec![(0, int(2)), (1, int(2))], Relation::Le, int(3));
        let IntegerOutcome::Solved(s) = lp.solve_integer(None, 1000) else { panic!("expected solution") };
        assert_eq!(s.value, int(-1));
        assert!(s.proven_optimal);
        assert!(!s.relaxation_integral);
    }

    #[test]
    fn integer_infeasible_with_fractional_relaxation() {
        // 2x = 1 has the LP point 1/2 and no integer point.
        let mut lp = LinearProgram::new(1);
        lp.add_constraint(vec![(0, int(2))], Relation::Eq, int(1));
        assert_eq!(lp.solve_integer(None, 100), IntegerOutcome::Infeasible);
    }
}
