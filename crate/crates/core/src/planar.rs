//! Pixel sets of finite perimeter on the unit square grid.
//!
//! A set `A` is a finite union of closed unit cells. Its canonical 2-chain
//! puts `+1` on every filled cell; faces are oriented counterclockwise, so
//! the boundary current runs counterclockwise around `A` and clockwise
//! around its holes. Adjacency is shared-edge (4-)adjacency, for `A` and for
//! its complement alike; cells meeting only at a corner are separate.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::chain::{Chain1, Chain2};
use crate::complex::MetricComplex;
use crate::curves::{Classification, CurvePiece};
use crate::decompose::{indecomposability, Indecomposability};
use crate::rational::int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("grid dimensions must be positive, got {width}x{height}")]
    EmptyGrid { width: usize, height: usize },
    #[error("cell ({x}, {y}) lies outside the {width}x{height} grid")]
    OutOfBounds { x: usize, y: usize, width: usize, height: usize },
    #[error("pixel set is empty")]
    EmptySet,
    #[error("pixel set is not simple")]
    NotSimple,
}

/// The complex of a `width × height` cell grid: vertices `p{x}_{y}`,
/// horizontal edges `h{x}_{y}` and vertical edges `v{x}_{y}` pointing in the
/// positive axis direction, and counterclockwise faces `c{x}_{y}`.
#[derive(Debug)]
pub struct GridComplex {
    width: usize,
    height: usize,
    complex: MetricComplex,
}

impl GridComplex {
    pub fn new(width: usize, height: usize) -> Result<Arc<Self>, PlanarError> {
        if width == 0 || height == 0 {
            return Err(PlanarError::EmptyGrid { width, height });
        }
        let mut b = MetricComplex::builder();
        for y in 0..=height {
            for x in 0..=width {
                b.vertex(format!("p{x}_{y}"), Some([x as f64, y as f64])).expect("fresh vertex");
            }
        }
        for y in 0..=height {
            for x in 0..width {
                b.edge(format!("h{x}_{y}"), &format!("p{x}_{y}"), &format!("p{}_{y}", x + 1), int(1))
                    .expect("fresh edge");
            }
        }
        for y in 0..height {
            for x in 0..=width {
                b.edge(format!("v{x}_{y}"), &format!("p{x}_{y}"), &format!("p{x}_{}", y + 1), int(1))
                    .expect("fresh edge");
            }
        }
        for y in 0..height {
            for x in 0..width {
                let sides = [
                    (format!("h{x}_{y}"), 1),
                    (format!("v{}_{y}", x + 1), 1),
                    (format!("h{x}_{}", y + 1), -1),
                    (format!("v{x}_{y}"), -1),
                ];
                let borrowed: Vec<(&str, i64)> = sides.iter().map(|(n, s)| (n.as_str(), *s)).collect();
                b.face(format!("c{x}_{y}"), &borrowed, int(1)).expect("closed cell");
            }
        }
        Ok(Arc::new(GridComplex { width, height, complex: b.build() }))
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn complex(&self) -> &MetricComplex {
        &self.complex
    }

    pub fn vertex(&self, x: usize, y: usize) -> usize {
        y * (self.width + 1) + x
    }

    /// Grid coordinates of a vertex index.
    pub fn point(&self, vertex: usize) -> (usize, usize) {
        (vertex % (self.width + 1), vertex / (self.width + 1))
    }

    pub fn face(&self, x: usize, y: usize) -> usize {
        y * self.width + x
    }
}

/// A finite set of filled cells on a grid.
#[derive(Clone, Debug)]
pub struct PixelSet {
    grid: Arc<GridComplex>,
    cells: BTreeSet<(usize, usize)>,
}

impl PartialEq for PixelSet {
    fn eq(&self, other: &Self) -> bool {
        self.grid.width == other.grid.width && self.grid.height == other.grid.height && self.cells == other.cells
    }
}

impl Eq for PixelSet {}

impl PixelSet {
    pub fn new(
        width: usize,
        height: usize,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PlanarError> {
        Self::on_grid(GridComplex::new(width, height)?, cells)
    }

    pub fn on_grid(
        grid: Arc<GridComplex>,
        cells: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, PlanarError> {
        let cells: BTreeSet<_> = cells.into_iter().collect();
        if let Some(&(x, y)) = cells.iter().find(|&&(x, y)| x >= grid.width || y >= grid.height) {
            return Err(PlanarError::OutOfBounds { x, y, width: grid.width, height: grid.height });
        }
        Ok(PixelSet { grid, cells })
    }

    /// Row-major bitmap, `rows[y][x]`; row 0 is `y = 0`.
    pub fn from_rows(rows: &[Vec<bool>]) -> Result<Self, PlanarError> {
        let height = rows.len();
        let width = rows.first().map_or(0, Vec::len);
        let cells = rows
            .iter()
            .enumerate()
            .flat_map(|(y, row)| row.iter().enumerate().filter(|(_, &b)| b).map(move |(x, _)| (x, y)));
        Self::new(width, height, cells.collect::<Vec<_>>())
    }

    pub fn grid(&self) -> &Arc<GridComplex> {
        &self.grid
    }

    pub fn complex(&self) -> &MetricComplex {
        &self.grid.complex
    }

    pub fn width(&self) -> usize {
        self.grid.width
    }

    pub fn height(&self) -> usize {
        self.grid.height
    }

    pub fn cells(&self) -> &BTreeSet<(usize, usize)> {
        &self.cells
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.cells.contains(&(x, y))
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    /// `T_A`: `+1` on every filled cell.
    pub fn face_chain(&self) -> Chain2 {
        Chain2::from_coeffs(&self.grid.complex, self.cells.iter().map(|&(x, y)| (self.grid.face(x, y), 1)))
            .expect("cells lie on the grid")
    }

    /// Perimeter: number of unit edges between a filled and an empty cell.
    pub fn perimeter(&self) -> usize {
        self.boundary_current().abs_sum() as usize
    }

    pub fn boundary_current(&self) -> Chain1 {
        boundary_current(self)
    }

    fn neighbours(&self, (x, y): (usize, usize)) -> impl Iterator<Item = (usize, usize)> + '_ {
        let (w, h) = (self.grid.width, self.grid.height);
        [
            (x > 0).then(|| (x - 1, y)),
            (x + 1 < w).then(|| (x + 1, y)),
            (y > 0).then(|| (x, y - 1)),
            (y + 1 < h).then(|| (x, y + 1)),
        ]
        .into_iter()
        .flatten()
    }
}

impl fmt::Display for PixelSet {
    /// Top row first, `#` for filled cells.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for y in (0..self.grid.height).rev() {
            let row: String = (0..self.grid.width).map(|x| if self.contains(x, y) { '#' } else { '.' }).collect();
            writeln!(f, "{row}")?;
        }
        Ok(())
    }
}

/// `∂T_A`; shared interior edges cancel.
pub fn boundary_current(a: &PixelSet) -> Chain1 {
    a.complex().face_boundary(&a.face_chain()).expect("face chain lives on the grid")
}

/// The 4-connected components of `A`, ordered by their lowest `(y, x)` cell.
pub fn indecomposable_components(a: &PixelSet) -> Vec<PixelSet> {
    let mut seen = BTreeSet::new();
    let mut components = Vec::new();
    let mut order: Vec<_> = a.cells.iter().copied().collect();
    order.sort_by_key(|&(x, y)| (y, x));
    for start in order {
        if seen.contains(&start) {
            continue;
        }
        let mut cells = BTreeSet::new();
        let mut queue = VecDeque::from([start]);
        seen.insert(start);
        while let Some(c) = queue.pop_front() {
            cells.insert(c);
            for n in a.neighbours(c) {
                if a.contains(n.0, n.1) && seen.insert(n) {
                    queue.push_back(n);
                }
            }
        }
        components.push(PixelSet { grid: Arc::clone(&a.grid), cells });
    }
    assert_eq!(
        components.iter().map(PixelSet::perimeter).sum::<usize>(),
        a.perimeter(),
        "perimeter must be additive over 4-connected components"
    );
    components
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SimplicityMethod {
    ViaBoundary,
    ViaConnectivity,
}

impl std::str::FromStr for SimplicityMethod {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "via_boundary" | "boundary" => Ok(SimplicityMethod::ViaBoundary),
            "via_connectivity" | "connectivity" => Ok(SimplicityMethod::ViaConnectivity),
            other => Err(format!("unknown simplicity method `{other}`")),
        }
    }
}

/// `A` is simple iff `∂T_A` is indecomposable.
pub fn simple_via_boundary(a: &PixelSet) -> Result<bool, PlanarError> {
    if a.is_empty() {
        return Err(PlanarError::EmptySet);
    }
    Ok(indecomposability(a.complex(), &boundary_current(a)).expect("same complex").is_indecomposable())
}

/// `A` is simple iff `A` is 4-connected and so is its complement, where all
/// cells outside the grid form one unbounded region.
pub fn simple_via_connectivity(a: &PixelSet) -> Result<bool, PlanarError> {
    if a.is_empty() {
        return Err(PlanarError::EmptySet);
    }
    if indecomposable_components(a).len() != 1 {
        return Ok(false);
    }
    // Complement inside a frame padded by one cell on every side.
    let (w, h) = (a.width() + 2, a.height() + 2);
    let empty = |x: usize, y: usize| x == 0 || y == 0 || x == w - 1 || y == h - 1 || !a.contains(x - 1, y - 1);
    let total = (0..h).flat_map(|y| (0..w).map(move |x| (x, y))).filter(|&(x, y)| empty(x, y)).count();
    let mut seen = vec![false; w * h];
    let mut queue = VecDeque::from([(0usize, 0usize)]);
    seen[0] = true;
    let mut reached = 0;
    while let Some((x, y)) = queue.pop_front() {
        reached += 1;
        let next = [
            (x > 0).then(|| (x - 1, y)),
            (x + 1 < w).then(|| (x + 1, y)),
            (y > 0).then(|| (x, y - 1)),
            (y + 1 < h).then(|| (x, y + 1)),
        ];
        for (nx, ny) in next.into_iter().flatten() {
            if empty(nx, ny) && !seen[ny * w + nx] {
                seen[ny * w + nx] = true;
                queue.push_back((nx, ny));
            }
        }
    }
    Ok(reached == total)
}

/// Decides simplicity by both characterisations.
///
/// # Panics
///
/// If the two characterisations disagree.
pub fn is_simple(a: &PixelSet, method: SimplicityMethod) -> Result<bool, PlanarError> {
    let by_boundary = simple_via_boundary(a)?;
    let by_connectivity = simple_via_connectivity(a)?;
    assert_eq!(by_boundary, by_connectivity, "simplicity characterisations disagree on\n{a}");
    Ok(match method {
        SimplicityMethod::ViaBoundary => by_boundary,
        SimplicityMethod::ViaConnectivity => by_connectivity,
    })
}

/// The boundary of a simple set as a counterclockwise injective loop,
/// starting at its lowest, then leftmost, vertex.
pub fn jordan_loop(a: &PixelSet) -> Result<CurvePiece, PlanarError> {
    if !is_simple(a, SimplicityMethod::ViaBoundary)? {
        return Err(PlanarError::NotSimple);
    }
    let Indecomposability::Indecomposable(shape) =
        indecomposability(a.complex(), &boundary_current(a)).expect("same complex")
    else {
        return Err(PlanarError::NotSimple);
    };
    let start = shape.vertices[0];
    let curve = CurvePiece::from_steps(a.complex(), start, &shape.steps).expect("traced steps form a walk");
    assert_eq!(curve.classification(), Classification::InjectiveLoop);
    Ok(curve)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curves::{classify, currentify};
    use crate::rational::int;

    fn set(w: usize, h: usize, cells: &[(usize, usize)]) -> PixelSet {
        PixelSet::new(w, h, cells.iter().copied()).unwrap()
    }

    fn annulus() -> PixelSet {
        let cells: Vec<_> = (0..3).flat_map(|y| (0..3).map(move |x| (x, y))).filter(|&c| c != (1, 1)).collect();
        set(3, 3, &cells)
    }

    #[test]
    fn boundary_examples() {
        let one = set(1, 1, &[(0, 0)]);
        let b = boundary_current(&one);
        assert_eq!(b.support_len(), 4);
        assert_eq!(one.complex().mass(&b).unwrap(), int(4));
        let bar = set(2, 1, &[(0, 0), (1, 0)]);
        assert_eq!(bar.perimeter(), 6);
        assert_eq!(boundary_current(&bar).support_len(), 6);
        assert!(boundary_current(&set(2, 2, &[])).is_zero());
        assert!(bar.complex().boundary(&boundary_current(&annulus())).is_err());
        let a = annulus();
        assert!(a.complex().boundary(&boundary_current(&a)).unwrap().is_zero());
        assert_eq!(a.perimeter(), 16);
    }

    #[test]
    fn component_examples() {
        let diag = set(2, 2, &[(0, 0), (1, 1)]);
        let comps = indecomposable_components(&diag);
        assert_eq!(comps.len(), 2);
        assert_eq!(comps.iter().map(PixelSet::perimeter).collect::<Vec<_>>(), vec![4, 4]);
        assert_eq!(diag.perimeter(), 8);
        assert_eq!(indecomposable_components(&set(2, 2, &[(0, 0), (0, 1), (1, 0), (1, 1)])).len(), 1);
        assert!(indecomposable_components(&set(2, 2, &[])).is_empty());
    }

    #[test]
    fn simplicity_examples() {
        assert!(is_simple(&set(1, 1, &[(0, 0)]), SimplicityMethod::ViaBoundary).unwrap());
        assert!(!is_simple(&set(2, 2, &[(0, 0), (1, 1)]), SimplicityMethod::ViaBoundary).unwrap());
        assert!(!is_simple(&annulus(), SimplicityMethod::ViaConnectivity).unwrap());
        assert_eq!(is_simple(&set(2, 2, &[]), SimplicityMethod::ViaBoundary).unwrap_err(), PlanarError::EmptySet);
    }

    #[test]
    fn annulus_set_is_connected_but_not_simple() {
        let a = annulus();
        assert_eq!(indecomposable_components(&a).len(), 1);
        assert!(!simple_via_boundary(&a).unwrap());
    }

    #[test]
    fn jordan_loop_examples() {
        let one = set(1, 1, &[(0, 0)]);
        let lp = jordan_loop(&one).unwrap();
        let pts: Vec<_> = lp.vertices().iter().map(|&v| one.grid().point(v)).collect();
        assert_eq!(pts, vec![(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]);

        let bar = set(2, 1, &[(0, 0), (1, 0)]);
        let lp = jordan_loop(&bar).unwrap();
        let pts: Vec<_> = lp.vertices().iter().map(|&v| bar.grid().point(v)).collect();
        assert_eq!(pts, vec![(0, 0), (1, 0), (2, 0), (2, 1), (1, 1), (0, 1), (0, 0)]);
        assert_eq!(classify(&lp), Classification::InjectiveLoop);
        assert_eq!(currentify(bar.complex(), &lp).unwrap(), boundary_current(&bar));

        assert_eq!(jordan_loop(&annulus()).unwrap_err(), PlanarError::NotSimple);
    }

    #[test]
    fn every_three_by_three_set() {
        let grid = GridComplex::new(3, 3).unwrap();
        for mask in 1u32..512 {
            let cells = (0..9).filter(|i| mask & (1 << i) != 0).map(|i| (i % 3, i / 3));
            let a = PixelSet::on_grid(Arc::clone(&grid), cells).unwrap();
            let simple = is_simple(&a, SimplicityMethod::ViaBoundary).unwrap();
            if simple {
                assert_eq!(indecomposable_components(&a).len(), 1);
                let lp = jordan_loop(&a).unwrap();
                assert_eq!(currentify(a.complex(), &lp).unwrap(), boundary_current(&a));
            }
        }
    }

    #[test]
    fn out_of_bounds_and_empty_grid() {
        assert!(matches!(PixelSet::new(2, 2, [(2, 0)]), Err(PlanarError::OutOfBounds { .. })));
        assert!(matches!(PixelSet::new(0, 2, []), Err(PlanarError::EmptyGrid { .. })));
    }

    #[test]
    fn display_draws_top_row_first() {
        let s = set(2, 2, &[(0, 0), (1, 1)]);
        assert_eq!(s.to_string(), ".#\n#.\n");
    }
}
