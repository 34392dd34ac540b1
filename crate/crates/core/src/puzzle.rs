//! Puzzle data model and candidate-edge construction.
//!
//! Islands are kept sorted by `(row, col)` so that island indices are
//! canonical. Candidate edges connect islands that see each other along a
//! row or column; two candidate edges *cross* when they have orthogonal
//! orientations and share an interior cell.

use crate::error::PuzzleError;

/// Maximum number of bridges an island can carry (four sides, two each).
pub const MAX_DEGREE: u8 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Island {
    pub row: usize,
    pub col: usize,
    pub degree: u8,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Puzzle {
    rows: usize,
    cols: usize,
    islands: Vec<Island>,
}

impl Puzzle {
    /// Builds a puzzle, sorting islands into canonical `(row, col)` order.
    pub fn new(rows: usize, cols: usize, mut islands: Vec<Island>) -> Result<Self, PuzzleError> {
        if rows == 0 || cols == 0 {
            return Err(PuzzleError::EmptyGrid);
        }
        for isl in &islands {
            if isl.row >= rows || isl.col >= cols {
                return Err(PuzzleError::OutOfBounds {
                    row: isl.row,
                    col: isl.col,
                });
            }
            if isl.degree == 0 || isl.degree > MAX_DEGREE {
                return Err(PuzzleError::BadDegree {
                    row: isl.row,
                    col: isl.col,
                    degree: isl.degree,
                });
            }
        }
        islands.sort_by_key(|i| (i.row, i.col));
        if let Some(w) = islands
            .windows(2)
            .find(|w| (w[0].row, w[0].col) == (w[1].row, w[1].col))
        {
            return Err(PuzzleError::DuplicateIsland {
                row: w[0].row,
                col: w[0].col,
            });
        }
        if islands.len() < 2 {
            return Err(PuzzleError::TooFewIslands(islands.len()));
        }
        Ok(Self {
            rows,
            cols,
            islands,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn islands(&self) -> &[Island] {
        &self.islands
    }

    pub fn len(&self) -> usize {
        self.islands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.islands.is_empty()
    }

    pub fn degree(&self, island: usize) -> u8 {
        self.islands[island].degree
    }

    pub fn degree_sum(&self) -> u32 {
        self.islands.iter().map(|i| i.degree as u32).sum()
    }

    /// Row-major grid of island indices.
    pub fn index_grid(&self) -> Vec<Option<usize>> {
        let mut grid = vec![None; self.rows * self.cols];
        for (k, isl) in self.islands.iter().enumerate() {
            grid[isl.row * self.cols + isl.col] = Some(k);
        }
        grid
    }

    /// Looks up the island at a cell.
    pub fn island_at(&self, row: usize, col: usize) -> Option<usize> {
        self.islands
            .binary_search_by_key(&(row, col), |i| (i.row, i.col))
            .ok()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Orientation {
    Horizontal,
    Vertical,
}

/// A candidate bridge segment between two mutually visible islands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// Lower island index.
    pub i: usize,
    /// Higher island index.
    pub j: usize,
    pub orientation: Orientation,
    /// Strictly interior cells as `(row, col)`, ordered from `i` towards `j`.
    pub cells: Vec<(usize, usize)>,
}

impl Edge {
    pub fn other(&self, island: usize) -> usize {
        if island == self.i {
            self.j
        } else {
            self.i
        }
    }

    pub fn touches(&self, island: usize) -> bool {
        self.i == island || self.j == island
    }
}

/// Candidate edges of a puzzle, their crossing pairs and per-island incidence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeSet {
    edges: Vec<Edge>,
    crossings: Vec<(usize, usize)>,
    incident: Vec<Vec<usize>>,
    crossing_partners: Vec<Vec<usize>>,
}

impl EdgeSet {
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    /// Crossing pairs `(e, f)` with `e < f`, sorted.
    pub fn crossings(&self) -> &[(usize, usize)] {
        &self.crossings
    }

    /// Edge indices incident to an island, ascending.
    pub fn incident(&self, island: usize) -> &[usize] {
        &self.incident[island]
    }

    /// Edges crossing `e`, ascending.
    pub fn crossing_partners(&self, e: usize) -> &[usize] {
        &self.crossing_partners[e]
    }

    pub fn island_count(&self) -> usize {
        self.incident.len()
    }

    /// Index of the edge joining two islands, if they are candidate-adjacent.
    pub fn find(&self, a: usize, b: usize) -> Option<usize> {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        self.edges
            .binary_search_by_key(&(i, j), |e| (e.i, e.j))
            .ok()
    }
}

/// Constructs the candidate edges of `puzzle`: each island is joined to the
/// nearest island to its right and the nearest island below it.
pub fn build_edges(puzzle: &Puzzle) -> EdgeSet {
    let grid = puzzle.index_grid();
    let cols = puzzle.cols();
    let n = puzzle.len();
    let mut edges = Vec::new();

    for (k, isl) in puzzle.islands().iter().enumerate() {
        let mut cells = Vec::new();
        for c in isl.col + 1..cols {
            if let Some(j) = grid[isl.row * cols + c] {
                edges.push(Edge {
                    i: k,
                    j,
                    orientation: Orientation::Horizontal,
                    cells,
                });
                break;
            }
            cells.push((isl.row, c));
        }
        let mut cells = Vec::new();
        for r in isl.row + 1..puzzle.rows() {
            if let Some(j) = grid[r * cols + isl.col] {
                edges.push(Edge {
                    i: k,
                    j,
                    orientation: Orientation::Vertical,
                    cells,
                });
                break;
            }
            cells.push((r, isl.col));
        }
    }
    // Islands are row-major, so the right neighbour and lower neighbour both
    // have larger indices; sorting by (i, j) gives the canonical order.
    edges.sort_by_key(|e| (e.i, e.j));

    // Every interior cell is covered by at most one horizontal and at most
    // one vertical edge, so a cell map finds all crossings.
    let mut horizontal_at = vec![None; puzzle.rows() * cols];
    for (e, edge) in edges.iter().enumerate() {
        if edge.orientation == Orientation::Horizontal {
            for &(r, c) in &edge.cells {
                horizontal_at[r * cols + c] = Some(e);
            }
        }
    }
    let mut crossings = Vec::new();
    for (f, edge) in edges.iter().enumerate() {
        if edge.orientation == Orientation::Vertical {
            for &(r, c) in &edge.cells {
                if let Some(e) = horizontal_at[r * cols + c] {
                    crossings.push(if e < f { (e, f) } else { (f, e) });
                }
            }
        }
    }
    crossings.sort_unstable();
    crossings.dedup();

    let mut incident = vec![Vec::new(); n];
    for (e, edge) in edges.iter().enumerate() {
        incident[edge.i].push(e);
        incident[edge.j].push(e);
    }
    for inc in &mut incident {
        inc.sort_unstable();
    }
    let mut crossing_partners = vec![Vec::new(); edges.len()];
    for &(e, f) in &crossings {
        crossing_partners[e].push(f);
        crossing_partners[f].push(e);
    }
    for p in &mut crossing_partners {
        p.sort_unstable();
    }

    EdgeSet {
        edges,
        crossings,
        incident,
        crossing_partners,
    }
}

/// Bridge multiplicity per candidate edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    pub mult: Vec<u8>,
}

impl Assignment {
    pub fn zeros(len: usize) -> Self {
        Self { mult: vec![0; len] }
    }

    pub fn new(mult: Vec<u8>) -> Self {
        Self { mult }
    }

    pub fn len(&self) -> usize {
        self.mult.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mult.is_empty()
    }

    /// Whether edge `e` carries at least one bridge.
    pub fn used(&self, e: usize) -> bool {
        self.mult[e] >= 1
    }

    pub fn bridge_count(&self) -> u32 {
        self.mult.iter().map(|&m| m as u32).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn isl(row: usize, col: usize, degree: u8) -> Island {
        Island { row, col, degree }
    }

    #[test]
    fn collinear_islands_block_line_of_sight() {
        let p = Puzzle::new(1, 7, vec![isl(0, 0, 1), isl(0, 3, 2), isl(0, 6, 1)]).unwrap();
        let es = build_edges(&p);
        let pairs: Vec<_> = es.edges().iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(0, 1), (1, 2)]);
        assert!(es.crossings().is_empty());
        assert_eq!(es.edge(0).cells, vec![(0, 1), (0, 2)]);
    }

    #[test]
    fn plus_shape_has_one_crossing() {
        let p = Puzzle::new(
            3,
            3,
            vec![isl(0, 1, 1), isl(2, 1, 1), isl(1, 0, 1), isl(1, 2, 1)],
        )
        .unwrap();
        // canonical order: (0,1)=0, (1,0)=1, (1,2)=2, (2,1)=3
        let es = build_edges(&p);
        let pairs: Vec<_> = es.edges().iter().map(|e| (e.i, e.j)).collect();
        assert_eq!(pairs, vec![(0, 3), (1, 2)]);
        assert_eq!(es.edge(0).orientation, Orientation::Vertical);
        assert_eq!(es.edge(1).orientation, Orientation::Horizontal);
        assert_eq!(es.crossings(), &[(0, 1)]);
        assert_eq!(es.edge(0).cells, vec![(1, 1)]);
        assert_eq!(es.edge(1).cells, vec![(1, 1)]);
    }

    #[test]
    fn adjacent_islands_form_zero_length_edge() {
        let p = Puzzle::new(1, 2, vec![isl(0, 0, 1), isl(0, 1, 1)]).unwrap();
        let es = build_edges(&p);
        assert_eq!(es.len(), 1);
        assert!(es.edge(0).cells.is_empty());
    }

    #[test]
    fn edges_sharing_an_endpoint_never_cross() {
        // L shape: (0,0)-(0,2) and (0,0)-(2,0)
        let p = Puzzle::new(3, 3, vec![isl(0, 0, 2), isl(0, 2, 1), isl(2, 0, 1)]).unwrap();
        let es = build_edges(&p);
        assert_eq!(es.len(), 2);
        assert!(es.crossings().is_empty());
        assert_eq!(es.incident(0), &[0, 1]);
    }

    #[test]
    fn rejects_invalid_islands() {
        assert!(matches!(
            Puzzle::new(2, 2, vec![isl(0, 0, 1), isl(2, 0, 1)]),
            Err(PuzzleError::OutOfBounds { .. })
        ));
        assert!(matches!(
            Puzzle::new(2, 2, vec![isl(0, 0, 1), isl(0, 0, 1)]),
            Err(PuzzleError::DuplicateIsland { .. })
        ));
        assert!(matches!(
            Puzzle::new(2, 2, vec![isl(0, 0, 9), isl(1, 0, 1)]),
            Err(PuzzleError::BadDegree { .. })
        ));
        assert!(matches!(
            Puzzle::new(2, 2, vec![isl(0, 0, 0), isl(1, 0, 1)]),
            Err(PuzzleError::BadDegree { .. })
        ));
        assert!(matches!(
            Puzzle::new(2, 2, vec![isl(0, 0, 1)]),
            Err(PuzzleError::TooFewIslands(1))
        ));
    }

    #[test]
    fn find_is_symmetric() {
        let p = Puzzle::new(1, 7, vec![isl(0, 0, 1), isl(0, 3, 2), isl(0, 6, 1)]).unwrap();
        let es = build_edges(&p);
        assert_eq!(es.find(1, 0), Some(0));
        assert_eq!(es.find(1, 2), Some(1));
        assert_eq!(es.find(0, 2), None);
    }
}
