//! Seeded generator of feasible puzzles.
//!
//! A hidden solution is grown first and the puzzle is read off it:
//!
//! 1. place `n` islands as a random tree, each new island on a free cell
//!    along a ray from an existing one;
//! 2. add `⌊αn⌋` extra edges between visible, unconnected islands whose
//!    segment crosses nothing, creating cycles;
//! 3. double each edge with probability `β`;
//! 4. print each island's bridge count and drop the edges.
//!
//! Islands may end up orthogonally adjacent; the boards of the standard
//! suite are too dense to avoid it.

pub mod rng;

use crate::error::GenerateError;
use crate::puzzle::{build_edges, Assignment, Island, Puzzle};
use crate::verify::verify;
pub use rng::{derive_seed, SplitMix64};

#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    pub n: usize,
    pub rows: usize,
    pub cols: usize,
    /// Extra edges as a fraction of `n`.
    pub alpha: f64,
    /// Probability of doubling each edge.
    pub beta: f64,
    pub seed: u64,
    /// Island resamples allowed per placement, and regenerations allowed
    /// when an emitted puzzle fails its own witness.
    pub max_retries: u32,
}

pub const DEFAULT_MAX_RETRIES: u32 = 10_000;

impl GenConfig {
    pub fn new(n: usize, rows: usize, cols: usize, alpha: f64, beta: f64, seed: u64) -> Self {
        Self {
            n,
            rows,
            cols,
            alpha,
            beta,
            seed,
            max_retries: DEFAULT_MAX_RETRIES,
        }
    }

    pub fn validate(&self) -> Result<(), GenerateError> {
        let bad = |msg: String| Err(GenerateError::InvalidConfig(msg));
        if self.n < 2 {
            return bad(format!("n = {} but at least 2 islands are needed", self.n));
        }
        if self.rows == 0 || self.cols == 0 || self.n > self.rows * self.cols {
            return bad(format!(
                "{} islands do not fit a {}x{} grid",
                self.n, self.rows, self.cols
            ));
        }
        if !(0.0..=1.0).contains(&self.alpha) {
            return bad(format!("alpha = {} outside [0, 1]", self.alpha));
        }
        if !(0.0..=1.0).contains(&self.beta) {
            return bad(format!("beta = {} outside [0, 1]", self.beta));
        }
        if self.max_retries == 0 {
            return bad("max_retries must be positive".into());
        }
        Ok(())
    }

    /// `⌊αn⌋`, the number of cycle-edge attempts.
    pub fn cycle_attempts(&self) -> usize {
        (self.alpha * self.n as f64 + 1e-9).floor() as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Occupant {
    Empty,
    Island,
    Edge,
}

/// Islands and edges of a hidden solution under construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layout {
    pub rows: usize,
    pub cols: usize,
    /// Island cells in creation order.
    pub islands: Vec<(usize, usize)>,
    /// Edges as pairs of creation indices.
    pub edges: Vec<(usize, usize)>,
    occ: Vec<Occupant>,
}

const DIRECTIONS: [(isize, isize); 4] = [(-1, 0), (1, 0), (0, -1), (0, 1)];

impl Layout {
    fn new(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            islands: Vec::new(),
            edges: Vec::new(),
            occ: vec![Occupant::Empty; rows * cols],
        }
    }

    fn at(&self, r: usize, c: usize) -> Occupant {
        self.occ[r * self.cols + c]
    }

    fn step(&self, (r, c): (usize, usize), (dr, dc): (isize, isize)) -> Option<(usize, usize)> {
        let r = r.checked_add_signed(dr)?;
        let c = c.checked_add_signed(dc)?;
        (r < self.rows && c < self.cols).then_some((r, c))
    }

    /// Free cells along a ray from `from`, up to the first island or edge.
    fn ray_cells(&self, from: (usize, usize), dir: (isize, isize)) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut cur = from;
        while let Some(next) = self.step(cur, dir) {
            if self.at(next.0, next.1) != Occupant::Empty {
                break;
            }
            out.push(next);
            cur = next;
        }
        out
    }

    fn add_island(&mut self, (r, c): (usize, usize)) -> usize {
        self.occ[r * self.cols + c] = Occupant::Island;
        self.islands.push((r, c));
        self.islands.len() - 1
    }

    fn add_edge(&mut self, a: usize, b: usize) {
        let (ra, ca) = self.islands[a];
        let (rb, cb) = self.islands[b];
        if ra == rb {
            for c in ca.min(cb) + 1..ca.max(cb) {
                self.occ[ra * self.cols + c] = Occupant::Edge;
            }
        } else {
            for r in ra.min(rb) + 1..ra.max(rb) {
                self.occ[r * self.cols + ca] = Occupant::Edge;
            }
        }
        self.edges.push((a, b));
    }

    /// Unconnected island pairs that see each other across empty cells, in
    /// row-major order of the first island, right neighbour before lower.
    pub fn addable_pairs(&self) -> Vec<(usize, usize)> {
        let mut id = vec![usize::MAX; self.rows * self.cols];
        for (k, &(r, c)) in self.islands.iter().enumerate() {
            id[r * self.cols + c] = k;
        }
        let mut order: Vec<usize> = (0..self.islands.len()).collect();
        order.sort_by_key(|&k| self.islands[k]);
        let connected = |a: usize, b: usize| {
            self.edges
                .iter()
                .any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b))
        };
        let mut out = Vec::new();
        for &k in &order {
            for dir in [(0, 1), (1, 0)] {
                let mut cur = self.islands[k];
                while let Some(next) = self.step(cur, dir) {
                    match self.at(next.0, next.1) {
                        Occupant::Empty => {}
                        Occupant::Edge => break,
                        Occupant::Island => {
                            let other = id[next.0 * self.cols + next.1];
                            if !connected(k, other) {
                                out.push((k, other));
                            }
                            break;
                        }
                    }
                    cur = next;
                }
            }
        }
        out
    }

    /// Creation index → position in `(row, col)` order.
    fn canonical_index(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.islands.len()).collect();
        order.sort_by_key(|&k| self.islands[k]);
        let mut rank = vec![0; order.len()];
        for (pos, &k) in order.iter().enumerate() {
            rank[k] = pos;
        }
        rank
    }
}

/// A hidden-solution edge between canonical island indices `i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessEdge {
    pub i: usize,
    pub j: usize,
    pub mult: u8,
}

/// Places `n` islands joined by `n − 1` tree edges.
pub fn step1_place_islands(cfg: &GenConfig, rng: &mut SplitMix64) -> Result<Layout, GenerateError> {
    let mut layout = Layout::new(cfg.rows, cfg.cols);
    let first = rng.index(cfg.rows * cfg.cols);
    layout.add_island((first / cfg.cols, first % cfg.cols));
    for _ in 1..cfg.n {
        let mut placed = false;
        for _ in 0..cfg.max_retries {
            let parent = rng.index(layout.islands.len());
            let from = layout.islands[parent];
            let rays: Vec<Vec<(usize, usize)>> = DIRECTIONS
                .iter()
                .map(|&d| layout.ray_cells(from, d))
                .filter(|cells| !cells.is_empty())
                .collect();
            if rays.is_empty() {
                continue;
            }
            let ray = &rays[rng.index(rays.len())];
            let cell = ray[rng.index(ray.len())];
            let child = layout.add_island(cell);
            layout.add_edge(parent, child);
            placed = true;
            break;
        }
        if !placed {
            return Err(GenerateError::GenerationFailed {
                step: "island placement",
                retries: cfg.max_retries,
            });
        }
    }
    Ok(layout)
}

/// Makes `⌊αn⌋` attempts to add a cycle edge; returns how many succeeded.
/// An attempt with nothing addable is spent without effect.
pub fn step2_add_cycles(layout: &mut Layout, cfg: &GenConfig, rng: &mut SplitMix64) -> usize {
    let mut added = 0;
    for _ in 0..cfg.cycle_attempts() {
        let pairs = layout.addable_pairs();
        if pairs.is_empty() {
            continue;
        }
        let (a, b) = pairs[rng.index(pairs.len())];
        layout.add_edge(a, b);
        added += 1;
    }
    added
}

/// Draws one uniform variate per edge, in canonical `(i, j)` order, and
/// doubles the edge when it falls below `β`.
pub fn step3_double_edges(
    layout: &Layout,
    cfg: &GenConfig,
    rng: &mut SplitMix64,
) -> Vec<WitnessEdge> {
    let rank = layout.canonical_index();
    let mut edges: Vec<(usize, usize)> = layout
        .edges
        .iter()
        .map(|&(a, b)| {
            let (x, y) = (rank[a], rank[b]);
            (x.min(y), x.max(y))
        })
        .collect();
    edges.sort_unstable();
    edges
        .into_iter()
        .map(|(i, j)| WitnessEdge {
            i,
            j,
            mult: if rng.unit() < cfg.beta { 2 } else { 1 },
        })
        .collect()
}

/// Prints the bridge counts and returns the puzzle with the witness mapped
/// onto its candidate edges, or `None` if the witness does not solve the
/// emitted puzzle.
pub fn step4_emit(layout: &Layout, witness: &[WitnessEdge]) -> Option<(Puzzle, Assignment)> {
    let mut cells = layout.islands.clone();
    cells.sort_unstable();
    let mut degree = vec![0u8; cells.len()];
    for w in witness {
        degree[w.i] += w.mult;
        degree[w.j] += w.mult;
    }
    let islands = cells
        .iter()
        .zip(&degree)
        .map(|(&(row, col), &degree)| Island { row, col, degree })
        .collect();
    let puzzle = Puzzle::new(layout.rows, layout.cols, islands).ok()?;
    let edges = build_edges(&puzzle);
    let mut a = Assignment::zeros(edges.len());
    for w in witness {
        a.mult[edges.find(w.i, w.j)?] = w.mult;
    }
    verify(&puzzle, &edges, &a)
        .is_empty()
        .then_some((puzzle, a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenOutcome {
    pub puzzle: Puzzle,
    /// Hidden solution over the puzzle's candidate edges.
    pub witness: Assignment,
    pub achieved_cycles: usize,
    /// Times the emitted puzzle failed its witness and was regenerated.
    pub regenerations: u32,
}

pub fn generate(cfg: &GenConfig) -> Result<GenOutcome, GenerateError> {
    cfg.validate()?;
    for attempt in 0..cfg.max_retries {
        let seed = if attempt == 0 {
            cfg.seed
        } else {
            derive_seed(cfg.seed, attempt as u64)
        };
        let mut rng = SplitMix64::new(seed);
        let mut layout = step1_place_islands(cfg, &mut rng)?;
        let achieved_cycles = step2_add_cycles(&mut layout, cfg, &mut rng);
        let witness = step3_double_edges(&layout, cfg, &mut rng);
        if let Some((puzzle, witness)) = step4_emit(&layout, &witness) {
            return Ok(GenOutcome {
                puzzle,
                witness,
                achieved_cycles,
                regenerations: attempt,
            });
        }
    }
    Err(GenerateError::GenerationFailed {
        step: "emission",
        retries: cfg.max_retries,
    })
}
