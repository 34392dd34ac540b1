//! Exhaustive enumeration of assignments for small puzzles.
//!
//! Used as ground truth for the solver and verifier. Every vector in
//! `{0,1,2}^|E|` is visited in lexicographic order (edge 0 most significant);
//! the only pruning skips prefixes that already give some island more
//! bridges than its degree.

use crate::error::OracleError;
use crate::puzzle::{build_edges, Assignment, EdgeSet, Puzzle};
use crate::verify::verify;

pub const DEFAULT_EDGE_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub feasible_count: u64,
    /// The first `witness_cap` feasible assignments in enumeration order.
    pub witnesses: Vec<Assignment>,
}

impl OracleResult {
    pub fn is_feasible(&self) -> bool {
        self.feasible_count > 0
    }
}

pub fn enumerate(puzzle: &Puzzle, edge_limit: usize) -> Result<OracleResult, OracleError> {
    enumerate_with(puzzle, edge_limit, usize::MAX)
}

pub fn enumerate_with(
    puzzle: &Puzzle,
    edge_limit: usize,
    witness_cap: usize,
) -> Result<OracleResult, OracleError> {
    let edges = build_edges(puzzle);
    if edges.len() > edge_limit {
        return Err(OracleError::EdgeLimitExceeded {
            edges: edges.len(),
            limit: edge_limit,
        });
    }
    let mut walk = Walk {
        puzzle,
        edges: &edges,
        current: Assignment::zeros(edges.len()),
        load: vec![0; puzzle.len()],
        result: OracleResult {
            feasible_count: 0,
            witnesses: Vec::new(),
        },
        witness_cap,
    };
    walk.visit(0);
    Ok(walk.result)
}

struct Walk<'a> {
    puzzle: &'a Puzzle,
    edges: &'a EdgeSet,
    current: Assignment,
    load: Vec<u32>,
    result: OracleResult,
    witness_cap: usize,
}

impl Walk<'_> {
    fn visit(&mut self, e: usize) {
        if e == self.edges.len() {
            if verify(self.puzzle, self.edges, &self.current).is_empty() {
                self.result.feasible_count += 1;
                if self.result.witnesses.len() < self.witness_cap {
                    self.result.witnesses.push(self.current.clone());
                }
            }
            return;
        }
        let (i, j) = (self.edges.edge(e).i, self.edges.edge(e).j);
        for m in 0..=2u8 {
            self.load[i] += m as u32;
            self.load[j] += m as u32;
            let fits = self.load[i] <= self.puzzle.degree(i) as u32
                && self.load[j] <= self.puzzle.degree(j) as u32;
            if fits {
                self.current.mult[e] = m;
                self.visit(e + 1);
            }
            self.load[i] -= m as u32;
            self.load[j] -= m as u32;
            // Loads only grow with m, so larger values overflow too.
            if !fits {
                break;
            }
        }
        self.current.mult[e] = 0;
    }
}
