use super::domain;
use super::state::SearchState;
use crate::puzzle::{EdgeSet, Puzzle};

/// A branching decision: the edge to fix and the values to try, in order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Branch {
    pub edge: usize,
    pub values: Vec<u8>,
}

/// Picks the next edge to branch on.
///
/// Among islands with an undecided incident edge, the one with the least
/// slack (`Σ max − degree`) wins, lowest index first; its lowest-indexed
/// undecided edge is chosen. Values are tried high to low when the island's
/// residual demand is at least `2u − 1` for `u` undecided incident edges,
/// low to high otherwise. Returns `None` when every edge is decided.
pub fn branch(puzzle: &Puzzle, edges: &EdgeSet, state: &SearchState) -> Option<Branch> {
    let mut best: Option<(u32, usize)> = None;
    for k in 0..puzzle.len() {
        if !edges
            .incident(k)
            .iter()
            .any(|&e| !domain::is_fixed(state.domain(e)))
        {
            continue;
        }
        let (_, hi) = state.degree_bounds(edges, k);
        let slack = hi.saturating_sub(puzzle.degree(k) as u32);
        if best.is_none_or(|(s, _)| slack < s) {
            best = Some((slack, k));
        }
    }
    let (_, island) = best?;

    let mut edge = None;
    let mut undecided = 0i32;
    let mut decided_sum = 0i32;
    for &e in edges.incident(island) {
        let d = state.domain(e);
        if domain::is_fixed(d) {
            decided_sum += domain::min(d) as i32;
        } else {
            undecided += 1;
            edge.get_or_insert(e);
        }
    }
    let edge = edge?;
    let residual = puzzle.degree(island) as i32 - decided_sum;
    let d = state.domain(edge);
    let values = if residual >= 2 * undecided - 1 {
        domain::values(d).rev().collect()
    } else {
        domain::values(d).collect()
    };
    Some(Branch { edge, values })
}

/// Picks the undecided edge whose endpoints have accumulated the most
/// conflict weight per remaining value, breaking ties by the smaller endpoint
/// slack and then by edge index. Values follow the same order as [`branch`]
/// for the endpoint with the smaller slack.
pub fn branch_weighted(
    puzzle: &Puzzle,
    edges: &EdgeSet,
    state: &SearchState,
    weights: &[u64],
) -> Option<Branch> {
    let slack = |k: usize| {
        let (_, hi) = state.degree_bounds(edges, k);
        hi.saturating_sub(puzzle.degree(k) as u32)
    };
    // (score numerator, domain size, slack) compared as a ratio.
    let mut best: Option<(u64, u64, u32, usize, usize)> = None;
    for (e, edge) in edges.edges().iter().enumerate() {
        let d = state.domain(e);
        if domain::is_fixed(d) {
            continue;
        }
        let w = weights[edge.i] + weights[edge.j];
        let size = d.count_ones() as u64;
        let (si, sj) = (slack(edge.i), slack(edge.j));
        let (s, island) = if si <= sj { (si, edge.i) } else { (sj, edge.j) };
        let better = match best {
            None => true,
            Some((bw, bsize, bs, _, _)) => {
                let (lhs, rhs) = (w * bsize, bw * size);
                lhs > rhs || (lhs == rhs && s < bs)
            }
        };
        if better {
            best = Some((w, size, s, e, island));
        }
    }
    let (_, _, _, edge, island) = best?;
    Some(Branch {
        edge,
        values: value_order(puzzle, edges, state, island, edge),
    })
}

fn value_order(
    puzzle: &Puzzle,
    edges: &EdgeSet,
    state: &SearchState,
    island: usize,
    edge: usize,
) -> Vec<u8> {
    let mut undecided = 0i32;
    let mut decided_sum = 0i32;
    for &e in edges.incident(island) {
        let d = state.domain(e);
        if domain::is_fixed(d) {
            decided_sum += domain::min(d) as i32;
        } else {
            undecided += 1;
        }
    }
    let residual = puzzle.degree(island) as i32 - decided_sum;
    let d = state.domain(edge);
    if residual >= 2 * undecided - 1 {
        domain::values(d).rev().collect()
    } else {
        domain::values(d).collect()
    }
}
