//! Branch-and-cut feasibility search.
//!
//! The search starts from the degree, crossing and (optionally) spanning-tree
//! count constraints only. Whenever a node fixes every edge, the candidate is
//! checked for connectivity; if it falls apart into several components, one
//! cut per component is added to a global pool and the candidate is
//! rejected. Pooled cuts take part in propagation for the rest of the run.

mod branching;
mod cuts;
pub mod domain;
mod state;

use std::time::{Duration, Instant};

pub use branching::{branch, branch_weighted, Branch};
pub use cuts::{separate_connectivity, separate_sealed, Cut, CutEmission, CutPool};
pub use state::{Culprit, Propagation, Propagator, SearchState};

use crate::puzzle::{build_edges, Assignment, EdgeSet, Puzzle};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Prune nodes that leave fewer than `n − 1` usable edges.
    pub use_weak_connectivity: bool,
    pub node_limit: Option<u64>,
    pub time_limit: Option<Duration>,
    pub cut_emission: CutEmission,
    pub branching: Branching,
    /// Refute single values by trial propagation at every node.
    pub probing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Branching {
    /// Least-slack island first, chronological backtracking, no restarts.
    SlackFirst,
    /// Conflict-weighted edge choice with Luby restarts.
    #[default]
    ConflictWeighted,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            use_weak_connectivity: true,
            node_limit: None,
            time_limit: None,
            cut_emission: CutEmission::AllComponents,
            branching: Branching::default(),
            probing: true,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Nodes whose propagation was run, including the root and dead nodes.
    pub nodes_explored: u64,
    /// Cuts appended to the pool.
    pub cuts_added: u64,
    /// Disconnected candidates that sent the search back up the tree.
    pub backjumps: u64,
    pub restarts: u64,
    pub wall_time: Duration,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Feasible(Assignment),
    Infeasible,
    LimitReached,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Feasible(_) => "feasible",
            Outcome::Infeasible => "infeasible",
            Outcome::LimitReached => "limit",
        }
    }

    pub fn assignment(&self) -> Option<&Assignment> {
        match self {
            Outcome::Feasible(a) => Some(a),
            _ => None,
        }
    }
}

/// Everything a finished run produced.
#[derive(Debug, Clone)]
pub struct Solution {
    pub outcome: Outcome,
    pub stats: SolveStats,
    pub edges: EdgeSet,
    /// The final cut pool, in insertion order.
    pub cuts: Vec<Cut>,
}

struct Frame {
    state: SearchState,
    edge: usize,
    values: Vec<u8>,
    next: usize,
}

pub fn solve(puzzle: &Puzzle, opts: &SolveOptions) -> (Outcome, SolveStats) {
    let s = solve_detailed(puzzle, opts);
    (s.outcome, s.stats)
}

pub fn solve_detailed(puzzle: &Puzzle, opts: &SolveOptions) -> Solution {
    let edges = build_edges(puzzle);
    let initial = vec![domain::FULL; edges.len()];
    solve_within(puzzle, edges, &initial, opts)
}

/// Searches only among assignments whose multiplicities lie in `initial`,
/// one domain mask per edge of `build_edges(puzzle)`.
///
/// # Panics
///
/// If `initial` has the wrong length.
pub fn solve_restricted(
    puzzle: &Puzzle,
    initial: &[domain::Domain],
    opts: &SolveOptions,
) -> Solution {
    let edges = build_edges(puzzle);
    assert_eq!(initial.len(), edges.len(), "one domain per edge");
    solve_within(puzzle, edges, initial, opts)
}

fn solve_within(
    puzzle: &Puzzle,
    edges: EdgeSet,
    initial: &[domain::Domain],
    opts: &SolveOptions,
) -> Solution {
    let start = Instant::now();
    let mut pool = CutPool::new(edges.len());
    let mut stats = SolveStats::default();
    let outcome = search(puzzle, &edges, initial, opts, &mut pool, &mut stats, start);
    stats.wall_time = start.elapsed();
    Solution {
        outcome,
        stats,
        cuts: pool.cuts().to_vec(),
        edges,
    }
}

/// Failures allowed before the first restart; later runs get multiples of
/// this along the Luby sequence.
const RESTART_UNIT: u64 = 128;

/// The Luby sequence 1, 1, 2, 1, 1, 2, 4, 1, ... (1-based).
fn luby(mut i: u64) -> u64 {
    loop {
        let mut k = 1;
        while (1u64 << k) - 1 < i {
            k += 1;
        }
        if (1u64 << k) - 1 == i {
            return 1 << (k - 1);
        }
        i -= (1u64 << (k - 1)) - 1;
    }
}

fn search(
    puzzle: &Puzzle,
    edges: &EdgeSet,
    initial: &[domain::Domain],
    opts: &SolveOptions,
    pool: &mut CutPool,
    stats: &mut SolveStats,
    start: Instant,
) -> Outcome {
    let weak = opts.use_weak_connectivity;
    let weighted = opts.branching == Branching::ConflictWeighted;
    let mut weights = vec![1u64; puzzle.len()];
    let mut runs = 1;

    'run: loop {
        let budget = weighted.then(|| luby(runs) * RESTART_UNIT);
        let mut failures = 0;
        let mut stack: Vec<Frame> = Vec::new();
        let mut root = SearchState::from_domains(initial.to_vec());
        stats.nodes_explored += 1;
        let mut current = match Propagator::new(puzzle, edges, pool, weak).propagate(&mut root) {
            Propagation::Fixpoint => refine(puzzle, edges, opts, pool, stats, &mut root)
                .ok()
                .map(|()| root),
            Propagation::Conflict => None,
        };

        loop {
            if let Some(state) = current.take() {
                let next = if weighted {
                    branch_weighted(puzzle, edges, &state, &weights)
                } else {
                    branch(puzzle, edges, &state)
                };
                match next {
                    Some(Branch { edge, values }) => stack.push(Frame {
                        state,
                        edge,
                        values,
                        next: 0,
                    }),
                    None => {
                        let candidate = state.assignment().expect("complete state");
                        let cuts = separate_connectivity(edges, &candidate, opts.cut_emission);
                        if cuts.is_empty() {
                            return Outcome::Feasible(candidate);
                        }
                        let first_new = pool.len();
                        for cut in cuts {
                            if pool.insert(cut) {
                                stats.cuts_added += 1;
                            }
                        }
                        stats.backjumps += 1;
                        // Frames whose domains already violate a new cut have
                        // no surviving descendants.
                        while let Some(top) = stack.last() {
                            let dead = pool.cuts()[first_new..].iter().any(|c| {
                                c.boundary
                                    .iter()
                                    .all(|&e| top.state.domain(e) == domain::ZERO)
                            });
                            if !dead {
                                break;
                            }
                            stack.pop();
                        }
                    }
                }
            }

            let Some(frame) = stack.last_mut() else {
                return Outcome::Infeasible;
            };
            if frame.next == frame.values.len() {
                stack.pop();
                continue;
            }
            if opts.node_limit.is_some_and(|l| stats.nodes_explored >= l)
                || opts.time_limit.is_some_and(|t| start.elapsed() >= t)
            {
                return Outcome::LimitReached;
            }
            let value = frame.values[frame.next];
            frame.next += 1;
            let mut child = frame.state.clone();
            let edge = frame.edge;
            stats.nodes_explored += 1;
            let settled = Propagator::new(puzzle, edges, pool, weak)
                .assign_explained(&mut child, edge, domain::single(value))
                .and_then(|()| refine(puzzle, edges, opts, pool, stats, &mut child));
            match settled {
                Ok(()) => current = Some(child),
                Err(culprit) => {
                    failures += 1;
                    if weighted {
                        bump(&mut weights, edges, pool, culprit);
                    }
                    if budget.is_some_and(|b| failures >= b) {
                        stats.restarts += 1;
                        runs += 1;
                        continue 'run;
                    }
                }
            }
        }
    }
}

/// Work done at a node after plain propagation: sealed components become
/// cuts, and probing runs until it removes nothing more.
fn refine(
    puzzle: &Puzzle,
    edges: &EdgeSet,
    opts: &SolveOptions,
    pool: &mut CutPool,
    stats: &mut SolveStats,
    state: &mut SearchState,
) -> Result<(), Culprit> {
    loop {
        if state.is_complete() {
            return Ok(());
        }
        if let Some(first_new) = pool_sealed(edges, pool, stats, state) {
            return Err(first_new.map_or(Culprit::Weak, Culprit::Cut));
        }
        if !opts.probing || !probe(puzzle, edges, opts, pool, stats, state)? {
            return Ok(());
        }
    }
}

/// Pools the cuts of components sealed in `state`. `None` when there are
/// none; otherwise the index of the first new cut, if any was new.
fn pool_sealed(
    edges: &EdgeSet,
    pool: &mut CutPool,
    stats: &mut SolveStats,
    state: &SearchState,
) -> Option<Option<usize>> {
    let sealed = separate_sealed(edges, state.domains());
    if sealed.is_empty() {
        return None;
    }
    let first_new = pool.len();
    for cut in sealed {
        if pool.insert(cut) {
            stats.cuts_added += 1;
        }
    }
    Some((pool.len() > first_new).then_some(first_new))
}

/// Failed-value probing: every value of every undecided edge is tried in
/// turn and removed when propagation refutes it or leaves a sealed
/// component. Returns whether any value was removed.
fn probe(
    puzzle: &Puzzle,
    edges: &EdgeSet,
    opts: &SolveOptions,
    pool: &mut CutPool,
    stats: &mut SolveStats,
    state: &mut SearchState,
) -> Result<bool, Culprit> {
    let weak = opts.use_weak_connectivity;
    let mut changed = false;
    for e in 0..edges.len() {
        for v in domain::values(state.domain(e)) {
            let d = state.domain(e);
            if domain::is_fixed(d) || !domain::contains(d, v) {
                continue;
            }
            let mut trial = state.clone();
            let refuted = Propagator::new(puzzle, edges, pool, weak)
                .assign_explained(&mut trial, e, domain::single(v))
                .is_err()
                || (!trial.is_complete() && pool_sealed(edges, pool, stats, &trial).is_some());
            if refuted {
                changed = true;
                Propagator::new(puzzle, edges, pool, weak).assign_explained(
                    state,
                    e,
                    d & !domain::single(v),
                )?;
            }
        }
    }
    Ok(changed)
}

fn bump(weights: &mut [u64], edges: &EdgeSet, pool: &CutPool, culprit: Culprit) {
    match culprit {
        Culprit::Island(k) => weights[k] += 1,
        Culprit::Crossing(e) | Culprit::Decision(e) => {
            let edge = edges.edge(e);
            weights[edge.i] += 1;
            weights[edge.j] += 1;
        }
        Culprit::Cut(c) => {
            for &e in &pool.get(c).boundary {
                let edge = edges.edge(e);
                weights[edge.i] += 1;
                weights[edge.j] += 1;
            }
        }
        Culprit::Weak => {}
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puzzle::Island;
    use crate::verify::verify;

    fn isl(row: usize, col: usize, degree: u8) -> Island {
        Island { row, col, degree }
    }

    #[test]
    fn single_bridge_pair() {
        let p = Puzzle::new(1, 3, vec![isl(0, 0, 1), isl(0, 2, 1)]).unwrap();
        let (out, stats) = solve(&p, &SolveOptions::default());
        assert_eq!(out, Outcome::Feasible(Assignment::new(vec![1])));
        assert_eq!(stats.cuts_added, 0);
    }

    #[test]
    fn odd_pair_is_infeasible() {
        let p = Puzzle::new(1, 3, vec![isl(0, 0, 1), isl(0, 2, 2)]).unwrap();
        let (out, _) = solve(&p, &SolveOptions::default());
        assert_eq!(out, Outcome::Infeasible);
    }

    #[test]
    fn square_needs_a_cut_without_weak_bound() {
        let p = Puzzle::new(
            3,
            3,
            vec![isl(0, 0, 2), isl(0, 2, 2), isl(2, 0, 2), isl(2, 2, 2)],
        )
        .unwrap();
        let opts = SolveOptions {
            use_weak_connectivity: false,
            ..SolveOptions::default()
        };
        let sol = solve_detailed(&p, &opts);
        let a = sol.outcome.assignment().unwrap();
        assert!(verify(&p, &sol.edges, a).is_empty());
        assert_eq!(a.mult, vec![1, 1, 1, 1]);
        assert_eq!(sol.stats.cuts_added, 2);
        assert_eq!(sol.stats.backjumps, 1);

        let (out, stats) = solve(&p, &SolveOptions::default());
        assert_eq!(out.assignment().unwrap().mult, vec![1, 1, 1, 1]);
        assert_eq!(stats.cuts_added, 0);
    }

    #[test]
    fn node_limit_is_reported() {
        let p = Puzzle::new(
            3,
            3,
            vec![isl(0, 0, 2), isl(0, 2, 2), isl(2, 0, 2), isl(2, 2, 2)],
        )
        .unwrap();
        let opts = SolveOptions {
            node_limit: Some(1),
            probing: false,
            ..SolveOptions::default()
        };
        let (out, stats) = solve(&p, &opts);
        assert_eq!(out, Outcome::LimitReached);
        assert_eq!(stats.nodes_explored, 1);
    }

    #[test]
    fn luby_prefix() {
        let got: Vec<u64> = (1..=15).map(luby).collect();
        assert_eq!(got, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn every_configuration_agrees() {
        let p = state::tests::bridged_squares();
        for branching in [Branching::SlackFirst, Branching::ConflictWeighted] {
            for probing in [false, true] {
                for weak in [false, true] {
                    let opts = SolveOptions {
                        branching,
                        probing,
                        use_weak_connectivity: weak,
                        ..SolveOptions::default()
                    };
                    let sol = solve_detailed(&p, &opts);
                    let a = sol.outcome.assignment().expect("feasible");
                    assert!(verify(&p, &sol.edges, a).is_empty());
                }
            }
        }
    }

    #[test]
    fn restricted_domains_are_respected() {
        // Square of 2s with the top edge forced to zero has no solution.
        let p = Puzzle::new(
            3,
            3,
            vec![isl(0, 0, 2), isl(0, 2, 2), isl(2, 0, 2), isl(2, 2, 2)],
        )
        .unwrap();
        let mut initial = vec![domain::FULL; 4];
        initial[0] = domain::ZERO;
        let sol = solve_restricted(&p, &initial, &SolveOptions::default());
        assert_eq!(sol.outcome, Outcome::Infeasible);
    }
}
