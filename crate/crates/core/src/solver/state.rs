//! Search nodes and domain propagation.

use std::collections::VecDeque;

use super::cuts::CutPool;
use super::domain::{self, Domain};
use crate::puzzle::{Assignment, EdgeSet, Puzzle};

/// Domains of every edge at one node of the search tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchState {
    dom: Vec<Domain>,
    /// Edges whose domain is not `{0}`.
    open_or_positive: usize,
    /// Edges whose domain excludes 0.
    fixed_positive: usize,
    /// Edges whose domain is `{2}`.
    fixed_two: usize,
    /// Pool size when this node was last propagated.
    pub(crate) cuts_seen: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Propagation {
    Fixpoint,
    Conflict,
}

/// The constraint that was being enforced when a conflict surfaced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Culprit {
    /// Degree of an island.
    Island(usize),
    /// Crossing partners of a positive edge.
    Crossing(usize),
    /// A pooled cut.
    Cut(usize),
    /// The spanning-tree edge count.
    Weak,
    /// The branching decision itself.
    Decision(usize),
}

impl SearchState {
    pub fn new(edge_count: usize) -> Self {
        Self {
            dom: vec![domain::FULL; edge_count],
            open_or_positive: edge_count,
            fixed_positive: 0,
            fixed_two: 0,
            cuts_seen: 0,
        }
    }

    /// A state with the given domains, not yet propagated.
    pub fn from_domains(dom: Vec<Domain>) -> Self {
        let open_or_positive = dom.iter().filter(|&&d| d != domain::ZERO).count();
        let fixed_positive = dom.iter().filter(|&&d| !domain::contains(d, 0)).count();
        let fixed_two = dom.iter().filter(|&&d| d == domain::TWO).count();
        Self {
            dom,
            open_or_positive,
            fixed_positive,
            fixed_two,
            cuts_seen: 0,
        }
    }

    pub fn domain(&self, e: usize) -> Domain {
        self.dom[e]
    }

    pub fn domains(&self) -> &[Domain] {
        &self.dom
    }

    pub fn fixed_zero_count(&self) -> usize {
        self.dom.len() - self.open_or_positive
    }

    pub fn fixed_positive_count(&self) -> usize {
        self.fixed_positive
    }

    pub fn is_complete(&self) -> bool {
        self.dom.iter().all(|&d| domain::is_fixed(d))
    }

    /// The assignment of a complete state.
    pub fn assignment(&self) -> Option<Assignment> {
        self.is_complete()
            .then(|| Assignment::new(self.dom.iter().map(|&d| domain::min(d)).collect()))
    }

    /// Residual degree interval `[Σ min, Σ max]` over the edges at an island.
    pub fn degree_bounds(&self, edges: &EdgeSet, island: usize) -> (u32, u32) {
        edges.incident(island).iter().fold((0, 0), |(lo, hi), &e| {
            (
                lo + domain::min(self.dom[e]) as u32,
                hi + domain::max(self.dom[e]) as u32,
            )
        })
    }
}

/// Applies the degree, crossing, spanning-tree count and pooled cut
/// constraints to a [`SearchState`] until nothing changes.
pub struct Propagator<'a> {
    puzzle: &'a Puzzle,
    edges: &'a EdgeSet,
    pool: &'a CutPool,
    weak_connectivity: bool,
    /// Most double bridges compatible with `n − 1` positive edges and the
    /// total bridge count `Σd / 2`.
    max_doubles: i64,
}

struct Queues {
    islands: VecDeque<usize>,
    island_queued: Vec<bool>,
    cuts: VecDeque<usize>,
    cut_queued: Vec<bool>,
    positive: VecDeque<usize>,
    weak_pending: bool,
    context: Culprit,
}

impl Queues {
    fn new(n: usize, cuts: usize) -> Self {
        Self {
            islands: VecDeque::new(),
            island_queued: vec![false; n],
            cuts: VecDeque::new(),
            cut_queued: vec![false; cuts],
            positive: VecDeque::new(),
            weak_pending: false,
            context: Culprit::Weak,
        }
    }

    fn island(&mut self, k: usize) {
        if !self.island_queued[k] {
            self.island_queued[k] = true;
            self.islands.push_back(k);
        }
    }

    fn cut(&mut self, c: usize) {
        if !self.cut_queued[c] {
            self.cut_queued[c] = true;
            self.cuts.push_back(c);
        }
    }
}

#[derive(Debug)]
struct Conflict(Culprit);

impl<'a> Propagator<'a> {
    pub fn new(
        puzzle: &'a Puzzle,
        edges: &'a EdgeSet,
        pool: &'a CutPool,
        weak_connectivity: bool,
    ) -> Self {
        let total: i64 = puzzle.islands().iter().map(|i| i.degree as i64).sum();
        Self {
            puzzle,
            edges,
            pool,
            weak_connectivity,
            max_doubles: total / 2 - (puzzle.len() as i64 - 1),
        }
    }

    /// Full propagation: every island, cut and positive edge is examined.
    pub fn propagate(&self, state: &mut SearchState) -> Propagation {
        let mut q = Queues::new(self.puzzle.len(), self.pool.len());
        (0..self.puzzle.len()).for_each(|k| q.island(k));
        (0..self.pool.len()).for_each(|c| q.cut(c));
        q.positive
            .extend((0..self.edges.len()).filter(|&e| !domain::contains(state.dom[e], 0)));
        state.cuts_seen = self.pool.len();
        q.weak_pending = true;
        Self::verdict(self.fixpoint(state, &mut q))
    }

    /// Restricts edge `e` to `mask` and propagates the consequences. Cuts
    /// pooled since `state` was last propagated are examined as well.
    pub fn assign(&self, state: &mut SearchState, e: usize, mask: Domain) -> Propagation {
        Self::verdict(self.assign_explained(state, e, mask).map_err(Conflict))
    }

    /// Like [`Propagator::assign`], naming the constraint behind a conflict.
    pub fn assign_explained(
        &self,
        state: &mut SearchState,
        e: usize,
        mask: Domain,
    ) -> Result<(), Culprit> {
        let mut q = Queues::new(self.puzzle.len(), self.pool.len());
        (state.cuts_seen..self.pool.len()).for_each(|c| q.cut(c));
        state.cuts_seen = self.pool.len();
        q.context = Culprit::Decision(e);
        self.restrict(state, e, mask, &mut q)
            .and_then(|()| self.fixpoint(state, &mut q))
            .map_err(|Conflict(c)| c)
    }

    fn verdict(r: Result<(), Conflict>) -> Propagation {
        match r {
            Ok(()) => Propagation::Fixpoint,
            Err(_) => Propagation::Conflict,
        }
    }

    fn fixpoint(&self, state: &mut SearchState, q: &mut Queues) -> Result<(), Conflict> {
        self.check_weak(state)?;
        loop {
            if let Some(e) = q.positive.pop_front() {
                q.context = Culprit::Crossing(e);
                for &f in self.edges.crossing_partners(e) {
                    self.restrict(state, f, domain::ZERO, q)?;
                }
            } else if let Some(k) = q.islands.pop_front() {
                q.island_queued[k] = false;
                q.context = Culprit::Island(k);
                self.tighten_island(state, k, q)?;
            } else if let Some(c) = q.cuts.pop_front() {
                q.cut_queued[c] = false;
                q.context = Culprit::Cut(c);
                self.check_cut(state, c, q)?;
            } else if std::mem::take(&mut q.weak_pending) {
                q.context = Culprit::Weak;
                self.tighten_weak(state, q)?;
            } else {
                return Ok(());
            }
        }
    }

    fn check_weak(&self, state: &SearchState) -> Result<(), Conflict> {
        if self.weak_connectivity
            && (state.open_or_positive + 1 < self.puzzle.len()
                || state.fixed_two as i64 > self.max_doubles)
        {
            return Err(Conflict(Culprit::Weak));
        }
        Ok(())
    }

    /// With exactly `n − 1` usable edges left all of them must be positive;
    /// once the double budget is spent no other edge may carry two bridges.
    fn tighten_weak(&self, state: &mut SearchState, q: &mut Queues) -> Result<(), Conflict> {
        if !self.weak_connectivity {
            return Ok(());
        }
        self.check_weak(state)?;
        if state.open_or_positive + 1 == self.puzzle.len() {
            for e in 0..self.edges.len() {
                if state.dom[e] != domain::ZERO {
                    self.restrict(state, e, domain::POSITIVE, q)?;
                }
            }
        }
        if state.fixed_two as i64 == self.max_doubles {
            for e in 0..self.edges.len() {
                if state.dom[e] != domain::TWO {
                    self.restrict(state, e, domain::ZERO | domain::ONE, q)?;
                }
            }
        }
        Ok(())
    }

    fn restrict(
        &self,
        state: &mut SearchState,
        e: usize,
        mask: Domain,
        q: &mut Queues,
    ) -> Result<(), Conflict> {
        let old = state.dom[e];
        let new = old & mask;
        if new == old {
            return Ok(());
        }
        if new == 0 {
            return Err(Conflict(q.context));
        }
        state.dom[e] = new;
        let edge = self.edges.edge(e);
        q.island(edge.i);
        q.island(edge.j);
        if domain::contains(old, 0) && !domain::contains(new, 0) {
            state.fixed_positive += 1;
            q.positive.push_back(e);
        }
        if new == domain::TWO {
            state.fixed_two += 1;
            if self.weak_connectivity {
                self.check_weak(state)?;
                q.weak_pending |= state.fixed_two as i64 == self.max_doubles;
            }
        }
        if new == domain::ZERO {
            state.open_or_positive -= 1;
            for &c in self.pool.watching(e) {
                q.cut(c);
            }
            self.check_weak(state)?;
            q.weak_pending |= state.open_or_positive + 1 == self.puzzle.len();
        }
        Ok(())
    }

    fn tighten_island(
        &self,
        state: &mut SearchState,
        k: usize,
        q: &mut Queues,
    ) -> Result<(), Conflict> {
        let need = self.puzzle.degree(k) as i32;
        let (lo, hi) = state.degree_bounds(self.edges, k);
        let (lo, hi) = (lo as i32, hi as i32);
        if lo > need || hi < need {
            return Err(Conflict(Culprit::Island(k)));
        }
        for &e in self.edges.incident(k) {
            let d = state.dom[e];
            let others_lo = lo - domain::min(d) as i32;
            let others_hi = hi - domain::max(d) as i32;
            // Bounds are recomputed on the next visit if this changes `d`.
            self.restrict(
                state,
                e,
                domain::range(need - others_hi, need - others_lo),
                q,
            )?;
        }
        Ok(())
    }

    fn check_cut(&self, state: &mut SearchState, c: usize, q: &mut Queues) -> Result<(), Conflict> {
        let mut live = None;
        for &e in &self.pool.get(c).boundary {
            if state.dom[e] != domain::ZERO {
                if live.is_some() {
                    return Ok(());
                }
                live = Some(e);
            }
        }
        match live {
            None => Err(Conflict(Culprit::Cut(c))),
            Some(e) => self.restrict(state, e, domain::POSITIVE, q),
        }
    }
}
