//! Checking an assignment against the puzzle rules.

use std::fmt;

use crate::puzzle::{Assignment, EdgeSet, Puzzle};

/// The six puzzle rules, numbered as players know them.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    /// Bridges begin and end at distinct islands.
    DistinctEndpoints = 1,
    /// Bridges cross neither bridges nor islands.
    NoCrossing = 2,
    /// Bridges run horizontally or vertically.
    AxisAligned = 3,
    /// At most two bridges join a pair of islands.
    AtMostTwo = 4,
    /// Each island carries exactly its number of bridges.
    DegreeMatches = 5,
    /// All islands are mutually reachable.
    Connected = 6,
}

impl Rule {
    pub fn number(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Violation {
    DegreeMismatch {
        island: usize,
        expected: u8,
        actual: u32,
    },
    Crossing {
        first: usize,
        second: usize,
    },
    BadMultiplicity {
        edge: usize,
        mult: u8,
    },
    Disconnected {
        components: Vec<Vec<usize>>,
    },
    /// A drawn bridge cell that is not part of a complete island-to-island run.
    EndpointInvalid {
        row: usize,
        col: usize,
    },
    /// A drawn bridge cell whose glyph orientation matches no candidate edge there.
    NotAxisAligned {
        row: usize,
        col: usize,
    },
}

impl Violation {
    pub fn rule(&self) -> Rule {
        match self {
            Violation::DegreeMismatch { .. } => Rule::DegreeMatches,
            Violation::Crossing { .. } => Rule::NoCrossing,
            Violation::BadMultiplicity { .. } => Rule::AtMostTwo,
            Violation::Disconnected { .. } => Rule::Connected,
            Violation::EndpointInvalid { .. } => Rule::DistinctEndpoints,
            Violation::NotAxisAligned { .. } => Rule::AxisAligned,
        }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rule {}: ", self.rule().number())?;
        match self {
            Violation::DegreeMismatch {
                island,
                expected,
                actual,
            } => write!(
                f,
                "island {island} needs {expected} bridges but has {actual}"
            ),
            Violation::Crossing { first, second } => {
                write!(f, "bridges on edges {first} and {second} cross")
            }
            Violation::BadMultiplicity { edge, mult } => {
                write!(f, "edge {edge} carries {mult} bridges")
            }
            Violation::Disconnected { components } => {
                write!(f, "islands form {} separate groups", components.len())
            }
            Violation::EndpointInvalid { row, col } => {
                write!(f, "bridge at ({row}, {col}) does not join two islands")
            }
            Violation::NotAxisAligned { row, col } => {
                write!(
                    f,
                    "bridge at ({row}, {col}) runs in an impossible direction"
                )
            }
        }
    }
}

/// Connected components of the graph induced by edges with `mult >= 1`,
/// over all islands. Members are ascending; components are ordered by their
/// smallest member.
pub fn positive_components(edges: &EdgeSet, a: &Assignment) -> Vec<Vec<usize>> {
    components_where(edges, |e| a.used(e))
}

/// Components of the graph formed by the edges satisfying `joined`.
pub(crate) fn components_where(edges: &EdgeSet, joined: impl Fn(usize) -> bool) -> Vec<Vec<usize>> {
    let n = edges.island_count();
    let mut parent: Vec<usize> = (0..n).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (e, edge) in edges.edges().iter().enumerate() {
        if joined(e) {
            let (ri, rj) = (root(&mut parent, edge.i), root(&mut parent, edge.j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
    }
    let mut slot = vec![usize::MAX; n];
    let mut comps: Vec<Vec<usize>> = Vec::new();
    for k in 0..n {
        let r = root(&mut parent, k);
        if slot[r] == usize::MAX {
            slot[r] = comps.len();
            comps.push(Vec::new());
        }
        comps[slot[r]].push(k);
    }
    comps
}

/// Reports every rule violated by `a`; an empty list means `a` solves the
/// puzzle.
///
/// # Panics
///
/// If `a` and `edges` have different lengths.
pub fn verify(puzzle: &Puzzle, edges: &EdgeSet, a: &Assignment) -> Vec<Violation> {
    assert_eq!(
        a.len(),
        edges.len(),
        "assignment must be indexed by the edge set"
    );
    let mut out = Vec::new();

    for (e, &m) in a.mult.iter().enumerate() {
        if m > 2 {
            out.push(Violation::BadMultiplicity { edge: e, mult: m });
        }
    }

    for (k, isl) in puzzle.islands().iter().enumerate() {
        let actual: u32 = edges.incident(k).iter().map(|&e| a.mult[e] as u32).sum();
        if actual != isl.degree as u32 {
            out.push(Violation::DegreeMismatch {
                island: k,
                expected: isl.degree,
                actual,
            });
        }
    }

    for &(e, f) in edges.crossings() {
        if a.used(e) && a.used(f) {
            out.push(Violation::Crossing {
                first: e,
                second: f,
            });
        }
    }

    let components = positive_components(edges, a);
    if components.len() > 1 {
        out.push(Violation::Disconnected { components });
    }
    out
}
