#![allow(dead_code)]

use std::collections::BTreeSet;
use std::path::PathBuf;

use hashi::generator::rng::SplitMix64;
use hashi::oracle::DEFAULT_EDGE_LIMIT;
use hashi::{build_edges, generate, read_instance, GenConfig, Island, Puzzle};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests")
        .join("fixtures")
        .join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture")
}

pub fn isl(row: usize, col: usize, degree: u8) -> Island {
    Island { row, col, degree }
}

pub fn hand_made() -> Vec<Puzzle> {
    let texts = [
        "1 3\n1.1\n",
        "1 3\n1.2\n",
        "1 3\n2.2\n",
        "1 2\n11\n",
        "3 3\n2.2\n...\n2.2\n",
        "3 3\n4.4\n...\n4.4\n",
        "3 3\n1.1\n...\n1.1\n",
        "3 3\n.1.\n1.1\n.1.\n",
        "3 3\n.2.\n2.2\n.2.\n",
        "1 5\n1.2.1\n",
        "1 5\n2.2.2\n",
        "3 5\n2.3.1\n.....\n1.2.1\n",
        "3 3\n3.3\n...\n3.3\n",
        "5 5\n2.3.1\n.....\n4.5.2\n.....\n1.2..\n",
        "3 3\n1.2\n...\n..1\n",
        "2 2\n11\n11\n",
        "2 2\n22\n22\n",
        "3 4\n2..1\n....\n1..2\n",
        "4 4\n3..2\n....\n....\n2..3\n",
        "3 3\n.3.\n3.3\n.3.\n",
        "5 5\n..1..\n.....\n1.4.1\n.....\n..1..\n",
        "5 5\n..2..\n.....\n2.8.2\n.....\n..2..\n",
        "5 5\n..2..\n.....\n2.8.2\n.....\n..1..\n",
    ];
    texts.iter().map(|t| read_instance(t).unwrap()).collect()
}

/// Generated puzzles (all feasible) with at most `DEFAULT_EDGE_LIMIT` edges.
pub fn small_generated(count: usize, seed: u64) -> Vec<Puzzle> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = 2 + rng.index(6);
        let rows = 2 + rng.index(4);
        let cols = 2 + rng.index(4);
        if n > rows * cols {
            continue;
        }
        let alpha = [0.0, 0.2, 0.5][rng.index(3)];
        let beta = [0.0, 0.5, 1.0][rng.index(3)];
        let mut cfg = GenConfig::new(n, rows, cols, alpha, beta, rng.next_u64());
        cfg.max_retries = 100;
        if let Ok(g) = generate(&cfg) {
            if build_edges(&g.puzzle).len() <= DEFAULT_EDGE_LIMIT {
                out.push(g.puzzle);
            }
        }
    }
    out
}

/// Random island sets with random degrees; mostly infeasible.
pub fn small_random(count: usize, seed: u64) -> Vec<Puzzle> {
    let mut rng = SplitMix64::new(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let rows = 1 + rng.index(5);
        let cols = 2 + rng.index(4);
        let n = 2 + rng.index(5.min(rows * cols - 1));
        let mut cells: Vec<usize> = (0..rows * cols).collect();
        for i in (1..cells.len()).rev() {
            cells.swap(i, rng.index(i + 1));
        }
        let islands = cells[..n]
            .iter()
            .map(|&c| isl(c / cols, c % cols, 1 + rng.index(4) as u8))
            .collect();
        let p = Puzzle::new(rows, cols, islands).unwrap();
        if build_edges(&p).len() <= DEFAULT_EDGE_LIMIT {
            out.push(p);
        }
    }
    out
}

/// Generated puzzles with one degree nudged by one; feasibility varies.
pub fn small_perturbed(count: usize, seed: u64) -> Vec<Puzzle> {
    let mut rng = SplitMix64::new(seed ^ 0x5eed);
    small_generated(count, seed)
        .into_iter()
        .map(|p| {
            let mut islands = p.islands().to_vec();
            let k = rng.index(islands.len());
            let d = islands[k].degree;
            islands[k].degree = if d == 1 || (d < 8 && rng.index(2) == 0) {
                d + 1
            } else {
                d - 1
            };
            Puzzle::new(p.rows(), p.cols(), islands).unwrap()
        })
        .collect()
}

/// The full small-instance corpus used by the oracle comparisons.
pub fn oracle_corpus() -> Vec<Puzzle> {
    let mut all = hand_made();
    all.extend(small_generated(90, 11));
    all.extend(small_random(90, 12));
    all.extend(small_perturbed(60, 13));
    all
}

pub fn coords(p: &Puzzle, k: usize) -> (usize, usize) {
    let isl = p.islands()[k];
    (isl.row, isl.col)
}

pub type Segment = ((usize, usize), (usize, usize));

/// Candidate edges found by scanning every pair of islands.
pub fn naive_edges(p: &Puzzle) -> BTreeSet<Segment> {
    let isl = p.islands();
    let mut out = BTreeSet::new();
    for a in isl {
        for b in isl {
            let same_row = a.row == b.row && a.col < b.col;
            let same_col = a.col == b.col && a.row < b.row;
            if !(same_row || same_col) {
                continue;
            }
            let blocked = isl.iter().any(|c| {
                (same_row && c.row == a.row && a.col < c.col && c.col < b.col)
                    || (same_col && c.col == a.col && a.row < c.row && c.row < b.row)
            });
            if !blocked {
                out.insert(((a.row, a.col), (b.row, b.col)));
            }
        }
    }
    out
}

/// Open segments that meet at a point strictly inside both.
pub fn naive_cross(h: Segment, v: Segment) -> bool {
    let ((r, c1), (_, c2)) = h;
    let ((r1, c), (r2, _)) = v;
    r1 < r && r < r2 && c1 < c && c < c2
}
