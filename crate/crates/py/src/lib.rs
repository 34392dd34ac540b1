//! Python bindings: puzzles, the solver, the generator, the verifier and the
//! exhaustive oracle.

use std::time::Duration;

use hashi::oracle::{enumerate_with, DEFAULT_EDGE_LIMIT};
use hashi::solver::Branching;
use hashi::{Assignment, CutEmission, Orientation, Outcome, SolveOptions};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A puzzle: grid size plus islands as `(row, col, degree)`.
#[pyclass(name = "Puzzle", frozen, eq, skip_from_py_object)]
#[derive(Clone, PartialEq)]
struct PyPuzzle {
    inner: hashi::Puzzle,
}

#[pymethods]
impl PyPuzzle {
    #[new]
    fn new(rows: usize, cols: usize, islands: Vec<(usize, usize, u8)>) -> PyResult<Self> {
        let islands = islands
            .into_iter()
            .map(|(row, col, degree)| hashi::Island { row, col, degree })
            .collect();
        hashi::Puzzle::new(rows, cols, islands)
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    /// Parses the instance text format.
    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        hashi::read_instance(text)
            .map(|inner| Self { inner })
            .map_err(value_error)
    }

    fn to_text(&self) -> String {
        hashi::write_instance(&self.inner)
    }

    #[getter]
    fn rows(&self) -> usize {
        self.inner.rows()
    }

    #[getter]
    fn cols(&self) -> usize {
        self.inner.cols()
    }

    #[getter]
    fn islands(&self) -> Vec<(usize, usize, u8)> {
        self.inner
            .islands()
            .iter()
            .map(|i| (i.row, i.col, i.degree))
            .collect()
    }

    /// Candidate edges as `(i, j, "h" | "v", length)`, in canonical order.
    fn edges(&self) -> Vec<(usize, usize, &'static str, usize)> {
        hashi::build_edges(&self.inner)
            .edges()
            .iter()
            .map(|e| {
                let o = match e.orientation {
                    Orientation::Horizontal => "h",
                    Orientation::Vertical => "v",
                };
                (e.i, e.j, o, e.cells.len() + 1)
            })
            .collect()
    }

    /// Pairs of edge indices that cross.
    fn crossings(&self) -> Vec<(usize, usize)> {
        hashi::build_edges(&self.inner).crossings().to_vec()
    }

    /// Rule violations of `mult` (one entry per candidate edge), as text.
    fn verify(&self, mult: Vec<u8>) -> PyResult<Vec<String>> {
        let edges = hashi::build_edges(&self.inner);
        if mult.len() != edges.len() {
            return Err(PyValueError::new_err(format!(
                "expected {} multiplicities, got {}",
                edges.len(),
                mult.len()
            )));
        }
        let v = hashi::verify(&self.inner, &edges, &Assignment::new(mult));
        Ok(v.iter().map(ToString::to_string).collect())
    }

    /// Draws `mult` in the solution text format.
    fn draw(&self, mult: Vec<u8>) -> PyResult<String> {
        let edges = hashi::build_edges(&self.inner);
        hashi::write_solution(&self.inner, &edges, &Assignment::new(mult)).map_err(value_error)
    }

    /// Reads a solution drawing of this puzzle back into multiplicities.
    fn read_drawing(&self, text: &str) -> PyResult<Vec<u8>> {
        let file = hashi::read_solution(text).map_err(value_error)?;
        if file.puzzle != self.inner {
            return Err(PyValueError::new_err(
                "the drawing belongs to a different puzzle",
            ));
        }
        let (a, violations) = file.decode(&hashi::build_edges(&self.inner));
        match violations.first() {
            Some(v) => Err(value_error(v)),
            None => Ok(a.mult),
        }
    }

    fn __len__(&self) -> usize {
        self.inner.len()
    }

    fn __repr__(&self) -> String {
        format!(
            "Puzzle({}x{}, {} islands)",
            self.inner.rows(),
            self.inner.cols(),
            self.inner.len()
        )
    }
}

/// Outcome and counters of one solver run.
#[pyclass(name = "SolveResult", frozen, get_all)]
struct PySolveResult {
    /// `"feasible"`, `"infeasible"` or `"limit"`.
    outcome: &'static str,
    assignment: Option<Vec<u8>>,
    nodes_explored: u64,
    cuts_added: u64,
    backjumps: u64,
    restarts: u64,
    wall_time: f64,
}

#[pymethods]
impl PySolveResult {
    fn __repr__(&self) -> String {
        format!(
            "SolveResult({}, nodes={}, cuts={}, {:.3}s)",
            self.outcome, self.nodes_explored, self.cuts_added, self.wall_time
        )
    }
}

#[pyfunction]
#[allow(clippy::too_many_arguments)]
#[pyo3(signature = (
    puzzle,
    weak_connectivity = true,
    node_limit = None,
    time_limit = None,
    all_but_largest = false,
    slack_first = false,
    probing = true,
))]
fn solve(
    py: Python<'_>,
    puzzle: &PyPuzzle,
    weak_connectivity: bool,
    node_limit: Option<u64>,
    time_limit: Option<f64>,
    all_but_largest: bool,
    slack_first: bool,
    probing: bool,
) -> PyResult<PySolveResult> {
    let time_limit = time_limit
        .map(|s| Duration::try_from_secs_f64(s).map_err(value_error))
        .transpose()?;
    let opts = SolveOptions {
        use_weak_connectivity: weak_connectivity,
        node_limit,
        time_limit,
        cut_emission: if all_but_largest {
            CutEmission::AllButLargest
        } else {
            CutEmission::AllComponents
        },
        branching: if slack_first {
            Branching::SlackFirst
        } else {
            Branching::ConflictWeighted
        },
        probing,
    };
    let p = puzzle.inner.clone();
    let (out, stats) = py.detach(move || hashi::solve(&p, &opts));
    Ok(PySolveResult {
        outcome: out.label(),
        assignment: match out {
            Outcome::Feasible(a) => Some(a.mult),
            _ => None,
        },
        nodes_explored: stats.nodes_explored,
        cuts_added: stats.cuts_added,
        backjumps: stats.backjumps,
        restarts: stats.restarts,
        wall_time: stats.wall_time.as_secs_f64(),
    })
}

/// Generates a puzzle with a hidden solution. Returns
/// `(puzzle, witness, achieved_cycles)`.
#[pyfunction]
#[pyo3(signature = (n, rows, cols, alpha = 0.0, beta = 0.5, seed = 2019))]
fn generate(
    n: usize,
    rows: usize,
    cols: usize,
    alpha: f64,
    beta: f64,
    seed: u64,
) -> PyResult<(PyPuzzle, Vec<u8>, usize)> {
    let g = hashi::generate(&hashi::GenConfig::new(n, rows, cols, alpha, beta, seed))
        .map_err(value_error)?;
    Ok((
        PyPuzzle { inner: g.puzzle },
        g.witness.mult,
        g.achieved_cycles,
    ))
}

/// Counts every solution by brute force. Returns `(count, witnesses)`.
#[pyfunction]
#[pyo3(signature = (puzzle, edge_limit = DEFAULT_EDGE_LIMIT, witnesses = 1))]
fn enumerate(
    puzzle: &PyPuzzle,
    edge_limit: usize,
    witnesses: usize,
) -> PyResult<(u64, Vec<Vec<u8>>)> {
    let r = enumerate_with(&puzzle.inner, edge_limit, witnesses).map_err(value_error)?;
    Ok((
        r.feasible_count,
        r.witnesses.into_iter().map(|a| a.mult).collect(),
    ))
}

#[pymodule]
fn pyhashi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyPuzzle>()?;
    m.add_class::<PySolveResult>()?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(generate, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate, m)?)?;
    Ok(())
}
