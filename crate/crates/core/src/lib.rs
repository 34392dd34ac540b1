//! Exact solving, generation and benchmarking of Hashiwokakero puzzles.
//!
//! A puzzle is a grid of islands, each asking for a number of bridges. The
//! solver works on the graph of candidate edges between mutually visible
//! islands and treats connectivity lazily: it searches over bridge
//! multiplicities under the degree and crossing constraints, and adds a
//! connectivity cut whenever a complete candidate falls apart.
//!
//! ```
//! use hashi::{read_instance, solve, Outcome, SolveOptions};
//!
//! let puzzle = read_instance("3 3\n2.2\n...\n2.2\n").unwrap();
//! let (outcome, stats) = solve(&puzzle, &SolveOptions::default());
//! assert!(matches!(outcome, Outcome::Feasible(_)));
//! assert_eq!(stats.cuts_added, 0);
//! ```

pub mod bench;
pub mod error;
pub mod format;
pub mod generator;
pub mod oracle;
pub mod puzzle;
pub mod solver;
pub mod verify;

pub use error::{GenerateError, OracleError, ParseError, PuzzleError, SolutionError};
pub use format::{read_instance, read_solution, write_instance, write_solution, SolutionFile};
pub use generator::{generate, GenConfig, GenOutcome};
pub use oracle::{enumerate, OracleResult};
pub use puzzle::{build_edges, Assignment, Edge, EdgeSet, Island, Orientation, Puzzle};
pub use solver::{solve, solve_detailed, CutEmission, Outcome, SolveOptions, SolveStats};
pub use verify::{verify, Rule, Violation};
