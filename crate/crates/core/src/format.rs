//! Text formats for instances and solutions.
//!
//! An instance is a header line `<rows> <cols>` followed by exactly `rows`
//! lines of `cols` characters from `.` and `1`..`8`, each line ending in a
//! newline. A solution uses the same grid and additionally draws bridge
//! cells: `-` single horizontal, `=` double horizontal, `|` single vertical
//! and `"` double vertical.

use crate::error::{ParseError, ParseErrorKind, SolutionError};
use crate::puzzle::{Assignment, EdgeSet, Island, Orientation, Puzzle};
use crate::solver::{domain, solve_restricted, Outcome, SolveOptions};
use crate::verify::Violation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cell {
    Empty,
    Island(u8),
    Bridge { orientation: Orientation, mult: u8 },
}

impl Cell {
    fn from_char(ch: char, allow_bridges: bool) -> Result<Self, ParseErrorKind> {
        let cell = match ch {
            '.' => Cell::Empty,
            '1'..='8' => Cell::Island(ch as u8 - b'0'),
            '0' | '9' => return Err(ParseErrorKind::BadDegree(ch)),
            '-' | '=' | '|' | '"' if allow_bridges => Cell::Bridge {
                orientation: if matches!(ch, '-' | '=') {
                    Orientation::Horizontal
                } else {
                    Orientation::Vertical
                },
                mult: if matches!(ch, '-' | '|') { 1 } else { 2 },
            },
            _ => return Err(ParseErrorKind::BadChar(ch)),
        };
        Ok(cell)
    }

    pub fn to_char(self) -> char {
        match self {
            Cell::Empty => '.',
            Cell::Island(d) => (b'0' + d) as char,
            Cell::Bridge {
                orientation: Orientation::Horizontal,
                mult: 1,
            } => '-',
            Cell::Bridge {
                orientation: Orientation::Horizontal,
                ..
            } => '=',
            Cell::Bridge {
                orientation: Orientation::Vertical,
                mult: 1,
            } => '|',
            Cell::Bridge {
                orientation: Orientation::Vertical,
                ..
            } => '"',
        }
    }
}

/// A parsed grid of cells, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Drawing {
    pub rows: usize,
    pub cols: usize,
    pub cells: Vec<Cell>,
}

impl Drawing {
    pub fn get(&self, row: usize, col: usize) -> Cell {
        self.cells[row * self.cols + col]
    }

    fn to_puzzle(&self) -> Result<Puzzle, ParseError> {
        let islands = self
            .cells
            .iter()
            .enumerate()
            .filter_map(|(idx, c)| match c {
                Cell::Island(d) => Some(Island {
                    row: idx / self.cols,
                    col: idx % self.cols,
                    degree: *d,
                }),
                _ => None,
            })
            .collect();
        Puzzle::new(self.rows, self.cols, islands)
            .map_err(|e| ParseError::new(1, 1, ParseErrorKind::Puzzle(e)))
    }

    fn render(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for row in self.cells.chunks(self.cols) {
            out.extend(row.iter().map(|c| c.to_char()));
            out.push('\n');
        }
        out
    }
}

fn parse_grid(text: &str, allow_bridges: bool) -> Result<Drawing, ParseError> {
    let mut lines: Vec<&str> = text.split('\n').collect();
    // `split` leaves an empty final piece exactly when the text ends in '\n'.
    match lines.pop() {
        Some("") => {}
        Some(last) => {
            return Err(ParseError::new(
                lines.len() + 1,
                last.chars().count() + 1,
                ParseErrorKind::MissingNewline,
            ))
        }
        None => unreachable!("split yields at least one piece"),
    }
    let header = lines
        .first()
        .ok_or_else(|| ParseError::new(1, 1, ParseErrorKind::BadHeader))?;
    let dims: Vec<&str> = header.split(' ').collect();
    let parse_dim = |s: &str| -> Option<usize> {
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        s.parse().ok().filter(|&v: &usize| v > 0)
    };
    let (rows, cols) = match dims.as_slice() {
        [r, c] => match (parse_dim(r), parse_dim(c)) {
            (Some(r), Some(c)) => (r, c),
            _ => return Err(ParseError::new(1, 1, ParseErrorKind::BadHeader)),
        },
        _ => return Err(ParseError::new(1, 1, ParseErrorKind::BadHeader)),
    };
    let body = &lines[1..];
    if body.len() != rows {
        let line = if body.len() < rows {
            body.len() + 2
        } else {
            rows + 2
        };
        return Err(ParseError::new(
            line,
            1,
            ParseErrorKind::RowCount {
                expected: rows,
                found: body.len(),
            },
        ));
    }
    let mut cells = Vec::with_capacity(rows * cols);
    for (r, line) in body.iter().enumerate() {
        let mut count = 0;
        for (c, ch) in line.chars().enumerate() {
            if c >= cols {
                count = line.chars().count();
                break;
            }
            let cell =
                Cell::from_char(ch, allow_bridges).map_err(|k| ParseError::new(r + 2, c + 1, k))?;
            cells.push(cell);
            count += 1;
        }
        if count != cols {
            return Err(ParseError::new(
                r + 2,
                count.min(cols) + 1,
                ParseErrorKind::RowLength {
                    expected: cols,
                    found: count,
                },
            ));
        }
    }
    Ok(Drawing { rows, cols, cells })
}

pub fn read_instance(text: &str) -> Result<Puzzle, ParseError> {
    parse_grid(text, false)?.to_puzzle()
}

pub fn write_instance(puzzle: &Puzzle) -> String {
    let mut cells = vec![Cell::Empty; puzzle.rows() * puzzle.cols()];
    for isl in puzzle.islands() {
        cells[isl.row * puzzle.cols() + isl.col] = Cell::Island(isl.degree);
    }
    Drawing {
        rows: puzzle.rows(),
        cols: puzzle.cols(),
        cells,
    }
    .render()
}

/// A parsed solution file: the puzzle read from its digits, plus the drawing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolutionFile {
    pub puzzle: Puzzle,
    pub drawing: Drawing,
}

pub fn read_solution(text: &str) -> Result<SolutionFile, ParseError> {
    let drawing = parse_grid(text, true)?;
    let puzzle = drawing.to_puzzle()?;
    Ok(SolutionFile { puzzle, drawing })
}

impl SolutionFile {
    /// Recovers the bridge multiplicities drawn over `edges` (which must be
    /// built from `self.puzzle`), along with structural violations: bridge
    /// cells that do not belong to a complete island-to-island run.
    ///
    /// A cell where two bridges cross shows only one of them; the hidden
    /// bridge is still read as present when the rest of its run is drawn.
    ///
    /// Bridges between orthogonally adjacent islands have no cells to draw.
    /// Their multiplicities are taken from the first valid solution that
    /// agrees with the drawn bridges. When there is none, each one takes as
    /// many bridges as both its islands still lack, in edge order.
    pub fn decode(&self, edges: &EdgeSet) -> (Assignment, Vec<Violation>) {
        let d = &self.drawing;
        let mut a = Assignment::zeros(edges.len());
        let mut explained = vec![false; d.cells.len()];
        let mut violations = Vec::new();

        for (e, edge) in edges.edges().iter().enumerate() {
            let mut own = None;
            let mut complete = true;
            let mut mixed = Vec::new();
            for &(r, c) in &edge.cells {
                match d.get(r, c) {
                    Cell::Bridge { orientation, mult } if orientation == edge.orientation => {
                        match own {
                            None => own = Some(mult),
                            Some(m) if m != mult => mixed.push((r, c)),
                            Some(_) => {}
                        }
                    }
                    Cell::Bridge { .. } => {}
                    _ => complete = false,
                }
            }
            if let (Some(m), true) = (own, complete) {
                a.mult[e] = m;
                for &(r, c) in &edge.cells {
                    if matches!(d.get(r, c), Cell::Bridge { orientation, .. } if orientation == edge.orientation)
                        && !mixed.contains(&(r, c))
                    {
                        explained[r * d.cols + c] = true;
                    }
                }
            }
        }

        let mut on_h = vec![false; d.cells.len()];
        let mut on_v = vec![false; d.cells.len()];
        for edge in edges.edges() {
            let on = match edge.orientation {
                Orientation::Horizontal => &mut on_h,
                Orientation::Vertical => &mut on_v,
            };
            for &(r, c) in &edge.cells {
                on[r * d.cols + c] = true;
            }
        }
        for (idx, cell) in d.cells.iter().enumerate() {
            if let Cell::Bridge { orientation, .. } = cell {
                if explained[idx] {
                    continue;
                }
                let (same, other) = match orientation {
                    Orientation::Horizontal => (on_h[idx], on_v[idx]),
                    Orientation::Vertical => (on_v[idx], on_h[idx]),
                };
                let (row, col) = (idx / d.cols, idx % d.cols);
                violations.push(if !same && other {
                    Violation::NotAxisAligned { row, col }
                } else {
                    Violation::EndpointInvalid { row, col }
                });
            }
        }
        self.infer_adjacent(edges, &mut a);
        (a, violations)
    }

    fn infer_adjacent(&self, edges: &EdgeSet, a: &mut Assignment) {
        if edges.edges().iter().all(|e| !e.cells.is_empty()) {
            return;
        }
        let initial: Vec<_> = edges
            .edges()
            .iter()
            .zip(&a.mult)
            .map(|(e, &m)| {
                if e.cells.is_empty() {
                    domain::FULL
                } else {
                    domain::single(m)
                }
            })
            .collect();
        let opts = SolveOptions {
            probing: false,
            ..SolveOptions::default()
        };
        if let Outcome::Feasible(found) = solve_restricted(&self.puzzle, &initial, &opts).outcome {
            *a = found;
            return;
        }
        let mut lacking: Vec<i32> = self
            .puzzle
            .islands()
            .iter()
            .map(|i| i.degree as i32)
            .collect();
        for (edge, &m) in edges.edges().iter().zip(&a.mult) {
            lacking[edge.i] -= m as i32;
            lacking[edge.j] -= m as i32;
        }
        for (e, edge) in edges.edges().iter().enumerate() {
            if edge.cells.is_empty() {
                let m = lacking[edge.i].min(lacking[edge.j]).clamp(0, 2);
                a.mult[e] = m as u8;
                lacking[edge.i] -= m;
                lacking[edge.j] -= m;
            }
        }
    }
}

/// Draws an assignment. Edges are drawn in index order, so at a crossing the
/// later edge's glyph is shown. Bridges between adjacent islands leave no
/// mark.
pub fn write_solution(
    puzzle: &Puzzle,
    edges: &EdgeSet,
    a: &Assignment,
) -> Result<String, SolutionError> {
    if a.len() != edges.len() {
        return Err(SolutionError::LengthMismatch {
            expected: edges.len(),
            found: a.len(),
        });
    }
    let cols = puzzle.cols();
    let mut cells = vec![Cell::Empty; puzzle.rows() * cols];
    for isl in puzzle.islands() {
        cells[isl.row * cols + isl.col] = Cell::Island(isl.degree);
    }
    for (e, edge) in edges.edges().iter().enumerate() {
        let mult = a.mult[e];
        match mult {
            0 => continue,
            1 | 2 => {}
            _ => return Err(SolutionError::BadMultiplicity { edge: e, mult }),
        }
        for &(r, c) in &edge.cells {
            cells[r * cols + c] = Cell::Bridge {
                orientation: edge.orientation,
                mult,
            };
        }
    }
    Ok(Drawing {
        rows: puzzle.rows(),
        cols,
        cells,
    }
    .render())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::puzzle::build_edges;

    #[test]
    fn reads_minimal_instance() {
        let p = read_instance("1 3\n1.1\n").unwrap();
        assert_eq!((p.rows(), p.cols()), (1, 3));
        let got: Vec<_> = p
            .islands()
            .iter()
            .map(|i| (i.row, i.col, i.degree))
            .collect();
        assert_eq!(got, vec![(0, 0, 1), (0, 2, 1)]);
        assert_eq!(write_instance(&p), "1 3\n1.1\n");
    }

    #[test]
    fn degree_nine_is_rejected_at_its_cell() {
        let err = read_instance("2 3\n1..\n..9\n").unwrap_err();
        assert_eq!((err.line, err.col), (3, 3));
        assert_eq!(err.kind, ParseErrorKind::BadDegree('9'));
        let err = read_instance("1 3\n0.1\n").unwrap_err();
        assert_eq!((err.line, err.col), (2, 1));
    }

    #[test]
    fn malformed_inputs() {
        let kind = |t: &str| read_instance(t).unwrap_err().kind;
        assert_eq!(kind("1 3\n1.1"), ParseErrorKind::MissingNewline);
        assert_eq!(kind("1x3\n1.1\n"), ParseErrorKind::BadHeader);
        assert_eq!(kind("1  3\n1.1\n"), ParseErrorKind::BadHeader);
        assert_eq!(kind("0 3\n"), ParseErrorKind::BadHeader);
        assert_eq!(
            kind("2 3\n1.1\n"),
            ParseErrorKind::RowCount {
                expected: 2,
                found: 1
            }
        );
        assert_eq!(
            kind("1 3\n1.1.\n"),
            ParseErrorKind::RowLength {
                expected: 3,
                found: 4
            }
        );
        assert_eq!(
            kind("1 3\n1.\n"),
            ParseErrorKind::RowLength {
                expected: 3,
                found: 2
            }
        );
        assert_eq!(kind("1 3\n1-1\n"), ParseErrorKind::BadChar('-'));
        assert!(matches!(kind("1 3\n1..\n"), ParseErrorKind::Puzzle(_)));
        assert!(matches!(kind("1 3\n...\n"), ParseErrorKind::Puzzle(_)));
    }

    #[test]
    fn solution_round_trip() {
        let p = read_instance("3 5\n2...1\n.....\n3...2\n").unwrap();
        let es = build_edges(&p);
        // (0,1) top, (0,2) left, (1,3) right, (2,3) bottom
        let a = Assignment::new(vec![1, 1, 0, 2]);
        let text = write_solution(&p, &es, &a).unwrap();
        assert_eq!(text, "3 5\n2---1\n|....\n3===2\n");
        let sol = read_solution(&text).unwrap();
        assert_eq!(sol.puzzle, p);
        let (got, structural) = sol.decode(&es);
        assert_eq!(got, a);
        assert!(structural.is_empty());
    }

    #[test]
    fn crossing_bridges_are_recovered() {
        // vertical 0-3 and horizontal 1-2 cross at (2,2)
        let text = "5 5\n..1..\n..|..\n1---1\n..|..\n..1..\n";
        let sol = read_solution(text).unwrap();
        let es = build_edges(&sol.puzzle);
        let (a, structural) = sol.decode(&es);
        assert!(structural.is_empty());
        assert_eq!(a.mult, vec![1, 1]);
    }

    #[test]
    fn dangling_and_misoriented_glyphs() {
        let text = "3 5\n1-..1\n.....\n..|..\n";
        let sol = read_solution(text).unwrap();
        let es = build_edges(&sol.puzzle);
        let (a, structural) = sol.decode(&es);
        assert_eq!(a.mult, vec![0]);
        assert_eq!(
            structural,
            vec![
                Violation::EndpointInvalid { row: 0, col: 1 },
                Violation::EndpointInvalid { row: 2, col: 2 },
            ]
        );
        let text = "1 4\n1||1\n";
        let sol = read_solution(text).unwrap();
        let es = build_edges(&sol.puzzle);
        let (_, structural) = sol.decode(&es);
        assert_eq!(
            structural,
            vec![
                Violation::NotAxisAligned { row: 0, col: 1 },
                Violation::NotAxisAligned { row: 0, col: 2 },
            ]
        );
    }

    #[test]
    fn adjacent_bridges_are_implicit() {
        let p = read_instance("1 4\n12.1\n").unwrap();
        let es = build_edges(&p);
        assert!(es.edge(0).cells.is_empty());
        let a = Assignment::new(vec![1, 1]);
        let text = write_solution(&p, &es, &a).unwrap();
        assert_eq!(text, "1 4\n12-1\n");
        let (back, structural) = read_solution(&text).unwrap().decode(&es);
        assert!(structural.is_empty());
        assert_eq!(back, a);
    }
}
