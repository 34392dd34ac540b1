"""Smoke test for the pyhashi extension module.

Build and install it first, e.g. `maturin develop -m crates/py/Cargo.toml`,
or put the compiled library on the path as `pyhashi.so`.
"""

import pyhashi


def main():
    p = pyhashi.Puzzle.parse("3 3\n2.2\n...\n2.2\n")
    assert (p.rows, p.cols, len(p)) == (3, 3, 4)
    assert p.to_text() == "3 3\n2.2\n...\n2.2\n"
    assert len(p.edges()) == 4 and p.crossings() == []

    res = pyhashi.solve(p)
    assert res.outcome == "feasible", res
    assert p.verify(res.assignment) == []
    drawing = p.draw(res.assignment)
    assert p.read_drawing(drawing) == res.assignment

    count, witnesses = pyhashi.enumerate(p, witnesses=5)
    assert count == 1 and witnesses == [res.assignment]

    odd = pyhashi.Puzzle(1, 3, [(0, 0, 1), (0, 2, 2)])
    assert pyhashi.solve(odd).outcome == "infeasible"
    assert odd.verify([1]) != []

    puzzle, witness, cycles = pyhashi.generate(60, 12, 12, alpha=0.1, beta=0.5, seed=7)
    assert len(puzzle) == 60 and cycles <= 6
    assert puzzle.verify(witness) == []
    res = pyhashi.solve(puzzle, weak_connectivity=False, time_limit=60.0)
    assert res.outcome == "feasible" and puzzle.verify(res.assignment) == []
    assert pyhashi.Puzzle.parse(puzzle.to_text()) == puzzle

    try:
        pyhashi.Puzzle.parse("2 2\n9.\n..\n")
    except ValueError:
        pass
    else:
        raise AssertionError("bad degree accepted")

    print("pyhashi smoke test passed:", res)


if __name__ == "__main__":
    main()
