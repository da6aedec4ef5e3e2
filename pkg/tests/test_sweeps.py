import itertools

import pytest

from tripeg.board import (Hole, make_hexagon, make_parallelogram,
                          make_polygon, make_rhombus, make_star,
                          make_trapezoid, make_triangle, parse_hole)
from tripeg.engine import Position, apply_move, legal_jumps
from tripeg.sweeps import (SweepGraphError, build_sweep_graph,
                           class_sweep_graph, classify_convex,
                           construct_super_sweep,
                           enumerate_max_sweep_endpoints, euler_verdict,
                           max_sweep_length, parity_class,
                           rhombic_matchstick_length, super_sweep_unreachable,
                           super_sweep_verdict, theorem_sweep_length)


def brute_force_max_sweep(board):
    """Independent oracle: DFS over raw jump chains, choosing the swept pegs
    on the fly.  S = captured holes (now empty), V = holes the mover has
    occupied (now empty); a new midpoint must be outside both."""
    best = 0

    def extend(at, S, V):
        nonlocal best
        best = max(best, len(S))
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)):
            over = Hole(at.col + d[0], at.row + d[1])
            dst = Hole(at.col + 2 * d[0], at.row + 2 * d[1])
            if over not in board.holes or dst not in board.holes:
                continue
            if over in S or over in V:
                continue
            if dst in {over}:
                continue
            extend(dst, S | {over}, V | {at, dst})

    for start in board.order:
        extend(start, frozenset(), frozenset({start}))
    return best


def test_super_sweep_lengths_match_figure():
    for n, want in ((3, 5), (5, 16), (7, 33), (9, 56)):
        pattern = construct_super_sweep(make_rhombus(n))
        assert pattern.length == want
        assert pattern.validate()
        assert pattern.is_super()


def test_matchstick_formula():
    for n in (3, 5, 7, 9, 11, 13):
        pattern = construct_super_sweep(make_rhombus(n))
        assert pattern.length == rhombic_matchstick_length(n) \
            == (3 * n + 1) * (n - 1) // 4
    assert [rhombic_matchstick_length(n) for n in (3, 5, 7, 9, 11, 13)] == \
        [5, 16, 33, 56, 85, 120]
    with pytest.raises(ValueError):
        rhombic_matchstick_length(6)


def test_theorem_sweep_lengths():
    assert theorem_sweep_length(1) == 16
    assert theorem_sweep_length(2) == 85
    assert theorem_sweep_length(34) == 30_805


def test_triangle5_super_sweep_is_9():
    t5 = make_triangle(5)
    verdict = super_sweep_verdict(t5)
    assert verdict.feasible and verdict.closed and not verdict.odd_vertices
    pattern = construct_super_sweep(t5)
    assert pattern.length == 9
    assert pattern.start == pattern.end


def test_rhombus_even_sides_parity_mismatch():
    with pytest.raises(SweepGraphError):
        build_sweep_graph(make_rhombus(6))
    v = super_sweep_verdict(make_rhombus(6))
    assert not v.feasible and v.reason == "corner-parity-mismatch"


def test_rhombus_odd_endpoints_are_120_corners():
    for n in (5, 7):
        v = super_sweep_verdict(make_rhombus(n))
        assert v.feasible
        assert set(v.endpoints) == {Hole(1, 1), Hole(n, n)}


def test_hexagon_and_star_six_odd_degree():
    for board in (make_hexagon(2), make_star(3)):
        v = super_sweep_verdict(board)
        if v.reason == "corner-parity-mismatch":
            continue  # star(3) has even-hole edges; skip
        assert not v.feasible
        assert len(v.odd_vertices) == 6


def test_star2_six_odd_degree():
    v = super_sweep_verdict(make_star(2))
    assert not v.feasible and len(v.odd_vertices) == 6


def test_super_sweep_position_is_unreachable():
    for board in (make_triangle(5), make_rhombus(5), make_rhombus(7),
                  make_trapezoid(5, 2)):
        verdict = super_sweep_verdict(board)
        if not verdict.feasible:
            continue
        pattern = construct_super_sweep(board)
        assert super_sweep_unreachable(pattern)
        assert legal_jumps(pattern.position().complement()) == []


def test_unreachable_rejects_non_super_sweeps():
    length, pattern = max_sweep_length(make_rhombus(6))
    assert length == 16 and not pattern.is_super()
    with pytest.raises(ValueError):
        super_sweep_unreachable(pattern)


def test_max_sweep_rhombus6_is_16():
    length, pattern = max_sweep_length(make_rhombus(6))
    assert length == 16
    assert pattern.validate()


def test_max_sweep_endpoints_rhombus6():
    res = enumerate_max_sweep_endpoints(make_rhombus(6))
    assert res.length == 16
    named = {tuple(sorted((a, b))) for a, b in (
        (parse_hole("a1"), parse_hole("e5")),
        (parse_hole("b2"), parse_hole("f6")),
        (parse_hole("b1"), parse_hole("f5")),
        (parse_hole("a2"), parse_hole("e6")),  # mirror image of b1-f5
    )}
    assert set(res.all_pairs) == named
    # reduced by the full symmetry group: a1-e5 and b2-f6 fall together
    # (they are 180-degree rotations of each other)
    assert len(res.representatives) == 2


def test_max_sweep_small_boards_against_oracle():
    boards = [make_rhombus(2), make_rhombus(3), make_rhombus(4),
              make_triangle(4), make_triangle(5), make_parallelogram(3, 5),
              make_trapezoid(5, 1), make_hexagon(1)]
    for board in boards:
        assert board.size <= 20
        length, pattern = max_sweep_length(board)
        assert length == brute_force_max_sweep(board)
        if length:
            assert pattern.validate()
            # the witness replays legally and removes `length` pegs
            pos = pattern.position()
            final = apply_move(pos, pattern.as_move())
            assert final.peg_count() == 1


def test_max_sweep_rhombus2_no_sweep():
    assert max_sweep_length(make_rhombus(2)) == (0, None)


def test_rhombus3_endpoints_at_120_corners():
    res = enumerate_max_sweep_endpoints(make_rhombus(3))
    assert res.length == 5
    assert res.representatives == ((Hole(1, 1), Hole(3, 3)),)


def test_triangle5_circuit_endpoints():
    res = enumerate_max_sweep_endpoints(make_triangle(5))
    assert res.length == 9
    assert all(a == b for a, b in res.all_pairs)


def test_classify_convex_matches_euler_verdict():
    # Exhaustive over convex boards with every edge at most 7 holes:
    # triangles, parallelograms, trapezoids, pentagons and hexagons built
    # as truncated triangles.
    import tripeg.board as bd

    checked = 0
    for n in range(3, 14):
        for c1 in range(0, n - 1):
            for c2 in range(0, n - 1):
                for c3 in range(0, n - 1):
                    if c1 + c2 >= n - 1 or c2 + c3 >= n - 1 \
                            or c1 + c3 >= n - 1:
                        continue
                    edges = []
                    # walk: NE edge (cut c1 at the far corner), etc.
                    seq = [("NE", n - 1 - c1 - c3), ("N", c1),
                           ("W", n - 1 - c1 - c2), ("SW", c2),
                           ("S", n - 1 - c2 - c3), ("E", c3)]
                    edges = [(d, L) for d, L in seq if L > 0]
                    if len(edges) < 3:
                        continue
                    board = bd.make_polygon(edges)
                    _, walk = board.boundary
                    if max(L + 1 for _, L in walk) > 7:
                        continue
                    assert board.is_convex()
                    cls = classify_convex(board)
                    verdict = super_sweep_verdict(board)
                    assert (cls != "no-super-sweep") == verdict.feasible, \
                        (n, c1, c2, c3, cls, verdict)
                    checked += 1
                    if verdict.feasible and board.size <= 50:
                        pattern = construct_super_sweep(board)
                        assert pattern.is_super() and pattern.validate()
    assert checked > 100


def test_classification_examples():
    assert classify_convex(make_triangle(7)) == "triangle"
    assert classify_convex(make_parallelogram(3, 5)) == "parallelogram"
    assert classify_convex(make_trapezoid(7, 2)) == "trapezoid"
    assert classify_convex(make_hexagon(2)) == "no-super-sweep"
    assert classify_convex(make_rhombus(6)) == "no-super-sweep"
    with pytest.raises(ValueError):
        classify_convex(make_star(2))


def test_every_feasible_super_sweep_complement_dead_up_to_81_holes():
    # triangles, rhombi, parallelograms and trapezoids with odd edge holes
    boards = []
    for n in (3, 5, 7, 9, 11):
        if n * (n + 1) // 2 <= 81:
            boards.append(make_triangle(n))
    for n in (3, 5, 7, 9):
        boards.append(make_rhombus(n))
    for a in (3, 5, 7):
        for b in (3, 5, 7, 9):
            if a * b <= 81 and (a, b) != (b, a):
                boards.append(make_parallelogram(a, b))
    for n, cut in ((5, 2), (7, 2), (9, 4), (11, 4), (13, 6)):
        board = make_trapezoid(n, cut)
        if board.size <= 81:
            boards.append(board)
    feasible = 0
    for board in boards:
        verdict = super_sweep_verdict(board)
        if not verdict.feasible:
            continue
        feasible += 1
        pattern = construct_super_sweep(board)
        assert not legal_jumps(pattern.position().complement())
    assert feasible >= 10


def test_parity_class_structure():
    board = make_rhombus(6)
    # every jump joins endpoints of one class over a midpoint of another
    for f, o, t in board.jumps:
        assert parity_class(f) == parity_class(t) != parity_class(o)
    g = class_sweep_graph(board, (1, 1))
    # each non-vertex hole is the midpoint of at most one edge
    mids = [m for _, _, m in g.edges]
    assert len(mids) == len(set(mids))
