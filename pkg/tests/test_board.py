import pytest

from tripeg.board import (Hole, board_from_shorthand, board_from_text,
                          hole_name, make_hexagon, make_parallelogram,
                          make_polygon, make_rhombus, make_star,
                          make_trapezoid, make_triangle, parse_hole)


def test_hole_names_match_figure_labels():
    assert hole_name(Hole(1, 1)) == "a1"
    assert hole_name(Hole(3, 3)) == "c3"
    assert hole_name(Hole(6, 6)) == "f6"
    assert parse_hole("f6") == Hole(6, 6)
    assert parse_hole("aa12") == Hole(27, 12)
    assert hole_name(Hole(204, 1)) == "gv1"


def test_hole_name_round_trip():
    for col in (1, 2, 25, 26, 27, 52, 53, 204, 703):
        for row in (1, 7, 204):
            h = Hole(col, row)
            assert parse_hole(hole_name(h)) == h


def test_rhombus_hole_counts():
    for n in range(1, 51):
        assert make_rhombus(n).size == n * n


def test_triangle_hole_counts():
    for n in range(1, 51):
        assert make_triangle(n).size == n * (n + 1) // 2


def test_rhombus6_has_36_holes():
    assert make_rhombus(6).size == 36


def test_triangle8_and_rhombus6_both_36():
    assert make_triangle(8).size == make_rhombus(6).size == 36


def test_rejects_nonpositive_sides():
    with pytest.raises(ValueError):
        make_rhombus(0)
    with pytest.raises(ValueError):
        make_triangle(0)


def test_single_hole_board():
    b = make_rhombus(1)
    assert b.size == 1
    assert not b.jumps
    assert all(not nbrs for nbrs in b.neighbors.values())


def test_adjacency_is_symmetric():
    for board in (make_rhombus(5), make_triangle(6), make_hexagon(2)):
        for h, nbrs in board.neighbors.items():
            for q in nbrs.values():
                assert h in board.neighbors[q].values()


def test_adjacency_is_unit_steps():
    board = make_rhombus(4)
    steps = {(1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)}
    for h, nbrs in board.neighbors.items():
        for d, q in nbrs.items():
            assert d in steps
            assert (q.col - h.col, q.row - h.row) == d


def test_rhombus_corners():
    for n in (3, 5, 6, 9):
        corners = make_rhombus(n).corners()
        angles = sorted(c.interior_angle for c in corners)
        assert angles == [60, 60, 120, 120]
        # the 120-degree corners sit on the a1 diagonal
        for c in corners:
            if c.interior_angle == 120:
                assert c.hole in (Hole(1, 1), Hole(n, n))


def test_triangle_corners_all_60():
    assert [c.interior_angle for c in make_triangle(5).corners()] == [60] * 3


def test_hexagon_corners_all_120():
    assert [c.interior_angle for c in make_hexagon(2).corners()] == [120] * 6


def test_convex_corner_holes_cannot_be_jumped_over():
    # At a 60 or 120 degree corner no opposite direction pair stays on the
    # board, so the hole is never a jump midpoint.  Reflex (240/300) corners
    # of non-convex boards can be jumped over.
    for board in (make_rhombus(6), make_triangle(5), make_trapezoid(5, 1),
                  make_hexagon(2), make_star(2)):
        corner_holes = {c.hole for c in board.corners()
                        if c.interior_angle in (60, 120)}
        jumped_over = {o for _, o, _ in board.jumps}
        assert not corner_holes & jumped_over


def test_polygon_matches_rhombus():
    poly = make_polygon([("E", 5), ("N", 5), ("W", 5), ("S", 5)])
    assert poly.holes == make_rhombus(6).holes


def test_polygon_clockwise_input_normalized():
    poly = make_polygon([("N", 5), ("E", 5), ("S", 5), ("W", 5)])
    assert poly.holes == make_rhombus(6).holes


def test_hexagon_side2_has_19_holes():
    # Independent count: brute-force lattice points inside the hexagon.
    def inside(c, r, k=2):
        return (abs(c) <= k and abs(r) <= k and abs(c - r) <= k)

    brute = sum(1 for c in range(-3, 4) for r in range(-3, 4) if inside(c, r))
    assert make_hexagon(2).size == brute == 19


def test_trapezoid_is_cut_triangle():
    # Triangle(5) with one corner cut off: 15 - 1 = 14 holes.
    assert make_trapezoid(5, 1).size == 14
    assert make_trapezoid(7, 2).size == make_triangle(7).size - 3


def test_polygon_rejects_bad_boundaries():
    with pytest.raises(ValueError):
        make_polygon([("E", 3), ("N", 3)])  # does not close
    with pytest.raises(ValueError):
        make_polygon([("E", 3), ("W", 3)])  # 180-degree spike
    with pytest.raises(ValueError):  # figure-eight self-intersection
        make_polygon([("E", 4), ("N", 2), ("SW", 4),
                      ("E", 4), ("N", 2), ("SW", 4)])


def test_symmetry_group_orders():
    assert len(make_rhombus(6).symmetries()) == 4
    assert len(make_triangle(5).symmetries()) == 6
    assert len(make_hexagon(2).symmetries()) == 12
    assert len(make_rhombus(1).symmetries()) == 12
    assert len(make_parallelogram(3, 5).symmetries()) == 2


def test_symmetries_form_a_group():
    board = make_rhombus(6)
    syms = board.symmetries()
    perms = {s.perm for s in syms}
    for a in syms:
        for b in syms:
            assert a.compose(b).perm in perms
    # each symmetry maps legal jumps to legal jumps
    jump_set = {(f, o, t) for f, o, t in board.jumps}
    for s in syms:
        for f, o, t in board.jumps:
            assert (s(f), s(o), s(t)) in jump_set


def test_symmetry_maps_board_onto_itself():
    for board in (make_rhombus(5), make_triangle(6), make_star(2)):
        for s in board.symmetries():
            assert {s(h) for h in board.holes} == board.holes


def test_is_convex():
    assert make_rhombus(6).is_convex()
    assert make_triangle(7).is_convex()
    assert make_hexagon(3).is_convex()
    assert not make_star(2).is_convex()
    # 8-sided board with re-entrant corners (an L of two rhombi)
    ell = make_polygon([("E", 6), ("N", 2), ("W", 3), ("N", 2), ("W", 3),
                        ("S", 4)])
    assert not ell.is_convex()
    assert any(c.interior_angle in (240, 300) for c in ell.corners())


def test_board_text_round_trip():
    for board in (make_rhombus(6), make_triangle(8), make_hexagon(2),
                  make_trapezoid(5, 1),
                  make_polygon([("E", 5), ("N", 5), ("W", 5), ("S", 5)])):
        again = board_from_text(board.to_text())
        assert again.holes == board.holes


def test_shorthand():
    assert board_from_shorthand("rhombus6").size == 36
    assert board_from_shorthand("triangle8").size == 36
    assert board_from_shorthand("hexagon:3").size == 19  # 3 holes per edge
    assert board_from_shorthand("parallelogram:3x5").size == 15
    assert board_from_shorthand("trapezoid:5-1").size == 14
    assert board_from_shorthand("polygon:E5,N5,W5,S5").size == 36
    with pytest.raises(ValueError):
        board_from_shorthand("dodecagon9")


def test_bit_order_row_major():
    board = make_rhombus(3)
    assert board.order[0] == Hole(1, 1)
    assert board.order[1] == Hole(2, 1)
    assert board.order[3] == Hole(1, 2)
