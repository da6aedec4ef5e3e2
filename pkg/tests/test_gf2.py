import random

from tripeg.board import make_parallelogram, make_rhombus, make_triangle
from tripeg.engine import Position, apply_move, legal_moves
from tripeg.gf2 import (class_basis, feasible_single_finishes, is_null_class,
                        same_class)


def test_rhombus6_is_null_class():
    assert is_null_class(make_rhombus(6))


def test_every_jump_triple_in_basis():
    for board in (make_rhombus(6), make_triangle(5)):
        basis = class_basis(board)
        for f, o, t in board.jumps:
            vec = board.bit(f) | board.bit(o) | board.bit(t)
            assert basis.contains(vec)


def test_same_class_reflexive():
    board = make_rhombus(6)
    rng = random.Random(1)
    for _ in range(20):
        p = Position(board, rng.getrandbits(36))
        assert same_class(p, p)


def test_class_invariant_under_moves():
    board = make_rhombus(6)
    rng = random.Random(2)
    checked = 0
    while checked < 100:
        p = Position(board, rng.getrandbits(36))
        moves = legal_moves(p, max_len=3)
        if not moves:
            continue
        q = apply_move(p, rng.choice(moves))
        assert same_class(p, q)
        checked += 1


def test_null_class_complement_property():
    # On a null-class board every position shares a class with its
    # complement; 1000 random positions.
    board = make_rhombus(6)
    rng = random.Random(3)
    for _ in range(1000):
        p = Position(board, rng.getrandbits(36))
        assert same_class(p, p.complement())


def test_null_class_survey():
    # Null-class is necessary, not sufficient, for complement solvability:
    # Rhombus(3) is null-class yet too small to solve.  Even-side rhombi
    # below 6 are not null-class.
    assert is_null_class(make_rhombus(3))
    assert not is_null_class(make_rhombus(2))
    assert not is_null_class(make_rhombus(4))
    assert not is_null_class(make_rhombus(5))
    assert is_null_class(make_triangle(5))
    assert not is_null_class(make_triangle(4))


def test_feasible_finishes_count_uniform():
    board = make_rhombus(6)
    counts = {len(feasible_single_finishes(
        Position.full_minus(board, v))) for v in board.order}
    # every vacancy admits the same number of class-feasible finishes
    assert len(counts) == 1


def test_rank_matches_quotient():
    board = make_rhombus(6)
    basis = class_basis(board)
    # 36 holes, 4 position classes => rank 34
    assert basis.rank == 34
