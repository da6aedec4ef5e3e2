import pytest

from tripeg.board import Hole
from tripeg.construct import (build_clearing_solution,
                              build_sweep_finish_solution, clearing_moves,
                              corner_sweep_pattern, phase_a_paths,
                              phase_b_paths, phase_boundary_positions,
                              phase_c_paths, rhombus_board,
                              sweep_complement_pattern, upper_right_corner)
from tripeg.engine import verify_solution
from tripeg.sweeps import max_sweep_length, theorem_sweep_length


def test_sweep_complement_pattern_counts():
    # peg count 9i^2 + 12i - 2: complement of sweep length (9i-1)(3i-1)
    # plus the mover on a 36i^2 board
    for i in (1, 2, 3):
        pos = sweep_complement_pattern(i)
        assert pos.peg_count() == 9 * i * i + 12 * i - 2
    assert sweep_complement_pattern(2).peg_count() == 58


def test_sweep_complement_is_complement_of_pattern():
    for i in (1, 2, 3):
        pattern = corner_sweep_pattern(i)
        assert sweep_complement_pattern(i).pegs == \
            pattern.position().complement().pegs


def test_sweep_complement_diagonal_symmetry():
    for i in (1, 2, 4):
        board = rhombus_board(i)
        pos = sweep_complement_pattern(i, board)
        diag = next(s for s in board.symmetries()
                    if s(Hole(2, 1)) == Hole(1, 2))
        assert diag.apply_bits(pos.pegs) == pos.pegs


def test_corner_sweep_is_maximal_at_small_i():
    # cross-check the chosen sweep's maximality against the trail search
    for i in (1, 2):
        board = rhombus_board(i)
        length, _ = max_sweep_length(board)
        assert corner_sweep_pattern(i, board).length == length


def test_phase_move_counts():
    for i in (2, 3, 5):
        assert len(phase_a_paths(i)) == 8
        assert len(phase_c_paths(i)) == 9
    assert len(phase_b_paths(3, 1)) == 9
    assert len(phase_b_paths(5, 3)) == 9
    with pytest.raises(ValueError):
        phase_b_paths(2, 1)  # i=2 has no B applications


def test_clearing_solutions_verify():
    for i in (1, 2, 3, 4, 5):
        sol = build_clearing_solution(i)
        assert len(sol.moves) == 9 * i - 1
        report = verify_solution(sol, goal=upper_right_corner(i))
        assert report.ok


def test_clearing_region_contracts():
    # after phase A: leftmost 6 columns and top 4 rows empty except col N;
    # after the j-th B: 6j+6 columns and 6j+4 rows
    i = 4
    n = 6 * i
    positions = phase_boundary_positions(i)
    # positions: [start, after A, after B1, after B2, after C]
    assert len(positions) == i + 1
    for stage, pos in enumerate(positions[1:-1], start=1):
        cols, rows = 6 * stage, 6 * stage - 2
        for h in pos.board.order:
            if h.col == n:
                continue
            if h.col <= cols or h.row <= rows:
                assert not pos.has_peg(h), (stage, h)


def test_trail_survives_on_column_n():
    # the even rows of column N keep their pegs until the final move
    i = 3
    n = 6 * i
    positions = phase_boundary_positions(i)
    before_c = positions[-2]
    for r in range(2, n - 7, 2):
        assert before_c.has_peg(Hole(n, r))


def test_sweep_finish_solutions():
    for i in (1, 2, 3, 4):
        sol = build_sweep_finish_solution(i)
        n = 6 * i
        # starts from a vacancy at the upper-right corner
        assert sol.start.pegs == \
            sol.start.board.full_mask ^ sol.start.board.bit(Hole(n, 1))
        assert sol.moves[-1].sweep_length == theorem_sweep_length(i)
        report = verify_solution(sol, goal=Hole(n - 1, n - 1))
        assert report.ok


def test_final_sweep_lengths_sequence():
    assert [theorem_sweep_length(i) for i in (1, 2, 3, 4)] == \
        [16, 85, 208, 385]


def test_reversed_solution_has_many_more_moves():
    # reversed long sweeps fall apart into individual jumps
    sol = build_sweep_finish_solution(2)
    assert len(sol.moves) > 9 * 2 - 1


@pytest.mark.slow
def test_rhombus_204_construction():
    sol = build_clearing_solution(34)
    assert len(sol.moves) == 9 * 34 - 1 == 305
    finish = build_sweep_finish_solution(34)
    assert finish.moves[-1].sweep_length == 30_805
    assert verify_solution(finish, goal=Hole(203, 203)).ok
