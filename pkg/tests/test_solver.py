import random

import pytest

from tripeg.board import Hole, make_parallelogram, make_rhombus, make_triangle, parse_hole
from tripeg.engine import Position, apply_move, verify_solution
from tripeg.gf2 import feasible_single_finishes, same_class
from tripeg.solver import (GoalSpec, SearchConfig, SearchStats, hole_orbits,
                           min_moves, pair_orbits, problem_census,
                           reachable_finishes, solve, solve_sweep_finish)
from tripeg.sweeps import max_sweep_length

R6 = make_rhombus(6)
T5 = make_triangle(5)


def cfg(**kw):
    kw.setdefault("node_budget", 50_000_000)
    return SearchConfig(**kw)


def test_config_validates():
    with pytest.raises(ValueError):
        SearchConfig(node_budget=0)


def test_single_peg_already_at_goal():
    p = Position.single(R6, parse_hole("c3"))
    out = solve(R6, p, parse_hole("c3"), cfg())
    assert out.solved and len(out.solution.moves) == 0
    out2 = solve(R6, p, parse_hole("d4"), cfg())
    assert out2.status == "unsolvable"


def test_class_pruning_rejects_infeasible_goal():
    start = Position.full_minus(R6, parse_hole("e5"))
    feasible = set(feasible_single_finishes(start))
    bad = next(h for h in R6.order if h not in feasible)
    out = solve(R6, start, bad, cfg())
    assert out.status == "unsolvable"
    assert out.stats.nodes == 0  # pruned before search


def test_solve_triangle5_both_backends():
    start = Position.full_minus(T5, Hole(1, 1))
    py = solve(T5, start, "any", cfg(backend="python"))
    nat = solve(T5, start, "any", cfg(backend="native"))
    assert py.solved and nat.solved
    assert verify_solution(py.solution).ok
    assert verify_solution(nat.solution).ok
    assert py.stats.nodes == nat.stats.nodes


def test_symmetry_reduction_preserves_status():
    rng = random.Random(42)
    boards = [make_rhombus(5), R6]
    for trial in range(50):
        board = boards[trial % 2]
        pegs = 0
        for i in range(board.size):
            if rng.random() < 0.35:
                pegs |= 1 << i
        if not pegs:
            continue
        p = Position(board, pegs)
        a = solve(board, p, "any", cfg(use_symmetry=True))
        b = solve(board, p, "any", cfg(use_symmetry=False))
        assert a.status == b.status


def test_class_pruning_is_sound_on_small_boards():
    rng = random.Random(9)
    t4 = make_triangle(4)
    for _ in range(40):
        pegs = rng.getrandbits(t4.size)
        if not pegs:
            continue
        p = Position(t4, pegs)
        pruned = solve(t4, p, "any", cfg(use_class_pruning=True))
        full = solve(t4, p, "any", cfg(use_class_pruning=False))
        assert pruned.status == full.status


def test_reachable_finishes_single_peg():
    p = Position.single(R6, parse_hole("b2"))
    assert reachable_finishes(R6, p, cfg()) == {parse_hole("b2")}


def test_reachable_finishes_matches_bruteforce():
    rng = random.Random(4)
    t4 = make_triangle(4)
    from tripeg.engine import legal_jumps, apply_jump

    def brute(p):
        seen = set()
        out = set()

        def dfs(pos):
            if pos.pegs in seen:
                return
            seen.add(pos.pegs)
            if pos.peg_count() == 1:
                out.add(pos.holes_with_pegs()[0])
                return
            for j in legal_jumps(pos):
                dfs(apply_jump(pos, j))

        dfs(p)
        return out

    for _ in range(15):
        pegs = rng.getrandbits(t4.size)
        if not pegs:
            continue
        p = Position(t4, pegs)
        assert reachable_finishes(t4, p, cfg()) == brute(p)
        nat = reachable_finishes(t4, p, cfg(backend="native"))
        assert nat == brute(p)


def test_reachable_finishes_symmetry_invariance():
    # the finish set maps through any symmetry stabilizing the start
    start = Position.full_minus(T5, Hole(1, 1))
    # use a small derived position to keep runtime down
    p = Position.from_holes(T5, [Hole(1, 1), Hole(1, 2), Hole(2, 3),
                                 Hole(1, 4), Hole(3, 5)])
    finishes = reachable_finishes(T5, p, cfg())
    for sym in T5.symmetries():
        if sym.apply_bits(p.pegs) == p.pegs:
            assert {sym(h) for h in finishes} == finishes


def test_min_moves_one_jump_board():
    b31 = make_parallelogram(3, 1)
    out = min_moves(b31, Hole(3, 1), "any", cfg())
    assert out.solved and out.moves == 1


def test_min_moves_matches_bfs_oracle_triangle5():
    from tripeg.engine import legal_moves

    def oracle(vacancy, finish):
        start = Position.full_minus(T5, vacancy)
        goal = T5.bit(finish)
        frontier = {start.pegs}
        seen = set(frontier)
        level = 0
        while frontier and level < 14:
            if goal in frontier:
                return level
            nxt = set()
            for pegs in frontier:
                p = Position(T5, pegs)
                for m in legal_moves(p):
                    q = apply_move(p, m).pegs
                    if q not in seen:
                        seen.add(q)
                        nxt.add(q)
            frontier = nxt
            level += 1
        return None

    for vac in (Hole(1, 1), Hole(1, 2)):
        want = oracle(vac, vac)
        out = min_moves(T5, vac, vac, cfg(backend="native"), max_depth=12)
        assert out.moves == want
        assert len(out.solution.moves) == want
        assert verify_solution(out.solution, goal=vac).ok


def test_min_moves_exact_bidirectional_agrees():
    from tripeg.solver import min_moves_exact
    m, sol = min_moves_exact(T5, Hole(1, 1), Hole(1, 1), max_total=12)
    assert m == 10
    assert sol is not None and len(sol.moves) == 10
    assert verify_solution(sol, goal=Hole(1, 1)).ok


def test_min_moves_unsolvable_center_complement():
    from tripeg.solver import min_moves_exact
    m, _ = min_moves_exact(T5, Hole(2, 3), Hole(2, 3), max_total=13)
    assert m is None


def test_sweep_finish_suffix_semantics():
    # k=1 means the sweep is the last move
    length, pattern = max_sweep_length(R6, start=parse_hole("a1"),
                                       end=parse_hole("e5"))
    assert length == 16
    spec = GoalSpec(finish=parse_hole("e5"), sweep=(pattern, 1))
    assert spec.sweep[1] == 1


def test_hole_orbits_rhombus6():
    orbits = hole_orbits(R6)
    assert len(orbits) == 12
    assert sum(len(o) for o in orbits) == 36


def test_pair_orbit_count():
    pairs = [(v, w) for v in R6.order for w in R6.order]
    assert len(pair_orbits(R6, pairs)) == 342


def test_census_counts():
    census = problem_census(R6)
    assert census["complement_orbits"]["count"] == 12
    assert census["ordered_pairs"]["count"] == 1296
    assert census["ordered_pair_orbits"]["count"] == 342
    # the paper's "120 distinct problems": class-feasible pairs up to symmetry
    assert census["class_feasible_orbits"]["count"] == 120


def test_census_trivial_board():
    b1 = make_rhombus(1)
    census = problem_census(b1)
    assert census["complement_orbits"]["count"] == 1
    assert census["ordered_pairs"]["count"] == 1
