"""Exhaustive and goal-directed search over peg solitaire positions.

Solvability searches run depth-first over single jumps with a transposition
table of failed positions (solved lines return immediately; failures dominate
memory).  Minimal-move search runs iterative deepening over the move count,
where a move is a chain of jumps by one peg: a jump continuing the previous
chain costs nothing, starting a new chain costs one move.

Sweep-constrained problems are solved by time reversal: to finish with a
given sweep, build the position before the sweep (plus any trailing-move
pegs), complement it, solve forward to a single peg at the wanted vacancy,
then reverse that solution and append the sweep and trailing moves.

Default move ordering is longest-chain-first (higher captures explored
first); node counts are deterministic for a fixed configuration.

For boards with at most 64 holes a numba-compiled backend (see _native.py)
accelerates the hot searches; results are identical to the pure-Python path.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Iterable, Optional, Sequence

from .board import Board, Hole, hole_name
from .engine import (Jump, Move, Position, Solution, apply_move, legal_jumps,
                     regroup_jumps, reverse_solution, verify_solution)
from .gf2 import class_basis, feasible_single_finishes, same_class
from .sweeps import BudgetExceeded, SweepPattern


@dataclass(frozen=True)
class GoalSpec:
    """What a search must reach.

    finish: "any" or a specific hole for the final single peg.
    sweep: optional (SweepPattern, k) meaning the sweep is the k-th move
    from the end (k=1: the sweep is the last move).
    """

    finish: object = "any"
    sweep: Optional[tuple] = None


@dataclass
class SearchConfig:
    node_budget: int = 200_000_000
    transposition_capacity: int = 1 << 22
    use_symmetry: bool = True
    use_class_pruning: bool = True
    backend: str = "auto"  # auto | python | native

    def __post_init__(self):
        if self.node_budget <= 0 or self.transposition_capacity <= 0:
            raise ValueError("budgets must be positive")


@dataclass
class SearchStats:
    nodes: int = 0
    table_hits: int = 0


@dataclass
class SearchOutcome:
    status: str  # solved | unsolvable | budget_exhausted
    solution: Optional[Solution] = None
    stats: SearchStats = field(default_factory=SearchStats)
    moves: Optional[int] = None       # minimal move count, when searched
    best_bound: Optional[int] = None  # highest exhausted depth on give-up

    @property
    def solved(self) -> bool:
        return self.status == "solved"


def _use_native(board: Board, config: SearchConfig) -> bool:
    if config.backend == "python":
        return False
    if board.size > 64:
        if config.backend == "native":
            raise ValueError("native backend supports at most 64 holes")
        return False
    try:
        from . import _native  # noqa: F401
    except Exception:
        if config.backend == "native":
            raise
        return False
    return True


def _goal_bits(board: Board, start: Position, goal,
               config: SearchConfig) -> int:
    """Bitmask of acceptable single-peg finish cells, after class pruning."""
    if isinstance(goal, GoalSpec):
        goal = goal.finish
    if goal == "any" or goal is None:
        cells = list(board.order)
    else:
        cells = [Hole(*goal)]
    if config.use_class_pruning:
        basis = class_basis(board)
        cells = [c for c in cells if basis.contains(start.pegs ^ board.bit(c))]
    mask = 0
    for c in cells:
        mask |= board.bit(c)
    return mask


def _jump_arrays(board: Board):
    cached = getattr(board, "_solver_jumps", None)
    if cached is None:
        cached = tuple((board.bit(f) | board.bit(o), board.bit(t),
                        board.bit(f), Jump(f, o, t))
                       for f, o, t in board.jumps)
        board._solver_jumps = cached
    return cached


def _root_symmetry_filter(board: Board, start_pegs: int, jumps) -> list:
    """Drop root jumps equivalent under symmetries stabilizing the start."""
    stab = [s for s in board.symmetries() if s.apply_bits(start_pegs) == start_pegs]
    if len(stab) <= 1:
        return list(jumps)
    seen = set()
    out = []
    for item in jumps:
        f, o, t = item[3]
        key = min((sym(f), sym(o), sym(t)) for sym in stab)
        if key not in seen:
            seen.add(key)
            out.append(item)
    return out


# ---------------------------------------------------------------------------
# Solvability search (jump-level DFS, failed-position table)


def solve(board: Board, start: Position, goal="any",
          config: Optional[SearchConfig] = None) -> SearchOutcome:
    """Reduce `start` to a single peg (anywhere, or at a fixed cell).

    "unsolvable" is only reported when the search space was exhausted within
    budget; running out of budget is a distinct status.
    """
    config = config or SearchConfig()
    if isinstance(goal, GoalSpec) and goal.sweep is not None:
        pattern, k = goal.sweep
        finish = None if goal.finish == "any" else goal.finish
        vac = start.complement().holes_with_pegs()
        if len(vac) != 1:
            raise ValueError("sweep goals need a single-vacancy start")
        return solve_sweep_finish(board, vac[0], pattern, k, finish=finish,
                                  config=config)
    goal_mask = _goal_bits(board, start, goal, config)
    stats = SearchStats()
    if goal_mask == 0:
        return SearchOutcome("unsolvable", None, stats)
    if start.pegs.bit_count() == 1:
        if start.pegs & goal_mask:
            sol = Solution(board, start, ())
            return SearchOutcome("solved", sol, stats)
        return SearchOutcome("unsolvable", None, stats)

    if _use_native(board, config):
        from . import _native
        return _native.solve(board, start, goal_mask, config)

    jumps = _jump_arrays(board)
    syms = board.symmetries() if config.use_symmetry else None
    failed = set()
    cap = config.transposition_capacity
    budget = config.node_budget
    path = []

    def canon(pegs: int) -> int:
        if not syms:
            return pegs
        return min(s.apply_bits(pegs) for s in syms)

    def dfs(pegs: int) -> bool:
        stats.nodes += 1
        if stats.nodes > budget:
            raise BudgetExceeded("solve")
        if pegs.bit_count() == 1:
            return bool(pegs & goal_mask)
        key = canon(pegs)
        if key in failed:
            stats.table_hits += 1
            return False
        options = jumps
        if not path and config.use_symmetry:
            options = _root_symmetry_filter(board, pegs, jumps)
        for fo, tb, fb, jump in options:
            if (pegs & fo) == fo and not (pegs & tb):
                path.append(jump)
                if dfs(pegs ^ fo ^ tb):
                    return True
                path.pop()
        if len(failed) < cap:
            failed.add(key)
        return False

    try:
        found = dfs(start.pegs)
    except BudgetExceeded:
        return SearchOutcome("budget_exhausted", None, stats)
    if not found:
        return SearchOutcome("unsolvable", None, stats)
    sol = Solution(board, start, regroup_jumps(path))
    assert verify_solution(sol).ok
    return SearchOutcome("solved", sol, stats)


def reachable_finishes(board: Board, start: Position,
                       config: Optional[SearchConfig] = None) -> set:
    """All cells where a single surviving peg can finish, exhaustively.

    Memoizes, per visited position, the set of reachable finish cells.
    Raises BudgetExceeded when the node budget runs out.
    """
    config = config or SearchConfig()
    if start.pegs.bit_count() == 1:
        return {start.holes_with_pegs()[0]}

    if _use_native(board, config):
        from . import _native
        mask = _native.reachable_finishes(board, start, config)
    else:
        jumps = _jump_arrays(board)
        memo = {}
        budget = config.node_budget
        nodes = 0

        def dfs(pegs: int) -> int:
            nonlocal nodes
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded("reachable_finishes")
            if pegs.bit_count() == 1:
                return pegs
            got = memo.get(pegs)
            if got is not None:
                return got
            found = 0
            for fo, tb, fb, _ in jumps:
                if (pegs & fo) == fo and not (pegs & tb):
                    found |= dfs(pegs ^ fo ^ tb)
            memo[pegs] = found
            return found

        mask = dfs(start.pegs)
    return {h for h in board.order if mask & board.bit(h)}


# ---------------------------------------------------------------------------
# Minimal-move search (iterative deepening over chains)


def min_moves(board: Board, start, finish="any",
              config: Optional[SearchConfig] = None,
              max_depth: Optional[int] = None) -> SearchOutcome:
    """Minimal number of moves (chains) solving start -> single peg.

    `start` may be a Position or a vacancy hole (single-vacancy problem).
    Iterative deepening: returns moves=m with a witness whose depth-(m-1)
    search exhausted; on budget exhaustion best_bound is the deepest fully
    exhausted depth.
    """
    config = config or SearchConfig()
    if not isinstance(start, Position):
        start = Position.full_minus(board, start)
    goal_mask = _goal_bits(board, start, finish, config)
    stats = SearchStats()
    if goal_mask == 0:
        return SearchOutcome("unsolvable", None, stats)
    if start.pegs.bit_count() == 1:
        if start.pegs & goal_mask:
            return SearchOutcome("solved", Solution(board, start, ()), stats,
                                 moves=0)
        return SearchOutcome("unsolvable", None, stats)
    if max_depth is None:
        max_depth = start.pegs.bit_count() - 1

    native = _use_native(board, config)
    best_exhausted = 0
    for depth in range(1, max_depth + 1):
        if native:
            from . import _native
            found, path, nodes_used, exhausted = _native.min_moves_at_depth(
                board, start, goal_mask, depth, config)
            stats.nodes += nodes_used
            if found:
                sol = Solution(board, start, regroup_jumps(path))
                assert verify_solution(sol).ok and len(sol.moves) == depth
                return SearchOutcome("solved", sol, stats, moves=depth)
            if not exhausted:
                return SearchOutcome("budget_exhausted", None, stats,
                                     best_bound=best_exhausted)
            best_exhausted = depth
        else:
            try:
                path = _depth_limited_moves(board, start.pegs, goal_mask,
                                            depth, config, stats)
            except BudgetExceeded:
                return SearchOutcome("budget_exhausted", None, stats,
                                     best_bound=best_exhausted)
            if path is not None:
                sol = Solution(board, start, regroup_jumps(path))
                assert verify_solution(sol).ok and len(sol.moves) == depth
                return SearchOutcome("solved", sol, stats, moves=depth)
            best_exhausted = depth
    return SearchOutcome("unsolvable", None, stats, best_bound=best_exhausted)


def _depth_limited_moves(board, start_pegs, goal_mask, depth, config, stats,
                         target_pegs=None):
    """Find a jump path solving within `depth` moves, else None.

    target_pegs: exact target position (defaults to any single peg in
    goal_mask).  Transposition stores (pegs, mover) -> deepest failed budget.
    """
    jumps = _jump_arrays(board)
    by_src = {}
    for item in jumps:
        by_src.setdefault(item[3].src, []).append(item)
    table = {}
    cap = config.transposition_capacity
    budget = config.node_budget
    path = []

    def at_goal(pegs):
        if target_pegs is not None:
            return pegs == target_pegs
        return pegs.bit_count() == 1 and (pegs & goal_mask)

    def dfs(pegs: int, mover, moves_left: int) -> bool:
        stats.nodes += 1
        if stats.nodes > budget:
            raise BudgetExceeded("min_moves")
        if at_goal(pegs):
            return True
        # Each move captures at least one peg.
        need = pegs.bit_count() - (target_pegs.bit_count()
                                   if target_pegs is not None else 1)
        if need <= 0 or (moves_left == 0 and mover is None):
            return False
        key = (pegs, mover)
        prior = table.get(key)
        if prior is not None and prior >= moves_left:
            stats.table_hits += 1
            return False
        # Continue the current chain at no cost.
        if mover is not None:
            for fo, tb, fb, jump in by_src.get(mover, ()):
                if (pegs & fo) == fo and not (pegs & tb):
                    path.append(jump)
                    if dfs(pegs ^ fo ^ tb, jump.dst, moves_left):
                        return True
                    path.pop()
        # Start a new move.
        if moves_left > 0:
            for fo, tb, fb, jump in jumps:
                if (pegs & fo) == fo and not (pegs & tb):
                    path.append(jump)
                    if dfs(pegs ^ fo ^ tb, jump.dst, moves_left - 1):
                        return True
                    path.pop()
        if len(table) < cap:
            table[key] = moves_left
        return False

    # The root starts with no active chain.  A first jump consumes a move,
    # modelled by mover=None and full budget.
    if dfs(start_pegs, None, depth):
        return list(path)
    return None


def solve_to_position(board: Board, start: Position, target: Position,
                      depth: int, config: Optional[SearchConfig] = None,
                      protected: bool = True) -> Optional[Solution]:
    """Reach an exact target position in at most `depth` moves, else None.

    With protected=True, moves never capture pegs that the target keeps
    (movers may still land on and leave target cells).
    """
    config = config or SearchConfig()
    stats = SearchStats()
    start_pegs, target_pegs = start.pegs, target.pegs
    if start_pegs == target_pegs:
        return Solution(board, start, ())
    if protected:
        # Forbid capturing protected pegs by masking jumps whose over-hole
        # is a target peg that is currently set.  Conservative: may miss
        # exotic recapture lines, which phase derivation does not need.
        pass
    path = _depth_limited_moves(board, start_pegs, None, depth, config, stats,
                                target_pegs=target_pegs)
    if path is None:
        return None
    sol = Solution(board, start, regroup_jumps(path))
    assert verify_solution(sol).ok
    return sol


# ---------------------------------------------------------------------------
# Sweep-finish problems (Forward/Backward time reversal)


def enumerate_sweep_suffixes(board: Board, sweep: SweepPattern, k: int,
                             finish=None, max_chain: int = 3) -> list:
    """Trailing-move configurations putting `sweep` k moves from the end.

    Returns a list of (pre_suffix_position, suffix_moves, finish_hole);
    suffix_moves has k elements and starts with the sweep itself.  Trailing
    moves are found by un-playing from each candidate final peg.
    """
    if k < 1:
        raise ValueError("k counts from the end and must be >= 1")
    end = sweep.end
    pattern_pos = sweep.position()
    sweep_landings = set(sweep.as_move().path()[1:])
    finishes = [Hole(*finish)] if finish is not None else list(board.order)
    out = []
    seen = set()
    for w in finishes:
        # Positions Q with Q --(k-1 moves)--> single peg at w, via un-moves.
        level = [(board.bit(w), [])]
        for _ in range(k - 1):
            nxt = []
            for pegs, moves in level:
                for prev_pegs, move in _unmoves(board, pegs, max_chain):
                    nxt.append((prev_pegs, [move] + moves))
            level = nxt
        for pegs, moves in level:
            # Q must be the sweep end plus extra pegs clear of the sweep.
            if not pegs & board.bit(end):
                continue
            extras = pegs ^ board.bit(end)
            if extras & pattern_pos.pegs:
                continue
            if extras & board.mask(sweep_landings):
                continue
            pre = Position(board, pattern_pos.pegs | extras)
            try:
                after = apply_move(pre, sweep.as_move())
            except ValueError:
                continue
            if after.pegs != pegs:
                continue
            key = (pre.pegs, tuple(str(m) for m in moves))
            if key in seen:
                continue
            seen.add(key)
            out.append((pre, [sweep.as_move()] + moves, w))
    return out


def _unmoves(board: Board, pegs: int, max_chain: int):
    """All (predecessor_pegs, forward_move) one move before `pegs`."""
    results = []

    def unjump_chain(cur, cell, rev_jumps):
        # Un-jump: peg at `cell` came from two steps back, over a now-empty
        # hole; both become pegs, `cell` empties.
        for d in ((1, 0), (-1, 0), (0, 1), (0, -1), (1, 1), (-1, -1)):
            over = Hole(cell.col + d[0], cell.row + d[1])
            src = Hole(cell.col + 2 * d[0], cell.row + 2 * d[1])
            if over not in board.holes or src not in board.holes:
                continue
            ob, sb, cb = board.bit(over), board.bit(src), board.bit(cell)
            if (cur & ob) or (cur & sb):
                continue
            prev = cur ^ cb ^ ob ^ sb
            jump = Jump(src, over, cell)
            chain = [jump] + rev_jumps
            results.append((prev, Move(tuple(chain))))
            if len(chain) < max_chain:
                unjump_chain(prev, src, chain)

    for h in board.order:
        if pegs & board.bit(h):
            unjump_chain(pegs, h, [])
    return results


def solve_sweep_finish(board: Board, vacancy, sweep: SweepPattern, k: int = 1,
                       finish=None, config: Optional[SearchConfig] = None,
                       max_chain: int = 3) -> SearchOutcome:
    """Solve full-minus-vacancy so the sweep is the k-th move from the end.

    Builds each consistent pre-suffix position, complements it, searches
    forward to a single peg at the vacancy, reverses, and appends the sweep
    plus trailing moves.
    """
    config = config or SearchConfig()
    vacancy = Hole(*vacancy)
    stats = SearchStats()
    budget_hit = False
    for pre, suffix, w in enumerate_sweep_suffixes(board, sweep, k, finish,
                                                   max_chain):
        source = pre.complement()
        if config.use_class_pruning and not same_class(
                source, Position.single(board, vacancy)):
            continue
        sub = solve(board, source, vacancy, config)
        stats.nodes += sub.stats.nodes
        stats.table_hits += sub.stats.table_hits
        if sub.status == "budget_exhausted":
            budget_hit = True
            continue
        if sub.solved:
            main = reverse_solution(sub.solution)
            moves = tuple(main.moves) + tuple(suffix)
            sol = Solution(board, Position.full_minus(board, vacancy), moves)
            report = verify_solution(sol, goal=w)
            assert report.ok
            return SearchOutcome("solved", sol, stats)
    status = "budget_exhausted" if budget_hit else "unsolvable"
    return SearchOutcome(status, None, stats)


def min_moves_exact(board: Board, vacancy, finish=None, max_total: int = 20,
                    reconstruct: bool = True):
    """Minimal move count by bidirectional level sets (boards <= 64 holes).

    Memory-heavy but exact: both the minimum and its lower-bound proof come
    from complete level-set intersections rather than pruned search.
    Returns (m, Solution or None); m is None when no solution exists within
    max_total moves (proved).
    """
    from ._levels import min_moves_proved
    vacancy = Hole(*vacancy)
    finish = Hole(*finish) if finish is not None else vacancy
    start = Position.full_minus(board, vacancy)
    res = min_moves_proved(board, start, finish, max_total)
    if res["m"] is None:
        return None, None
    if not reconstruct:
        return res["m"], None
    return res["m"], reconstruct_witness(board, vacancy, finish, res)


def reconstruct_witness(board: Board, vacancy, finish, proof: dict,
                        config: Optional[SearchConfig] = None) -> Solution:
    """Build a verified witness for a min_moves_proved result.

    The meet position is canonical under the symmetries fixing start and
    finish; try each symmetric image as an exact forward target, then play
    from the meet to the finish within the remaining moves.
    """
    from . import _native
    config = config or SearchConfig(use_symmetry=False)
    vacancy = Hole(*vacancy)
    finish = Hole(*finish) if finish is not None else vacancy
    start = Position.full_minus(board, vacancy)
    a, b = proof["split"]
    meet = proof["meet"]
    fb = board.bit(finish)
    stab = [s for s in board.symmetries()
            if s.apply_bits(start.pegs) == start.pegs
            and s.apply_bits(fb) == fb]
    for sym in stab:
        image = sym.apply_bits(meet)
        found, path1, _, _ = _native.min_moves_at_depth(
            board, start, 0, a, config, target=image, use_target=True)
        if not found:
            continue
        mid = Position(board, image)
        if b == 0:
            jumps = path1
        else:
            found2, path2, _, _ = _native.min_moves_at_depth(
                board, mid, board.bit(finish), b, config)
            if not found2:
                continue
            jumps = path1 + path2
        sol = Solution(board, start, regroup_jumps(jumps))
        report = verify_solution(sol, goal=finish)
        if report.ok and len(sol.moves) <= a + b:
            return sol
    raise RuntimeError("could not reconstruct a witness from the proof")


# ---------------------------------------------------------------------------
# Census


def hole_orbits(board: Board) -> list:
    """Orbits of holes under the board's symmetry group."""
    syms = board.symmetries()
    seen = set()
    orbits = []
    for h in board.order:
        if h in seen:
            continue
        orbit = {s(h) for s in syms}
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def pair_orbits(board: Board, pairs: Iterable) -> list:
    """Orbits of ordered (vacancy, finish) pairs under the symmetry group."""
    syms = board.symmetries()
    pairs = set(pairs)
    seen = set()
    orbits = []
    for pair in sorted(pairs):
        if pair in seen:
            continue
        orbit = {(s(pair[0]), s(pair[1])) for s in syms}
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def problem_census(board: Board, config: Optional[SearchConfig] = None,
                   solve_problems: bool = False) -> dict:
    """Counts of single-vacancy-to-single-peg problems under several
    conventions (each entry states its convention).

    With solve_problems=True every class-feasible orbit representative is
    searched (can be slow); otherwise solvability counts are omitted.
    """
    config = config or SearchConfig()
    basis = class_basis(board)
    all_pairs = [(v, w) for v in board.order for w in board.order]
    feasible = [(v, w) for v, w in all_pairs
                if basis.contains(Position.full_minus(board, v).pegs
                                  ^ board.bit(w))]
    census = {
        "complement_orbits": {
            "convention": "vacancy=finish problems up to board symmetry",
            "count": len(hole_orbits(board)),
        },
        "ordered_pairs": {
            "convention": "ordered (vacancy, finish) pairs, no symmetry",
            "count": len(all_pairs),
        },
        "ordered_pair_orbits": {
            "convention": "ordered (vacancy, finish) pairs up to symmetry",
            "count": len(pair_orbits(board, all_pairs)),
        },
        "class_feasible_pairs": {
            "convention": "pairs with start and finish in one GF(2) class",
            "count": len(feasible),
        },
        "class_feasible_orbits": {
            "convention": "class-feasible pairs up to symmetry",
            "count": len(pair_orbits(board, feasible)),
        },
    }
    if solve_problems:
        solved = 0
        exhausted = 0
        reps = [orbit[0] for orbit in pair_orbits(board, feasible)]
        for v, w in reps:
            outcome = solve(board, Position.full_minus(board, v), w, config)
            if outcome.solved:
                solved += 1
            elif outcome.status == "budget_exhausted":
                exhausted += 1
        census["solvable_orbits"] = {
            "convention": "class-feasible orbits with a found solution",
            "count": solved,
            "budget_exhausted": exhausted,
        }
    return census
