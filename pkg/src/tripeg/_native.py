"""Numba-compiled search kernels for boards with at most 64 holes.

Mirrors the pure-Python searches in solver.py: jump-level DFS with a failed
table for solvability, memoized exhaustive finish enumeration, and the
depth-limited move search used by iterative deepening.  Positions are uint64
bitboards; transposition tables are open-addressed uint64 arrays with linear
probing (lossy by design: eviction only costs recomputation).
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

from .engine import Jump, Position, regroup_jumps
from .sweeps import BudgetExceeded

_MULT = uint64(0x9E3779B97F4A7C15)


def _tables(board):
    cached = getattr(board, "_native_tables", None)
    if cached is not None:
        return cached
    if board.size > 64:
        raise ValueError("native backend supports at most 64 holes")
    nj = len(board.jumps)
    fo = np.zeros(nj, dtype=np.uint64)
    tb = np.zeros(nj, dtype=np.uint64)
    src = np.zeros(nj, dtype=np.int64)
    dst = np.zeros(nj, dtype=np.int64)
    order = sorted(range(nj), key=lambda k: board.index[board.jumps[k][0]])
    for out_i, k in enumerate(order):
        f, o, t = board.jumps[k]
        fo[out_i] = board.bit(f) | board.bit(o)
        tb[out_i] = board.bit(t)
        src[out_i] = board.index[f]
        dst[out_i] = board.index[t]
    # CSR of jump ids grouped by source cell (already sorted by src).
    starts = np.zeros(board.size + 1, dtype=np.int64)
    for i in range(nj):
        starts[src[i] + 1] += 1
    starts = np.cumsum(starts).astype(np.int64)
    ordered_jumps = tuple(Jump(*board.jumps[k]) for k in order)
    jumps_map = {tuple(j): i for i, j in enumerate(ordered_jumps)}
    perms = np.array([s.perm for s in board.symmetries()], dtype=np.int64)
    cached = (fo, tb, src, dst, starts, perms, ordered_jumps, jumps_map)
    board._native_tables = cached
    return cached


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> uint64(1)) & uint64(0x5555555555555555))
    x = (x & uint64(0x3333333333333333)) + ((x >> uint64(2))
                                            & uint64(0x3333333333333333))
    x = (x + (x >> uint64(4))) & uint64(0x0F0F0F0F0F0F0F0F)
    return int((x * uint64(0x0101010101010101)) >> uint64(56))


@njit(cache=True)
def _canon(pegs, perms):
    best = pegs
    for s in range(perms.shape[0]):
        out = uint64(0)
        x = pegs
        i = 0
        while x:
            if x & uint64(1):
                out |= uint64(1) << uint64(perms[s, i])
            x >>= uint64(1)
            i += 1
        if out < best:
            best = out
    return best


@njit(cache=True)
def _tt_seen(keys, key):
    mask = uint64(len(keys) - 1)
    h = (key * _MULT) & mask
    for _ in range(16):
        k = keys[h]
        if k == key:
            return True
        if k == uint64(0):
            return False
        h = (h + uint64(1)) & mask
    return False


@njit(cache=True)
def _tt_add(keys, key):
    mask = uint64(len(keys) - 1)
    h = (key * _MULT) & mask
    for _ in range(16):
        k = keys[h]
        if k == key:
            return
        if k == uint64(0):
            keys[h] = key
            return
        h = (h + uint64(1)) & mask
    keys[h] = key  # evict; only costs re-search


@njit(cache=True)
def _solve_kernel(start, goal_mask, fo, tb, root_ok, keys, perms, use_canon,
                  budget, path):
    """DFS to any single peg in goal_mask.  Returns (found, nodes, depth,
    budget_hit); path[0:depth] holds chosen jump ids."""
    nj = len(fo)
    max_d = 64
    spegs = np.zeros(max_d, dtype=np.uint64)
    cursor = np.zeros(max_d, dtype=np.int64)
    spegs[0] = start
    cursor[0] = 0
    sp = 0
    nodes = 0
    while sp >= 0:
        pegs = spegs[sp]
        if cursor[sp] == 0:
            nodes += 1
            if nodes > budget:
                return False, nodes, 0, True
            pc = _popcount(pegs)
            if pc == 1:
                if pegs & goal_mask:
                    return True, nodes, sp, False
                sp -= 1
                continue
            key = _canon(pegs, perms) if use_canon else pegs
            if _tt_seen(keys, key):
                sp -= 1
                continue
        advanced = False
        j = cursor[sp]
        while j < nj:
            ok = True
            if sp == 0 and not root_ok[j]:
                ok = False
            if ok and (pegs & fo[j]) == fo[j] and not (pegs & tb[j]):
                cursor[sp] = j + 1
                path[sp] = j
                sp += 1
                spegs[sp] = pegs ^ fo[j] ^ tb[j]
                cursor[sp] = 0
                advanced = True
                break
            j += 1
        if not advanced:
            key = _canon(pegs, perms) if use_canon else pegs
            _tt_add(keys, key)
            sp -= 1
    return False, nodes, 0, False


def solve(board, start: Position, goal_mask: int, config):
    from .solver import SearchOutcome, SearchStats, _jump_arrays, \
        _root_symmetry_filter
    fo, tb, src, dst, starts, perms, jumps, jumps_map = _tables(board)
    nj = len(jumps)
    root_ok = np.ones(nj, dtype=np.bool_)
    if config.use_symmetry:
        allowed = _root_symmetry_filter(
            board, start.pegs, [(0, 0, 0, jumps[i]) for i in range(nj)])
        allowed_ids = {jumps_map[tuple(item[3])] for item in allowed}
        for i in range(nj):
            root_ok[i] = i in allowed_ids
    cap = 1 << max(10, (config.transposition_capacity - 1).bit_length())
    keys = np.zeros(cap, dtype=np.uint64)
    path = np.zeros(64, dtype=np.int64)
    found, nodes, depth, budget_hit = _solve_kernel(
        np.uint64(start.pegs), np.uint64(goal_mask), fo, tb, root_ok, keys,
        perms, config.use_symmetry, config.node_budget, path)
    stats = SearchStats(nodes=int(nodes))
    if budget_hit:
        return SearchOutcome("budget_exhausted", None, stats)
    if not found:
        return SearchOutcome("unsolvable", None, stats)
    from .engine import Solution, verify_solution
    jump_path = [jumps[path[d]] for d in range(depth)]
    sol = Solution(board, start, regroup_jumps(jump_path))
    assert verify_solution(sol).ok
    return SearchOutcome("solved", sol, stats)


@njit(cache=True)
def _reach_kernel(start, fo, tb, keys, vals, budget):
    """Exhaustive DFS returning the bitmask of reachable single-peg cells.
    Memoizes per-position finish masks.  Returns (mask, nodes, budget_hit)."""
    nj = len(fo)
    max_d = 66
    spegs = np.zeros(max_d, dtype=np.uint64)
    cursor = np.zeros(max_d, dtype=np.int64)
    acc = np.zeros(max_d, dtype=np.uint64)
    tmask = uint64(len(keys) - 1)
    spegs[0] = start
    cursor[0] = 0
    acc[0] = uint64(0)
    sp = 0
    nodes = 0
    result = uint64(0)
    budget_hit = False
    while sp >= 0:
        pegs = spegs[sp]
        have_finish = False
        finish = uint64(0)
        if cursor[sp] == 0:
            nodes += 1
            if nodes > budget:
                budget_hit = True
                break
            if _popcount(pegs) == 1:
                have_finish = True
                finish = pegs
            else:
                h = (pegs * _MULT) & tmask
                for _ in range(8):
                    k = keys[h]
                    if k == pegs:
                        have_finish = True
                        finish = vals[h]
                        break
                    if k == uint64(0):
                        break
                    h = (h + uint64(1)) & tmask
        if have_finish:
            sp -= 1
            if sp >= 0:
                acc[sp] |= finish
            else:
                result = finish
            continue
        advanced = False
        j = cursor[sp]
        while j < nj:
            if (pegs & fo[j]) == fo[j] and not (pegs & tb[j]):
                cursor[sp] = j + 1
                sp += 1
                spegs[sp] = pegs ^ fo[j] ^ tb[j]
                cursor[sp] = 0
                acc[sp] = uint64(0)
                advanced = True
                break
            j += 1
        if not advanced:
            val = acc[sp]
            h = (pegs * _MULT) & tmask
            for _ in range(8):
                k = keys[h]
                if k == pegs or k == uint64(0):
                    break
                h = (h + uint64(1)) & tmask
            keys[h] = pegs
            vals[h] = val
            sp -= 1
            if sp >= 0:
                acc[sp] |= val
            else:
                result = val
    return result, nodes, budget_hit


def reachable_finishes(board, start: Position, config) -> int:
    fo, tb, src, dst, starts, perms, jumps, jumps_map = _tables(board)
    cap = 1 << max(10, (config.transposition_capacity - 1).bit_length())
    keys = np.zeros(cap, dtype=np.uint64)
    vals = np.zeros(cap, dtype=np.uint64)
    mask, nodes, budget_hit = _reach_kernel(
        np.uint64(start.pegs), fo, tb, keys, vals, config.node_budget)
    if budget_hit:
        raise BudgetExceeded("reachable_finishes (native)")
    return int(mask)


@njit(cache=True)
def _minmoves_kernel(start, goal_mask, target, use_target, fo, tb, src, dst,
                     starts, root_ok, depth, keys, kmover, vals, budget,
                     path, levels_flat, level_offsets, use_levels):
    """Depth-limited move search.  Returns (found, nodes, njumps, budget_hit).

    Frames hold (pegs, mover, moves_left); a frame's cursor walks first the
    chain-continuation jumps of `mover`, then all jumps as new moves.
    path[0:njumps] records jump ids on success.
    """
    nj = len(fo)
    max_d = 66
    spegs = np.zeros(max_d, dtype=np.uint64)
    mover = np.zeros(max_d, dtype=np.int64)
    left = np.zeros(max_d, dtype=np.int64)
    cursor = np.zeros(max_d, dtype=np.int64)
    phase = np.zeros(max_d, dtype=np.int64)
    tmask = uint64(len(keys) - 1)
    spegs[0] = start
    mover[0] = -1
    left[0] = depth
    cursor[0] = 0
    phase[0] = 1  # no active chain at the root
    sp = 0
    nodes = 0
    target_pc = _popcount(target) if use_target else 1
    while sp >= 0:
        pegs = spegs[sp]
        mv = mover[sp]
        ml = left[sp]
        if cursor[sp] == 0 and (phase[sp] == 0 or mv < 0):
            nodes += 1
            if nodes > budget:
                return False, nodes, 0, True
            at_goal = False
            if use_target:
                at_goal = pegs == target
            else:
                at_goal = _popcount(pegs) == 1 and (pegs & goal_mask) != 0
            if at_goal:
                return True, nodes, sp, False
            # Every further move captures >= 1 peg.
            need = _popcount(pegs) - target_pc
            limit = ml
            if mv >= 0:
                limit += 1  # current chain may still capture
            if need <= 0 or (need > 0 and limit == 0):
                sp -= 1
                continue
            h = ((pegs * _MULT) ^ (uint64(mv + 2) * uint64(0xC2B2AE3D27D4EB4F))) & tmask
            hit = False
            for _ in range(8):
                k = keys[h]
                if k == pegs and kmover[h] == mv:
                    if vals[h] >= ml:
                        hit = True
                    break
                if k == uint64(0):
                    break
                h = (h + uint64(1)) & tmask
            if hit:
                sp -= 1
                continue
        advanced = False
        while not advanced:
            j = cursor[sp]
            if phase[sp] == 0:
                # Continue the current chain (no move cost).
                hi = starts[mv + 1]
                if j == 0:
                    j = starts[mv]
                while j < hi:
                    if (pegs & fo[j]) == fo[j] and not (pegs & tb[j]):
                        cursor[sp] = j + 1
                        path[sp] = j
                        sp += 1
                        spegs[sp] = pegs ^ fo[j] ^ tb[j]
                        mover[sp] = dst[j]
                        left[sp] = ml
                        cursor[sp] = 0
                        phase[sp] = 0
                        advanced = True
                        break
                    j += 1
                if not advanced:
                    phase[sp] = 1
                    cursor[sp] = 0
                continue
            # Start a new move (costs one).
            if ml <= 0:
                break
            if use_levels and j == 0:
                li = depth - ml
                lo = level_offsets[li]
                hi2 = level_offsets[li + 1]
                while lo < hi2:
                    mid2 = (lo + hi2) // 2
                    if levels_flat[mid2] < pegs:
                        lo = mid2 + 1
                    else:
                        hi2 = mid2
                if lo >= level_offsets[li + 1] or levels_flat[lo] != pegs:
                    break
            while j < nj:
                ok = True
                if sp == 0 and not root_ok[j]:
                    ok = False
                if ok and (pegs & fo[j]) == fo[j] and not (pegs & tb[j]):
                    cursor[sp] = j + 1
                    path[sp] = j
                    sp += 1
                    spegs[sp] = pegs ^ fo[j] ^ tb[j]
                    mover[sp] = dst[j]
                    left[sp] = ml - 1
                    cursor[sp] = 0
                    phase[sp] = 0
                    advanced = True
                    break
                j += 1
            break
        if not advanced:
            h = ((pegs * _MULT) ^ (uint64(mv + 2) * uint64(0xC2B2AE3D27D4EB4F))) & tmask
            slot = h
            for _ in range(8):
                k = keys[slot]
                if (k == pegs and kmover[slot] == mv) or k == uint64(0):
                    break
                slot = (slot + uint64(1)) & tmask
            if keys[slot] == pegs and kmover[slot] == mv:
                if vals[slot] < ml:
                    vals[slot] = ml
            else:
                keys[slot] = pegs
                kmover[slot] = mv
                vals[slot] = ml
            sp -= 1
    return False, nodes, 0, False


def min_moves_at_depth(board, start: Position, goal_mask: int, depth: int,
                       config, target: int = 0, use_target: bool = False,
                       levels=None):
    """One iterative-deepening level.  Returns (found, jump_path, nodes,
    exhausted).

    `levels` (optional): list of sorted uint64 arrays F_0..F_d of positions
    by minimal move count; when given, new moves may only start from
    positions on their level (used for witness extraction against stored
    level sets)."""
    fo, tb, src, dst, starts, perms, jumps, jumps_map = _tables(board)
    nj = len(jumps)
    root_ok = np.ones(nj, dtype=np.bool_)
    if config.use_symmetry:
        from .solver import _root_symmetry_filter
        allowed = _root_symmetry_filter(
            board, start.pegs, [(0, 0, 0, jumps[i]) for i in range(nj)])
        allowed_ids = {jumps_map[tuple(item[3])] for item in allowed}
        for i in range(nj):
            root_ok[i] = i in allowed_ids
    cap = 1 << max(10, (config.transposition_capacity - 1).bit_length())
    keys = np.zeros(cap, dtype=np.uint64)
    kmover = np.zeros(cap, dtype=np.int64)
    vals = np.zeros(cap, dtype=np.int64)
    path = np.zeros(80, dtype=np.int64)
    if levels is not None:
        levels_flat = np.concatenate([np.asarray(l, dtype=np.uint64)
                                      for l in levels])
        level_offsets = np.zeros(len(levels) + 1, dtype=np.int64)
        for i, l in enumerate(levels):
            level_offsets[i + 1] = level_offsets[i] + len(l)
        use_levels = True
    else:
        levels_flat = np.zeros(1, dtype=np.uint64)
        level_offsets = np.zeros(2, dtype=np.int64)
        use_levels = False
    found, nodes, njumps, budget_hit = _minmoves_kernel(
        np.uint64(start.pegs), np.uint64(goal_mask), np.uint64(target),
        use_target, fo, tb, src, dst, starts, root_ok, depth, keys, kmover,
        vals, config.node_budget, path, levels_flat, level_offsets,
        use_levels)
    jump_path = [jumps[path[d]] for d in range(njumps)] if found else None
    return found, jump_path, int(nodes), not budget_hit
