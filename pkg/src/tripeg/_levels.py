"""Bidirectional move-level sets for minimal-move proofs (boards <= 64 holes).

F_a = canonical positions reachable from the start in at most a moves;
B_b = canonical positions that can reach the goal within b moves (computed
with un-moves).  A solution of <= a+b moves exists iff F_a intersects B_b,
so one empty intersection proves a lower bound exactly, without search
pruning assumptions.  Canonicalization uses the symmetry subgroup fixing
both start and goal, via byte-sliced permutation tables.

Sets are sorted numpy uint64 arrays; expansion emits successors in chunks
that are deduplicated with numpy sort/unique (C speed, bounded memory).
A sound corner prune trims both sides: a peg on a corner hole can never be
captured, so each corner peg (other than one on the finish hole) needs its
own future move.
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

from .engine import Position
from ._native import _tables


def _byte_perm_tables(board, syms):
    """tables[s][byte][value] -> permuted bits for that byte slice."""
    nbytes = (board.size + 7) // 8
    tabs = np.zeros((len(syms), nbytes, 256), dtype=np.uint64)
    for si, sym in enumerate(syms):
        perm = sym.perm
        for b in range(nbytes):
            for v in range(256):
                out = 0
                for bit in range(8):
                    if v & (1 << bit):
                        idx = b * 8 + bit
                        if idx < board.size:
                            out |= 1 << perm[idx]
                tabs[si, b, v] = out
    return tabs


@njit(cache=True)
def _canon_bytes(pegs, tabs):
    best = pegs
    for s in range(tabs.shape[0]):
        out = uint64(0)
        x = pegs
        b = 0
        while x:
            out |= tabs[s, b, x & uint64(0xFF)]
            x >>= uint64(8)
            b += 1
        if out < best:
            best = out
    return best


@njit(cache=True)
def _expand_chunk(positions, start_pi, fo, tb, src, dst, starts, tabs, out,
                  forward, corner_mask, corner_budget):
    """Emit canonical one-move successors (forward) or predecessors
    (backward, via un-moves) of positions[start_pi:].

    Emits every chain prefix.  Positions holding more than corner_budget
    corner pegs are not emitted (corner_budget < 0 disables the prune).
    Returns (n_out, next_pi): next_pi < len(positions) means the output
    buffer filled up and the caller should flush and resume there.
    """
    nj = len(fo)
    n_out = 0
    max_chain = 64
    stack_pegs = np.zeros(max_chain, dtype=np.uint64)
    stack_cell = np.zeros(max_chain, dtype=np.int64)
    stack_cursor = np.zeros(max_chain, dtype=np.int64)
    for pi in range(start_pi, len(positions)):
        if n_out + 4096 >= len(out):
            return n_out, pi
        pegs0 = positions[pi]
        for j0 in range(nj):
            if forward:
                legal = (pegs0 & fo[j0]) == fo[j0] and not (pegs0 & tb[j0])
            else:
                legal = (pegs0 & tb[j0]) != 0 and not (pegs0 & fo[j0])
            if not legal:
                continue
            sp = 0
            stack_pegs[0] = pegs0 ^ fo[j0] ^ tb[j0]
            stack_cell[0] = dst[j0] if forward else src[j0]
            stack_cursor[0] = 0
            while sp >= 0:
                pegs = stack_pegs[sp]
                c = stack_cell[sp]
                if stack_cursor[sp] == 0:
                    emit = True
                    if corner_budget >= 0:
                        x = pegs & corner_mask
                        cnt = 0
                        while x:
                            x &= x - uint64(1)
                            cnt += 1
                        if cnt > corner_budget:
                            emit = False
                    if emit:
                        if n_out >= len(out):
                            return n_out, pi  # refill; dedupe absorbs repeats
                        out[n_out] = _canon_bytes(pegs, tabs)
                        n_out += 1
                advanced = False
                j = stack_cursor[sp]
                if j == 0:
                    j = starts[c]
                hi = starts[c + 1]
                while j < hi:
                    if forward:
                        legal = ((pegs & fo[j]) == fo[j]
                                 and not (pegs & tb[j]))
                    else:
                        legal = (pegs & tb[j]) != 0 and not (pegs & fo[j])
                    if legal:
                        stack_cursor[sp] = j + 1
                        sp += 1
                        stack_pegs[sp] = pegs ^ fo[j] ^ tb[j]
                        stack_cell[sp] = dst[j] if forward else src[j]
                        stack_cursor[sp] = 0
                        advanced = True
                        break
                    j += 1
                if not advanced:
                    sp -= 1
    return n_out, len(positions)


def _unjump_tables(board):
    """Jump arrays regrouped by landing cell, for backward chains."""
    cached = getattr(board, "_unjump_tables", None)
    if cached is not None:
        return cached
    fo, tb, src, dst, starts, perms, jumps, jumps_map = _tables(board)
    nj = len(jumps)
    order = sorted(range(nj), key=lambda k: board.index[jumps[k].dst])
    fo2 = fo[order].copy()
    tb2 = tb[order].copy()
    src2 = src[order].copy()
    dst2 = dst[order].copy()
    starts2 = np.zeros(board.size + 1, dtype=np.int64)
    for i in range(nj):
        starts2[dst2[i] + 1] += 1
    starts2 = np.cumsum(starts2).astype(np.int64)
    cached = (fo2, tb2, src2, dst2, starts2)
    board._unjump_tables = cached
    return cached


def _sorted_isin(values, sorted_arr):
    if len(sorted_arr) == 0:
        return np.zeros(len(values), dtype=bool)
    idx = np.searchsorted(sorted_arr, values)
    idx[idx >= len(sorted_arr)] = len(sorted_arr) - 1
    return sorted_arr[idx] == values


class LevelSets:
    """BFS layers of canonical positions by move count, one direction."""

    def __init__(self, board, start: Position, finish=None, forward=True,
                 max_positions: int = 250_000_000, chunk: int = 500_000):
        self.board = board
        self.forward = forward
        syms = [s for s in board.symmetries()
                if s.apply_bits(start.pegs) == start.pegs]
        corner_cells = ([c.hole for c in board.corners()]
                        if board.boundary else [])
        corner_mask = board.mask(corner_cells)
        if finish is not None:
            fb = board.bit(finish)
            syms = [s for s in syms if s.apply_bits(fb) == fb]
            corner_mask &= ~fb  # a corner finish peg may stay put
        self.tabs = _byte_perm_tables(board, syms)
        self.corner_mask = np.uint64(corner_mask)
        root = np.uint64(_canon_bytes(np.uint64(start.pegs), self.tabs))
        self.levels = [np.array([root], dtype=np.uint64)]
        self.acc = self.levels[0].copy()
        self.max_positions = max_positions
        self.chunk = chunk
        self._out = None

    def _buffer(self):
        if self._out is None:
            self._out = np.zeros(24_000_000, dtype=np.uint64)
        return self._out

    def release_buffer(self):
        self._out = None

    def frontier(self):
        return self.levels[-1]

    def depth(self) -> int:
        return len(self.levels) - 1

    def grow(self, corner_budget: int = -1) -> int:
        """Expand one level; returns the number of new positions.

        Per-chunk emits are deduplicated promptly and consolidated into a
        single running array to keep peak memory bounded.
        """
        if self.forward:
            fo, tb, src, dst, starts, _, _, _ = _tables(self.board)
        else:
            fo, tb, src, dst, starts = _unjump_tables(self.board)
        cur = self.levels[-1]
        out = self._buffer()
        new = np.zeros(0, dtype=np.uint64)
        pending = []
        pending_total = 0

        def consolidate():
            nonlocal new, pending, pending_total
            if not pending:
                return
            merged = np.unique(np.concatenate([new] + pending))
            new = merged[~_sorted_isin(merged, self.acc)]
            pending = []
            pending_total = 0

        for lo in range(0, len(cur), self.chunk):
            part = cur[lo:lo + self.chunk]
            pi = 0
            while pi < len(part):
                n, pi = _expand_chunk(part, pi, fo, tb, src, dst, starts,
                                      self.tabs, out, self.forward,
                                      self.corner_mask, corner_budget)
                emitted = np.unique(out[:n])
                emitted = emitted[~_sorted_isin(emitted, self.acc)]
                if len(new):
                    emitted = emitted[~_sorted_isin(emitted, new)]
                pending.append(emitted)
                pending_total += len(emitted)
                if pending_total > 16_000_000:
                    consolidate()
        consolidate()
        self.levels.append(new)
        self.acc = np.union1d(self.acc, new)
        if len(self.acc) > self.max_positions:
            raise MemoryError(
                f"level sets exceed {self.max_positions} positions")
        return len(new)


@njit(cache=True)
def _stream_chunk(positions, start_pi, fo, tb, src, dst, starts, tabs,
                  forward, corner_mask, corner_budget, lookup, hits,
                  hit_sources):
    """Like _expand_chunk, but instead of storing emits, binary-search each
    canonical emit in the sorted `lookup` array.  Matches are appended to
    `hits` (the emit) and `hit_sources` (the frontier position it came
    from).  Returns (n_hits, next_pi); next_pi < len(positions) means the
    hit buffers filled."""
    nj = len(fo)
    n_hits = 0
    max_chain = 64
    stack_pegs = np.zeros(max_chain, dtype=np.uint64)
    stack_cell = np.zeros(max_chain, dtype=np.int64)
    stack_cursor = np.zeros(max_chain, dtype=np.int64)
    nl = len(lookup)
    for pi in range(start_pi, len(positions)):
        if n_hits + 4096 >= len(hits):
            return n_hits, pi
        pegs0 = positions[pi]
        for j0 in range(nj):
            if forward:
                legal = (pegs0 & fo[j0]) == fo[j0] and not (pegs0 & tb[j0])
            else:
                legal = (pegs0 & tb[j0]) != 0 and not (pegs0 & fo[j0])
            if not legal:
                continue
            sp = 0
            stack_pegs[0] = pegs0 ^ fo[j0] ^ tb[j0]
            stack_cell[0] = dst[j0] if forward else src[j0]
            stack_cursor[0] = 0
            while sp >= 0:
                pegs = stack_pegs[sp]
                c = stack_cell[sp]
                if stack_cursor[sp] == 0:
                    check = True
                    if corner_budget >= 0:
                        x = pegs & corner_mask
                        cnt = 0
                        while x:
                            x &= x - uint64(1)
                            cnt += 1
                        if cnt > corner_budget:
                            check = False
                    if check:
                        key = _canon_bytes(pegs, tabs)
                        lo = 0
                        hi2 = nl
                        while lo < hi2:
                            mid = (lo + hi2) // 2
                            if lookup[mid] < key:
                                lo = mid + 1
                            else:
                                hi2 = mid
                        if lo < nl and lookup[lo] == key:
                            if n_hits >= len(hits):
                                return n_hits, pi
                            hits[n_hits] = key
                            hit_sources[n_hits] = pegs0
                            n_hits += 1
                advanced = False
                j = stack_cursor[sp]
                if j == 0:
                    j = starts[c]
                hi = starts[c + 1]
                while j < hi:
                    if forward:
                        legal = ((pegs & fo[j]) == fo[j]
                                 and not (pegs & tb[j]))
                    else:
                        legal = (pegs & tb[j]) != 0 and not (pegs & fo[j])
                    if legal:
                        stack_cursor[sp] = j + 1
                        sp += 1
                        stack_pegs[sp] = pegs ^ fo[j] ^ tb[j]
                        stack_cell[sp] = dst[j] if forward else src[j]
                        stack_cursor[sp] = 0
                        advanced = True
                        break
                    j += 1
                if not advanced:
                    sp -= 1
    return n_hits, len(positions)


def stream_level_intersect(levelsets: LevelSets, lookup: np.ndarray,
                           corner_budget: int = -1):
    """Expand one level beyond the frontier without storing it, returning
    the (emit, source) pairs whose canonical form appears in `lookup`."""
    if levelsets.forward:
        fo, tb, src, dst, starts, _, _, _ = _tables(levelsets.board)
    else:
        fo, tb, src, dst, starts = _unjump_tables(levelsets.board)
    cur = levelsets.frontier()
    hits = np.zeros(1_000_000, dtype=np.uint64)
    hit_sources = np.zeros(1_000_000, dtype=np.uint64)
    found = []
    for lo in range(0, len(cur), levelsets.chunk):
        part = cur[lo:lo + levelsets.chunk]
        pi = 0
        while pi < len(part):
            n, pi = _stream_chunk(part, pi, fo, tb, src, dst, starts,
                                  levelsets.tabs, levelsets.forward,
                                  levelsets.corner_mask, corner_budget,
                                  lookup, hits, hit_sources)
            for i in range(n):
                found.append((int(hits[i]), int(hit_sources[i])))
    return found


def extract_forward_path(board, levelsets: LevelSets, goal_pegs: int,
                         goal_level: int, max_chain: int = 40):
    """Walk a stored forward LevelSets from a goal back to the start.

    Returns the move list (start -> goal) as engine Moves.  The goal must be
    present (canonically) in levels[goal_level].
    """
    from .solver import _unmoves
    tabs = levelsets.tabs
    moves = []
    cur = goal_pegs
    for d in range(goal_level, 0, -1):
        found = False
        for prev_pegs, move in _unmoves(board, cur, max_chain):
            key = np.uint64(_canon_bytes(np.uint64(prev_pegs), tabs))
            if _sorted_isin(np.array([key], dtype=np.uint64),
                            levelsets.levels[d - 1])[0]:
                moves.append(move)
                cur = prev_pegs
                found = True
                break
        if not found:
            raise RuntimeError(f"no stored predecessor at level {d}")
    moves.reverse()
    return moves


def min_moves_proved(board, start: Position, finish, max_total: int,
                     max_positions: int = 250_000_000,
                     store_cap: int = 60_000_000,
                     verbose: bool = False):
    """Exact minimal move count within max_total, with proof of the bound.

    Stores exact level sets on both sides while they stay below store_cap,
    then streams one final expansion against the opposite side's stored
    union.  Returns a dict with m (None if proven > max_total), the meet
    position (canonical), its split (a, b), and the level profile.
    """
    goal = Position.single(board, finish)
    fwd = LevelSets(board, start, finish, True, max_positions)
    bwd = LevelSets(board, goal, finish, False, max_positions)
    profile = []
    # Keep the stored depths one short of max_total; the last layer streams.
    # Growth-rate estimates pick the cheaper side (backward levels blow up
    # much faster than forward ones).
    f_ratio, b_ratio = 9.0, 40.0
    while fwd.depth() + bwd.depth() < max_total - 1:
        grow_fwd = (len(fwd.frontier()) * f_ratio
                    <= len(bwd.frontier()) * b_ratio)
        side = fwd if grow_fwd else bwd
        prev = max(1, len(side.frontier()))
        budget = (max_total - (fwd.depth() + 1)) if grow_fwd \
            else bwd.depth() + 1
        n = side.grow(corner_budget=budget)
        if grow_fwd:
            f_ratio = max(2.0, n / prev)
        else:
            b_ratio = max(2.0, n / prev)
        tag = f"{'F' if grow_fwd else 'B'}{side.depth()}"
        profile.append((tag, n))
        if verbose:
            print(f"  {tag}: {n:,} new positions", flush=True)

    best = None
    meet = None
    best_ab = (None, None)
    for a in range(fwd.depth() + 1):
        for b in range(bwd.depth() + 1):
            if a + b > max_total or (best is not None and a + b >= best):
                continue
            common = np.intersect1d(fwd.levels[a], bwd.levels[b])
            if len(common):
                best, meet, best_ab = a + b, int(common[0]), (a, b)

    fwd.release_buffer()
    bwd.release_buffer()
    stream_fwd = (len(fwd.frontier()) * f_ratio
                  <= len(bwd.frontier()) * b_ratio)
    min_stream_sum = (fwd.depth() + 1) if stream_fwd else (bwd.depth() + 1)
    if best is None or best > min_stream_sum:
        if stream_fwd:
            hits = stream_level_intersect(
                fwd, bwd.acc, corner_budget=max_total - (fwd.depth() + 1))
            a_stream = fwd.depth() + 1
            if verbose:
                print(f"  stream F{a_stream} vs B<= {bwd.depth()}: "
                      f"{len(hits)} hits", flush=True)
            for key, _src in hits:
                for b in range(bwd.depth() + 1):
                    if _sorted_isin(np.array([key], dtype=np.uint64),
                                    bwd.levels[b])[0]:
                        if best is None or a_stream + b < best:
                            best, meet = a_stream + b, key
                            best_ab = (a_stream, b)
                        break
        else:
            hits = stream_level_intersect(
                bwd, fwd.acc, corner_budget=bwd.depth() + 1)
            b_stream = bwd.depth() + 1
            if verbose:
                print(f"  stream B{b_stream} vs F<= {fwd.depth()}: "
                      f"{len(hits)} hits", flush=True)
            for key, _src in hits:
                for a in range(fwd.depth() + 1):
                    if _sorted_isin(np.array([key], dtype=np.uint64),
                                    fwd.levels[a])[0]:
                        if best is None or a + b_stream < best:
                            best, meet = a + b_stream, key
                            best_ab = (a, b_stream)
                        break
    return {
        "m": best,
        "meet": meet,
        "split": best_ab,
        "profile": profile,
        "f_depth": fwd.depth(),
        "b_depth": bwd.depth(),
    }
