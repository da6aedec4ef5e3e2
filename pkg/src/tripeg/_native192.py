"""Move-bounded exact-target search for boards up to 192 holes.

Positions are three uint64 limbs.  Used by the phase-derivation searches of
the inductive constructor (Rhombus(12) has 144 holes) and usable for any
mid-sized board.  Supports forbidding captures of protected cells and an
optional cap on captures per move for bound pruning.
"""

from __future__ import annotations

import numpy as np
from numba import njit, uint64

from .engine import Jump, Position, regroup_jumps

_M1 = uint64(0x9E3779B97F4A7C15)
_M2 = uint64(0xC2B2AE3D27D4EB4F)
_M3 = uint64(0x165667B19E3779F9)


def _tables192(board):
    cached = getattr(board, "_native192_tables", None)
    if cached is not None:
        return cached
    if board.size > 192:
        raise ValueError("3-limb backend supports at most 192 holes")
    nj = len(board.jumps)
    order = sorted(range(nj), key=lambda k: board.index[board.jumps[k][0]])
    fo = np.zeros((nj, 3), dtype=np.uint64)
    tb = np.zeros((nj, 3), dtype=np.uint64)
    ov = np.zeros((nj, 3), dtype=np.uint64)
    src = np.zeros(nj, dtype=np.int64)
    dst = np.zeros(nj, dtype=np.int64)
    for out_i, k in enumerate(order):
        f, o, t = board.jumps[k]
        for h, arr in ((f, fo), (o, fo), (t, tb), (o, ov)):
            idx = board.index[h]
            arr[out_i, idx >> 6] |= np.uint64(1 << (idx & 63))
        src[out_i] = board.index[f]
        dst[out_i] = board.index[t]
    starts = np.zeros(board.size + 1, dtype=np.int64)
    for i in range(nj):
        starts[src[i] + 1] += 1
    starts = np.cumsum(starts).astype(np.int64)
    jumps = tuple(Jump(*board.jumps[k]) for k in order)
    cached = (fo, tb, ov, src, dst, starts, jumps)
    board._native192_tables = cached
    return cached


def split_limbs(pegs: int):
    mask = (1 << 64) - 1
    return (np.uint64(pegs & mask), np.uint64((pegs >> 64) & mask),
            np.uint64((pegs >> 128) & mask))


@njit(cache=True)
def _pc3(a, b, c):
    total = 0
    for x in (a, b, c):
        x = x - ((x >> uint64(1)) & uint64(0x5555555555555555))
        x = (x & uint64(0x3333333333333333)) + ((x >> uint64(2))
                                                & uint64(0x3333333333333333))
        x = (x + (x >> uint64(4))) & uint64(0x0F0F0F0F0F0F0F0F)
        total += int((x * uint64(0x0101010101010101)) >> uint64(56))
    return total


@njit(cache=True)
def _target_kernel(s0, s1, s2, t0, t1, t2, fo, tb, ok_jump, src, dst, starts,
                   depth, max_caps, keys0, keys1, keys2, kmover, kval,
                   budget, path):
    """Depth-limited (by move count) DFS to the exact target position.

    ok_jump masks out jumps capturing protected cells.  max_caps bounds the
    captures of any single move for the feasibility prune (<= 0 disables).
    Returns (found, nodes, njumps, budget_hit).
    """
    nj = len(src)
    max_d = 200
    p0 = np.zeros(max_d, dtype=np.uint64)
    p1 = np.zeros(max_d, dtype=np.uint64)
    p2 = np.zeros(max_d, dtype=np.uint64)
    mover = np.zeros(max_d, dtype=np.int64)
    left = np.zeros(max_d, dtype=np.int64)
    cursor = np.zeros(max_d, dtype=np.int64)
    phase = np.zeros(max_d, dtype=np.int64)
    cap = uint64(len(kval) - 1)
    target_pc = _pc3(t0, t1, t2)
    p0[0], p1[0], p2[0] = s0, s1, s2
    mover[0] = -1
    left[0] = depth
    cursor[0] = 0
    phase[0] = 1
    sp = 0
    nodes = 0
    while sp >= 0:
        a0, a1, a2 = p0[sp], p1[sp], p2[sp]
        mv = mover[sp]
        ml = left[sp]
        if cursor[sp] == 0 and (phase[sp] == 0 or mv < 0):
            nodes += 1
            if nodes > budget:
                return False, nodes, 0, True
            if a0 == t0 and a1 == t1 and a2 == t2:
                return True, nodes, sp, False
            need = _pc3(a0, a1, a2) - target_pc
            limit = ml
            if mv >= 0:
                limit += 1
            bad = need <= 0 or limit <= 0
            if not bad and max_caps > 0 and need > limit * max_caps:
                bad = True
            if bad:
                sp -= 1
                continue
            h = ((a0 * _M1) ^ (a1 * _M2) ^ (a2 * _M3)
                 ^ (uint64(mv + 2) * _M1)) & cap
            hit = False
            for _ in range(8):
                if (keys0[h] == a0 and keys1[h] == a1 and keys2[h] == a2
                        and kmover[h] == mv):
                    if kval[h] >= ml:
                        hit = True
                    break
                if keys0[h] == uint64(0) and keys1[h] == uint64(0) \
                        and keys2[h] == uint64(0) and kmover[h] == 0:
                    break
                h = (h + uint64(1)) & cap
            if hit:
                sp -= 1
                continue
        advanced = False
        while not advanced:
            j = cursor[sp]
            if phase[sp] == 0:
                hi = starts[mv + 1]
                if j == 0:
                    j = starts[mv]
                while j < hi:
                    if ok_jump[j] \
                       and (a0 & fo[j, 0]) == fo[j, 0] \
                       and (a1 & fo[j, 1]) == fo[j, 1] \
                       and (a2 & fo[j, 2]) == fo[j, 2] \
                       and not (a0 & tb[j, 0]) and not (a1 & tb[j, 1]) \
                       and not (a2 & tb[j, 2]):
                        cursor[sp] = j + 1
                        path[sp] = j
                        sp += 1
                        p0[sp] = a0 ^ fo[j, 0] ^ tb[j, 0]
                        p1[sp] = a1 ^ fo[j, 1] ^ tb[j, 1]
                        p2[sp] = a2 ^ fo[j, 2] ^ tb[j, 2]
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
            if ml <= 0:
                break
            while j < nj:
                if ok_jump[j] \
                   and (a0 & fo[j, 0]) == fo[j, 0] \
                   and (a1 & fo[j, 1]) == fo[j, 1] \
                   and (a2 & fo[j, 2]) == fo[j, 2] \
                   and not (a0 & tb[j, 0]) and not (a1 & tb[j, 1]) \
                   and not (a2 & tb[j, 2]):
                    cursor[sp] = j + 1
                    path[sp] = j
                    sp += 1
                    p0[sp] = a0 ^ fo[j, 0] ^ tb[j, 0]
                    p1[sp] = a1 ^ fo[j, 1] ^ tb[j, 1]
                    p2[sp] = a2 ^ fo[j, 2] ^ tb[j, 2]
                    mover[sp] = dst[j]
                    left[sp] = ml - 1
                    cursor[sp] = 0
                    phase[sp] = 0
                    advanced = True
                    break
                j += 1
            break
        if not advanced:
            h = ((a0 * _M1) ^ (a1 * _M2) ^ (a2 * _M3)
                 ^ (uint64(mv + 2) * _M1)) & cap
            slot = h
            match = False
            for _ in range(8):
                if (keys0[slot] == a0 and keys1[slot] == a1
                        and keys2[slot] == a2 and kmover[slot] == mv):
                    match = True
                    break
                if keys0[slot] == uint64(0) and keys1[slot] == uint64(0) \
                        and keys2[slot] == uint64(0) and kmover[slot] == 0:
                    break
                slot = (slot + uint64(1)) & cap
            if match:
                if kval[slot] < ml:
                    kval[slot] = ml
            else:
                keys0[slot] = a0
                keys1[slot] = a1
                keys2[slot] = a2
                kmover[slot] = mv
                kval[slot] = ml
            sp -= 1
    return False, nodes, 0, False


def solve_to_target(board, start: Position, target: Position, depth: int,
                    protected: int = 0, frozen: int = 0, max_caps: int = 0,
                    node_budget: int = 2_000_000_000,
                    table_bits: int = 24):
    """Find a move sequence (at most `depth` moves) from start to exactly
    `target`; returns (Solution or None, nodes, budget_hit).

    `protected` is a peg bitmask whose cells may never be captured (they may
    be vacated and re-entered by movers); `frozen` additionally forbids
    moves starting there (a stronger, possibly incomplete restriction used
    to focus template derivation).
    """
    fo, tb, ov, src, dst, starts, jumps = _tables192(board)
    nj = len(jumps)
    ok_jump = np.ones(nj, dtype=np.bool_)
    if protected or frozen:
        pr = split_limbs(protected)
        for j in range(nj):
            if (int(ov[j, 0]) & int(pr[0])) or (int(ov[j, 1]) & int(pr[1])) \
                    or (int(ov[j, 2]) & int(pr[2])):
                ok_jump[j] = False
            elif frozen and (frozen >> (int(src[j]))) & 1:
                ok_jump[j] = False
    cap = 1 << table_bits
    keys0 = np.zeros(cap, dtype=np.uint64)
    keys1 = np.zeros(cap, dtype=np.uint64)
    keys2 = np.zeros(cap, dtype=np.uint64)
    kmover = np.zeros(cap, dtype=np.int64)
    kval = np.full(cap, -1, dtype=np.int64)
    path = np.zeros(220, dtype=np.int64)
    s = split_limbs(start.pegs)
    t = split_limbs(target.pegs)
    found, nodes, njumps, budget_hit = _target_kernel(
        s[0], s[1], s[2], t[0], t[1], t[2], fo, tb, ok_jump, src, dst,
        starts, depth, max_caps, keys0, keys1, keys2, kmover, kval,
        node_budget, path)
    if not found:
        return None, int(nodes), budget_hit
    jump_path = [jumps[path[d]] for d in range(njumps)]
    from .engine import Solution, verify_solution
    sol = Solution(board, start, regroup_jumps(jump_path))
    report = verify_solution(sol)
    assert report.ok and report.final.pegs == target.pegs
    return sol, int(nodes), budget_hit
