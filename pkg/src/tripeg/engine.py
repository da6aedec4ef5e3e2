"""Positions, jumps, multi-jump moves, replay verification and time reversal.

A jump is one peg hopping over an adjacent peg into the empty hole beyond,
removing the jumped peg.  A move is one or more consecutive jumps by the same
peg; a move of k jumps captures k pegs (a sweep of length k).  Moves are
written in dash notation as the start and landing cells of their jumps:
a1-c1-c3.

Playing backward from a position is equivalent to playing forward from its
complement, so reversing a verified solution yields a verified solution from
the complement of its final position.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, NamedTuple, Optional

from .board import Board, Hole, hole_name, parse_hole, board_from_text


class Jump(NamedTuple):
    src: Hole
    over: Hole
    dst: Hole


@dataclass(frozen=True)
class Move:
    """A chain of jumps by one peg.  sweep_length == number of pegs captured."""

    jumps: tuple

    def __post_init__(self):
        if not self.jumps:
            raise ValueError("a move needs at least one jump")
        for a, b in zip(self.jumps, self.jumps[1:]):
            if a.dst != b.src:
                raise ValueError(f"broken chain: {a} then {b}")

    @property
    def sweep_length(self) -> int:
        return len(self.jumps)

    @property
    def src(self) -> Hole:
        return self.jumps[0].src

    @property
    def dst(self) -> Hole:
        return self.jumps[-1].dst

    @property
    def captures(self) -> list:
        return [j.over for j in self.jumps]

    def path(self) -> list:
        return [self.jumps[0].src] + [j.dst for j in self.jumps]

    def to_dash(self) -> str:
        return "-".join(hole_name(h) for h in self.path())

    def __str__(self):
        return self.to_dash()


def move_from_cells(cells) -> Move:
    """Build a Move from the mover's cell path (dash-notation cells)."""
    cells = [Hole(*c) for c in cells]
    if len(cells) < 2:
        raise ValueError("a move needs at least two cells")
    jumps = []
    for a, b in zip(cells, cells[1:]):
        dc, dr = b.col - a.col, b.row - a.row
        if (dc, dr) not in ((2, 0), (-2, 0), (0, 2), (0, -2), (2, 2), (-2, -2)):
            raise ValueError(f"{hole_name(a)}-{hole_name(b)} is not a jump")
        jumps.append(Jump(a, Hole(a.col + dc // 2, a.row + dr // 2), b))
    return Move(tuple(jumps))


def move_from_dash(text: str) -> Move:
    return move_from_cells([parse_hole(t) for t in text.strip().split("-")])


@dataclass(frozen=True)
class Position:
    """A bitset of pegs over a board's holes (bit i = board.order[i])."""

    board: Board
    pegs: int

    def __post_init__(self):
        if self.pegs & ~self.board.full_mask:
            raise ValueError("pegs outside the board")

    # -- constructors -------------------------------------------------
    @classmethod
    def full(cls, board: Board) -> "Position":
        return cls(board, board.full_mask)

    @classmethod
    def full_minus(cls, board: Board, hole) -> "Position":
        return cls(board, board.full_mask ^ board.bit(hole))

    @classmethod
    def single(cls, board: Board, hole) -> "Position":
        return cls(board, board.bit(hole))

    @classmethod
    def from_holes(cls, board: Board, holes: Iterable) -> "Position":
        return cls(board, board.mask(holes))

    # -- queries -------------------------------------------------------
    def peg_count(self) -> int:
        return bin(self.pegs).count("1")

    def has_peg(self, hole) -> bool:
        return bool(self.pegs & self.board.bit(hole))

    def holes_with_pegs(self) -> list:
        return [h for h in self.board.order if self.pegs & (1 << self.board.index[h])]

    def complement(self) -> "Position":
        return Position(self.board, self.pegs ^ self.board.full_mask)

    def to_hex(self) -> str:
        return format(self.pegs, "x")

    @classmethod
    def from_hex(cls, board: Board, text: str) -> "Position":
        return cls(board, int(text, 16))

    def __str__(self):
        return f"Position({self.board.shape}, {self.peg_count()} pegs)"


class IllegalJumpError(ValueError):
    """A jump in a move was illegal; carries the jump index within the move."""

    def __init__(self, index: int, jump: Jump, reason: str):
        self.index = index
        self.jump = jump
        self.reason = reason
        super().__init__(f"jump {index} ({Move((jump,)).to_dash()}): {reason}")


def _jump_bits(board: Board):
    """Cached (src_bit, over_bit, dst_bit) table for the board's jumps."""
    table = getattr(board, "_jump_bit_table", None)
    if table is None:
        idx = board.index
        table = tuple((1 << idx[f], 1 << idx[o], 1 << idx[t], Jump(f, o, t))
                      for f, o, t in board.jumps)
        board._jump_bit_table = table
    return table


def legal_jumps(position: Position) -> list:
    """All jumps (src, over, dst) with pegs at src and over, dst empty."""
    pegs = position.pegs
    out = []
    for fb, ob, tb, jump in _jump_bits(position.board):
        if (pegs & fb) and (pegs & ob) and not (pegs & tb):
            out.append(jump)
    return out


def jump_legal(position: Position, jump: Jump) -> Optional[str]:
    """None if legal, else a reason string."""
    board = position.board
    for h, want, what in ((jump.src, True, "source"), (jump.over, True, "over"),
                          (jump.dst, False, "landing")):
        if Hole(*h) not in board.holes:
            return f"{what} hole {hole_name(Hole(*h))} is off the board"
        if position.has_peg(h) != want:
            state = "empty" if want else "occupied"
            return f"{what} hole {hole_name(Hole(*h))} is {state}"
    return None


def apply_jump(position: Position, jump: Jump) -> Position:
    reason = jump_legal(position, jump)
    if reason:
        raise IllegalJumpError(0, jump, reason)
    b = position.board
    return Position(b, position.pegs ^ b.bit(jump.src) ^ b.bit(jump.over)
                    ^ b.bit(jump.dst))


def apply_move(position: Position, move: Move) -> Position:
    """Apply all jumps of a move; raises IllegalJumpError with the index."""
    pegs = position.pegs
    b = position.board
    for k, jump in enumerate(move.jumps):
        p = Position(b, pegs)
        reason = jump_legal(p, jump)
        if reason:
            raise IllegalJumpError(k, jump, reason)
        pegs ^= b.bit(jump.src) ^ b.bit(jump.over) ^ b.bit(jump.dst)
    return Position(b, pegs)


def undo_move(position: Position, move: Move) -> Position:
    """Inverse of apply_move: undo_move(apply_move(p, m), m) == p."""
    pegs = position.pegs
    b = position.board
    for k, jump in reversed(list(enumerate(move.jumps))):
        fb, ob, tb = b.bit(jump.src), b.bit(jump.over), b.bit(jump.dst)
        if not (pegs & tb) or (pegs & ob) or (pegs & fb):
            raise IllegalJumpError(k, jump, "cannot un-jump here")
        pegs ^= fb | ob | tb
    return Position(b, pegs)


def legal_moves(position: Position, max_len: Optional[int] = None) -> list:
    """All moves (every non-empty chain prefix) from a position.

    Distinct jump sequences are distinct moves even when they capture the
    same pegs; callers doing search should dedupe resulting positions.
    """
    out = []
    b = position.board

    def extend(pegs, at, jumps):
        if max_len is not None and len(jumps) >= max_len:
            return
        for d in b.neighbors[at]:
            over = b.neighbors[at][d]
            dst = Hole(at.col + 2 * d[0], at.row + 2 * d[1])
            if dst not in b.holes:
                continue
            ob, tb = b.bit(over), b.bit(dst)
            if (pegs & ob) and not (pegs & tb):
                jump = Jump(at, over, dst)
                nxt = pegs ^ b.bit(at) ^ ob ^ tb
                out.append(Move(tuple(jumps + [jump])))
                extend(nxt, dst, jumps + [jump])

    for src in position.holes_with_pegs():
        extend(position.pegs, src, [])
    return out


# ---------------------------------------------------------------------------
# Solutions


@dataclass(frozen=True)
class Solution:
    board: Board
    start: Position
    moves: tuple

    def __post_init__(self):
        if self.start.board != self.board:
            raise ValueError("start position is on a different board")

    @property
    def jump_count(self) -> int:
        return sum(m.sweep_length for m in self.moves)

    def final(self) -> Position:
        p = self.start
        for m in self.moves:
            p = apply_move(p, m)
        return p

    def positions(self):
        """Yield the position before each move and the final position."""
        p = self.start
        yield p
        for m in self.moves:
            p = apply_move(p, m)
            yield p


class VerifyReport(NamedTuple):
    ok: bool
    move_index: Optional[int]
    jump_index: Optional[int]
    reason: Optional[str]
    final: Optional[Position]

    def __bool__(self):
        return self.ok


def verify_solution(solution: Solution, goal=None) -> VerifyReport:
    """Replay every jump; never raises.

    goal: optional finishing cell; when given, the final position must be a
    single peg at that cell.
    """
    p = solution.start
    for mi, move in enumerate(solution.moves):
        try:
            p = apply_move(p, move)
        except IllegalJumpError as err:
            return VerifyReport(False, mi, err.index, err.reason, None)
    if goal is not None:
        want = Position.single(solution.board, goal)
        if p.pegs != want.pegs:
            return VerifyReport(False, None, None,
                                f"final position is not a single peg at "
                                f"{hole_name(Hole(*goal))}", p)
    return VerifyReport(True, None, None, None, p)


def regroup_jumps(jumps) -> tuple:
    """Group a jump sequence into moves: consecutive jumps by the same peg
    (each starting where the previous landed) form one move."""
    moves = []
    chain = []
    for j in jumps:
        if chain and chain[-1].dst == j.src:
            chain.append(j)
        else:
            if chain:
                moves.append(Move(tuple(chain)))
            chain = [j]
    if chain:
        moves.append(Move(tuple(chain)))
    return tuple(moves)


def reverse_solution(solution: Solution) -> Solution:
    """Time-reverse a verified solution.

    Backward play from a position is forward play from its complement, and
    un-doing the jump (src, over, dst) corresponds, on complements, to
    playing that very jump again.  The reversed solution therefore starts
    from the complement of the input's final position and plays the same
    jumps in reverse order; consecutive jumps by one peg are re-grouped
    into moves (a reversed sweep generally falls apart into single jumps).
    """
    report = verify_solution(solution)
    if not report.ok:
        raise ValueError(f"cannot reverse an unverifiable solution: "
                         f"move {report.move_index} jump {report.jump_index}: "
                         f"{report.reason}")
    rev_jumps = [j for m in reversed(solution.moves)
                 for j in reversed(m.jumps)]
    start = report.final.complement()
    return Solution(solution.board, start, regroup_jumps(rev_jumps))


# ---------------------------------------------------------------------------
# Solution file format


def solution_to_text(solution: Solution) -> str:
    """One move per line in dash notation, after a board + start header."""
    lines = ["lattice tri", solution.board.shape]
    empty = solution.start.complement()
    if solution.start.peg_count() == solution.board.size - 1:
        (vac,) = empty.holes_with_pegs()
        lines.append(f"vacancy {hole_name(vac)}")
    else:
        lines.append(f"start-hex {solution.start.to_hex()}")
    lines.extend(m.to_dash() for m in solution.moves)
    return "\n".join(lines) + "\n"


def solution_from_text(text: str, board: Optional[Board] = None) -> Solution:
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.startswith("#")]
    if len(lines) < 3:
        raise ValueError("solution text too short")
    if board is None:
        board = board_from_text("\n".join(lines[:2]))
    key, _, arg = lines[2].partition(" ")
    if key == "vacancy":
        start = Position.full_minus(board, parse_hole(arg))
    elif key == "start-hex":
        start = Position.from_hex(board, arg)
    else:
        raise ValueError(f"expected 'vacancy' or 'start-hex', got {lines[2]!r}")
    moves = tuple(move_from_dash(ln) for ln in lines[3:])
    return Solution(board, start, moves)
