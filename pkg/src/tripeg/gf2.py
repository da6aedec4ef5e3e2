"""GF(2) position-class algebra for peg solitaire boards.

Each jump flips exactly three holes (source, jumped, landing), so as a GF(2)
vector over the board's holes every jump is a weight-3 row.  Two positions are
interconvertible by jumps and un-jumps only if they differ by an element of
the span J of these rows; reducing (p XOR q) against a row basis of J decides
that in O(rank) big-int XORs.

A board is null-class when the all-ones vector lies in J: exactly then every
position is in the same class as its complement, which is the necessary
condition for complement problems to be solvable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .board import Board
from .engine import Position


@dataclass(frozen=True)
class ClassBasis:
    """Row-reduced basis of the span of all jump triples over GF(2).

    Rows are int bitsets in board hole order; pivots maps a pivot bit index
    to its basis row.
    """

    board: Board = field(repr=False)
    pivots: dict = field(repr=False)  # highest set bit -> row

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def reduce(self, vec: int) -> int:
        """Reduce a hole-set vector against the basis."""
        pivots = self.pivots
        while vec:
            top = vec.bit_length() - 1
            row = pivots.get(top)
            if row is None:
                return vec
            vec ^= row
        return 0

    def contains(self, vec: int) -> bool:
        return self.reduce(vec) == 0


def class_basis(board: Board) -> ClassBasis:
    """Build the row-reduced basis of the jump-triple span."""
    cached = getattr(board, "_class_basis", None)
    if cached is not None:
        return cached
    pivots = {}
    idx = board.index
    seen = set()
    for f, o, t in board.jumps:
        key = frozenset((f, o, t))
        if key in seen:  # the reverse jump flips the same three holes
            continue
        seen.add(key)
        vec = (1 << idx[f]) | (1 << idx[o]) | (1 << idx[t])
        while vec:
            top = vec.bit_length() - 1
            row = pivots.get(top)
            if row is None:
                pivots[top] = vec
                break
            vec ^= row
    basis = ClassBasis(board, pivots)
    board._class_basis = basis
    return basis


def is_null_class(board: Board) -> bool:
    """True iff the all-ones vector is in the jump-triple span."""
    return class_basis(board).contains(board.full_mask)


def same_class(p: Position, q: Position) -> bool:
    """True iff p and q differ by an element of the jump span."""
    if p.board != q.board:
        raise ValueError("positions on different boards")
    return class_basis(p.board).contains(p.pegs ^ q.pegs)


def feasible_single_finishes(p: Position) -> list:
    """All holes w with single-peg-at-w in the same class as p."""
    basis = class_basis(p.board)
    return [h for i, h in enumerate(p.board.order)
            if basis.contains(p.pegs ^ (1 << i))]
