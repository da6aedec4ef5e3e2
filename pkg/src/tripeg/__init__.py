"""Peg solitaire on triangular-lattice boards: engine, sweep analysis,
solvers, and the inductive long-sweep construction on rhombus boards."""

from .board import (
    Board,
    CornerInfo,
    Hole,
    Symmetry,
    board_from_shorthand,
    board_from_text,
    hole_name,
    make_hexagon,
    make_parallelogram,
    make_polygon,
    make_rhombus,
    make_star,
    make_trapezoid,
    make_triangle,
    parse_hole,
)
from .engine import (
    IllegalJumpError,
    Jump,
    Move,
    Position,
    Solution,
    VerifyReport,
    apply_jump,
    apply_move,
    legal_jumps,
    legal_moves,
    move_from_cells,
    move_from_dash,
    regroup_jumps,
    reverse_solution,
    solution_from_text,
    solution_to_text,
    undo_move,
    verify_solution,
)
from .gf2 import (
    ClassBasis,
    class_basis,
    feasible_single_finishes,
    is_null_class,
    same_class,
)

__version__ = "0.1.0"
