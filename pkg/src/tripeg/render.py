"""ASCII and SVG diagrams of boards, positions, sweeps and sweep graphs.

ASCII draws the axial layout with row 1 at the top; the E/W axis is
horizontal and the N and NE steps are the two down diagonals.  SVG uses the
true lattice embedding (all six unit steps the same length).
"""

from __future__ import annotations

import math
from typing import Iterable, Optional

from .board import Board, Hole, hole_name
from .engine import Position
from .sweeps import SweepGraph, SweepPattern


def render_ascii(position: Position, marks: Optional[dict] = None,
                 labels: bool = False) -> str:
    """Text diagram; marks maps holes to single characters overriding pegs."""
    board = position.board
    marks = {Hole(*h): ch for h, ch in (marks or {}).items()}
    min_r = min(h.row for h in board.holes)
    max_r = max(h.row for h in board.holes)
    max_c = max(h.col for h in board.holes)
    lines = []
    for r in range(min_r, max_r + 1):
        row_holes = [h for h in board.order if h.row == r]
        width = 2 * (max_c + 1) - r + max_r + 2
        chars = [" "] * width
        for h in row_holes:
            x = 2 * h.col - h.row + max_r
            if h in marks:
                chars[x] = marks[h]
            else:
                chars[x] = "o" if position.has_peg(h) else "."
        line = "".join(chars).rstrip()
        if labels and row_holes:
            line = f"{line}  {r}"
        lines.append(line)
    return "\n".join(lines)


def render_pattern_ascii(pattern: SweepPattern) -> str:
    """Sweep pattern: S start, E end, * swept pegs, . untouched holes."""
    marks = {h: "*" for h in pattern.swept}
    marks[pattern.start] = "S"
    marks[pattern.end] = "E" if pattern.end != pattern.start else "S"
    return render_ascii(pattern.position(), marks)


def _xy(hole: Hole, scale: float = 36.0):
    x = hole.col - hole.row / 2.0
    y = hole.row * math.sqrt(3) / 2.0
    return x * scale, y * scale


def _viewbox(board: Board, scale: float = 36.0, pad: float = 28.0):
    xs, ys = zip(*(_xy(h, scale) for h in board.order))
    return (min(xs) - pad, min(ys) - pad,
            max(xs) - min(xs) + 2 * pad, max(ys) - min(ys) + 2 * pad)


def _svg_header(board: Board, scale: float = 36.0):
    x0, y0, w, h = _viewbox(board, scale)
    return (f'<svg xmlns="http://www.w3.org/2000/svg" '
            f'viewBox="{x0:.1f} {y0:.1f} {w:.1f} {h:.1f}" '
            f'width="{w:.0f}" height="{h:.0f}">')


def render_svg(position: Position, marks: Optional[dict] = None,
               labels: bool = True, scale: float = 36.0) -> str:
    """SVG diagram of a position; marks maps holes to fill colors."""
    board = position.board
    marks = {Hole(*h): color for h, color in (marks or {}).items()}
    out = [_svg_header(board, scale)]
    r_hole = scale * 0.38
    for h in board.order:
        x, y = _xy(h, scale)
        if h in marks:
            fill = marks[h]
        elif position.has_peg(h):
            fill = "#2b6cb0"
        else:
            fill = "#ffffff"
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{r_hole:.1f}" '
                   f'fill="{fill}" stroke="#444" stroke-width="1.5"/>')
        if labels:
            out.append(f'<text x="{x:.1f}" y="{y + r_hole + 11:.1f}" '
                       f'font-size="{scale * 0.26:.0f}" text-anchor="middle" '
                       f'fill="#666">{hole_name(h)}</text>')
    out.append("</svg>")
    return "\n".join(out)


def render_pattern_svg(pattern: SweepPattern, scale: float = 36.0) -> str:
    """Sweep pattern with the mover's path drawn through the jumps."""
    marks = {pattern.start: "#38a169"}
    svg = render_svg(pattern.position(), marks, labels=False, scale=scale)
    pts = " ".join(f"{x:.1f},{y:.1f}"
                   for x, y in (_xy(h, scale) for h in pattern.as_move().path()))
    poly = (f'<polyline points="{pts}" fill="none" stroke="#e53e3e" '
            f'stroke-width="2.5" stroke-opacity="0.8"/>')
    return svg.replace("</svg>", poly + "\n</svg>")


def render_graph_svg(graph: SweepGraph, scale: float = 36.0) -> str:
    """Sweep graph: vertices (odd degree highlighted), candidate-jump edges."""
    board = graph.board
    out = [_svg_header(board, scale)]
    for h in board.order:
        x, y = _xy(h, scale)
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" r="{scale * 0.1:.1f}" '
                   f'fill="#ccc"/>')
    for v, w, mid in graph.edges:
        x1, y1 = _xy(v, scale)
        x2, y2 = _xy(w, scale)
        out.append(f'<line x1="{x1:.1f}" y1="{y1:.1f}" x2="{x2:.1f}" '
                   f'y2="{y2:.1f}" stroke="#2b6cb0" stroke-width="2"/>')
    odd = set(graph.odd_vertices())
    for v in graph.vertices:
        x, y = _xy(v, scale)
        color = "#e53e3e" if v in odd else "#2f855a"
        out.append(f'<circle cx="{x:.1f}" cy="{y:.1f}" '
                   f'r="{scale * 0.24:.1f}" fill="{color}"/>')
    out.append("</svg>")
    return "\n".join(out)


def render_filmstrip_svg(positions: Iterable[Position], per_row: int = 4,
                         scale: float = 22.0) -> str:
    """Grid of small position diagrams (phase boundaries, replays)."""
    positions = list(positions)
    if not positions:
        raise ValueError("nothing to draw")
    board = positions[0].board
    x0, y0, w, h = _viewbox(board, scale)
    cols = min(per_row, len(positions))
    rows = (len(positions) + cols - 1) // cols
    out = [f'<svg xmlns="http://www.w3.org/2000/svg" '
           f'viewBox="0 0 {cols * w:.0f} {rows * h:.0f}" '
           f'width="{cols * w:.0f}" height="{rows * h:.0f}">']
    for i, pos in enumerate(positions):
        dx = (i % cols) * w - x0
        dy = (i // cols) * h - y0
        out.append(f'<g transform="translate({dx:.1f},{dy:.1f})">')
        body = render_svg(pos, labels=False, scale=scale)
        out.append(body[body.index(">") + 1:-len("</svg>")])
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out)
