"""Command-line front door: build boards, solve, verify, construct, render.

Exit status is nonzero for invalid input, budget exhaustion, or verification
failure.  "unsolvable" is a result, not an error: exit 0 with a status field.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import construct as construct_mod
from . import solver as solver_mod
from .board import Board, board_from_shorthand, hole_name, parse_hole
from .engine import (Position, Solution, reverse_solution, solution_from_text,
                     solution_to_text, verify_solution)
from .gf2 import is_null_class
from .render import (render_ascii, render_filmstrip_svg, render_graph_svg,
                     render_pattern_ascii, render_pattern_svg, render_svg)
from .sweeps import (BudgetExceeded, SweepGraphError, build_sweep_graph,
                     classify_convex, construct_super_sweep,
                     enumerate_max_sweep_endpoints, euler_verdict,
                     max_sweep_length, super_sweep_verdict)


def _board(text: str) -> Board:
    try:
        return board_from_shorthand(text)
    except (ValueError, OSError) as err:
        raise SystemExit(f"bad board {text!r}: {err}")


def _emit(args, payload: dict, text: str = None):
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2, sort_keys=True))
    elif text is not None:
        print(text)


def _write_or_print(args, content: str):
    if getattr(args, "output", None):
        Path(args.output).write_text(content)
        print(f"wrote {args.output}")
    else:
        print(content)


def _config(args) -> solver_mod.SearchConfig:
    return solver_mod.SearchConfig(
        node_budget=getattr(args, "budget", None) or 200_000_000,
        use_symmetry=not getattr(args, "no_symmetry", False),
    )


def cmd_board(args):
    board = _board(args.board)
    corners = [(hole_name(c.hole), c.interior_angle) for c in board.corners()] \
        if board.boundary else []
    payload = {
        "shape": board.shape,
        "holes": board.size,
        "hole_names": [hole_name(h) for h in board.order],
        "corners": corners,
        "symmetry_order": len(board.symmetries()),
        "null_class": is_null_class(board),
    }
    _emit(args, payload,
          f"{board.shape}: {board.size} holes, "
          f"{len(board.symmetries())} symmetries, corners "
          f"{['%s:%d' % c for c in corners]}, "
          f"null-class={payload['null_class']}\n"
          + render_ascii(Position.full(board)))
    return 0


def cmd_solve(args):
    board = _board(args.board)
    vacancy = parse_hole(args.vacancy)
    start = Position.full_minus(board, vacancy)
    config = _config(args)
    if args.sweep_finish:
        length, pattern = max_sweep_length(board)
        if length != args.sweep_finish:
            raise SystemExit(f"maximal sweep on {board.shape} has length "
                             f"{length}, not {args.sweep_finish}")
        finish = parse_hole(args.finish) if args.finish else None
        outcome = solver_mod.solve_sweep_finish(
            board, vacancy, pattern, args.k, finish=finish, config=config)
    else:
        goal = parse_hole(args.finish) if args.finish else "any"
        outcome = solver_mod.solve(board, start, goal, config)
    payload = {"status": outcome.status,
               "nodes": outcome.stats.nodes}
    if outcome.solved:
        payload["moves"] = [str(m) for m in outcome.solution.moves]
        payload["move_count"] = len(outcome.solution.moves)
        payload["jump_count"] = outcome.solution.jump_count
        text = solution_to_text(outcome.solution)
        if args.output:
            Path(args.output).write_text(text)
        _emit(args, payload, text.rstrip())
        return 0
    _emit(args, payload, outcome.status)
    return 1 if outcome.status == "budget_exhausted" else 0


def cmd_sweep(args):
    board = _board(args.board)
    payload = {}
    lines = []
    verdict = super_sweep_verdict(board)
    payload["super_sweep"] = {
        "feasible": verdict.feasible,
        "reason": verdict.reason,
        "odd_degree_vertices": [hole_name(v) for v in verdict.odd_vertices],
        "closed": verdict.closed,
    }
    lines.append(f"super-sweep: {'feasible' if verdict.feasible else verdict.reason}")
    if verdict.feasible:
        pattern = construct_super_sweep(board)
        payload["super_sweep"]["length"] = pattern.length
        payload["super_sweep"]["move"] = str(pattern)
        lines.append(f"  length {pattern.length}: {pattern}")
        lines.append(render_pattern_ascii(pattern))
    if args.max:
        try:
            length, pattern = max_sweep_length(board,
                                               node_budget=args.budget
                                               or 50_000_000)
        except BudgetExceeded:
            raise SystemExit("max-sweep search exceeded its node budget")
        payload["max_sweep"] = {"length": length,
                                "move": str(pattern) if pattern else None}
        lines.append(f"maximal sweep: {length}"
                     + (f" ({pattern})" if pattern else ""))
    if args.endpoints:
        res = enumerate_max_sweep_endpoints(board,
                                            node_budget=args.budget
                                            or 50_000_000)
        payload["max_sweep_endpoints"] = {
            "length": res.length,
            "representatives": [[hole_name(a), hole_name(b)]
                                for a, b in res.representatives],
            "all_pairs": [[hole_name(a), hole_name(b)]
                          for a, b in res.all_pairs],
        }
        lines.append(f"maximal-sweep endpoints (up to symmetry): "
                     + ", ".join(f"{hole_name(a)}-{hole_name(b)}"
                                 for a, b in res.representatives))
    _emit(args, payload, "\n".join(lines))
    return 0


def cmd_minmoves(args):
    board = _board(args.board)
    vacancy = parse_hole(args.vacancy)
    finish = parse_hole(args.finish) if args.finish else vacancy
    if args.method == "bidirectional":
        if board.size > 64:
            raise SystemExit("bidirectional method needs <= 64 holes")
        from ._levels import min_moves_proved
        res = min_moves_proved(board, Position.full_minus(board, vacancy),
                               finish, args.max_moves)
        payload = {"minimum": res["m"], "split": list(res["split"]),
                   "proved_within": args.max_moves}
        if res["m"] is None:
            _emit(args, payload,
                  f"no solution within {args.max_moves} moves (proved)")
            return 0
        witness = solver_mod.reconstruct_witness(board, vacancy, finish, res)
        payload["moves"] = [str(m) for m in witness.moves]
        _emit(args, payload,
              f"minimum {res['m']} moves\n" + solution_to_text(witness).rstrip())
        return 0
    outcome = solver_mod.min_moves(board, vacancy, finish, _config(args),
                                   max_depth=args.max_moves)
    payload = {"status": outcome.status, "minimum": outcome.moves,
               "best_bound": outcome.best_bound}
    if outcome.solved:
        payload["moves"] = [str(m) for m in outcome.solution.moves]
        _emit(args, payload, f"minimum {outcome.moves} moves\n"
              + solution_to_text(outcome.solution).rstrip())
        return 0
    _emit(args, payload, f"{outcome.status} (best exhausted depth: "
          f"{outcome.best_bound})")
    return 1 if outcome.status == "budget_exhausted" else 0


def cmd_construct(args):
    i = args.i
    clearing = construct_mod.build_clearing_solution(i)
    finish = construct_mod.build_sweep_finish_solution(i)
    outdir = Path(args.outdir or ".")
    outdir.mkdir(parents=True, exist_ok=True)
    c_path = outdir / f"rhombus{6 * i}_clearing.txt"
    f_path = outdir / f"rhombus{6 * i}_sweep_finish.txt"
    c_path.write_text(solution_to_text(clearing))
    f_path.write_text(solution_to_text(finish))
    payload = {
        "board": f"rhombus {6 * i}",
        "clearing_moves": len(clearing.moves),
        "final_sweep": finish.moves[-1].sweep_length,
        "clearing_file": str(c_path),
        "sweep_finish_file": str(f_path),
    }
    if args.svg:
        strip = construct_mod.phase_boundary_positions(i)
        svg_path = outdir / f"rhombus{6 * i}_phases.svg"
        svg_path.write_text(render_filmstrip_svg(strip))
        payload["filmstrip"] = str(svg_path)
    _emit(args, payload,
          f"clearing: {len(clearing.moves)} moves -> {c_path}\n"
          f"sweep finish: final sweep {payload['final_sweep']} -> {f_path}")
    return 0


def cmd_classify(args):
    board = _board(args.board)
    verdict = super_sweep_verdict(board)
    payload = {
        "feasible": verdict.feasible,
        "reason": verdict.reason,
        "odd_degree_vertices": [hole_name(v) for v in verdict.odd_vertices],
    }
    if board.is_convex():
        payload["classification"] = classify_convex(board)
    text = (f"{board.shape}: "
            + (payload.get("classification") or "non-convex") + ", "
            + ("super-sweep feasible" if verdict.feasible
               else f"no super-sweep ({verdict.reason}"
                    + (f", {len(verdict.odd_vertices)} odd-degree nodes)"
                       if verdict.odd_vertices else ")")))
    _emit(args, payload, text)
    return 0


def cmd_census(args):
    board = _board(args.board)
    census = solver_mod.problem_census(board, _config(args),
                                       solve_problems=args.solve)
    lines = [f"{k}: {v['count']}  [{v['convention']}]"
             for k, v in census.items()]
    _emit(args, census, "\n".join(lines))
    return 0


def cmd_verify(args):
    text = Path(args.file).read_text()
    solution = solution_from_text(text)
    goal = parse_hole(args.goal) if args.goal else None
    report = verify_solution(solution, goal=goal)
    payload = {
        "ok": report.ok,
        "move_index": report.move_index,
        "jump_index": report.jump_index,
        "reason": report.reason,
        "moves": len(solution.moves),
        "jumps": solution.jump_count,
    }
    if report.ok:
        payload["final_pegs"] = report.final.peg_count()
        if report.final.peg_count() == 1:
            payload["final_cell"] = hole_name(report.final.holes_with_pegs()[0])
    _emit(args, payload,
          "ok" if report.ok else
          f"FAIL at move {report.move_index} jump {report.jump_index}: "
          f"{report.reason}")
    return 0 if report.ok else 1


def cmd_render(args):
    board = _board(args.board)
    if args.position:
        pos = Position.from_hex(board, args.position)
    elif args.vacancy:
        pos = Position.full_minus(board, parse_hole(args.vacancy))
    else:
        pos = Position.full(board)
    if args.graph:
        try:
            graph = build_sweep_graph(board)
        except SweepGraphError as err:
            raise SystemExit(str(err))
        _write_or_print(args, render_graph_svg(graph))
        return 0
    if args.solution:
        solution = solution_from_text(Path(args.solution).read_text())
        _write_or_print(args, render_filmstrip_svg(list(solution.positions())))
        return 0
    if args.svg:
        _write_or_print(args, render_svg(pos))
    else:
        _write_or_print(args, render_ascii(pos, labels=True))
    return 0


def cmd_serve(args):
    from .server import run_server
    run_server(host=args.host, port=args.port)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="tripeg",
        description="Peg solitaire on triangular-lattice boards: sweeps, "
                    "solvers, and the rhombus long-sweep construction.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn)
        sp.add_argument("--json", action="store_true",
                        help="machine-readable output")
        return sp

    sp = add("board", cmd_board, help="describe a board")
    sp.add_argument("board")

    sp = add("solve", cmd_solve, help="solve a single-vacancy problem")
    sp.add_argument("--board", required=True)
    sp.add_argument("--vacancy", required=True)
    sp.add_argument("--finish")
    sp.add_argument("--sweep-finish", type=int, default=0,
                    help="require a maximal sweep of this length")
    sp.add_argument("--k", type=int, default=1,
                    help="sweep position from the end (1 = last move)")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--no-symmetry", action="store_true")
    sp.add_argument("-o", "--output")

    sp = add("sweep", cmd_sweep, help="super-sweep and maximal-sweep analysis")
    sp.add_argument("--board", required=True)
    sp.add_argument("--max", action="store_true")
    sp.add_argument("--endpoints", action="store_true")
    sp.add_argument("--budget", type=int)

    sp = add("minmoves", cmd_minmoves, help="minimal-move solution search")
    sp.add_argument("--board", required=True)
    sp.add_argument("--vacancy", required=True)
    sp.add_argument("--finish")
    sp.add_argument("--method", choices=["bidirectional", "iddfs"],
                    default="bidirectional")
    sp.add_argument("--max-moves", type=int, default=20)
    sp.add_argument("--budget", type=int)
    sp.add_argument("--no-symmetry", action="store_true")

    sp = add("construct", cmd_construct,
             help="build the Rhombus(6i) clearing and sweep-finish solutions")
    sp.add_argument("--i", type=int, required=True)
    sp.add_argument("--outdir")
    sp.add_argument("--svg", action="store_true")

    sp = add("classify", cmd_classify, help="convex-board classification")
    sp.add_argument("--board", required=True)

    sp = add("census", cmd_census, help="problem counts under conventions")
    sp.add_argument("--board", required=True)
    sp.add_argument("--solve", action="store_true")
    sp.add_argument("--budget", type=int)
    sp.add_argument("--no-symmetry", action="store_true")

    sp = add("verify", cmd_verify, help="verify a solution file")
    sp.add_argument("file")
    sp.add_argument("--goal")

    sp = add("render", cmd_render, help="ASCII or SVG diagrams")
    sp.add_argument("--board", required=True)
    sp.add_argument("--vacancy")
    sp.add_argument("--position", help="hex bitboard")
    sp.add_argument("--solution", help="solution file to draw as a filmstrip")
    sp.add_argument("--graph", action="store_true",
                    help="draw the super-sweep graph")
    sp.add_argument("--svg", action="store_true")
    sp.add_argument("-o", "--output")

    sp = add("serve", cmd_serve, help="JSON-over-HTTP interface")
    sp.add_argument("--host", default="127.0.0.1")
    sp.add_argument("--port", type=int, default=8000)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.fn(args)
    except BudgetExceeded as err:
        print(f"budget exhausted: {err}", file=sys.stderr)
        return 2
    except (ValueError, OSError) as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
