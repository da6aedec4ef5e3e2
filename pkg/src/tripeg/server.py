"""JSON-over-HTTP interface for the engine (used by the web UI).

Positions travel as board shorthand plus a hex bitset (bit i = hole i in
row-major order); moves in dash notation.  Long searches run as background
jobs polled via /job/{id}; a hint job reports whether the position can be
reduced to one peg and suggests the first move of a found solution.
"""

from __future__ import annotations

import itertools
import threading
import uuid
from typing import Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from .board import board_from_shorthand, hole_name
from .engine import (IllegalJumpError, Position, apply_move, legal_jumps,
                     move_from_dash, solution_to_text)
from .gf2 import feasible_single_finishes
from .render import render_svg
from .solver import SearchConfig, solve
from .sweeps import max_sweep_length


class PositionRef(BaseModel):
    board: str
    position: str  # hex bitset


class MoveRequest(PositionRef):
    move: str  # dash notation


class GoalSpecModel(BaseModel):
    finish: str = "any"
    sweep_length: Optional[int] = None
    k: int = 1


class SolveRequest(PositionRef):
    goal: GoalSpecModel = Field(default_factory=GoalSpecModel)
    budget: int = 20_000_000


class HintRequest(PositionRef):
    budget: int = 20_000_000


def _load(ref: PositionRef) -> Position:
    try:
        board = board_from_shorthand(ref.board)
        return Position.from_hex(board, ref.position)
    except (ValueError, OSError) as err:
        raise HTTPException(status_code=400, detail=str(err))


class JobRegistry:
    def __init__(self):
        self.jobs = {}
        self.lock = threading.Lock()

    def submit(self, fn) -> str:
        job_id = uuid.uuid4().hex[:12]
        with self.lock:
            self.jobs[job_id] = {"status": "running", "result": None,
                                 "cancelled": False}

        def run():
            try:
                result = fn()
                with self.lock:
                    job = self.jobs[job_id]
                    job["status"] = ("cancelled" if job["cancelled"]
                                     else "done")
                    if not job["cancelled"]:
                        job["result"] = result
            except Exception as err:  # surfaced through the job record
                with self.lock:
                    self.jobs[job_id].update(status="failed",
                                             result={"error": str(err)})

        threading.Thread(target=run, daemon=True).start()
        return job_id

    def get(self, job_id: str) -> dict:
        with self.lock:
            job = self.jobs.get(job_id)
            if job is None:
                raise HTTPException(status_code=404, detail="no such job")
            return dict(job)

    def cancel(self, job_id: str):
        with self.lock:
            job = self.jobs.get(job_id)
            if job is None:
                raise HTTPException(status_code=404, detail="no such job")
            job["cancelled"] = True
            return {"status": job["status"], "cancelled": True}


def create_app() -> FastAPI:
    app = FastAPI(title="tripeg", version="0.1.0")
    registry = JobRegistry()

    @app.get("/board")
    def get_board(shape: str = "rhombus6"):
        try:
            board = board_from_shorthand(shape)
        except (ValueError, OSError) as err:
            raise HTTPException(status_code=400, detail=str(err))
        return {
            "shape": board.shape,
            "holes": [{"name": hole_name(h), "col": h.col, "row": h.row}
                      for h in board.order],
            "full": Position.full(board).to_hex(),
            "corners": [hole_name(c.hole) for c in board.corners()]
            if board.boundary else [],
        }

    @app.post("/position/moves")
    def position_moves(req: PositionRef):
        pos = _load(req)
        jumps = legal_jumps(pos)
        return {
            "jumps": [f"{hole_name(j.src)}-{hole_name(j.dst)}"
                      for j in jumps],
            "peg_count": pos.peg_count(),
        }

    @app.post("/position/apply")
    def position_apply(req: MoveRequest):
        pos = _load(req)
        try:
            move = move_from_dash(req.move)
            after = apply_move(pos, move)
        except IllegalJumpError as err:
            raise HTTPException(status_code=422,
                                detail=f"illegal move: {err}")
        except ValueError as err:
            raise HTTPException(status_code=400, detail=str(err))
        return {
            "position": after.to_hex(),
            "captured": [hole_name(h) for h in move.captures],
            "peg_count": after.peg_count(),
        }

    @app.post("/solve")
    def solve_endpoint(req: SolveRequest):
        pos = _load(req)
        board = pos.board
        goal = req.goal

        def work():
            config = SearchConfig(node_budget=req.budget)
            if goal.sweep_length:
                from .solver import solve_sweep_finish
                length, pattern = max_sweep_length(board)
                if length != goal.sweep_length:
                    return {"status": "unsolvable",
                            "detail": f"maximal sweep is {length}"}
                vac = pos.complement().holes_with_pegs()
                if len(vac) != 1:
                    return {"status": "unsolvable",
                            "detail": "sweep goals need a single vacancy"}
                finish = None if goal.finish == "any" else goal.finish
                outcome = solve_sweep_finish(
                    board, vac[0], pattern, goal.k,
                    finish=None if finish is None else _parse(finish),
                    config=config)
            else:
                target = "any" if goal.finish == "any" else _parse(goal.finish)
                outcome = solve(board, pos, target, config)
            result = {"status": outcome.status,
                      "nodes": outcome.stats.nodes}
            if outcome.solved:
                result["moves"] = [str(m) for m in outcome.solution.moves]
                result["solution_file"] = solution_to_text(outcome.solution)
            return result

        return {"job_id": registry.submit(work)}

    @app.post("/hint")
    def hint(req: HintRequest):
        pos = _load(req)
        board = pos.board

        def work():
            class_ok = bool(feasible_single_finishes(pos))
            if not class_ok:
                return {"solvable": "no", "reason": "class-infeasible"}
            outcome = solve(board, pos, "any",
                            SearchConfig(node_budget=req.budget))
            if outcome.solved:
                first = outcome.solution.moves[0] if outcome.solution.moves \
                    else None
                return {"solvable": "yes",
                        "move": str(first) if first else None}
            if outcome.status == "unsolvable":
                return {"solvable": "no", "reason": "search exhausted"}
            return {"solvable": "unknown", "reason": "budget exhausted"}

        return {"job_id": registry.submit(work)}

    @app.get("/job/{job_id}")
    def job_status(job_id: str):
        return registry.get(job_id)

    @app.post("/job/{job_id}/cancel")
    def job_cancel(job_id: str):
        return registry.cancel(job_id)

    @app.get("/render")
    def render(shape: str = "rhombus6", position: Optional[str] = None):
        try:
            board = board_from_shorthand(shape)
            pos = (Position.from_hex(board, position) if position
                   else Position.full(board))
        except (ValueError, OSError) as err:
            raise HTTPException(status_code=400, detail=str(err))
        return {"svg": render_svg(pos)}

    return app


def _parse(name):
    from .board import parse_hole
    return parse_hole(name)


def run_server(host: str = "127.0.0.1", port: int = 8000):
    import uvicorn
    uvicorn.run(create_app(), host=host, port=port, log_level="warning")
