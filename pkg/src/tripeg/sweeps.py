"""Sweep patterns, the super-sweep graph, Euler feasibility and maximal sweeps.

A sweep's jump endpoints all lie in one class of the index-4 sublattice
(doubling both coordinates preserves parity), and every hole is the midpoint
of at most one endpoint pair of a given class.  A sweep of length n is
therefore exactly a trail of n edges in the class graph whose vertices are
the board holes of one parity class and whose edges join vertices two steps
apart along an axis with the midpoint hole on the board.

A super-sweep touches every board hole, i.e. it is an Euler path of the graph
anchored at the corners' class that covers all midpoints and all vertices;
it exists iff the graph is connected with zero or two odd-degree vertices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple, Optional

from .board import Board, Hole, hole_name
from .engine import Jump, Move, Position, apply_move, legal_jumps


class BudgetExceeded(RuntimeError):
    """Search ran out of its node budget (not a result)."""


class SweepGraphError(ValueError):
    """The super-sweep graph is not well defined for this board."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        super().__init__(f"{reason}: {detail}" if detail else reason)


def parity_class(hole) -> tuple:
    return (hole[0] & 1, hole[1] & 1)


@dataclass(frozen=True)
class SweepGraph:
    """Candidate-jump graph over one parity class of board holes."""

    board: Board = field(repr=False)
    parity: tuple
    vertices: tuple                 # holes of the class, sorted
    edges: tuple                    # (v, w, midpoint) with v < w
    adjacency: dict = field(repr=False)   # vertex -> ((edge_id, other), ...)
    uncovered: tuple                # non-vertex holes that are no edge midpoint

    @property
    def degree(self) -> dict:
        return {v: len(self.adjacency[v]) for v in self.vertices}

    def odd_vertices(self) -> list:
        return [v for v in self.vertices if len(self.adjacency[v]) % 2]


class SuperSweepVerdict(NamedTuple):
    feasible: bool
    reason: Optional[str]     # None when feasible
    odd_vertices: tuple       # odd-degree vertices of the graph, when built
    endpoints: Optional[tuple]  # (start, end) when feasible; None for circuits
    closed: bool              # feasible as a closed circuit


def class_sweep_graph(board: Board, parity: tuple) -> SweepGraph:
    """Build the sweep graph for a given parity class of a board."""
    vertices = tuple(sorted(h for h in board.order if parity_class(h) == parity))
    vset = set(vertices)
    edges = []
    adjacency = {v: [] for v in vertices}
    covered = set()
    for v in vertices:
        for d in ((2, 0), (0, 2), (2, 2)):
            w = Hole(v.col + d[0], v.row + d[1])
            mid = Hole(v.col + d[0] // 2, v.row + d[1] // 2)
            if w in vset and mid in board.holes:
                eid = len(edges)
                edges.append((v, w, mid))
                adjacency[v].append((eid, w))
                adjacency[w].append((eid, v))
                covered.add(mid)
    uncovered = tuple(sorted(h for h in board.order
                             if parity_class(h) != parity and h not in covered))
    adjacency = {v: tuple(sorted(adjacency[v], key=lambda e: e[1]))
                 for v in vertices}
    return SweepGraph(board, parity, vertices, tuple(edges), adjacency, uncovered)


def build_sweep_graph(board: Board) -> SweepGraph:
    """Sweep graph anchored at the class containing the board corners.

    Raises SweepGraphError('corner-parity-mismatch') when the corners span
    more than one parity class (some board edge has an even hole count).
    """
    corners = board.corners()
    classes = {parity_class(c.hole) for c in corners}
    if len(classes) != 1:
        raise SweepGraphError(
            "corner-parity-mismatch",
            f"corners fall in {len(classes)} sublattice classes")
    return class_sweep_graph(board, classes.pop())


def euler_verdict(graph: SweepGraph) -> SuperSweepVerdict:
    """Super-sweep feasibility of a corner-anchored sweep graph."""
    odd = tuple(graph.odd_vertices())
    if graph.uncovered:
        return SuperSweepVerdict(False, "uncovered-midpoint", odd, None, False)
    # Connectivity over vertices; isolated vertices can never be touched.
    if any(not graph.adjacency[v] for v in graph.vertices):
        return SuperSweepVerdict(False, "disconnected", odd, None, False)
    seen = set()
    stack = [graph.vertices[0]]
    while stack:
        v = stack.pop()
        if v in seen:
            continue
        seen.add(v)
        stack.extend(w for _, w in graph.adjacency[v])
    if len(seen) != len(graph.vertices):
        return SuperSweepVerdict(False, "disconnected", odd, None, False)
    if len(odd) not in (0, 2):
        return SuperSweepVerdict(
            False, f"odd-degree-count {len(odd)}", odd, None, False)
    if odd:
        return SuperSweepVerdict(True, None, odd, (odd[0], odd[1]), False)
    return SuperSweepVerdict(True, None, odd, None, True)


def super_sweep_verdict(board: Board) -> SuperSweepVerdict:
    """Convenience wrapper: graph construction + Euler verdict."""
    try:
        graph = build_sweep_graph(board)
    except SweepGraphError as err:
        return SuperSweepVerdict(False, err.reason, (), None, False)
    return euler_verdict(graph)


# ---------------------------------------------------------------------------
# Sweep patterns


@dataclass(frozen=True)
class SweepPattern:
    """A sweep as a jump chain plus the set of pegs it captures."""

    board: Board = field(repr=False)
    jumps: tuple

    @property
    def start(self) -> Hole:
        return self.jumps[0].src

    @property
    def end(self) -> Hole:
        return self.jumps[-1].dst

    @property
    def length(self) -> int:
        return len(self.jumps)

    @property
    def swept(self) -> frozenset:
        return frozenset(j.over for j in self.jumps)

    def as_move(self) -> Move:
        return Move(self.jumps)

    def position(self) -> Position:
        """The pre-sweep position: the mover plus the pegs it captures."""
        return Position.from_holes(self.board, set(self.swept) | {self.start})

    def validate(self) -> bool:
        """Replay the sweep from its own position; must end as one peg."""
        try:
            final = apply_move(self.position(), self.as_move())
        except ValueError:
            return False
        return final.pegs == self.board.bit(self.end)

    def is_super(self) -> bool:
        """Every board hole is jumped over or is a jump endpoint."""
        touched = set(self.swept)
        touched.add(self.start)
        touched.update(j.dst for j in self.jumps)
        return touched == set(self.board.holes)

    def __str__(self):
        return self.as_move().to_dash()


def pattern_from_vertex_path(board: Board, path) -> SweepPattern:
    jumps = []
    for a, b in zip(path, path[1:]):
        mid = Hole((a.col + b.col) // 2, (a.row + b.row) // 2)
        jumps.append(Jump(a, mid, b))
    return SweepPattern(board, tuple(jumps))


def euler_trail(graph: SweepGraph, start: Optional[Hole] = None) -> list:
    """Hierholzer's cycle-splicing Euler trail, deterministic tie-breaking.

    Returns the vertex path.  With two odd vertices the trail runs between
    them (start may pick which); with none it is a circuit from `start` or
    the smallest non-isolated vertex.
    """
    odd = sorted(graph.odd_vertices())
    if len(odd) not in (0, 2):
        raise ValueError(f"no Euler trail: {len(odd)} odd-degree vertices")
    if start is None:
        if odd:
            start = odd[0]
        else:
            start = min(v for v in graph.vertices if graph.adjacency[v])
    elif odd and start not in odd:
        raise ValueError(f"Euler trail must start at an odd vertex, "
                         f"not {hole_name(start)}")
    used = set()
    # Iterative Hierholzer: walk greedily, splice pending vertices on a stack.
    iter_pos = {v: 0 for v in graph.vertices}
    stack = [start]
    path = []
    while stack:
        v = stack[-1]
        adj = graph.adjacency[v]
        i = iter_pos[v]
        while i < len(adj) and adj[i][0] in used:
            i += 1
        iter_pos[v] = i
        if i == len(adj):
            path.append(stack.pop())
        else:
            eid, w = adj[i]
            used.add(eid)
            stack.append(w)
    if len(used) != len(graph.edges):
        raise ValueError("graph is disconnected; no Euler trail")
    path.reverse()
    return path


def construct_super_sweep(board: Board) -> SweepPattern:
    """Explicit super-sweep for a feasible board (every hole affected)."""
    graph = build_sweep_graph(board)
    verdict = euler_verdict(graph)
    if not verdict.feasible:
        raise ValueError(f"board has no super-sweep: {verdict.reason}")
    start = min(verdict.endpoints) if verdict.endpoints else None
    pattern = pattern_from_vertex_path(board, euler_trail(graph, start))
    assert pattern.validate() and pattern.is_super()
    return pattern


def super_sweep_unreachable(pattern: SweepPattern) -> bool:
    """No game position can precede a super-sweep: its complement is dead.

    Verified directly: the complement of the pattern position admits no jump.
    Rejects patterns that are not super-sweeps.
    """
    if not pattern.is_super() or not pattern.validate():
        raise ValueError("pattern is not a super-sweep on its board")
    return not legal_jumps(pattern.position().complement())


# ---------------------------------------------------------------------------
# Closed forms


def rhombic_matchstick_length(n: int) -> int:
    """Super-sweep length on Rhombus(n), odd n: (3n+1)(n-1)/4."""
    if n < 3 or n % 2 == 0:
        raise ValueError(f"need odd n >= 3, got {n}")
    return (3 * n + 1) * (n - 1) // 4


def theorem_sweep_length(i: int) -> int:
    """Final maximal sweep length on Rhombus(6i): (9i-1)(3i-1)."""
    if i < 1:
        raise ValueError(f"need i >= 1, got {i}")
    return (9 * i - 1) * (3 * i - 1)


# ---------------------------------------------------------------------------
# Longest trails (maximal sweeps)


class _TrailSearch:
    """Longest-trail DFS over one class graph with a reachability bound."""

    def __init__(self, graph: SweepGraph, node_budget: int):
        self.graph = graph
        self.budget = node_budget
        self.nodes = 0
        self.adj = {v: tuple(graph.adjacency[v]) for v in graph.vertices}

    def _bound(self, v, used) -> int:
        """Unused edges reachable from v, minus the trail-decomposition
        penalty for odd-degree vertices."""
        adj = self.adj
        seen = {v}
        stack = [v]
        n_edges = 0
        odd = 0
        counted = set()
        while stack:
            u = stack.pop()
            deg = 0
            for eid, w in adj[u]:
                if eid in used:
                    continue
                deg += 1
                if eid not in counted:
                    counted.add(eid)
                    n_edges += 1
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
            if deg % 2:
                odd += 1
        return n_edges - max(0, odd // 2 - 1)

    def run(self, start, end=None):
        """Longest trail from start (optionally to end).

        Returns (best_length, best_path, ends_at_best set).
        """
        best = {"len": -1, "path": None, "ends": set()}
        used = set()
        path = [start]

        def consider():
            length = len(path) - 1
            v = path[-1]
            if end is not None and v != end:
                return
            if length > best["len"]:
                best.update(len=length, path=list(path), ends={v})
            elif length == best["len"]:
                best["ends"].add(v)
                if list(path) < best["path"]:
                    best["path"] = list(path)

        def dfs(v):
            self.nodes += 1
            if self.nodes > self.budget:
                raise BudgetExceeded(
                    f"longest-trail search exceeded {self.budget} nodes")
            consider()
            if len(used) + self._bound(v, used) < max(best["len"], 0):
                return
            for eid, w in self.adj[v]:
                if eid in used:
                    continue
                used.add(eid)
                path.append(w)
                dfs(w)
                path.pop()
                used.remove(eid)

        dfs(start)
        return best["len"], best["path"], best["ends"]


def max_sweep_length(board: Board, start=None, end=None,
                     node_budget: int = 50_000_000):
    """Longest geometrically possible sweep, with a witness pattern.

    Returns (length, SweepPattern or None).  Optional fixed start/end holes
    restrict the search.  Raises BudgetExceeded when the node budget runs
    out (distinct from the no-sweep result (0, None)).
    """
    best_len = 0
    best_path = None
    classes = {parity_class(h) for h in board.holes}
    for parity in sorted(classes):
        graph = class_sweep_graph(board, parity)
        if not graph.edges:
            continue
        starts = [Hole(*start)] if start is not None else list(graph.vertices)
        for s in starts:
            if parity_class(s) != parity or s not in graph.adjacency:
                continue
            search = _TrailSearch(graph, node_budget)
            e = Hole(*end) if end is not None else None
            if e is not None and parity_class(e) != parity:
                continue
            length, path, _ = search.run(s, e)
            if length > best_len or (length == best_len and best_path
                                     and path and path < best_path):
                best_len, best_path = length, path
    if best_len <= 0:
        return 0, None
    pattern = pattern_from_vertex_path(board, best_path)
    assert pattern.validate()
    return best_len, pattern


class MaxSweepEndpoints(NamedTuple):
    length: int
    representatives: tuple  # one (start, end) pair per symmetry orbit
    all_pairs: tuple        # every unordered endpoint pair achieving length


def enumerate_max_sweep_endpoints(board: Board,
                                  node_budget: int = 50_000_000
                                  ) -> MaxSweepEndpoints:
    """All (start, end) pairs admitting a maximal sweep.

    all_pairs is the complete unordered-pair set; representatives reduce it
    by the board's symmetry group (note that symmetries may map one parity
    class's pair onto another's, e.g. a1-e5 and b2-f6 on Rhombus(6) are
    exchanged by the 180-degree rotation).
    """
    best_len = 0
    pairs = set()
    classes = {parity_class(h) for h in board.holes}
    for parity in sorted(classes):
        graph = class_sweep_graph(board, parity)
        if not graph.edges:
            continue
        for s in graph.vertices:
            if not graph.adjacency[s]:
                continue
            search = _TrailSearch(graph, node_budget)
            length, _, ends = search.run(s)
            if length > best_len:
                best_len = length
                pairs = set()
            if length == best_len:
                pairs.update(tuple(sorted((s, e))) for e in ends)
    if not pairs:
        return MaxSweepEndpoints(0, (), ())
    syms = board.symmetries()
    reps = set()
    for pair in pairs:
        orbit = {tuple(sorted((sym(pair[0]), sym(pair[1])))) for sym in syms}
        reps.add(min(orbit))
    return MaxSweepEndpoints(best_len, tuple(sorted(reps)),
                             tuple(sorted(pairs)))


# ---------------------------------------------------------------------------
# Convex-board classification


def classify_convex(board: Board) -> str:
    """Which convex boards support a super-sweep: triangles, parallelograms
    and trapezoids with all edges an odd number of holes; everything else
    reports no-super-sweep."""
    if not board.is_convex():
        raise ValueError("board is not convex; use euler_verdict directly")
    corners = board.corners()
    angles = [c.interior_angle for c in corners]
    _, edges = board.boundary
    # Edge length in holes = steps + 1; all must be odd.
    odd_sides = all((length + 1) % 2 == 1 for _, length in edges)
    if not odd_sides:
        return "no-super-sweep"
    if len(corners) == 3:
        return "triangle"
    if len(corners) == 4:
        if angles in ([60, 120, 60, 120], [120, 60, 120, 60]):
            return "parallelogram"
        # Two 60s followed by two 120s in cyclic order.
        doubled = angles + angles
        for k in range(4):
            if doubled[k:k + 4] == [60, 60, 120, 120]:
                return "trapezoid"
    return "no-super-sweep"
