"""Triangular-lattice boards: rhombi, triangles, trapezoids, general polygons.

Holes live on axial coordinates (col, row), both starting at 1.  The six unit
steps are E(+1,0), W(-1,0), N(0,+1), S(0,-1), NE(+1,+1), SW(-1,-1); E/W, N/S
and NE/SW form the three collinear axes of the lattice.  In the real plane we
embed E=(1,0) and N=(-1/2, sqrt(3)/2), which makes all six steps unit length.
A hole is named by column letter(s) plus row number: a1, c3, f6.

Boards are immutable after construction.  Hole order (used for bitboards and
the hex wire encoding) is row-major: sorted by (row, col).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Optional, Sequence


class Hole(NamedTuple):
    col: int
    row: int


# The six unit steps.  NE/SW is the single diagonal added on top of the
# square-grid moves when the board is viewed as a sheared chess board.
E = (1, 0)
W = (-1, 0)
N = (0, 1)
S = (0, -1)
NE = (1, 1)
SW = (-1, -1)

DIRECTIONS = {"E": E, "W": W, "N": N, "S": S, "NE": NE, "SW": SW}
DIRECTION_NAMES = {v: k for k, v in DIRECTIONS.items()}
# One representative step per axis; a jump goes two steps along one axis.
AXES = (E, N, NE)
# Hex-angle of each direction in degrees (E=0, NE=60, N=120, ...).
_ANGLE = {E: 0, NE: 60, N: 120, W: 180, SW: 240, S: 300}
_BY_ANGLE = {a: d for d, a in _ANGLE.items()}


def col_letters(col: int) -> str:
    """Column number -> letters: 1->a ... 26->z, 27->aa (spreadsheet style)."""
    if col < 1:
        raise ValueError(f"column must be >= 1, got {col}")
    out = []
    while col:
        col, rem = divmod(col - 1, 26)
        out.append(chr(ord("a") + rem))
    return "".join(reversed(out))


def letters_col(letters: str) -> int:
    col = 0
    for ch in letters:
        if not ("a" <= ch <= "z"):
            raise ValueError(f"bad column letters {letters!r}")
        col = col * 26 + (ord(ch) - ord("a") + 1)
    return col


def hole_name(hole: Hole) -> str:
    return f"{col_letters(hole.col)}{hole.row}"


def parse_hole(name: str) -> Hole:
    """Parse a cell name like 'a1' or 'aa12'."""
    i = 0
    while i < len(name) and name[i].isalpha():
        i += 1
    if i == 0 or i == len(name) or not name[i:].isdigit():
        raise ValueError(f"bad hole name {name!r}")
    return Hole(letters_col(name[:i]), int(name[i:]))


class CornerInfo(NamedTuple):
    hole: Hole
    interior_angle: int  # one of 60, 120, 240, 300 degrees


@dataclass(frozen=True)
class Symmetry:
    """A hole bijection induced by a lattice automorphism fixing the board."""

    board: "Board" = field(repr=False)
    mapping: dict = field(repr=False)  # Hole -> Hole
    perm: tuple = field(repr=False)    # bit-index permutation, perm[i] = image index
    name: str = ""

    def __call__(self, hole: Hole) -> Hole:
        return self.mapping[hole]

    def apply_bits(self, pegs: int) -> int:
        out = 0
        perm = self.perm
        while pegs:
            low = pegs & -pegs
            out |= 1 << perm[low.bit_length() - 1]
            pegs ^= low
        return out

    def compose(self, other: "Symmetry") -> "Symmetry":
        """self after other (apply `other` first)."""
        mapping = {h: self.mapping[v] for h, v in other.mapping.items()}
        perm = tuple(self.perm[other.perm[i]] for i in range(len(self.perm)))
        return Symmetry(self.board, mapping, perm, f"{self.name}*{other.name}")

    def __eq__(self, other) -> bool:
        return isinstance(other, Symmetry) and self.perm == other.perm

    def __hash__(self) -> int:
        return hash(self.perm)


# The 12 point maps of the triangular lattice: rotations by 60 degrees and
# their mirror images, as integer-linear maps on (col, row).
def _rot60(p):
    return (p[0] - p[1], p[0])


def _mirror(p):
    # Reflection across the E axis: E->E, N->SW, NE->S.
    return (p[0] - p[1], -p[1])


def lattice_point_maps():
    maps = []
    for mirrored in (False, True):
        f = _mirror if mirrored else (lambda p: p)
        for k in range(6):
            def make(k=k, f=f):
                def apply(p):
                    q = f(p)
                    for _ in range(k):
                        q = _rot60(q)
                    return q
                return apply
            name = f"{'m' if mirrored else 'r'}{k * 60}"
            maps.append((name, make()))
    return maps


class Board:
    """An immutable set of holes on the triangular lattice.

    Attributes:
        holes: frozenset of Hole.
        order: tuple of holes sorted by (row, col); bit i of a position
            bitboard refers to order[i].
        shape: text descriptor, e.g. "rhombus 6".
        boundary: optional boundary walk, ((start Hole), ((dir, length), ...)).
    """

    def __init__(self, holes: Iterable[Hole], shape: str,
                 boundary: Optional[tuple] = None):
        holes = frozenset(Hole(*h) for h in holes)
        if not holes:
            raise ValueError("board must have at least one hole")
        self.holes = holes
        self.shape = shape
        self.boundary = boundary
        self.order = tuple(sorted(holes, key=lambda h: (h.row, h.col)))
        self.index = {h: i for i, h in enumerate(self.order)}
        self.size = len(self.order)
        self.full_mask = (1 << self.size) - 1
        # neighbors[h] = {dir_vector: neighbor_hole}
        self.neighbors = {}
        for h in self.order:
            nbrs = {}
            for d in _ANGLE:
                q = Hole(h.col + d[0], h.row + d[1])
                if q in holes:
                    nbrs[d] = q
            self.neighbors[h] = nbrs
        # All directed jumps (from, over, to): two unit steps along one axis.
        self.jumps = []
        for h in self.order:
            for d in _ANGLE:
                o = Hole(h.col + d[0], h.row + d[1])
                t = Hole(h.col + 2 * d[0], h.row + 2 * d[1])
                if o in holes and t in holes:
                    self.jumps.append((h, o, t))
        self.jumps = tuple(self.jumps)
        self._symmetries = None
        self._corners = None

    # -- identity ---------------------------------------------------------
    def __repr__(self):
        return f"Board({self.shape!r}, {self.size} holes)"

    def __eq__(self, other):
        return isinstance(other, Board) and self.holes == other.holes

    def __hash__(self):
        return hash(self.holes)

    def __contains__(self, hole):
        return Hole(*hole) in self.holes

    def bit(self, hole) -> int:
        return 1 << self.index[Hole(*hole)]

    def mask(self, holes) -> int:
        m = 0
        for h in holes:
            m |= 1 << self.index[Hole(*h)]
        return m

    # -- geometry ---------------------------------------------------------
    def corners(self) -> list:
        """Boundary holes where the boundary turns, with interior angles."""
        if self._corners is None:
            if self.boundary is None:
                raise ValueError(f"{self!r} has no boundary walk")
            start, edges = self.boundary
            pos = Hole(*start)
            verts = []
            for d, length in edges:
                verts.append((pos, d))
                pos = Hole(pos.col + d[0] * length, pos.row + d[1] * length)
            if pos != Hole(*start):
                raise ValueError("boundary walk does not close")
            corners = []
            for i, (v, d_out) in enumerate(verts):
                d_in = verts[i - 1][1]
                turn = (_ANGLE[d_out] - _ANGLE[d_in]) % 360
                if turn > 180:
                    turn -= 360
                if turn == 0:
                    continue  # collinear, not a corner
                corners.append(CornerInfo(v, 180 - turn))
            self._corners = corners
        return list(self._corners)

    def is_convex(self) -> bool:
        """True iff every corner angle is 60 or 120 degrees."""
        return all(c.interior_angle in (60, 120) for c in self.corners())

    def symmetries(self) -> list:
        """All hole bijections from lattice automorphisms fixing the board."""
        if self._symmetries is None:
            min_c = min(h.col for h in self.holes)
            min_r = min(h.row for h in self.holes)
            syms = []
            for name, f in lattice_point_maps():
                image = [f(h) for h in self.order]
                # The only translation that can work aligns bounding boxes.
                dc = min_c - min(p[0] for p in image)
                dr = min_r - min(p[1] for p in image)
                mapping = {h: Hole(p[0] + dc, p[1] + dr)
                           for h, p in zip(self.order, image)}
                if set(mapping.values()) == self.holes:
                    perm = tuple(self.index[mapping[h]] for h in self.order)
                    syms.append(Symmetry(self, mapping, perm, name))
            self._symmetries = syms
        return list(self._symmetries)

    def canonical_bits(self, pegs: int) -> int:
        """Minimum bitboard value over the board's symmetry group."""
        return min(s.apply_bits(pegs) for s in self.symmetries())

    # -- text format ------------------------------------------------------
    def to_text(self) -> str:
        return f"lattice tri\n{self.shape}\n"


# ---------------------------------------------------------------------------
# Constructors


def make_rhombus(n: int) -> Board:
    """Rhombus(n): n*n holes at {1..n} x {1..n}."""
    if n < 1:
        raise ValueError(f"rhombus side must be >= 1, got {n}")
    holes = [Hole(c, r) for r in range(1, n + 1) for c in range(1, n + 1)]
    boundary = None
    if n > 1:
        boundary = (Hole(1, 1), ((E, n - 1), (N, n - 1), (W, n - 1), (S, n - 1)))
    return Board(holes, f"rhombus {n}", boundary)


def make_triangle(n: int) -> Board:
    """Triangle(n): n(n+1)/2 holes, row r holding r holes."""
    if n < 1:
        raise ValueError(f"triangle side must be >= 1, got {n}")
    holes = [Hole(c, r) for r in range(1, n + 1) for c in range(1, r + 1)]
    boundary = None
    if n > 1:
        boundary = (Hole(1, 1), ((NE, n - 1), (W, n - 1), (S, n - 1)))
    return Board(holes, f"triangle {n}", boundary)


def make_parallelogram(a: int, b: int) -> Board:
    """Parallelogram with a columns and b rows of holes."""
    if a < 1 or b < 1:
        raise ValueError("parallelogram sides must be >= 1")
    holes = [Hole(c, r) for r in range(1, b + 1) for c in range(1, a + 1)]
    boundary = None
    if a > 1 and b > 1:
        boundary = (Hole(1, 1), ((E, a - 1), (N, b - 1), (W, a - 1), (S, b - 1)))
    return Board(holes, f"parallelogram {a} {b}", boundary)


def make_trapezoid(n: int, cut: int) -> Board:
    """Triangle(n) with a sub-triangle of side `cut` removed at one corner.

    The cut removes cut*(cut+1)/2 holes at the (n, n) corner, leaving a
    four-sided board with two 60 and two 120 degree corners.
    """
    if n < 3 or cut < 1 or cut > n - 2:
        raise ValueError("need n >= 3 and 1 <= cut <= n - 2")
    holes = {Hole(c, r) for r in range(1, n + 1) for c in range(1, r + 1)
             if c <= n - cut}
    boundary = (Hole(1, 1), ((NE, n - cut - 1), (N, cut),
                             (W, n - cut - 1), (S, n - 1)))
    return Board(holes, f"trapezoid {n} {cut}", boundary)


def make_polygon(edges: Sequence, shape: Optional[str] = None) -> Board:
    """Board of all lattice holes inside or on a polygon.

    `edges` is a sequence of (direction, length) boundary steps, where
    direction is a name ("E", "NE", ...) or a unit vector, walked from an
    arbitrary anchor.  The walk must close and must not self-intersect.
    Non-convex shapes (240/300 degree corners) are allowed.
    """
    walk = []
    for d, length in edges:
        if isinstance(d, str):
            d = DIRECTIONS[d.upper()]
        d = (int(d[0]), int(d[1]))
        if d not in _ANGLE:
            raise ValueError(f"bad direction {d}")
        if length < 1:
            raise ValueError("edge lengths must be >= 1")
        walk.append((d, int(length)))
    if sum(d[0] * L for d, L in walk) or sum(d[1] * L for d, L in walk):
        raise ValueError("boundary walk does not close")
    # Merge consecutive collinear edges, rejecting 180-degree spikes.
    merged = []
    for d, L in walk:
        if merged and merged[-1][0] == d:
            merged[-1] = (d, merged[-1][1] + L)
        elif merged and (_ANGLE[d] - _ANGLE[merged[-1][0]]) % 360 == 180:
            raise ValueError("boundary has a 180-degree spike")
        else:
            merged.append((d, L))
    if len(merged) > 1 and merged[0][0] == merged[-1][0]:
        merged[0] = (merged[0][0], merged[0][1] + merged.pop()[1])
    walk = merged
    if len(walk) < 3:
        raise ValueError("polygon needs at least 3 corners")

    # Trace vertices from (0, 0), then normalize to min col/row = 1.
    verts = [(0, 0)]
    for d, L in walk:
        c, r = verts[-1]
        verts.append((c + d[0] * L, r + d[1] * L))
    verts.pop()  # last == first

    # Orientation via the shoelace formula in the real-plane embedding.
    # x = c - r/2, y = r*sqrt(3)/2; doubled to stay integer: X = 2c - r, Y = r.
    def dbl(p):
        return (2 * p[0] - p[1], p[1])

    area2 = 0
    for i in range(len(verts)):
        x1, y1 = dbl(verts[i])
        x2, y2 = dbl(verts[(i + 1) % len(verts)])
        area2 += x1 * y2 - x2 * y1
    if area2 == 0:
        raise ValueError("degenerate polygon")
    if area2 < 0:  # clockwise; reverse to counterclockwise
        rev = [((-d[0], -d[1]), L) for d, L in reversed(walk)]
        return make_polygon(rev, shape)

    _check_simple(verts, walk)

    # Collect lattice points inside or on the boundary (integer winding test
    # in doubled coordinates).
    dverts = [dbl(v) for v in verts]
    min_c = min(v[0] for v in verts)
    max_c = max(v[0] for v in verts)
    min_r = min(v[1] for v in verts)
    max_r = max(v[1] for v in verts)
    holes = []
    for r in range(min_r, max_r + 1):
        for c in range(min_c, max_c + 1):
            if _inside_or_on(dbl((c, r)), dverts):
                holes.append((c, r))
    dc, dr = 1 - min(c for c, _ in holes), 1 - min(r for _, r in holes)
    holes = [Hole(c + dc, r + dr) for c, r in holes]
    anchor = Hole(verts[0][0] + dc, verts[0][1] + dr)
    if shape is None:
        shape = "polygon " + " ".join(
            f"{DIRECTION_NAMES[d]}{L}" for d, L in walk)
    return Board(holes, shape, (anchor, tuple(walk)))


def make_hexagon(k: int) -> Board:
    """Regular hexagon with side length k steps (3k^2+3k+1 holes)."""
    if k < 1:
        raise ValueError("hexagon side must be >= 1")
    return make_polygon([(E, k), (NE, k), (N, k), (W, k), (SW, k), (S, k)],
                        shape=f"hexagon {k}")


def make_star(k: int) -> Board:
    """Six-pointed star (hexagram) with point edges of k steps."""
    if k < 1:
        raise ValueError("star side must be >= 1")
    dirs = [E, N, NE, W, N, SW, W, S, SW, E, S, NE]
    return make_polygon([(d, k) for d in dirs], shape=f"star {k}")


def _check_simple(verts, walk):
    """Reject self-intersecting boundaries (exact integer segment tests)."""
    segs = []
    pos = verts[0]
    for d, L in walk:
        end = (pos[0] + d[0] * L, pos[1] + d[1] * L)
        segs.append((pos, end))
        pos = end
    n = len(segs)

    def orient(a, b, c):
        return ((b[0] - a[0]) * (c[1] - a[1])
                - (b[1] - a[1]) * (c[0] - a[0]))

    def on_seg(a, b, p):
        return (orient(a, b, p) == 0
                and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))

    for i in range(n):
        for j in range(i + 1, n):
            a, b = segs[i]
            c, d = segs[j]
            adjacent = (j == i + 1) or (i == 0 and j == n - 1)
            o1, o2 = orient(a, b, c), orient(a, b, d)
            o3, o4 = orient(c, d, a), orient(c, d, b)
            crosses = ((o1 > 0) != (o2 > 0) and (o3 > 0) != (o4 > 0)
                       and o1 and o2 and o3 and o4)
            touches = (on_seg(a, b, c) or on_seg(a, b, d)
                       or on_seg(c, d, a) or on_seg(c, d, b))
            if crosses or (touches and not adjacent):
                raise ValueError("boundary self-intersects")
            if adjacent:
                # Consecutive segments may share exactly one endpoint.
                shared = b == c or (i == 0 and j == n - 1 and a == d)
                if not shared or on_seg(a, b, d if b == c else c):
                    pass  # spikes already rejected during merging


def _inside_or_on(p, dverts):
    """Winding-number test, boundary counts as inside.  Exact integers."""
    n = len(dverts)
    wn = 0
    for i in range(n):
        a, b = dverts[i], dverts[(i + 1) % n]
        # On-boundary check.
        cross = ((b[0] - a[0]) * (p[1] - a[1])
                 - (b[1] - a[1]) * (p[0] - a[0]))
        if (cross == 0
                and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
                and min(a[1], b[1]) <= p[1] <= max(a[1], b[1])):
            return True
        if a[1] <= p[1]:
            if b[1] > p[1] and cross > 0:
                wn += 1
        elif b[1] <= p[1] and cross < 0:
            wn -= 1
    return wn != 0


# ---------------------------------------------------------------------------
# Shorthand and file parsing


def board_from_shorthand(text: str) -> Board:
    """Parse CLI shorthand: rhombus6, triangle8, hexagon:3, star:2,
    parallelogram:3x5, trapezoid:5-1, polygon:@file or polygon:E5,N5,W5,S5."""
    text = text.strip().lower()
    for prefix, fn in (("rhombus", make_rhombus), ("triangle", make_triangle),
                       ("star", make_star)):
        if text.startswith(prefix):
            arg = text[len(prefix):].lstrip(":")
            if not arg.isdigit():
                raise ValueError(f"bad board shorthand {text!r}")
            return fn(int(arg))
    if text.startswith("hexagon"):
        # Shorthand counts holes per edge (like rhombus6 = 6 holes per side);
        # make_hexagon takes the side length in steps.
        arg = text[len("hexagon"):].lstrip(":")
        if not arg.isdigit() or int(arg) < 2:
            raise ValueError(f"bad board shorthand {text!r}")
        return make_hexagon(int(arg) - 1)
    if text.startswith("parallelogram"):
        arg = text[len("parallelogram"):].lstrip(":")
        a, _, b = arg.partition("x")
        return make_parallelogram(int(a), int(b))
    if text.startswith("trapezoid"):
        arg = text[len("trapezoid"):].lstrip(":")
        n, _, cut = arg.partition("-")
        return make_trapezoid(int(n), int(cut))
    if text.startswith("polygon"):
        arg = text[len("polygon"):].lstrip(":")
        if arg.startswith("@"):
            with open(arg[1:]) as fh:
                arg = fh.read().strip().replace("\n", ",")
        edges = []
        for token in arg.replace(",", " ").split():
            i = 0
            while i < len(token) and token[i].isalpha():
                i += 1
            edges.append((token[:i].upper(), int(token[i:])))
        return make_polygon(edges)
    raise ValueError(f"bad board shorthand {text!r}")


def board_from_text(text: str) -> Board:
    """Parse the two-line board file format (`lattice tri` + shape line)."""
    lines = [ln.strip() for ln in text.splitlines()
             if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != "lattice tri":
        raise ValueError("board text must start with 'lattice tri'")
    if len(lines) < 2:
        raise ValueError("board text is missing the shape line")
    parts = lines[1].split(None, 1)
    kind = parts[0]
    arg = parts[1] if len(parts) > 1 else ""
    if kind == "rhombus":
        return make_rhombus(int(arg))
    if kind == "triangle":
        return make_triangle(int(arg))
    if kind == "parallelogram":
        a, b = arg.split()
        return make_parallelogram(int(a), int(b))
    if kind == "trapezoid":
        n, cut = arg.split()
        return make_trapezoid(int(n), int(cut))
    if kind == "hexagon":
        return make_hexagon(int(arg))
    if kind == "star":
        return make_star(int(arg))
    if kind == "polygon":
        edges = []
        for token in arg.split():
            i = 0
            while i < len(token) and token[i].isalpha():
                i += 1
            edges.append((token[:i].upper(), int(token[i:])))
        return make_polygon(edges)
    raise ValueError(f"unknown board shape {kind!r}")
