"""
Height-one sections of toric Calabi-Yau 3-fold fans.

A smooth toric CY 3-fold whose rays all lie in the plane ``z = 1`` is
described by a unimodular triangulation of a lattice polygon.  Interior
lattice points are compact divisors; the star of such a point is the fan of a
smooth complete toric surface.  Boundary points that are not polygon vertices
are non-compact divisors.

Points are plain integer pairs throughout.  Triangles handed to
:class:`StackyTriangle` may have non-primitive vertices (root-stack rays);
they are kept as given.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from math import gcd
from pathlib import Path
from typing import Iterable, Sequence

from .lattice import det2, ext_gcd, gcd_list, hermite_basis_2d, solve_2x2
from .snc import Gluing, SncSurface
from .surfaces import MORI_GENERATOR, NamedCurve, surface_from_gram

Point = tuple[int, int]

VERTEX = "vertex"
BOUNDARY = "boundary"
INTERIOR = "interior"


class ToricError(ValueError):
    pass


class GerbeError(ToricError):
    """Weights with a common factor describe a gerbe, not a weighted plane."""


class NotSmoothError(ToricError):
    pass


def _sub(p: Sequence[int], q: Sequence[int]) -> Point:
    return (p[0] - q[0], p[1] - q[1])


def _cross(o: Point, a: Point, b: Point) -> int:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _primitive(v: Point) -> tuple[Point, int]:
    g = gcd(v[0], v[1])
    if g == 0:
        raise ToricError("zero vector has no primitive direction")
    return (v[0] // g, v[1] // g), g


# -- triangles ---------------------------------------------------------------

@dataclass(frozen=True)
class StackyTriangle:
    """Vertices ``v_i`` with ``sum w_i v_i = 0``, ``gcd(w) = 1``."""

    vertices: tuple[Point, Point, Point]
    weights: tuple[int, int, int]

    def __post_init__(self):
        vs = tuple((int(x), int(y)) for x, y in self.vertices)
        ws = tuple(int(w) for w in self.weights)
        object.__setattr__(self, "vertices", vs)
        object.__setattr__(self, "weights", ws)
        if len(vs) != 3 or len(ws) != 3:
            raise ToricError("a triangle needs three vertices and three weights")
        if any(w <= 0 for w in ws):
            raise ToricError("weights must be positive")
        if gcd_list(ws) != 1:
            raise GerbeError(f"weights {ws} have gcd {gcd_list(ws)}; this is a gerbe")
        if _cross(vs[0], vs[1], vs[2]) == 0:
            raise ToricError("triangle vertices are collinear")
        rel = (sum(w * v[0] for w, v in zip(ws, vs)), sum(w * v[1] for w, v in zip(ws, vs)))
        if rel != (0, 0):
            raise ToricError(f"weighted relation fails: sum w_i v_i = {rel}")

    @classmethod
    def from_vertices(cls, vertices: Sequence[Sequence[int]]) -> "StackyTriangle":
        """Recover the weights of a triangle whose interior contains the origin."""
        v = [tuple(int(c) for c in p) for p in vertices]
        if len(v) != 3:
            raise ToricError("a triangle needs three vertices")
        # barycentric coordinates of the origin, scaled to integers
        w = [det2(v[1], v[2]), det2(v[2], v[0]), det2(v[0], v[1])]
        if any(x == 0 for x in w) or len({x > 0 for x in w}) != 1:
            raise ToricError("the origin must be strictly inside the triangle")
        g = gcd_list(w)
        w = [abs(x) // g for x in w]
        return cls(tuple(v), tuple(w))

    @property
    def lattice_area2(self) -> int:
        """Twice the Euclidean area."""
        return abs(_cross(*self.vertices))

    def normal_form(self) -> "StackyTriangle":
        """Canonical representative under GL(2, Z) fixing the origin.

        One vertex goes to ``(0, g)`` (``g`` its lattice index, so ``(0, 1)``
        when primitive) and the stabilizer ``(x, y) -> (+-x, kx + y)`` brings
        the next vertex to ``x > 0``, ``0 <= y < x``.  Among all choices the
        lexicographically smallest ``(g, v_1, v_2)`` wins.
        """
        best = None
        for i in range(3):
            prim, g = _primitive(self.vertices[i])
            _, s, t = _bezout_pair(prim)
            m = ((prim[1], -prim[0]), (s, t))
            for j, k in ((i + 1) % 3, (i + 2) % 3), ((i + 2) % 3, (i + 1) % 3):
                xj, yj = _apply(m, self.vertices[j])
                if xj == 0:
                    continue
                sgn = 1 if xj > 0 else -1
                c = ((yj % abs(xj)) - yj) // xj
                stab = ((sgn, 0), (c, 1))
                mm = _matmul(stab, m)
                cand = (g, _apply(mm, self.vertices[j]), _apply(mm, self.vertices[k]))
                key = (cand, (self.weights[i], self.weights[j], self.weights[k]))
                if best is None or key < best:
                    best = key
        (g, vj, vk), ws = best
        return StackyTriangle(((0, g), vj, vk), ws)

    def equivalent(self, other: "StackyTriangle") -> bool:
        return self.normal_form().vertices == other.normal_form().vertices


def _bezout_pair(prim: Point) -> tuple[int, int, int]:
    """``(1, s, t)`` with ``s*p + t*q = 1`` for primitive ``(p, q)``."""
    g, s, t = ext_gcd(prim[0], prim[1])
    if g != 1:
        raise ToricError(f"{prim} is not primitive")
    return g, s, t


def _apply(m, v: Sequence[int]) -> Point:
    return (m[0][0] * v[0] + m[0][1] * v[1], m[1][0] * v[0] + m[1][1] * v[1])


def _matmul(a, b):
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(2)) for c in range(2)) for r in range(2))


def _orthogonal_basis(w: Sequence[int]) -> tuple[tuple[int, int, int], tuple[int, int, int]]:
    """Two integer vectors spanning ``{x in Z^3 : w.x = 0}``."""
    cols = [[1 if r == c else 0 for r in range(3)] for c in range(3)]
    row = list(w)
    # column operations on the row vector w, tracked in cols
    for k in (1, 2):
        while row[k] != 0:
            q = row[0] // row[k]
            row[0] -= q * row[k]
            cols[0] = [a - q * b for a, b in zip(cols[0], cols[k])]
            row[0], row[k] = row[k], row[0]
            cols[0], cols[k] = cols[k], cols[0]
    if abs(row[0]) != 1:
        raise GerbeError(f"weights {tuple(w)} have a common factor")
    return tuple(cols[1]), tuple(cols[2])


def weights_to_triangle(a: int, b: int, c: int) -> StackyTriangle:
    """The fan section of the local weighted projective plane P(a, b, c)."""
    w = (int(a), int(b), int(c))
    if any(x <= 0 for x in w):
        raise ToricError("weights must be positive")
    if gcd_list(w) != 1:
        raise GerbeError(f"weights {w} have gcd {gcd_list(w)}; this is a gerbe")
    u, v = _orthogonal_basis(w)
    verts = tuple((u[i], v[i]) for i in range(3))
    return StackyTriangle(verts, w).normal_form()


def quotient_to_triangle(n: int, w: Sequence[int]) -> StackyTriangle:
    """Junior simplex of ``C^3 / mu_n`` acting with weights ``w``.

    The lattice is ``Z^3 + Z w/n``; on the plane ``x + y + z = 1`` it becomes
    ``Z^2 + Z (w_2, w_3)/n`` in the coordinates of ``e_2 - e_1`` and
    ``e_3 - e_1``.  The image of ``w/n`` is moved to the origin.
    """
    a, b, c = (int(x) for x in w)
    if min(a, b, c) <= 0:
        raise ToricError("weights must be positive")
    if a + b + c != n:
        raise ToricError(f"weights {(a, b, c)} do not sum to n = {n}")
    if gcd_list((a, b, c)) != 1:
        raise GerbeError(f"weights {(a, b, c)} have a common factor")
    (h11, h21), (_, h22) = hermite_basis_2d([(n, 0), (0, n), (b, c)])

    def coords(p: Point) -> Point:
        x = p[0] // h11
        y = (p[1] - x * h21) // h22
        assert x * h11 == p[0] and x * h21 + y * h22 == p[1]
        return (x, y)

    centre = coords((b, c))
    verts = tuple(_sub(coords(p), centre) for p in ((0, 0), (n, 0), (0, n)))
    return StackyTriangle(verts, (a, b, c)).normal_form()


# -- polygons and lattice points --------------------------------------------

def convex_hull(points: Iterable[Sequence[int]]) -> tuple[Point, ...]:
    """Strict vertices in counter-clockwise order, starting from the lex-min point."""
    pts = sorted({(int(p[0]), int(p[1])) for p in points})
    if len(pts) < 3:
        raise ToricError("need at least three points for a polygon")
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = tuple(lower[:-1] + upper[:-1])
    if len(hull) < 3:
        raise ToricError("points are collinear")
    return hull


def _on_segment(p: Point, a: Point, b: Point) -> bool:
    return (_cross(a, b, p) == 0 and min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _locate(p: Point, poly: Sequence[Point]) -> str | None:
    """Position of ``p`` relative to a ccw convex polygon."""
    n = len(poly)
    if p in poly:
        return VERTEX
    on_edge = False
    for i in range(n):
        a, b = poly[i], poly[(i + 1) % n]
        c = _cross(a, b, p)
        if c < 0:
            return None
        if c == 0:
            if not _on_segment(p, a, b):
                return None
            on_edge = True
    return BOUNDARY if on_edge else INTERIOR


@dataclass(frozen=True)
class LatticePoint:
    point: Point
    kind: str


def polygon_area2(poly: Sequence[Point]) -> int:
    n = len(poly)
    return abs(sum(det2(poly[i], poly[(i + 1) % n]) for i in range(n)))


def lattice_points(shape) -> list[LatticePoint]:
    """Every lattice point of a closed convex polygon, tagged by position.

    ``shape`` is a :class:`StackyTriangle` or a vertex list.  Pick's theorem
    is checked on the way out.
    """
    verts = shape.vertices if isinstance(shape, StackyTriangle) else shape
    poly = convex_hull(verts)
    xs = [p[0] for p in poly]
    ys = [p[1] for p in poly]
    out = []
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            kind = _locate((x, y), poly)
            if kind is not None:
                out.append(LatticePoint((x, y), kind))
    interior = sum(1 for p in out if p.kind == INTERIOR)
    boundary = len(out) - interior
    if polygon_area2(poly) != 2 * interior + boundary - 2:
        raise AssertionError(f"Pick's theorem fails on {poly}")
    return out


# -- toric surfaces ----------------------------------------------------------

def _half(v: Point) -> int:
    return 0 if (v[1] > 0 or (v[1] == 0 and v[0] > 0)) else 1


def sort_by_angle(vectors: Iterable[Point]) -> list[Point]:
    """Counter-clockwise order starting at the positive x-axis."""
    from functools import cmp_to_key

    def cmp(a, b):
        ha, hb = _half(a), _half(b)
        if ha != hb:
            return ha - hb
        c = det2(a, b)
        return -1 if c > 0 else (1 if c < 0 else 0)

    return sorted(vectors, key=cmp_to_key(cmp))


def self_intersections(rays: Sequence[Point]) -> tuple[int, ...]:
    """``D_i^2`` from ``u_{i-1} + u_{i+1} = -D_i^2 u_i`` for a smooth complete fan.

    The rays must be listed counter-clockwise.
    """
    k = len(rays)
    if k < 3:
        raise NotSmoothError("a complete fan needs at least three rays")
    for i in range(k):
        if det2(rays[i], rays[(i + 1) % k]) != 1:
            raise NotSmoothError(f"cone <{rays[i]}, {rays[(i + 1) % k]}> is not smooth")
    out = []
    for i in range(k):
        u = rays[i]
        s = (rays[i - 1][0] + rays[(i + 1) % k][0], rays[i - 1][1] + rays[(i + 1) % k][1])
        # s is a multiple of u because the two cones around u are unimodular
        d = s[0] // u[0] if u[0] else s[1] // u[1]
        if (d * u[0], d * u[1]) != s:
            raise NotSmoothError(f"ray {u}: neighbours do not sum to a multiple")
        out.append(-d)
    return tuple(out)


def noether_identity_holds(selfints: Sequence[int]) -> bool:
    """``sum D_i^2 = 12 - 3k`` for a smooth complete toric surface with ``k`` rays."""
    return sum(selfints) == 12 - 3 * len(selfints)


@dataclass(frozen=True)
class SurfaceId:
    """``kind`` is ``"P2"``, ``"F"``, ``"Blowup"`` or ``"Unknown"``."""

    kind: str
    ray_count: int
    selfints: tuple[int, ...]
    n: int | None = None
    base: "SurfaceId | None" = None
    count: int = 0

    @property
    def display(self) -> str:
        if self.kind == "P2":
            return "P2"
        if self.kind == "F":
            return f"F{self.n}"
        if self.kind == "Blowup":
            b = self.base
            if b.kind == "P2":
                return f"dP{self.count}"
            if b.kind == "F" and b.n == 0:
                return f"dP{self.count + 1}"
            return f"Bl{self.count}F{b.n}"
        return "Unknown"

    def __str__(self) -> str:
        return self.display


def _minimal(selfints: list[int]) -> SurfaceId:
    k = len(selfints)
    if k == 3:
        return SurfaceId("P2", 3, tuple(selfints))
    return SurfaceId("F", 4, tuple(selfints), n=abs(min(selfints)))


def identify_surface(rays: Sequence[Point]) -> SurfaceId:
    """Name the smooth complete toric surface with the given rays.

    Rays are put in counter-clockwise order from the positive x-axis; the
    first (-1)-ray in that order is blown down until three or four rays are
    left.  A resulting F1 is blown down once more to P2.
    """
    ordered = sort_by_angle(rays)
    selfints = self_intersections(ordered)
    if not noether_identity_holds(selfints):
        raise AssertionError(f"sum of self-intersections {selfints} is not 12 - 3k")
    k = len(ordered)
    if k <= 4:
        return _minimal(list(selfints))
    cur = list(selfints)
    count = 0
    while len(cur) > 4 or (len(cur) == 4 and -1 in cur):
        try:
            i = cur.index(-1)
        except ValueError:
            return SurfaceId("Unknown", k, selfints)
        m = len(cur)
        cur[(i - 1) % m] += 1
        cur[(i + 1) % m] += 1
        del cur[i]
        count += 1
    return SurfaceId("Blowup", k, selfints, base=_minimal(cur), count=count)


# -- triangulations ---------------------------------------------------------

@dataclass(frozen=True)
class FanSection:
    polygon: tuple[Point, ...]
    points: tuple[LatticePoint, ...]
    triangles: tuple[tuple[Point, Point, Point], ...]

    def __post_init__(self):
        pts = {p.point for p in self.points}
        used = {v for t in self.triangles for v in t}
        if used != pts:
            raise ToricError("triangulation does not use every lattice point")
        for t in self.triangles:
            if abs(_cross(*t)) != 1:
                raise NotSmoothError(f"triangle {t} is not unimodular")
        if len(self.triangles) != polygon_area2(self.polygon):
            raise ToricError("triangles do not tile the polygon")

    @cached_property
    def edges(self) -> tuple[tuple[Point, Point], ...]:
        es = set()
        for t in self.triangles:
            for a, b in combinations(t, 2):
                es.add(tuple(sorted((a, b))))
        return tuple(sorted(es))

    def kind(self, p: Point) -> str:
        for lp in self.points:
            if lp.point == p:
                return lp.kind
        raise KeyError(p)

    @property
    def interior(self) -> tuple[Point, ...]:
        return tuple(p.point for p in self.points if p.kind == INTERIOR)

    @property
    def boundary_nonvertex(self) -> tuple[Point, ...]:
        return tuple(p.point for p in self.points if p.kind == BOUNDARY)

    def neighbours(self, p: Point) -> list[Point]:
        out = set()
        for a, b in self.edges:
            if a == p:
                out.add(b)
            elif b == p:
                out.add(a)
        return sorted(out)

    def star_rays(self, p: Point) -> list[Point]:
        """Directions to the neighbours of an interior point, counter-clockwise."""
        return sort_by_angle([_sub(q, p) for q in self.neighbours(p)])

    @cached_property
    def interior_stars(self) -> dict[Point, SurfaceId]:
        return {p: identify_surface(self.star_rays(p)) for p in self.interior}

    def triangles_on(self, a: Point, b: Point) -> list[tuple[Point, Point, Point]]:
        return [t for t in self.triangles if a in t and b in t]


def _pull(cells: list[tuple[Point, ...]], p: Point) -> list[tuple[Point, ...]]:
    out = []
    for cell in cells:
        where = _locate(p, cell)
        if where is None:
            out.append(cell)
            continue
        n = len(cell)
        for i in range(n):
            a, b = cell[i], cell[(i + 1) % n]
            if _on_segment(p, a, b):
                continue
            out.append(convex_hull((p, a, b)))
    return out


def pulling_triangulation(points: Sequence[LatticePoint]) -> list[tuple[Point, Point, Point]]:
    """Pull every lattice point in lexicographic order."""
    pts = sorted(lp.point for lp in points)
    cells = [convex_hull(pts)]
    for p in pts:
        cells = _pull(cells, p)
    return [tuple(sorted(c)) for c in cells]


def _split_segment(a: Point, b: Point) -> list[tuple[Point, Point]]:
    d, g = _primitive(_sub(b, a))
    pts = [(a[0] + i * d[0], a[1] + i * d[1]) for i in range(g + 1)]
    return [(pts[i], pts[i + 1]) for i in range(g)]


def triangles_from_edges(points: Sequence[LatticePoint],
                         edges: Iterable[tuple[Sequence[int], Sequence[int]]]) -> list[tuple[Point, Point, Point]]:
    """Unimodular triangles spanned by an explicit edge list.

    Segments through further lattice points are split there, so an edge
    like ``(0,-2)-(0,1)`` stands for its three unit pieces.
    """
    pts = {lp.point for lp in points}
    adj: dict[Point, set[Point]] = {p: set() for p in pts}
    for a, b in edges:
        a, b = tuple(a), tuple(b)
        for u, v in _split_segment(a, b):
            if u not in pts or v not in pts:
                raise ToricError(f"edge {a}-{b} leaves the polygon")
            adj[u].add(v)
            adj[v].add(u)
    tris = set()
    for a in pts:
        for b, c in combinations(sorted(adj[a]), 2):
            if c in adj[b] and abs(_cross(a, b, c)) == 1:
                tris.add(tuple(sorted((a, b, c))))
    return sorted(tris)


_EDGE_RE = re.compile(r"^edge\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*-\s*\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)\s*$")


def parse_edges(text: str) -> list[tuple[Point, Point]]:
    """Read ``edge (x1,y1)-(x2,y2)`` lines; ``#`` starts a comment."""
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        m = _EDGE_RE.match(line)
        if not m:
            raise ToricError(f"line {lineno}: expected 'edge (x1,y1)-(x2,y2)', got {line!r}")
        x1, y1, x2, y2 = (int(g) for g in m.groups())
        out.append(((x1, y1), (x2, y2)))
    return out


def load_edges(path: str | Path) -> list[tuple[Point, Point]]:
    return parse_edges(Path(path).read_text(encoding="utf-8"))


def triangulate(points: Sequence[LatticePoint], edges=None) -> FanSection:
    """Full unimodular triangulation: lexicographic pulling by default, or the
    triangles of an explicit edge list."""
    points = tuple(sorted(points, key=lambda lp: lp.point))
    polygon = convex_hull(lp.point for lp in points)
    if edges is None:
        tris = pulling_triangulation(points)
    else:
        tris = triangles_from_edges(points, edges)
    return FanSection(polygon, points, tuple(sorted(tris)))


def section(shape, edges=None) -> FanSection:
    """``triangulate(lattice_points(shape))``."""
    return triangulate(lattice_points(shape), edges)


# -- flops and Hirzebruch-Jung ------------------------------------------------

@dataclass(frozen=True)
class Flop:
    quad: tuple[Point, Point, Point, Point]
    diagonal: tuple[Point, Point]

    @property
    def other_diagonal(self) -> tuple[Point, Point]:
        rest = [p for p in self.quad if p not in self.diagonal]
        return tuple(sorted(rest))


def detect_flops(fs: FanSection) -> list[Flop]:
    """Edges whose two triangles form a strictly convex quadrilateral."""
    out = []
    for a, b in fs.edges:
        tris = fs.triangles_on(a, b)
        if len(tris) != 2:
            continue
        c = next(p for p in tris[0] if p not in (a, b))
        d = next(p for p in tris[1] if p not in (a, b))
        # strictly convex iff a and b lie strictly on opposite sides of cd
        if _cross(c, d, a) * _cross(c, d, b) < 0:
            out.append(Flop(tuple(sorted((a, b, c, d))), (a, b)))
    return out


def hj_chain_points(r: int, q: int) -> list[Point]:
    """Lattice points ``u_0 = (0,1), u_1 = (1,0), ..., (r,-q)`` of the resolution."""
    chain = hj_continued_fraction(r, q)
    pts = [(0, 1), (1, 0)]
    for b in chain:
        u0, u1 = pts[-2], pts[-1]
        pts.append((b * u1[0] - u0[0], b * u1[1] - u0[1]))
    return pts


def hj_continued_fraction(r: int, q: int) -> list[int]:
    """``r/q = b_1 - 1/(b_2 - ...)`` with every ``b_i >= 2``."""
    if not 0 < q < r:
        raise ToricError("need 0 < q < r")
    if gcd(r, q) != 1:
        raise ToricError(f"gcd({r}, {q}) != 1: not an isolated cyclic quotient of this type")
    out = []
    a, b = r, q
    while b:
        c = -(-a // b)
        out.append(c)
        a, b = b, c * b - a
    return out


def cone_is_resolved(r: int, q: int, pts: Sequence[Point]) -> bool:
    """Every consecutive pair is a lattice basis and lies in ``<(0,1), (r,-q)>``."""
    if pts[0] != (0, 1) or pts[-1] != (r, -q):
        return False
    for p in pts:
        if det2((0, 1), p) > 0 or det2(p, (r, -q)) > 0:
            return False
    return all(det2(pts[i], pts[i + 1]) == -1 for i in range(len(pts) - 1))


def hj_resolve(r: int, q: int) -> tuple[int, ...]:
    """Self-intersections of the exceptional chain resolving ``(1/r)(1, q)``."""
    chain = hj_continued_fraction(r, q)
    if not cone_is_resolved(r, q, hj_chain_points(r, q)):
        raise AssertionError(f"Hirzebruch-Jung subdivision of ({r},{q}) is not smooth")
    return tuple(-b for b in chain)


# -- intersection numbers ---------------------------------------------------

def _lift(p: Point) -> tuple[int, int, int]:
    return (p[0], p[1], 1)


def _curve_degrees(fs: FanSection, a: Point, b: Point) -> tuple[int, int]:
    """``(D_a.C, D_b.C)`` for the torus-invariant curve ``C = D_a D_b``.

    With ``c, d`` the opposite vertices of the two triangles on edge ``ab``,
    ``v_c + v_d + x v_a + y v_b = 0`` in Z^3 gives ``D_a.C = x``, ``D_b.C = y``.
    """
    tris = fs.triangles_on(a, b)
    if len(tris) != 2:
        raise ToricError(f"edge {a}-{b} is on the boundary; its curve is not compact")
    c = next(p for p in tris[0] if p not in (a, b))
    d = next(p for p in tris[1] if p not in (a, b))
    return _solve_relation(a, b, c, d)


def _solve_relation(a: Point, b: Point, c: Point, d: Point) -> tuple[int, int]:
    for rows in ((0, 2), (1, 2)):
        va, vb, vc, vd = (_lift(p) for p in (a, b, c, d))
        m = ((va[rows[0]], vb[rows[0]]), (va[rows[1]], vb[rows[1]]))
        if m[0][0] * m[1][1] - m[0][1] * m[1][0] == 0:
            continue
        rhs = [-(vc[rows[0]] + vd[rows[0]]), -(vc[rows[1]] + vd[rows[1]])]
        x, y = solve_2x2(m, rhs)
        if all(x * va[k] + y * vb[k] + vc[k] + vd[k] == 0 for k in range(3)):
            return int(x), int(y)
    raise ToricError(f"no integral relation for edge {a}-{b}")


def toric_triples(fs: FanSection) -> dict[tuple[Point, Point, Point], int]:
    """All triple products of compact divisors, keyed by sorted point triples."""
    interior = fs.interior
    tri_set = set(fs.triangles)
    mixed: dict[tuple[Point, Point], int] = {}

    def sq(a: Point, b: Point) -> int:
        if (a, b) not in mixed:
            if tuple(sorted((a, b))) not in fs.edges:
                mixed[(a, b)] = 0
            else:
                x, y = _curve_degrees(fs, a, b)
                mixed[(a, b)], mixed[(b, a)] = x, y
        return mixed[(a, b)]

    out = {}
    for a in interior:
        out[(a, a, a)] = -sum(sq(a, b) for b in fs.neighbours(a))
    for a, b in combinations(interior, 2):
        out[tuple(sorted((a, a, b)))] = sq(a, b)
        out[tuple(sorted((a, b, b)))] = sq(b, a)
    for a, b, c in combinations(interior, 3):
        out[(a, b, c)] = 1 if tuple(sorted((a, b, c))) in tri_set else 0
    return out


def fan_to_snc(fs: FanSection, label: str = "") -> tuple[SncSurface, tuple[Point, ...]]:
    """The compact divisors as an snc surface, and the point behind each index.

    Each component is modelled on its torus-invariant curves ``D1..Dk``
    (counter-clockwise), with ``D_i^2`` from the star, ``D_i.D_{i+1} = 1`` and
    ``K = -sum D_i``; those curves generate the Mori cone and form the catalog.
    """
    interior = fs.interior
    if not interior:
        raise ToricError("no compact divisors")
    index = {p: i for i, p in enumerate(interior, start=1)}
    models = []
    ray_labels: list[dict[Point, str]] = []
    stars = fs.interior_stars
    for p in interior:
        rays = fs.star_rays(p)
        k = len(rays)
        d = self_intersections(rays)
        gram = [[0] * k for _ in range(k)]
        for i in range(k):
            gram[i][i] = d[i]
            for j in ((i + 1) % k, (i - 1) % k):
                if j != i:
                    gram[i][j] = 1
        labels = [f"D{i + 1}" for i in range(k)]
        name = f"star{p[0]},{p[1]}"
        model = surface_from_gram(name, labels, gram, [-1] * k, display_name=stars[p].display,
                                  source=f"toric star of {p}")
        curves = [NamedCurve(model.basis.unit(lab), lab, MORI_GENERATOR) for lab in labels]
        models.append(model.with_catalog(curves, f"toric star of {p}: torus-invariant curves"))
        ray_labels.append({(p[0] + r[0], p[1] + r[1]): lab for r, lab in zip(rays, labels)})
    gluings = []
    for a, b in combinations(interior, 2):
        if tuple(sorted((a, b))) not in fs.edges:
            continue
        ia, ib = index[a], index[b]
        ca = models[ia - 1].basis.unit(ray_labels[ia - 1][b])
        cb = models[ib - 1].basis.unit(ray_labels[ib - 1][a])
        gluings.append(Gluing(ia, ib, ca, cb, 0))
    triples = {}
    for a, b, c in combinations(interior, 3):
        if tuple(sorted((a, b, c))) in set(fs.triangles):
            triples[tuple(sorted((index[a], index[b], index[c])))] = 1
    s = SncSurface(tuple(models), tuple(gluings), tuple(triples.items()), label=label)
    return s, interior


# -- SVG ---------------------------------------------------------------------

_SCALE = 60
_MARGIN = 40


def render_svg(fs: FanSection, path: str | Path | None = None) -> str:
    """Deterministic SVG of the section: grid, edges, black and red nodes, labels."""
    pts = [lp.point for lp in fs.points]
    xmin, xmax = min(p[0] for p in pts) - 1, max(p[0] for p in pts) + 1
    ymin, ymax = min(p[1] for p in pts) - 1, max(p[1] for p in pts) + 1
    width = (xmax - xmin) * _SCALE + 2 * _MARGIN
    height = (ymax - ymin) * _SCALE + 2 * _MARGIN

    def X(x: int) -> int:
        return _MARGIN + (x - xmin) * _SCALE

    def Y(y: int) -> int:
        return _MARGIN + (ymax - y) * _SCALE

    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g class="grid" stroke="#cccccc" stroke-width="0.5">',
    ]
    for x in range(xmin, xmax + 1):
        lines.append(f'<line x1="{X(x)}" y1="{Y(ymin)}" x2="{X(x)}" y2="{Y(ymax)}"/>')
    for y in range(ymin, ymax + 1):
        lines.append(f'<line x1="{X(xmin)}" y1="{Y(y)}" x2="{X(xmax)}" y2="{Y(y)}"/>')
    lines.append("</g>")
    lines.append('<g class="edges" stroke="#000000" stroke-width="1.5">')
    for a, b in fs.edges:
        lines.append(f'<line x1="{X(a[0])}" y1="{Y(a[1])}" x2="{X(b[0])}" y2="{Y(b[1])}"/>')
    lines.append("</g>")
    lines.append('<g class="nodes">')
    for lp in fs.points:
        colour = "#cc0000" if lp.kind == BOUNDARY else "#000000"
        x, y = lp.point
        lines.append(f'<circle class="{lp.kind}" cx="{X(x)}" cy="{Y(y)}" r="4" fill="{colour}"/>')
    lines.append("</g>")
    lines.append('<g class="labels" font-family="sans-serif" font-size="10">')
    for lp in fs.points:
        x, y = lp.point
        lines.append(f'<text x="{X(x) + 6}" y="{Y(y) - 6}">({x},{y})</text>')
    lines.append("</g>")
    lines.append("</svg>")
    text = "\n".join(lines) + "\n"
    if path is not None:
        Path(path).write_text(text, encoding="utf-8")
    return text
