"""
Simple-normal-crossing surfaces and their intrinsic intersection numbers.

For a surface ``S = S_1 u ... u S_n`` inside a smooth Calabi-Yau 3-fold the
products needed by the shrinkability conditions only depend on ``S``:

* a curve ``C`` in ``S_i``: ``C.S_i = K_{S_i}.C`` and ``C.S_j = (C.C_ij)_{S_i}``;
* adjunction gives ``S_i|_{S_i} = K_{S_i}``, hence ``S_i^3 = K_{S_i}^2`` and
  ``S_i^2 S_j = (K_{S_i}.C_ij)_{S_i}``;
* ``S_i S_j S_k`` for distinct indices counts triple points.

The Calabi-Yau condition ``(C_ij^2)_{S_i} + (C_ij^2)_{S_j} = 2g - 2`` turns
``S_i^2 S_j`` into ``(C_ij^2)_{S_j}``; both expressions are computed and
compared when a surface is checked.

Component indices are 1-based throughout, as in the input file format::

    component 1 = P2
    component 2 = F3
    glue 1:l ~ 2:e
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from itertools import combinations
from pathlib import Path
from typing import Sequence

from .lattice import DivisorClass
from .surfaces import SurfaceModel, adjunction_genus, builtin_surface, parse_curve


class SncError(ValueError):
    pass


class SncParseError(SncError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class CalabiYauError(SncError):
    pass


@dataclass(frozen=True)
class Gluing:
    """Double curve ``C_ij`` recorded as a class on both sides."""

    i: int
    j: int
    class_in_i: DivisorClass
    class_in_j: DivisorClass
    genus: int

    def other(self, k: int) -> int:
        return self.j if k == self.i else self.i

    def class_on(self, k: int) -> DivisorClass:
        if k == self.i:
            return self.class_in_i
        if k == self.j:
            return self.class_in_j
        raise SncError(f"component {k} is not on gluing {self.i}-{self.j}")


@dataclass(frozen=True)
class SncSurface:
    """Components, double curves and (optionally) triple points.

    ``triple_points`` maps a sorted index triple to the number of points where
    the three components meet; it is empty for the rank-2 surfaces of the
    tables and is filled in by toric realizations.
    """

    components: tuple[SurfaceModel, ...]
    gluings: tuple[Gluing, ...]
    triple_points: tuple[tuple[tuple[int, int, int], int], ...] = ()
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "components", tuple(self.components))
        object.__setattr__(self, "gluings", tuple(self.gluings))
        tp = tuple(sorted((tuple(sorted(k)), int(v)) for k, v in dict(self.triple_points).items()))
        object.__setattr__(self, "triple_points", tp)
        self._validate()

    def _validate(self):
        n = len(self.components)
        seen = set()
        for g in self.gluings:
            if not (1 <= g.i <= n and 1 <= g.j <= n):
                raise SncError(f"gluing {g.i}-{g.j} references a missing component")
            if g.i == g.j:
                raise SncError(f"gluing {g.i}-{g.j} must join distinct components")
            key = frozenset((g.i, g.j))
            if key in seen:
                raise SncError(f"more than one gluing between components {g.i} and {g.j}")
            seen.add(key)
            si, sj = self.components[g.i - 1], self.components[g.j - 1]
            if g.class_in_i.basis != si.basis or g.class_in_j.basis != sj.basis:
                raise SncError(f"gluing {g.i}-{g.j}: classes live on the wrong surfaces")
            if g.genus < 0:
                raise SncError(f"gluing {g.i}-{g.j}: negative genus")
            for k, c, s in ((g.i, g.class_in_i, si), (g.j, g.class_in_j, sj)):
                if c.is_zero():
                    raise SncError(f"gluing {g.i}-{g.j}: zero class on component {k}")
                gk = adjunction_genus(s, c)
                if gk != g.genus:
                    raise SncError(
                        f"gluing {g.i}-{g.j}: class {c} on {s.name} has arithmetic genus "
                        f"{gk}, expected {g.genus}")
        for (a, b, c), count in self.triple_points:
            if len({a, b, c}) != 3 or not all(1 <= x <= n for x in (a, b, c)):
                raise SncError(f"bad triple point indices {(a, b, c)}")
            if count < 0:
                raise SncError("negative triple point count")
            for p, q in ((a, b), (a, c), (b, c)):
                if frozenset((p, q)) not in seen and count:
                    raise SncError(f"triple point {(a, b, c)} without double curve {p}-{q}")
        if not self.triple_points:
            for a, b, c in combinations(range(1, n + 1), 3):
                pairs = {frozenset((a, b)), frozenset((a, c)), frozenset((b, c))}
                if pairs <= seen:
                    raise SncError(
                        f"components {a}, {b}, {c} are pairwise glued; declare their triple points")

    @property
    def rank(self) -> int:
        return len(self.components)

    def component(self, i: int) -> SurfaceModel:
        self._check_index(i)
        return self.components[i - 1]

    def gluing(self, i: int, j: int) -> Gluing | None:
        for g in self.gluings:
            if {g.i, g.j} == {i, j}:
                return g
        return None

    def triple_point_count(self, i: int, j: int, k: int) -> int:
        key = tuple(sorted((i, j, k)))
        for t, count in self.triple_points:
            if t == key:
                return count
        return 0

    def _check_index(self, i: int) -> None:
        if not 1 <= i <= self.rank:
            raise IndexError(f"component index {i} out of range 1..{self.rank}")

    def describe(self) -> str:
        if self.label:
            return self.label
        names = " u ".join(c.display_name for c in self.components)
        glue = ", ".join(
            f"{self.component(g.i).render(g.class_in_i)}~{self.component(g.j).render(g.class_in_j)}"
            for g in self.gluings)
        return f"{names} ({glue})" if glue else names


def glue(s_i: SurfaceModel, text_i: str, s_j: SurfaceModel, text_j: str,
         i: int = 1, j: int = 2) -> Gluing:
    """Gluing from curve expressions, genus read off by adjunction."""
    ci = parse_curve(text_i, s_i)
    cj = parse_curve(text_j, s_j)
    gi = adjunction_genus(s_i, ci)
    gj = adjunction_genus(s_j, cj)
    if gi != gj:
        raise SncError(f"genus mismatch across gluing: {gi} on {s_i.name}, {gj} on {s_j.name}")
    if gi.denominator != 1 or gi < 0:
        raise SncError(f"double curve {text_i} has non-integral or negative genus {gi}")
    return Gluing(i, j, ci, cj, int(gi))


def rank2(name1: str, name2: str, curve1: str, curve2: str, label: str = "") -> SncSurface:
    """``S_1 u_C S_2`` from builtin names and double-curve expressions."""
    s1, s2 = builtin_surface(name1), builtin_surface(name2)
    return SncSurface((s1, s2), (glue(s1, curve1, s2, curve2),), label=label)


# -- Calabi-Yau condition and intersection numbers --------------------------

@dataclass(frozen=True)
class CYRecord:
    i: int
    j: int
    lhs: int
    rhs: int

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class CYReport:
    records: tuple[CYRecord, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.records)

    def failures(self) -> list[CYRecord]:
        return [r for r in self.records if not r.passed]


def cy_check(s: SncSurface) -> CYReport:
    """Per double curve: ``(C^2)_{S_i} + (C^2)_{S_j}`` against ``2g - 2``."""
    out = []
    for g in s.gluings:
        si, sj = s.component(g.i), s.component(g.j)
        lhs = si.square(g.class_in_i) + sj.square(g.class_in_j)
        out.append(CYRecord(g.i, g.j, lhs, 2 * g.genus - 2))
    return CYReport(tuple(out))


def require_cy(s: SncSurface) -> None:
    rep = cy_check(s)
    if not rep.passed:
        bad = ", ".join(f"{r.i}-{r.j}: {r.lhs} != {r.rhs}" for r in rep.failures())
        raise CalabiYauError(f"Calabi-Yau condition fails ({bad})")


def curve_dot_component(s: SncSurface, host: int, gamma: DivisorClass, j: int) -> int:
    """``gamma . S_j`` for a curve class ``gamma`` on ``S_host``."""
    s._check_index(host)
    s._check_index(j)
    model = s.component(host)
    if gamma.basis != model.basis:
        raise SncError(f"curve class is not on component {host} ({model.name})")
    if j == host:
        return model.k_dot(gamma)
    g = s.gluing(host, j)
    if g is None:
        return 0
    return model.dot(gamma, g.class_on(host))


def mixed_products(s: SncSurface, g: Gluing) -> tuple[int, int, int, int]:
    """``((K_i.C)_i, (C^2)_j, (K_j.C)_j, (C^2)_i)`` for one gluing."""
    si, sj = s.component(g.i), s.component(g.j)
    ci, cj = g.class_in_i, g.class_in_j
    return si.k_dot(ci), sj.square(cj), sj.k_dot(cj), si.square(ci)


def triple_intersection(s: SncSurface, i: int, j: int, k: int) -> int:
    """``S_i S_j S_k`` in any Calabi-Yau 3-fold containing ``s``."""
    for x in (i, j, k):
        s._check_index(x)
    require_cy(s)
    idx = sorted((i, j, k))
    a, b, c = idx
    if a == b == c:
        return s.component(a).k_squared()
    if a == b or b == c:
        # repeated index r, single index t
        r, t = (a, c) if a == b else (c, a)
        g = s.gluing(r, t)
        if g is None:
            return 0
        k_dot_r = s.component(r).k_dot(g.class_on(r))
        c_sq_t = s.component(t).square(g.class_on(t))
        if k_dot_r != c_sq_t:
            # adjunction plus the CY condition force equality; keep the check loud
            raise CalabiYauError(
                f"mixed products disagree on gluing {r}-{t}: K.C={k_dot_r}, C^2={c_sq_t}")
        return k_dot_r
    return s.triple_point_count(a, b, c)


def triple_table(s: SncSurface) -> dict[tuple[int, int, int], int]:
    """All ``S_i S_j S_k`` with ``i <= j <= k``."""
    n = s.rank
    out = {}
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            for k in range(j, n + 1):
                out[(i, j, k)] = triple_intersection(s, i, j, k)
    return out


def j_squared_component(s: SncSurface, a: Sequence[int], i: int) -> int:
    """``J^2 S_i`` for ``J = sum a_p S_p``."""
    if len(a) != s.rank:
        raise ValueError(f"need {s.rank} coefficients, got {len(a)}")
    if any(x < 0 for x in a):
        raise ValueError("coefficients of J must be non-negative")
    total = 0
    for p in range(1, s.rank + 1):
        if not a[p - 1]:
            continue
        for q in range(1, s.rank + 1):
            if a[q - 1]:
                total += a[p - 1] * a[q - 1] * triple_intersection(s, p, q, i)
    return total


def j_squared_form(s: SncSurface, i: int) -> list[list[int]]:
    """Symmetric matrix ``T`` with ``J^2 S_i = a^T T a``."""
    n = s.rank
    return [[triple_intersection(s, p, q, i) for q in range(1, n + 1)] for p in range(1, n + 1)]


# -- file format ------------------------------------------------------------

_COMPONENT = re.compile(r"^component\s+(\d+)\s*=\s*(\S+)\s*$")
_GLUE = re.compile(r"^glue\s+(\d+)\s*:\s*(.+?)\s*~\s*(\d+)\s*:\s*(.+?)\s*$")
_TRIPLE = re.compile(r"^triple\s+(\d+)\s+(\d+)\s+(\d+)(?:\s+(\d+))?\s*$")


def parse_snc(text: str, label: str = "") -> SncSurface:
    """Read the line-oriented snc format.

    ``#`` starts a comment.  Besides ``component`` and ``glue`` lines a
    ``triple i j k [count]`` line declares triple points (count defaults to 1).
    """
    comps: dict[int, SurfaceModel] = {}
    raw_glues: list[tuple[int, int, str, int, str]] = []
    triples: dict[tuple[int, int, int], int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col = raw.index(line[0]) + 1
        if m := _COMPONENT.match(line):
            idx = int(m.group(1))
            if idx in comps:
                raise SncParseError(f"component {idx} declared twice", lineno, col)
            try:
                comps[idx] = builtin_surface(m.group(2))
            except ValueError as exc:
                raise SncParseError(str(exc), lineno, col + m.start(2)) from None
        elif m := _GLUE.match(line):
            raw_glues.append((lineno, int(m.group(1)), m.group(2), int(m.group(3)), m.group(4)))
        elif m := _TRIPLE.match(line):
            key = tuple(sorted(int(m.group(k)) for k in (1, 2, 3)))
            triples[key] = int(m.group(4) or 1)
        else:
            raise SncParseError(f"unrecognised line {line!r}", lineno, col)
    if not comps:
        raise SncParseError("no components declared", 1)
    n = max(comps)
    if sorted(comps) != list(range(1, n + 1)):
        raise SncParseError(f"component indices must be 1..{n} without gaps", 1)
    gluings = []
    for lineno, i, ti, j, tj in raw_glues:
        if i not in comps or j not in comps:
            raise SncParseError("glue references unknown component", lineno)
        try:
            gluings.append(glue(comps[i], ti, comps[j], tj, i, j))
        except ValueError as exc:
            raise SncParseError(str(exc), lineno) from None
    comp_list = tuple(comps[k] for k in range(1, n + 1))
    return SncSurface(comp_list, tuple(gluings), tuple(triples.items()), label)


def load_snc(path: str | Path) -> SncSurface:
    path = Path(path)
    return parse_snc(path.read_text(encoding="utf-8"), label="")


def dump_snc(s: SncSurface) -> str:
    lines = [f"component {i} = {c.name}" for i, c in enumerate(s.components, start=1)]
    for g in s.gluings:
        ci = s.component(g.i).render(g.class_in_i)
        cj = s.component(g.j).render(g.class_in_j)
        lines.append(f"glue {g.i}:{ci} ~ {g.j}:{cj}")
    for (a, b, c), count in s.triple_points:
        lines.append(f"triple {a} {b} {c} {count}")
    return "\n".join(lines) + "\n"
