"""
Built-in rational surfaces, the curve-class DSL and curve catalogs.

Surface names follow the grammar ``P2 | F<n> | dP<n> | Bl<k>F<n>``::

    P2        basis (l)                  K = -3l
    F0        basis (f1, f2)             K = -2f1 - 2f2
    Fn, n>0   basis (e, f)               K = -2e - (n+2)f,  e^2 = -n
    dPn       basis (l, x1..xn)          K = -3l + sum(xi)
    BlkFn     basis (e, f, x1..xk)       K = -2e - (n+2)f + sum(xi)
              (f1, f2, x1..xk for n = 0)

Curve classes are written as ``term (('+'|'-') term)*`` with
``term := [uint] label``; the line class is spelled ``l``.

A catalog lists the curves against which ``-C.J >= 0`` is tested.  Entries
tagged ``mori-generator`` generate the Mori cone (P2, Fn and dPn with
n <= 8 are classical).  For blow-ups of Hirzebruch surfaces the Mori cone at
general points is not tabulated, so those catalogs are ``numerical-candidate``
lists and every decision that depends on them says so.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .lattice import Basis, DivisorClass, GramForm, pair, render_class

MORI_GENERATOR = "mori-generator"
NUMERICAL_CANDIDATE = "numerical-candidate"
ROLES = (MORI_GENERATOR, NUMERICAL_CANDIDATE)

MAX_FN = 12
MAX_DP = 8
MAX_BL_K = 10
MAX_BL_N = 8
DEFAULT_SCAN_BOUND = 3


class SurfaceError(ValueError):
    pass


class CurveSyntaxError(ValueError):
    """Malformed curve expression; ``position`` is a 0-based column."""

    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at column {position + 1}: {text!r}")
        self.text = text
        self.position = position


@dataclass(frozen=True)
class NamedCurve:
    cls: DivisorClass
    label: str
    role: str = MORI_GENERATOR

    def __post_init__(self):
        if self.role not in ROLES:
            raise ValueError(f"unknown curve role {self.role!r}")


@dataclass(frozen=True)
class SurfaceModel:
    """Picard lattice, canonical class and curve catalog of one smooth surface."""

    name: str
    basis: Basis
    gram: GramForm
    canonical: DivisorClass
    curve_catalog: tuple[NamedCurve, ...] = ()
    catalog_source: str = "builtin"
    display_name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "curve_catalog", tuple(self.curve_catalog))
        if not self.display_name:
            object.__setattr__(self, "display_name", self.name)
        if self.gram.basis != self.basis or self.canonical.basis != self.basis:
            raise ValueError(f"inconsistent basis in surface model {self.name}")

    @property
    def labels(self) -> tuple[str, ...]:
        return self.basis.labels

    def dot(self, a: DivisorClass, b: DivisorClass) -> int:
        return pair(a, b, self.gram)

    def square(self, a: DivisorClass) -> int:
        return pair(a, a, self.gram)

    def k_dot(self, a: DivisorClass) -> int:
        return pair(self.canonical, a, self.gram)

    def k_squared(self) -> int:
        return self.square(self.canonical)

    def curve(self, text: str) -> DivisorClass:
        return parse_curve(text, self)

    def render(self, d: DivisorClass) -> str:
        return render_class(d)

    def catalog_roles(self) -> set[str]:
        return {c.role for c in self.curve_catalog}

    def with_catalog(self, curves, source: str) -> "SurfaceModel":
        return SurfaceModel(self.name, self.basis, self.gram, self.canonical,
                            tuple(curves), source, self.display_name)


# -- construction -----------------------------------------------------------

_NAME_RE = re.compile(r"^(?:(P2)|F(\d+)|dP(\d+)|Bl(\d+)F(\d+))$")


def _diag_block(base: list[list[int]], k: int) -> tuple[tuple[int, ...], ...]:
    n0 = len(base)
    size = n0 + k
    m = [[0] * size for _ in range(size)]
    for i in range(n0):
        for j in range(n0):
            m[i][j] = base[i][j]
    for i in range(k):
        m[n0 + i][n0 + i] = -1
    return tuple(tuple(r) for r in m)


def _hirzebruch_data(n: int) -> tuple[list[str], list[list[int]], list[int]]:
    if n == 0:
        return ["f1", "f2"], [[0, 1], [1, 0]], [-2, -2]
    return ["e", "f"], [[-n, 1], [1, 0]], [-2, -(n + 2)]


def _raw_model(name: str) -> SurfaceModel:
    m = _NAME_RE.match(name)
    if not m:
        raise SurfaceError(f"unknown surface name {name!r}")
    p2, fn, dp, blk, bln = m.groups()
    if p2:
        labels, base, kb, k = ["l"], [[1]], [-3], 0
    elif fn is not None:
        n = int(fn)
        if n > MAX_FN:
            raise SurfaceError(f"{name}: F_n supported for 0 <= n <= {MAX_FN}")
        labels, base, kb = _hirzebruch_data(n)
        k = 0
    elif dp is not None:
        k = int(dp)
        if not 1 <= k <= MAX_DP:
            raise SurfaceError(f"{name}: dP_n supported for 1 <= n <= {MAX_DP}")
        labels, base, kb = ["l"], [[1]], [-3]
    else:
        k, n = int(blk), int(bln)
        if not 1 <= k <= MAX_BL_K or n > MAX_BL_N:
            raise SurfaceError(
                f"{name}: Bl_kF_n supported for 1 <= k <= {MAX_BL_K}, 0 <= n <= {MAX_BL_N}")
        labels, base, kb = _hirzebruch_data(n)
    labels = labels + [f"x{i}" for i in range(1, k + 1)]
    basis = Basis(name, tuple(labels))
    gram = GramForm(basis, _diag_block(base, k))
    canonical = basis.element(tuple(kb) + (1,) * k)
    return SurfaceModel(name, basis, gram, canonical)


@lru_cache(maxsize=None)
def builtin_surface(name: str) -> SurfaceModel:
    """Model for a surface name such as ``"P2"``, ``"F3"``, ``"dP2"``, ``"Bl5F3"``."""
    model = _raw_model(name)
    curves, source = _default_catalog(model)
    return model.with_catalog(curves, source)


# -- curve DSL --------------------------------------------------------------

def parse_curve(text: str, model: SurfaceModel) -> DivisorClass:
    """Parse ``"2l-x1-x2"``-style text into a class on ``model``."""
    labels = model.labels
    coeffs = [0] * len(labels)
    pos = 0
    n = len(text)
    expect_term = True
    sign = 1
    seen_term = False
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        if expect_term:
            if text[pos] in "+-" and not seen_term:
                sign = -1 if text[pos] == "-" else 1
                pos += 1
                while pos < n and text[pos].isspace():
                    pos += 1
            mult = 1
            m = re.match(r"\d+", text[pos:])
            if m:
                mult = int(m.group())
                pos += m.end()
                while pos < n and text[pos].isspace():
                    pos += 1
            m = re.match(r"[A-Za-z][A-Za-z0-9]*", text[pos:])
            if not m:
                raise CurveSyntaxError("expected a basis label", text, pos)
            word = m.group()
            if word not in labels:
                raise CurveSyntaxError(
                    f"unknown label {word!r} for {model.name} (labels: {', '.join(labels)})",
                    text, pos)
            coeffs[labels.index(word)] += sign * mult
            pos += m.end()
            seen_term = True
            expect_term = False
        else:
            c = text[pos]
            if c not in "+-":
                raise CurveSyntaxError(f"expected '+' or '-', found {c!r}", text, pos)
            sign = -1 if c == "-" else 1
            pos += 1
            expect_term = True
    if not seen_term:
        raise CurveSyntaxError("empty curve expression", text, len(text))
    if expect_term:
        raise CurveSyntaxError("dangling operator", text, len(text))
    return model.basis.element(coeffs)


def render_curve(d: DivisorClass) -> str:
    return render_class(d)


def adjunction_genus(model: SurfaceModel, c: DivisorClass) -> Fraction:
    """Arithmetic genus from ``2g - 2 = C^2 + K.C``."""
    return Fraction(model.square(c) + model.k_dot(c), 2) + 1


# -- numerical curve scans --------------------------------------------------

@lru_cache(maxsize=None)
def _completions(k: int, sumsq: int, total: int, bound: int) -> tuple[tuple[int, ...], ...]:
    """Integer tuples ``c`` of length ``k`` in ``[-bound, bound]`` with
    ``sum(c^2) = sumsq`` and ``sum(c) = total``."""
    if sumsq < 0 or sumsq > k * bound * bound:
        return ()
    if k == 0:
        return ((),) if sumsq == 0 and total == 0 else ()
    # Cauchy-Schwarz: total^2 <= k * sumsq
    if total * total > k * sumsq:
        return ()
    out = []
    for c in range(-bound, bound + 1):
        rest = sumsq - c * c
        if rest < 0:
            continue
        out.extend((c,) + tail for tail in _completions(k - 1, rest, total - c, bound))
    return tuple(out)


def _base_split(model: SurfaceModel) -> int:
    """Number of leading basis entries that are not exceptional classes."""
    return sum(1 for lab in model.labels if not re.fullmatch(r"x\d+", lab))


def numerical_classes(model: SurfaceModel, square: int, k_dot: int, bound: int) -> list[DivisorClass]:
    """All nonzero classes with coefficients in ``[-bound, bound]``,
    ``C^2 = square`` and ``K.C = k_dot``.

    The exceptional part is orthogonal with ``x_i^2 = -1`` and ``K.x_i = -1``,
    so it is enumerated by the two power sums instead of a full box scan.
    """
    nb = _base_split(model)
    k = len(model.labels) - nb
    basis = model.basis
    out: list[DivisorClass] = []
    ranges = [range(-bound, bound + 1)] * nb

    def base_vectors(i: int, prefix: tuple[int, ...]):
        if i == nb:
            yield prefix
            return
        for c in ranges[i]:
            yield from base_vectors(i + 1, prefix + (c,))

    zeros = (0,) * k
    for base in base_vectors(0, ()):
        a = basis.element(base + zeros)
        a_sq = model.square(a)
        a_k = model.k_dot(a)
        # C^2 = A^2 - sum c^2 ; K.C = K.A - sum c
        for tail in _completions(k, a_sq - square, a_k - k_dot, bound):
            coeffs = base + tail
            if any(coeffs):
                out.append(basis.element(coeffs))
    return out


def candidate_negative_classes(model: SurfaceModel, coeff_bound: int = DEFAULT_SCAN_BOUND) -> list[DivisorClass]:
    """Numerical (-1)- and (-2)-classes plus fiber-type (0, -2) classes.

    A surface with a negative section ``e`` gets it appended unconditionally.
    Order: (-1)-classes, (-2)-classes, fiber-type, then ``e``; each group in
    lexicographic coefficient order.
    """
    if coeff_bound < 1:
        raise ValueError("coeff_bound must be >= 1")
    found: list[DivisorClass] = []
    seen: set[tuple[int, ...]] = set()
    for sq, kd in ((-1, -1), (-2, 0), (0, -2)):
        for c in sorted(numerical_classes(model, sq, kd, coeff_bound), key=lambda d: d.coeffs):
            if c.coeffs not in seen:
                seen.add(c.coeffs)
                found.append(c)
    if "e" in model.labels:
        e = model.basis.unit("e")
        if e.coeffs not in seen:
            found.append(e)
    return found


def _certain_curves(model: SurfaceModel) -> list[DivisorClass]:
    """Curves irreducible on a blow-up of F_n at general points:
    ``e`` (n > 0), the ``x_i`` and the fiber transforms ``f - x_i``."""
    b = model.basis
    out = []
    if "e" in model.labels:
        out.append(b.unit("e"))
    fiber = b.unit("f") if "f" in model.labels else None
    for lab in model.labels:
        if re.fullmatch(r"x\d+", lab):
            out.append(b.unit(lab))
            if fiber is not None:
                out.append(fiber - b.unit(lab))
    return out


def general_position_filter(model: SurfaceModel, classes: list[DivisorClass]) -> list[DivisorClass]:
    """Drop classes that cannot be irreducible when the blown-up points are general.

    Two distinct irreducible curves meet non-negatively, so a class pairing
    negatively with a known irreducible curve other than itself is reducible
    (for example ``f - x1 - x2`` needs two points on one fiber).  Apart from
    those known curves, a class whose expected dimension ``(C^2 - K.C)/2`` is
    negative is also dropped: general points impose independent conditions on
    it, so it has no effective member (``e + 3f - x1 - ... - x6`` on Bl6F2).
    """
    known = _certain_curves(model)
    g = model.gram.matrix
    # rows G.d, so each test below is a plain dot product
    probes = [tuple(sum(row[j] * d.coeffs[j] for j in range(len(row))) for row in g) for d in known]
    gk = tuple(sum(row[j] * model.canonical.coeffs[j] for j in range(len(row))) for row in g)
    kept = []
    for c in classes:
        if c in known:
            kept.append(c)
            continue
        v = c.coeffs
        sq = sum(a * sum(r * b for r, b in zip(row, v)) for a, row in zip(v, g) if a)
        if sq - sum(a * b for a, b in zip(v, gk)) < 0:
            continue
        if all(sum(a * b for a, b in zip(v, pr)) >= 0 for pr in probes):
            kept.append(c)
    return kept


def _default_catalog(model: SurfaceModel) -> tuple[list[NamedCurve], str]:
    name = model.name
    b = model.basis
    if name == "P2":
        return [NamedCurve(b.unit("l"), "l")], "builtin:P2 line"
    if name.startswith("F"):
        curves = [NamedCurve(b.unit(lab), lab) for lab in model.labels]
        return curves, f"builtin:{name} torus-invariant generators"
    if name.startswith("dP"):
        k = len(model.labels) - 1
        bound = DEFAULT_SCAN_BOUND if k <= 7 else 6
        minus_one = sorted(numerical_classes(model, -1, -1, bound), key=lambda d: d.coeffs)
        curves = [NamedCurve(c, render_class(c)) for c in minus_one]
        if k == 1:
            ruling = b.unit("l") - b.unit("x1")
            curves.append(NamedCurve(ruling, render_class(ruling)))
        curves.append(NamedCurve(b.unit("l"), "l"))
        return curves, f"builtin:{name} (-1)-curves (scan bound {bound}) + l"
    # blow-ups of Hirzebruch surfaces
    cands = candidate_negative_classes(model, DEFAULT_SCAN_BOUND)
    cands = general_position_filter(model, cands)
    extra = [b.unit(lab) for lab in model.labels[:2]]
    curves = [NamedCurve(c, render_class(c), NUMERICAL_CANDIDATE) for c in cands]
    have = {c.coeffs for c in cands}
    for c in extra:
        if c.coeffs not in have:
            curves.append(NamedCurve(c, render_class(c), NUMERICAL_CANDIDATE))
    return curves, (f"numerical:{name} candidates (scan bound {DEFAULT_SCAN_BOUND}, "
                    "general-position filter) + base generators")


def surface_from_gram(name: str, labels, matrix, canonical, curves=(), source="custom",
                      display_name: str = "") -> SurfaceModel:
    """Ad-hoc model, e.g. a toric surface described by its torus-invariant curves."""
    basis = Basis(name, tuple(labels))
    gram = GramForm(basis, matrix)
    k = basis.element(tuple(canonical))
    model = SurfaceModel(name, basis, gram, k, (), source, display_name)
    named = [c if isinstance(c, NamedCurve) else NamedCurve(c, render_class(c)) for c in curves]
    return model.with_catalog(named, source)
