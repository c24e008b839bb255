"""
Exact integer and rational arithmetic for divisor classes.

Classes live in the Picard lattice of a single surface.  A :class:`Basis`
names that lattice, a :class:`DivisorClass` is an integer vector over it and a
:class:`GramForm` is the (symmetric) intersection pairing.  Nothing in this
package touches floating point; rationals are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import Iterable, Sequence

Rational = Fraction


class BasisMismatchError(ValueError):
    """Two objects defined over different Picard bases were combined."""


def parse_rational(text: str) -> Fraction:
    return Fraction(text.strip())


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


def gcd_list(values: Iterable[int]) -> int:
    g = 0
    for v in values:
        g = gcd(g, int(v))
    return g


@dataclass(frozen=True)
class Basis:
    """An ordered list of labels spanning the Picard lattice of one surface."""

    name: str
    labels: tuple[str, ...]

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(set(self.labels)) != len(self.labels):
            raise ValueError(f"duplicate labels in basis {self.name}: {self.labels}")

    def __len__(self):
        return len(self.labels)

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def zero(self) -> "DivisorClass":
        return DivisorClass(self, (0,) * len(self.labels))

    def unit(self, label: str) -> "DivisorClass":
        coeffs = [0] * len(self.labels)
        coeffs[self.index(label)] = 1
        return DivisorClass(self, tuple(coeffs))

    def element(self, coeffs: Sequence[int]) -> "DivisorClass":
        return DivisorClass(self, tuple(coeffs))


def _check_same(a: Basis, b: Basis) -> None:
    if a != b:
        raise BasisMismatchError(f"basis mismatch: {a.name} vs {b.name}")


@dataclass(frozen=True)
class DivisorClass:
    """Integer vector over a named basis.

    Supports ``+``, ``-``, negation and multiplication by an integer; any
    operation mixing two bases raises :class:`BasisMismatchError`.
    """

    basis: Basis
    coeffs: tuple[int, ...]

    def __post_init__(self):
        coeffs = tuple(self.coeffs)
        for c in coeffs:
            if isinstance(c, bool) or not isinstance(c, int):
                raise TypeError(f"divisor coefficients must be integers, got {c!r}")
        if len(coeffs) != len(self.basis):
            raise ValueError(
                f"{len(coeffs)} coefficients for basis {self.basis.name} "
                f"of size {len(self.basis)}"
            )
        object.__setattr__(self, "coeffs", coeffs)

    @property
    def basis_id(self) -> str:
        return self.basis.name

    def __add__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same(self.basis, other.basis)
        return DivisorClass(self.basis, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "DivisorClass") -> "DivisorClass":
        _check_same(self.basis, other.basis)
        return DivisorClass(self.basis, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "DivisorClass":
        return DivisorClass(self.basis, tuple(-a for a in self.coeffs))

    def __mul__(self, k: int) -> "DivisorClass":
        if isinstance(k, bool) or not isinstance(k, int):
            return NotImplemented
        return DivisorClass(self.basis, tuple(k * a for a in self.coeffs))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __str__(self) -> str:
        return render_class(self)


@dataclass(frozen=True)
class GramForm:
    """Symmetric integer intersection matrix over a basis."""

    basis: Basis
    matrix: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = tuple(tuple(int(x) for x in row) for row in self.matrix)
        n = len(self.basis)
        if len(m) != n or any(len(row) != n for row in m):
            raise ValueError(f"Gram matrix must be {n}x{n} for basis {self.basis.name}")
        for i in range(n):
            for j in range(i):
                if m[i][j] != m[j][i]:
                    raise ValueError(f"Gram matrix for {self.basis.name} is not symmetric")
        object.__setattr__(self, "matrix", m)

    @property
    def basis_id(self) -> str:
        return self.basis.name


def pair(a: DivisorClass, b: DivisorClass, g: GramForm) -> int:
    """Intersection number ``a^T G b``."""
    _check_same(a.basis, b.basis)
    _check_same(a.basis, g.basis)
    total = 0
    for i, ai in enumerate(a.coeffs):
        if ai:
            row = g.matrix[i]
            total += ai * sum(r * bj for r, bj in zip(row, b.coeffs))
    return total


def combine(terms: Sequence[tuple[int, DivisorClass]], basis: Basis | None = None) -> DivisorClass:
    """Integer linear combination of classes on one basis.

    ``basis`` is needed only to give the empty combination a home.
    """
    if not terms:
        if basis is None:
            raise ValueError("empty combination needs an explicit basis")
        return basis.zero()
    first = terms[0][1].basis
    if basis is not None:
        _check_same(basis, first)
    acc = [0] * len(first)
    for k, d in terms:
        _check_same(first, d.basis)
        for i, c in enumerate(d.coeffs):
            acc[i] += k * c
    return DivisorClass(first, tuple(acc))


def render_class(d: DivisorClass) -> str:
    """Canonical text for a class, e.g. ``2l-x1-x2`` or ``0``."""
    parts: list[str] = []
    for c, label in zip(d.coeffs, d.basis.labels):
        if c == 0:
            continue
        mag = "" if abs(c) == 1 else str(abs(c))
        sign = "-" if c < 0 else "+"
        if not parts:
            parts.append(("-" if c < 0 else "") + mag + label)
        else:
            parts.append(sign + mag + label)
    return "".join(parts) if parts else "0"


# -- exact comparison of quadratic irrationals ------------------------------

def _sqrt_bounds(d: Fraction, bits: int) -> tuple[Fraction, Fraction]:
    """Rational ``lo <= sqrt(d) <= hi`` with ``hi - lo <= 2**-bits``."""
    scale = 1 << bits
    num = d.numerator * d.denominator
    r = isqrt(num * scale * scale)
    lo = Fraction(r, scale * d.denominator)
    if r * r == num * scale * scale:
        return lo, lo
    return lo, Fraction(r + 1, scale * d.denominator)


def _rational_sqrt(d: Fraction) -> Fraction | None:
    n, m = d.numerator, d.denominator
    rn, rm = isqrt(n), isqrt(m)
    if rn * rn == n and rm * rm == m:
        return Fraction(rn, rm)
    return None


@dataclass(frozen=True)
class QuadraticIrrational:
    """The real number ``p + s*sqrt(d)`` with rational ``p, s`` and ``d >= 0``.

    Used to locate roots of rational quadratics without leaving exact
    arithmetic.  Rational values are normalised to ``s = 0``.
    """

    p: Fraction
    s: Fraction = Fraction(0)
    d: Fraction = Fraction(0)

    def __post_init__(self):
        p, s, d = Fraction(self.p), Fraction(self.s), Fraction(self.d)
        if d < 0:
            raise ValueError("negative radicand")
        root = _rational_sqrt(d)
        if root is not None:
            p, s, d = p + s * root, Fraction(0), Fraction(0)
        elif s == 0:
            d = Fraction(0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "d", d)

    def is_rational(self) -> bool:
        return self.s == 0

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        if self.s == 0:
            return self.p, self.p
        lo, hi = _sqrt_bounds(self.d, bits)
        a, b = self.p + self.s * lo, self.p + self.s * hi
        return (a, b) if a <= b else (b, a)

    def __eq__(self, other):
        if not isinstance(other, QuadraticIrrational):
            other = QuadraticIrrational(Fraction(other))
        return (self.p == other.p and (self.s > 0) == (other.s > 0)
                and self.s * self.s * self.d == other.s * other.s * other.d)

    def __hash__(self):
        return hash((self.p, self.s * self.s * self.d, self.s > 0))

    def _cmp(self, other) -> int:
        if not isinstance(other, QuadraticIrrational):
            other = QuadraticIrrational(Fraction(other))
        if self == other:
            return 0
        bits = 8
        while True:
            a_lo, a_hi = self.bounds(bits)
            b_lo, b_hi = other.bounds(bits)
            if a_hi < b_lo:
                return -1
            if b_hi < a_lo:
                return 1
            bits *= 2

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __repr__(self):
        if self.s == 0:
            return f"QuadraticIrrational({format_rational(self.p)})"
        return f"QuadraticIrrational({format_rational(self.p)} + {format_rational(self.s)}*sqrt({format_rational(self.d)}))"


def rational_between(x: QuadraticIrrational, y: QuadraticIrrational) -> Fraction:
    """A rational strictly between ``x < y``."""
    if not x < y:
        raise ValueError("rational_between needs x < y")
    bits = 8
    while True:
        _, x_hi = x.bounds(bits)
        y_lo, _ = y.bounds(bits)
        if x_hi < y_lo:
            if x.is_rational() and y.is_rational():
                return (x.p + y.p) / 2
            return (x_hi + y_lo) / 2
        bits *= 2


def quadratic_roots(a: Fraction, b: Fraction, c: Fraction) -> list[QuadraticIrrational]:
    """Sorted distinct real roots of ``a t^2 + b t + c`` (not all zero)."""
    a, b, c = Fraction(a), Fraction(b), Fraction(c)
    if a == 0:
        if b == 0:
            return []
        return [QuadraticIrrational(-c / b)]
    disc = b * b - 4 * a * c
    if disc < 0:
        return []
    centre = -b / (2 * a)
    if disc == 0:
        return [QuadraticIrrational(centre)]
    half = Fraction(1, 2 * abs(a))
    return [QuadraticIrrational(centre, -half, disc), QuadraticIrrational(centre, half, disc)]


# -- small integer linear algebra -------------------------------------------

def ext_gcd(a: int, b: int) -> tuple[int, int, int]:
    """``(g, x, y)`` with ``a*x + b*y = g = gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        a, x0, y0 = -a, -x0, -y0
    return a, x0, y0


def det2(u: Sequence[int], v: Sequence[int]) -> int:
    return u[0] * v[1] - u[1] * v[0]


def hermite_basis_2d(generators: Iterable[Sequence[int]]) -> tuple[tuple[int, int], tuple[int, int]]:
    """A basis ``(b1, b2)`` of the rank-2 sublattice of Z^2 spanned by ``generators``.

    The result is in column-style Hermite form: ``b1 = (h11, h21)``,
    ``b2 = (0, h22)`` with ``h11, h22 > 0``.
    """
    gens = [tuple(int(x) for x in g) for g in generators]
    # first coordinates: combine to gcd
    g1 = 0
    first = (0, 0)
    rest: list[tuple[int, int]] = []
    for v in gens:
        if v[0] == 0:
            rest.append(v)
            continue
        if g1 == 0:
            g1, first = v[0], v
            continue
        g, x, y = ext_gcd(first[0], v[0])
        new_first = (g, x * first[1] + y * v[1])
        # the other unimodular combination kills the first coordinate
        a, b = v[0] // g, first[0] // g
        killed = (0, a * first[1] - b * v[1])
        first, g1 = new_first, g
        rest.append(killed)
    h22 = gcd_list(v[1] for v in rest)
    if g1 == 0 or h22 == 0:
        raise ValueError("generators do not span a rank-2 lattice")
    if first[0] < 0:
        first = (-first[0], -first[1])
    return (first[0], first[1] % h22), (0, h22)


def solve_2x2(m: Sequence[Sequence[int]], rhs: Sequence[int]) -> tuple[Fraction, Fraction]:
    """Solve ``m @ x = rhs`` exactly for a nonsingular 2x2 ``m``."""
    det = m[0][0] * m[1][1] - m[0][1] * m[1][0]
    if det == 0:
        raise ZeroDivisionError("singular 2x2 system")
    x = Fraction(rhs[0] * m[1][1] - m[0][1] * rhs[1], det)
    y = Fraction(m[0][0] * rhs[1] - m[1][0] * rhs[0], det)
    return x, y
