"""
Deciding pre-shrinkability.

For ``J = sum a_i S_i`` with integers ``a_i >= 0`` the three conditions are

    (i)   -C.J >= 0 for every catalog curve C,
    (ii)  J^2 S_i >= 0 for every i,
    (iii) J^2 S_i > 0 for some i.

All of them are sign conditions on forms that are homogeneous in ``a``
(linear for (i), quadratic for (ii) and (iii)).  So a rational solution
scales to an integer one, and a rank-2 problem reduces to a question about a
single ray parameter.  :func:`decide_rank2` walks the segment
``a = (1 - s, s)``, ``0 <= s <= 1``: condition (i) cuts out a closed
interval with rational ends, the quadratics change sign only at their roots,
and one rational test point per cell of the root arrangement (plus the
rational critical points themselves) decides the question exactly.  An
isolated solution is always rational, because it is either an interval end or
a double root.  Integer certificates are then the smallest ``a_1 + a_2``,
ties broken by the smaller ``a_1``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import gcd
from typing import Iterator, Mapping, Sequence

from .lattice import (QuadraticIrrational, format_rational, gcd_list, parse_rational,
                      quadratic_roots, rational_between)
from .snc import SncSurface, cy_check, curve_dot_component, j_squared_form
from .surfaces import MORI_GENERATOR, NamedCurve

PRE_SHRINKABLE = "PreShrinkable"
NOT_PRE_SHRINKABLE = "NotPreShrinkable"
INCONCLUSIVE = "Inconclusive"
STATUSES = (PRE_SHRINKABLE, NOT_PRE_SHRINKABLE, INCONCLUSIVE)

DEFAULT_A_MAX = 25
DEGENERATE_III = "rank-(iii)-degenerate"

Catalogs = Mapping[int, Sequence[NamedCurve]]


@dataclass(frozen=True)
class Constraint:
    """Condition (i) for one curve: ``sum_j coeffs[j] * a_j <= 0``."""

    host: int
    curve: NamedCurve
    coeffs: tuple[int, ...]

    def value(self, a: Sequence[int]) -> int:
        return sum(c * x for c, x in zip(self.coeffs, a))

    def describe(self) -> str:
        terms = []
        for j, c in enumerate(self.coeffs, start=1):
            if c:
                terms.append(f"{c:+d}*a{j}")
        lhs = " ".join(terms) if terms else "0"
        return f"{self.curve.label} on S{self.host}: {lhs} <= 0"


@dataclass
class ShrinkReport:
    surface: str
    cy: bool
    status: str
    certificate: tuple[int, ...] | None = None
    witness: str | None = None
    catalog_provenance: tuple[str, ...] = ()
    ray_interval: tuple[Fraction, Fraction | None] | None = None
    j_squared: tuple[int, ...] | None = None
    notes: tuple[str, ...] = ()
    method: str = ""

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")
        if self.status == PRE_SHRINKABLE and self.certificate is None:
            raise ValueError("PreShrinkable report without certificate")
        if self.status == NOT_PRE_SHRINKABLE and not self.witness:
            raise ValueError("NotPreShrinkable report without witness")

    def to_dict(self) -> dict:
        interval = None
        if self.ray_interval is not None:
            lo, hi = self.ray_interval
            interval = [format_rational(lo), "inf" if hi is None else format_rational(hi)]
        return {
            "surface": self.surface,
            "cy": self.cy,
            "status": self.status,
            "certificate": list(self.certificate) if self.certificate is not None else None,
            "interval": interval,
            "catalogs": list(self.catalog_provenance),
            "witness": self.witness,
            "j_squared": list(self.j_squared) if self.j_squared is not None else None,
            "notes": list(self.notes),
            "method": self.method,
        }

    @classmethod
    def from_dict(cls, d: Mapping) -> "ShrinkReport":
        interval = d.get("interval")
        if interval is not None:
            lo, hi = interval
            interval = (parse_rational(lo), None if hi == "inf" else parse_rational(hi))
        cert = d.get("certificate")
        j2 = d.get("j_squared")
        return cls(
            surface=d["surface"],
            cy=bool(d["cy"]),
            status=d["status"],
            certificate=tuple(cert) if cert is not None else None,
            witness=d.get("witness"),
            catalog_provenance=tuple(d.get("catalogs", ())),
            ray_interval=interval,
            j_squared=tuple(j2) if j2 is not None else None,
            notes=tuple(d.get("notes", ())),
            method=d.get("method", ""),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "ShrinkReport":
        return cls.from_dict(json.loads(text))


# -- catalogs and condition (i) ---------------------------------------------

def resolve_catalogs(s: SncSurface, catalogs: Catalogs | None = None) -> dict[int, tuple[NamedCurve, ...]]:
    out = {}
    for i, comp in enumerate(s.components, start=1):
        if catalogs is not None and i in catalogs:
            out[i] = tuple(catalogs[i])
        else:
            out[i] = comp.curve_catalog
    return out


def catalog_provenance(s: SncSurface, catalogs: Catalogs | None = None) -> tuple[str, ...]:
    cats = resolve_catalogs(s, catalogs)
    out = []
    for i, comp in enumerate(s.components, start=1):
        roles = sorted({c.role for c in cats[i]})
        source = comp.catalog_source if catalogs is None or i not in catalogs else "user-supplied"
        out.append(f"S{i}={comp.display_name}: {source} [{', '.join(roles) or 'empty'}; "
                   f"{len(cats[i])} curves]")
    return tuple(out)


def condition_i_inequalities(s: SncSurface, catalogs: Catalogs | None = None) -> list[Constraint]:
    """One linear form per (component, catalog curve); each must be ``<= 0``.

    ``C.J`` is linear in the class of ``C``, so testing the generators of the
    effective cone of each component covers every curve on ``S``.
    """
    rep = cy_check(s)
    if not rep.passed:
        from .snc import CalabiYauError
        raise CalabiYauError("condition (i) needs the Calabi-Yau condition to hold")
    cats = resolve_catalogs(s, catalogs)
    out = []
    for i in range(1, s.rank + 1):
        for curve in cats[i]:
            coeffs = tuple(curve_dot_component(s, i, curve.cls, j) for j in range(1, s.rank + 1))
            out.append(Constraint(i, curve, coeffs))
    return out


def _quad_value(t: Sequence[Sequence[int]], a: Sequence[int]) -> int:
    n = len(a)
    return sum(a[p] * a[q] * t[p][q] for p in range(n) for q in range(n) if a[p] and a[q])


# -- independent certificate check ------------------------------------------

@dataclass(frozen=True)
class CertificateCheck:
    a: tuple[int, ...]
    condition_i: bool
    violations: tuple[str, ...]
    j_squared: tuple[int, ...]
    condition_ii: bool
    condition_iii: bool

    @property
    def ok(self) -> bool:
        return self.condition_i and self.condition_ii and self.condition_iii

    def __bool__(self) -> bool:
        return self.ok


def certificate_verify(s: SncSurface, a: Sequence[int], catalogs: Catalogs | None = None) -> CertificateCheck:
    """Re-evaluate (i)-(iii) for ``J = sum a_i S_i`` from the intersection data."""
    from .snc import j_squared_component

    a = tuple(int(x) for x in a)
    if len(a) != s.rank:
        raise ValueError(f"need {s.rank} coefficients")
    if any(x < 0 for x in a):
        raise ValueError("coefficients must be non-negative")
    cats = resolve_catalogs(s, catalogs)
    violations = []
    for i in range(1, s.rank + 1):
        for curve in cats[i]:
            cj = sum(a[j - 1] * curve_dot_component(s, i, curve.cls, j) for j in range(1, s.rank + 1))
            if -cj < 0:
                violations.append(f"-C.J = {-cj} for C = {curve.label} on S{i}")
    j2 = tuple(j_squared_component(s, a, i) for i in range(1, s.rank + 1))
    return CertificateCheck(
        a=a,
        condition_i=not violations,
        violations=tuple(violations),
        j_squared=j2,
        condition_ii=all(v >= 0 for v in j2),
        condition_iii=any(v > 0 for v in j2),
    )


# -- rank 1 and 2 -----------------------------------------------------------

def _segment_quadratic(t: Sequence[Sequence[int]]) -> tuple[int, int, int]:
    """Coefficients ``(A, B, C)`` of ``Q(1 - s, s) = A s^2 + B s + C``."""
    t11, t12, t22 = t[0][0], t[0][1], t[1][1]
    return t11 - 2 * t12 + t22, 2 * t12 - 2 * t11, t11


def _eval(q: tuple[int, int, int], s: Fraction) -> Fraction:
    a, b, c = q
    return (a * s + b) * s + c


def _condition_i_interval(constraints: Sequence[Constraint]) -> tuple[Fraction, Fraction] | None:
    lo, hi = Fraction(0), Fraction(1)
    for con in constraints:
        alpha, beta = con.coeffs
        c1 = beta - alpha
        if c1 == 0:
            if alpha > 0:
                return None
            continue
        bound = Fraction(-alpha, c1)
        if c1 > 0:
            hi = min(hi, bound)
        else:
            lo = max(lo, bound)
    if lo > hi:
        return None
    return lo, hi


def _feasible_point(lo: Fraction, hi: Fraction, quads) -> tuple[Fraction | None, bool]:
    """Rational ``s`` in ``[lo, hi]`` with all quads ``>= 0`` and one ``> 0``.

    Second value: whether some point satisfies ``>= 0`` everywhere with all
    values zero (the degenerate case of condition (iii)).
    """
    lo_q, hi_q = QuadraticIrrational(lo), QuadraticIrrational(hi)
    crit = {lo_q, hi_q}
    for a, b, c in quads:
        if a == 0 and b == 0:
            continue
        for r in quadratic_roots(a, b, c):
            if lo_q <= r <= hi_q:
                crit.add(r)
        if a != 0:
            v = QuadraticIrrational(Fraction(-b, 2 * a))
            if lo_q <= v <= hi_q:
                crit.add(v)
    pts = sorted(crit)
    tests = [p.p for p in pts if p.is_rational()]
    tests += [rational_between(x, y) for x, y in zip(pts, pts[1:])]
    tests.sort()
    degenerate = False
    for sv in tests:
        vals = [_eval(q, sv) for q in quads]
        if all(v >= 0 for v in vals):
            if any(v > 0 for v in vals):
                return sv, degenerate
            degenerate = True
    return None, degenerate


def _chain_witness(constraints: Sequence[Constraint]) -> str:
    """Human-readable reason why condition (i) forces ``J = 0`` in rank 2."""
    def forcing(k: int):
        other = 1 - k
        for con in constraints:
            if con.coeffs[k] > 0 and con.coeffs[other] >= 0:
                return con
        return None

    for first, second in ((1, 0), (0, 1)):
        c1 = forcing(first)
        if c1 is None:
            continue
        for con in constraints:
            if con.coeffs[second] > 0:
                return (f"a{first + 1}<=0 [{c1.describe()}] => "
                        f"a{second + 1}<=0 [{con.describe()}] => J=0 violates (iii)")
    lower = [(Fraction(c.coeffs[0], -c.coeffs[1]), c) for c in constraints
             if c.coeffs[0] > 0 and c.coeffs[1] < 0]
    upper = [(Fraction(-c.coeffs[0], c.coeffs[1]), c) for c in constraints
             if c.coeffs[0] < 0 and c.coeffs[1] > 0]
    if lower and upper:
        tl, cl = max(lower, key=lambda x: x[0])
        tu, cu = min(upper, key=lambda x: x[0])
        return (f"a2/a1 >= {format_rational(tl)} [{cl.describe()}] and "
                f"a2/a1 <= {format_rational(tu)} [{cu.describe()}] => a1=a2=0 => "
                "J=0 violates (iii)")
    return "condition (i) admits only J=0, which violates (iii)"


def _to_t(s: Fraction) -> Fraction | None:
    return None if s == 1 else s / (1 - s)


def _minimal_certificate(constraints, forms, limit: int) -> tuple[int, int]:
    for total in range(1, limit + 1):
        for a1 in range(0, total + 1):
            a = (a1, total - a1)
            if gcd(*a) != 1:
                continue
            if any(c.value(a) > 0 for c in constraints):
                continue
            vals = [_quad_value(t, a) for t in forms]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                return a
    raise AssertionError("no integer certificate below the rational witness")


def _solve_rank2(s: SncSurface, constraints: Sequence[Constraint]):
    forms = [j_squared_form(s, i) for i in (1, 2)]
    quads = [_segment_quadratic(t) for t in forms]
    interval = _condition_i_interval(constraints)
    if interval is None:
        return None, None, _chain_witness(constraints), False
    lo, hi = interval
    point, degenerate = _feasible_point(lo, hi, quads)
    if point is None:
        ends = ", ".join(
            f"J^2S{i + 1}(s)={q[0]}s^2{q[1]:+d}s{q[2]:+d}" for i, q in enumerate(quads))
        witness = (f"condition (i) leaves rays s=a2/(a1+a2) in [{format_rational(lo)}, "
                   f"{format_rational(hi)}] but no ray there has {ends} all >= 0 with one > 0")
        return interval, None, witness, degenerate
    cert = _minimal_certificate(constraints, forms, point.denominator)
    return interval, cert, None, degenerate


def _solve_rank1(s: SncSurface, constraints: Sequence[Constraint]):
    k2 = s.component(1).k_squared()
    bad = [c for c in constraints if c.coeffs[0] > 0]
    if bad:
        return None, f"K.C > 0 for {bad[0].curve.label}, so a1<=0 and J=0 violates (iii)", False
    if k2 > 0:
        return (1,), None, False
    if k2 == 0:
        return None, "K^2 = 0: J^2 S1 = 0 for every J", True
    return None, f"K^2 = {k2} < 0 violates (ii)", False


def decide_rank2(s: SncSurface, catalogs: Catalogs | None = None) -> ShrinkReport:
    """Exact decision for rank 1 and rank 2 surfaces."""
    if s.rank not in (1, 2):
        raise ValueError("decide_rank2 handles rank 1 and 2; use search_rank_n")
    name = s.describe()
    prov = catalog_provenance(s, catalogs)
    rep = cy_check(s)
    if not rep.passed:
        bad = "; ".join(f"S{r.i}.S{r.j}: {r.lhs} != {r.rhs}" for r in rep.failures())
        return ShrinkReport(name, False, NOT_PRE_SHRINKABLE,
                            witness=f"Calabi-Yau condition fails ({bad})",
                            catalog_provenance=prov, method="cy-check")
    cats = resolve_catalogs(s, catalogs)
    empty = [i for i, c in cats.items() if not c]
    if empty:
        return ShrinkReport(name, True, INCONCLUSIVE, catalog_provenance=prov,
                            witness=f"empty curve catalog on S{empty[0]}",
                            notes=("condition (i) cannot be evaluated",), method="exact")

    def run(constraints):
        if s.rank == 1:
            cert, witness, degenerate = _solve_rank1(s, constraints)
            return None, cert, witness, degenerate
        return _solve_rank2(s, constraints)

    constraints = condition_i_inequalities(s, catalogs)
    interval, cert, witness, degenerate = run(constraints)
    ray = None
    if interval is not None:
        ray = (interval[0] / (1 - interval[0]) if interval[0] != 1 else None, _to_t(interval[1]))
        if ray[0] is None:
            ray = None
    if cert is not None:
        check = certificate_verify(s, cert, catalogs)
        if not check.ok:
            raise AssertionError(f"internal error: certificate {cert} fails verification")
        return ShrinkReport(name, True, PRE_SHRINKABLE, certificate=tuple(cert),
                            catalog_provenance=prov, ray_interval=ray,
                            j_squared=check.j_squared, method="exact")
    notes = [DEGENERATE_III] if degenerate else []
    uncertain = any(c.curve.role != MORI_GENERATOR for c in constraints)
    if uncertain:
        firm = [c for c in constraints if c.curve.role == MORI_GENERATOR]
        _, firm_cert, _, _ = run(firm)
        if firm_cert is not None:
            notes.append("negative only relative to numerical-candidate curves")
            return ShrinkReport(name, True, INCONCLUSIVE, witness=witness,
                                catalog_provenance=prov, ray_interval=ray,
                                notes=tuple(notes), method="exact")
    return ShrinkReport(name, True, NOT_PRE_SHRINKABLE, witness=witness,
                        catalog_provenance=prov, ray_interval=ray,
                        notes=tuple(notes), method="exact")


# -- rank n ----------------------------------------------------------------

def _compositions(total: int, parts: int, cap: int) -> Iterator[tuple[int, ...]]:
    """Tuples of ``parts`` integers in ``[0, cap]`` summing to ``total``,
    lexicographically increasing."""
    if parts == 1:
        if 0 <= total <= cap:
            yield (total,)
        return
    for first in range(max(0, total - cap * (parts - 1)), min(cap, total) + 1):
        for rest in _compositions(total - first, parts - 1, cap):
            yield (first,) + rest


def search_rank_n(s: SncSurface, catalogs: Catalogs | None = None,
                  a_max: int = DEFAULT_A_MAX) -> ShrinkReport:
    """Bounded search over coprime ``0 <= a_i <= a_max``.

    Tuples are visited by increasing ``sum(a)`` and then lexicographically, so
    the first hit matches the rank-2 tie-break.  Running out of tuples proves
    nothing and yields ``Inconclusive``.
    """
    name = s.describe()
    prov = catalog_provenance(s, catalogs)
    rep = cy_check(s)
    if not rep.passed:
        bad = "; ".join(f"S{r.i}.S{r.j}: {r.lhs} != {r.rhs}" for r in rep.failures())
        return ShrinkReport(name, False, NOT_PRE_SHRINKABLE,
                            witness=f"Calabi-Yau condition fails ({bad})",
                            catalog_provenance=prov, method="cy-check")
    constraints = condition_i_inequalities(s, catalogs)
    forms = [j_squared_form(s, i) for i in range(1, s.rank + 1)]
    n = s.rank
    for total in range(1, n * a_max + 1):
        for a in _compositions(total, n, a_max):
            if gcd_list(a) != 1:
                continue
            if any(c.value(a) > 0 for c in constraints):
                continue
            vals = [_quad_value(t, a) for t in forms]
            if all(v >= 0 for v in vals) and any(v > 0 for v in vals):
                check = certificate_verify(s, a, catalogs)
                if not check.ok:
                    raise AssertionError(f"internal error: certificate {a} fails verification")
                return ShrinkReport(name, True, PRE_SHRINKABLE, certificate=a,
                                    catalog_provenance=prov, j_squared=check.j_squared,
                                    method=f"search a_max={a_max}")
    return ShrinkReport(name, True, INCONCLUSIVE, catalog_provenance=prov,
                        witness=f"no certificate with 0 <= a_i <= {a_max}",
                        method=f"search a_max={a_max}")


def decide(s: SncSurface, catalogs: Catalogs | None = None, a_max: int = DEFAULT_A_MAX) -> ShrinkReport:
    """Exact decision for rank <= 2, bounded search above."""
    if s.rank <= 2:
        return decide_rank2(s, catalogs)
    return search_rank_n(s, catalogs, a_max)
