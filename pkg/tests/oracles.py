"""Brute-force reference computations used to cross-check the library.

Nothing here imports the decision or resolution code under test; each oracle
works from raw Gram matrices, canonical classes and lattice coordinates.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import gcd


def dot(m, u, v):
    return sum(u[i] * m[i][j] * v[j] for i in range(len(u)) for j in range(len(v)))


def rank2_numbers(model1, c1, model2, c2):
    """Triple numbers of a two-component snc surface from first principles.

    ``D_i^3 = K_i^2`` and ``D_i^2 D_j = K_i.C`` on ``S_i``.
    """
    g1, k1 = model1.gram.matrix, model1.canonical.coeffs
    g2, k2 = model2.gram.matrix, model2.canonical.coeffs
    return {
        "111": dot(g1, k1, k1), "222": dot(g2, k2, k2),
        "112": dot(g1, k1, c1), "221": dot(g2, k2, c2),
    }


def rank2_brute(model1, c1, model2, c2, curves1, curves2, limit=30):
    """Every ``(a1, a2)`` with ``0 <= a_i <= limit`` satisfying the three conditions,
    sorted by ``(a1 + a2, a1)``."""
    g1, k1 = model1.gram.matrix, model1.canonical.coeffs
    g2, k2 = model2.gram.matrix, model2.canonical.coeffs
    t = rank2_numbers(model1, c1, model2, c2)
    rows = []
    for gamma in curves1:
        rows.append((dot(g1, k1, gamma), dot(g1, gamma, c1)))
    for gamma in curves2:
        rows.append((dot(g2, gamma, c2), dot(g2, k2, gamma)))
    hits = []
    for a1, a2 in product(range(limit + 1), repeat=2):
        if any(x * a1 + y * a2 > 0 for x, y in rows):
            continue
        j1 = a1 * a1 * t["111"] + 2 * a1 * a2 * t["112"] + a2 * a2 * t["221"]
        j2 = a2 * a2 * t["222"] + 2 * a1 * a2 * t["221"] + a1 * a1 * t["112"]
        if j1 >= 0 and j2 >= 0 and (j1 > 0 or j2 > 0):
            hits.append((a1, a2))
    return sorted(hits, key=lambda a: (a[0] + a[1], a[0]))


def hj_hull_points(r, q):
    """Vertices of the convex hull of the nonzero lattice points of the cone
    spanned by ``(0, 1)`` and ``(r, -q)``, ordered from ``(0, 1)`` to ``(r, -q)``.

    These are the rays of the minimal resolution.
    """
    pts = []
    for x in range(0, r + 1):
        for y in range(-q - 1, 2):
            if (x, y) == (0, 0):
                continue
            # inside the cone: x >= 0 and r*y + q*x >= 0 ... i.e. on the (0,1) side of (r,-q)
            if x * (-q) - y * r <= 0 and x >= 0:
                pts.append((x, y))
    # compact part of the lower hull seen from the origin: walk from (0,1)
    chain = [(0, 1)]
    cur = (0, 1)
    target = (r, -q)
    while cur != target:
        best = None
        for p in pts:
            if p == cur:
                continue
            # p must be clockwise from cur
            if cur[0] * p[1] - cur[1] * p[0] >= 0:
                continue
            if best is None:
                best = p
                continue
            d = (best[0] - cur[0], best[1] - cur[1])
            e = (p[0] - cur[0], p[1] - cur[1])
            cr = d[0] * e[1] - d[1] * e[0]
            # keep the point making the hull turn towards the origin the least
            if cr < 0 or (cr == 0 and abs(e[0]) + abs(e[1]) < abs(d[0]) + abs(d[1])):
                best = p
        chain.append(best)
        cur = best
    return chain


def pick_counts(vertices):
    """(twice area, boundary count, interior count) of a lattice triangle by direct enumeration."""
    (x0, y0), (x1, y1), (x2, y2) = vertices
    area2 = abs((x1 - x0) * (y2 - y0) - (y1 - y0) * (x2 - x0))
    boundary = sum(gcd(abs(b[0] - a[0]), abs(b[1] - a[1]))
                   for a, b in ((vertices[0], vertices[1]), (vertices[1], vertices[2]),
                                (vertices[2], vertices[0])))
    xs = [v[0] for v in vertices]
    ys = [v[1] for v in vertices]
    inside = 0
    for x in range(min(xs), max(xs) + 1):
        for y in range(min(ys), max(ys) + 1):
            s = [
                (vertices[(k + 1) % 3][0] - vertices[k][0]) * (y - vertices[k][1])
                - (vertices[(k + 1) % 3][1] - vertices[k][1]) * (x - vertices[k][0])
                for k in range(3)
            ]
            if all(v > 0 for v in s) or all(v < 0 for v in s):
                inside += 1
    return area2, boundary, inside


def continued_fraction_value(chain):
    """``b_1 - 1/(b_2 - ...)`` as a Fraction."""
    val = Fraction(chain[-1])
    for b in reversed(chain[:-1]):
        val = b - 1 / val
    return val
