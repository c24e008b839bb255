import xml.etree.ElementTree as ET
from fractions import Fraction
from math import gcd

import pytest

from oracles import continued_fraction_value, hj_hull_points
from shrinkcy.snc import rank2, triple_intersection
from shrinkcy.tables import figure_section
from shrinkcy.toric import (GerbeError, NotSmoothError, StackyTriangle, ToricError, cone_is_resolved,
                            detect_flops, fan_to_snc, hj_chain_points, hj_resolve,
                            identify_surface, lattice_points, noether_identity_holds,
                            parse_edges, quotient_to_triangle, render_svg, section,
                            self_intersections, toric_triples, triangulate,
                            weights_to_triangle)

T = StackyTriangle.from_vertices
SVG = "{http://www.w3.org/2000/svg}"


def kinds(shape):
    out = {}
    for lp in lattice_points(shape):
        out.setdefault(lp.kind, set()).add(lp.point)
    return out


# -- triangles ---------------------------------------------------------------

@pytest.mark.parametrize("w, figure", [
    ((1, 2, 4), ((0, 1), (1, 0), (-2, -4))),
    ((1, 1, 3), ((1, 0), (0, 1), (-1, -3))),
    ((1, 3, 4), ((0, 1), (1, 0), (-3, -4))),
    ((1, 2, 6), ((0, 1), (2, 0), (-1, -3))),
])
def test_weights_match_figure_triangles(w, figure):
    t = weights_to_triangle(*w)
    assert t.equivalent(T(figure))
    assert sorted(t.weights) == sorted(w)
    assert t.vertices[0] == (0, 1)


def test_weighted_relation_holds():
    for w in [(1, 2, 4), (1, 1, 3), (2, 3, 5), (1, 5, 7)]:
        t = weights_to_triangle(*w)
        assert all(sum(a * v[k] for a, v in zip(t.weights, t.vertices)) == 0 for k in (0, 1))


def test_gerbe_weights_rejected():
    with pytest.raises(GerbeError):
        weights_to_triangle(2, 2, 4)


def test_quotient_examples():
    p2 = quotient_to_triangle(3, (1, 1, 1))
    assert len(kinds(p2)["interior"]) == 1
    assert quotient_to_triangle(7, (1, 2, 4)).equivalent(weights_to_triangle(1, 2, 4))
    a, b = quotient_to_triangle(7, (1, 3, 3)), quotient_to_triangle(7, (1, 2, 4))
    assert not a.equivalent(b)
    with pytest.raises(ToricError):
        quotient_to_triangle(8, (1, 2, 4))
    with pytest.raises(GerbeError):
        quotient_to_triangle(8, (2, 2, 4))


@pytest.mark.parametrize("n, w", [(5, (1, 1, 3)), (7, (1, 2, 4)), (8, (1, 3, 4)), (9, (1, 2, 6)),
                                  (7, (1, 1, 5)), (11, (2, 4, 5))])
def test_quotient_equals_weighted_triangle(n, w):
    assert quotient_to_triangle(n, w).equivalent(weights_to_triangle(*w))


def test_lattice_points_in_figure_coordinates():
    k = kinds(T(((0, 1), (1, 0), (-2, -4))))
    assert k["interior"] == {(0, 0), (0, -1), (-1, -2)}
    k = kinds(T(((0, 1), (2, 0), (-1, -3))))
    assert {(1, -1), (0, -2)} <= k["boundary"]
    assert k["interior"] == {(0, 0), (1, 0), (0, -1)}
    k = kinds(T(((0, 1), (1, 0), (-3, -4))))
    assert k["interior"] == {(0, 0), (-1, -1)}
    assert k["boundary"] == {(0, -1), (-1, -2), (-2, -3)}


# -- triangulations and stars -------------------------------------------------

def test_pulling_triangulation_of_p113():
    fs = section(T(((1, 0), (0, 1), (-1, -3))))
    assert set(fs.interior) == {(0, 0), (0, -1)}
    assert set(fs.star_rays((0, 0))) == {(0, 1), (1, 0), (0, -1), (-1, -3)}
    assert set(fs.star_rays((0, -1))) == {(0, 1), (1, 1), (-1, -2)}
    assert {str(v) for v in fs.interior_stars.values()} == {"F3", "P2"}


def test_p113_shared_edge_realizes_line_on_minus3_curve():
    fs = section(weights_to_triangle(1, 1, 3))
    s, pts = fan_to_snc(fs)
    names = [c.display_name for c in s.components]
    assert sorted(names) == ["F3", "P2"]
    (g,) = s.gluings
    p2 = names.index("P2") + 1
    f3 = names.index("F3") + 1
    assert s.component(p2).square(g.class_on(p2)) == 1
    assert s.component(f3).square(g.class_on(f3)) == -3


def test_figure1_section():
    fs = figure_section("fig1")
    assert len(fs.interior) == 2
    assert [str(v) for v in fs.interior_stars.values()] == ["dP2", "dP2"]
    assert all(v.ray_count == 5 for v in fs.interior_stars.values())


def test_triangulate_from_points_and_edges():
    pts = lattice_points(T(((0, 1), (1, 0), (-2, -4))))
    edges = parse_edges("edge (0,1)-(1,0)\nedge (0,0)-(0,1)\n")
    assert len(edges) == 2
    fs = triangulate(pts, None)
    assert len(fs.triangles) == 7  # twice the lattice area


def test_empty_interior_polygon():
    fs = section(((0, 0), (2, 0), (0, 2)))
    assert fs.interior == ()
    assert fs.interior_stars == {}
    assert "interior" not in render_svg(fs)


def test_smooth_star_identification_examples():
    assert self_intersections([(1, 0), (0, 1), (-1, -1)]) == (1, 1, 1)
    seq = self_intersections([(1, 0), (0, 1), (-1, 2), (0, -1)])
    assert sorted(seq) == [-2, 0, 0, 2]
    fs = section(T(((1, 0), (0, 1), (-1, -3))))
    star = self_intersections(fs.star_rays((0, 0)))
    assert -3 in star and 3 in star


def test_non_smooth_star_is_rejected():
    with pytest.raises(NotSmoothError):
        self_intersections([(1, 0), (1, 2), (-1, -1)])


def test_noether_identity_on_reference_fans():
    assert noether_identity_holds((1, 1, 1))
    for n in range(6):
        assert noether_identity_holds((n, 0, -n, 0))
    assert not noether_identity_holds((1, 1, 2))


def test_identify_surface_p134_figure():
    fs = figure_section("P134")
    stars = fs.interior_stars
    big = stars[(-1, -1)]
    assert big.ray_count == 7 and big.count == 3 and big.base.display == "F2"
    assert big.display == "Bl3F2"
    assert stars[(0, 0)].display == "P2"


def test_p134_default_triangulation_is_a_flop_of_the_figure():
    pulled = section(weights_to_triangle(1, 3, 4))
    assert sorted(v.display for v in pulled.interior_stars.values()) == ["F2", "F2"]
    assert len(pulled.triangles) == len(figure_section("P134").triangles) == 8


def test_identify_p124_all_f2():
    for fs in (figure_section("P124"), section(weights_to_triangle(1, 2, 4))):
        assert [v.display for v in fs.interior_stars.values()] == ["F2"] * 3


def test_identify_blowups():
    dp1 = identify_surface([(1, 0), (1, 1), (0, 1), (-1, -1)])
    assert dp1.display == "F1"
    dp3 = identify_surface([(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)])
    assert dp3.display == "dP3" and dp3.count == 3


# -- flops -------------------------------------------------------------------

def test_flops():
    quads = {f.quad for f in detect_flops(figure_section("P126"))}
    assert ((0, -1), (0, 0), (1, -1), (1, 0)) in quads
    assert len(detect_flops(figure_section("P134"))) >= 1
    assert detect_flops(section(weights_to_triangle(1, 1, 1))) == []


def test_p126_boundary_nodes_in_both_coordinate_systems():
    fig = figure_section("P126")
    assert {(1, -1), (0, -2)} <= set(fig.boundary_nonvertex)
    gen = section(weights_to_triangle(1, 2, 6))
    assert len(gen.boundary_nonvertex) == 2
    assert len(detect_flops(gen)) >= 1


# -- Hirzebruch-Jung -----------------------------------------------------------

def test_hj_examples():
    assert hj_resolve(3, 1) == (-3,)
    assert hj_resolve(2, 1) == (-2,)
    assert hj_resolve(5, 2) == (-3, -2)
    with pytest.raises(ValueError):
        hj_resolve(4, 2)
    with pytest.raises(ValueError):
        hj_resolve(3, 3)


COPRIME = [(r, q) for r in range(2, 31) for q in range(1, r) if gcd(r, q) == 1]


@pytest.mark.parametrize("r, q", COPRIME)
def test_hj_against_hull_oracle(r, q):
    chain = hj_resolve(r, q)
    assert all(b <= -2 for b in chain)
    pts = hj_chain_points(r, q)
    assert pts == hj_hull_points(r, q)
    assert cone_is_resolved(r, q, pts)
    assert continued_fraction_value([-b for b in chain]) == Fraction(r, q)


# -- triple intersection oracle -----------------------------------------------

def test_local_p2_triple():
    assert toric_triples(section(weights_to_triangle(1, 1, 1))) == {((0, 0),) * 3: 9}


@pytest.mark.parametrize("fs", [
    section(weights_to_triangle(1, 1, 3)), section(weights_to_triangle(1, 2, 4)),
    section(weights_to_triangle(1, 3, 4)), section(weights_to_triangle(1, 2, 6)),
    section(weights_to_triangle(2, 3, 5)), figure_section("fig1"), figure_section("P124"),
    figure_section("P126"), figure_section("P134"),
], ids=["113", "124", "134", "126", "235", "fig1", "P124", "P126", "P134"])
def test_toric_triples_match_snc(fs):
    s, pts = fan_to_snc(fs)
    idx = {p: i for i, p in enumerate(pts, start=1)}
    table = toric_triples(fs)
    assert table
    for key, value in table.items():
        i, j, k = (idx[p] for p in key)
        assert triple_intersection(s, i, j, k) == value, key


def test_p113_triples_equal_p2_f3_table():
    fs = section(weights_to_triangle(1, 1, 3))
    table = toric_triples(fs)
    stars = fs.interior_stars
    p2 = next(p for p, v in stars.items() if v.display == "P2")
    f3 = next(p for p, v in stars.items() if v.display == "F3")
    ref = rank2("P2", "F3", "l", "e")
    got = {
        (1, 1, 1): table[(p2,) * 3], (2, 2, 2): table[(f3,) * 3],
        (1, 1, 2): table[tuple(sorted((p2, p2, f3)))], (1, 2, 2): table[tuple(sorted((p2, f3, f3)))],
    }
    assert got == {key: triple_intersection(ref, *key) for key in got}
    assert got == {(1, 1, 1): 9, (2, 2, 2): 8, (1, 1, 2): -3, (1, 2, 2): 1}


# -- SVG ----------------------------------------------------------------------

def svg_nodes(text):
    root = ET.fromstring(text)
    circles = root.find(f"{SVG}g[@class='nodes']").findall(f"{SVG}circle")
    labels = root.find(f"{SVG}g[@class='labels']").findall(f"{SVG}text")
    out = []
    for c, t in zip(circles, labels):
        x, y = t.text.strip("()").split(",")
        out.append(((int(x), int(y)), c.get("class"), c.get("fill")))
    return out


def test_svg_p124_interior_nodes(tmp_path):
    path = tmp_path / "p124.svg"
    text = render_svg(figure_section("P124"), path)
    assert path.read_text() == text
    nodes = svg_nodes(text)
    interior = {p for p, k, fill in nodes if k == "interior"}
    assert interior == {(0, 0), (0, -1), (-1, -2)}
    assert all(fill == "#000000" for _, k, fill in nodes if k == "interior")


def test_svg_p134_red_nodes():
    nodes = svg_nodes(render_svg(figure_section("P134")))
    red = {p for p, _, fill in nodes if fill == "#cc0000"}
    assert red == {(0, -1), (-1, -2), (-2, -3)}


def test_svg_is_deterministic():
    a = render_svg(section(weights_to_triangle(1, 2, 6)))
    b = render_svg(section(weights_to_triangle(1, 2, 6)))
    assert a == b
