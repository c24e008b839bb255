from fractions import Fraction

import pytest

from shrinkcy.surfaces import (MORI_GENERATOR, NUMERICAL_CANDIDATE, CurveSyntaxError, SurfaceError,
                               adjunction_genus, builtin_surface, candidate_negative_classes,
                               general_position_filter, parse_curve)

ALL_NAMES = (["P2"] + [f"F{n}" for n in range(13)] + [f"dP{n}" for n in range(1, 9)]
             + [f"Bl{k}F{n}" for k in range(1, 11) for n in range(9)])


def expected_k2(name):
    if name == "P2":
        return 9
    if name.startswith("dP"):
        return 9 - int(name[2:])
    if name.startswith("Bl"):
        return 8 - int(name[2:name.index("F")])
    return 8


@pytest.mark.parametrize("name", ALL_NAMES)
def test_canonical_square_closed_form(name):
    assert builtin_surface(name).k_squared() == expected_k2(name)


def test_f3_model():
    f3 = builtin_surface("F3")
    assert f3.labels == ("e", "f")
    assert f3.canonical.coeffs == (-2, -5)
    assert f3.k_squared() == 8


def test_f0_uses_two_rulings():
    f0 = builtin_surface("F0")
    assert f0.labels == ("f1", "f2")
    assert f0.square(f0.curve("f1")) == 0
    assert f0.dot(f0.curve("f1"), f0.curve("f2")) == 1


def test_dp2_generators():
    dp2 = builtin_surface("dP2")
    minus_one = {c.label for c in dp2.curve_catalog
                 if dp2.square(c.cls) == -1 and dp2.k_dot(c.cls) == -1}
    assert minus_one == {"x1", "x2", "l-x1-x2"}
    assert dp2.catalog_roles() == {MORI_GENERATOR}


def test_dp_counts_of_minus_one_curves():
    # the classical numbers of lines on del Pezzo surfaces
    counts = {1: 1, 2: 3, 3: 6, 4: 10, 5: 16, 6: 27, 7: 56, 8: 240}
    for n, want in counts.items():
        m = builtin_surface(f"dP{n}")
        got = sum(1 for c in m.curve_catalog if m.square(c.cls) == -1)
        assert got == want, n


@pytest.mark.parametrize("bad", ["Bl11F6", "F13", "dP9", "dP0", "Bl0F2", "P3", ""])
def test_out_of_range_names(bad):
    with pytest.raises(SurfaceError):
        builtin_surface(bad)


def test_parse_curve_examples():
    assert parse_curve("e+2f", builtin_surface("F5")).coeffs == (1, 2)
    assert parse_curve("2l-x1-x2", builtin_surface("dP4")).coeffs == (2, -1, -1, 0, 0)
    with pytest.raises(CurveSyntaxError, match="unknown label"):
        parse_curve("e", builtin_surface("P2"))


def test_parse_curve_reports_column():
    with pytest.raises(CurveSyntaxError) as info:
        parse_curve("2l+-x1", builtin_surface("dP2"))
    assert info.value.position == 3
    assert "column 4" in str(info.value)


@pytest.mark.parametrize("text", ["e+3f", "-e", "2f1+f2", "l-x1", "3l-x1-x2-x3"])
def test_render_parse_round_trip(text):
    name = {"e": "F3", "-": "F2", "2": "F0", "l": "dP3", "3": "dP3"}[text[0]]
    m = builtin_surface(name)
    c = parse_curve(text, m)
    assert parse_curve(m.render(c), m) == c


def test_adjunction_genus_examples():
    f0 = builtin_surface("F0")
    assert adjunction_genus(f0, f0.curve("f1+2f2")) == 0
    p2 = builtin_surface("P2")
    assert adjunction_genus(p2, p2.curve("l")) == 0
    assert adjunction_genus(p2, p2.curve("2l")) == 0
    assert adjunction_genus(p2, p2.curve("3l")) == 1
    assert isinstance(adjunction_genus(p2, p2.curve("l")), Fraction)


def test_candidate_negative_classes_examples():
    assert candidate_negative_classes(builtin_surface("P2"), 3) == []
    f3 = builtin_surface("F3")
    got = {f3.render(c) for c in candidate_negative_classes(f3, 3)}
    assert {"e", "f"} <= got
    dp1 = builtin_surface("dP1")
    assert {dp1.render(c) for c in candidate_negative_classes(dp1, 2)} == {"x1", "l-x1"}
    with pytest.raises(ValueError):
        candidate_negative_classes(f3, 0)


@pytest.mark.parametrize("name", [f"dP{n}" for n in range(1, 9)] + ["P2", "F0", "F4", "F12"])
def test_shipped_generators_are_rational(name):
    m = builtin_surface(name)
    assert m.curve_catalog
    for c in m.curve_catalog:
        assert c.role == MORI_GENERATOR
        assert adjunction_genus(m, c.cls) == 0


def test_blowup_catalog_is_numerical():
    m = builtin_surface("Bl5F3")
    assert m.catalog_roles() == {NUMERICAL_CANDIDATE}
    labels = {c.label for c in m.curve_catalog}
    assert {"e", "f", "x1", "f-x1"} <= labels


def test_general_position_filter_drops_reducible_and_unexpected():
    m = builtin_surface("Bl6F2")
    reducible = m.curve("f-x1-x2")          # two points on one fiber
    unexpected = m.curve("e+3f-x1-x2-x3-x4-x5-x6")
    kept = general_position_filter(m, [reducible, unexpected, m.curve("x1"), m.curve("e")])
    assert kept == [m.curve("x1"), m.curve("e")]
