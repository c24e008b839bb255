from itertools import permutations

import pytest

from shrinkcy.snc import (CalabiYauError, SncError, SncParseError, SncSurface, cy_check,
                          curve_dot_component, dump_snc, glue, j_squared_component, load_snc,
                          mixed_products, parse_snc, rank2, triple_intersection, triple_table)
from shrinkcy.surfaces import builtin_surface
from shrinkcy.tables import load_tables


@pytest.fixture
def p2f3():
    return rank2("P2", "F3", "l", "e")


def chain_f2_f0_f2():
    f2a, f0, f2b = builtin_surface("F2"), builtin_surface("F0"), builtin_surface("F2")
    return SncSurface((f2a, f0, f2b), (glue(f2a, "e", f0, "f1", 1, 2),
                                       glue(f0, "f1", f2b, "e", 2, 3)))


def test_cy_check_examples():
    rep = cy_check(rank2("P2", "F3", "l", "e"))
    (rec,) = rep.records
    assert (rec.lhs, rec.rhs, rep.passed) == (-2, -2, True)
    rep = cy_check(rank2("F6", "F1", "e", "2e+2f"))
    assert (rep.records[0].lhs, rep.passed) == (-2, True)
    rep = cy_check(rank2("F1", "F1", "e", "f"))
    assert (rep.records[0].lhs, rep.records[0].rhs, rep.passed) == (-1, -2, False)


def test_curve_dot_component_examples(p2f3):
    f3 = p2f3.component(2)
    p2 = p2f3.component(1)
    assert curve_dot_component(p2f3, 2, f3.curve("f"), 2) == -2
    assert curve_dot_component(p2f3, 2, f3.curve("f"), 1) == 1
    assert curve_dot_component(p2f3, 1, p2.curve("l"), 2) == 1
    with pytest.raises(IndexError):
        curve_dot_component(p2f3, 1, p2.curve("l"), 3)


def test_triple_intersection_examples(p2f3):
    assert triple_intersection(p2f3, 1, 1, 1) == 9
    assert triple_intersection(p2f3, 2, 2, 2) == 8
    assert triple_intersection(p2f3, 1, 1, 2) == -3
    assert triple_intersection(p2f3, 1, 2, 2) == 1
    assert triple_intersection(chain_f2_f0_f2(), 1, 2, 3) == 0


def test_triple_intersection_refuses_non_cy():
    with pytest.raises(CalabiYauError):
        triple_intersection(rank2("F1", "F1", "e", "f"), 1, 1, 2)


def test_j_squared_examples(p2f3):
    assert j_squared_component(p2f3, (1, 1), 1) == 4
    assert j_squared_component(p2f3, (1, 1), 2) == 7
    assert j_squared_component(p2f3, (0, 0), 2) == 0
    with pytest.raises(ValueError):
        j_squared_component(p2f3, (-1, 1), 1)


def test_j_squared_is_quadratic(p2f3):
    for lam in range(1, 6):
        assert j_squared_component(p2f3, (lam, 2 * lam), 2) == lam ** 2 * j_squared_component(p2f3, (1, 2), 2)


@pytest.mark.parametrize("entry", [e for e in load_tables() if not e.toric], ids=lambda e: str(e.id))
def test_mixed_products_agree_on_table(entry):
    s = entry.surface()
    for g in s.gluings:
        k_i_c, c_sq_j, k_j_c, c_sq_i = mixed_products(s, g)
        assert k_i_c == c_sq_j and k_j_c == c_sq_i


def test_triple_permutation_symmetry_on_chain():
    s = chain_f2_f0_f2()
    table = triple_table(s)
    for key, value in table.items():
        for perm in permutations(key):
            assert triple_intersection(s, *perm) == value


def test_rejects_duplicate_gluing_and_genus_mismatch():
    p2, f3 = builtin_surface("P2"), builtin_surface("F3")
    g = glue(p2, "l", f3, "e")
    with pytest.raises(SncError):
        SncSurface((p2, f3), (g, g))
    with pytest.raises(SncError, match="genus"):
        glue(p2, "3l", f3, "e")
    with pytest.raises(SncError):
        SncSurface((p2, f3), (glue(p2, "l", f3, "e", 1, 1),))


def test_pairwise_glued_triple_needs_declared_points():
    f0 = builtin_surface("F0")
    gl = (glue(f0, "f1", f0, "f2", 1, 2), glue(f0, "f2", f0, "f1", 2, 3),
          glue(f0, "f1", f0, "f2", 1, 3))
    with pytest.raises(SncError, match="triple"):
        SncSurface((f0, f0, f0), gl)


def test_parse_and_dump_round_trip(tmp_path):
    text = "component 1 = P2\ncomponent 2 = F3   # the (-3) side\nglue 1:l ~ 2:e\n"
    s = parse_snc(text)
    assert s.rank == 2 and cy_check(s).passed
    path = tmp_path / "s.snc"
    path.write_text(dump_snc(s))
    again = load_snc(path)
    assert dump_snc(again) == dump_snc(s)
    assert again.gluings == s.gluings


@pytest.mark.parametrize("text, line, fragment", [
    ("component 1 = P2\ncomponent 2 = F3\nglue 1:e ~ 2:e\n", 3, "unknown label"),
    ("component 1 = P2\nfoo\n", 2, "unrecognised"),
    ("component 1 = P9\n", 1, "unknown surface"),
    ("component 1 = P2\ncomponent 3 = F3\n", 1, "without gaps"),
])
def test_parse_errors_carry_line(text, line, fragment):
    with pytest.raises(SncParseError) as info:
        parse_snc(text)
    assert info.value.line == line
    assert fragment in str(info.value)
    assert f"line {line}" in str(info.value)
