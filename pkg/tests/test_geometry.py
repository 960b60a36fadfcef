import json
from importlib import resources

import pytest
from hypothesis import given
from hypothesis import strategies as st

from agchar.charcalc import Character, curve_invariants, degree_genus_p3, enumerate_acm_p3, enumerate_ag, gamma_from_delta
from agchar.geometry import (
    CatalogError,
    DivisorClass,
    GeometryError,
    adjunction_genus,
    catalog,
    ci_linkage,
    class_add,
    class_scale,
    classify_mhk,
    dimension_count,
    get_surface,
    hilbert_lower_bound,
    intersect,
    load_catalog,
    max_mhk_degree,
    mhk_curve,
    mhk_degree,
    mhk_surface_candidates,
    nondegenerate_pairs,
)
from oracles import dot

BORDIGA_CURVE = Character((-1, -1, -1, 6, -1, -1, -1))
K3_CURVE = Character((-1, -1, 0, 2, 2, 0, -1, -1))

classes = st.builds(
    DivisorClass, st.integers(-12, 12), st.lists(st.integers(-4, 4), max_size=10).map(tuple)
)


# divisor classes


def test_divisor_examples():
    Y = DivisorClass.parse("(11;3^10)")
    K = DivisorClass.parse("(-3;-1^10)")
    assert intersect(Y, Y) == 31
    assert adjunction_genus(Y, K) == 15
    Y = DivisorClass.parse("(3;1^8)")
    K = DivisorClass.parse("(-3;-1^8)")
    assert (Y.dot(Y), adjunction_genus(Y, K)) == (1, 1)


def test_divisor_parse_forms():
    assert DivisorClass.parse("(4;2,1^7)") == DivisorClass(4, (2,) + (1,) * 7)
    assert DivisorClass.parse("(5)") == DivisorClass(5, ())
    assert str(DivisorClass(4, (2,) + (1,) * 7)) == "(4;2,1^7)"
    with pytest.raises(GeometryError):
        DivisorClass.parse("nonsense")


@given(classes)
def test_divisor_str_round_trip(D):
    assert DivisorClass.parse(str(D)) == D


@given(classes, classes, classes, st.integers(-5, 5))
def test_intersection_form_is_symmetric_bilinear(A, B, C, k):
    assert intersect(A, B) == intersect(B, A) == dot(A.a, A.b, B.a, B.b)
    assert intersect(class_add(A, B), C) == intersect(A, C) + intersect(B, C)
    assert intersect(class_scale(A, k), B) == k * intersect(A, B)


# catalog


def test_catalog_contents():
    by = {s.name: s for s in catalog()}
    assert set(by) == {"cubic_scroll", "del_pezzo", "castelnuovo", "bordiga", "k3_sextic"}
    assert str(by["cubic_scroll"].H) == "(2;1)"
    assert str(by["del_pezzo"].H) == "(3;1^5)"
    assert str(by["castelnuovo"].H) == "(4;2,1^7)" and str(by["castelnuovo"].K) == "(-3;-1^8)"
    assert str(by["bordiga"].H) == "(4;1^10)" and by["bordiga"].family_dim == 36
    assert by["castelnuovo"].gamma_X.values == (-1, -1, 0, 2)
    assert by["del_pezzo"].gamma_X.values == (-1, -1, 1, 1)
    assert by["k3_sextic"].gamma_X.values == (-1, -1, 0, 1, 1)
    assert (by["k3_sextic"].degree, by["k3_sextic"].sectional_genus) == (6, 4)


def test_catalog_self_consistency():
    for s in catalog():
        assert degree_genus_p3(s.gamma_X) == (s.degree, s.sectional_genus)
        if s.kind == "blowup":
            assert s.H.dot(s.H) == s.degree
            assert adjunction_genus(s.H, s.K) == s.sectional_genus
        else:
            a, b = s.ci_degrees
            assert a * b == s.degree


def test_catalog_rejects_corruption(tmp_path):
    data = json.loads(resources.files("agchar").joinpath("data/catalog.json").read_text())
    data["surfaces"][3]["degree"] = 7
    p = tmp_path / "bad.json"
    p.write_text(json.dumps(data))
    with pytest.raises(CatalogError):
        load_catalog(p)
    p.write_text("{not json")
    with pytest.raises(CatalogError):
        load_catalog(p)
    p.write_text(json.dumps({"schema": 2, "surfaces": []}))
    with pytest.raises(CatalogError):
        load_catalog(p)


def test_get_surface_unknown():
    with pytest.raises(GeometryError):
        get_surface("nope")


# mH - K curves


def test_mhk_examples():
    c = mhk_curve(get_surface("bordiga"), 2)
    assert (str(c.divisor), c.degree, c.genus) == ("(11;3^10)", 14, 15)
    assert c.gamma_Y == BORDIGA_CURVE
    c = mhk_curve(get_surface("k3_sextic"), 3)
    assert (c.degree, c.genus) == (18, 28)
    c = mhk_curve(get_surface("del_pezzo"), 1)
    assert (c.degree, c.genus) == (8, 5) and c.gamma_Y.values == (-1, -1, 2, 2, -1, -1)


def test_mhk_degree_formula_against_character_route():
    cases = 0
    for s in catalog():
        for m in range(2 * s.r - 4, 2 * s.r + 5):
            gy = gamma_from_delta(s.gamma_X.with_ambient(4), m + 4)
            inv = curve_invariants(gy)
            assert inv.degree == mhk_degree(m, s.degree, s.sectional_genus)
            if s.kind == "blowup":
                assert adjunction_genus(m * s.H - s.K, s.K) == inv.genus
            cases += 1
    assert cases == 45


def test_mhk_below_threshold_omits_character_for_plain_blowups():
    c = mhk_curve(get_surface("bordiga"), 1)
    assert c.gamma_Y is None and c.degree == mhk_degree(1, 6, 3)


def test_ci_surface_mhk_uses_h_multiples():
    c = mhk_curve(get_surface("k3_sextic"), 3)
    assert c.h_multiple == 3 and c.gamma_Y == K3_CURVE


# classification


def test_classify_examples():
    c = classify_mhk(BORDIGA_CURVE)
    assert (c.m, c.r) == (2, 3)
    assert c.very_ample_delta_match and not c.unique_surface and not c.open_in_hilbert
    c = classify_mhk(K3_CURVE)
    assert (c.m, c.r) == (3, 3) and c.unique_surface and not c.open_in_hilbert
    c = classify_mhk(Character((-1, 1, 0, 1, -1)))
    assert (c.m, c.r) == (0, 1)
    assert c.base_point_free and c.very_ample_delta_match and c.unique_surface and c.open_in_hilbert


def test_classify_monotone_on_corpus():
    for g in enumerate_ag(14):
        c = classify_mhk(g)
        assert c.open_in_hilbert <= c.unique_surface <= c.very_ample_delta_match <= c.base_point_free


# surface search


def test_candidates_examples():
    cands = mhk_surface_candidates(BORDIGA_CURVE)
    assert [(c.degree, c.sectional_genus) for c in cands] == [(6, 3)]
    pairs = {(c.degree, c.sectional_genus) for c in mhk_surface_candidates(Character((-1, -1, 2, 2, -1, -1)))}
    assert {(3, 0), (4, 1)} <= pairs
    assert mhk_surface_candidates(Character((-1, 2, -1))) == []


def test_max_mhk_degree():
    assert max_mhk_degree(2, 30) == (14, [(6, 3)])


def test_nondegenerate_pairs_brute_force():
    want = {(d, g) for ch, d, g in enumerate_acm_p3(12) if ch.values[:2] == (-1, -1)}
    assert {(d, g) for d, g, _ in nondegenerate_pairs(12)} == want


def test_search_value_declines_past_optimum():
    # the value at the bound is well below the optimum, so a larger bound cannot win
    best, _ = max_mhk_degree(2, 30)
    tail = [mhk_degree(2, d, g) for d, g, _ in nondegenerate_pairs(30) if d >= 25]
    assert max(tail) < best


# dimension counts


def test_dimension_count_example():
    dc = dimension_count(BORDIGA_CURVE, get_surface("bordiga"))
    assert (dc.self_intersection, dc.dim_linsys, dc.dim_family, dc.total) == (31, 17, 36, 53)
    assert dc.hilbert_lower_bound == 56 and dc.verdict == "not general"


def test_hilbert_lower_bound():
    assert hilbert_lower_bound(14, 15) == 56
    assert hilbert_lower_bound(1, 0) == 6


def test_dimension_count_needs_family_dim():
    with pytest.raises(GeometryError):
        dimension_count(Character((-1, -1, 0, 4, 0, -1, -1)), get_surface("castelnuovo"))


# linkage


def test_ci_linkage():
    assert ci_linkage(2, 5, get_surface("castelnuovo")).m == 2
    assert ci_linkage(2, 5, get_surface("castelnuovo")).linked_degree == 5
    assert ci_linkage(2, 3).m == 0
    assert ci_linkage(1, 1).m == -3
    with pytest.raises(GeometryError):
        ci_linkage(0, 3)
