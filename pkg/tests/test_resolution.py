from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from agchar.charcalc import Character, CharacterError, complete_intersection_character, enumerate_ag, postulation_from_gamma, validate_ag
from agchar.resolution import (
    BettiDataAG,
    BettiDataCodim2,
    candidate_betti_ag,
    enumerate_betti_ag,
    gamma_from_betti_ag,
    gamma_from_phi,
    phi_from_betti_ag,
    phi_from_betti_codim2,
    validate_betti_ag,
    validate_betti_codim2,
)
from oracles import koszul_character

BORDIGA_CURVE = Character((-1, -1, -1, 6, -1, -1, -1))
QUINTIC = Character((-1, -1, 4, -1, -1))
LINE = Character((-1, 2, -1))


def clauses(rep):
    return {f.clause for f in rep.failures}


def test_betti_json_round_trip():
    B = BettiDataAG.from_json({"c": 7, "a": [3] * 7})
    assert B.b == (4,) * 7 and B.gen_rank == 3
    assert BettiDataAG.from_json(B.to_json()) == B
    with pytest.raises(CharacterError):
        BettiDataAG.from_json({"c": 7, "a": [3, 3, 3], "b": [3, 3, 3]})


@pytest.mark.parametrize(
    "a,c,gamma",
    [((2,) * 5, 5, QUINTIC), ((3,) * 7, 7, BORDIGA_CURVE), ((1, 1, 1), 3, LINE)],
)
def test_phi_from_betti_examples(a, c, gamma):
    phi = phi_from_betti_ag(BettiDataAG(c, a), 12)
    assert gamma_from_phi(phi) == gamma
    assert tuple(phi) == postulation_from_gamma(gamma, 12).phi


def test_phi_from_betti_direct_values():
    phi = phi_from_betti_ag(BettiDataAG(7, (3,) * 7), 5)
    assert phi[3] == comb(7, 4) - 7 == 28


def test_validate_examples():
    assert validate_betti_ag(BORDIGA_CURVE, BettiDataAG(7, (3,) * 7)).ok
    rep = validate_betti_ag(BORDIGA_CURVE, BettiDataAG(7, (3,) * 6))
    assert "odd_generators" in clauses(rep)
    rep = validate_betti_ag(QUINTIC, BettiDataAG(5, (2,) * 5))
    assert rep.ok and max(BettiDataAG(5, (2,) * 5).a) == QUINTIC.q - 2


def test_validate_names_each_failure():
    rep = validate_betti_ag(QUINTIC, BettiDataAG(6, (1, 2, 3)))
    assert {"least_generator", "socle_degree", "generator_bound", "hilbert_function"} <= clauses(rep)
    rep = validate_betti_ag(QUINTIC, BettiDataAG(5, (2, 2, 2, 2, 3)))
    assert "degree_matrix" in clauses(rep)
    rep = validate_betti_ag(QUINTIC, BettiDataAG(5, (2,)))
    assert "codimension" in clauses(rep)


def test_validate_requires_ag():
    with pytest.raises(CharacterError):
        validate_betti_ag(Character((-1, 0, 2, -1)), BettiDataAG(3, (1, 1, 1)))


def test_enumerate_examples():
    assert BettiDataAG(5, (2,) * 5) in enumerate_betti_ag(QUINTIC, 7)
    assert BettiDataAG(3, (1, 1, 1)) in enumerate_betti_ag(LINE, 5)
    assert BettiDataAG(6, (2, 2, 2)) in enumerate_betti_ag(Character((-1, -1, 2, 2, -1, -1)), 5)


def test_enumerate_order_and_shape():
    out = enumerate_betti_ag(Character((-1, -1, 0, 2, 2, 0, -1, -1)), 9)
    assert out == sorted(out, key=lambda B: (len(B.a), B.a))
    assert all(len(B.a) % 2 == 1 for B in out)


def test_conic_keeps_its_true_resolution():
    # CI(1,1,2): a = (1,1,2) and b = (3,3,2) share the value 2 yet are minimal
    conic = complete_intersection_character((1, 1, 2))
    assert BettiDataAG(4, (1, 1, 2)) in enumerate_betti_ag(conic, 5)


def test_fast_and_binomial_hilbert_routes_agree():
    for g in enumerate_ag(9):
        for count in (2, 3, 4, 5):
            for B in candidate_betti_ag(g, count):
                fast = "hilbert_function" not in clauses(validate_betti_ag(g, B))
                slow = phi_from_betti_ag(B, g.q + 8) == list(postulation_from_gamma(g, g.q + 8).phi)
                assert fast == slow


def test_corpus_properties_of_enumerated_data():
    for g in enumerate_ag(10):
        s = validate_ag(g).s
        for B in enumerate_betti_ag(g, 2 * s + 1):
            assert len(B.a) % 2 == 1
            assert B.b[1] - B.a[-1] > 0
            assert B.b == tuple(B.c - x for x in B.a)
            assert tuple(phi_from_betti_ag(B, g.q + 6)) == postulation_from_gamma(g, g.q + 6).phi


def test_every_corpus_character_has_a_resolution_candidate():
    for g in enumerate_ag(12):
        s = validate_ag(g).s
        assert enumerate_betti_ag(g, 2 * s + 1), g


def test_even_candidates_rejected_for_parity():
    for g in enumerate_ag(10):
        s = validate_ag(g).s
        for count in range(2, 2 * s + 1, 2):
            for B in candidate_betti_ag(g, count):
                assert "odd_generators" in clauses(validate_betti_ag(g, B))


@settings(max_examples=60)
@given(st.lists(st.integers(1, 4), min_size=3, max_size=3))
def test_complete_intersection_resolution(degrees):
    # Koszul: three generators, socle degree sum(d)
    g = complete_intersection_character(degrees)
    assert g.values == koszul_character(degrees)
    B = BettiDataAG(sum(degrees), degrees)
    assert gamma_from_betti_ag(B)[: len(g)] == list(g.values)
    assert validate_betti_ag(g, B).ok


# codimension 2


def test_codim2_examples():
    assert validate_betti_codim2(Character((-1, -1, 2), 3), BettiDataCodim2((2, 2, 2), (3, 3))).ok
    assert validate_betti_codim2(Character((-1, -1, 0, 2), 3), BettiDataCodim2((2, 3, 3), (4, 4))).ok
    rep = validate_betti_codim2(Character((-1, -1, 0, 2), 3), BettiDataCodim2((2, 3, 3), (4, 5)))
    assert "max_relation" in clauses(rep)


def test_codim2_failures():
    rep = validate_betti_codim2(Character((-1, -1, 2), 3), BettiDataCodim2((2, 2, 2), (3,)))
    assert "rank" in clauses(rep)
    rep = validate_betti_codim2(Character((-1, -1, 2), 3), BettiDataCodim2((3, 3), (3,)))
    assert "minimality" in clauses(rep)
    with pytest.raises(CharacterError):
        validate_betti_codim2(Character((-1, 1, -1, 1), 3), BettiDataCodim2((1,), ()))


def test_codim2_phi_matches_character():
    phi = phi_from_betti_codim2(BettiDataCodim2((2, 2, 2), (3, 3)), 8)
    assert tuple(phi) == postulation_from_gamma(Character((-1, -1, 2), 4), 8).phi
