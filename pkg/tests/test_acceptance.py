"""The ten acceptance criteria, one test each, all at exact tolerance."""

import random
import time

from agchar.biliaison import LINE, ascend, descend, descent_chain, plane_curve_degree
from agchar.charcalc import (
    Character,
    curve_invariants,
    delta_split,
    enumerate_ag,
    gamma_from_delta,
    is_connected,
    is_symmetric,
    postulation_from_gamma,
    validate_ag,
)
from agchar.geometry import (
    adjunction_genus,
    catalog,
    classify_mhk,
    dimension_count,
    get_surface,
    max_mhk_degree,
    mhk_degree,
)
from agchar.pfaffianlab import ideal_hilbert_function, pfaffian, realize_betti, submaximal_pfaffians
from agchar.resolution import BettiDataAG, candidate_betti_ag, phi_from_betti_ag, validate_betti_ag
from oracles import degree_genus_from_phi, fraction_det

C = Character
EX_BORDIGA = C((-1, -1, -1, 6, -1, -1, -1))
EX_K3 = C((-1, -1, 0, 2, 2, 0, -1, -1))
EX_CANONICAL = C((-1, -1, 2, 2, -1, -1))
EX_CUBIC = C((-1, 1, 0, 1, -1))
EX_QUINTIC = C((-1, -1, 4, -1, -1))


def test_criterion_01_invariants(criterion):
    with criterion(1, "invariant extraction") as rec:
        want = [
            (EX_BORDIGA, 14, 15, 2),
            (EX_K3, 18, 28, 3),
            (EX_CANONICAL, 8, 5, 1),
            (EX_CUBIC, 3, 1, 0),
            (EX_QUINTIC, 5, 1, 0),
        ]
        for g, d, genus, m in want:
            inv = curve_invariants(g)
            assert (inv.degree, inv.genus, inv.m) == (d, genus, m), g
            assert degree_genus_from_phi(g.values, 4) == (d, genus)
        rec.detail = "5 characters, exact (d, g, m)"


def test_criterion_02_delta_splits(criterion):
    with criterion(2, "delta splits") as rec:
        assert delta_split(EX_CANONICAL).values == (-1, -1, 2)
        assert delta_split(EX_BORDIGA).values == (-1, -1, -1, 3)
        rec.detail = "(-1,-1,2) and (-1,-1,-1,3)"


def test_criterion_03_descent_chain(criterion):
    with criterion(3, "descent chain 14 -> 5 -> 1") as rec:
        ch = descent_chain(EX_BORDIGA)
        assert [s.after for s in ch.steps] == [EX_QUINTIC, LINE]
        assert [s.surface_degrees for s in ch.steps] == [(3, 3), (2, 2)]
        assert [s.kind for s in ch.steps] == ["generic", "generic"]
        assert ch.degrees == [14, 5, 1]
        assert ch.terminal == LINE
        rec.detail = "two generic steps on X_{3,3} then X_{2,2}"


def test_criterion_04_classifier(criterion):
    with criterion(4, "mH-K classifier regimes and monotonicity") as rec:
        k3 = classify_mhk(EX_K3)
        assert (k3.m, k3.r) == (3, 3)
        assert k3.unique_surface is True and k3.open_in_hilbert is False
        bo = classify_mhk(EX_BORDIGA)
        assert (bo.m, bo.r) == (2, 3)
        assert bo.very_ample_delta_match is True and bo.unique_surface is False
        corpus = enumerate_ag(14)
        for g in corpus:
            c = classify_mhk(g)
            assert c.open_in_hilbert <= c.unique_surface <= c.very_ample_delta_match <= c.base_point_free
        rec.detail = f"monotone on {len(corpus)} characters"


def test_criterion_05_dimension_count(criterion):
    with criterion(5, "dimension count 17 + 36 = 53 < 56") as rec:
        dc = dimension_count(EX_BORDIGA, get_surface("bordiga"))
        assert dc.self_intersection == 31
        assert dc.dim_linsys == 17
        assert dc.total == 17 + 36 == 53
        assert dc.hilbert_lower_bound == 5 * 14 + 1 - 15 == 56
        assert dc.total < dc.hilbert_lower_bound
        assert dc.verdict == "not general"
        rec.detail = "verdict not general"


def test_criterion_06_surface_search(criterion):
    with criterion(6, "(delta, pi) search, d_max = 30") as rec:
        t0 = time.perf_counter()
        best, where = max_mhk_degree(2, 30)
        elapsed = time.perf_counter() - t0
        assert best == 14 and where == [(6, 3)]
        assert elapsed < 10
        rec.detail = f"max 14 only at (6,3), {elapsed:.2f}s"


def test_criterion_07_mhk_formula(criterion):
    with criterion(7, "mH-K degree formula vs integration") as rec:
        cases = 0
        for s in catalog():
            for m in range(2 * s.r - 4, 2 * s.r + 5):
                inv = curve_invariants(gamma_from_delta(s.gamma_X.with_ambient(4), m + 4))
                assert inv.degree == (m + 1) * s.degree - 2 * s.sectional_genus + 2 == mhk_degree(
                    m, s.degree, s.sectional_genus)
                if s.kind == "blowup":
                    assert adjunction_genus(m * s.H - s.K, s.K) == inv.genus
                cases += 1
        assert len(catalog()) == 5 and cases == 45
        rec.detail = f"{cases} cases"


def test_criterion_08_corpus_properties(criterion):
    with criterion(8, "AG corpus properties, q <= 14") as rec:
        t0 = time.perf_counter()
        corpus = enumerate_ag(14)
        for g in corpus:
            assert sum(g.values) == 0
            assert sum(n * v for n, v in enumerate(g.values)) == 0
            assert is_symmetric(g)
            d = delta_split(g)
            assert gamma_from_delta(d, g.q) == g
            assert delta_split(gamma_from_delta(d, g.q), g.q) == d
            for step in descent_chain(g).steps:
                assert validate_ag(step.after).ok
            if g != LINE and plane_curve_degree(g) is None:
                after, _ = descend(g)
                if is_connected(d):
                    assert is_connected(delta_split(after))
                assert ascend(after, validate_ag(g).s) == g
        elapsed = time.perf_counter() - t0
        assert elapsed < 60
        rec.detail = f"{len(corpus)} characters, 0 failures, {elapsed:.2f}s"


def test_criterion_09_pfaffian_triangle(criterion):
    with criterion(9, "Betti / Pfaffian / character triangle") as rec:
        t0 = time.perf_counter()
        for a, c, g in [((2,) * 5, 5, EX_QUINTIC), ((3,) * 7, 7, EX_BORDIGA)]:
            betti = BettiDataAG(c, a)
            by_betti = phi_from_betti_ag(betti, 5)
            by_gamma = list(postulation_from_gamma(g, 5).phi)
            M = realize_betti(betti, seed=0).matrix
            dims = ideal_hilbert_function(submaximal_pfaffians(M), 5)
            by_ideal = [(n + 4) * (n + 3) * (n + 2) * (n + 1) // 24 - dims[n] for n in range(6)]
            assert by_betti == by_gamma == by_ideal, (a, by_betti, by_gamma, by_ideal)
        rng = random.Random(0)
        for n in (2, 4, 6, 8):
            for _ in range(3):
                M = [[0] * n for _ in range(n)]
                for i in range(n):
                    for j in range(i + 1, n):
                        v = rng.randint(-9, 9)
                        M[i][j], M[j][i] = v, -v
                assert pfaffian(M) ** 2 == fraction_det(M)
        elapsed = time.perf_counter() - t0
        assert elapsed < 120
        rec.detail = f"phi(0..5) agree on both, Pf^2 = det on 12 matrices, {elapsed:.2f}s"


def test_criterion_10_odd_generators(criterion):
    with criterion(10, "even generator counts rejected") as rec:
        tried = 0
        for g in enumerate_ag(14):
            s = validate_ag(g).s
            for count in range(2, 2 * s + 1, 2):
                for B in candidate_betti_ag(g, count):
                    rep = validate_betti_ag(g, B)
                    assert not rep.ok
                    assert "odd_generators" in {f.clause for f in rep.failures}
                    tried += 1
        assert tried > 0
        rec.detail = f"{tried} even-length candidates rejected"
