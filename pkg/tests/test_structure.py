from __future__ import annotations

import random
from itertools import combinations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equiangular import intmatrix as im
from equiangular.core import (
    Graph,
    SeidelMatrix,
    SwitchingVector,
    all_ones,
    build_fixture_S10,
    clebsch_graph,
    kneser_graph,
    cycle_graph,
    euler_switch,
    seidel_from_graph,
    switch,
)
from equiangular.errors import NotApplicable, NotPSDError, PreconditionError
from equiangular.spectra import Spectrum, SurdPair, spectrum
from equiangular.structure import (
    build_M,
    group_repeated_rows,
    mod4_M_check,
    rank2_prime_structure,
    six_diag_analyze,
    six_diag_q,
    small_diag_classify,
    spectral_pair_for,
    spectral_pairs,
    tensor_detect,
    two_valued_entry_count,
    unique_small_seidel_check,
)


def signed_permuted(m, rng):
    n = len(m)
    perm = list(range(n))
    rng.shuffle(perm)
    signs = [rng.choice((1, -1)) for _ in range(n)]
    return tuple(tuple(signs[i] * signs[j] * m[perm[i]][perm[j]] for j in range(n)) for i in range(n))


# ---------------------------------------------------------------- M matrices


def test_build_M_c5_is_all_ones():
    m = build_M(seidel_from_graph(cycle_graph(5)), [SurdPair(0, -5)])
    assert m.matrix == im.ones(5)
    assert (m.sigma, m.diag_value, m.rank) == (-1, 1, 1)


def test_build_M_fixture():
    m = build_M(build_fixture_S10(), [SurdPair(-4, -1)])
    assert m.diag_value == 8 and m.rank == 4 and im.rank(m.matrix) == 4
    assert mod4_M_check(m, 10)


def test_build_M_degenerate():
    m = build_M(all_ones(4), [-1, 3])
    assert m.degenerate and m.rank == 0
    assert all(x == 0 for row in m.matrix for x in row)


def test_build_M_preconditions():
    with pytest.raises(PreconditionError):
        build_M(all_ones(4), [-1, 5])
    with pytest.raises(PreconditionError):
        build_M(all_ones(4), [3, 3])


def test_mod4_M_check_negative():
    m = build_M(build_fixture_S10(), [SurdPair(-4, -1)])
    broken = type(m)(m.pair, m.e1, m.e2, m.sigma, im.add(m.matrix, im.identity(10)), m.diag_value, m.rank)
    assert not mod4_M_check(broken, 10)
    with pytest.raises(NotApplicable):
        mod4_M_check(build_M(seidel_from_graph(cycle_graph(5)), [SurdPair(0, -5)]), 5)


def test_spectral_pairs():
    spec = Spectrum.parse("-5^16,5^9,7^5")
    pairs = {p.label(): (p.diag_value, p.c) for p in spectral_pairs(spec)}
    assert pairs == {"(5,7)": (64, 16), "(-5,7)": (6, 9), "(-5,5)": (4, 5)}
    assert spectral_pair_for(spec, [-5, 5]).c == 5
    with pytest.raises(PreconditionError):
        spectral_pair_for(spec, [-5, 9])
    with pytest.raises(NotApplicable):
        spectral_pairs(Spectrum.of((-1, 3), (3, 1)))


# ---------------------------------------------------------------- PSD structure


def test_group_repeated_rows():
    m = ((4, -4, 0), (-4, 4, 0), (0, 0, 4))
    assert group_repeated_rows(m) == [((0, 1), (1, -1)), ((2, 1),)]
    with pytest.raises(NotPSDError):
        group_repeated_rows(((4, 4, 1), (4, 4, 0), (1, 0, 4)))
    with pytest.raises(PreconditionError):
        group_repeated_rows(((1, 0), (0, 2)))


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 4), st.integers(1, 4), st.integers(2, 6), st.randoms(use_true_random=False))
def test_tensor_detect_round_trip(q, k, d, rng):
    inner = [[d if i == j else 0 for j in range(q)] for i in range(q)]
    for i, j in combinations(range(q), 2):
        inner[i][j] = inner[j][i] = rng.randint(-(d - 1), d - 1)
    m = signed_permuted(im.kron(inner, im.ones(k)), rng)
    t = tensor_detect(m)
    assert t is not None and (t.q, t.k) == (q, k)
    assert t.reconstruct() == m
    assert sorted(map(len, t.blocks)) == [k] * q


def test_tensor_detect_unequal_blocks():
    m = ((2, 2, 0), (2, 2, 0), (0, 0, 2))
    assert tensor_detect(m) is None


def test_two_valued_entry_count():
    assert two_valued_entry_count(all_ones(4).entries, -1, 3, 1, 0) == (1, 1, 1, 1)
    m = im.kron(im.identity(2, 4), im.ones(2))
    assert two_valued_entry_count(m, 0, 8, 4, 0) == (2, 2, 2, 2)
    with pytest.raises(PreconditionError):
        two_valued_entry_count(m, 0, 7, 4, 0)
    with pytest.raises(PreconditionError):
        two_valued_entry_count(m, 0, 8, 4, 4)


def test_rank2_prime_structure():
    rng = random.Random(7)
    base = im.kron(((3, 1), (1, 3)), im.ones(3))
    m = signed_permuted(base, rng)
    r = rank2_prime_structure(m, 3)
    assert not r.vacuous and sorted(map(len, r.rows)) == [3, 3]
    v = r.switching.signs
    for block in r.rows:
        for i in block:
            for j in block:
                assert v[i] * v[j] * m[i][j] == 3
    assert rank2_prime_structure(im.ones(3, 7) if False else tuple(tuple(7 for _ in range(3)) for _ in range(3)), 7).vacuous
    with pytest.raises(PreconditionError):
        rank2_prime_structure(base, 5)
    with pytest.raises(PreconditionError):
        rank2_prime_structure(im.identity(3, 3), 3)


# ---------------------------------------------------------------- diagonal 6 and classification


def test_six_diag_q():
    assert {c: six_diag_q(c) for c in range(1, 9)} == {1: 1, 2: None, 3: 4, 4: None, 5: 10, 6: 16, 7: 28, 8: None}
    for c, q in ((1, 1), (3, 4), (5, 10), (6, 16), (7, 28)):
        assert (q + 8) * (9 - c) == 72


@pytest.mark.parametrize(
    "n, c, feasible, q",
    [(30, 5, True, 10), (40, 6, False, 16), (42, 7, False, 28), (30, 9, False, None), (40, 5, True, 10)],
)
def test_six_diag_analyze(n, c, feasible, q):
    r = six_diag_analyze(n, c)
    assert (r.feasible, r.q) == (feasible, q)
    if q is not None:
        assert r.inner_spectrum() == Spectrum.of((-3, q - c), ((q - 1) // 3, c))


def test_six_diag_analyze_odd():
    with pytest.raises(PreconditionError):
        six_diag_analyze(31, 5)


@pytest.mark.parametrize(
    "n, prod, c, verdict, citation",
    [
        (30, -35, 9, "infeasible", "Cor. 5.12"),
        (30, -25, 5, "regular", "Lemma 5.9"),
        (42, -45, 7, "regular", "Lemma 5.9"),
        (60, -55, 3, "regular", "Lemma 5.9"),
        (40, -45, 6, "infeasible", "Cor. 5.12"),
        (10, -9, 1, "impossible", "Thm. 5.13"),
        (10, -7, 1, "regular", "Lemma 5.9"),
        (10, -7, 2, "infeasible", "Lemma 5.9"),
        (10, -6, 1, "infeasible", "Lemma 2.2"),
        (10, -5, 3, "infeasible", "Lemma 5.9"),
        (10, 5, 2, "regular", "Thm. 5.7"),
        (10, 5, 3, "unknown", ""),
    ],
)
def test_small_diag_classify(n, prod, c, verdict, citation):
    r = small_diag_classify(n, prod, c)
    assert (r.verdict, r.citation) == (verdict, citation)
    assert r.D == abs(n - 1 + prod)


def test_small_diag_classify_odd():
    with pytest.raises(NotApplicable):
        small_diag_classify(9, -5, 1)


def test_unique_small_spectra():
    k4 = unique_small_seidel_check(Spectrum.of((-3, 1), (1, 3)))
    assert k4 == {"ok": True, "source": "K4", "regular": {-3: True, 1: True}}
    assert unique_small_seidel_check(Spectrum.of((-3, 5), (3, 5)))["ok"]
    clebsch = seidel_from_graph(clebsch_graph())
    assert spectrum(clebsch) == Spectrum.of((-3, 10), (5, 6))
    assert unique_small_seidel_check(spectrum(clebsch))["ok"]
    assert unique_small_seidel_check(spectrum(clebsch), clebsch)["source"] == "witness"


def test_order_28_nine_eigenspace_is_not_regular():
    t8 = seidel_from_graph(kneser_graph(8))
    assert spectrum(t8) == Spectrum.of((-3, 21), (9, 7))
    r = unique_small_seidel_check(spectrum(t8))
    assert r["regular"] == {-3: True, 9: False}
    assert not r["ok"]
    # a 9-regular graph here would be srg(28,9,0,4), spectrum {9, 1^21, (-5)^6};
    # the absolute bound n <= f(f+3)/2 with f = 6 gives 27 < 28
    assert 6 * (6 + 3) // 2 < 28


def test_unique_small_spectra_errors():
    with pytest.raises(PreconditionError):
        unique_small_seidel_check(Spectrum.of((-1, 3), (3, 1)))
    with pytest.raises(PreconditionError):
        unique_small_seidel_check(Spectrum.of((-3, 21), (9, 7)), seidel_from_graph(clebsch_graph()))


def test_six_diag_q28_does_not_force_regularity():
    r = small_diag_classify(56, -61, 7)
    assert r.D == 6 and r.six.q == 28 and r.verdict == "unknown"
