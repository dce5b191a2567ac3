from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equiangular import intmatrix as im
from equiangular.core import (
    SeidelMatrix,
    SwitchingVector,
    all_ones,
    build_fixture_S10,
    build_S6,
    build_Sk_family,
    cycle_graph,
    graph_from_seidel,
    petersen_graph,
    seidel_from_graph,
    switch,
)
from equiangular.errors import BudgetExceeded, NotApplicable, PreconditionError
from equiangular.regular import (
    all_regular_eigenvectors,
    find_regular_graphs,
    irrational_three_ev_form,
    parity_conditions,
    regular_eigenspace_search,
    regular_graph_spectrum_from_seidel,
    seidel_spectrum_of_regular_graph,
    srg_correspondence,
    three_walk_condition,
    three_walk_from_spectrum,
    three_walk_numerator,
    witness_walk_numerator,
)
from equiangular.spectra import IntEig, Spectrum, SurdPair, spectrum


def seidel_matrices(min_n=1, max_n=8):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.sampled_from((1, -1)), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
            lambda up: SeidelMatrix.from_upper(n, up)
        )
    )


def brute_force_regular(s: SeidelMatrix) -> list[tuple[int, ...]]:
    out = []
    for tail in product((1, -1), repeat=s.n - 1):
        v = (1,) + tail
        if graph_from_seidel(s, v).is_regular():
            out.append(v)
    return sorted(out, key=lambda v: tuple(0 if x == 1 else 1 for x in v))


def test_c5_identity_witness():
    ws = find_regular_graphs(seidel_from_graph(cycle_graph(5)))
    assert len(ws) == 1
    w = ws[0]
    assert w.switching == SwitchingVector.identity(5)
    assert (w.valency, w.theta, w.disconnected) == (2, 0, False)
    assert w.graph_spectrum == Spectrum.of((2, 1), (SurdPair(1, -1), 2))


def test_complete_minus_identity():
    j = all_ones(4)
    v = regular_eigenspace_search(j, 3)
    assert v == SwitchingVector.identity(4)
    ws = find_regular_graphs(j)
    assert [w.valency for w in ws] == [0, 2, 2, 2]
    assert ws[0].disconnected


def test_s10_has_no_regular_switching():
    s = build_fixture_S10()
    assert regular_eigenspace_search(s, -3) is None
    assert find_regular_graphs(s) == []
    assert brute_force_regular(s) == []


def test_sk1_has_no_regular_switching():
    assert find_regular_graphs(build_Sk_family(1)) == []


def test_theta_must_be_integer_eigenvalue():
    s = build_S6()
    with pytest.raises((PreconditionError, NotApplicable)):
        regular_eigenspace_search(s, 2)


def test_budget_exceeded():
    with pytest.raises(BudgetExceeded):
        all_regular_eigenvectors(seidel_from_graph(petersen_graph()), -3, budget=3)


def test_petersen():
    s = seidel_from_graph(petersen_graph())
    ws = find_regular_graphs(s)
    assert SwitchingVector.identity(10) in [w.switching for w in ws]
    assert [w.switching.signs for w in ws] == brute_force_regular(s)


@settings(max_examples=80, deadline=None)
@given(seidel_matrices(max_n=8))
def test_search_agrees_with_brute_force(s):
    ws = find_regular_graphs(s, workers=1)
    assert [w.switching.signs for w in ws] == brute_force_regular(s)
    for w in ws:
        g = graph_from_seidel(s, w.switching)
        assert g.is_regular() and g.degrees()[0] == w.valency
        assert w.theta == s.n - 1 - 2 * w.valency
        assert seidel_spectrum_of_regular_graph(w.graph_spectrum, s.n, w.valency) == spectrum(s)
        t = switch(s, w.switching).entries
        assert im.matvec(t, [1] * s.n) == tuple([w.theta] * s.n)
        # the three-walk numerator computed two ways
        if spectrum(s).distinct_count() == 3 and not spectrum(s).has_residual:
            num = witness_walk_numerator(s, w)
            verdict = [v for v in three_walk_from_spectrum(spectrum(s)) if v.theta == w.theta][0]
            assert num == verdict.walk_count_times_16 and verdict.feasible


@pytest.mark.parametrize(
    "n, nu, ok",
    [(5, 0, True), (5, 2, False), (5, 1, False), (4, 3, True), (4, -1, True), (4, 0, False), (9, 0, True), (9, 4, True), (9, 2, False)],
)
def test_parity_conditions(n, nu, ok):
    assert parity_conditions(n, nu) is ok


@pytest.mark.parametrize(
    "seidel, graph",
    [
        ("-5^32,9^16,16^1", "-5^16,2^32,16^1"),
        ("-5^56,10^1,15^18", "-8^18,2^56,32^1"),
        ("-5^75,14^1,19^19", "-10^19,2^75,40^1"),
    ],
)
def test_srg_correspondence(seidel, graph):
    s = Spectrum.parse(seidel)
    g = srg_correspondence(s)
    assert g == Spectrum.parse(graph)
    k = g.entries[-1][0].value
    assert seidel_spectrum_of_regular_graph(g, s.n, k) == s


def test_spectrum_maps_round_trip():
    petersen = Spectrum.of((-2, 4), (1, 5), (3, 1))
    seidel = seidel_spectrum_of_regular_graph(petersen, 10, 3)
    assert seidel == spectrum(seidel_from_graph(petersen_graph()))
    assert regular_graph_spectrum_from_seidel(seidel, 3) == petersen
    with pytest.raises(PreconditionError):
        seidel_spectrum_of_regular_graph(petersen, 10, 4)
    with pytest.raises(PreconditionError):
        regular_graph_spectrum_from_seidel(seidel, 1)


def test_srg_correspondence_preconditions():
    with pytest.raises(PreconditionError):
        srg_correspondence(Spectrum.of((-1, 3), (3, 1)))
    with pytest.raises(PreconditionError):
        srg_correspondence(Spectrum.parse("-5^14,3^7,7^7"))


def test_irrational_three_ev_form():
    assert irrational_three_ev_form(5) == Spectrum.of((0, 1), (SurdPair(0, -5), 2))
    assert irrational_three_ev_form(13) == Spectrum.of((0, 1), (SurdPair(0, -13), 6))
    assert irrational_three_ev_form(9) is None
    assert irrational_three_ev_form(5) == spectrum(seidel_from_graph(cycle_graph(5)))
    with pytest.raises(PreconditionError):
        irrational_three_ev_form(6)


def test_three_walk_condition_examples():
    verdicts = {v.theta: v for v in three_walk_from_spectrum(Spectrum.parse("-3^2,1^3,3^1"))}
    assert not verdicts[-3].feasible and verdicts[-3].walk_count is None
    assert verdicts[1].feasible and verdicts[3].feasible
    verdicts = {v.theta: v for v in three_walk_from_spectrum(Spectrum.parse("-3^1,-1^3,3^2"))}
    assert verdicts[-3].walk_count == 4 and verdicts[-1].walk_count == 1
    assert not verdicts[3].feasible
    assert three_walk_numerator(6, 4, -1, 9) == 64
    with pytest.raises(NotApplicable):
        three_walk_from_spectrum(Spectrum.of((-1, 3), (3, 1)))
