from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from equiangular import intmatrix as im
from equiangular.core import SeidelMatrix, SwitchingVector, all_ones, build_S6, graph_from_seidel, relabel, switch
from equiangular.enumeration import (
    MAX_CANONICAL_ORDER,
    ClassRecord,
    burnside_class_count,
    canonical_form,
    class_records,
    decode,
    encode,
    enumerate_classes,
    find_s6,
    read_results,
    switching_equivalent,
    upper_from_index,
    write_results,
)
from equiangular.errors import PreconditionError
from equiangular.spectra import spectrum


def seidel_matrices(min_n=1, max_n=MAX_CANONICAL_ORDER):
    return st.integers(min_n, max_n).flatmap(
        lambda n: st.lists(st.sampled_from((1, -1)), min_size=n * (n - 1) // 2, max_size=n * (n - 1) // 2).map(
            lambda up: SeidelMatrix.from_upper(n, up)
        )
    )


@given(seidel_matrices())
def test_encode_decode(s):
    assert decode(s.n, encode(s)) == s


@settings(max_examples=150, deadline=None)
@given(seidel_matrices(), st.randoms(use_true_random=False))
def test_canonical_form_is_invariant(s, rng):
    n = s.n
    perm = list(range(n))
    rng.shuffle(perm)
    v = SwitchingVector((1,) + tuple(rng.choice((1, -1)) for _ in range(n - 1)))
    t = relabel(switch(s, v), perm)
    a, b = canonical_form(s), canonical_form(t)
    assert a.code == b.code and a.representative == b.representative
    assert a.spectrum == spectrum(s)
    # the representative is the minimum, and row 0 is all -1
    assert a.code <= encode(s)
    assert all(x == -1 for x in a.representative.entries[0][1:])


def test_canonical_form_separates_classes():
    classes = enumerate_classes(5)
    codes = {canonical_form(c.representative).code for c in classes}
    assert len(codes) == len(classes)
    for c in classes:
        assert canonical_form(c.representative).code == c.code


def test_canonical_form_limit():
    with pytest.raises(PreconditionError):
        canonical_form(all_ones(MAX_CANONICAL_ORDER + 1))


def test_switching_equivalent():
    s = build_S6()
    t = relabel(switch(s, SwitchingVector((1, -1, 1, -1, -1, 1))), [5, 4, 3, 2, 1, 0])
    assert switching_equivalent(s, t)
    assert not switching_equivalent(s, all_ones(6))
    assert not switching_equivalent(s, all_ones(5))


@pytest.mark.parametrize("n, count", [(1, 1), (2, 1), (3, 2), (4, 3), (5, 7), (6, 16)])
def test_class_counts(n, count):
    classes = enumerate_classes(n)
    assert len(classes) == count
    assert burnside_class_count(n) == count
    assert sum(c.class_size for c in classes) == 2 ** (n * (n - 1) // 2)


def test_enumeration_limit():
    with pytest.raises(PreconditionError):
        enumerate_classes(7)
    with pytest.raises(PreconditionError):
        enumerate_classes(0)
    with pytest.raises(PreconditionError):
        enumerate_classes(9, allow_large=True)


def test_class_sizes_by_brute_force():
    # orbit of every triangle under switching and relabeling, counted directly for n = 4
    n = 4
    seen = {}
    for idx in range(1 << 6):
        s = SeidelMatrix.from_upper(n, upper_from_index(n, idx))
        seen.setdefault(canonical_form(s).code, 0)
        seen[canonical_form(s).code] += 1
    assert {c.code: c.class_size for c in enumerate_classes(n)} == seen


def test_find_s6():
    idx, s = find_s6()
    assert idx == 684
    assert im.matmul(s.entries, s.entries) == im.identity(6, 5)
    assert switching_equivalent(s, build_S6())


def test_results_file_round_trip(tmp_path):
    records = class_records(4)
    path = tmp_path / "classes.txt"
    write_results(records, path)
    write_results(records[:1], path)
    back = read_results(path)
    assert len(back) == len(records) + 1
    for (s, spec, count), r in zip(back, records):
        assert s == r.cls.representative
        assert spec == r.cls.spectrum
        assert count == r.witnesses
    assert isinstance(records[0], ClassRecord)


def test_witness_counts_match_brute_force():
    for n in (3, 4, 5):
        for r in class_records(n):
            s = r.cls.representative
            count = sum(
                graph_from_seidel(s, (1,) + tail).is_regular() for tail in product((1, -1), repeat=n - 1)
            )
            assert r.witnesses == count


@pytest.mark.slow
def test_class_count_n7():
    classes = enumerate_classes(7, allow_large=True)
    assert len(classes) == 54
    assert sum(c.class_size for c in classes) == 2**21
    assert burnside_class_count(7) == 54
