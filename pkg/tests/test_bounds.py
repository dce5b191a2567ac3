from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from equiangular.bounds import (
    closest_even,
    diag_lower_bound,
    equality_spectrum,
    forced_spectrum_even_mu,
    load_known_bounds,
    multiplicity_lower_bound,
    n18_upper_bound,
    relative_bound,
    trace_cube_test,
    two_eigenvalue_deletion,
)
from equiangular.errors import PreconditionError
from equiangular.spectra import Spectrum, is_seidel_spectrum_shape


def test_relative_bound_examples():
    r = relative_bound(14, -5)
    assert r.bound == Fraction(336, 11) and r.floor_bound == 30 and r.tight_form
    assert relative_bound(18, -5).floor_bound == 61
    r = relative_bound(23, -5)
    assert r.bound == 276 and r.equality_spectrum == Spectrum.of((-5, 253), (55, 23))
    r = relative_bound(5, -3)
    assert r.bound == 10 and r.equality_spectrum == Spectrum.of((-3, 5), (3, 5))
    assert not relative_bound(8, -3).tight_form


@pytest.mark.parametrize("d, lam", [(25, -5), (26, -5), (3, 1), (0, -5), (4, 0)])
def test_relative_bound_preconditions(d, lam):
    with pytest.raises(PreconditionError):
        relative_bound(d, lam)


@given(st.integers(2, 60), st.integers(-12, -2))
def test_relative_bound_equality_spectra_are_seidel_shaped(d, lam):
    if lam * lam <= d:
        return
    r = relative_bound(d, lam)
    assert r.bound * (lam * lam - d) == d * (lam * lam - 1)
    if r.equality_spectrum is not None:
        assert r.equality_spectrum.n == r.bound
        assert is_seidel_spectrum_shape(r.equality_spectrum)


@given(st.integers(2, 40), st.integers(-9, -2), st.data())
def test_gap_rhs_is_integral_and_matches_sum_of_squares(d, lam, data):
    if lam * lam < d + 2:
        return
    top = relative_bound(d, lam).floor_bound
    if top <= d:
        return
    n = data.draw(st.integers(d + 1, top))
    mu = data.draw(st.integers(-60, 60).filter(lambda v: v != lam))
    g = multiplicity_lower_bound(d, lam, n, mu)
    # oracle: the d remaining eigenvalues have sum s1 and square sum s2 fixed by the traces,
    # and every one that is not mu contributes at least 1 to sum (x - mu)^2
    s1 = lam * -(n - d)
    s2 = n * (n - 1) - (n - d) * lam * lam
    dev = s2 - 2 * mu * s1 + d * mu * mu
    assert g.rhs == d - dev
    assert g.t == relative_bound(d, lam).bound - n


def test_multiplicity_lower_bound_preconditions():
    with pytest.raises(PreconditionError):
        multiplicity_lower_bound(18, -5, 61, -5)
    with pytest.raises(PreconditionError):
        multiplicity_lower_bound(24, -5, 30, 6)
    with pytest.raises(PreconditionError):
        multiplicity_lower_bound(18, -5, 62, 12)
    with pytest.raises(PreconditionError):
        multiplicity_lower_bound(18, -5, 18, 12)


def test_closest_even():
    assert closest_even(Fraction(5, 2)) == (2, False)
    assert closest_even(Fraction(7, 2)) == (4, False)
    assert closest_even(Fraction(3)) == (2, True)
    assert closest_even(Fraction(-3)) == (-2, True)
    assert closest_even(Fraction(4)) == (4, False)


def test_tie_at_d15_gives_the_same_spectrum_either_way():
    f = forced_spectrum_even_mu(15, -5)
    assert f.mu_tie and f.n == 36
    lo = equality_spectrum(15, -5, 36, 6, 0)
    hi = equality_spectrum(15, -5, 36, 8, 0)
    assert lo == hi == f.spectrum == Spectrum.parse("-5^21,7^15")


def test_forced_spectra_are_seidel_shaped():
    for d in range(14, 24):
        f = forced_spectrum_even_mu(d, -5)
        assert f is not None
        assert f.spectrum.n == f.n == relative_bound(d, -5).floor_bound
        assert is_seidel_spectrum_shape(f.spectrum)


def test_d23_printed_spectrum_is_inconsistent():
    printed = Spectrum.parse("-5^125,55^21")
    assert not is_seidel_spectrum_shape(printed)
    assert is_seidel_spectrum_shape(forced_spectrum_even_mu(23, -5).spectrum)


def test_trace_cube_n61():
    f = forced_spectrum_even_mu(18, -5)
    assert f.spectrum == Spectrum.parse("-5^43,11^9,12^1,13^8")
    r = trace_cube_test(f.spectrum)
    assert (r.theta0, r.sigma, r.parity_value, r.holds) == (12, -1, 425, False)
    assert diag_lower_bound(61, 19, 23, -715, -1) == -425
    assert n18_upper_bound() == 60


def test_trace_cube_preconditions():
    with pytest.raises(PreconditionError):
        trace_cube_test(Spectrum.parse("-5^21,7^15"))
    with pytest.raises(PreconditionError):
        trace_cube_test(Spectrum.parse("-5^43,11^9,13^9"))
    with pytest.raises(PreconditionError):
        diag_lower_bound(61, 19, 23, -715, 2)


def test_two_eigenvalue_deletion():
    assert two_eigenvalue_deletion(Spectrum.parse("-5^21,7^15")) == Spectrum.parse("-5^20,2^1,7^14")
    sub = two_eigenvalue_deletion(Spectrum.parse("-5^57,15^19"))
    assert sub.n == 75 and is_seidel_spectrum_shape(sub)
    assert two_eigenvalue_deletion(Spectrum.parse("-5^16,5^9,7^5")) is None


def test_known_bounds_table():
    rows = {b.d: (b.lower, b.upper) for b in load_known_bounds()}
    assert rows["18"] == (54, 60)
    assert rows["23"] == (276, 276)
    assert len(rows) == 16
