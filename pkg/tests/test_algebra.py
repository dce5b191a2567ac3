"""Integer polynomials and matrices against sympy."""
from __future__ import annotations

import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from equiangular import intmatrix as im
from equiangular.polynomial import IntPolynomial, monic_gcd, squarefree_decomposition, squarefree_part
from equiangular.spectra import char_poly

X = sympy.symbols("x")


def to_sympy(f: IntPolynomial):
    return sympy.Poly(list(reversed(f.coeffs)) or [0], X)


small_ints = st.integers(-6, 6)
monic_polys = st.lists(small_ints, min_size=0, max_size=5).map(lambda cs: IntPolynomial(cs + [1]))


def square_matrices(max_n=6, lo=-3, hi=3):
    return st.integers(1, max_n).flatmap(
        lambda n: st.lists(st.lists(st.integers(lo, hi), min_size=n, max_size=n), min_size=n, max_size=n)
    )


def test_basic_arithmetic():
    x = IntPolynomial.x()
    f = (x - 2) * (x + 1) ** 2
    assert f.coeffs == (-2, -3, 0, 1)
    assert f(2) == 0 and f(-1) == 0
    assert IntPolynomial.from_roots([2, -1, -1]) == f
    q, r = f.divmod_monic(x + 1)
    assert r.is_zero() and q == (x - 2) * (x + 1)
    assert (x + 1).divides(f)
    assert f.exact_div(x - 2) == (x + 1) ** 2


@given(monic_polys, monic_polys)
def test_gcd_matches_sympy(f, g):
    got = monic_gcd(f, g)
    want = sympy.gcd(to_sympy(f), to_sympy(g)).monic()
    assert list(reversed(got.coeffs)) == [int(c) for c in want.all_coeffs()]


@given(st.lists(st.integers(-4, 4), min_size=1, max_size=6))
def test_squarefree_decomposition_reassembles(roots):
    f = IntPolynomial.from_roots(roots)
    parts = squarefree_decomposition(f)
    prod = IntPolynomial((1,))
    for g, m in parts:
        prod = prod * g**m
    assert prod == f
    assert squarefree_part(f).degree == len(set(roots))


def companion(f: IntPolynomial):
    n = f.degree
    return [[(1 if i == j + 1 else 0) if j < n - 1 else -f.coeffs[i] for j in range(n)] for i in range(n)]


@given(monic_polys, st.integers(0, 7))
def test_newton_power_sums(f, k):
    # trace of the k-th power of the companion matrix is the k-th root power sum
    want = im.trace(im.power(companion(f), k)) if f.degree else 0
    assert f.root_power_sum(k) == want


@settings(max_examples=60)
@given(square_matrices())
def test_char_poly_matches_sympy(m):
    got = char_poly(m)
    want = sympy.Matrix(m).charpoly(X)
    assert to_sympy(got) == sympy.Poly(want.as_expr(), X)


@settings(max_examples=60)
@given(st.integers(1, 6).flatmap(lambda n: st.integers(1, 6).flatmap(
    lambda m: st.lists(st.lists(st.integers(-3, 3), min_size=m, max_size=m), min_size=n, max_size=n))))
def test_rank_matches_sympy(m):
    assert im.rank(m) == sympy.Matrix(m).rank()


def test_rref_of_known_matrix():
    rows, pivots = im.rref([[1, 2, 3], [2, 4, 6], [1, 0, 1]])
    assert pivots == [0, 1]
    assert rows[0][:2] == [1, 0] and rows[1][:2] == [0, 1]


def test_matrix_helpers():
    a = ((1, 2), (3, 4))
    assert im.matmul(a, im.identity(2)) == a
    assert im.trace(a) == 5
    assert im.power(a, 3) == im.matmul(a, im.matmul(a, a))
    assert im.power(a, 3, modulus=2) == im.reduce_mod(im.power(a, 3), 2)
    assert im.kron(im.ones(2), im.identity(1, 3)) == ((3, 3), (3, 3))
    assert im.transpose(((1, 2),)) == ((1,), (2,))
    assert im.is_symmetric(((0, 1), (1, 0))) and not im.is_symmetric(((0, 1), (2, 0)))
