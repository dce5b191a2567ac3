"""Exact spectra of integer symmetric matrices.

Eigenvalues are kept as integers or as conjugate pairs of real quadratic
irrationals (the two roots of a monic ``x^2 + p x + q``). A characteristic
polynomial is split into linear and quadratic factors; whatever is left
over (irreducible of degree three or more) is carried as a residual.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Sequence, Union

from . import intmatrix as im
from .core import SeidelMatrix, graph_from_seidel
from .errors import NotApplicable, PreconditionError
from .polynomial import IntPolynomial, squarefree_decomposition, squarefree_part


def _is_square(x: int) -> bool:
    return x >= 0 and isqrt(x) ** 2 == x


@dataclass(frozen=True)
class IntEig:
    value: int

    degree = 1

    def minimal_polynomial(self) -> IntPolynomial:
        return IntPolynomial.linear_root(self.value)

    def power_sum(self, k: int) -> int:
        return self.value**k

    def roots(self) -> tuple[Root, ...]:
        return (Root(Fraction(self.value), Fraction(0), 1),)

    def render(self, mult: int) -> str:
        return f"{self.value}^{mult}"

    def root_text(self, branch: int = 1, negate: bool = False) -> str:
        return str(-self.value if negate else self.value)

    def root_float(self, branch: int = 1) -> float:
        return float(self.value)

    def affine(self, a: Fraction, b: Fraction) -> IntEig:
        """Image under ``x -> a + b x`` (must stay integral)."""
        y = a + b * self.value
        if y.denominator != 1:
            raise ValueError(f"{a} + {b}*{self.value} is not an integer")
        return IntEig(int(y))

    def __str__(self) -> str:
        return str(self.value)


@dataclass(frozen=True)
class SurdPair:
    """The two real irrational roots ``(-p +- sqrt(p^2 - 4q)) / 2`` of ``x^2 + p x + q``."""

    p: int
    q: int

    degree = 2

    def __post_init__(self):
        disc = self.p * self.p - 4 * self.q
        if disc <= 0:
            raise ValueError(f"x^2 + {self.p}x + {self.q} does not have two real roots")
        if _is_square(disc):
            raise ValueError(f"x^2 + {self.p}x + {self.q} has rational roots")

    @property
    def discriminant(self) -> int:
        return self.p * self.p - 4 * self.q

    @property
    def e1(self) -> int:
        """Sum of the two roots."""
        return -self.p

    @property
    def e2(self) -> int:
        """Product of the two roots."""
        return self.q

    def minimal_polynomial(self) -> IntPolynomial:
        return IntPolynomial((self.q, self.p, 1))

    def power_sum(self, k: int) -> int:
        """Sum of the k-th powers of the two roots."""
        s_prev, s = 2, -self.p
        if k == 0:
            return 2
        for _ in range(k - 1):
            s_prev, s = s, -self.p * s - self.q * s_prev
        return s

    def roots(self) -> tuple[Root, ...]:
        a = Fraction(-self.p, 2)
        d = self.discriminant
        return (Root(a, Fraction(-1, 2), d), Root(a, Fraction(1, 2), d))

    def render(self, mult: int) -> str:
        return f"surd({self.p},{self.q})^{mult}"

    def root_text(self, branch: int = 1, negate: bool = False) -> str:
        flip = -1 if negate else 1
        a = Fraction(-self.p, 2) * flip
        b = Fraction(branch, 2) * flip
        return Root(a, b, self.discriminant).text()

    def root_float(self, branch: int = 1) -> float:
        return (-self.p + branch * self.discriminant**0.5) / 2

    def affine(self, a: Fraction, b: Fraction) -> SurdPair:
        """Image pair under ``x -> a + b x``; must again have an integral monic polynomial."""
        # roots y = a + b x, so x = (y - a)/b and y^2 - (2a + b e1) y + (a^2 + a b e1 + b^2 e2) = 0.
        e1, e2 = Fraction(-self.p), Fraction(self.q)
        s = 2 * a + b * e1
        t = a * a + a * b * e1 + b * b * e2
        if s.denominator != 1 or t.denominator != 1:
            raise ValueError(f"image of {self} under {a} + {b}x is not an algebraic integer pair")
        return SurdPair(int(-s), int(t))

    def __str__(self) -> str:
        return f"surd({self.p},{self.q})"


Eigenvalue = Union[IntEig, SurdPair]


@dataclass(frozen=True)
class Root:
    """A real number ``a + b*sqrt(d)`` with rational a, b and non-negative integer d."""

    a: Fraction
    b: Fraction
    d: int

    def bounds(self, bits: int) -> tuple[Fraction, Fraction]:
        """Interval containing ``value * 2**bits``."""
        base = self.a * (1 << bits)
        if self.b == 0:
            return base, base
        t = self.b * self.b * self.d * (1 << (2 * bits))
        s = isqrt(t.numerator // t.denominator)
        if self.b > 0:
            return base + s, base + s + 1
        return base - s - 1, base - s

    def __lt__(self, other: Root) -> bool:
        return compare_roots(self, other) < 0

    def text(self) -> str:
        if self.b == 0:
            return str(self.a)
        # pull square factors out of the radicand
        f, d = 1, self.d
        k = 2
        while k * k <= d:
            while d % (k * k) == 0:
                d //= k * k
                f *= k
            k += 1
        head = "" if self.a == 0 else f"{self.a}"
        sign = "-" if self.b < 0 else ("+" if head else "")
        mag = abs(self.b) * f
        coef = "" if mag == 1 else f"{mag}*"
        return f"{head}{sign}{coef}sqrt({d})"

    def __float__(self) -> float:
        return float(self.a) + float(self.b) * self.d**0.5


def compare_roots(x: Root, y: Root) -> int:
    """Exact three-way comparison of two quadratic reals."""
    if x == y:
        return 0
    if x.b == 0 and y.b == 0:
        return (x.a > y.a) - (x.a < y.a)
    # distinct values in canonical form, so refinement terminates
    bits = 8
    while True:
        xl, xh = x.bounds(bits)
        yl, yh = y.bounds(bits)
        if xh < yl:
            return -1
        if xl > yh:
            return 1
        if bits > 4096:
            # only reachable for two encodings of one value (e.g. d with square factors)
            diff_a = x.a - y.a
            if diff_a == 0 and x.b * x.b * x.d == y.b * y.b * y.d and (x.b > 0) == (y.b > 0):
                return 0
        bits *= 2


def _eig_sort_key(e: Eigenvalue):
    if isinstance(e, IntEig):
        return (0, e.value, 0)
    return (1, -e.p, e.q)


@dataclass(frozen=True)
class Spectrum:
    """Multiset of exact eigenvalues.

    ``entries`` pairs each eigenvalue with its multiplicity; for a SurdPair the
    multiplicity is that of each of the two conjugate roots. ``residual`` is
    the monic product of factors that could not be split (1 when empty).
    """

    entries: tuple[tuple[Eigenvalue, int], ...]
    residual: IntPolynomial = field(default_factory=lambda: IntPolynomial((1,)))

    def __post_init__(self):
        merged: dict[Eigenvalue, int] = {}
        for e, m in self.entries:
            if m < 0:
                raise ValueError("negative multiplicity")
            if m:
                merged[e] = merged.get(e, 0) + m
        ordered = tuple(sorted(merged.items(), key=lambda em: _eig_sort_key(em[0])))
        object.__setattr__(self, "entries", ordered)
        if not self.residual.is_monic():
            raise ValueError("residual must be monic")

    @classmethod
    def of(cls, *pairs: tuple[int | Eigenvalue, int]) -> Spectrum:
        """Convenience: ``Spectrum.of((-3, 4), (SurdPair(-4, -1), 3))``."""
        return cls(tuple((IntEig(e) if isinstance(e, int) else e, m) for e, m in pairs))

    @property
    def n(self) -> int:
        return sum(e.degree * m for e, m in self.entries) + self.residual.degree

    @property
    def has_residual(self) -> bool:
        return self.residual.degree > 0

    def multiplicity(self, e: int | Eigenvalue) -> int:
        if isinstance(e, int):
            e = IntEig(e)
        for f, m in self.entries:
            if f == e:
                return m
        return 0

    def eigenvalues(self) -> list[Eigenvalue]:
        return [e for e, _ in self.entries]

    def integer_eigenvalues(self) -> list[int]:
        return [e.value for e, _ in self.entries if isinstance(e, IntEig)]

    def distinct_count(self) -> int:
        """Number of distinct roots (residual counted by its squarefree degree)."""
        count = sum(e.degree for e, _ in self.entries)
        if self.has_residual:
            count += squarefree_part(self.residual).degree
        return count

    def power_sum(self, k: int) -> int:
        return sum(e.power_sum(k) * m for e, m in self.entries) + self.residual.root_power_sum(k)

    def polynomial(self) -> IntPolynomial:
        out = self.residual
        for e, m in self.entries:
            out = out * e.minimal_polynomial() ** m
        return out

    def roots_sorted(self) -> list[tuple[Root, Eigenvalue, int]]:
        items = [(r, e, m) for e, m in self.entries for r in e.roots()]
        from functools import cmp_to_key

        return sorted(items, key=cmp_to_key(lambda x, y: compare_roots(x[0], y[0])))

    def smallest(self) -> tuple[Eigenvalue, int]:
        if self.has_residual:
            raise NotApplicable("smallest eigenvalue lies in an unsplit residual factor")
        _, e, m = self.roots_sorted()[0]
        return e, m

    def render(self) -> str:
        text = ",".join(e.render(m) for e, m in self.entries)
        if self.has_residual:
            text += (";" if text else "") + f"residual({str(self.residual)})"
        return text

    __str__ = render

    @classmethod
    def parse(cls, text: str) -> Spectrum:
        return parse_spectrum_text(text)

    def map_affine(self, a: Fraction, b: Fraction) -> Spectrum:
        if self.has_residual:
            raise NotApplicable("cannot map a residual factor")
        return Spectrum(tuple((e.affine(a, b), m) for e, m in self.entries))


_TERM = re.compile(r"\s*(?:(?P<int>[+-]?\d+)|surd\(\s*(?P<p>[+-]?\d+)\s*,\s*(?P<q>[+-]?\d+)\s*\))\s*\^\s*(?P<m>[+-]?\d+)\s*")


class SpectrumSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def parse_spectrum_text(text: str) -> Spectrum:
    """Parse ``term ("," term)*`` with ``term = INT "^" INT | "surd(" INT "," INT ")" "^" INT``."""
    pos = 0
    entries: list[tuple[Eigenvalue, int]] = []
    seen: set = set()
    if not text.strip():
        raise SpectrumSyntaxError("empty spectrum", 0)
    while True:
        m = _TERM.match(text, pos)
        if not m:
            raise SpectrumSyntaxError("expected 'v^m' or 'surd(p,q)^m'", pos)
        mult = int(m.group("m"))
        if mult <= 0:
            raise SpectrumSyntaxError(f"multiplicity must be positive, got {mult}", m.start("m"))
        if m.group("int") is not None:
            e: Eigenvalue = IntEig(int(m.group("int")))
        else:
            p, q = int(m.group("p")), int(m.group("q"))
            try:
                e = SurdPair(p, q)
            except ValueError as exc:
                raise SpectrumSyntaxError(str(exc), m.start("p")) from None
        if e in seen:
            raise SpectrumSyntaxError(f"duplicate eigenvalue {e}", m.start())
        seen.add(e)
        entries.append((e, mult))
        pos = m.end()
        if pos == len(text):
            break
        if text[pos] != ",":
            raise SpectrumSyntaxError(f"unexpected {text[pos]!r}", pos)
        pos += 1
    return Spectrum(tuple(entries))


# ---------------------------------------------------------------- characteristic polynomials


def char_poly(m: im.MatrixLike) -> IntPolynomial:
    """``det(xI - M)`` by the Faddeev-LeVerrier recursion (all divisions exact)."""
    if isinstance(m, SeidelMatrix):
        m = m.entries
    if not im.is_square(m):
        raise ValueError("characteristic polynomial of a non-square matrix")
    n = len(m)
    a = [list(row) for row in m]
    coeffs = [0] * (n + 1)
    coeffs[n] = 1
    mk = [[0] * n for _ in range(n)]
    for k in range(1, n + 1):
        c_prev = coeffs[n - k + 1]
        for i in range(n):
            mk[i][i] += c_prev
        cols = list(zip(*mk))
        am = [[sum(x * y for x, y in zip(row, col) if x) for col in cols] for row in a]
        tr = sum(am[i][i] for i in range(n))
        q, r = divmod(-tr, k)
        assert r == 0, "Faddeev-LeVerrier division must be exact for integer matrices"
        coeffs[n - k] = q
        mk = am
    return IntPolynomial(coeffs)


def _integer_roots(g: IntPolynomial, bound: int) -> list[int]:
    c0 = g.coeffs[0] if g.coeffs else 0
    roots = []
    if c0 == 0:
        roots.append(0)
    for r in range(1, bound + 1):
        for cand in (r, -r):
            if c0 % cand == 0 and g(cand) == 0:
                roots.append(cand)
    return sorted(roots)


def _quadratic_factors(h: IntPolynomial, bound: int) -> tuple[list[SurdPair], IntPolynomial]:
    """Split off monic irreducible quadratics with real roots in [-bound, bound]."""
    found: list[SurdPair] = []
    while h.degree >= 2:
        if h.degree == 2:
            _, p, _one = h.coeffs
            q = h.coeffs[0]
            found.append(SurdPair(p, q))
            return found, IntPolynomial((1,))
        if h.degree == 3:
            break  # no integer root, so irreducible
        c0 = h.coeffs[0]
        hit = None
        qmax = bound * bound
        for aq in range(1, qmax + 1):
            if c0 % aq:
                continue
            for q in (aq, -aq):
                for p in range(-2 * bound, 2 * bound + 1):
                    disc = p * p - 4 * q
                    if disc <= 0 or _is_square(disc):
                        continue
                    cand = IntPolynomial((q, p, 1))
                    if cand.divides(h):
                        hit = SurdPair(p, q)
                        break
                if hit:
                    break
            if hit:
                break
        if hit is None:
            break
        found.append(hit)
        h = h.exact_div(hit.minimal_polynomial())
    return found, h


def spectrum_of_polynomial(f: IntPolynomial, bound: int) -> Spectrum:
    """Split a monic real-rooted polynomial whose roots lie in ``[-bound, bound]``."""
    if not f.is_monic():
        raise ValueError("characteristic polynomials are monic")
    entries: list[tuple[Eigenvalue, int]] = []
    residual = IntPolynomial((1,))
    for g, mult in squarefree_decomposition(f):
        roots = _integer_roots(g, bound)
        for r in roots:
            entries.append((IntEig(r), mult))
            g = g.exact_div(IntPolynomial.linear_root(r))
        pairs, rest = _quadratic_factors(g, bound)
        entries.extend((pr, mult) for pr in pairs)
        if rest.degree > 0:
            residual = residual * rest**mult
    return Spectrum(tuple(entries), residual)


def spectrum_of_matrix(m: im.MatrixLike) -> Spectrum:
    """Spectrum of any symmetric integer matrix (roots bounded by the max absolute row sum)."""
    if isinstance(m, SeidelMatrix):
        return spectrum(m)
    if not im.is_symmetric(m):
        raise ValueError("spectrum needs a symmetric matrix")
    bound = max((sum(abs(x) for x in row) for row in m), default=0)
    return spectrum_of_polynomial(char_poly(m), bound)


def spectrum(s: SeidelMatrix) -> Spectrum:
    return spectrum_of_polynomial(char_poly(s.entries), max(s.n - 1, 0))


def distinct_eigenvalue_count(s: SeidelMatrix | im.MatrixLike) -> int:
    f = char_poly(s.entries if isinstance(s, SeidelMatrix) else s)
    return squarefree_part(f).degree


def is_psd(m: im.MatrixLike) -> bool:
    """Exact PSD test: ``(-1)^(n-i) c_i >= 0`` for every coefficient of ``det(xI - M)``."""
    if isinstance(m, SeidelMatrix):
        m = m.entries
    if not im.is_symmetric(m):
        raise ValueError("is_psd needs a symmetric matrix")
    f = char_poly(m)
    n = len(m)
    return all((-1) ** (n - i) * c >= 0 for i, c in enumerate(f.coeffs))


# ---------------------------------------------------------------- congruences


def mod2_power_check(s: SeidelMatrix, k: int) -> bool:
    if k < 1:
        raise ValueError("k must be positive")
    n = s.n
    got = im.power(s.entries, k, modulus=2)
    # k odd: J - I; k even: nJ - I.
    off = 1 if k % 2 else n % 2
    diag = 0 if k % 2 else (n - 1) % 2
    want = tuple(tuple(diag if i == j else off for j in range(n)) for i in range(n))
    return got == want


@dataclass(frozen=True)
class Mod2Class:
    parity: str  # "even" or "odd", the parity of the order
    matches: bool
    reduced: IntPolynomial


def mod2_charpoly_class(s: SeidelMatrix) -> Mod2Class:
    n = s.n
    f = char_poly(s.entries).reduce_mod(2)
    x1 = IntPolynomial((1, 1))
    if n % 2 == 0:
        want = (x1**n).reduce_mod(2)
    else:
        want = (IntPolynomial.x() * x1 ** (n - 1)).reduce_mod(2)
    return Mod2Class("even" if n % 2 == 0 else "odd", f == want, f)


def mod4_square_check(s: SeidelMatrix) -> bool:
    """``S^2 = (n-2)J + I (mod 4)``; requires an Euler underlying graph."""
    if not graph_from_seidel(s).is_euler():
        raise PreconditionError("underlying graph is not an Euler graph; switch with euler_switch first")
    n = s.n
    sq = im.matmul(s.entries, s.entries)
    return all(
        (sq[i][j] - ((n - 2) + (1 if i == j else 0))) % 4 == 0 for i in range(n) for j in range(n)
    )


def is_seidel_spectrum_shape(spec: Spectrum) -> bool:
    """Trace identities: sum of eigenvalues 0 and sum of squares n(n-1)."""
    n = spec.n
    return spec.power_sum(1) == 0 and spec.power_sum(2) == n * (n - 1)


def eigen_pairs_with_integral_product(spec: Spectrum) -> list[tuple[Eigenvalue, ...]]:
    """Eigenvalue pairs (lambda, mu) whose sum and product are integers.

    Integer pairs are returned as 2-tuples of IntEig; a conjugate pair as a 1-tuple.
    """
    out: list[tuple[Eigenvalue, ...]] = []
    ints = [e for e, _ in spec.entries if isinstance(e, IntEig)]
    for i in range(len(ints)):
        for j in range(i + 1, len(ints)):
            out.append((ints[i], ints[j]))
    out.extend((e,) for e, _ in spec.entries if isinstance(e, SurdPair))
    return out


def pair_symmetric_functions(pair: Sequence[Eigenvalue]) -> tuple[int, int]:
    """(lambda + mu, lambda * mu) for an integer pair or a conjugate surd pair."""
    if len(pair) == 1 and isinstance(pair[0], SurdPair):
        return pair[0].e1, pair[0].e2
    if len(pair) == 2 and all(isinstance(e, IntEig) for e in pair):
        a, b = pair
        if a == b:
            raise ValueError("pair entries must be distinct")
        return a.value + b.value, a.value * b.value
    raise ValueError("pair must be two integer eigenvalues or one conjugate surd pair")


def pair_members(pair: Sequence[Eigenvalue]) -> list[Eigenvalue]:
    return list(pair)


def validate_eigen_pair(spec: Spectrum, pair: Iterable[Eigenvalue]) -> None:
    for e in pair:
        if spec.multiplicity(e) == 0:
            raise PreconditionError(f"{e} is not an eigenvalue")
