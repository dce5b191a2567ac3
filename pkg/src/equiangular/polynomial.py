"""Dense univariate polynomials with arbitrary-precision integer coefficients.

Coefficients are stored in ascending order of degree, so ``(c0, c1, c2)``
is ``c0 + c1*x + c2*x**2``. Trailing zeros are always stripped; the zero
polynomial has an empty coefficient tuple and degree -1.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _strip(coeffs: Sequence) -> tuple:
    n = len(coeffs)
    while n and not coeffs[n - 1]:
        n -= 1
    return tuple(coeffs[:n])


class IntPolynomial:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[int] = ()):
        cs = [int(c) for c in coeffs]
        self.coeffs: tuple[int, ...] = _strip(cs)

    # construction helpers
    @classmethod
    def x(cls) -> IntPolynomial:
        return cls((0, 1))

    @classmethod
    def constant(cls, c: int) -> IntPolynomial:
        return cls((c,))

    @classmethod
    def linear_root(cls, r: int) -> IntPolynomial:
        """The monic polynomial ``x - r``."""
        return cls((-r, 1))

    @classmethod
    def from_roots(cls, roots: Iterable[int]) -> IntPolynomial:
        out = cls((1,))
        for r in roots:
            out = out * cls.linear_root(r)
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_monic(self) -> bool:
        return self.leading == 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other) -> bool:
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == _strip((other,))
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if i == 0:
                body = str(mag)
            else:
                var = "x" if i == 1 else f"x^{i}"
                body = var if mag == 1 else f"{mag}*{var}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            text += f" {sign} {body}"
        return text

    def __neg__(self) -> IntPolynomial:
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other) -> IntPolynomial:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> IntPolynomial:
        return self + (-_coerce(other))

    def __rsub__(self, other) -> IntPolynomial:
        return _coerce(other) - self

    def __mul__(self, other) -> IntPolynomial:
        other = _coerce(other)
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return IntPolynomial()
        out = [0] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    out[i + j] += ca * cb
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, e: int) -> IntPolynomial:
        if e < 0:
            raise ValueError("negative exponent")
        result = IntPolynomial((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def divmod_monic(self, divisor: IntPolynomial) -> tuple[IntPolynomial, IntPolynomial]:
        """Exact long division by a monic integer polynomial."""
        if not divisor.is_monic():
            raise ValueError("divisor must be monic")
        rem = list(self.coeffs)
        dd = divisor.degree
        if len(rem) - 1 < dd:
            return IntPolynomial(), IntPolynomial(rem)
        quot = [0] * (len(rem) - dd)
        dc = divisor.coeffs
        for i in range(len(rem) - 1, dd - 1, -1):
            c = rem[i]
            if c:
                quot[i - dd] = c
                for j in range(dd + 1):
                    rem[i - dd + j] -= c * dc[j]
        return IntPolynomial(quot), IntPolynomial(rem[:dd])

    def divides(self, other: IntPolynomial) -> bool:
        """True when this monic polynomial divides ``other`` exactly."""
        return other.divmod_monic(self)[1].is_zero()

    def exact_div(self, divisor: IntPolynomial) -> IntPolynomial:
        q, r = self.divmod_monic(divisor)
        if not r.is_zero():
            raise ArithmeticError(f"{divisor} does not divide {self}")
        return q

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def reduce_mod(self, m: int) -> IntPolynomial:
        return IntPolynomial(c % m for c in self.coeffs)

    def root_power_sum(self, k: int) -> int:
        """Sum of the k-th powers of the roots (with multiplicity), by Newton's identities."""
        if not self.is_monic():
            raise ValueError("polynomial must be monic")
        d = self.degree
        e = [1] + [(-1) ** i * self.coeffs[d - i] for i in range(1, d + 1)]
        p = [d]
        for j in range(1, k + 1):
            total = sum((-1) ** (i - 1) * e[i] * p[j - i] for i in range(1, min(j, d + 1)))
            if j <= d:
                total += (-1) ** (j - 1) * j * e[j]
            p.append(total)
        return p[k]



def _coerce(p) -> IntPolynomial:
    if isinstance(p, IntPolynomial):
        return p
    if isinstance(p, int):
        return IntPolynomial((p,))
    raise TypeError(f"cannot use {type(p).__name__} as a polynomial")


# rational helpers for gcd / squarefree decomposition


def _frac_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = list(a)
    db = len(b) - 1
    lead = b[-1]
    if len(a) - 1 < db:
        return [], a
    q = [Fraction(0)] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i] / lead
        q[i - db] = c
        if c:
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    return q, list(_strip(a[:db]))


def _frac_gcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    while b:
        _, r = _frac_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    lead = a[-1]
    return [c / lead for c in a]


def _to_int_poly(p: list[Fraction]) -> IntPolynomial:
    if any(c.denominator != 1 for c in p):
        raise ArithmeticError("factor is not an integer polynomial")
    return IntPolynomial(int(c) for c in p)


def _frac(p: IntPolynomial) -> list[Fraction]:
    return [Fraction(c) for c in p.coeffs]


def _deriv(p: list[Fraction]) -> list[Fraction]:
    return list(_strip([i * c for i, c in enumerate(p)][1:]))


def _sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * max(len(a), len(b))
    for i, c in enumerate(a):
        out[i] += c
    for i, c in enumerate(b):
        out[i] -= c
    return list(_strip(out))


def monic_gcd(f: IntPolynomial, g: IntPolynomial) -> IntPolynomial:
    """Monic gcd over the rationals.

    By Gauss's lemma the result is integral whenever ``f`` or ``g`` is monic.
    """
    return _to_int_poly(_frac_gcd(_frac(f), _frac(g)))


def squarefree_decomposition(f: IntPolynomial) -> list[tuple[IntPolynomial, int]]:
    """Yun's algorithm: ``f = prod(g ** i)`` over the returned ``(g, i)``.

    ``f`` must be monic; each ``g`` is monic, squarefree and of positive degree.
    """
    if not f.is_monic():
        raise ValueError("squarefree decomposition needs a monic polynomial")
    if f.degree <= 0:
        return []
    ff = _frac(f)
    fp = _deriv(ff)
    a = _frac_gcd(ff, fp)
    b, _ = _frac_divmod(ff, a)
    c, _ = _frac_divmod(fp, a)
    d = _sub(c, _deriv(b))
    out = []
    i = 1
    while len(b) > 1:
        g = _frac_gcd(b, d) if d else list(b)
        if len(g) > 1:
            out.append((_to_int_poly(g), i))
        b, _ = _frac_divmod(b, g)
        c, _ = _frac_divmod(d, g) if d else ([], [])
        d = _sub(c, _deriv(b))
        i += 1
    return out


def squarefree_part(f: IntPolynomial) -> IntPolynomial:
    """``f / gcd(f, f')`` for monic ``f``."""
    return f.exact_div(monic_gcd(f, f.derivative())) if f.degree > 0 else f
