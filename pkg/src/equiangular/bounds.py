"""The relative bound, its multiplicity strengthening and the trace-of-cube test."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from math import floor

from .errors import PreconditionError
from .spectra import IntEig, Spectrum


@dataclass(frozen=True)
class RelativeBoundResult:
    d: int
    lambda0: int
    bound: Fraction
    floor_bound: int
    tight_form: bool  # lambda0^2 >= d + 2
    equality_spectrum: Spectrum | None


def relative_bound(d: int, lambda0: int) -> RelativeBoundResult:
    """``n <= d (lambda0^2 - 1) / (lambda0^2 - d)`` as an exact rational."""
    if lambda0 >= 0:
        raise PreconditionError("lambda0 must be negative")
    if d < 1:
        raise PreconditionError("d must be positive")
    sq = lambda0 * lambda0
    if sq <= d:
        raise PreconditionError(f"lambda0^2 = {sq} <= d = {d}: the bound is vacuous")
    bound = Fraction(d * (sq - 1), sq - d)
    eq = None
    if bound.denominator == 1:
        n = int(bound)
        other = Fraction(-lambda0 * (n - d), d)
        if other.denominator == 1 and n > d:
            eq = Spectrum.of((lambda0, n - d), (int(other), d))
    return RelativeBoundResult(d, lambda0, bound, floor(bound), sq >= d + 2, eq)


def _sum_sq_dev(d: int, lambda0: int, n: int, mu: int) -> int:
    """``sum (lambda_i - mu)^2`` over the d eigenvalues other than lambda0, from the trace identities."""
    return n * (n - 1) - (n - d) * lambda0 * lambda0 + 2 * mu * lambda0 * (n - d) + d * mu * mu


def _gap_rhs_via_t(d: int, lambda0: int, n: int, mu: int) -> Fraction:
    sq = lambda0 * lambda0
    t = Fraction(d * (sq - 1), sq - d) - n
    return (t * (t * (sq - d) - d * (sq - 1)) - (d * mu + lambda0 * (n - d)) ** 2 + d * d) / d


def equality_spectrum(d: int, lambda0: int, n: int, mu: int, m: int) -> Spectrum | None:
    """``{lambda0^(n-d), (mu-1)^w, mu^m, (mu+1)^(d-m-w)}`` when w is a valid multiplicity."""
    twice_w = d * mu + lambda0 * (n - d) + d - m
    if twice_w % 2 or not 0 <= m <= d:
        return None
    w = twice_w // 2
    if not 0 <= w <= d - m:
        return None
    return Spectrum.of((lambda0, n - d), (mu - 1, w), (mu, m), (mu + 1, d - m - w))


@dataclass(frozen=True)
class RelativeBoundGap:
    d: int
    lambda0: int
    n: int
    t: Fraction
    mu: int
    rhs: int
    equality_spectrum: Spectrum | None


def multiplicity_lower_bound(d: int, lambda0: int, n: int, mu: int) -> RelativeBoundGap:
    """Lower bound on ``dim ker(S - mu I)`` for an order-n Seidel matrix with smallest eigenvalue lambda0."""
    sq = lambda0 * lambda0
    if mu == lambda0:
        raise PreconditionError("mu must differ from lambda0")
    if sq < d + 2:
        raise PreconditionError(f"need lambda0^2 >= d + 2, got {sq} and d = {d}")
    t = Fraction(d * (sq - 1), sq - d) - n
    if t < 0:
        raise PreconditionError(f"n = {n} exceeds the relative bound")
    if n <= d:
        raise PreconditionError("n must exceed d")
    rhs = d - _sum_sq_dev(d, lambda0, n, mu)
    assert _gap_rhs_via_t(d, lambda0, n, mu) == rhs
    return RelativeBoundGap(d, lambda0, n, t, mu, rhs, equality_spectrum(d, lambda0, n, mu, rhs))


def closest_even(x: Fraction) -> tuple[int, bool]:
    """Closest even integer to x and whether there was a tie (then the one nearer zero)."""
    lo = 2 * floor(x / 2)
    hi = lo + 2
    dlo, dhi = x - lo, hi - x
    if dlo < dhi:
        return lo, False
    if dhi < dlo:
        return hi, False
    return (lo if abs(lo) < abs(hi) else hi), True


@dataclass(frozen=True)
class ForcedSpectrum:
    d: int
    lambda0: int
    n: int
    mu: int
    mu_tie: bool
    m: int
    w: int
    rhs: int
    spectrum: Spectrum
    source: str  # "Cor. 6.3", "Cor. 6.4" or "Thm. 6.2"


def forced_spectrum_even_mu(d: int, lambda0: int) -> ForcedSpectrum | None:
    """Spectrum forced at the floor of the relative bound by an even probe mu, or None.

    An even mu has multiplicity at most 1 (n odd) or 0 (n even), so a lower bound of
    exactly that size pins the spectrum down. A lower bound equal to d pins it down
    with every other eigenvalue equal to mu.
    """
    rb = relative_bound(d, lambda0)
    n = rb.floor_bound
    if n <= d:
        return None
    mu, tie = closest_even(Fraction(-lambda0 * (n - d), d))
    rhs = d - _sum_sq_dev(d, lambda0, n, mu)
    if rhs == d:
        m, source = d, "Thm. 6.2"
    elif n % 2 == 1 and rhs == 1:
        m, source = 1, "Cor. 6.3"
    elif n % 2 == 0 and rhs == 0:
        m, source = 0, "Cor. 6.4"
    else:
        return None
    spec = equality_spectrum(d, lambda0, n, mu, m)
    if spec is None:
        return None
    w = (d * mu + lambda0 * (n - d) + d - m) // 2
    return ForcedSpectrum(d, lambda0, n, mu, tie, m, w, rhs, spec, source)


def diag_lower_bound(n: int, c2: int, c1: int, c0: int, sigma: int) -> int:
    """Lower bound on each diagonal entry of ``sigma S^3`` when ``sigma p(S)`` is PSD.

    ``p(x) = x^3 - c2 x^2 + c1 x - c0``; c1 does not enter since S has zero diagonal.
    """
    if sigma not in (1, -1):
        raise PreconditionError("sigma must be +1 or -1")
    return sigma * ((n - 1) * c2 + c0)


@dataclass(frozen=True)
class TraceCubeResult:
    theta0: int
    sigma: int
    lhs: int
    rhs: int
    cube_sum: int
    parity_value: int
    holds: bool


def trace_cube_test(spec: Spectrum) -> TraceCubeResult:
    """Trace bound for an odd-order spectrum ``{theta0^1, theta1^m1, theta2^m2, theta3^m3}``, theta0 even."""
    if spec.has_residual or any(not isinstance(e, IntEig) for e, _ in spec.entries):
        raise PreconditionError("spectrum must be integral")
    if len(spec.entries) != 4:
        raise PreconditionError("need exactly four distinct eigenvalues")
    n = spec.n
    if n % 2 == 0:
        raise PreconditionError("n must be odd")
    evens = [(e.value, m) for e, m in spec.entries if e.value % 2 == 0]
    if len(evens) != 1 or evens[0][1] != 1:
        raise PreconditionError("need exactly one even eigenvalue, and it must be simple")
    theta0 = evens[0][0]
    rest = [(e.value, m) for e, m in spec.entries if e.value != theta0]
    prod = 1
    for th, _ in rest:
        prod *= theta0 - th
    sigma = 1 if prod > 0 else -1
    e1 = sum(th for th, _ in rest)
    e3 = rest[0][0] * rest[1][0] * rest[2][0]
    cube_sum = sum(m * th**3 for th, m in rest)
    lhs = sigma * theta0**3
    rhs = n + sigma * (n * (n - 1) * e1 + n * e3 - cube_sum)
    parity_value = (n - 1) * e1 + e3
    return TraceCubeResult(theta0, sigma, lhs, rhs, cube_sum, parity_value, lhs >= rhs)


def two_eigenvalue_deletion(spec: Spectrum) -> Spectrum | None:
    """Spectrum of any order-(n-1) principal submatrix of a two-eigenvalue Seidel matrix.

    Interlacing leaves ``{lambda^(a-1), x, mu^(b-1)}`` and the trace fixes ``x = lambda + mu``.
    Returns None unless the spectrum has exactly two integer eigenvalues.
    """
    if spec.has_residual or len(spec.entries) != 2:
        return None
    (lam, a), (mu, b) = spec.entries
    if not (isinstance(lam, IntEig) and isinstance(mu, IntEig)):
        return None
    return Spectrum.of((lam.value, a - 1), (lam.value + mu.value, 1), (mu.value, b - 1))


# ---------------------------------------------------------------- reference data


@dataclass(frozen=True)
class KnownBound:
    d: str
    lower: int
    upper: int


def load_known_bounds() -> list[KnownBound]:
    """Literature values of the maximum number of equiangular lines in dimensions 2..23."""
    text = resources.files("equiangular.data").joinpath("known_bounds.txt").read_text()
    out = []
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        d, lo, hi = line.split()
        out.append(KnownBound(d, int(lo), int(hi)))
    return out


def n18_upper_bound() -> int:
    """The computed upper bound for d = 18: the floor of the relative bound minus one, if refuted."""
    forced = forced_spectrum_even_mu(18, -5)
    if forced is None:
        raise AssertionError("the d = 18 spectrum is not forced")
    if trace_cube_test(forced.spectrum).holds:
        return forced.n
    return forced.n - 1
