"""Regular graphs in switching classes.

A switching ``x`` (a +-1 vector) makes the underlying graph regular exactly
when ``S x = theta x`` for an integer eigenvalue ``theta``; the valency is
then ``(n - 1 - theta) / 2``. The searches below enumerate +-1 vectors in an
eigenspace directly, so their cost depends on the multiplicity of theta and
not on ``2**(n-1)``.
"""
from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt, lcm
from typing import Sequence

from . import intmatrix as im
from .core import Graph, SeidelMatrix, SwitchingVector, graph_from_seidel, switch
from .errors import BudgetExceeded, NotApplicable, PreconditionError
from .spectra import IntEig, Spectrum, SurdPair, char_poly, spectrum, spectrum_of_matrix

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class RegularWitness:
    switching: SwitchingVector
    valency: int
    theta: int
    graph_spectrum: Spectrum
    disconnected: bool = False

    def record(self) -> dict:
        return {
            "switching": str(self.switching),
            "valency": self.valency,
            "theta": self.theta,
            "graph_spectrum": self.graph_spectrum.render(),
            "disconnected": self.disconnected,
        }


@dataclass(frozen=True)
class ThreeWalkVerdict:
    theta: int
    k: int
    walk_count_times_16: int
    feasible: bool

    @property
    def walk_count(self) -> int | None:
        return self.walk_count_times_16 // 16 if self.feasible else None


# ---------------------------------------------------------------- +-1 eigenvectors


@dataclass(frozen=True)
class _EigenSystem:
    """``S x = theta x`` solved for pivot variables: ``scale[r] * x[pivot[r]] = sum_j coef[r][j] * x[free[j]]``."""

    n: int
    pivots: tuple[int, ...]
    free: tuple[int, ...]
    scale: tuple[int, ...]
    coef: tuple[tuple[int, ...], ...]


def _eigen_system(s: SeidelMatrix, theta: int) -> _EigenSystem:
    rows, pivots = im.rref(im.add_diagonal(s.entries, -theta))
    free = tuple(j for j in range(s.n) if j not in set(pivots))
    scale, coef = [], []
    for row in rows:
        vals = [-row[f] for f in free]
        den = lcm(*(v.denominator for v in vals)) if vals else 1
        scale.append(den)
        coef.append(tuple(int(v * den) for v in vals))
    return _EigenSystem(s.n, tuple(pivots), free, tuple(scale), tuple(coef))


def _search(system: _EigenSystem, prefix: Sequence[int], budget: int, first_only: bool) -> tuple[list[tuple[int, ...]], int]:
    """DFS over the free variables after ``prefix``; returns solutions and nodes used."""
    m = len(system.free)
    nrows = len(system.pivots)
    coef = system.coef
    scale = system.scale
    by_col = [[(r, coef[r][j]) for r in range(nrows) if coef[r][j]] for j in range(m)]
    partial = [0] * nrows
    remaining = [sum(abs(c) for c in coef[r]) for r in range(nrows)]
    xs = [0] * m
    solutions: list[tuple[int, ...]] = []
    nodes = 0

    def ok(r: int) -> bool:
        lo, hi = partial[r] - remaining[r], partial[r] + remaining[r]
        return lo <= scale[r] <= hi or lo <= -scale[r] <= hi

    def assign(j: int, v: int) -> bool:
        good = True
        for r, c in by_col[j]:
            partial[r] += c * v
            remaining[r] -= abs(c)
            if good and not ok(r):
                good = False
        return good

    def undo(j: int, v: int) -> None:
        for r, c in by_col[j]:
            partial[r] -= c * v
            remaining[r] += abs(c)

    def emit() -> None:
        x = [0] * system.n
        for j, f in enumerate(system.free):
            x[f] = xs[j]
        for r, p in enumerate(system.pivots):
            x[p] = partial[r] // scale[r]
        if x[0] < 0:
            x = [-v for v in x]
        solutions.append(tuple(x))

    # a row with no free coefficients forces its pivot to 0 and is never revisited
    if not all(ok(r) for r in range(nrows)):
        return [], 0
    for j, v in enumerate(prefix):
        xs[j] = v
        if not assign(j, v):
            return [], 0

    def dfs(j: int) -> bool:
        nonlocal nodes
        if j == m:
            emit()
            return first_only
        for v in (1, -1):
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(f"search exceeded {budget} nodes", nodes)
            xs[j] = v
            if assign(j, v) and dfs(j + 1):
                undo(j, v)
                return True
            undo(j, v)
        return False

    dfs(len(prefix))
    return solutions, nodes


def _search_task(args):
    system, prefix, budget, first_only = args
    return _search(system, prefix, budget, first_only)


def _solutions(system: _EigenSystem, budget: int, first_only: bool, workers: int | None) -> list[tuple[int, ...]]:
    m = len(system.free)
    if m == 0:
        return []
    # the first free variable is fixed to +1: solutions come in +- pairs
    split = 0
    if workers and workers > 1:
        split = min(m - 1, max(0, (workers - 1).bit_length() + 2))
    if split == 0:
        sols, _ = _search(system, (1,), budget, first_only)
        return sorted(set(sols), key=_sign_key)
    prefixes = []
    for mask in range(1 << split):
        prefixes.append((1,) + tuple(-1 if (mask >> b) & 1 else 1 for b in range(split)))
    prefixes.sort(key=_sign_key)
    with ProcessPoolExecutor(max_workers=workers) as pool:
        results = list(pool.map(_search_task, [(system, p, budget, first_only) for p in prefixes]))
    total = sum(nodes for _, nodes in results)
    if total > budget:
        raise BudgetExceeded(f"search exceeded {budget} nodes", total)
    sols = sorted({x for found, _ in results for x in found}, key=_sign_key)
    return sols[:1] if first_only else sols


def _sign_key(x: Sequence[int]) -> tuple[int, ...]:
    return tuple(0 if v > 0 else 1 for v in x)


def _check_theta(s: SeidelMatrix, theta) -> int:
    if isinstance(theta, SurdPair):
        raise NotApplicable("an irrational eigenvalue never has a regular eigenspace")
    if isinstance(theta, IntEig):
        theta = theta.value
    if not isinstance(theta, int):
        raise NotApplicable(f"eigenvalue {theta!r} is not an integer")
    if char_poly(s.entries)(theta) != 0:
        raise PreconditionError(f"{theta} is not an eigenvalue")
    return theta


def regular_eigenspace_search(
    s: SeidelMatrix, theta: int | IntEig | SurdPair, budget: int = DEFAULT_BUDGET, workers: int | None = None
) -> SwitchingVector | None:
    """A +-1 vector x with S x = theta x (normalised so x[0] = +1), or None."""
    theta = _check_theta(s, theta)
    sols = _solutions(_eigen_system(s, theta), budget, True, workers)
    return SwitchingVector(sols[0]) if sols else None


def all_regular_eigenvectors(
    s: SeidelMatrix, theta: int, budget: int = DEFAULT_BUDGET, workers: int | None = None
) -> list[SwitchingVector]:
    theta = _check_theta(s, theta)
    return [SwitchingVector(x) for x in _solutions(_eigen_system(s, theta), budget, False, workers)]


def graph_spectrum(g: Graph) -> Spectrum:
    return spectrum_of_matrix(g.adjacency())


def find_regular_graphs(
    s: SeidelMatrix, budget: int = DEFAULT_BUDGET, workers: int | None = None
) -> list[RegularWitness]:
    """Every switching (first sign +1) whose underlying graph is regular, in lexicographic sign order."""
    n = s.n
    if n == 1:
        return [RegularWitness(SwitchingVector((1,)), 0, 0, Spectrum.of((0, 1)))]
    spec = spectrum(s)
    found: list[RegularWitness] = []
    for theta in spec.integer_eigenvalues():
        if (n - 1 - theta) % 2:
            continue
        k = (n - 1 - theta) // 2
        for v in all_regular_eigenvectors(s, theta, budget, workers):
            g = graph_from_seidel(s, v)
            found.append(RegularWitness(v, k, theta, graph_spectrum(g), not g.is_connected()))
    found.sort(key=lambda w: _sign_key(w.switching.signs))
    return found


def default_workers() -> int:
    return os.cpu_count() or 1


# ---------------------------------------------------------------- spectrum maps


def _largest_root_at_most(spec: Spectrum, k: int) -> bool:
    for e, _ in spec.entries:
        if isinstance(e, IntEig):
            if e.value > k:
                return False
        elif e.root_float(1) > k:
            # exact: (-p + sqrt(D))/2 > k  <=>  sqrt(D) > 2k + p
            rhs = 2 * k + e.p
            if rhs < 0 or e.discriminant > rhs * rhs:
                return False
    return True


def seidel_spectrum_of_regular_graph(graph_spec: Spectrum, n: int, k: int) -> Spectrum:
    """Seidel spectrum of ``J - I - 2A`` for a k-regular graph with adjacency spectrum ``graph_spec``."""
    if graph_spec.has_residual:
        raise NotApplicable("graph spectrum has an unsplit factor")
    if graph_spec.n != n:
        raise PreconditionError(f"graph spectrum has {graph_spec.n} eigenvalues, expected {n}")
    mk = graph_spec.multiplicity(k)
    if mk == 0:
        raise PreconditionError(f"valency {k} is not an eigenvalue of the graph")
    if not _largest_root_at_most(graph_spec, k):
        raise PreconditionError(f"an eigenvalue exceeds the valency {k}")
    entries: list[tuple] = [(IntEig(n - 1 - 2 * k), 1)]
    for e, m in graph_spec.entries:
        if e == IntEig(k):
            m -= 1  # extra copies belong to other components and map like any other eigenvalue
        if m:
            entries.append((e.affine(Fraction(-1), Fraction(-2)), m))
    return Spectrum(tuple(entries))


def regular_graph_spectrum_from_seidel(seidel_spec: Spectrum, theta0: int) -> Spectrum:
    """Adjacency spectrum of the regular graph whose all-ones vector lies in the theta0-eigenspace."""
    if seidel_spec.has_residual:
        raise NotApplicable("Seidel spectrum has an unsplit factor")
    n = seidel_spec.n
    m0 = seidel_spec.multiplicity(theta0)
    if m0 == 0:
        raise PreconditionError(f"{theta0} is not an eigenvalue")
    if not parity_conditions(n, theta0):
        raise PreconditionError(f"{theta0} fails the regular-eigenspace parity conditions for n = {n}")
    half = Fraction(-1, 2)
    entries: list[tuple] = [(IntEig((n - 1 - theta0) // 2), 1)]
    for e, m in seidel_spec.entries:
        if e == IntEig(theta0):
            m -= 1
        if not m:
            continue
        try:
            entries.append((e.affine(half, half), m))
        except ValueError:
            raise PreconditionError(f"eigenvalue {e} maps to a non-integral graph eigenvalue") from None
    return Spectrum(tuple(entries))


def parity_conditions(n: int, nu: int) -> bool:
    """Necessary congruences for a regular nu-eigenspace."""
    if (nu - (n - 1)) % 2:
        return False
    if n % 2 and (nu - (n - 1)) % 4:
        return False
    return True


def srg_correspondence(seidel_spec: Spectrum) -> Spectrum:
    """Spectrum of the strongly regular graph attached to ``{lambda^a, mu^b, nu^1}``."""
    if seidel_spec.has_residual or len(seidel_spec.entries) != 3:
        raise PreconditionError("need exactly three distinct eigenvalues")
    simple = [e for e, m in seidel_spec.entries if m == 1 and isinstance(e, IntEig)]
    if not simple:
        raise PreconditionError("no simple integer eigenvalue")
    # with two simple eigenvalues either choice is valid; take the largest, which gives the valency
    nu = max(e.value for e in simple)
    return regular_graph_spectrum_from_seidel(seidel_spec, nu)


def irrational_three_ev_form(n: int) -> Spectrum | None:
    """The only admissible odd-order three-eigenvalue spectrum with an irrational eigenvalue.

    Returns None when n is a perfect square, where the formula is rational and the
    statement is vacuous.
    """
    if n % 2 == 0:
        raise PreconditionError("n must be odd")
    if n < 3:
        raise PreconditionError("n must be at least 3")
    if isqrt(n) ** 2 == n:
        return None
    return Spectrum(((IntEig(0), 1), (SurdPair(0, -n), (n - 1) // 2)))


# ---------------------------------------------------------------- closed 3-walks


def three_walk_numerator(n: int, k: int, e1: int, e3: int) -> int:
    return (n - 1) * (n - 2) - 6 * k * (n - 2 * k) - e1 * (n - 1) - e3


def three_walk_condition(n: int, e1: int, e3: int, integer_eigenvalues: Sequence[int]) -> list[ThreeWalkVerdict]:
    """One verdict per integer eigenvalue theta with theta = n - 1 (mod 2)."""
    if not all(isinstance(v, int) for v in (e1, e3)):
        raise NotApplicable("symmetric functions must be integers")
    out = []
    for theta in sorted(integer_eigenvalues):
        if (n - 1 - theta) % 2:
            continue
        k = (n - 1 - theta) // 2
        if not 0 <= k <= n - 1:
            out.append(ThreeWalkVerdict(theta, k, three_walk_numerator(n, k, e1, e3), False))
            continue
        num = three_walk_numerator(n, k, e1, e3)
        out.append(ThreeWalkVerdict(theta, k, num, num >= 0 and num % 16 == 0))
    return out


def three_eig_symmetric_functions(spec: Spectrum) -> tuple[int, int]:
    """(e1, e3) = (sum, product) of the three distinct eigenvalues."""
    if spec.has_residual or spec.distinct_count() != 3:
        raise NotApplicable("need exactly three distinct eigenvalues")
    e1, e3 = 0, 1
    for e, _ in spec.entries:
        if isinstance(e, IntEig):
            e1 += e.value
            e3 *= e.value
        else:
            e1 += e.e1
            e3 *= e.e2
    return e1, e3


def three_walk_from_spectrum(spec: Spectrum) -> list[ThreeWalkVerdict]:
    e1, e3 = three_eig_symmetric_functions(spec)
    return three_walk_condition(spec.n, e1, e3, spec.integer_eigenvalues())


def witness_walk_numerator(s: SeidelMatrix, w: RegularWitness, vertex: int = 0) -> int:
    """Numerator computed from the switched matrix's cube instead of the spectrum."""
    t = switch(s, w.switching).entries
    cube_diag = im.matmul(im.matmul(t, t), t)[vertex][vertex]
    n, k = s.n, w.valency
    return (n - 1) * (n - 2) - 6 * k * (n - 2 * k) - cube_diag
