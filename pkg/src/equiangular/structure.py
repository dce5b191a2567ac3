"""The positive semidefinite matrix M_S(lambda, mu) and structure results for it.

For a Seidel matrix with three distinct eigenvalues lambda, mu, nu, the
matrix ``sigma (S - lambda I)(S - mu I)`` is PSD with rank mult(nu) and
constant diagonal ``|n - 1 + lambda mu|``. Small diagonal values force a
rigid block structure, which in turn decides whether the nu-eigenspace
contains a +-1 vector.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from sympy import isprime

from . import intmatrix as im
from .core import SeidelMatrix, SwitchingVector
from .errors import NotApplicable, NotPSDError, PreconditionError
from .regular import regular_eigenspace_search
from .spectra import Eigenvalue, IntEig, Spectrum, SurdPair, is_psd, spectrum

# (q, c) with (q + 8)(9 - c) = 72 that survive; c = 8 would need an order-64 Seidel
# matrix with spectrum {-3^56, 21^8}, which breaks the absolute bound 64 <= 8*9/2.
SIX_DIAG_PAIRS = {1: 1, 3: 4, 5: 10, 6: 16, 7: 28}

SMALL_UNIQUE_SPECTRA = {
    4: Spectrum.of((-3, 1), (1, 3)),
    10: Spectrum.of((-3, 5), (3, 5)),
    16: Spectrum.of((-3, 10), (5, 6)),
    28: Spectrum.of((-3, 21), (9, 7)),
}


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class SpectralPair:
    """A choice of (lambda, mu) with integral sum and product, and the remaining eigenvalue nu."""

    pair: tuple[Eigenvalue, ...]
    e1: int
    e2: int
    nu: Eigenvalue | None
    c: int  # multiplicity of nu (rank of M)
    sigma: int
    n: int

    @property
    def diag_value(self) -> int:
        return abs(self.n - 1 + self.e2)

    def label(self) -> str:
        if len(self.pair) == 1:
            return str(self.pair[0])
        return f"({self.pair[0]},{self.pair[1]})"


def _rho(nu: Eigenvalue, e1: int, e2: int) -> int:
    """sgn((nu - lambda)(nu - mu)) for integer nu."""
    if not isinstance(nu, IntEig):
        raise NotApplicable("the third eigenvalue must be an integer when lambda mu is integral")
    v = nu.value
    return _sign(v * v - e1 * v + e2)


def spectral_pairs(spec: Spectrum) -> list[SpectralPair]:
    """Every (lambda, mu) choice with integral symmetric functions, for a three-eigenvalue spectrum."""
    if spec.has_residual:
        raise NotApplicable("spectrum has an unsplit factor")
    n = spec.n
    ints = [(e, m) for e, m in spec.entries if isinstance(e, IntEig)]
    surds = [(e, m) for e, m in spec.entries if isinstance(e, SurdPair)]
    out: list[SpectralPair] = []
    if spec.distinct_count() != 3:
        raise NotApplicable("need exactly three distinct eigenvalues")
    if surds:
        (sp, _), = surds
        (nu, c), = ints
        out.append(SpectralPair((sp,), sp.e1, sp.e2, nu, c, _rho(nu, sp.e1, sp.e2), n))
        return out
    for i in range(3):
        nu, c = ints[i]
        lam, mu = (ints[j][0] for j in range(3) if j != i)
        e1, e2 = lam.value + mu.value, lam.value * mu.value
        out.append(SpectralPair((lam, mu), e1, e2, nu, c, _rho(nu, e1, e2), n))
    return out


def spectral_pair_for(spec: Spectrum, pair: Sequence[Eigenvalue | int]) -> SpectralPair:
    want = {IntEig(e) if isinstance(e, int) else e for e in pair}
    for sp in spectral_pairs(spec):
        if set(sp.pair) == want:
            return sp
    raise PreconditionError(f"{pair} is not a pair of distinct eigenvalues with integral product")


@dataclass(frozen=True)
class MPair:
    pair: tuple[Eigenvalue, ...]
    e1: int
    e2: int
    sigma: int
    matrix: im.Matrix
    diag_value: int
    rank: int
    nu: Eigenvalue | None = None
    degenerate: bool = False

    @property
    def n(self) -> int:
        return len(self.matrix)


def _m_matrix(s: SeidelMatrix, e1: int, e2: int, sigma: int) -> im.Matrix:
    sq = im.matmul(s.entries, s.entries)
    n = s.n
    return tuple(
        tuple(sigma * (sq[i][j] - e1 * s.entries[i][j] + (e2 if i == j else 0)) for j in range(n)) for i in range(n)
    )


def build_M(s: SeidelMatrix, pair: Sequence[Eigenvalue | int], check_psd: bool = True) -> MPair:
    """``sigma (S^2 - (lambda + mu) S + lambda mu I)`` with its invariants verified.

    ``pair`` is two integer eigenvalues or a single SurdPair. When the pair exhausts
    the spectrum the matrix is zero and the result is flagged degenerate.
    """
    spec = spectrum(s)
    members = [IntEig(e) if isinstance(e, int) else e for e in pair]
    for e in members:
        if spec.multiplicity(e) == 0:
            raise PreconditionError(f"{e} is not an eigenvalue")
    if len(members) == 1 and isinstance(members[0], SurdPair):
        e1, e2 = members[0].e1, members[0].e2
    elif len(members) == 2 and all(isinstance(e, IntEig) for e in members) and members[0] != members[1]:
        e1, e2 = members[0].value + members[1].value, members[0].value * members[1].value
    else:
        raise PreconditionError("pair must be two distinct integer eigenvalues or one conjugate pair")
    others = [e for e, _ in spec.entries if e not in members]
    n = s.n
    if not others:
        m = _m_matrix(s, e1, e2, 1)
        if any(any(row) for row in m):
            raise AssertionError("minimal polynomial does not annihilate S")
        return MPair(tuple(members), e1, e2, 1, m, abs(n - 1 + e2), 0, None, True)
    if len(others) != 1 or spec.has_residual:
        raise PreconditionError("S must have exactly three distinct eigenvalues")
    nu = others[0]
    sigma = _rho(nu, e1, e2)
    m = _m_matrix(s, e1, e2, sigma)
    d = abs(n - 1 + e2)
    if any(m[i][i] != d for i in range(n)):
        raise AssertionError("diagonal of M is not constant")
    if any(abs(x) > d for row in m for x in row):
        raise NotPSDError("an off-diagonal entry exceeds the diagonal, so M is not PSD")
    if check_psd and not is_psd(m):
        raise NotPSDError("M is not positive semidefinite")
    return MPair(tuple(members), e1, e2, sigma, m, d, spec.multiplicity(nu) * nu.degree, nu, False)


def mod4_M_check(m: MPair, n: int) -> bool:
    """True iff some switching of M is entrywise congruent to diag_value * J mod 4."""
    if n % 2:
        raise NotApplicable("odd order: M is switching equivalent to a multiple of J outright")
    d = m.diag_value % 4
    mat = m.matrix
    size = len(mat)
    if d in (0, 2):
        # -x = x (mod 4) for even x, so switching cannot matter
        return all(x % 4 == d for row in mat for x in row)
    signs = [1] * size
    for j in range(1, size):
        r = mat[0][j] % 4
        if r == d:
            signs[j] = 1
        elif r == (-d) % 4:
            signs[j] = -1
        else:
            return False
    return all((mat[i][j] - signs[i] * signs[j] * d) % 4 == 0 for i in range(size) for j in range(size))


# ---------------------------------------------------------------- PSD structure


def _constant_diagonal(m: im.MatrixLike) -> int:
    if not m:
        raise PreconditionError("empty matrix")
    d = m[0][0]
    if any(m[i][i] != d for i in range(len(m))):
        raise PreconditionError("diagonal is not constant")
    if d <= 0:
        raise PreconditionError("diagonal must be positive")
    return d


def group_repeated_rows(m: im.MatrixLike) -> list[tuple[tuple[int, int], ...]]:
    """Classes of rows joined by entries of absolute value d, each as ((index, sign), ...).

    The sign is relative to the first index of the class. In a PSD matrix with
    constant diagonal d such rows are equal up to that sign; a violation means
    the input is not PSD.
    """
    d = _constant_diagonal(m)
    n = len(m)
    seen = [False] * n
    classes = []
    for i in range(n):
        if seen[i]:
            continue
        members = []
        for j in range(n):
            if abs(m[i][j]) == d:
                if seen[j]:
                    raise NotPSDError(f"rows {i} and {j} are tied by +-{d} but fall in different classes; not PSD")
                sgn = _sign(m[i][j])
                if any(m[j][t] != sgn * m[i][t] for t in range(n)):
                    raise NotPSDError(f"rows {i} and {j} differ although |M[{i}][{j}]| = {d}; not PSD")
                members.append((j, sgn))
        for j, _ in members:
            seen[j] = True
        classes.append(tuple(members))
    return classes


@dataclass(frozen=True)
class TensorStructure:
    q: int
    k: int
    inner: im.Matrix
    switching: SwitchingVector
    blocks: tuple[tuple[int, ...], ...]

    def reconstruct(self) -> im.Matrix:
        """The original matrix, rebuilt from ``inner``, the blocks and the switching."""
        n = self.q * self.k
        where = {}
        for b, block in enumerate(self.blocks):
            for i in block:
                where[i] = b
        v = self.switching.signs
        return tuple(tuple(v[i] * v[j] * self.inner[where[i]][where[j]] for j in range(n)) for i in range(n))


def tensor_detect(m: im.MatrixLike) -> TensorStructure | None:
    """Write M as a switching of ``N (x) J_k`` up to ordering, or None if row counts differ."""
    classes = group_repeated_rows(m)
    sizes = {len(c) for c in classes}
    if len(sizes) != 1:
        return None
    k = sizes.pop()
    signs = [0] * len(m)
    for cls in classes:
        for j, sgn in cls:
            signs[j] = sgn
    leaders = [cls[0][0] for cls in classes]
    inner = tuple(tuple(m[a][b] * signs[a] * signs[b] for b in leaders) for a in leaders)
    blocks = tuple(tuple(j for j, _ in cls) for cls in classes)
    return TensorStructure(len(classes), k, inner, SwitchingVector(tuple(signs)), blocks)


def two_valued_entry_count(m: im.MatrixLike, lam: int, mu: int, a: int, b: int) -> tuple[int, ...]:
    """Per-row number of entries with square b^2, by the two-eigenvalue formula (checked by counting)."""
    a, b = abs(a), abs(b)
    if a == b:
        raise PreconditionError("a and b must differ in absolute value")
    if lam == mu:
        raise PreconditionError("lambda and mu must be distinct")
    n = len(m)
    if any(abs(x) not in (a, b) for row in m for x in row):
        raise PreconditionError(f"entries must lie in {{+-{a}, +-{b}}}")
    sq = im.matmul(m, m)
    lhs_ok = all(
        sq[i][j] == (lam + mu) * m[i][j] - (lam * mu if i == j else 0) for i in range(n) for j in range(n)
    )
    if not lhs_ok:
        raise PreconditionError(f"M does not satisfy (M - {lam}I)(M - {mu}I) = 0")
    counts = []
    for i in range(n):
        value = Fraction((lam + mu) * m[i][i] - n * a * a - lam * mu, b * b - a * a)
        direct = sum(1 for x in m[i] if abs(x) == b)
        assert value == direct, f"row {i}: formula {value} but {direct} entries counted"
        counts.append(direct)
    return tuple(counts)


@dataclass(frozen=True)
class Rank2Structure:
    switching: SwitchingVector
    rows: tuple[tuple[int, ...], ...]
    vacuous: bool = False


def rank2_prime_structure(m: im.MatrixLike, p: int) -> Rank2Structure:
    """Switch a rank-2 PSD matrix with prime diagonal p = 3 (mod 4) to two distinct rows."""
    if not (isprime(p) and p % 4 == 3):
        raise PreconditionError(f"{p} is not a prime congruent to 3 mod 4")
    if _constant_diagonal(m) != p:
        raise PreconditionError(f"diagonal must be {p}")
    if not im.is_symmetric(m) or not is_psd(m):
        raise PreconditionError("matrix must be symmetric PSD")
    r = im.rank(m)
    if r > 2:
        raise PreconditionError(f"rank is {r}, not 2")
    classes = group_repeated_rows(m)
    signs = [0] * len(m)
    for cls in classes:
        for j, s in cls:
            signs[j] = s
    rows = tuple(tuple(j for j, _ in cls) for cls in classes)
    if r < 2:
        return Rank2Structure(SwitchingVector(tuple(signs)), rows, vacuous=True)
    assert len(rows) == 2, "a rank-2 PSD matrix with this diagonal has exactly two row classes"
    return Rank2Structure(SwitchingVector(tuple(signs)), rows)


# ---------------------------------------------------------------- diagonal 6


@dataclass(frozen=True)
class SixDiagResult:
    c: int
    q: int | None
    divisible: bool
    feasible: bool
    reason: str
    inner_seidel: SeidelMatrix | None = None

    def inner_spectrum(self) -> Spectrum | None:
        if self.q is None:
            return None
        return Spectrum.of((-3, self.q - self.c), ((self.q - 1) // 3, self.c))


def six_diag_q(c: int) -> int | None:
    """q with (q + 8)(9 - c) = 72 and (q, c) admissible, else None."""
    return SIX_DIAG_PAIRS.get(c)


def six_diag_analyze(n: int, c: int, m: MPair | None = None) -> SixDiagResult:
    """Diagonal-6 analysis from the order and rank, optionally checked against an explicit M."""
    if n % 2:
        raise PreconditionError("n must be even")
    if m is not None:
        if m.diag_value != 6:
            raise PreconditionError(f"diagonal value is {m.diag_value}, not 6")
        c = m.rank
    q = six_diag_q(c)
    if q is None:
        return SixDiagResult(c, None, False, False, f"multiplicity {c} is not in {{1,3,5,6,7}}")
    if n % q:
        return SixDiagResult(c, q, False, False, f"q = {q} does not divide n = {n}")
    inner = None
    if m is not None:
        t = tensor_detect(m.matrix)
        if t is None or t.q != q:
            raise AssertionError("M does not have the forced tensor shape")
        tm = tuple(tuple(x // 2 - (3 if i == j else 0) for j, x in enumerate(row)) for i, row in enumerate(t.inner))
        inner = SeidelMatrix(tm)
        want = Spectrum.of((-3, q - c), ((q - 1) // 3, c))
        if spectrum(inner) != want:
            raise AssertionError(f"inner Seidel matrix has spectrum {spectrum(inner)}, expected {want}")
    return SixDiagResult(c, q, True, True, f"(q, c) = ({q}, {c}) and q divides n", inner)


# ---------------------------------------------------------------- classification


@dataclass(frozen=True)
class SmallDiagClass:
    D: int
    verdict: str  # "impossible", "infeasible", "regular" or "unknown"
    citation: str
    detail: str
    six: SixDiagResult | None = None


def _prime_3mod4_part(D: int) -> int | None:
    for r in (0, 1, 2):
        if D % (1 << r) == 0:
            p = D >> r
            if p > 1 and p % 4 == 3 and isprime(p):
                return p
    return None


def small_diag_classify(n: int, lambda_mu_product: int, c: int) -> SmallDiagClass:
    """Classify an even-order three-eigenvalue case by ``D = |n - 1 + lambda mu|`` and ``c = mult(nu)``."""
    if n % 2:
        raise NotApplicable("odd order: use the simple-eigenvalue correspondence instead")
    D = abs(n - 1 + lambda_mu_product)
    if D == 0:
        return SmallDiagClass(D, "impossible", "Thm. 5.13", "D = 0 forces at most two eigenvalues")
    if D % 2:
        return SmallDiagClass(D, "infeasible", "Lemma 2.2", "lambda mu must be odd for even n, so D is even")
    if D == 2:
        if c != 1:
            return SmallDiagClass(D, "infeasible", "Lemma 5.9", f"M = 2J has rank 1 but mult(nu) = {c}")
        return SmallDiagClass(D, "regular", "Lemma 5.9", "M = 2J")
    if D == 4:
        if n % c:
            return SmallDiagClass(D, "infeasible", "Lemma 5.9", f"M = 4 I_c (x) J_(n/c) needs c | n, c = {c}")
        return SmallDiagClass(D, "regular", "Lemma 5.9", f"M = 4 I_{c} (x) J_{n // c}")
    if D == 6:
        six = six_diag_analyze(n, c)
        if six.feasible and six.q == 28:
            # the inner order-28 matrix has no regular 9-eigenspace, so nothing is forced
            return SmallDiagClass(D, "unknown", "Lemma 5.11", six.reason + "; the inner 9-eigenspace is not regular", six)
        if six.feasible:
            return SmallDiagClass(D, "regular", "Lemma 5.11", six.reason, six)
        return SmallDiagClass(D, "infeasible", "Cor. 5.12", six.reason, six)
    p = _prime_3mod4_part(D)
    if p is not None and c == 2:
        return SmallDiagClass(D, "regular", "Thm. 5.7", f"D / {D // p} = {p} is a prime = 3 mod 4 and c = 2")
    return SmallDiagClass(D, "unknown", "", "no structure result applies")


# ---------------------------------------------------------------- the four small unique spectra


def unique_small_seidel_check(spec: Spectrum, witness: SeidelMatrix | None = None) -> dict:
    """Search each integer eigenspace of one of the four listed two-eigenvalue spectra for a +-1 vector.

    Each spectrum determines its switching class, so one witness settles it. Built-in
    witnesses are K4, the Petersen graph, the Clebsch graph and K(8,2). The result
    carries the per-eigenvalue outcome: for order 28 the 9-eigenspace is not regular,
    since the regular graph it would need, srg(28,9,0,4), breaks the absolute bound.
    """
    from .core import clebsch_graph, complete_graph, kneser_graph, seidel_from_graph

    match = [n for n, s in SMALL_UNIQUE_SPECTRA.items() if s == spec]
    if not match:
        raise PreconditionError(f"{spec} is not one of the four listed spectra")
    n = match[0]
    source = "witness"
    if witness is None:
        builders = {
            4: (lambda: complete_graph(4), "K4"),
            10: (lambda: kneser_graph(5), "Petersen graph"),
            16: (clebsch_graph, "Clebsch graph"),
            28: (lambda: kneser_graph(8), "K(8,2)"),
        }
        build, source = builders[n]
        witness = seidel_from_graph(build())
    if spectrum(witness) != spec:
        raise PreconditionError("witness does not have the stated spectrum")
    regular = {e: regular_eigenspace_search(witness, e) is not None for e in spec.integer_eigenvalues()}
    return {"ok": all(regular.values()), "source": source, "regular": regular}
