"""Switching classes of small Seidel matrices by explicit orbit minimisation.

Matrices are compared through their strict upper triangle read column by
column, ``(0,1), (0,2), (1,2), (0,3), ...``, with -1 ordered before +1. In
that order the minimum of a switching class always has row 0 equal to -1
everywhere, so only these "normalised" triangles need to be scanned.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import permutations, product
from math import factorial

from . import intmatrix as im
from .core import SeidelMatrix
from .errors import PreconditionError
from .regular import find_regular_graphs
from .spectra import Spectrum, spectrum

MAX_CANONICAL_ORDER = 8
MAX_ENUMERATION_ORDER = 8
DEFAULT_ENUMERATION_ORDER = 6


def column_order(n: int) -> list[tuple[int, int]]:
    return [(i, j) for j in range(n) for i in range(j)]


def encode(s: SeidelMatrix) -> tuple[int, ...]:
    """Column-major strict upper triangle with -1 -> 0 and +1 -> 1."""
    m = s.entries
    return tuple((m[i][j] + 1) >> 1 for i, j in column_order(s.n))


def decode(n: int, code: tuple[int, ...]) -> SeidelMatrix:
    m = [[0] * n for _ in range(n)]
    for (i, j), b in zip(column_order(n), code):
        m[i][j] = m[j][i] = 2 * b - 1
    return SeidelMatrix(m)


def upper_from_index(n: int, idx: int) -> tuple[int, ...]:
    """Row-major upper triangle whose entry k is -1 exactly when bit k of idx is set."""
    return tuple(-1 if idx >> k & 1 else 1 for k in range(n * (n - 1) // 2))


def _normalised_bits(m: im.Matrix, v: int) -> list[int]:
    """Adjacency bitsets of the matrix switched so that row v is all -1; bit u of row w set iff entry is +1."""
    n = len(m)
    sign = [-m[v][u] if u != v else 1 for u in range(n)]
    bits = [0] * n
    for a in range(n):
        b = 0
        for u in range(n):
            if u != a and sign[a] * m[a][u] * sign[u] == 1:
                b |= 1 << u
        bits[a] = b
    return bits


@dataclass(frozen=True)
class CanonicalClass:
    representative: SeidelMatrix
    code: tuple[int, ...]
    class_size: int | None
    spectrum: Spectrum

    @property
    def n(self) -> int:
        return self.representative.n

    def __eq__(self, other: object) -> bool:
        return isinstance(other, CanonicalClass) and self.code == other.code

    def __hash__(self) -> int:
        return hash(self.code)


def _canonical_code(s: SeidelMatrix) -> tuple[int, ...]:
    n = s.n
    if n <= 2:
        return (0,) * (n * (n - 1) // 2)
    m = s.entries
    # every state shares the same, currently minimal, code prefix
    states = []
    for v in range(n):
        bits = _normalised_bits(m, v)
        states.append((bits, (v,), ((1 << n) - 1) & ~(1 << v)))
    code: list[int] = []
    for depth in range(1, n):
        best = None
        nxt = []
        for bits, order, free in states:
            f = free
            while f:
                w = (f & -f).bit_length() - 1
                f &= f - 1
                col = 0
                for u in order:
                    col = col << 1 | (bits[u] >> w & 1)
                if best is None or col < best:
                    best, nxt = col, []
                if col == best:
                    nxt.append((bits, order + (w,), free & ~(1 << w)))
        code.extend((best >> (depth - 1 - i)) & 1 for i in range(depth))
        states = nxt
    return tuple(code)


def canonical_form(s: SeidelMatrix) -> CanonicalClass:
    """Minimal encoding over all switchings and relabelings of s."""
    if s.n > MAX_CANONICAL_ORDER:
        raise PreconditionError(f"canonical form is limited to n <= {MAX_CANONICAL_ORDER}")
    code = _canonical_code(s)
    rep = decode(s.n, code)
    return CanonicalClass(rep, code, None, spectrum(rep))


def switching_equivalent(a: SeidelMatrix, b: SeidelMatrix) -> bool:
    return a.n == b.n and _canonical_code(a) == _canonical_code(b)


# ---------------------------------------------------------------- enumeration


def _normalised_codes(n: int):
    """All column-major codes with row 0 equal to -1."""
    rest = [(i, j) for i, j in column_order(n) if i > 0]
    positions = {ij: k for k, ij in enumerate(column_order(n))}
    base = [0] * (n * (n - 1) // 2)
    for values in product((0, 1), repeat=len(rest)):
        for (ij, b) in zip(rest, values):
            base[positions[ij]] = b
        yield tuple(base)


def _orbit_codes(m: im.Matrix) -> set[tuple[int, ...]]:
    """Normalised codes of every relabeling of the switching class of m."""
    n = len(m)
    out = set()
    pairs = column_order(n)
    for v in range(n):
        bits = _normalised_bits(m, v)
        others = [u for u in range(n) if u != v]
        for perm in permutations(others):
            order = (v,) + perm
            out.add(tuple(bits[order[i]] >> order[j] & 1 for i, j in pairs))
    return out


def enumerate_classes(n: int, allow_large: bool = False) -> list[CanonicalClass]:
    """One CanonicalClass per switching class of order n, sorted by code."""
    if n < 1:
        raise PreconditionError("n must be positive")
    limit = MAX_ENUMERATION_ORDER if allow_large else DEFAULT_ENUMERATION_ORDER
    if n > limit:
        raise PreconditionError(f"enumeration is limited to n <= {limit}")
    if n == 1:
        s = SeidelMatrix([[0]])
        return [CanonicalClass(s, (), 1, spectrum(s))]
    seen: set[tuple[int, ...]] = set()
    out = []
    for code in _normalised_codes(n):
        if code in seen:
            continue
        orbit = _orbit_codes(decode(n, code).entries)
        seen |= orbit
        rep_code = min(orbit)
        rep = decode(n, rep_code)
        out.append(CanonicalClass(rep, rep_code, len(orbit) << (n - 1), spectrum(rep)))
    out.sort(key=lambda c: c.code)
    return out


def _partitions(n: int, largest: int | None = None):
    largest = n if largest is None else largest
    if n == 0:
        yield ()
        return
    for k in range(min(n, largest), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest


def _cycle_type_permutation(parts: tuple[int, ...]) -> tuple[int, ...]:
    perm, start = [], 0
    for k in parts:
        perm.extend(start + (i + 1) % k for i in range(k))
        start += k
    return tuple(perm)


def _centraliser_order(parts: tuple[int, ...]) -> int:
    out = 1
    for k in set(parts):
        c = parts.count(k)
        out *= k**c * factorial(c)
    return out


def burnside_class_count(n: int) -> int:
    """Number of switching classes by averaging fixed points over relabelings.

    The fixed-point count depends only on the cycle type, so one permutation
    per partition of n is tested, weighted by the size of its conjugacy class.
    """
    if n <= 2:
        return 1
    pairs = column_order(n)
    codes = list(_normalised_codes(n))
    total = 0
    for parts in _partitions(n):
        perm = _cycle_type_permutation(parts)
        fixed = 0
        for code in codes:
            m = decode(n, code).entries
            # relabel, then renormalise on the new vertex 0
            moved = [[m[perm[i]][perm[j]] for j in range(n)] for i in range(n)]
            bits = _normalised_bits(moved, 0)
            if tuple(bits[i] >> j & 1 for i, j in pairs) == code:
                fixed += 1
        total += fixed * (factorial(n) // _centraliser_order(parts))
    assert total % factorial(n) == 0
    return total // factorial(n)


@dataclass(frozen=True)
class ClassRecord:
    cls: CanonicalClass
    witnesses: int

    def line(self) -> str:
        rows = self.cls.representative.entries
        flat = "".join("+" if x == 1 else "-" if x == -1 else "0" for row in rows for x in row)
        return f"{flat} {self.cls.spectrum.render()} {self.witnesses}"


def class_records(n: int, allow_large: bool = False) -> list[ClassRecord]:
    return [ClassRecord(c, len(find_regular_graphs(c.representative))) for c in enumerate_classes(n, allow_large)]


def write_results(records: list[ClassRecord], path: str | os.PathLike) -> None:
    """Append one line per class: row-major representative, spectrum, regular-witness count."""
    with open(path, "a") as fh:
        for r in records:
            fh.write(r.line() + "\n")


def read_results(path: str | os.PathLike) -> list[tuple[SeidelMatrix, Spectrum, int]]:
    out = []
    with open(path) as fh:
        for line in fh:
            if not line.strip():
                continue
            flat, spec, count = line.split()
            n = int(round(len(flat) ** 0.5))
            vals = [{"+": 1, "-": -1, "0": 0}[ch] for ch in flat]
            m = [vals[i * n:(i + 1) * n] for i in range(n)]
            out.append((SeidelMatrix(m), Spectrum.parse(spec), int(count)))
    return out


def find_s6() -> tuple[int, SeidelMatrix]:
    """First order-6 upper triangle, by index, whose matrix squares to 5I."""
    target = im.identity(6, 5)
    for idx in range(1 << 15):
        s = SeidelMatrix.from_upper(6, upper_from_index(6, idx))
        if im.matmul(s.entries, s.entries) == target:
            return idx, s
    raise AssertionError("no order-6 matrix with S^2 = 5I")


def all_triangles(n: int):
    for idx in range(1 << (n * (n - 1) // 2)):
        yield SeidelMatrix.from_upper(n, upper_from_index(n, idx))


__all__ = [
    "CanonicalClass",
    "ClassRecord",
    "burnside_class_count",
    "canonical_form",
    "class_records",
    "enumerate_classes",
    "find_s6",
    "read_results",
    "switching_equivalent",
    "write_results",
]
