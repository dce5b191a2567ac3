"""Seidel matrices, graphs, switching, fixtures and the smat/edges file formats."""
from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Sequence

from . import intmatrix as im
from .errors import NotApplicable, ParseError


@dataclass(frozen=True)
class SeidelMatrix:
    """Symmetric matrix with zero diagonal and off-diagonal entries in {-1, +1}."""

    entries: im.Matrix

    def __post_init__(self):
        m = im.freeze(self.entries)
        object.__setattr__(self, "entries", m)
        n = len(m)
        if n < 1:
            raise ValueError("a Seidel matrix has order at least 1")
        for i, row in enumerate(m):
            if len(row) != n:
                raise ValueError(f"row {i} has length {len(row)}, expected {n}")
            if row[i] != 0:
                raise ValueError(f"diagonal entry ({i},{i}) is {row[i]}, expected 0")
            for j in range(i + 1, n):
                if row[j] not in (1, -1):
                    raise ValueError(f"entry ({i},{j}) is {row[j]}, expected +1 or -1")
                if m[j][i] != row[j]:
                    raise ValueError(f"entries ({i},{j}) and ({j},{i}) differ")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def rows(self) -> im.Matrix:
        return self.entries

    def __str__(self) -> str:
        return "\n".join(" ".join(f"{x:2d}" for x in row) for row in self.entries)

    @classmethod
    def from_upper(cls, n: int, upper: Sequence[int]) -> SeidelMatrix:
        """Build from the row-major strict upper triangle (entries +-1)."""
        m = [[0] * n for _ in range(n)]
        for (i, j), v in zip(combinations(range(n), 2), upper, strict=False):
            m[i][j] = m[j][i] = v
        return cls(m)

    def upper(self) -> tuple[int, ...]:
        return tuple(self.entries[i][j] for i, j in combinations(range(self.n), 2))


class Graph:
    """Simple undirected graph on vertices ``0..n-1`` stored as neighbour bitsets."""

    __slots__ = ("n", "bits")

    def __init__(self, n: int, bits: Sequence[int]):
        if len(bits) != n:
            raise ValueError("one bitset per vertex required")
        for v, b in enumerate(bits):
            if b >> v & 1:
                raise ValueError(f"loop at vertex {v}")
            if b >> n:
                raise ValueError(f"vertex {v} has a neighbour outside 0..{n - 1}")
        for v, b in enumerate(bits):
            u = b
            while u:
                w = (u & -u).bit_length() - 1
                if not bits[w] >> v & 1:
                    raise ValueError(f"edge {v}-{w} is not symmetric")
                u &= u - 1
        self.n = n
        self.bits = tuple(bits)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> Graph:
        bits = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"loop at vertex {u}")
            bits[u] |= 1 << v
            bits[v] |= 1 << u
        return cls(n, bits)

    @classmethod
    def from_adjacency(cls, adj: im.MatrixLike) -> Graph:
        n = len(adj)
        bits = []
        for i, row in enumerate(adj):
            if len(row) != n:
                raise ValueError("adjacency matrix must be square")
            b = 0
            for j, x in enumerate(row):
                if x not in (0, 1):
                    raise ValueError(f"adjacency entry ({i},{j}) is {x}")
                if x:
                    b |= 1 << j
            bits.append(b)
        return cls(n, bits)

    def adjacency(self) -> im.Matrix:
        return tuple(tuple(b >> j & 1 for j in range(self.n)) for b in self.bits)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.bits[u] >> v & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n) if self.bits[u] >> v & 1]

    def degrees(self) -> tuple[int, ...]:
        return tuple(b.bit_count() for b in self.bits)

    def is_regular(self) -> bool:
        return len(set(self.degrees())) <= 1

    def is_euler(self) -> bool:
        return all(d % 2 == 0 for d in self.degrees())

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        seen = 1
        frontier = 1
        while frontier:
            nxt = 0
            u = frontier
            while u:
                w = (u & -u).bit_length() - 1
                nxt |= self.bits[w]
                u &= u - 1
            frontier = nxt & ~seen
            seen |= nxt
        return seen == (1 << self.n) - 1

    def complement(self) -> Graph:
        full = (1 << self.n) - 1
        return Graph(self.n, [full & ~b & ~(1 << v) for v, b in enumerate(self.bits)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.bits == other.bits

    def __hash__(self) -> int:
        return hash((self.n, self.bits))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class SwitchingVector:
    signs: tuple[int, ...]

    def __post_init__(self):
        s = tuple(int(x) for x in self.signs)
        object.__setattr__(self, "signs", s)
        if not s:
            raise ValueError("empty switching vector")
        if any(x not in (1, -1) for x in s):
            raise ValueError("switching vector entries must be +1 or -1")
        if s[0] != 1:
            raise ValueError("switching vectors are normalised with signs[0] = +1")

    @classmethod
    def normalised(cls, signs: Sequence[int]) -> SwitchingVector:
        """Accept any +-1 vector, negating it if needed so the first sign is +1."""
        s = tuple(signs)
        if s and s[0] == -1:
            s = tuple(-x for x in s)
        return cls(s)

    @classmethod
    def identity(cls, n: int) -> SwitchingVector:
        return cls((1,) * n)

    @classmethod
    def from_string(cls, text: str) -> SwitchingVector:
        table = {"+": 1, "-": -1}
        try:
            return cls(tuple(table[c] for c in text.strip()))
        except KeyError as exc:
            raise ValueError(f"bad switching string {text!r}") from exc

    def __len__(self) -> int:
        return len(self.signs)

    def __mul__(self, other: SwitchingVector) -> SwitchingVector:
        if len(self) != len(other):
            raise ValueError("switching vectors of different lengths")
        return SwitchingVector(tuple(a * b for a, b in zip(self.signs, other.signs)))

    def __str__(self) -> str:
        return "".join("+" if x > 0 else "-" for x in self.signs)


@dataclass(frozen=True)
class LineSystemParams:
    """Parameters of the equiangular line system carried by a Seidel matrix.

    ``smallest`` is the smallest eigenvalue as a spectrum entry (an integer
    eigenvalue or a conjugate pair, in which case the smaller root is meant).
    """

    n: int
    d: int
    smallest: object
    smallest_multiplicity: int

    @property
    def alpha_inverse(self) -> int | None:
        """``|lambda_0|`` when it is an integer, else None."""
        from .spectra import IntEig

        if isinstance(self.smallest, IntEig):
            return -self.smallest.value
        return None

    @property
    def alpha(self):
        """Exact common angle: a Fraction, or a string ``1/sqrt(D)``-style form for surds."""
        from fractions import Fraction

        inv = self.alpha_inverse
        if inv is not None:
            return Fraction(1, inv)
        root = self.smallest.root_text(-1, negate=True)
        return f"1/({root})" if any(c in root for c in "+-") else f"1/{root}"

    def alpha_float(self) -> float:
        return 1.0 / abs(self.smallest.root_float(-1))

    @property
    def lambda0_minpoly(self):
        return self.smallest.minimal_polynomial()


def seidel_from_graph(g: Graph) -> SeidelMatrix:
    n = g.n
    return SeidelMatrix(
        tuple(tuple(0 if i == j else 1 - 2 * (g.bits[i] >> j & 1) for j in range(n)) for i in range(n))
    )


def switch(s: SeidelMatrix, v: SwitchingVector | Sequence[int]) -> SeidelMatrix:
    signs = v.signs if isinstance(v, SwitchingVector) else tuple(v)
    if len(signs) != s.n:
        raise ValueError(f"switching vector has length {len(signs)}, matrix has order {s.n}")
    return SeidelMatrix(
        tuple(tuple(signs[i] * signs[j] * x for j, x in enumerate(row)) for i, row in enumerate(s.entries))
    )


def graph_from_seidel(s: SeidelMatrix, v: SwitchingVector | Sequence[int] | None = None) -> Graph:
    """Underlying graph of the switched matrix: adjacency ``(J - I - DSD)/2``."""
    t = s if v is None else switch(s, v)
    bits = []
    for i, row in enumerate(t.entries):
        b = 0
        for j, x in enumerate(row):
            if x == -1:
                b |= 1 << j
        bits.append(b)
    return Graph(t.n, bits)


def all_ones(n: int) -> SeidelMatrix:
    """``J - I``: the Seidel matrix of the empty graph."""
    return SeidelMatrix(tuple(tuple(0 if i == j else 1 for j in range(n)) for i in range(n)))


def relabel(s: SeidelMatrix, perm: Sequence[int]) -> SeidelMatrix:
    """Matrix whose ``(perm[i], perm[j])`` entry is ``s[i, j]``."""
    n = s.n
    out = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(n):
            out[perm[i]][perm[j]] = s.entries[i][j]
    return SeidelMatrix(out)


# ---------------------------------------------------------------- fixtures

_S10_ROWS = (
    (0, 1, 1, 1, 1, 1, 1, 1, 1, 1),
    (1, 0, -1, 1, 1, -1, 1, -1, 1, -1),
    (1, -1, 0, 1, 1, -1, -1, 1, -1, 1),
    (1, 1, 1, 0, 1, -1, -1, 1, -1, -1),
    (1, 1, 1, 1, 0, -1, 1, 1, 1, -1),
    (1, -1, -1, -1, -1, 0, 1, 1, 1, 1),
    (1, 1, -1, -1, 1, 1, 0, -1, 1, -1),
    (1, -1, 1, 1, 1, 1, -1, 0, 1, 1),
    (1, 1, -1, -1, 1, 1, 1, 1, 0, 1),
    (1, -1, 1, -1, -1, 1, -1, 1, 1, 0),
)

# First hit of the exhaustive scan over the 2^15 upper triangles of order 6
# (triangle index 684; see S6_SEARCH_INDEX and enumeration.find_s6).
_S6_ROWS = (
    (0, 1, 1, -1, -1, 1),
    (1, 0, -1, 1, -1, 1),
    (1, -1, 0, -1, 1, 1),
    (-1, 1, -1, 0, 1, 1),
    (-1, -1, 1, 1, 0, 1),
    (1, 1, 1, 1, 1, 0),
)
S6_SEARCH_INDEX = 684


def build_fixture_S10() -> SeidelMatrix:
    """The order-10 matrix with three eigenvalues and no regular graph in its class."""
    return SeidelMatrix(_S10_ROWS)


def build_S6() -> SeidelMatrix:
    """Order-6 Seidel matrix with ``S^2 = 5I`` (spectrum +-sqrt(5), each thrice)."""
    s = SeidelMatrix(_S6_ROWS)
    assert im.matmul(s.entries, s.entries) == im.identity(6, 5), "S6 fixture corrupted"
    return s


def build_Sk_family(k: int) -> SeidelMatrix:
    """``J_{2k+1} (x) (S6 - I) + I`` of order ``6(2k+1)``."""
    if k < 1:
        raise ValueError("k must be at least 1")
    s6_minus_i = im.add_diagonal(build_S6().entries, -1)
    big = im.kron(im.ones(2 * k + 1), s6_minus_i)
    return SeidelMatrix(im.add_diagonal(big, 1))


def cycle_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, combinations(range(n), 2))


def kneser_graph(m: int) -> Graph:
    """K(m,2): 2-subsets of an m-set, adjacent when disjoint (the complement of T(m))."""
    verts = list(combinations(range(m), 2))
    edges = [(a, b) for a, b in combinations(range(len(verts)), 2) if not set(verts[a]) & set(verts[b])]
    return Graph.from_edges(len(verts), edges)


def petersen_graph() -> Graph:
    return kneser_graph(5)


def clebsch_graph() -> Graph:
    """Folded 5-cube: vectors of F_2^4, adjacent when they differ in one or in all four places."""
    edges = [(u, v) for u, v in combinations(range(16), 2) if bin(u ^ v).count("1") in (1, 4)]
    return Graph.from_edges(16, edges)


# ---------------------------------------------------------------- line systems


def line_params(s: SeidelMatrix) -> LineSystemParams:
    if s.n < 2:
        raise NotApplicable("no common angle is defined for fewer than two lines")
    from .spectra import spectrum

    spec = spectrum(s)
    eig, mult = spec.smallest()
    return LineSystemParams(n=s.n, d=s.n - mult, smallest=eig, smallest_multiplicity=mult)


# ---------------------------------------------------------------- Euler switching


def euler_switch(s: SeidelMatrix) -> SwitchingVector | None:
    """A switching whose underlying graph has every degree even, or None.

    Switching on a vertex set U adds |V \\ U| to the degree parity of every
    vertex of U and |U| to every vertex outside U, so the condition is a
    parity equation with a closed-form solution. Among solutions the
    lexicographically least sign vector (``+`` before ``-``) is returned.
    """
    g = graph_from_seidel(s)
    n = g.n
    par = [d % 2 for d in g.degrees()]
    best = None
    for size_parity in (0, 1):
        if n % 2:
            # U = {i : deg_i = n - |U| (mod 2)}, and its size must have the chosen parity.
            target = (n - size_parity) % 2
            u = [i for i in range(n) if par[i] == target]
            if len(u) % 2 != size_parity:
                continue
            signs = [-1 if i in u else 1 for i in range(n)]
            cand = SwitchingVector.normalised(signs)
        else:
            # Every degree must already share the parity of |U|.
            if any(p != size_parity for p in par):
                continue
            signs = [1] * n
            if size_parity:
                signs[-1] = -1
            cand = SwitchingVector.normalised(signs)
        key = tuple(0 if x > 0 else 1 for x in cand.signs)
        if best is None or key < best[0]:
            best = (key, cand)
    if best is None:
        return None
    assert graph_from_seidel(s, best[1]).is_euler()
    return best[1]


# ---------------------------------------------------------------- file formats


def parse_smat(text: str, source: str = "<smat>") -> SeidelMatrix:
    lines = [ln for ln in text.splitlines()]
    idx = [i for i, ln in enumerate(lines) if ln.strip() and not ln.lstrip().startswith("#")]
    if not idx:
        raise ParseError(f"{source}: empty input", line=1)
    first = idx[0]
    try:
        n = int(lines[first].split()[0])
    except ValueError:
        raise ParseError(f"{source}:{first + 1}: expected the order n", line=first + 1, column=1) from None
    if n < 1 or len(lines[first].split()) != 1:
        raise ParseError(f"{source}:{first + 1}: first line must be a single positive integer", line=first + 1)
    body = idx[1:]
    if len(body) != n:
        raise ParseError(f"{source}: expected {n} matrix rows, found {len(body)}", line=first + 1)
    rows = []
    for r, li in enumerate(body):
        toks = lines[li].split()
        if len(toks) != n:
            raise ParseError(f"{source}:{li + 1}: expected {n} entries, found {len(toks)}", line=li + 1)
        row = []
        for c, tok in enumerate(toks):
            try:
                x = int(tok)
            except ValueError:
                raise ParseError(f"{source}:{li + 1}:{c + 1}: {tok!r} is not an integer", line=li + 1, column=c + 1) from None
            if x not in (-1, 0, 1):
                raise ParseError(f"{source}:{li + 1}:{c + 1}: entry {x} not in {{-1,0,1}}", line=li + 1, column=c + 1)
            if (x == 0) != (r == c):
                what = "diagonal entry must be 0" if r == c else "off-diagonal entry must be +-1"
                raise ParseError(f"{source}:{li + 1}:{c + 1}: {what}", line=li + 1, column=c + 1)
            row.append(x)
        rows.append(row)
    for r in range(n):
        for c in range(r + 1, n):
            if rows[r][c] != rows[c][r]:
                li = body[c]
                raise ParseError(
                    f"{source}:{li + 1}:{r + 1}: entry differs from its transpose at line {body[r] + 1}, column {c + 1}",
                    line=li + 1,
                    column=r + 1,
                )
    return SeidelMatrix(rows)


def format_smat(s: SeidelMatrix) -> str:
    out = [str(s.n)]
    out += [" ".join(str(x) for x in row) for row in s.entries]
    return "\n".join(out) + "\n"


def parse_edges(text: str, source: str = "<edges>") -> Graph:
    lines = [(i + 1, ln.split()) for i, ln in enumerate(text.splitlines()) if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines:
        raise ParseError(f"{source}: empty input", line=1)
    ln0, head = lines[0]
    if len(head) != 2:
        raise ParseError(f"{source}:{ln0}: header must be 'n m'", line=ln0)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"{source}:{ln0}: header must be two integers", line=ln0) from None
    if n < 1 or m < 0:
        raise ParseError(f"{source}:{ln0}: need n >= 1 and m >= 0", line=ln0)
    if len(lines) - 1 != m:
        raise ParseError(f"{source}: header announces {m} edges, found {len(lines) - 1}", line=ln0)
    edges = []
    seen = set()
    for lno, toks in lines[1:]:
        if len(toks) != 2:
            raise ParseError(f"{source}:{lno}: edge line must be 'u v'", line=lno)
        try:
            u, v = int(toks[0]), int(toks[1])
        except ValueError:
            raise ParseError(f"{source}:{lno}: vertices must be integers", line=lno) from None
        for col, x in ((1, u), (2, v)):
            if not 0 <= x < n:
                raise ParseError(f"{source}:{lno}:{col}: vertex {x} outside 0..{n - 1}", line=lno, column=col)
        if u == v:
            raise ParseError(f"{source}:{lno}: loop at vertex {u}", line=lno)
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ParseError(f"{source}:{lno}: repeated edge {key}", line=lno)
        seen.add(key)
        edges.append(key)
    return Graph.from_edges(n, edges)


def format_edges(g: Graph) -> str:
    es = g.edges()
    return "\n".join([f"{g.n} {len(es)}"] + [f"{u} {v}" for u, v in es]) + "\n"


def read_matrix(path: str | os.PathLike, fmt: str | None = None) -> SeidelMatrix:
    """Read a Seidel matrix from an smat file, or the Seidel matrix of an edges file."""
    path = os.fspath(path)
    if fmt is None:
        fmt = "edges" if path.endswith(".edges") else "smat"
    with open(path) as fh:
        text = fh.read()
    if fmt == "smat":
        return parse_smat(text, path)
    if fmt == "edges":
        return seidel_from_graph(parse_edges(text, path))
    raise ValueError(f"unknown format {fmt!r}")


def write_smat(s: SeidelMatrix, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_smat(s))


def write_edges(g: Graph, path: str | os.PathLike) -> None:
    with open(path, "w") as fh:
        fh.write(format_edges(g))
