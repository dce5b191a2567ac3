"""Necessary-condition battery for candidate Seidel spectra.

Given only a spectrum, every applicable condition is run and reported with
the result it rests on. The battery can certify nonexistence or force a
regular graph into the switching class; it never certifies existence, though
literature constructions listed in the facts file are passed through.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from importlib import resources
from typing import Any

from .bounds import relative_bound, trace_cube_test, two_eigenvalue_deletion
from .errors import NotApplicable, ParseError, PreconditionError
from .polynomial import IntPolynomial
from .regular import (
    irrational_three_ev_form,
    parity_conditions,
    regular_graph_spectrum_from_seidel,
    three_walk_from_spectrum,
)
from .spectra import IntEig, Spectrum, SurdPair, parse_spectrum_text
from .structure import small_diag_classify, spectral_pairs

CandidateSpectrum = Spectrum

# condition id -> the result it applies
CITATIONS = {
    "trace-identities": "Eq. (1)-(2)",
    "mod2-charpoly": "Lemma 2.2",
    "simple-eigenvalue": "Cor. 2.3",
    "odd-irrational-form": "Cor. 5.6",
    "three-walk": "Cor. 3.5",
    "regular-parity": "Cor. 5.2",
    "simple-eigenvalue-regular": "Prop. 5.3",
    "srg-facts": "Cor. 5.4; Remark 5.5",
    "pair-diagonal": "Lemma 5.9; Lemma 5.11; Thm. 5.7; Thm. 5.13",
    "forced-regular-consistency": "Cor. 3.5; Cor. 5.2",
    "trace-cube": "Cor. 4.7",
    "relative-bound": "Thm. 6.1",
    "deletion": "Remark 5.5",
    "literature": "facts file",
}

PASS, FAIL, NA = "pass", "fail", "not-applicable"
NONEXISTENCE = "nonexistence"
REGULAR_IMPOSSIBLE = "regular-impossible"
REGULAR_FORCED = "regular-forced"


def parse_spectrum(text: str) -> CandidateSpectrum:
    return parse_spectrum_text(text)


# ---------------------------------------------------------------- facts


@dataclass(frozen=True)
class Facts:
    nonexistent_graphs: dict[Spectrum, str] = field(default_factory=dict)
    existing_seidel: dict[Spectrum, str] = field(default_factory=dict)


def parse_facts(text: str, source: str = "<facts>") -> Facts:
    graphs: dict[Spectrum, str] = {}
    seidel: dict[Spectrum, str] = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split(None, 3)
        if len(parts) < 3:
            raise ParseError(f"{source}:{lineno}: expected '<kind> <spectrum> <status> [citation]'", lineno)
        kind, spec_text, status = parts[:3]
        citation = parts[3] if len(parts) > 3 else ""
        try:
            spec = parse_spectrum_text(spec_text)
        except ValueError as exc:
            raise ParseError(f"{source}:{lineno}: {exc}", lineno) from None
        if kind == "graph-spectrum" and status == "nonexistent":
            graphs[spec] = citation
        elif kind == "seidel-spectrum" and status == "exists":
            seidel[spec] = citation
        else:
            raise ParseError(f"{source}:{lineno}: unknown fact '{kind} ... {status}'", lineno)
    return Facts(graphs, seidel)


def load_facts(path: str | os.PathLike | None = None) -> Facts:
    """Facts from ``path``, or the shipped file."""
    if path is None:
        return parse_facts(resources.files("equiangular.data").joinpath("facts.txt").read_text(), "facts.txt")
    with open(path) as fh:
        return parse_facts(fh.read(), str(path))


# ---------------------------------------------------------------- records


@dataclass(frozen=True)
class ConditionResult:
    condition: str
    citation: str
    verdict: str
    data: dict[str, Any] = field(default_factory=dict)
    consequence: str | None = None

    def record(self) -> dict:
        return {
            "condition": self.condition,
            "citation": self.citation,
            "verdict": self.verdict,
            "consequence": self.consequence,
            "data": self.data,
        }


@dataclass(frozen=True)
class FeasibilityReport:
    spectrum: Spectrum
    results: tuple[ConditionResult, ...]
    literature: str | None = None

    @property
    def overall(self) -> str:
        if self.failing(NONEXISTENCE):
            return "Infeasible"
        if self.forcing():
            return "RegularForced"
        if self.failing(REGULAR_IMPOSSIBLE):
            return "RegularImpossible"
        return "Open"

    def failing(self, consequence: str) -> list[ConditionResult]:
        return [r for r in self.results if r.verdict == FAIL and r.consequence == consequence]

    def forcing(self) -> list[ConditionResult]:
        return [r for r in self.results if r.verdict == PASS and r.consequence == REGULAR_FORCED]

    @property
    def regular(self) -> str:
        if self.forcing():
            return "Y"
        if self.failing(REGULAR_IMPOSSIBLE):
            return "N"
        return "?"

    @property
    def exists(self) -> str:
        return "N" if self.failing(NONEXISTENCE) else "?"

    def citations(self) -> list[str]:
        out = []
        for r in self.failing(NONEXISTENCE) + self.forcing() + self.failing(REGULAR_IMPOSSIBLE):
            if r.citation not in out:
                out.append(r.citation)
        return out

    def nonexistence_citations(self) -> list[str]:
        out = []
        for r in self.failing(NONEXISTENCE):
            if r.citation not in out:
                out.append(r.citation)
        return out

    def regular_graph_spectra(self) -> list[str]:
        return sorted({r.data["graph_spectrum"] for r in self.forcing() if "graph_spectrum" in r.data})

    def record(self) -> dict:
        return {
            "spectrum": self.spectrum.render(),
            "n": self.spectrum.n,
            "overall": self.overall,
            "regular": self.regular,
            "exists": self.exists,
            "literature": self.literature,
            "regular_graph_spectra": self.regular_graph_spectra(),
            "conditions": [r.record() for r in self.results],
        }

    def render(self) -> str:
        lines = [f"spectrum  {self.spectrum.render()}  (n = {self.spectrum.n})"]
        width = max(len(r.condition) for r in self.results)
        for r in self.results:
            tag = f" -> {r.consequence}" if r.consequence else ""
            info = ", ".join(f"{k}={_short(v)}" for k, v in r.data.items())
            lines.append(f"  {r.condition:<{width}}  {r.verdict:<14} [{r.citation}]{tag}  {info}".rstrip())
        lines.append(f"overall   {self.overall}  (regular {self.regular}, exists {self.exists})")
        if self.literature:
            lines.append(f"literature construction: {self.literature}")
        return "\n".join(lines)


def _short(v: Any) -> str:
    if isinstance(v, list):
        return "[" + "; ".join(_short(x) for x in v) + "]"
    if isinstance(v, dict):
        return "{" + ", ".join(f"{k}: {_short(x)}" for k, x in v.items()) + "}"
    return str(v)


def report_from_record(rec: dict) -> FeasibilityReport:
    """Inverse of ``FeasibilityReport.record``."""
    results = tuple(
        ConditionResult(c["condition"], c["citation"], c["verdict"], c["data"], c["consequence"])
        for c in rec["conditions"]
    )
    return FeasibilityReport(parse_spectrum_text(rec["spectrum"]), results, rec.get("literature"))


# ---------------------------------------------------------------- conditions


def _result(cond: str, verdict: str, consequence: str | None = None, **data) -> ConditionResult:
    return ConditionResult(cond, CITATIONS[cond], verdict, data, consequence)


def _pow_mod2(f: IntPolynomial, e: int) -> IntPolynomial:
    out, base = IntPolynomial((1,)), f.reduce_mod(2)
    while e:
        if e & 1:
            out = (out * base).reduce_mod(2)
        base = (base * base).reduce_mod(2)
        e >>= 1
    return out


def _mod2_polynomial(spec: Spectrum) -> IntPolynomial:
    out = spec.residual.reduce_mod(2)
    for e, m in spec.entries:
        out = (out * _pow_mod2(e.minimal_polynomial(), m)).reduce_mod(2)
    return out


def _check_trace(spec: Spectrum) -> ConditionResult:
    s1, s2 = spec.power_sum(1), spec.power_sum(2)
    n = spec.n
    ok = s1 == 0 and s2 == n * (n - 1)
    return _result("trace-identities", PASS if ok else FAIL, None if ok else NONEXISTENCE, trace=s1, trace_sq=s2, expected_sq=n * (n - 1))


def _check_mod2(spec: Spectrum) -> ConditionResult:
    n = spec.n
    x1 = IntPolynomial((1, 1))
    want = _pow_mod2(x1, n) if n % 2 == 0 else (IntPolynomial.x() * _pow_mod2(x1, n - 1)).reduce_mod(2)
    ok = _mod2_polynomial(spec) == want
    evens = [(e.value, m) for e, m in spec.entries if isinstance(e, IntEig) and e.value % 2 == 0]
    data = {"parity": "even" if n % 2 == 0 else "odd", "even_eigenvalues": [f"{v}^{m}" for v, m in evens]}
    return _result("mod2-charpoly", PASS if ok else FAIL, None if ok else NONEXISTENCE, **data)


def _check_simple(spec: Spectrum) -> ConditionResult:
    if spec.n % 2 == 0:
        return _result("simple-eigenvalue", NA, reason="even order")
    simple = [str(e) for e, m in spec.entries if m == 1]
    ok = bool(simple)
    return _result("simple-eigenvalue", PASS if ok else FAIL, None if ok else NONEXISTENCE, simple=simple)


def _check_irrational(spec: Spectrum, distinct: int) -> ConditionResult:
    n = spec.n
    if n % 2 == 0 or distinct != 3 or not any(isinstance(e, SurdPair) for e, _ in spec.entries):
        return _result("odd-irrational-form", NA)
    want = irrational_three_ev_form(n)
    ok = want is not None and spec == want
    return _result(
        "odd-irrational-form", PASS if ok else FAIL, None if ok else NONEXISTENCE, expected=want.render() if want else None
    )


def _check_three_walk(spec: Spectrum, distinct: int) -> tuple[ConditionResult, dict[int, bool]]:
    if distinct != 3:
        return _result("three-walk", NA, reason=f"{distinct} distinct eigenvalues"), {}
    try:
        verdicts = three_walk_from_spectrum(spec)
    except NotApplicable as exc:
        return _result("three-walk", NA, reason=str(exc)), {}
    feasible = {v.theta: v.feasible for v in verdicts}
    data = {"numerators": [f"theta={v.theta}: k={v.k}, 16*walks={v.walk_count_times_16}" for v in verdicts]}
    ok = any(feasible.values())
    return _result("three-walk", PASS if ok else FAIL, None if ok else REGULAR_IMPOSSIBLE, **data), feasible


def _check_parity(spec: Spectrum) -> ConditionResult:
    n = spec.n
    good = [e.value for e, _ in spec.entries if isinstance(e, IntEig) and parity_conditions(n, e.value)]
    ok = bool(good)
    return _result("regular-parity", PASS if ok else FAIL, None if ok else REGULAR_IMPOSSIBLE, admissible=good)


def _forced_consequences(
    spec: Spectrum, nu: Any, via: str, walk_ok: dict[int, bool], facts: Facts
) -> list[ConditionResult]:
    """Checks that follow once the nu-eigenspace is known to be regular."""
    out = []
    if not isinstance(nu, IntEig):
        out.append(_result("forced-regular-consistency", FAIL, NONEXISTENCE, nu=str(nu), via=via, reason="irrational eigenvalue"))
        return out
    n, v = spec.n, nu.value
    problems = []
    if not parity_conditions(n, v):
        problems.append("parity")
    if walk_ok and not walk_ok.get(v, False):
        problems.append("three-walk count")
    graph = None
    if not problems:
        try:
            graph = regular_graph_spectrum_from_seidel(spec, v)
        except PreconditionError as exc:
            problems.append(str(exc))
    if problems:
        out.append(_result("forced-regular-consistency", FAIL, NONEXISTENCE, nu=v, via=via, problems=problems))
        return out
    out.append(_result("forced-regular-consistency", PASS, nu=v, via=via))
    if graph in facts.nonexistent_graphs:
        out.append(
            _result("srg-facts", FAIL, NONEXISTENCE, nu=v, graph_spectrum=graph.render(), source=facts.nonexistent_graphs[graph])
        )
    return out


def _check_simple_regular(spec: Spectrum, distinct: int) -> tuple[list[ConditionResult], list[Any]]:
    if distinct != 3:
        return [_result("simple-eigenvalue-regular", NA)], []
    simple = [e for e, m in spec.entries if m == 1]
    if not simple:
        return [_result("simple-eigenvalue-regular", NA, reason="no simple eigenvalue")], []
    out, forced = [], []
    for nu in simple:
        data = {"nu": str(nu)}
        if isinstance(nu, IntEig):
            try:
                data["graph_spectrum"] = regular_graph_spectrum_from_seidel(spec, nu.value).render()
            except PreconditionError:
                pass
        out.append(_result("simple-eigenvalue-regular", PASS, REGULAR_FORCED, **data))
        forced.append(nu)
    return out, forced


def _check_pairs(spec: Spectrum, distinct: int) -> tuple[list[ConditionResult], list[tuple[Any, str]]]:
    if spec.n % 2 or distinct != 3:
        return [_result("pair-diagonal", NA, reason="needs even order and three eigenvalues")], []
    try:
        pairs = spectral_pairs(spec)
    except NotApplicable as exc:
        return [_result("pair-diagonal", NA, reason=str(exc))], []
    out, forced = [], []
    for sp in pairs:
        cls = small_diag_classify(spec.n, sp.e2, sp.c)
        data = {"pair": sp.label(), "nu": str(sp.nu), "D": cls.D, "c": sp.c, "detail": cls.detail}
        cite = cls.citation or CITATIONS["pair-diagonal"]
        if cls.verdict in ("infeasible", "impossible"):
            out.append(ConditionResult("pair-diagonal", cite, FAIL, data, NONEXISTENCE))
        elif cls.verdict == "regular":
            try:
                data["graph_spectrum"] = regular_graph_spectrum_from_seidel(spec, sp.nu.value).render()
            except PreconditionError:
                pass
            out.append(ConditionResult("pair-diagonal", cite, PASS, data, REGULAR_FORCED))
            forced.append((sp.nu, cite))
        else:
            out.append(ConditionResult("pair-diagonal", cite, PASS, data))
    return out, forced


def _check_trace_cube(spec: Spectrum) -> ConditionResult:
    try:
        res = trace_cube_test(spec)
    except PreconditionError as exc:
        return _result("trace-cube", NA, reason=str(exc))
    data = {"theta0": res.theta0, "sigma": res.sigma, "lhs": res.lhs, "rhs": res.rhs, "cube_sum": res.cube_sum}
    return _result("trace-cube", PASS if res.holds else FAIL, None if res.holds else NONEXISTENCE, **data)


def _check_relative_bound(spec: Spectrum) -> ConditionResult:
    try:
        eig, m0 = spec.smallest()
    except NotApplicable as exc:
        return _result("relative-bound", NA, reason=str(exc))
    if not isinstance(eig, IntEig) or eig.value >= 0:
        return _result("relative-bound", NA, reason="smallest eigenvalue not a negative integer")
    n, lam = spec.n, eig.value
    d = n - m0
    if d < 1 or lam * lam < d + 2:
        return _result("relative-bound", NA, reason="lambda0^2 < d + 2")
    rb = relative_bound(d, lam)
    data = {"d": d, "lambda0": lam, "bound": str(rb.bound)}
    if n > rb.bound:
        return _result("relative-bound", FAIL, NONEXISTENCE, **data)
    if n == rb.bound and spec != rb.equality_spectrum:
        return _result("relative-bound", FAIL, NONEXISTENCE, reason="bound attained by a non-equality spectrum", **data)
    return _result("relative-bound", PASS, **data)


def _check_deletion(spec: Spectrum, facts: Facts) -> ConditionResult | None:
    sub = two_eigenvalue_deletion(spec)
    if sub is None:
        return None
    inner = run_battery(sub, facts, _allow_deletion=False)
    data = {"submatrix_spectrum": sub.render(), "submatrix_overall": inner.overall}
    if inner.overall == "Infeasible":
        data["because"] = inner.citations()
        return _result("deletion", FAIL, NONEXISTENCE, **data)
    return _result("deletion", PASS, **data)


def run_battery(c: CandidateSpectrum, facts: Facts | None = None, _allow_deletion: bool = True) -> FeasibilityReport:
    """Run every applicable necessary condition on a candidate spectrum."""
    facts = load_facts() if facts is None else facts
    results: list[ConditionResult] = [_check_trace(c)]
    if c.has_residual:
        return FeasibilityReport(c, tuple(results))
    distinct = c.distinct_count()
    results.append(_check_mod2(c))
    results.append(_check_simple(c))
    results.append(_check_irrational(c, distinct))
    walk, walk_ok = _check_three_walk(c, distinct)
    results.append(walk)
    results.append(_check_parity(c))
    simple_results, simple_forced = _check_simple_regular(c, distinct)
    results.extend(simple_results)
    pair_results, pair_forced = _check_pairs(c, distinct)
    results.extend(pair_results)
    seen = set()
    for nu, via in [(nu, CITATIONS["simple-eigenvalue-regular"]) for nu in simple_forced] + pair_forced:
        if nu in seen:
            continue
        seen.add(nu)
        results.extend(_forced_consequences(c, nu, via, walk_ok, facts))
    results.append(_check_trace_cube(c))
    results.append(_check_relative_bound(c))
    if _allow_deletion:
        deletion = _check_deletion(c, facts)
        if deletion is not None:
            results.append(deletion)
    return FeasibilityReport(c, tuple(results), facts.existing_seidel.get(c))
