"""The two summary tables: three-eigenvalue candidates and the spectra forced at the relative bound."""
from __future__ import annotations

from dataclasses import dataclass

from .bounds import forced_spectrum_even_mu, relative_bound
from .feasibility import FeasibilityReport, Facts, load_facts, run_battery
from .spectra import Spectrum, parse_spectrum_text

# (n, d, spectrum) for the three-eigenvalue candidates with smallest eigenvalue -5
TABLE2_SPECTRA = (
    (28, 14, "-5^14,3^7,7^7"),
    (30, 14, "-5^16,5^9,7^5"),
    (40, 16, "-5^24,5^6,9^10"),
    (40, 16, "-5^24,7^15,15^1"),
    (42, 16, "-5^26,7^7,9^9"),
    (48, 17, "-5^31,7^8,11^9"),
    (49, 17, "-5^32,9^16,16^1"),
    (48, 18, "-5^30,3^6,11^12"),
    (48, 18, "-5^30,7^16,19^2"),
    (54, 18, "-5^36,7^9,13^9"),
    (60, 18, "-5^42,11^15,15^3"),
    (72, 19, "-5^53,13^16,19^3"),
    (75, 19, "-5^56,10^1,15^18"),
    (90, 20, "-5^70,13^5,19^15"),
    (95, 20, "-5^75,14^1,19^19"),
)


@dataclass(frozen=True)
class Table2Row:
    n: int
    d: int
    spectrum: Spectrum
    report: FeasibilityReport

    @property
    def regular(self) -> str:
        return self.report.regular

    @property
    def exists(self) -> str:
        return self.report.exists

    def record(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "spectrum": self.spectrum.render(),
            "regular": self.regular,
            "exists": self.exists,
            "remark": self.report.citations(),
            "report": self.report.record(),
        }


def table2_rows(facts: Facts | None = None) -> list[Table2Row]:
    facts = load_facts() if facts is None else facts
    out = []
    for n, d, text in TABLE2_SPECTRA:
        spec = parse_spectrum_text(text)
        out.append(Table2Row(n, d, spec, run_battery(spec, facts)))
    return out


def table2_report(facts: Facts | None = None) -> str:
    rows = table2_rows(facts)
    head = f"{'n':>3} {'d':>3}  {'spectrum':<22} {'Regular':^7} {'Exists':^6}  remark"
    lines = [head, "-" * len(head)]
    for r in rows:
        remark = ", ".join(r.report.citations())
        lines.append(f"{r.n:>3} {r.d:>3}  {r.spectrum.render():<22} {r.regular:^7} {r.exists:^6}  {remark}")
    return "\n".join(lines)


@dataclass(frozen=True)
class Table3Row:
    d: int
    lambda0: int
    n: int
    spectrum: Spectrum | None
    rule: str | None
    exists: str
    remark: str
    report: FeasibilityReport | None

    def record(self) -> dict:
        return {
            "d": self.d,
            "lambda0": self.lambda0,
            "n": self.n,
            "spectrum": self.spectrum.render() if self.spectrum else None,
            "rule": self.rule,
            "exists": self.exists,
            "remark": self.remark,
        }


def table3_rows(d_range: range = range(14, 24), lambda0: int = -5, facts: Facts | None = None) -> list[Table3Row]:
    """Forced spectrum at the floor of the relative bound, and what the battery says about it."""
    facts = load_facts() if facts is None else facts
    out = []
    for d in d_range:
        n = relative_bound(d, lambda0).floor_bound
        forced = forced_spectrum_even_mu(d, lambda0)
        if forced is None:
            out.append(Table3Row(d, lambda0, n, None, None, "?", "not forced", None))
            continue
        rep = run_battery(forced.spectrum, facts)
        if rep.exists == "N":
            exists, remark = "N", ", ".join(rep.nonexistence_citations())
        elif rep.literature:
            exists, remark = "Y", rep.literature
        else:
            exists, remark = "?", ""
        out.append(Table3Row(d, lambda0, forced.n, forced.spectrum, forced.source, exists, remark, rep))
    return out


def table3_report(d_range: range = range(14, 24), lambda0: int = -5, facts: Facts | None = None) -> str:
    rows = table3_rows(d_range, lambda0, facts)
    head = f"{'d':>3} {'l0':>3} {'n':>4}  {'spectrum':<24} {'rule':<9} {'Exists':^6}  remark"
    lines = [head, "-" * len(head)]
    for r in rows:
        spec = r.spectrum.render() if r.spectrum else "-"
        lines.append(f"{r.d:>3} {r.lambda0:>3} {r.n:>4}  {spec:<24} {r.rule or '-':<9} {r.exists:^6}  {r.remark}")
    return "\n".join(lines)
