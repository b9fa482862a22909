"""Euclidean blowup bookkeeping for the curve y^k = x (x-1)^b (x-2)^c.

Each singular point of local type ``z1^e = z2^f`` is resolved by blowing up
repeatedly; every blowup lowers ``(e, f)`` by one subtractive Euclidean step
and costs ``min(e, f)`` in the intersection number with c_1.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from math import gcd

from .covers import (
    NOT_NORMALIZABLE,
    CoverData,
    invariants,
    normalize_total_ramification,
    normalized_data,
    unit_orbit,
)


class DomainError(ValueError):
    pass


@dataclass(frozen=True)
class BlowupStep:
    e: int
    f: int
    mult: int

    def as_dict(self) -> dict:
        return {"e": self.e, "f": self.f, "mult": self.mult}


@dataclass(frozen=True)
class BlowupTrace:
    steps: tuple[BlowupStep, ...]
    ms_total: int

    @property
    def blowups(self) -> int:
        """Number of blowups, i.e. steps with multiplicity at least 2."""
        return sum(1 for s in self.steps if s.mult >= 2)

    def as_dict(self) -> dict:
        return {
            "steps": [s.as_dict() for s in self.steps],
            "ms_total": self.ms_total,
            "blowups": self.blowups,
        }


def _check_nonneg(e: int, f: int) -> None:
    if e < 0 or f < 0:
        raise DomainError(f"ms is defined for nonnegative arguments, got ({e}, {f})")


def ms(e: int, f: int) -> int:
    """Sum of multiplicities met while desingularizing ``z1^e = z2^f``.

    Uses division with remainder; each quotient step stands for ``q``
    subtractive steps of multiplicity ``f``.

    >>> ms(30, 25), ms(5, 3), ms(7, 1)
    (50, 5, 0)
    """
    _check_nonneg(e, f)
    total = 0
    while True:
        if e < f:
            e, f = f, e
        if f < 2:
            return total
        q, r = divmod(e, f)
        total += q * f
        e = r


def ms_trace(e: int, f: int) -> BlowupTrace:
    """Step-by-step subtractive descent, one record per visited pair.

    The last record is the terminal pair with ``min(e, f) <= 1``.
    """
    _check_nonneg(e, f)
    steps = []
    total = 0
    while True:
        m = min(e, f)
        steps.append(BlowupStep(e, f, m))
        if m < 2:
            break
        total += m
        if e >= f:
            e -= f
        else:
            f -= e
    return BlowupTrace(tuple(steps), total)


def r_bound(e: int, f: int) -> int:
    if e < 1 or f < 1:
        raise DomainError(f"R(e, f) needs positive arguments, got ({e}, {f})")
    if e == 1 and f == 1:
        raise DomainError("R(e, f) is undefined at (1, 1)")
    d = gcd(e, f)
    return d if d > 1 else 3


def c1_after_desingularization(c: CoverData) -> int:
    """Degree of c_1 of the resolved surface on the strict transform.

    The original curve has class ``k`` times the hyperplane class, with
    c_1-degree ``3k``; each branch fibre then costs ``ms(k, m)``.
    """
    return 3 * c.k - sum(ms(c.k, m) for m in c.mono)


class Verdict(str, Enum):
    CERTIFIED = "TautologicalCertified"
    INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class TautDecision:
    c1: int
    genus: int
    vdim: int
    n_ram: int
    verdict: Verdict
    witness: CoverData | None
    orbit_c1: tuple[int, ...] = field(default=())

    def as_dict(self) -> dict:
        return {
            "c1": self.c1,
            "genus": self.genus,
            "vdim": self.vdim,
            "n_ram": self.n_ram,
            "verdict": self.verdict.value,
            "witness": self.witness.as_dict() if self.witness else None,
            "orbit_c1": list(self.orbit_c1),
        }


def _assess(c: CoverData) -> tuple[int, int, int, int, bool]:
    inv = invariants(c)
    c1 = c1_after_desingularization(c)
    vdim = c1 + inv.genus - 1
    ok = c1 > 0 and inv.n_ram <= vdim and 2 * inv.genus - 2 + inv.n_ram > 0
    return c1, inv.genus, vdim, inv.n_ram, ok


def decide_tautological(c: CoverData) -> TautDecision:
    """Check whether the curve-on-a-rational-surface criterion applies.

    A negative outcome is reported as inconclusive, never as
    non-tautological.
    """
    norm = normalize_total_ramification(c)
    if norm is not NOT_NORMALIZABLE:
        c1, genus, vdim, n_ram, ok = _assess(norm)
        return TautDecision(
            c1, genus, vdim, n_ram,
            Verdict.CERTIFIED if ok else Verdict.INCONCLUSIVE,
            norm,
        )

    orbit = unit_orbit(c)
    assessed = [(_assess(rep), rep) for rep in orbit]
    orbit_c1 = tuple(a[0] for a, _ in assessed)
    for (c1, genus, vdim, n_ram, ok), rep in assessed:
        if ok:
            return TautDecision(c1, genus, vdim, n_ram, Verdict.CERTIFIED, rep, orbit_c1)
    c1, genus, vdim, n_ram, _ = _assess(c)
    return TautDecision(c1, genus, vdim, n_ram, Verdict.INCONCLUSIVE, None, orbit_c1)


@dataclass
class ScanReport:
    limit: int
    checked: int = 0
    violations: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def as_dict(self) -> dict:
        return {
            "limit": self.limit,
            "checked": self.checked,
            "violations": self.violations,
            "passed": self.passed,
        }


def _inequality_for_k(k: int) -> tuple[int, list]:
    checked = 0
    bad = []
    for d in normalized_data(k):
        _, b, cc = d.mono
        inv = invariants(d)
        c1 = c1_after_desingularization(d)
        vdim = c1 + inv.genus - 1
        slack = (r_bound(k, b) - gcd(k, b)) + (r_bound(k, cc) - gcd(k, cc))
        checked += 1
        if vdim - inv.n_ram < inv.genus - 1 + slack or c1 < 1:
            bad.append({
                "k": k, "mono": list(d.mono), "c1": c1, "genus": inv.genus,
                "vdim": vdim, "n_ram": inv.n_ram, "slack": slack,
            })
    return checked, bad


def _scan(worker, items, jobs: int):
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(worker, items))
    return [worker(x) for x in items]


def verify_decision_inequality(k_max: int, jobs: int = 1) -> ScanReport:
    """Check ``vdim - n >= g - 1 + slack`` and ``c1 >= 1`` on normalized data."""
    if k_max < 2:
        raise DomainError(f"k_max must be at least 2, got {k_max}")
    report = ScanReport(k_max)
    for checked, bad in _scan(_inequality_for_k, range(2, k_max + 1), jobs):
        report.checked += checked
        report.violations.extend(bad)
    return report


def _bound_for_e(e: int) -> tuple[int, list]:
    checked = 0
    bad = []
    for f in range(0, e + 1):
        v = ms(e, f)
        checked += 1
        problems = []
        if v != ms(f, e):
            problems.append("symmetry")
        if f <= 1 and v != 0:
            problems.append("base")
        if f >= 2 and v != f + ms(e - f, f):
            problems.append("recursion")
        if f >= 1 and (e, f) != (1, 1) and v > e + f - r_bound(e, f):
            problems.append("bound")
        if problems:
            bad.append({"e": e, "f": f, "ms": v, "failed": problems})
    return checked, bad


def verify_ms_bound(e_max: int, jobs: int = 1) -> ScanReport:
    """Axioms of ms and the upper bound ``e + f - R(e, f)`` for ``f <= e <= e_max``."""
    if e_max < 0:
        raise DomainError(f"e_max must be nonnegative, got {e_max}")
    report = ScanReport(e_max)
    for checked, bad in _scan(_bound_for_e, range(0, e_max + 1), jobs):
        report.checked += checked
        report.violations.extend(bad)
    return report
