"""Upper bounds for T(g, n) and the point-trading step on genus one curves.

T(g, n) is the least number of points of the coarse moduli space that any
given point can be completed to so that the sum is tautological.  Bounds
start from the known rationally connected cases (T = 1) and are pushed to
more markings with ``T(g, n + m) <= (g m + 1) T(g, n)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

INFINITY = math.inf

# largest n with M_{g,n} known to be rationally connected
RATIONALLY_CONNECTED_NMAX: dict[int, float] = {
    0: INFINITY, 1: 10, 2: 12, 3: 14, 4: 15, 5: 12, 6: 15, 7: 11,
    8: 8, 9: 9, 10: 3, 11: 10, 12: 1, 13: 0, 14: 2, 15: 0,
}


class TNumberError(ValueError):
    pass


class UnstableInput(TNumberError):
    pass


class NoBaseCase(TNumberError):
    pass


class Provenance(str, Enum):
    RATIONALLY_CONNECTED = "rationally_connected"
    RECURSION = "recursion"
    # recognised but never computed: no desk-scale data for these
    DEGREE = "degree"
    HURWITZ = "hurwitz"


@dataclass(frozen=True)
class BoundStep:
    kind: Provenance
    g: int
    n: int
    bound: int
    m: int = 0
    factor: int = 1

    def as_dict(self) -> dict:
        d = {"kind": self.kind.value, "g": self.g, "n": self.n, "bound": self.bound}
        if self.kind is Provenance.RECURSION:
            d.update(m=self.m, factor=self.factor)
        return d


@dataclass(frozen=True)
class TBound:
    g: int
    n: int
    bound: int
    provenance: tuple[BoundStep, ...]

    @property
    def base_n(self) -> int:
        return self.provenance[0].n

    def as_dict(self) -> dict:
        return {
            "g": self.g,
            "n": self.n,
            "bound": self.bound,
            "provenance": [s.as_dict() for s in self.provenance],
        }


def n_max(g: int) -> float:
    try:
        return RATIONALLY_CONNECTED_NMAX[g]
    except KeyError:
        raise NoBaseCase(f"no rationally connected base case known in genus {g}") from None


def _stable(g: int, n: int) -> bool:
    return 2 * g - 2 + n > 0


def recursion_factor(g: int, m: int) -> int:
    return g * m + 1


def t_upper_bound(g: int, n: int) -> TBound:
    """Best bound from one recursion step off a rationally connected case.

    >>> t_upper_bound(1, 11).bound, t_upper_bound(13, 5).bound
    (2, 66)
    """
    if g < 0 or n < 0 or not _stable(g, n):
        raise UnstableInput(f"(g, n) = ({g}, {n}) is not stable")
    top = n_max(g)
    if n <= top:
        step = BoundStep(Provenance.RATIONALLY_CONNECTED, g, n, 1)
        return TBound(g, n, 1, (step,))
    # the factor g m + 1 decreases with n0, so the largest base wins
    n0 = int(top)
    if not _stable(g, n0):
        raise NoBaseCase(f"no stable rationally connected base for genus {g}")
    m = n - n0
    factor = recursion_factor(g, m)
    base = BoundStep(Provenance.RATIONALLY_CONNECTED, g, n0, 1)
    rec = BoundStep(Provenance.RECURSION, g, n, factor * base.bound, m, factor)
    return TBound(g, n, rec.bound, (base, rec))


def replay(b: TBound) -> int:
    """Recompute a bound from its provenance chain alone."""
    value = None
    cur_n = None
    for step in b.provenance:
        if step.kind is Provenance.RATIONALLY_CONNECTED:
            if step.n > n_max(step.g) or not _stable(step.g, step.n):
                raise TNumberError(f"invalid base case {step}")
            value, cur_n = 1, step.n
        elif step.kind is Provenance.RECURSION:
            if value is None or step.n != cur_n + step.m or step.m < 0:
                raise TNumberError(f"recursion step {step} does not follow its base")
            value *= recursion_factor(step.g, step.m)
            cur_n = step.n
        else:
            raise TNumberError(f"provenance kind {step.kind.value} cannot be replayed")
        if step.bound != value:
            raise TNumberError(f"step {step} records {step.bound}, replay gives {value}")
    if cur_n != b.n:
        raise TNumberError(f"provenance ends at n = {cur_n}, bound is for n = {b.n}")
    return value


@dataclass
class TBoundTable:
    base: dict[int, float]
    bounds: dict[tuple[int, int], TBound] = field(default_factory=dict)

    @classmethod
    def build(cls, g_max: int, n_max_scan: int) -> "TBoundTable":
        table = cls(dict(RATIONALLY_CONNECTED_NMAX))
        for g in range(0, g_max + 1):
            for n in range(0, n_max_scan + 1):
                if _stable(g, n):
                    table.bounds[g, n] = t_upper_bound(g, n)
        return table

    def as_dict(self) -> dict:
        return {
            "base": {str(g): ("inf" if v == INFINITY else int(v)) for g, v in self.base.items()},
            "bounds": [b.as_dict() for _, b in sorted(self.bounds.items())],
        }


@dataclass
class ConsistencyReport:
    g_max: int
    n_max_scan: int
    checked: int = 0
    failures: list = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {
            "g_max": self.g_max,
            "n_max_scan": self.n_max_scan,
            "checked": self.checked,
            "failures": self.failures,
            "passed": self.passed,
        }


def verify_recursion_consistency(g_max: int, n_max_scan: int) -> ConsistencyReport:
    """Single-step recursion and provenance replay over the scan range."""
    if g_max < 0 or n_max_scan < 1:
        raise TNumberError("scan limits must be positive")
    report = ConsistencyReport(g_max, n_max_scan)
    table = TBoundTable.build(g_max, n_max_scan + 1)
    for (g, n), b in sorted(table.bounds.items()):
        if n > n_max_scan:
            continue
        report.checked += 1
        if replay(b) != b.bound:
            report.failures.append({"g": g, "n": n, "reason": "replay"})
        nxt = table.bounds[g, n + 1]
        if nxt.bound > (g + 1) * b.bound:
            report.failures.append({
                "g": g, "n": n, "reason": "recursion",
                "bound": b.bound, "next": nxt.bound,
            })
        if nxt.base_n < b.base_n:
            report.failures.append({"g": g, "n": n, "reason": "provenance not monotone"})
    return report


def dominance_holds(g: int, m1: int, m2: int) -> bool:
    """Chaining two recursion steps never beats a single one."""
    return recursion_factor(g, m1) * recursion_factor(g, m2) >= recursion_factor(g, m1 + m2)


# Point trading on an elliptic curve modelled by a finite abelian group: the
# class of a degree d divisor sum n_i [P_i] is fixed by d and the group sum
# of n_i P_i, and each degree one class holds exactly one point.


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Z/n_1 x ... x Z/n_r with elements as tuples; zero is the origin."""

    orders: tuple[int, ...]

    def __post_init__(self):
        if not self.orders or any(o < 1 for o in self.orders):
            raise ValueError(f"invalid cyclic orders {self.orders}")

    @classmethod
    def parse(cls, text: str) -> "FiniteAbelianGroup":
        parts = [p for p in text.replace(",", "x").split("x") if p.strip()]
        try:
            return cls(tuple(int(p) for p in parts))
        except ValueError as exc:
            raise ValueError(f"bad group {text!r}") from exc

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    @property
    def zero(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)

    def element(self, x) -> tuple[int, ...]:
        if isinstance(x, int):
            x = (x,)
        x = tuple(x)
        if len(x) != len(self.orders):
            raise ValueError(f"element {x} does not match group {self.orders}")
        return tuple(a % o for a, o in zip(x, self.orders))

    def add(self, x, y):
        return tuple((a + b) % o for a, b, o in zip(x, y, self.orders))

    def neg(self, x):
        return tuple(-a % o for a, o in zip(x, self.orders))

    def mul(self, k: int, x):
        return tuple(k * a % o for a, o in zip(x, self.orders))

    def sum(self, xs):
        out = self.zero
        for x in xs:
            out = self.add(out, x)
        return out

    def __str__(self) -> str:
        return "x".join(map(str, self.orders))


@dataclass(frozen=True)
class TradeStep:
    stage: int
    replaced: tuple[int, ...]
    solution: tuple[int, ...]
    # solution + stage * replaced == (stage + 1) * anchor, in the group
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]

    def as_dict(self) -> dict:
        return {
            "stage": self.stage,
            "replaced": list(self.replaced),
            "solution": list(self.solution),
            "lhs": list(self.lhs),
            "rhs": list(self.rhs),
        }


@dataclass(frozen=True)
class TradeTrace:
    group: FiniteAbelianGroup
    anchor: tuple[int, ...]
    m: int
    tuples: tuple[tuple[tuple[int, ...], ...], ...]
    target: tuple[tuple[int, ...], ...]
    steps: tuple[TradeStep, ...]

    def coordinate_sums(self) -> list[tuple[int, ...]]:
        return [self.group.sum(Q[i] for Q in self.tuples) for i in range(self.m)]

    def check(self) -> list[str]:
        """Return the violated invariants (empty when all hold)."""
        G = self.group
        problems = []
        if len(self.tuples) != self.m + 1:
            problems.append(f"expected {self.m + 1} tuples, got {len(self.tuples)}")
        expected = G.mul(self.m + 1, self.anchor)
        for i, s in enumerate(self.coordinate_sums()):
            if s != expected:
                problems.append(f"coordinate {i + 1} sums to {s}, expected {expected}")
        for st in self.steps:
            got = G.add(st.solution, G.mul(st.stage, st.replaced))
            if got != st.lhs or st.lhs != st.rhs or st.rhs != G.mul(st.stage + 1, self.anchor):
                problems.append(f"stage {st.stage} identity fails")
        return problems

    def as_dict(self) -> dict:
        return {
            "group": list(self.group.orders),
            "anchor": list(self.anchor),
            "m": self.m,
            "tuples": [[list(x) for x in Q] for Q in self.tuples],
            "target": [list(x) for x in self.target],
            "steps": [s.as_dict() for s in self.steps],
            "coordinate_sums": [list(s) for s in self.coordinate_sums()],
        }


def trade_points(group: FiniteAbelianGroup, anchor, start) -> TradeTrace:
    """Trade the coordinates of ``start`` for the anchor one at a time.

    At stage ``i`` the point ``x`` solving ``[x] = (i+1)[anchor] - i[x_i]``
    replaces coordinate ``i``, earlier coordinates already sitting at the
    anchor; the ``m + 1`` tuples then sum to ``(m+1)`` times the constant
    anchor tuple.
    """
    if group.order < 2:
        raise ValueError("group must have order at least 2")
    anchor = group.element(anchor)
    start = tuple(group.element(x) for x in start)
    m = len(start)
    if m < 1:
        raise ValueError("need at least one coordinate")
    tuples = [start]
    steps = []
    for i in range(1, m + 1):
        x_i = start[i - 1]
        rhs = group.mul(i + 1, anchor)
        sol = group.add(rhs, group.neg(group.mul(i, x_i)))
        Q = (anchor,) * (i - 1) + (sol,) + start[i:]
        tuples.append(Q)
        steps.append(TradeStep(i, x_i, sol, group.add(sol, group.mul(i, x_i)), rhs))
    return TradeTrace(group, anchor, m, tuple(tuples), (anchor,) * m, tuple(steps))
