"""Formal 0-cycles on S^n as integer combinations of tuples of point symbols.

The point of this module is the inclusion-exclusion identity expressing the
full symmetrization of ``(p_1, ..., p_n)`` through diagonal push-forwards of
products of ``theta = [p_1] + ... + [p_n]``:

    Sigma(p) = sum over set partitions P of {1..n} of
               mu(P) * (Delta_P)_* (theta x ... x theta)

with ``mu(P) = prod over blocks B of (-1)^(|B|-1) (|B|-1)!``.
"""
from __future__ import annotations

from collections import defaultdict
from itertools import permutations, product
from math import factorial, prod
from typing import Hashable, Iterable, Iterator, Mapping

DEFAULT_LIMIT = 6

SetPartition = tuple[tuple[int, ...], ...]


class CycleError(ValueError):
    pass


class ArityMismatch(CycleError):
    pass


class DuplicateSymbols(CycleError):
    pass


class LimitExceeded(CycleError):
    pass


class FormalCycle:
    """Finite Z-linear combination of n-tuples of symbols.

    >>> x = FormalCycle.point("a") + FormalCycle.point("b")
    >>> (x * x).terms[("a", "b")]
    1
    """

    __slots__ = ("arity", "terms")

    def __init__(self, arity: int, terms: Mapping[tuple, int] | Iterable = ()):
        self.arity = arity
        acc: dict[tuple, int] = defaultdict(int)
        items = terms.items() if isinstance(terms, Mapping) else terms
        for key, coeff in items:
            key = tuple(key)
            if len(key) != arity:
                raise ArityMismatch(f"tuple {key} in a cycle of arity {arity}")
            acc[key] += coeff
        self.terms = {k: v for k, v in acc.items() if v}

    @classmethod
    def point(cls, *symbols: Hashable) -> "FormalCycle":
        return cls(len(symbols), {tuple(symbols): 1})

    @classmethod
    def zero(cls, arity: int) -> "FormalCycle":
        return cls(arity)

    def _check(self, other: "FormalCycle") -> None:
        if self.arity != other.arity:
            raise ArityMismatch(f"arity {self.arity} vs {other.arity}")

    def __add__(self, other: "FormalCycle") -> "FormalCycle":
        self._check(other)
        terms = dict(self.terms)
        for k, v in other.terms.items():
            terms[k] = terms.get(k, 0) + v
        return FormalCycle(self.arity, terms)

    def __neg__(self) -> "FormalCycle":
        return FormalCycle(self.arity, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "FormalCycle") -> "FormalCycle":
        return self + (-other)

    def __rmul__(self, scalar: int) -> "FormalCycle":
        return FormalCycle(self.arity, {k: scalar * v for k, v in self.terms.items()})

    def __mul__(self, other):
        """Exterior product ``x x y`` on ``S^(a+b)``; integers scale."""
        if isinstance(other, int):
            return other * self
        terms = {}
        for k1, v1 in self.terms.items():
            for k2, v2 in other.terms.items():
                terms[k1 + k2] = v1 * v2
        return FormalCycle(self.arity + other.arity, terms)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FormalCycle):
            return NotImplemented
        return self.arity == other.arity and self.terms == other.terms

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return f"FormalCycle({self.arity}, 0)"
        parts = [f"{v}*{k}" for k, v in sorted(self.terms.items(), key=repr)]
        return " + ".join(parts)

    def degree(self) -> int:
        return sum(self.terms.values())

    def as_dict(self) -> dict:
        return {
            "arity": self.arity,
            "terms": [[list(map(str, k)), v]
                      for k, v in sorted(self.terms.items(), key=lambda kv: tuple(map(str, kv[0])))],
        }


def theta(symbols: Iterable[Hashable]) -> FormalCycle:
    """The arity-1 cycle ``[p_1] + ... + [p_n]``."""
    return FormalCycle(1, (((s,), 1) for s in symbols))


def power(x: FormalCycle, ell: int) -> FormalCycle:
    if x.arity != 1:
        raise ArityMismatch("exterior powers are taken of arity-1 cycles")
    out = FormalCycle(0, {(): 1})
    for _ in range(ell):
        out = out * x
    return out


def set_partitions(n: int) -> Iterator[SetPartition]:
    """Set partitions of ``{1..n}``; blocks sorted, ordered by least element."""
    if n == 0:
        yield ()
        return

    def rec(i: int, blocks: list[list[int]]):
        if i > n:
            yield tuple(tuple(b) for b in blocks)
            return
        for b in blocks:
            b.append(i)
            yield from rec(i + 1, blocks)
            b.pop()
        blocks.append([i])
        yield from rec(i + 1, blocks)
        blocks.pop()

    yield from rec(1, [])


def normalize_partition(P: Iterable[Iterable[int]]) -> SetPartition:
    return tuple(sorted(tuple(sorted(b)) for b in P))


def partition_coefficient(P: SetPartition) -> int:
    return prod((-1) ** (len(b) - 1) * factorial(len(b) - 1) for b in P)


def growth_string(P: SetPartition) -> tuple[int, ...]:
    """Block index of each element, blocks numbered by least element."""
    n = sum(len(b) for b in P)
    out = [0] * n
    for bi, b in enumerate(P):
        for i in b:
            out[i - 1] = bi
    return tuple(out)


def partition_coefficients(n: int) -> list[tuple[SetPartition, int]]:
    """Coefficients of the diagonal expansion, finest partitions first.

    >>> [c for _, c in partition_coefficients(3)]
    [1, -1, -1, -1, 2]
    """
    if n < 1:
        raise CycleError(f"n must be positive, got {n}")
    parts = sorted(set_partitions(n), key=lambda P: (-len(P), growth_string(P)))
    return [(P, partition_coefficient(P)) for P in parts]


def diagonal_pushforward(P, x: FormalCycle) -> FormalCycle:
    """Push ``x`` on ``S^|P|`` forward along the diagonal ``S^|P| -> S^n``.

    Coordinate ``i`` of ``x`` is copied into every position of block ``i``,
    blocks being ordered by their least element.
    """
    P = normalize_partition(P)
    if x.arity != len(P):
        raise ArityMismatch(f"cycle of arity {x.arity} on a partition with {len(P)} blocks")
    positions = [i for b in P for i in b]
    n = len(positions)
    if sorted(positions) != list(range(1, n + 1)):
        raise CycleError(f"{P} is not a set partition of 1..{n}")
    slot = [0] * n
    for bi, b in enumerate(P):
        for i in b:
            slot[i - 1] = bi
    return FormalCycle(n, ((tuple(y[s] for s in slot), v) for y, v in x.terms.items()))


def symmetrize(p) -> FormalCycle:
    p = tuple(p)
    if len(set(p)) != len(p):
        raise DuplicateSymbols(f"symbols {p} are not pairwise distinct")
    return FormalCycle(len(p), ((q, 1) for q in permutations(p)))


def blockwise_expansion(th: FormalCycle, n: int) -> FormalCycle:
    """``sum_P mu(P) (Delta_P)_* theta^(x|P|)``; depends on ``theta`` only."""
    acc: dict[tuple, int] = defaultdict(int)
    powers = {}
    for P, coeff in partition_coefficients(n):
        ell = len(P)
        if ell not in powers:
            powers[ell] = power(th, ell)
        for key, v in diagonal_pushforward(P, powers[ell]).terms.items():
            acc[key] += coeff * v
    return FormalCycle(n, acc)


def verify_blockwise_identity(p, limit: int = DEFAULT_LIMIT) -> bool:
    p = tuple(p)
    if len(p) > limit:
        raise LimitExceeded(f"n = {len(p)} exceeds the brute-force limit {limit}")
    return symmetrize(p) == blockwise_expansion(theta(p), len(p))


def generic_symbols(n: int) -> tuple[str, ...]:
    """``p1, ..., pn``."""
    return tuple(f"p{i}" for i in range(1, n + 1))


def kernel_partition(q: tuple) -> SetPartition:
    """Set partition of positions ``1..n`` by equality of entries."""
    blocks: dict = {}
    for i, s in enumerate(q, start=1):
        blocks.setdefault(s, []).append(i)
    return normalize_partition(blocks.values())


def _refines(P: SetPartition, Q: SetPartition) -> bool:
    owner = {i: bi for bi, b in enumerate(Q) for i in b}
    return all(len({owner[i] for i in b}) == 1 for b in P)


def coefficients_by_elimination(n: int) -> dict[SetPartition, int]:
    """Solve for the expansion coefficients directly from tuple counts.

    With distinct symbols, ``(Delta_P)_* theta^(x|P|)`` is the sum of all
    tuples whose equality pattern is coarser than or equal to ``P``.  Asking
    the combination to equal the sum of injective tuples gives a triangular
    system over the refinement order, solved here from the finest partition
    upwards, with pattern classes read off actual tuples.
    """
    syms = generic_symbols(n)
    patterns = sorted({kernel_partition(q) for q in product(syms, repeat=n)},
                      key=lambda P: (-len(P), P))
    discrete = tuple((i,) for i in range(1, n + 1))
    coeff: dict[SetPartition, int] = {}
    for Q in patterns:
        below = sum(c for P, c in coeff.items() if _refines(P, Q))
        coeff[Q] = (1 if Q == discrete else 0) - below
    return coeff
