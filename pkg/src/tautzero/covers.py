"""Cyclic covers of P^1 branched over three points.

A cover is described by its degree ``k`` and the monodromies ``(a, b, c)``
around the three branch points, as residues modulo ``k``.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd


class CoverError(ValueError):
    """Invalid monodromy datum."""


class ZeroMonodromy(CoverError):
    pass


class SumNotZero(CoverError):
    pass


@dataclass(frozen=True, order=True)
class CoverData:
    k: int
    mono: tuple[int, int, int]

    def as_dict(self) -> dict:
        return {"k": self.k, "mono": list(self.mono)}


@dataclass(frozen=True)
class CoverInvariants:
    genus: int
    ram_counts: tuple[int, int, int]
    n_ram: int
    totally_ramified: bool
    # gcd(k, a, b, c) == 1; the formula genus is that of the (possibly
    # disconnected) curve otherwise
    connected: bool

    def as_dict(self) -> dict:
        return {
            "genus": self.genus,
            "ram_counts": list(self.ram_counts),
            "n_ram": self.n_ram,
            "totally_ramified": self.totally_ramified,
            "connected": self.connected,
        }


class NotNormalizable:
    """Outcome of normalization when no monodromy is a unit mod k."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NotNormalizable"


NOT_NORMALIZABLE = NotNormalizable()


def validate(k: int, mono) -> CoverData:
    """Check and normalize a monodromy datum.

    Entries are reduced to representatives in ``{1, ..., k-1}``.

    >>> validate(3, (1, 1, 1))
    CoverData(k=3, mono=(1, 1, 1))
    >>> validate(5, (-3, 7, 1))
    CoverData(k=5, mono=(2, 2, 1))
    """
    k = int(k)
    if k < 2:
        raise CoverError(f"degree must be at least 2, got {k}")
    mono = tuple(int(x) for x in mono)
    if len(mono) != 3:
        raise CoverError(f"expected three monodromies, got {len(mono)}")
    residues = tuple(x % k for x in mono)
    if 0 in residues:
        raise ZeroMonodromy(
            f"monodromy {mono[residues.index(0)]} is 0 mod {k}; "
            "the cover would not be branched over three points")
    if sum(residues) % k:
        raise SumNotZero(f"{'+'.join(map(str, residues))} is not 0 mod {k}")
    return CoverData(k, residues)


def invariants(c: CoverData) -> CoverInvariants:
    k = c.k
    counts = tuple(gcd(k, x) for x in c.mono)
    n_ram = sum(counts)
    # Riemann-Hurwitz: 2g - 2 = -2k + sum_i (k - gcd(k, m_i))
    twice_g_minus_2 = k - n_ram
    if twice_g_minus_2 % 2:
        raise ArithmeticError(f"odd Euler characteristic for {c}")
    genus = twice_g_minus_2 // 2 + 1
    if genus < 0:
        raise ArithmeticError(f"negative genus for {c}")
    return CoverInvariants(
        genus=genus,
        ram_counts=counts,
        n_ram=n_ram,
        totally_ramified=min(counts) == 1,
        connected=gcd(k, *c.mono) == 1,
    )


def units(k: int) -> list[int]:
    return [u for u in range(1, k) if gcd(u, k) == 1]


def scale(c: CoverData, u: int) -> CoverData:
    """Apply the automorphism ``x -> u*x`` of Z/kZ."""
    if gcd(u, c.k) != 1:
        raise CoverError(f"{u} is not a unit mod {c.k}")
    return CoverData(c.k, tuple(u * x % c.k for x in c.mono))


def unit_orbit(c: CoverData) -> list[CoverData]:
    """One datum per unit of Z/kZ, in increasing order of the unit.

    Distinct units can give equal data when gcd(k, a, b, c) > 1, so the
    list may repeat entries; its length is always phi(k).
    """
    return [scale(c, u) for u in units(c.k)]


def normalize_total_ramification(c: CoverData):
    """Rescale and permute so the first monodromy is 1.

    Returns the lexicographically least ``(1, b, c)`` reachable by choosing
    a coprime entry, scaling by its inverse and permuting the other two,
    or ``NOT_NORMALIZABLE`` when no entry is coprime to ``k``.
    """
    k = c.k
    best = None
    for i, x in enumerate(c.mono):
        if gcd(x, k) != 1:
            continue
        u = pow(x, -1, k)
        rest = sorted(u * y % k for j, y in enumerate(c.mono) if j != i)
        cand = (1, rest[0], rest[1])
        if best is None or cand < best:
            best = cand
    if best is None:
        return NOT_NORMALIZABLE
    assert sum(best) == k, best
    return CoverData(k, best)


def is_normalized(c: CoverData) -> bool:
    return c.mono[0] == 1 and sum(c.mono) == c.k


def normalized_data(k: int):
    """All ``(k, (1, b, c))`` with ``b, c >= 1`` and ``1 + b + c = k``."""
    for b in range(1, k - 1):
        yield CoverData(k, (1, b, k - 1 - b))


def valid_data(k: int):
    """Every valid datum of degree ``k``, ordered lexicographically."""
    for a in range(1, k):
        for b in range(1, k):
            cc = (-a - b) % k
            if cc:
                yield CoverData(k, (a, b, cc))
