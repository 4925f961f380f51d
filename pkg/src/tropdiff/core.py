"""Tropical value domain, exponent supports and their valuations.

A support ``S`` is a subset of the non-negative integers, stored as a
finite sorted part plus an optional cofinite tail ``[m, oo)``.  The
valuation ``valuation(S, j)`` is the order at ``t = 0`` of the ``j``-th
derivative of a power series whose exponents are exactly ``S``.
"""
from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass
from typing import Iterable, Optional, Union

__all__ = [
    "INF",
    "MAX_EXTNAT",
    "ExtNat",
    "is_inf",
    "tadd",
    "check_extnat",
    "Support",
    "make_support",
    "valuation",
    "valuation_vector",
    "join",
    "is_subset",
    "canonicalize",
]

MAX_EXTNAT = 2**63 - 1


class Infinity:
    """The tropical zero: absorbing for ``+``, neutral for ``min``.

    There is exactly one instance, :data:`INF`.  It compares greater than
    every integer, so ``min`` and ``sorted`` work on mixed values.
    """

    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (Infinity, ())

    def __hash__(self):
        return hash(float("inf"))

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__


INF = Infinity()

ExtNat = Union[int, Infinity]


def is_inf(x) -> bool:
    return x is INF


def check_extnat(x, what="value") -> ExtNat:
    """Validate ``x`` as an ExtNat and return it (bools are rejected)."""
    if x is INF:
        return x
    if isinstance(x, bool) or not isinstance(x, int):
        raise TypeError(f"{what} must be a non-negative int or INF, got {x!r}")
    if x < 0:
        raise ValueError(f"{what} must be non-negative, got {x}")
    if x > MAX_EXTNAT:
        raise OverflowError(f"{what} {x} does not fit in 64 bits")
    return x


def tadd(*terms: ExtNat) -> ExtNat:
    """Tropical product (ordinary sum) with overflow checking."""
    total = 0
    for t in terms:
        if t is INF:
            return INF
        total += t
    if total > MAX_EXTNAT:
        raise OverflowError(f"ExtNat overflow: {total} exceeds 2**63 - 1")
    return total


@dataclass(frozen=True)
class Support:
    """A set of non-negative integers: ``finite`` plus all integers ``>= tail``.

    The constructor normalizes: duplicates are removed, the finite part is
    sorted, and finite elements at or above ``tail`` are dropped.
    """

    finite: tuple = ()
    tail: Optional[int] = None

    def __post_init__(self):
        fin = set()
        for x in self.finite:
            fin.add(check_extnat(x, "support element"))
        if INF in fin:
            raise ValueError("support elements must be finite")
        tail = self.tail
        if tail is not None:
            check_extnat(tail, "tail start")
            if tail is INF:
                raise ValueError("tail start must be finite; use tail=None")
            fin = {x for x in fin if x < tail}
        object.__setattr__(self, "finite", tuple(sorted(fin)))

    def __contains__(self, s) -> bool:
        if self.tail is not None and s >= self.tail:
            return True
        k = bisect_left(self.finite, s)
        return k < len(self.finite) and self.finite[k] == s

    @property
    def is_empty(self) -> bool:
        return not self.finite and self.tail is None

    @property
    def is_finite(self) -> bool:
        return self.tail is None

    def least_member_at_least(self, j: int) -> Optional[int]:
        """Smallest ``s in S`` with ``s >= j``, or ``None``."""
        k = bisect_left(self.finite, j)
        if k < len(self.finite):
            return self.finite[k]
        if self.tail is not None:
            return max(self.tail, j)
        return None

    def horizon(self) -> int:
        """One past the largest number that appears in the representation."""
        top = max(self.finite, default=-1)
        if self.tail is not None:
            top = max(top, self.tail)
        return top + 1

    def __str__(self):
        if self.is_empty:
            return "empty"
        fin = "".join(f" {x}" for x in self.finite)
        tail = "none" if self.tail is None else str(self.tail)
        return f"fin{fin} tail {tail}"


def make_support(finite: Iterable[int] = (), tail: Optional[int] = None) -> Support:
    return Support(tuple(finite), tail)


def valuation(S: Support, j: int) -> ExtNat:
    """``min{s - j : s in S, s >= j}``, or ``INF`` when no such ``s`` exists."""
    s = S.least_member_at_least(j)
    return INF if s is None else s - j


def valuation_vector(S: Support, r: int) -> tuple:
    return tuple(valuation(S, j) for j in range(r + 1))


def join(S: Support, T: Support) -> Support:
    """Set union; its valuation is the pointwise minimum of the two."""
    tails = [t for t in (S.tail, T.tail) if t is not None]
    return Support(S.finite + T.finite, min(tails) if tails else None)


def is_subset(S: Support, T: Support) -> bool:
    if not all(s in T for s in S.finite):
        return False
    if S.tail is None:
        return True
    if T.tail is None:
        return False
    # [S.tail, T.tail) must be covered by T's finite part
    return all(s in T for s in range(S.tail, T.tail))


def canonicalize(S: Support, r: int) -> Support:
    """Fill in every integer above the least member ``>= r``.

    Valuations at orders ``0..r`` are unchanged, and the result has its
    finite part inside ``{0, ..., r-1}``.
    """
    s = S.least_member_at_least(r)
    if s is None:
        return S
    low = [x for x in S.finite if x < r]
    if S.tail is not None and S.tail < r:
        low.extend(range(S.tail, r))
    return Support(tuple(low), s)
