"""Tropical non-linear differential equations.

An equation is a formal minimum of monomials ``a + x_{i1}^{(j1)} + ...``
where the factors form a multiset of slots ``(i, j)``.  A support family
solves the equation when the minimum of the monomial values is infinite
or is attained by at least two distinct monomials.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .core import INF, MAX_EXTNAT, ExtNat, Support, check_extnat, tadd, valuation
from .errors import ResultTooLarge

__all__ = [
    "Monomial",
    "NonlinearEquation",
    "NonlinearSystem",
    "monomial_value",
    "equation_values",
    "is_solution_nl",
    "bound_N1",
    "verify_certificate",
]


@dataclass(frozen=True)
class Monomial:
    """``coeff + sum of x_i^(j) over factors``; no factors means a free term."""

    coeff: int
    factors: tuple = ()

    def __post_init__(self):
        check_extnat(self.coeff, "monomial coefficient")
        if self.coeff is INF:
            raise ValueError("monomial coefficients are finite; omit the monomial instead")
        fac = []
        for slot in self.factors:
            i, j = slot
            if isinstance(i, bool) or not isinstance(i, int) or i < 1:
                raise ValueError(f"variable index must be >= 1, got {i!r}")
            if isinstance(j, bool) or not isinstance(j, int) or j < 0:
                raise ValueError(f"derivative order must be >= 0, got {j!r}")
            fac.append((i, j))
        object.__setattr__(self, "factors", tuple(sorted(fac)))

    @property
    def degree(self) -> int:
        return len(self.factors)


class NonlinearEquation:
    """Monomials with identical factor multisets are merged by minimum coefficient."""

    __slots__ = ("monomials",)

    def __init__(self, monomials: Iterable[Monomial] = ()):
        best = {}
        for m in monomials:
            if m.factors not in best or m.coeff < best[m.factors]:
                best[m.factors] = m.coeff
        # free monomial last, the rest by degree then slots
        order = sorted(best, key=lambda f: (len(f) == 0, len(f), f))
        self.monomials = tuple(Monomial(best[f], f) for f in order)

    def __eq__(self, other):
        return isinstance(other, NonlinearEquation) and self.monomials == other.monomials

    def __hash__(self):
        return hash(self.monomials)

    def __repr__(self):
        return f"NonlinearEquation({list(self.monomials)!r})"

    @property
    def degree(self) -> int:
        return max((m.degree for m in self.monomials), default=0)

    def slots(self):
        return {s for m in self.monomials for s in m.factors}


@dataclass(frozen=True)
class NonlinearSystem:
    n: int
    r: int
    equations: tuple = ()

    def __post_init__(self):
        if self.n < 0 or self.r < 0:
            raise ValueError("n and r must be non-negative")
        eqs = tuple(self.equations)
        for l, eq in enumerate(eqs, 1):
            if not isinstance(eq, NonlinearEquation):
                raise TypeError(f"equation {l} is not a NonlinearEquation")
            for i, j in eq.slots():
                if not (1 <= i <= self.n and 0 <= j <= self.r):
                    raise ValueError(
                        f"equation {l}: slot x{i}^{j} outside n={self.n}, r={self.r}"
                    )
        object.__setattr__(self, "equations", eqs)

    @property
    def k(self) -> int:
        return len(self.equations)

    @property
    def d(self) -> int:
        return max((eq.degree for eq in self.equations), default=0)

    @property
    def M(self) -> int:
        return max((m.coeff for eq in self.equations for m in eq.monomials), default=0)


def monomial_value(m: Monomial, supports: Sequence[Support]) -> ExtNat:
    return tadd(m.coeff, *(valuation(supports[i - 1], j) for i, j in m.factors))


def equation_values(eq: NonlinearEquation, supports: Sequence[Support]) -> list:
    return [monomial_value(m, supports) for m in eq.monomials]


def _satisfied(values) -> bool:
    low = min(values, default=INF)
    return low is INF or values.count(low) >= 2


def is_solution_nl(system: NonlinearSystem, supports: Sequence[Support]) -> bool:
    if len(supports) != system.n:
        raise ValueError(f"expected {system.n} supports, got {len(supports)}")
    return all(_satisfied(equation_values(eq, supports)) for eq in system.equations)


def bound_N1(n: int, r: int, M: int, d: int) -> int:
    """Cap on tail starts of some solution of a solvable non-linear system.

    ``n! * (M + r*d) * d**n``.
    """
    if d < 1:
        raise ValueError("bound_N1 needs degree d >= 1")
    value = math.factorial(n) * (M + r * d) * d**n
    if value > MAX_EXTNAT:
        raise ResultTooLarge(f"bound_N1({n}, {r}, {M}, {d}) = {value} exceeds 2**63 - 1")
    return value


def default_tail_cap(system: NonlinearSystem) -> int:
    return bound_N1(system.n, system.r, system.M, max(system.d, 1))


def verify_certificate(
    system: NonlinearSystem,
    supports: Sequence[Support],
    tail_cap: Optional[int] = None,
) -> bool:
    """Check a short solution certificate.

    Each support must have its finite part inside ``[0, r]`` and a tail
    start (if any) at most ``tail_cap`` (``bound_N1`` by default); then the
    supports must solve the system.  Runs in time polynomial in the input.
    """
    if tail_cap is None:
        tail_cap = default_tail_cap(system)
    if len(supports) != system.n:
        return False
    for S in supports:
        if S.finite and S.finite[-1] > system.r:
            return False
        if S.tail is not None and S.tail > tail_cap:
            return False
    return is_solution_nl(system, supports)
