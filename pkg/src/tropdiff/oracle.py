"""Exhaustive ground truth on desk-scale instances.

Every solution can be replaced by a canonical one (finite part below
``r`` plus an optional tail ``[m, oo)``) with the same valuations at
orders ``0..r``, so enumerating canonical supports with bounded tail
starts decides solvability and yields the minimal solution as the union
of everything found.  Candidates are evaluated in bulk with numpy; no
discard logic from the solvers is reused.
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from typing import Iterator, Optional

import numpy as np

from .core import INF, Support, join, valuation_vector
from .errors import BudgetExceeded
from .linear import LinearSystem, bound_safe, is_solution
from .nonlinear import NonlinearSystem, default_tail_cap

__all__ = [
    "DEFAULT_BUDGET",
    "EnumerationCaps",
    "OracleLinearResult",
    "count_canonical_supports",
    "enumerate_canonical_supports",
    "oracle_minimal_linear",
    "oracle_solve_nonlinear",
]

DEFAULT_BUDGET = 20_000_000
_CHUNK = 1 << 18
_EXACT = 2**52  # float64 holds every integer below this exactly


@dataclass(frozen=True)
class EnumerationCaps:
    """Finite parts range over subsets of ``{0..r-1}``; tails over ``[r, tail_cap]``.

    ``tail_cap=None`` disables tails.
    """

    r: int
    tail_cap: Optional[int] = None

    def __post_init__(self):
        if self.tail_cap is not None and self.tail_cap < self.r:
            raise ValueError(f"tail_cap {self.tail_cap} < r {self.r}")


def count_canonical_supports(caps: EnumerationCaps) -> int:
    tails = 1 if caps.tail_cap is None else caps.tail_cap - caps.r + 2
    return 2**caps.r * tails


def _lex_subsets(lo: int, hi: int):
    yield ()
    for x in range(lo, hi):
        for rest in _lex_subsets(x + 1, hi):
            yield (x,) + rest


def enumerate_canonical_supports(
    caps: EnumerationCaps, budget: int = DEFAULT_BUDGET
) -> Iterator[Support]:
    """Each canonical support within ``caps`` exactly once.

    Order: finite parts lexicographically as sorted tuples, and for each
    finite part the tail options ``none, r, r+1, ..., tail_cap``.
    """
    if count_canonical_supports(caps) > budget:
        raise BudgetExceeded(
            f"{count_canonical_supports(caps)} supports per variable exceed budget {budget}"
        )
    tails = [None]
    if caps.tail_cap is not None:
        tails += list(range(caps.r, caps.tail_cap + 1))
    for fin in _lex_subsets(0, caps.r):
        for t in tails:
            yield Support(fin, t)


@functools.lru_cache(maxsize=32)
def _candidate_table(caps: EnumerationCaps, budget: int):
    """Candidate supports and their valuation matrix (``inf`` for infinity)."""
    supports = tuple(enumerate_canonical_supports(caps, budget))
    V = np.array(
        [[np.inf if v is INF else float(v) for v in valuation_vector(S, caps.r)] for S in supports],
        dtype=np.float64,
    ).reshape(len(supports), caps.r + 1)
    V.setflags(write=False)
    return supports, V


def _check_exact(largest: int):
    if largest >= _EXACT:
        raise OverflowError(f"values up to {largest} cannot be evaluated exactly")


def _grid_size(n: int, per_var: int, budget: int) -> int:
    total = per_var**n
    if total > budget:
        raise BudgetExceeded(f"{per_var}^{n} = {total} candidate tuples exceed budget {budget}")
    return total


@dataclass
class OracleLinearResult:
    solvable: bool
    supports: Optional[tuple]
    solution_count: int
    join_is_solution: Optional[bool] = None
    solutions: list = field(default_factory=list)

    def summary(self) -> str:
        if not self.solvable:
            return "UNSAT"
        return "SAT " + "; ".join(f"x{i}: {S}" for i, S in enumerate(self.supports, 1))


def oracle_minimal_linear(
    system: LinearSystem,
    caps: Optional[EnumerationCaps] = None,
    budget: int = DEFAULT_BUDGET,
    keep_solutions: bool = False,
) -> OracleLinearResult:
    """Union of all canonical solutions within ``caps``.

    Default ``caps`` use ``bound_safe`` as the tail cap.  The union is
    checked to be a solution itself (``join_is_solution``) rather than
    assumed.
    """
    n, r = system.n, system.r
    if caps is None:
        caps = EnumerationCaps(r, bound_safe(n, r, system.M))
    if caps.r != r:
        raise ValueError("caps.r must equal system.r")
    _check_exact(system.M + (caps.tail_cap or caps.r))
    supports, V = _candidate_table(caps, budget)
    C = len(supports)
    _grid_size(n, C, budget)
    shape = (C,) * n

    ok = np.ones(shape, dtype=bool)
    for eq in system.equations:
        # per variable: min over its terms and how many terms attain it
        low = np.full(shape, np.inf if eq.free is INF else float(eq.free))
        parts = []
        for i in range(1, n + 1):
            row = [(j, a) for (ii, j), a in eq.terms if ii == i]
            if not row:
                continue
            vals = np.stack([a + V[:, j] for j, a in row], axis=1)
            m = vals.min(axis=1)
            c = (vals == m[:, None]).sum(axis=1)
            axis_shape = [1] * n
            axis_shape[i - 1] = C
            m, c = m.reshape(axis_shape), c.reshape(axis_shape)
            parts.append((m, c))
            low = np.minimum(low, m)
        count = np.zeros(shape, dtype=np.int64)
        if eq.free is not INF:
            count += low == float(eq.free)
        for m, c in parts:
            count += np.where(m == low, c, 0)
        ok &= ~np.isfinite(low) | (count >= 2)

    hits = np.argwhere(ok)
    result = OracleLinearResult(False, None, len(hits))
    if not len(hits):
        return result
    union = []
    for i in range(n):
        S = Support()
        for c in np.unique(hits[:, i]):
            S = join(S, supports[c])
        union.append(S)
    result.solvable = True
    result.supports = tuple(union)
    result.join_is_solution = is_solution(system, result.supports)
    if keep_solutions:
        result.solutions = [tuple(supports[c] for c in h) for h in hits]
    return result


def oracle_solve_nonlinear(
    system: NonlinearSystem,
    caps: Optional[EnumerationCaps] = None,
    budget: int = DEFAULT_BUDGET,
) -> Optional[tuple]:
    """First solving tuple in enumeration order (``x1`` most significant), or ``None``."""
    n, r = system.n, system.r
    if caps is None:
        caps = EnumerationCaps(r, default_tail_cap(system))
    if caps.r != r:
        raise ValueError("caps.r must equal system.r")
    _check_exact(system.M + system.d * (caps.tail_cap or caps.r))
    supports, V = _candidate_table(caps, budget)
    C = len(supports)
    total = _grid_size(n, C, budget)
    if n == 0:
        return () if _nl_ok(system, [], np.zeros(1, dtype=np.int64)).all() else None
    for lo in range(0, total, _CHUNK):
        flat = np.arange(lo, min(total, lo + _CHUNK))
        idx = np.unravel_index(flat, (C,) * n)
        ok = _nl_ok(system, [V[ix] for ix in idx], flat)
        where = np.flatnonzero(ok)
        if where.size:
            w = where[0]
            return tuple(supports[int(ix[w])] for ix in idx)
    return None


def _nl_ok(system: NonlinearSystem, vals_by_var, flat):
    ok = np.ones(len(flat), dtype=bool)
    for eq in system.equations:
        if not eq.monomials:
            continue
        cols = []
        for mono in eq.monomials:
            v = np.full(len(flat), float(mono.coeff))
            for i, j in mono.factors:
                v = v + vals_by_var[i - 1][:, j]
            cols.append(v)
        vals = np.stack(cols, axis=1)
        low = vals.min(axis=1)
        count = (vals == low[:, None]).sum(axis=1)
        ok &= ~np.isfinite(low) | (count >= 2)
    return ok
