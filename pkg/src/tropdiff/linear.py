"""Systems of tropical linear differential equations and their minimal solution.

An equation ``min{a_i^(j) + x_i^(j), a}`` is stored sparsely: only finite
coefficients are kept.  Variables are numbered ``1..n``, derivative orders
``0..r``, and equations ``1..k`` in every user-facing index.
"""
from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence, Union

import numpy as np

from .core import INF, MAX_EXTNAT, ExtNat, Support, check_extnat, tadd, valuation
from .errors import NonHomogeneousDerivative
from .nonlinear import Monomial, NonlinearEquation, NonlinearSystem

__all__ = [
    "LinearEquation",
    "LinearSystem",
    "Satisfied",
    "ViolatedAtSlot",
    "ViolatedAtFree",
    "equation_status",
    "is_solution",
    "first_violation",
    "bound_paper",
    "bound_safe",
    "Bound",
    "StepKind",
    "StepRecord",
    "SolveReport",
    "solve_minimal",
    "tropical_derivative",
    "linear_to_nonlinear",
]


class LinearEquation:
    """``min`` over ``coeff + x_i^(j)`` terms and a free term.

    ``coeffs`` is a mapping ``{(i, j): a}`` or an iterable of ``((i, j), a)``
    pairs.  Repeated slots are merged by minimum and ``INF`` coefficients
    are dropped, so equal equations compare equal.
    """

    __slots__ = ("terms", "free")

    def __init__(self, coeffs: Union[Mapping, Iterable] = (), free: ExtNat = INF):
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        merged = {}
        for slot, a in items:
            i, j = slot
            if isinstance(i, bool) or not isinstance(i, int) or i < 1:
                raise ValueError(f"variable index must be >= 1, got {i!r}")
            if isinstance(j, bool) or not isinstance(j, int) or j < 0:
                raise ValueError(f"derivative order must be >= 0, got {j!r}")
            a = check_extnat(a, "coefficient")
            if a is INF:
                continue
            if (i, j) not in merged or a < merged[(i, j)]:
                merged[(i, j)] = a
        self.terms = tuple(sorted(merged.items()))
        self.free = check_extnat(free, "free term")

    def __eq__(self, other):
        return (
            isinstance(other, LinearEquation)
            and self.terms == other.terms
            and self.free == other.free
        )

    def __hash__(self):
        return hash((self.terms, self.free))

    def __repr__(self):
        return f"LinearEquation({dict(self.terms)!r}, free={self.free!r})"

    @property
    def coeffs(self) -> dict:
        return dict(self.terms)

    @property
    def is_homogeneous(self) -> bool:
        return self.free is INF

    def coeff(self, i: int, j: int) -> ExtNat:
        return self.coeffs.get((i, j), INF)


@dataclass(frozen=True)
class LinearSystem:
    n: int
    r: int
    equations: tuple = ()

    def __post_init__(self):
        if self.n < 0 or self.r < 0:
            raise ValueError("n and r must be non-negative")
        eqs = tuple(self.equations)
        for l, eq in enumerate(eqs, 1):
            if not isinstance(eq, LinearEquation):
                raise TypeError(f"equation {l} is not a LinearEquation")
            for (i, j), _ in eq.terms:
                if not (1 <= i <= self.n and 0 <= j <= self.r):
                    raise ValueError(
                        f"equation {l}: slot x{i}^{j} outside n={self.n}, r={self.r}"
                    )
        object.__setattr__(self, "equations", eqs)

    @property
    def k(self) -> int:
        return len(self.equations)

    @property
    def M(self) -> int:
        values = [a for eq in self.equations for _, a in eq.terms]
        values += [eq.free for eq in self.equations if eq.free is not INF]
        return max(values, default=0)

    @property
    def is_homogeneous(self) -> bool:
        return all(eq.is_homogeneous for eq in self.equations)


# -- solution criterion ------------------------------------------------------


@dataclass(frozen=True)
class Satisfied:
    value: ExtNat


@dataclass(frozen=True)
class ViolatedAtSlot:
    variable: int
    order: int
    value: int


@dataclass(frozen=True)
class ViolatedAtFree:
    value: int


Status = Union[Satisfied, ViolatedAtSlot, ViolatedAtFree]


def equation_status(eq: LinearEquation, supports: Sequence[Support]) -> Status:
    best = eq.free
    hits = [None] if best is not INF else []
    for (i, j), a in eq.terms:
        v = tadd(a, valuation(supports[i - 1], j))
        if v is INF:
            continue
        if v < best:
            best, hits = v, [(i, j)]
        elif v == best:
            hits.append((i, j))
    if best is INF or len(hits) >= 2:
        return Satisfied(best)
    if hits[0] is None:
        return ViolatedAtFree(best)
    i, j = hits[0]
    return ViolatedAtSlot(i, j, best)


def first_violation(system: LinearSystem, supports: Sequence[Support]):
    """``(l, status)`` for the first unsatisfied equation (1-based), else ``None``."""
    if len(supports) != system.n:
        raise ValueError(f"expected {system.n} supports, got {len(supports)}")
    for l, eq in enumerate(system.equations, 1):
        st = equation_status(eq, supports)
        if not isinstance(st, Satisfied):
            return l, st
    return None


def is_solution(system: LinearSystem, supports: Sequence[Support]) -> bool:
    return first_violation(system, supports) is None


# -- bounds ------------------------------------------------------------------


def _checked(value: int, what: str) -> int:
    if value > MAX_EXTNAT:
        raise OverflowError(f"{what} = {value} exceeds 2**63 - 1")
    return value


def bound_paper(n: int, r: int, M: int) -> int:
    """``(n-1)(M+r) + r``; too small in some cases, kept for experiments."""
    return _checked(max(n - 1, 0) * (M + r) + r, "bound_paper")


def bound_safe(n: int, r: int, M: int) -> int:
    """``2n(M+r) + r``: an upper bound on every tail start of the minimal solution."""
    return _checked(2 * n * (M + r) + r, "bound_safe")


class Bound(enum.Enum):
    PAPER = "paper"
    SAFE = "safe"


# -- reports -----------------------------------------------------------------


class StepKind(enum.Enum):
    FINITE_DISCARD = "FiniteDiscard"
    TAIL_ADVANCE = "TailAdvance"
    TAIL_DROP = "TailDrop"
    JUMP = "Jump"


@dataclass(frozen=True)
class StepRecord:
    """One discard step.

    ``start``/``stop`` delimit the discarded elements ``[start, stop)``;
    ``stop`` is ``None`` when everything from ``start`` on is dropped.
    """

    kind: StepKind
    variable: int
    equation: int
    start: int
    stop: Optional[int]
    jump_p: Optional[ExtNat] = None

    @property
    def size(self) -> Optional[int]:
        return None if self.stop is None else self.stop - self.start


@dataclass
class SolveReport:
    solvable: bool
    supports: Optional[tuple]
    unsolvable_equation: Optional[int] = None
    steps: list = field(default_factory=list)
    elements_discarded: int = 0
    bound: Optional[int] = None
    jumps: list = field(default_factory=list)

    @property
    def discard_count(self) -> int:
        return len(self.steps)

    @property
    def only_infinite_solution(self) -> bool:
        return self.solvable and all(S.is_empty for S in self.supports)

    def count(self, kind: StepKind) -> int:
        return sum(1 for s in self.steps if s.kind is kind)

    def summary(self) -> str:
        if not self.solvable:
            return f"UNSAT (equation {self.unsolvable_equation})"
        return "SAT " + "; ".join(f"x{i}: {S}" for i, S in enumerate(self.supports, 1))


# -- the general algorithm ---------------------------------------------------

# Exact float64 arithmetic is used for term values; all finite values must
# stay below this.
_EXACT = 2**52


class _TermTable:
    """Flat view of the finite terms of a system, grouped by equation."""

    def __init__(self, system: LinearSystem):
        rows = [
            (l, i - 1, j, a)
            for l, eq in enumerate(system.equations)
            for (i, j), a in eq.terms
        ]
        arr = np.array(rows, dtype=np.int64).reshape(-1, 4)
        self.eq = arr[:, 0]
        self.var = arr[:, 1]
        self.order = arr[:, 2]
        self.coef = arr[:, 3].astype(np.float64)
        self.free = np.array(
            [np.inf if eq.free is INF else float(eq.free) for eq in system.equations],
            dtype=np.float64,
        )
        if len(rows):
            self.starts = np.flatnonzero(np.r_[True, self.eq[1:] != self.eq[:-1]])
            self.seg_eq = self.eq[self.starts]
            self.ends = np.r_[self.starts[1:], len(rows)]
        else:
            self.starts = self.seg_eq = self.ends = np.zeros(0, dtype=np.int64)
        self.seg_of_eq = {int(l): s for s, l in enumerate(self.seg_eq)}

    def evaluate(self, V):
        vals = self.coef + V[self.var, self.order]
        eqmin = self.free.copy()
        count = np.zeros(len(self.free), dtype=np.int64)
        if vals.size:
            segmin = np.minimum.reduceat(vals, self.starts)
            eqmin[self.seg_eq] = np.minimum(eqmin[self.seg_eq], segmin)
            hits = (vals == eqmin[self.eq]).astype(np.int64)
            count[self.seg_eq] = np.add.reduceat(hits, self.starts)
        count += self.free == eqmin
        violated = np.isfinite(eqmin) & (count == 1)
        return vals, eqmin, violated

    def segment(self, l: int):
        s = self.seg_of_eq.get(l)
        if s is None:
            return slice(0, 0)
        return slice(int(self.starts[s]), int(self.ends[s]))


def _valuation_row(present, tail, r: int):
    """Valuations at orders ``0..r`` of ``{s < r : present[s]} | [tail, oo)``."""
    idx = np.arange(r + 1, dtype=np.float64)
    nxt = np.full(r + 1, np.inf)
    nxt[:r][present] = idx[:r][present]
    nxt = np.minimum.accumulate(nxt[::-1])[::-1]
    if tail is not None:
        nxt = np.minimum(nxt, float(tail))
    return nxt - idx


def _state_supports(present, tails) -> tuple:
    return tuple(
        Support(tuple(int(s) for s in np.flatnonzero(row)), tail)
        for row, tail in zip(present, tails)
    )


def solve_minimal(
    system: LinearSystem,
    bound: Union[Bound, str] = Bound.SAFE,
    batch_tail: bool = True,
) -> SolveReport:
    """Decide solvability and return the minimal solution.

    Start from ``T_i = {0..N}`` (as ``{0..r-1}`` plus the tail ``[r, N]``)
    and repeatedly discard the element forced out by the first equation
    whose minimum is attained exactly once.  A unique minimum at the free
    term proves unsolvability.  When the forcing term is witnessed by a
    tail start, ``batch_tail`` advances the tail in one step by as many
    elements as the same equation keeps forcing; otherwise one at a time.
    Every discarded element is absent from every solution, so the final
    ``T`` contains all solutions and, being one itself, is the minimal one.
    """
    bound = Bound(bound)
    n, r = system.n, system.r
    N = (bound_safe if bound is Bound.SAFE else bound_paper)(n, r, system.M)
    if system.M + N + r >= _EXACT:
        raise OverflowError("coefficients too large for exact evaluation")
    table = _TermTable(system)
    present = np.ones((n, r), dtype=bool)
    tails = [r] * n  # N >= r for both bounds
    V = np.array([_valuation_row(present[i], tails[i], r) for i in range(n)]).reshape(n, r + 1)
    report = SolveReport(solvable=False, supports=None, bound=N)

    while True:
        vals, eqmin, violated = table.evaluate(V)
        if not violated.any():
            report.solvable = True
            report.supports = _state_supports(present, tails)
            return report
        l = int(np.argmax(violated))
        if table.free[l] == eqmin[l]:
            report.unsolvable_equation = l + 1
            return report
        seg = table.segment(l)
        t = seg.start + int(np.flatnonzero(vals[seg] == eqmin[l])[0])
        i0, j0 = int(table.var[t]), int(table.order[t])
        later = np.flatnonzero(present[i0, j0:])
        if later.size:
            s = j0 + int(later[0])
            present[i0, s] = False
            report.steps.append(StepRecord(StepKind.FINITE_DISCARD, i0 + 1, l + 1, s, s + 1))
            report.elements_discarded += 1
        else:
            m = tails[i0]
            p = 1
            if batch_tail:
                # terms of x_{i0} witnessed by the tail move with it; others stay put
                live = np.flatnonzero(present[i0])
                top = int(live[-1]) if live.size else -1
                moving = (table.var[seg] == i0) & (table.order[seg] > top)
                w = min(table.free[l], vals[seg][~moving].min(initial=np.inf))
                p = w - eqmin[l]
            if p == np.inf or m + p > N:
                tails[i0] = None
                report.steps.append(StepRecord(StepKind.TAIL_DROP, i0 + 1, l + 1, m, None))
                report.elements_discarded += N - m + 1
            else:
                p = int(p)
                tails[i0] = m + p
                report.steps.append(StepRecord(StepKind.TAIL_ADVANCE, i0 + 1, l + 1, m, m + p))
                report.elements_discarded += p
        V[i0] = _valuation_row(present[i0], tails[i0], r)


# -- derivative and embedding ------------------------------------------------


def tropical_derivative(eq: LinearEquation) -> LinearEquation:
    """Differentiate a homogeneous equation term by term.

    ``a + x^(j)`` becomes ``min{a-1 + x^(j), a + x^(j+1)}`` for ``a >= 1``
    and ``x^(j+1)`` for ``a = 0``.
    """
    if not eq.is_homogeneous:
        raise NonHomogeneousDerivative(
            "the derivative of a finite free term is undefined; pass a homogeneous equation"
        )
    out = []
    for (i, j), a in eq.terms:
        if a >= 1:
            out.append(((i, j), a - 1))
        out.append(((i, j + 1), a))
    return LinearEquation(out)


def linear_to_nonlinear(system: LinearSystem) -> NonlinearSystem:
    eqs = []
    for eq in system.equations:
        monos = [Monomial(a, (slot,)) for slot, a in eq.terms]
        if eq.free is not INF:
            monos.append(Monomial(eq.free, ()))
        eqs.append(NonlinearEquation(monos))
    return NonlinearSystem(system.n, system.r, tuple(eqs))
