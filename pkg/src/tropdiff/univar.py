"""The fast algorithm for systems in a single variable ``x``.

It performs the same forced discards as :func:`tropdiff.linear.solve_minimal`
but orders them: elements below ``r`` are discarded first, and when only
the tail start ``s0`` is ever forced out, the tail jumps ahead by the
largest amount any violated equation keeps forcing.  At most ``2r + 1``
steps are needed, independently of the coefficient size ``M``.
"""
from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Optional

from .core import INF, ExtNat, Support, valuation
from .errors import ContractError, InternalBoundViolation
from .linear import (
    LinearEquation,
    LinearSystem,
    SolveReport,
    StepKind,
    StepRecord,
    ViolatedAtSlot,
    equation_status,
)

__all__ = ["JumpComputation", "jump_length", "solve_univar"]


@dataclass(frozen=True)
class JumpComputation:
    """Data behind one jump: ``p`` is the max of the per-equation lengths."""

    tail_start: int
    pivot_order: int
    p_by_equation: dict = field(default_factory=dict)
    p: ExtNat = INF
    chosen_equation: int = 0


def jump_length(eq: LinearEquation, T: Support, s0: int) -> ExtNat:
    """Largest ``p`` such that raising the tail by ``p`` keeps ``eq`` violated at the tail.

    Competitors are terms witnessed by a finite-part element, plus the free
    term.  Returns ``INF`` when there is none.
    """
    if any(i != 1 for (i, _), _ in eq.terms):
        raise ContractError("jump_length is defined for one-variable equations")
    if T.tail != s0:
        raise ContractError(f"s0={s0} is not the tail start of {T}")
    st = equation_status(eq, [T])
    if not isinstance(st, ViolatedAtSlot) or T.least_member_at_least(st.order) != s0:
        raise ContractError("equation is not violated at a tail-witnessed slot")
    low = eq.free
    for (_, j), a in eq.terms:
        w = T.least_member_at_least(j)
        if w is not None and w in T.finite:
            low = min(low, a + valuation(T, j))
    if low is INF:
        return INF
    return low - st.value


class _Dsu:
    """Deletion-only successor structure over ``0..size-1``; ``size-1`` is never deleted."""

    def __init__(self, size: int, step: int):
        self.parent = list(range(size))
        self.step = step

    def find(self, x: int) -> int:
        parent = self.parent
        root = x
        while parent[root] != root:
            root = parent[root]
        while parent[x] != root:
            parent[x], x = root, parent[x]
        return root

    def delete(self, x: int):
        self.parent[x] = x + self.step


_OK, _FIN, _TAIL, _FREE = 0, 1, 2, 3
_TAIL_KEY, _FREE_KEY = -1, -2


def solve_univar(system: LinearSystem) -> SolveReport:
    """Minimal solution of a one-variable system by finite steps and jumps."""
    if system.n != 1:
        raise ValueError(f"solve_univar needs n = 1, got n = {system.n}")
    r, M, k = system.r, system.M, system.k
    inf = math.inf
    terms = [[(j, a) for (_, j), a in eq.terms] for eq in system.equations]
    free = [inf if eq.free is INF else eq.free for eq in system.equations]

    # succ.find(j): least present element >= j, or r when none is below r.
    # pred.find(x + 1) - 1: greatest present element <= x, or -1.
    succ = _Dsu(r + 1, 1)
    pred = _Dsu(r + 1, -1)
    tail: Optional[int] = r

    state = [_OK] * k
    witness = [0] * k
    best = [inf] * k
    heaps = {_FIN: [], _TAIL: [], _FREE: []}
    live = {_FIN: 0, _TAIL: 0, _FREE: 0}

    # at_witness[w]: equations whose minimum is (possibly) attained by a term
    # witnessed by w (_TAIL_KEY for the tail).  Removing or moving w raises
    # exactly those terms, so only these equations can change status.
    at_witness = {}

    def refresh(l):
        low = free[l]
        hits = [] if low == inf else [_FREE_KEY]
        for j, a in terms[l]:
            s = succ.find(j)
            if s < r:
                v = a + s - j
            elif tail is None:
                continue
            else:
                v, s = a + tail - j, _TAIL_KEY
            if v < low:
                low, hits = v, [s]
            elif v == low:
                hits.append(s)
        if low == inf or len(hits) >= 2:
            kind = _OK
        elif hits[0] == _FREE_KEY:
            kind = _FREE
        elif hits[0] == _TAIL_KEY:
            kind = _TAIL
        else:
            kind = _FIN
        for w in hits:
            if w != _FREE_KEY:
                at_witness.setdefault(w, []).append(l)
        old = state[l]
        if old != _OK:
            live[old] -= 1
        wit = hits[0] if hits else None
        if kind == _FIN:
            heapq.heappush(heaps[_FIN], (-wit, l))
        elif kind != _OK and kind != old:
            heapq.heappush(heaps[kind], l)
        if kind != _OK:
            live[kind] += 1
        state[l], witness[l], best[l] = kind, wit, low

    def first(kind):
        h = heaps[kind]
        while state[h[0]] != kind:
            heapq.heappop(h)
        return h[0]

    def first_finite():
        # largest witness first: terms then tend to move straight to the tail
        h = heaps[_FIN]
        while state[h[0][1]] != _FIN or witness[h[0][1]] != -h[0][0]:
            heapq.heappop(h)
        return h[0]

    def refresh_witness(w):
        for l in set(at_witness.pop(w, ())):
            refresh(l)

    for l in range(k):
        refresh(l)

    report = SolveReport(solvable=False, supports=None)
    while True:
        if len(report.steps) > 2 * r + 2:
            raise InternalBoundViolation(f"{len(report.steps)} steps exceed 2r+2 = {2 * r + 2}")
        if live[_FIN] + live[_TAIL] + live[_FREE] == 0:
            fin = tuple(s for s in range(r) if succ.find(s) == s)
            report.solvable = True
            report.supports = (Support(fin, tail),)
            return report
        if live[_FREE]:
            report.unsolvable_equation = first(_FREE) + 1
            return report
        if live[_FIN]:
            s, l = first_finite()
            s = -s
            succ.delete(s)
            pred.delete(s + 1)
            report.steps.append(StepRecord(StepKind.FINITE_DISCARD, 1, l + 1, s, s + 1))
            report.elements_discarded += 1
            refresh_witness(s)
            continue

        # every violated equation is violated at the tail start
        s0 = tail
        top = pred.find(r) - 1  # greatest finite element, or -1
        p_by_eq = {}
        pivot = {}
        for l in sorted({l for l in heaps[_TAIL] if state[l] == _TAIL}):
            low = free[l]
            pivot_j = None
            for j, a in terms[l]:
                if j > top:
                    if a + s0 - j == best[l]:
                        pivot_j = j
                    continue
                v = a + succ.find(j) - j
                if v < low:
                    low = v
            p_by_eq[l + 1] = INF if low == inf else low - best[l]
            pivot[l + 1] = pivot_j
        p = max(p_by_eq.values())
        l0 = min(l for l, q in p_by_eq.items() if q == p)
        report.jumps.append(JumpComputation(s0, pivot[l0], p_by_eq, p, l0))
        if p is INF:
            tail = None
            report.steps.append(StepRecord(StepKind.TAIL_DROP, 1, l0, s0, None))
            report.elements_discarded += 1
        else:
            # a finite-part competitor caps s0+p at 2r+M-1, the free term at r+M
            limit = max(2 * r + M - 1, r + M)
            if p < 1 or s0 + p > limit:
                raise InternalBoundViolation(
                    f"jump p={p} from s0={s0} breaks 1 <= p, s0+p <= {limit}"
                )
            tail = s0 + p
            report.steps.append(StepRecord(StepKind.JUMP, 1, l0, s0, s0 + p, jump_p=p))
            report.elements_discarded += p
        refresh_witness(_TAIL_KEY)
