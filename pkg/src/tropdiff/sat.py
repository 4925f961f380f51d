"""3-SAT as solvability of a one-variable tropical non-linear system.

For a formula over ``y_0..y_{n-1}`` the system in ``x`` has order
``r = 4n - 1`` and contains

* ``min{x^(2j+1), 0}`` for ``0 <= j <= 2n-1``: every odd number is in
  the support, so each even-order valuation is 0 or 1;
* ``min{x^(2j) + x^(2j+2n), 1}`` for ``0 <= j <= n-1``: exactly one of
  ``Val(2j)``, ``Val(2j+2n)`` is 0; ``Val(2j) = 0`` encodes ``y_j`` true;
* ``min{..., 0}`` per clause, where ``y_j`` contributes ``x^(2j)`` and
  ``not y_j`` contributes ``x^(2j+2n)``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .core import Support, valuation
from .errors import (
    ClauseTooLong,
    DimacsError,
    IndexOutOfRange,
    InvalidWitness,
    MalformedHeader,
    TooManyVariables,
)
from .nonlinear import Monomial, NonlinearEquation, NonlinearSystem

__all__ = [
    "CnfFormula",
    "parse_dimacs",
    "format_dimacs",
    "reduce_3sat",
    "assignment_to_support",
    "support_to_assignment",
    "brute_force_sat",
]

MAX_BRUTE_FORCE_VARS = 24


@dataclass(frozen=True)
class CnfFormula:
    """Clauses are tuples of literals ``(var, positive)`` with ``0 <= var < num_vars``."""

    num_vars: int
    clauses: tuple = ()

    def __post_init__(self):
        clauses = tuple(tuple((int(v), bool(pos)) for v, pos in c) for c in self.clauses)
        for c in clauses:
            if not c:
                raise ValueError("empty clause")
            for v, _ in c:
                if not 0 <= v < self.num_vars:
                    raise ValueError(f"variable y{v} out of range for {self.num_vars} variables")
        object.__setattr__(self, "clauses", clauses)

    def satisfied_by(self, assignment: Sequence[bool]) -> bool:
        return all(any(assignment[v] == pos for v, pos in c) for c in self.clauses)


def parse_dimacs(text: str) -> CnfFormula:
    """Read DIMACS CNF; variable ``v`` becomes ``y_{v-1}``.  Clauses longer than 3 are rejected."""
    num_vars = None
    clauses = []
    current = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("c") or line.startswith("%"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if num_vars is not None or len(parts) != 4 or parts[1] != "cnf":
                raise MalformedHeader(f"bad header {line!r}", lineno)
            try:
                num_vars, _ = int(parts[2]), int(parts[3])
            except ValueError:
                raise MalformedHeader(f"bad header {line!r}", lineno) from None
            if num_vars < 0:
                raise MalformedHeader("negative variable count", lineno)
            continue
        if num_vars is None:
            raise MalformedHeader("clause before 'p cnf' header", lineno)
        for tok in line.split():
            try:
                lit = int(tok)
            except ValueError:
                raise DimacsError(f"bad literal {tok!r}", lineno) from None
            if lit == 0:
                if not current:
                    raise DimacsError("empty clause", lineno)
                clauses.append(tuple(current))
                current = []
                continue
            if abs(lit) > num_vars:
                raise IndexOutOfRange(f"literal {lit} exceeds {num_vars} variables", lineno)
            current.append((abs(lit) - 1, lit > 0))
            if len(current) > 3:
                raise ClauseTooLong("clauses may have at most 3 literals", lineno)
    if num_vars is None:
        raise MalformedHeader("missing 'p cnf' header")
    if current:
        clauses.append(tuple(current))
    return CnfFormula(num_vars, tuple(clauses))


def format_dimacs(cnf: CnfFormula) -> str:
    lines = [f"p cnf {cnf.num_vars} {len(cnf.clauses)}"]
    for c in cnf.clauses:
        lines.append(" ".join(str(v + 1 if pos else -(v + 1)) for v, pos in c) + " 0")
    return "\n".join(lines) + "\n"


def reduce_3sat(cnf: CnfFormula) -> NonlinearSystem:
    n = cnf.num_vars
    x = lambda j: (1, j)  # noqa: E731
    eqs = []
    for j in range(2 * n):
        eqs.append(NonlinearEquation([Monomial(0, (x(2 * j + 1),)), Monomial(0)]))
    for j in range(n):
        eqs.append(NonlinearEquation([Monomial(0, (x(2 * j), x(2 * j + 2 * n))), Monomial(1)]))
    for c in cnf.clauses:
        lits = [Monomial(0, (x(2 * v if pos else 2 * v + 2 * n),)) for v, pos in c]
        eqs.append(NonlinearEquation(lits + [Monomial(0)]))
    return NonlinearSystem(1, max(4 * n - 1, 0), tuple(eqs))


def assignment_to_support(cnf: CnfFormula, assignment: Sequence[bool]) -> Support:
    n = cnf.num_vars
    if len(assignment) != n:
        raise ValueError(f"assignment has {len(assignment)} values, formula has {n} variables")
    members = set(range(1, 4 * n, 2))
    for j, value in enumerate(assignment):
        members.add(2 * j if value else 2 * j + 2 * n)
    return Support(tuple(members))


def support_to_assignment(S: Support, num_vars: int) -> tuple:
    n = num_vars
    for j in range(2 * n):
        if valuation(S, 2 * j + 1) != 0:
            raise InvalidWitness(f"Val({2 * j + 1}) = {valuation(S, 2 * j + 1)}, expected 0")
    out = []
    for j in range(n):
        a, b = valuation(S, 2 * j), valuation(S, 2 * j + 2 * n)
        if a + b != 1:
            raise InvalidWitness(f"Val({2 * j}) + Val({2 * j + 2 * n}) = {a + b}, expected 1")
        out.append(a == 0)
    return tuple(out)


def brute_force_sat(cnf: CnfFormula) -> Optional[tuple]:
    """First satisfying assignment in lexicographic order (False < True), or ``None``."""
    if cnf.num_vars > MAX_BRUTE_FORCE_VARS:
        raise TooManyVariables(f"{cnf.num_vars} > {MAX_BRUTE_FORCE_VARS} variables")
    for values in itertools.product((False, True), repeat=cnf.num_vars):
        if cnf.satisfied_by(values):
            return values
    return None
