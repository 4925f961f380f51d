"""Line-oriented text formats for systems and solutions.

System file::

    TDE1 linear n=1 r=1
    1 x1^0 ; 0 x1^1 ; free 2

    TDE1 nonlinear n=1 r=3
    0*x1^1 ; free 0
    1*x1^0*x1^2 ; free 1

One equation per line, terms joined by ``" ; "``.  A linear term is
``COEF x<i>^<j>``; a non-linear monomial is ``COEF`` followed by
``*x<i>^<j>`` factors (a bare ``COEF`` is a free monomial).  ``free COEF``
is the free term, ``COEF`` is a decimal or ``inf``.  ``#`` starts a
comment; blank lines are skipped.  An equation with no finite term is
written ``free inf``.

Solution file, one line per variable::

    x1: fin 0 tail 2
    x2: empty
    x3: fin 0 2 tail none

Canonical files (as produced by the serializers) round-trip byte for byte.
"""
from __future__ import annotations

import re
from typing import Iterable, Optional, Sequence, Union

from .core import INF, Support
from .errors import ParseError
from .linear import LinearEquation, LinearSystem
from .nonlinear import Monomial, NonlinearEquation, NonlinearSystem

__all__ = [
    "parse_system_file",
    "serialize_system",
    "parse_solution_file",
    "write_solution_file",
]

_HEADER = re.compile(r"TDE1 (linear|nonlinear) n=(\d+) r=(\d+)")
_COEF = r"(\d+|inf)"
_LIN_TERM = re.compile(_COEF + r" x(\d+)\^(\d+)")
_FREE = re.compile(r"free " + _COEF)
_FACTOR = re.compile(r"\*x(\d+)\^(\d+)")
_NL_MONO = re.compile(_COEF + r"((?:\*x\d+\^\d+)*)")
_SOL_LINE = re.compile(r"x(\d+): (?:(empty)|fin((?: \d+)*) tail (\d+|none))")


def _coef(text: str):
    return INF if text == "inf" else int(text)


def _strip_comment(line: str) -> str:
    k = line.find("#")
    return line if k < 0 else line[:k]


def _check_slot(i, j, n, r, lineno, col):
    if not 1 <= i <= n:
        raise ParseError(f"variable x{i} outside 1..{n}", lineno, col)
    if j > r:
        raise ParseError(f"order {j} > r = {r}", lineno, col)


def parse_system_file(text: str) -> Union[LinearSystem, NonlinearSystem]:
    header = None
    equations = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        if header is None:
            m = _HEADER.fullmatch(line)
            if not m:
                raise ParseError("expected header 'TDE1 linear|nonlinear n=<int> r=<int>'", lineno, 1)
            header = (m.group(1), int(m.group(2)), int(m.group(3)))
            continue
        kind, n, r = header
        parse = _parse_linear_line if kind == "linear" else _parse_nonlinear_line
        equations.append(parse(line, n, r, lineno))
    if header is None:
        raise ParseError("empty system file", 1, 1)
    kind, n, r = header
    if kind == "linear":
        return LinearSystem(n, r, tuple(equations))
    return NonlinearSystem(n, r, tuple(equations))


def _split_terms(line: str, lineno: int):
    col = 1
    for part in line.split(" ; "):
        yield part, col
        col += len(part) + 3


def _parse_linear_line(line, n, r, lineno):
    coeffs, free = [], INF
    for part, col in _split_terms(line, lineno):
        m = _FREE.fullmatch(part)
        if m:
            free = min(free, _coef(m.group(1)))
            continue
        m = _LIN_TERM.fullmatch(part)
        if not m:
            raise ParseError(f"bad linear term {part!r}", lineno, col)
        i, j = int(m.group(2)), int(m.group(3))
        _check_slot(i, j, n, r, lineno, col)
        coeffs.append(((i, j), _coef(m.group(1))))
    return LinearEquation(coeffs, free)


def _parse_nonlinear_line(line, n, r, lineno):
    monos = []
    for part, col in _split_terms(line, lineno):
        m = _FREE.fullmatch(part)
        if m:
            a, factors = _coef(m.group(1)), ()
        else:
            m = _NL_MONO.fullmatch(part)
            if not m:
                raise ParseError(f"bad monomial {part!r}", lineno, col)
            a = _coef(m.group(1))
            factors = tuple((int(i), int(j)) for i, j in _FACTOR.findall(m.group(2)))
            for i, j in factors:
                _check_slot(i, j, n, r, lineno, col)
        if a is not INF:
            monos.append(Monomial(a, factors))
    return NonlinearEquation(monos)


def _linear_line(eq: LinearEquation) -> str:
    parts = [f"{a} x{i}^{j}" for (i, j), a in eq.terms]
    if eq.free is not INF or not parts:
        parts.append(f"free {eq.free}")
    return " ; ".join(parts)


def _nonlinear_line(eq: NonlinearEquation) -> str:
    parts = []
    for mono in eq.monomials:
        if mono.factors:
            parts.append(str(mono.coeff) + "".join(f"*x{i}^{j}" for i, j in mono.factors))
        else:
            parts.append(f"free {mono.coeff}")
    return " ; ".join(parts) if parts else "free inf"


def serialize_system(
    system: Union[LinearSystem, NonlinearSystem], comments: Iterable[str] = ()
) -> str:
    kind = "linear" if isinstance(system, LinearSystem) else "nonlinear"
    line = _linear_line if kind == "linear" else _nonlinear_line
    out = [f"# {c}" for c in comments]
    out.append(f"TDE1 {kind} n={system.n} r={system.r}")
    out.extend(line(eq) for eq in system.equations)
    return "\n".join(out) + "\n"


def parse_solution_file(text: str, n: Optional[int] = None) -> tuple:
    """Supports ``(S_1, ..., S_n)``; every variable ``x1..xn`` must appear exactly once."""
    found = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = _strip_comment(raw).rstrip()
        if not line.strip():
            continue
        m = _SOL_LINE.fullmatch(line)
        if not m:
            raise ParseError(f"bad solution line {line!r}", lineno, 1)
        i = int(m.group(1))
        if i < 1 or i in found:
            raise ParseError(f"variable x{i} repeated or out of range", lineno, 1)
        if m.group(2):
            S = Support()
        else:
            fin = tuple(int(x) for x in m.group(3).split())
            tail = None if m.group(4) == "none" else int(m.group(4))
            S = Support(fin, tail)
        found[i] = S
    count = len(found) if n is None else n
    if sorted(found) != list(range(1, count + 1)):
        raise ParseError(f"solution must list x1..x{count} exactly once")
    return tuple(found[i] for i in range(1, count + 1))


def write_solution_file(supports: Sequence[Support]) -> str:
    return "".join(f"x{i}: {S}\n" for i, S in enumerate(supports, 1))
