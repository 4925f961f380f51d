"""Command-line entry point: ``tropdiff <command> ...`` or ``python -m tropdiff``.

Exit codes: 0 solvable / success, 1 unsolvable / check failed,
2 input error, 3 internal invariant violation.
"""
from __future__ import annotations

import argparse
import csv
import random
import sys
import time
from pathlib import Path

from .core import INF
from .errors import InternalBoundViolation, InvalidWitness, ParseError, TropError
from .formats import parse_solution_file, parse_system_file, serialize_system, write_solution_file
from .generate import GeneratorConfig, generate_random_system
from .linear import (
    Bound,
    LinearSystem,
    Satisfied,
    StepKind,
    ViolatedAtFree,
    equation_status,
    linear_to_nonlinear,
    solve_minimal,
)
from .nonlinear import equation_values, default_tail_cap, verify_certificate
from .oracle import EnumerationCaps, oracle_minimal_linear, oracle_solve_nonlinear
from .sat import parse_dimacs, reduce_3sat, support_to_assignment
from .univar import solve_univar

EXIT_OK, EXIT_UNSOLVABLE, EXIT_INPUT, EXIT_INTERNAL = 0, 1, 2, 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _load_system(path: str):
    return parse_system_file(_read(path))


def _load_linear(path: str) -> LinearSystem:
    system = _load_system(path)
    if not isinstance(system, LinearSystem):
        raise InputError(f"{path}: expected a linear system")
    return system


def _as_nonlinear(system):
    return linear_to_nonlinear(system) if isinstance(system, LinearSystem) else system


def _write(path: str, text: str):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise InputError(f"cannot write {path}: {exc.strerror}") from None


def _emit_report(report, args) -> int:
    if getattr(args, "trace", False):
        for k, st in enumerate(report.steps, 1):
            stop = "oo" if st.stop is None else st.stop
            extra = f" p={st.jump_p}" if st.jump_p is not None else ""
            print(f"step {k}: {st.kind.value} x{st.variable} eq {st.equation} [{st.start}, {stop}){extra}")
    if not report.solvable:
        print(f"UNSAT equation {report.unsolvable_equation}")
        return EXIT_UNSOLVABLE
    text = write_solution_file(report.supports)
    print("SAT" + (" (only the infinite solution)" if report.only_infinite_solution else ""))
    sys.stdout.write(text)
    if args.solution:
        _write(args.solution, text)
    return EXIT_OK


def cmd_solve(args) -> int:
    return _emit_report(solve_minimal(_load_linear(args.file), Bound(args.bound)), args)


def cmd_solve1(args) -> int:
    system = _load_linear(args.file)
    if system.n != 1:
        raise InputError(f"solve1 needs a one-variable system, got n={system.n}")
    return _emit_report(solve_univar(system), args)


def _status_text(st) -> str:
    if isinstance(st, Satisfied):
        return f"ok (min {st.value})"
    if isinstance(st, ViolatedAtFree):
        return f"VIOLATED: unique minimum {st.value} at the free term"
    return f"VIOLATED: unique minimum {st.value} at x{st.variable}^{st.order}"


def cmd_check(args) -> int:
    system = _load_system(args.file)
    supports = parse_solution_file(_read(args.solution), system.n)
    first_bad = None
    for l, eq in enumerate(system.equations, 1):
        if isinstance(system, LinearSystem):
            st = equation_status(eq, supports)
            ok, text = isinstance(st, Satisfied), _status_text(st)
        else:
            vals = equation_values(eq, supports)
            low = min(vals, default=None)
            ok = low is None or low is INF or vals.count(low) >= 2
            text = f"{'ok' if ok else 'VIOLATED'}: values {[str(v) for v in vals]}"
        print(f"eq {l}: {text}")
        if not ok and first_bad is None:
            first_bad = l
    if first_bad is not None:
        print(f"NOT A SOLUTION: first violated equation {first_bad}")
        return EXIT_UNSOLVABLE
    print("SOLUTION")
    return EXIT_OK


def cmd_nlverify(args) -> int:
    system = _as_nonlinear(_load_system(args.file))
    supports = parse_solution_file(_read(args.solution), system.n)
    cap = args.cap if args.cap is not None else default_tail_cap(system)
    if verify_certificate(system, supports, cap):
        print(f"VALID certificate (tail cap {cap})")
        return EXIT_OK
    print(f"INVALID certificate (tail cap {cap})")
    return EXIT_UNSOLVABLE


def cmd_oracle(args) -> int:
    system = _load_linear(args.file)
    caps = None if args.tail_cap is None else EnumerationCaps(system.r, args.tail_cap)
    res = oracle_minimal_linear(system, caps)
    print(f"solutions: {res.solution_count}")
    if not res.solvable:
        print("UNSAT")
        return EXIT_UNSOLVABLE
    if not res.join_is_solution:
        raise InternalBoundViolation("union of all solutions is not a solution")
    print("SAT")
    sys.stdout.write(write_solution_file(res.supports))
    return EXIT_OK


def cmd_nlsolve(args) -> int:
    system = _as_nonlinear(_load_system(args.file))
    caps = None if args.tail_cap is None else EnumerationCaps(system.r, args.tail_cap)
    found = oracle_solve_nonlinear(system, caps)
    if found is None:
        print("UNSAT")
        return EXIT_UNSOLVABLE
    print("SAT")
    sys.stdout.write(write_solution_file(found))
    return EXIT_OK


def cmd_from_cnf(args) -> int:
    cnf = parse_dimacs(_read(args.file))
    system = reduce_3sat(cnf)
    comments = [
        f"reduced from {Path(args.file).name}: {cnf.num_vars} variables, {len(cnf.clauses)} clauses",
        "y_j true <=> Val(2j) = 0; odd orders forced, pairs (2j, 2j+2n) exclusive",
    ]
    _write(args.output, serialize_system(system, comments))
    return EXIT_OK


def cmd_extract(args) -> int:
    cnf = parse_dimacs(_read(args.file))
    (S,) = parse_solution_file(_read(args.solution), 1)
    try:
        values = support_to_assignment(S, cnf.num_vars)
    except InvalidWitness as exc:
        print(f"invalid witness: {exc}", file=sys.stderr)
        return EXIT_INPUT
    print(" ".join(f"{'' if v else '-'}{j + 1}" for j, v in enumerate(values)) + " 0")
    if cnf.satisfied_by(values):
        return EXIT_OK
    print("assignment does not satisfy the formula")
    return EXIT_UNSOLVABLE


def cmd_gen(args) -> int:
    config = GeneratorConfig(
        args.n, args.r, args.k, args.M, args.density, args.free_prob, args.seed
    )
    _write(args.output, serialize_system(generate_random_system(config)))
    return EXIT_OK


def bench_suite(name: str, count: int, seed: int):
    """Yield ``(instance_id, system)`` pairs of a named benchmark suite."""
    rng = random.Random(seed)
    for i in range(count):
        if name == "smoke":
            cfg = GeneratorConfig(
                rng.randint(1, 2), rng.randint(0, 3), rng.randint(1, 3), rng.randint(0, 3),
                rng.random(), rng.random(), rng.getrandbits(63),
            )
        elif name == "medium":
            cfg = GeneratorConfig(10, 10, 10, 100, 0.5, 0.5, rng.getrandbits(63))
        elif name == "large":
            cfg = GeneratorConfig(50, 50, 50, 1000, 0.3, 0.3, rng.getrandbits(63))
        elif name == "univar":
            cfg = GeneratorConfig(1, 10**4, 10**4, 10**6, 5 / 10001, 0.0, rng.getrandbits(63))
        elif name == "univar-small":
            cfg = GeneratorConfig(
                1, rng.randint(0, 6), rng.randint(1, 4), rng.randint(0, 6),
                rng.random(), rng.random(), rng.getrandbits(63),
            )
        else:
            raise InputError(f"unknown suite {name!r}")
        yield f"{name}-{i:04d}", generate_random_system(cfg)


BENCH_COLUMNS = [
    "instance_id", "n", "r", "k", "M", "outcome",
    "steps", "finite_steps", "jumps", "max_p", "wall_nanos",
]


def cmd_bench(args) -> int:
    rows = []
    for iid, system in bench_suite(args.suite, args.count, args.seed):
        use_univar = args.algo == "univar" or (args.algo == "auto" and system.n == 1)
        t0 = time.perf_counter_ns()
        report = solve_univar(system) if use_univar else solve_minimal(system)
        wall = time.perf_counter_ns() - t0
        ps = [s.jump_p for s in report.steps if s.kind is StepKind.JUMP]
        rows.append({
            "instance_id": iid, "n": system.n, "r": system.r, "k": system.k, "M": system.M,
            "outcome": "SAT" if report.solvable else "UNSAT",
            "steps": len(report.steps),
            "finite_steps": report.count(StepKind.FINITE_DISCARD),
            "jumps": len(ps),
            "max_p": max(ps) if ps else "",
            "wall_nanos": wall,
        })
    try:
        with open(args.csv, "w", newline="") as fh:
            writer = csv.DictWriter(fh, fieldnames=BENCH_COLUMNS)
            writer.writeheader()
            writer.writerows(rows)
    except OSError as exc:
        raise InputError(f"cannot write {args.csv}: {exc.strerror}") from None
    print(f"{len(rows)} instances written to {args.csv}")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tropdiff", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="minimal solution of a linear system")
    p.add_argument("file")
    p.add_argument("--bound", choices=[b.value for b in Bound], default="safe")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--solution", metavar="OUT")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("solve1", help="one-variable jump algorithm")
    p.add_argument("file")
    p.add_argument("--trace", action="store_true")
    p.add_argument("--solution", metavar="OUT")
    p.set_defaults(func=cmd_solve1)

    p = sub.add_parser("check", help="per-equation status of a candidate solution")
    p.add_argument("file")
    p.add_argument("solution")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("nlverify", help="verify a short solution certificate")
    p.add_argument("file")
    p.add_argument("solution")
    p.add_argument("--cap", type=int)
    p.set_defaults(func=cmd_nlverify)

    p = sub.add_parser("oracle", help="brute-force minimal solution of a linear system")
    p.add_argument("file")
    p.add_argument("--tail-cap", type=int)
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser("nlsolve", help="brute-force search for a solution")
    p.add_argument("file")
    p.add_argument("--tail-cap", type=int)
    p.set_defaults(func=cmd_nlsolve)

    p = sub.add_parser("from-cnf", help="reduce a DIMACS 3-CNF to a one-variable system")
    p.add_argument("file")
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_from_cnf)

    p = sub.add_parser("extract", help="read a truth assignment off a solution")
    p.add_argument("file")
    p.add_argument("solution")
    p.set_defaults(func=cmd_extract)

    p = sub.add_parser("gen", help="random linear system")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--M", type=int, required=True)
    p.add_argument("--density", type=float, default=0.5)
    p.add_argument("--free-prob", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("-o", "--output", required=True)
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("bench", help="time a benchmark suite and write CSV")
    p.add_argument("--suite", required=True,
                   choices=["smoke", "medium", "large", "univar", "univar-small"])
    p.add_argument("--csv", required=True)
    p.add_argument("--count", type=int, default=10)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--algo", choices=["auto", "general", "univar"], default="auto")
    p.set_defaults(func=cmd_bench)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InternalBoundViolation as exc:
        print(f"internal invariant violated: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (InputError, ParseError, TropError, ValueError, OverflowError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
