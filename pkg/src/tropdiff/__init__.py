"""Exact solvers for tropical differential equations.

Supports, valuations and the min-plus value domain live in
:mod:`tropdiff.core`; linear systems and the general minimal-solution
algorithm in :mod:`tropdiff.linear`; the fast one-variable algorithm in
:mod:`tropdiff.univar`; non-linear systems and certificates in
:mod:`tropdiff.nonlinear`; the 3-SAT construction in :mod:`tropdiff.sat`;
brute-force ground truth in :mod:`tropdiff.oracle`.
"""
from .core import (
    INF,
    ExtNat,
    Support,
    canonicalize,
    is_subset,
    join,
    make_support,
    tadd,
    valuation,
    valuation_vector,
)
from .errors import *  # noqa: F401,F403
from .formats import parse_solution_file, parse_system_file, serialize_system, write_solution_file
from .generate import GeneratorConfig, generate_random_system
from .linear import (
    Bound,
    LinearEquation,
    LinearSystem,
    Satisfied,
    SolveReport,
    StepKind,
    StepRecord,
    ViolatedAtFree,
    ViolatedAtSlot,
    bound_paper,
    bound_safe,
    equation_status,
    first_violation,
    is_solution,
    linear_to_nonlinear,
    solve_minimal,
    tropical_derivative,
)
from .nonlinear import (
    Monomial,
    NonlinearEquation,
    NonlinearSystem,
    bound_N1,
    is_solution_nl,
    monomial_value,
    verify_certificate,
)
from .oracle import (
    EnumerationCaps,
    enumerate_canonical_supports,
    oracle_minimal_linear,
    oracle_solve_nonlinear,
)
from .sat import (
    CnfFormula,
    assignment_to_support,
    brute_force_sat,
    parse_dimacs,
    reduce_3sat,
    support_to_assignment,
)
from .univar import JumpComputation, jump_length, solve_univar

__version__ = "0.1.0"
