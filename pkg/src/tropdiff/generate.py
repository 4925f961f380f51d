"""Seeded random linear systems for tests and benchmarks.

Algorithm, per equation in order, all draws from ``numpy.random.default_rng(seed)``:

1. ``count ~ Binomial(n*(r+1), density)`` finite coefficients;
2. ``count`` distinct slots, chosen uniformly among the ``n*(r+1)`` slots;
3. one coefficient per chosen slot, uniform on ``[0, M]``;
4. a uniform draw on ``[0, 1)``; below ``free_term_probability`` the free
   term is finite, then a further uniform value on ``[0, M]``.

Output is deterministic for a fixed seed and numpy version.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import INF
from .linear import LinearEquation, LinearSystem

__all__ = ["GeneratorConfig", "generate_random_system"]


@dataclass(frozen=True)
class GeneratorConfig:
    n: int
    r: int
    k: int
    M: int
    density: float = 0.5
    free_term_probability: float = 0.5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.density <= 1.0:
            raise ValueError("density must lie in [0, 1]")
        if not 0.0 <= self.free_term_probability <= 1.0:
            raise ValueError("free_term_probability must lie in [0, 1]")
        if min(self.n, self.r, self.k, self.M) < 0:
            raise ValueError("n, r, k, M must be non-negative")


def generate_random_system(config: GeneratorConfig) -> LinearSystem:
    rng = np.random.default_rng(config.seed)
    n, r, M = config.n, config.r, config.M
    slots = n * (r + 1)
    equations = []
    for _ in range(config.k):
        count = int(rng.binomial(slots, config.density)) if slots else 0
        chosen = rng.choice(slots, size=count, replace=False) if count else []
        coeffs = rng.integers(0, M, size=count, endpoint=True)
        terms = [
            ((int(s) // (r + 1) + 1, int(s) % (r + 1)), int(a)) for s, a in zip(chosen, coeffs)
        ]
        free = INF
        if rng.random() < config.free_term_probability:
            free = int(rng.integers(0, M, endpoint=True))
        equations.append(LinearEquation(terms, free))
    return LinearSystem(n, r, tuple(equations))
