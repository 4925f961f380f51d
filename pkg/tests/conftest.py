import random

import pytest
from hypothesis import strategies as st

from tropdiff import INF, GeneratorConfig, LinearEquation, LinearSystem, Support, generate_random_system


def explicit_members(S, horizon):
    """S as a plain Python set, truncated at ``horizon``."""
    out = set(S.finite)
    if S.tail is not None:
        out.update(range(S.tail, horizon))
    return out


def naive_valuation(S, j, horizon=None):
    """Valuation by scanning an explicit set; independent of Support's bisect logic."""
    if horizon is None:
        horizon = max(S.horizon(), j) + 2
    members = explicit_members(S, horizon)
    cands = [s - j for s in members if s >= j]
    return min(cands) if cands else INF


@pytest.fixture
def running_example():
    """min{1 + x, 0 + x', 2} in one variable, r = 1."""
    return LinearSystem(1, 1, (LinearEquation({(1, 0): 1, (1, 1): 0}, 2),))


@st.composite
def supports(draw, max_elem=12):
    fin = draw(st.sets(st.integers(0, max_elem), max_size=6))
    tail = draw(st.one_of(st.none(), st.integers(0, max_elem)))
    return Support(tuple(fin), tail)


@st.composite
def linear_equations(draw, n=2, r=3, M=5, homogeneous=None):
    slots = [(i, j) for i in range(1, n + 1) for j in range(r + 1)]
    chosen = draw(st.lists(st.sampled_from(slots), max_size=len(slots)))
    coeffs = [(s, draw(st.integers(0, M))) for s in chosen]
    if homogeneous is True:
        free = INF
    elif homogeneous is False:
        free = draw(st.integers(0, M))
    else:
        free = draw(st.one_of(st.just(INF), st.integers(0, M)))
    return LinearEquation(coeffs, free)


@st.composite
def linear_systems(draw, max_n=2, max_r=3, max_k=3, max_M=3):
    n = draw(st.integers(1, max_n))
    r = draw(st.integers(0, max_r))
    k = draw(st.integers(0, max_k))
    M = draw(st.integers(0, max_M))
    eqs = tuple(draw(linear_equations(n, r, M)) for _ in range(k))
    return LinearSystem(n, r, eqs)


def random_systems(count, seed, n=(1, 2), r=(0, 3), k=(1, 3), M=(0, 3)):
    """Seeded stream of generator-built systems with mixed density."""
    rng = random.Random(seed)
    for _ in range(count):
        cfg = GeneratorConfig(
            rng.randint(*n), rng.randint(*r), rng.randint(*k), rng.randint(*M),
            density=rng.random(), free_term_probability=rng.random(),
            seed=rng.getrandbits(63),
        )
        yield generate_random_system(cfg)
