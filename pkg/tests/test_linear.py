import random

import pytest
from hypothesis import given, settings, strategies as st

from tropdiff import (
    INF,
    Bound,
    LinearEquation,
    LinearSystem,
    NonHomogeneousDerivative,
    Satisfied,
    StepKind,
    Support,
    ViolatedAtFree,
    ViolatedAtSlot,
    bound_paper,
    bound_safe,
    equation_status,
    first_violation,
    is_solution,
    is_solution_nl,
    linear_to_nonlinear,
    make_support,
    oracle_minimal_linear,
    solve_minimal,
    tropical_derivative,
    valuation,
)
from tropdiff.nonlinear import Monomial

from conftest import linear_equations, linear_systems, random_systems, supports

RUNNING = LinearEquation({(1, 0): 1, (1, 1): 0}, 2)
MINIMAL = make_support({0}, 2)
NATURALS = make_support((), 0)


class TestEquation:
    def test_duplicate_slots_merge_by_minimum(self):
        eq = LinearEquation([((1, 0), 4), ((1, 0), 2)])
        assert eq.coeffs == {(1, 0): 2}

    def test_infinite_coefficient_is_absent(self):
        assert LinearEquation({(1, 0): INF, (1, 1): 3}) == LinearEquation({(1, 1): 3})

    @pytest.mark.parametrize("slot", [(0, 0), (1, -1), (True, 0)])
    def test_bad_slot(self, slot):
        with pytest.raises(ValueError):
            LinearEquation({slot: 1})

    def test_system_checks_slot_range(self):
        with pytest.raises(ValueError):
            LinearSystem(1, 1, (LinearEquation({(2, 0): 0}),))
        with pytest.raises(ValueError):
            LinearSystem(1, 1, (LinearEquation({(1, 2): 0}),))

    def test_M_is_derived(self):
        sys_ = LinearSystem(2, 1, (LinearEquation({(1, 0): 3}, 7), LinearEquation({(2, 1): 9})))
        assert sys_.M == 9 and sys_.k == 2
        assert LinearSystem(1, 0, ()).M == 0


class TestStatus:
    def test_satisfied_by_minimal_solution(self):
        assert equation_status(RUNNING, [MINIMAL]) == Satisfied(1)

    def test_violated_at_slot(self):
        assert equation_status(RUNNING, [NATURALS]) == ViolatedAtSlot(1, 1, 0)

    def test_violated_at_free(self):
        eq = LinearEquation({}, 5)
        assert equation_status(eq, [make_support({0, 1})]) == ViolatedAtFree(5)

    def test_homogeneous_empty_supports(self):
        eq = LinearEquation({(1, 0): 0, (2, 1): 4})
        assert isinstance(equation_status(eq, [Support(), Support()]), Satisfied)

    def test_free_term_counts_once_in_ties(self):
        eq = LinearEquation({(1, 0): 2}, 2)
        assert isinstance(equation_status(eq, [make_support({0})]), Satisfied)

    def test_is_solution_examples(self, running_example):
        assert is_solution(running_example, [MINIMAL])
        assert not is_solution(running_example, [NATURALS])
        assert is_solution(LinearSystem(3, 2, ()), [Support()] * 3)

    def test_first_violation_index_is_one_based(self):
        sys_ = LinearSystem(1, 1, (LinearEquation(), RUNNING))
        l, status = first_violation(sys_, [NATURALS])
        assert l == 2 and isinstance(status, ViolatedAtSlot)
        assert first_violation(sys_, [MINIMAL]) is None


class TestBounds:
    def test_examples(self):
        assert bound_paper(3, 2, 5) == 16
        assert bound_safe(3, 2, 5) == 44
        assert bound_paper(1, 1, 2) == 1
        assert bound_safe(1, 1, 2) == 7

    @given(st.integers(0, 4), st.integers(0, 50))
    def test_short_bound_at_one_variable_is_r(self, r, M):
        assert bound_paper(1, r, M) == r

    @given(st.integers(0, 20), st.integers(0, 20), st.integers(0, 1000))
    def test_safe_dominates_short_bound(self, n, r, M):
        assert bound_safe(n, r, M) >= bound_paper(n, r, M)

    def test_overflow(self):
        with pytest.raises(OverflowError):
            bound_safe(2**40, 2**22, 2**22)

    def test_running_example_exceeds_short_bound(self, running_example):
        rep = solve_minimal(running_example)
        assert rep.supports == (MINIMAL,)
        assert MINIMAL.tail > bound_paper(1, 1, 2)
        truncated = solve_minimal(running_example, bound=Bound.PAPER)
        assert not truncated.solvable


class TestSolveMinimal:
    def test_running_example(self, running_example):
        rep = solve_minimal(running_example)
        assert rep.solvable and rep.supports == (MINIMAL,)
        assert rep.bound == 7

    def test_free_only_is_unsolvable(self):
        rep = solve_minimal(LinearSystem(1, 0, (LinearEquation({}, 5),)))
        assert not rep.solvable and rep.unsolvable_equation == 1

    def test_single_homogeneous_term_gives_empty(self):
        rep = solve_minimal(LinearSystem(1, 0, (LinearEquation({(1, 0): 0}),)))
        assert rep.solvable and rep.supports == (Support(),)
        assert rep.only_infinite_solution
        assert rep.count(StepKind.TAIL_DROP) == 1

    def test_unbatched_trace_discards_one_at_a_time(self, running_example):
        rep = solve_minimal(running_example, batch_tail=False)
        assert rep.supports == (MINIMAL,)
        assert all(s.size == 1 for s in rep.steps if s.kind is StepKind.TAIL_ADVANCE)

    def test_step_records(self, running_example):
        rep = solve_minimal(running_example)
        assert rep.discard_count == len(rep.steps) == 1
        step = rep.steps[0]
        assert (step.kind, step.variable, step.equation, step.start, step.stop) == (
            StepKind.TAIL_ADVANCE, 1, 1, 1, 2,
        )
        assert step.jump_p is None

    def test_summary(self, running_example):
        assert solve_minimal(running_example).summary() == "SAT x1: fin 0 tail 2"

    def test_returned_supports_are_canonical(self):
        for system in random_systems(200, seed=11):
            rep = solve_minimal(system)
            if rep.solvable:
                for S in rep.supports:
                    assert all(x < system.r for x in S.finite)
                    assert S.tail is None or S.tail >= system.r

    @settings(max_examples=150, deadline=None)
    @given(linear_systems())
    def test_matches_oracle(self, system):
        rep = solve_minimal(system)
        ora = oracle_minimal_linear(system)
        assert rep.solvable == ora.solvable
        if rep.solvable:
            assert rep.supports == ora.supports
            assert is_solution(system, rep.supports)

    @settings(max_examples=150, deadline=None)
    @given(linear_systems())
    def test_batched_equals_unbatched(self, system):
        a = solve_minimal(system)
        b = solve_minimal(system, batch_tail=False)
        assert (a.solvable, a.supports) == (b.solvable, b.supports)
        assert a.discard_count <= b.discard_count

    @settings(max_examples=100, deadline=None)
    @given(linear_systems(max_k=4), st.randoms(use_true_random=False))
    def test_order_independence(self, system, rnd):
        rep = solve_minimal(system)
        eqs = list(system.equations)
        rnd.shuffle(eqs)
        perm = list(range(1, system.n + 1))
        rnd.shuffle(perm)
        renamed = tuple(
            LinearEquation({(perm[i - 1], j): a for (i, j), a in eq.terms}, eq.free) for eq in eqs
        )
        other = solve_minimal(LinearSystem(system.n, system.r, renamed))
        assert rep.solvable == other.solvable
        if rep.solvable:
            assert tuple(other.supports[perm[i] - 1] for i in range(system.n)) == rep.supports

    @settings(max_examples=100, deadline=None)
    @given(linear_systems())
    def test_homogeneous_always_solvable(self, system):
        hom = LinearSystem(
            system.n, system.r, tuple(LinearEquation(eq.terms) for eq in system.equations)
        )
        assert solve_minimal(hom).solvable

    @settings(max_examples=100, deadline=None)
    @given(linear_systems())
    def test_step_bound(self, system):
        rep = solve_minimal(system, batch_tail=False)
        assert rep.discard_count <= system.n * (rep.bound + 1)

    def test_rejects_values_beyond_exact_range(self):
        eq = LinearEquation({(1, 0): 2**52})
        with pytest.raises(OverflowError):
            solve_minimal(LinearSystem(1, 0, (eq,)))


class TestDerivative:
    def test_closed_forms(self):
        assert tropical_derivative(LinearEquation({(1, 1): 3})) == LinearEquation(
            {(1, 1): 2, (1, 2): 3}
        )
        assert tropical_derivative(LinearEquation({(1, 0): 0})) == LinearEquation({(1, 1): 0})

    def test_merge(self):
        eq = LinearEquation({(1, 0): 1, (1, 2): 0})
        assert tropical_derivative(eq) == LinearEquation({(1, 0): 0, (1, 1): 1, (1, 3): 0})

    def test_overlapping_slots_merge_by_minimum(self):
        # 2 + x' contributes 1 + x'; 0 + x contributes 0 + x'
        eq = LinearEquation({(1, 0): 0, (1, 1): 2})
        assert tropical_derivative(eq) == LinearEquation({(1, 1): 0, (1, 2): 2})

    def test_rejects_free_term(self):
        with pytest.raises(NonHomogeneousDerivative):
            tropical_derivative(LinearEquation({(1, 0): 1}, 3))

    @given(linear_equations(n=2, r=3, M=6, homogeneous=True), supports(), supports())
    def test_evaluation_law(self, eq, S1, S2):
        sup = (S1, S2)

        def val(i, j):
            return valuation(sup[i - 1], j)

        expected = INF
        for (i, j), a in eq.terms:
            if a >= 1:
                expected = min(expected, a - 1 + val(i, j))
            expected = min(expected, a + val(i, j + 1))
        d = tropical_derivative(eq)
        got = min((a + val(i, j) for (i, j), a in d.terms), default=INF)
        assert got == expected


class TestEmbedding:
    def test_structure(self):
        nl = linear_to_nonlinear(LinearSystem(1, 0, (LinearEquation({(1, 0): 1}, 2),)))
        assert set(nl.equations[0].monomials) == {Monomial(1, ((1, 0),)), Monomial(2, ())}

    def test_homogeneous_has_no_free_monomial(self):
        nl = linear_to_nonlinear(LinearSystem(1, 1, (LinearEquation({(1, 0): 1, (1, 1): 0}),)))
        assert all(m.factors for m in nl.equations[0].monomials)

    def test_running_example_agreement(self, running_example):
        nl = linear_to_nonlinear(running_example)
        rng = random.Random(5)
        for _ in range(100):
            fin = {x for x in range(6) if rng.random() < 0.4}
            tail = rng.choice([None, *range(6)])
            S = make_support(fin, tail)
            assert is_solution(running_example, [S]) == is_solution_nl(nl, [S])

    @settings(max_examples=200)
    @given(linear_systems(), st.lists(supports(), min_size=2, max_size=2))
    def test_agreement(self, system, sups):
        sups = sups[: system.n]
        assert is_solution(system, sups) == is_solution_nl(linear_to_nonlinear(system), sups)
