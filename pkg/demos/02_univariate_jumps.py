# coding: utf-8

# # One variable: jumps instead of single discards
#
# With one variable the tail can be advanced by the full distance that the
# violated equations keep forcing.  The step count then depends on r only.

# In[1]:

import time

from tropdiff import (
    GeneratorConfig, LinearEquation, LinearSystem, StepKind, generate_random_system,
    jump_length, make_support, solve_minimal, solve_univar,
)


# min{0 + x', 3 + x}: at T = {0} u [1, oo) the tail term is 0 and the only
# competitor is 3, so the tail jumps by 3 in one step.

# In[2]:

eq = LinearEquation({(1, 1): 0, (1, 0): 3})
print("p =", jump_length(eq, make_support({0}, 1), 1))
report = solve_univar(LinearSystem(1, 1, (eq,)))
print(report.summary())
for jc in report.jumps:
    print(jc)


# Large coefficients: min{0 + x'', 3000 + x, 3000 + x'}.  The general
# solver, one forced element at a time, walks the tail 3000 times; the jump
# algorithm gets there in one step.

# In[3]:

system = LinearSystem(1, 2, (LinearEquation({(1, 2): 0, (1, 0): 3000, (1, 1): 3000}),))
for name, solve in [("jumps", solve_univar),
                    ("single steps", lambda s: solve_minimal(s, batch_tail=False))]:
    t0 = time.perf_counter()
    rep = solve(system)
    print(f"{name:>12}: {rep.summary():30} steps={len(rep.steps):5} "
          f"{time.perf_counter() - t0:.4f}s")


# Step counts across many small systems stay below 2r + 2.

# In[4]:

worst = 0
for seed in range(300):
    s = generate_random_system(GeneratorConfig(1, 5, 4, 6, density=0.5, seed=seed))
    rep = solve_univar(s)
    worst = max(worst, len(rep.steps) - 2 * s.r)
    assert rep.count(StepKind.FINITE_DISCARD) <= s.r
print("max(steps - 2r) =", worst)
