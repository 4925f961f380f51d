# coding: utf-8

# # A single equation in one variable
#
# The equation is min{1 + x, 0 + x', 2} with derivatives up to order r = 1.
# A candidate solution is a support S (a set of exponents); substituting
# x^(j) -> Val_S(j) must leave a minimum that is infinite or attained twice.

# In[1]:

from tropdiff import (
    LinearEquation, LinearSystem, equation_status, make_support,
    oracle_minimal_linear, solve_minimal, valuation_vector,
)

eq = LinearEquation({(1, 0): 1, (1, 1): 0}, free=2)
system = LinearSystem(n=1, r=1, equations=(eq,))
system


# All naturals: Val = (0, 0), so the terms are 1, 0, 2 and the minimum 0 is unique.

# In[2]:

naturals = make_support((), 0)
print(valuation_vector(naturals, 1), equation_status(eq, [naturals]))


# The solver starts from {0, ..., N} and discards forced elements.

# In[3]:

report = solve_minimal(system)
print(report.summary())
for step in report.steps:
    print(step)


# Brute force agrees, and lists every solution it found.

# In[4]:

ora = oracle_minimal_linear(system, keep_solutions=True)
print(ora.summary(), "from", ora.solution_count, "solutions:")
for (S,) in ora.solutions:
    print("   ", S, valuation_vector(S, 1))


# The tail starts at 2 although r = 1.  Capping tails at
# (n-1)(M+r)+r = 1 loses the solution, which is why the default cap is
# 2n(M+r)+r.

# In[5]:

print("paper cap:", solve_minimal(system, bound="paper").summary())
print("safe cap: ", solve_minimal(system, bound="safe").summary(), "N =", report.bound)
