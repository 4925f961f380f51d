# coding: utf-8

# # 3-SAT as a one-variable non-linear system
#
# A formula in n variables becomes a system with r = 4n - 1.  Odd orders are
# forced into the support; for each y_j exactly one of 2j and 2j + 2n is
# present, and Val(2j) = 0 reads as "y_j is true".

# In[1]:

from tropdiff import (
    assignment_to_support, brute_force_sat, is_solution_nl, oracle_solve_nonlinear,
    parse_dimacs, reduce_3sat, serialize_system, support_to_assignment,
)

cnf = parse_dimacs("p cnf 2 3\n1 2 0\n-1 2 0\n-2 1 0\n")
system = reduce_3sat(cnf)
print(serialize_system(system))


# A satisfying assignment maps straight to a solution.

# In[2]:

model = brute_force_sat(cnf)
S = assignment_to_support(cnf, model)
print(model, "->", S, is_solution_nl(system, [S]))


# Brute-force search over supports finds a solution, and the truth values
# can be read off it.

# In[3]:

(found,) = oracle_solve_nonlinear(system)
print(found, "->", support_to_assignment(found, cnf.num_vars))


# An unsatisfiable formula has no tropical solution either.

# In[4]:

bad = parse_dimacs("p cnf 1 2\n1 0\n-1 0\n")
print(brute_force_sat(bad), oracle_solve_nonlinear(reduce_3sat(bad)))
