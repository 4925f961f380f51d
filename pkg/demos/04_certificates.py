# coding: utf-8

# # Short certificates for non-linear systems
#
# A solution is described by its finite part up to r and a tail start.
# Tail starts at most n!(M + rd)d^n suffice, so checking a certificate is
# cheap.

# In[1]:

from tropdiff import (
    Monomial, NonlinearEquation, NonlinearSystem, bound_N1, make_support,
    monomial_value, oracle_solve_nonlinear, verify_certificate,
)

x = lambda j: (1, j)
system = NonlinearSystem(1, 3, (
    NonlinearEquation([Monomial(0, (x(1),)), Monomial(0)]),
    NonlinearEquation([Monomial(0, (x(3),)), Monomial(0)]),
    NonlinearEquation([Monomial(0, (x(0), x(2))), Monomial(1)]),
))
cap = bound_N1(system.n, system.r, system.M, system.d)
print("d =", system.d, "M =", system.M, "cap =", cap)


# Monomial values under S = {0, 1, 3}.

# In[2]:

S = make_support({0, 1, 3})
for l, eq in enumerate(system.equations, 1):
    print(l, [monomial_value(m, [S]) for m in eq.monomials])
print("valid:", verify_certificate(system, [S], cap))


# Oversized certificates are rejected before any evaluation.

# In[3]:

print(verify_certificate(system, [make_support({0, 1, 3}, cap + 1)], cap))
print(verify_certificate(system, [make_support({0, 1, 3, 9})], cap))


# Whatever the exhaustive search returns is itself a valid certificate.

# In[4]:

found = oracle_solve_nonlinear(system)
print(found, verify_certificate(system, found, cap))
