# coding: utf-8

# # Differentiating a homogeneous equation
#
# a + x^(j) becomes min{a - 1 + x^(j), a + x^(j+1)} for a >= 1 and x^(j+1)
# for a = 0.

# In[1]:

import random

from tropdiff import LinearEquation, make_support, tropical_derivative, valuation

for eq in [LinearEquation({(1, 1): 3}), LinearEquation({(1, 0): 0}),
           LinearEquation({(1, 0): 1, (1, 2): 0})]:
    print(eq, "->", tropical_derivative(eq))


# The minimum of the derivative equals the term-by-term rule evaluated on
# valuations, for any support.

# In[2]:

def rule_value(a, j, S):
    shifted = a + valuation(S, j + 1)
    return min(a - 1 + valuation(S, j), shifted) if a >= 1 else shifted


rng = random.Random(0)
eq = LinearEquation({(1, 0): 2, (1, 1): 0, (1, 3): 5})
d = tropical_derivative(eq)
for _ in range(5):
    S = make_support({v for v in range(8) if rng.random() < 0.4}, rng.choice([None, 4, 6]))
    direct = min(a + valuation(S, j) for (_, j), a in d.terms)
    rule = min(rule_value(a, j, S) for (_, j), a in eq.terms)
    print(S, direct, rule)


# A finite free term has no derivative.

# In[3]:

try:
    tropical_derivative(LinearEquation({(1, 0): 1}, free=4))
except ValueError as exc:
    print(type(exc).__name__, exc)
