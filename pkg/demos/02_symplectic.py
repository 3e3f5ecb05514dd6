# coding: utf-8

# # The symplectic case
#
# Sp_2n preserves J = [[0, I], [-I, 0]].  The torus elements here look like
# diag(t^d1, ..., t^dn, t^-d1, ..., t^-dn) with d1 >= ... >= dn >= 0, and the
# elimination only ever multiplies by symplectic matrices with integral
# entries.

# In[1]:

import random

from cartan import GroupTag, Cocharacter, realize, verify
from cartan.sampling import random_sp_r
from cartan.symplectic import sp_decompose, sp_divisor_check


# Hide a known cocharacter between two random integral symplectic matrices.

# In[2]:

rng = random.Random(2)
p, n = 7, 2
lam = Cocharacter((3, 1), GroupTag("SP", n, p))
g = random_sp_r(rng, n, p) @ realize(lam) @ random_sp_r(rng, n, p)
print(g)


# In[3]:

dec = sp_decompose(g, n)
print(dec.lam.weights)
print(verify(g, dec))


# Viewed in GL_4, the same matrix has elementary divisors that pair up as
# (d, -d).

# In[4]:

print(sp_divisor_check(g, n))


# Negative or unsorted weights on input are normalized by a signed permutation.

# In[5]:

torus = realize(Cocharacter((-2, 4), GroupTag("SP", n, p)))
print(sp_decompose(torus, n).lam.weights)
