# coding: utf-8

# # From power series back to rational functions
#
# A decomposition computed with truncated power series has outer factors that
# are only known to some precision, so they are not matrices over F_p(t).
# Descent turns it into an exact one: reduce the right factor mod t, factor
# that over F_p by block elimination, lift the factorization, and cut the
# unipotent part to a polynomial.  What is left over is close enough to 1
# that the torus absorbs it.

# In[1]:

import random

from cartan import approximate_decomposition, descend, verify
from cartan.harness import coset_census
from cartan.sampling import random_gl_k


# In[2]:

rng = random.Random(5)
g = random_gl_k(rng, 3, 3, 3)
approx = approximate_decomposition(g)
print(approx.precision, approx.lam.weights)


# In[3]:

dec, cert = descend(g, approx)
print(dec.precision)
print(dec.h2)
print(verify(g, dec))


# The certificate exposes the intermediate pieces: the Weyl element that put
# the residue in the big cell, the truncation length, and the least valuation
# of the leftover factor after conjugation by the torus (never negative).

# In[4]:

print(cert.w)
print(cert.threshold, cert.conjugated_valuation)


# # A brute-force check
#
# For tiny n, p and truncation level the double cosets can be enumerated
# outright.  The census closes sample matrices under row and column operations
# and checks that two of them share an orbit exactly when their elementary
# divisors agree.

# In[5]:

res = coset_census(2, 2, 2, 1, translates=100)
print(res.to_tsv())
print(res.consistent, res.translate_checks)
