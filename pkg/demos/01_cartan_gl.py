# coding: utf-8

# # Cartan decompositions in GL_n over F_p(t)
#
# Every invertible matrix g with entries in F_p(t) factors as
# h1 * diag(t^d1, ..., t^dn) * h2 where h1, h2 have entries regular at t = 0
# (with unit determinant there) and d1 >= ... >= dn.  The exponents are the
# elementary divisors of g at t.

# In[1]:

from cartan import divisor_invariant, parse_matrix, snf_decompose, verify


# Matrices are written row by row, entries separated by commas, rows by semicolons.

# In[2]:

p = 5
g = parse_matrix("t^-1,0;1,t", p)
dec = snf_decompose(g)
print(dec.lam.weights)
print(dec.h1)
print(dec.h2)


# The product comes back exactly, and both outer factors are integral.

# In[3]:

print(dec.product() == g)
print(verify(g, dec))


# An independent computation: the k-th elementary divisor is the jump in the
# least valuation of the k x k minors.

# In[4]:

print(divisor_invariant(g))


# A less tidy example, with rational entries.

# In[5]:

g = parse_matrix("1/(1+t),t^2,0;t^-3,1,1+t;0,t,1/(2-t)", p)
dec = snf_decompose(g)
print(dec.lam.weights, divisor_invariant(g))
print(verify(g, dec))


# In SL_n both outer factors keep determinant 1 and the weights sum to zero.

# In[6]:

g = parse_matrix("t^2,1;0,t^-2", p)
dec = snf_decompose(g, "SL")
print(dec.lam.weights, dec.h1.det(), dec.h2.det())


# The same routine runs on power series truncated at t^N.  Precision is tracked
# per entry, so the factors report how much of them is known.

# In[7]:

approx = snf_decompose(g.expand(12), "SL")
print(approx.precision, approx.lam.weights)
print(verify(g, approx))
