# coding: utf-8

# # X1 exceptional polynomials
#
# The X1 Laguerre and Jacobi polynomials are the polynomial eigenfunctions of a
# second-order operator with rational coefficients. Degree zero is missing from
# each family, yet the remaining members form a complete orthogonal set.
#
# Here we build them numerically as the null space of the ODE written out on
# polynomial coefficients, then check them against their closed forms.

# In[1]:

import numpy as np

from xop_pdm.xop import JacobiX1, LaguerreX1, construct_x1, ode_residual, orthogonality_integral


# ## Laguerre family
#
# For alpha = 2 the first two members should be g + 3 and g^2 - 8 (monic).

# In[2]:

lag = LaguerreX1(2.0)
for n in range(1, 5):
    print(n, construct_x1(lag, n).p.coeffs)


# The residual of the ODE, relative to the size of its individual terms, should
# sit at rounding level.

# In[3]:

g = np.linspace(0.01, 40, 400)
for n in range(1, 6):
    r, scale = ode_residual(construct_x1(lag, n), g)
    print(n, np.abs(r).max() / scale.max())


# ## Orthogonality
#
# The weight g^alpha e^{-g} / (g + alpha)^2 makes distinct members orthogonal.
# Here is the normalized Gram matrix.

# In[4]:

def gram(fam, nmax=5):
    G = np.array([[orthogonality_integral(fam, m, n) for n in range(1, nmax + 1)]
                  for m in range(1, nmax + 1)])
    d = np.sqrt(np.diag(G))
    return G / np.outer(d, d)

np.set_printoptions(precision=3, suppress=True)
print(gram(lag))


# ## Jacobi family
#
# The Jacobi version needs alpha != beta with alpha*beta > 0. The n = 1 member
# for alpha = 2, beta = 2.5 is g - 13.

# In[5]:

jac = JacobiX1(2.0, 2.5)
print(construct_x1(jac, 1).p.coeffs)
print(gram(jac))
