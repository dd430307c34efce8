# coding: utf-8

# # Supersymmetric partners and shape invariance
#
# The ground state fixes a superpotential B. That B factorizes the Hamiltonian
# as A^dagger A, and the reversed product gives a partner potential. The partner
# has the same form as the original with alpha raised by one, plus a constant.

# In[1]:

import numpy as np

from xop_pdm import susy
from xop_pdm.models import JacobiModel, LaguerreModel, auto_domain, wavefunction


# In[2]:

lag = LaguerreModel(b=1.0, alpha=2.0)
jac = JacobiModel(a=0.2, alpha=2.0, beta=2.5)


# ## Shape invariance
#
# V_1(x; alpha) - V(x; alpha + 1) should be a constant. It is b^2 for Laguerre
# and a^2 (alpha + beta + 2) for Jacobi.

# In[3]:

for model in (lag, jac):
    x = np.linspace(*auto_domain(model), 200)
    print(model.family_name, susy.shape_invariance_check(model, x))


# ## Ladder operators
#
# A maps psi_{m+1} onto the partner state psi^(1)_m, up to the factor
# sqrt(E_{m+1}). Applying A^dagger maps it back.

# In[4]:

x = np.linspace(*auto_domain(jac), 801)
for m in range(3):
    ref = susy.partner_eigenstate(jac, m, x, normalized=True)
    down = susy.align_sign(susy.ladder_down(jac, m, x), ref)
    up = susy.align_sign(susy.ladder_up(jac, m, x), wavefunction(jac, m + 1, x, True))
    print(m, np.abs(down - ref).max(), np.abs(up - wavefunction(jac, m + 1, x, True)).max())


# ## The potential constant
#
# A common way to write the Jacobi potential leaves out the constant a^2. That
# drops every level by a^2 and gives a nonzero ground-state energy. Here is the
# size of the gap.

# In[5]:

x = np.linspace(-5, 5, 5)
print(jac.potential(x) - jac.potential_uncorrected(x))
