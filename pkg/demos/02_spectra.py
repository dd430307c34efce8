# coding: utf-8

# # Bound states of the two mass-dependent models
#
# Both models have exactly known spectra. The Laguerre model (mass e^{-bx}) has
# equally spaced levels E_m = m b^2. The Jacobi model (mass sech^2(ax)) has
# E_m = a^2 m (m + alpha + beta + 1). Both put the ground state at E_0 = 0.
#
# We diagonalize a second-order finite-difference Hamiltonian and compare.

# In[1]:

import numpy as np

from xop_pdm.models import JacobiModel, LaguerreModel, auto_domain, count_nodes, wavefunction
from xop_pdm.solver import Grid, convergence_ratios, verify_model


# In[2]:

lag = LaguerreModel(b=1.0, alpha=2.0)
jac = JacobiModel(a=0.2, alpha=2.0, beta=2.5)
print("Laguerre domain", auto_domain(lag), "  Jacobi domain", auto_domain(jac))


# ## Analytic vs numeric levels

# In[3]:

for model in (lag, jac):
    rep = verify_model(model, k=4)
    print(model.family_name, "converged:", rep.converged)
    for lv in rep.levels:
        print("  m=%d  E=%.6f  numeric=%.6f  |err|=%.1e" % (lv.m, lv.analytic_E, lv.numeric_E, lv.abs_err))


# ## Node counting
#
# The m-th state has m nodes even though the polynomial inside it has degree m + 1.
# The extra zero of the X1 polynomial falls outside the physical range of g.

# In[4]:

x = np.linspace(*auto_domain(jac), 4001)
print([count_nodes(wavefunction(jac, m, x)) for m in range(5)])


# ## Second-order convergence
#
# When h is halved, the ground-state error should drop by a factor of four.

# In[5]:

errs, ratios = convergence_ratios(lag, Grid.with_spacing(-5.0, 12.0, 0.04), 3)
print(errs)
print(ratios)
