# coding: utf-8

# # Figure data
#
# We regenerate the data for the two model figures (mass, effective potential and
# the two lowest densities) and plot them when matplotlib is available. The same
# CSV comes from `xop-pdm figure --which 1`.

# In[1]:

import io
import sys

import numpy as np

from xop_pdm.cli import run


# In[2]:

def figure_data(which):
    buf = io.StringIO()
    old, sys.stdout = sys.stdout, buf
    try:
        run(["figure", "--which", str(which)])
    finally:
        sys.stdout = old
    return np.genfromtxt(io.StringIO(buf.getvalue()), delimiter=",", names=True)

fig1, fig2 = figure_data(1), figure_data(2)
for d in (fig1, fig2):
    print(d.dtype.names, len(d), np.trapezoid(d["psi0_sq"], d["x"]), np.trapezoid(d["psi1_sq"], d["x"]))


# In[3]:

try:
    import matplotlib
    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, axes = plt.subplots(1, 2, figsize=(10, 4))
    for ax, d, title in zip(axes, (fig1, fig2), ("b=1, alpha=2", "a=0.2, alpha=2, beta=2.5")):
        for col in ("M", "V_eff", "psi0_sq", "psi1_sq"):
            ax.plot(d["x"], d[col], label=col)
        ax.set_ylim(-1.5, 3)
        ax.set_title(title)
        ax.legend()
    fig.savefig("figures.png", dpi=120)
    print("wrote figures.png")
