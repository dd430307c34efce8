"""Exactly solvable position-dependent-mass models from X1 exceptional polynomials."""

from .models import (
    AmbiguityParams,
    JacobiModel,
    LaguerreModel,
    hermiticity_decay,
    normalization_constant_paper,
    susy_zero_point,
    von_roos_bare_potential,
    wavefunction,
)
from .numerics import Polynomial, QuadratureSpec, TridiagonalSymmetric
from .solver import Grid, SpectrumReport, build_hamiltonian, verify_model
from .xop import JacobiX1, LaguerreX1, construct_x1, orthogonality_integral, weight

__version__ = "0.1.0"
