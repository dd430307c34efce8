"""Finite-difference verification of the analytic spectra.

``H = -d/dx (1/M) d/dx + V`` is discretized in flux form on a uniform grid
with zero Dirichlet values, which keeps the matrix exactly symmetric, and
its lowest eigenpairs are compared with the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from .models import Model, auto_domain, wavefunction
from .numerics import TridiagonalSymmetric, eig_tridiag_lowest
from .susy import align_sign, partner_eigenstate, partner_potential

DEFAULT_TOL = 5e-3


@dataclass(frozen=True)
class Grid:
    """Uniform grid of ``n`` interior points on ``(xmin, xmax)``."""

    xmin: float
    xmax: float
    n: int

    def __post_init__(self):
        if not self.xmin < self.xmax:
            raise ValueError("need xmin < xmax")
        if self.n < 3:
            raise ValueError("need at least 3 interior points")

    @property
    def h(self) -> float:
        return (self.xmax - self.xmin) / (self.n + 1)

    @property
    def x(self) -> np.ndarray:
        return self.xmin + self.h * np.arange(1, self.n + 1)

    def refined(self) -> "Grid":
        """Same interval, half the spacing."""
        return Grid(self.xmin, self.xmax, 2 * self.n + 1)

    @classmethod
    def with_spacing(cls, xmin: float, xmax: float, h: float) -> "Grid":
        return cls(xmin, xmax, max(3, int(round((xmax - xmin) / h)) - 1))


def default_spacing(model: Model) -> float:
    # 0.005 at b = 1 and 0.01 at a = 0.2
    return model.length_scale * (0.005 if model.family_name == "laguerre" else 0.002)


def auto_grid(model: Model, k: int = 4) -> Grid:
    """Tail-rule domain for levels ``0..max(k, 4)`` at the family's default spacing."""
    lo, hi = auto_domain(model, max(k, 4))
    return Grid.with_spacing(lo, hi, default_spacing(model))


def build_hamiltonian(massfn: Callable, potfn: Callable, grid: Grid) -> TridiagonalSymmetric:
    x, h = grid.x, grid.h
    half = np.concatenate([x - h / 2, [x[-1] + h / 2]])
    m_half = np.asarray(massfn(half), dtype=float)
    if np.any(~(m_half > 0)):
        raise ValueError("mass must be positive on the grid")
    inv = 1.0 / m_half
    diag = (inv[1:] + inv[:-1]) / h**2 + np.asarray(potfn(x), dtype=float)
    off = -inv[1:-1] / h**2
    return TridiagonalSymmetric(diag, off)


def solve_spectrum(H: TridiagonalSymmetric, k: int):
    return eig_tridiag_lowest(H, k)


@dataclass
class LevelReport:
    m: int
    analytic_E: float
    numeric_E: float
    abs_err: float
    overlap: float
    refined_E: float


@dataclass
class SpectrumReport:
    levels: list[LevelReport]
    grid: Grid
    converged: bool
    tol: float = DEFAULT_TOL
    partner: bool = False

    def to_dict(self) -> dict:
        return {
            "partner": self.partner,
            "grid": {"xmin": self.grid.xmin, "xmax": self.grid.xmax, "n": self.grid.n, "h": self.grid.h},
            "tol": self.tol,
            "converged": self.converged,
            "levels": [asdict(lv) for lv in self.levels],
        }


def _numeric(model: Model, grid: Grid, k: int, partner: bool):
    potfn = (lambda x: partner_potential(model, x)) if partner else model.potential
    return solve_spectrum(build_hamiltonian(model.mass, potfn, grid), k)


def verify_model(
    model: Model,
    k: int = 4,
    grid: Union[Grid, str] = "auto",
    partner: bool = False,
    tol: float = DEFAULT_TOL,
) -> SpectrumReport:
    """Compare the lowest ``k`` discrete eigenpairs with the closed forms.

    With ``partner=True`` the partner Hamiltonian is solved and level ``m``
    is compared with ``E_{m+1}`` of the base model and the closed-form
    partner state. A level passes when ``abs_err <= tol`` and halving the
    spacing moves its eigenvalue by less than ``tol / 3``.
    """
    if grid == "auto":
        grid = auto_grid(model, k + 1 if partner else k)
    pairs = _numeric(model, grid, k, partner)
    fine = _numeric(model, grid.refined(), k, partner)
    x = grid.x
    levels = []
    ok = True
    for m, ((E, v), (E_fine, _)) in enumerate(zip(pairs, fine)):
        if partner:
            exact = model.energy(m + 1)
            ref = np.asarray(partner_eigenstate(model, m, x))
        else:
            exact = model.energy(m)
            ref = np.asarray(wavefunction(model, m, x))
        ref = ref / np.linalg.norm(ref)
        overlap = float(min(1.0, abs(np.dot(v, ref))))
        err = abs(E - exact)
        ok &= err <= tol and abs(E_fine - E) < tol / 3
        levels.append(LevelReport(m, exact, E, err, overlap, E_fine))
    return SpectrumReport(levels, grid, bool(ok), tol, partner)


def ground_state_errors(model: Model, grids: Sequence[Grid]) -> list[float]:
    """``|E_0(h) - E_0|`` on each grid."""
    exact = model.energy(0)
    return [abs(_numeric(model, g, 1, False)[0][0] - exact) for g in grids]


def convergence_ratios(model: Model, base: Grid, refinements: int = 2) -> tuple[list[float], list[float]]:
    """Ground-state errors under repeated halving of ``h`` and their successive ratios."""
    grids = [base]
    for _ in range(refinements):
        grids.append(grids[-1].refined())
    errs = ground_state_errors(model, grids)
    return errs, [errs[i] / errs[i + 1] for i in range(len(errs) - 1)]


def sampled_eigenvector(model: Model, grid: Grid, m: int, partner: bool = False) -> np.ndarray:
    """Numerical eigenvector ``m``, sign-aligned with the closed form."""
    v = _numeric(model, grid, m + 1, partner)[m][1]
    ref = partner_eigenstate(model, m, grid.x) if partner else wavefunction(model, m, grid.x)
    return align_sign(v, ref)
