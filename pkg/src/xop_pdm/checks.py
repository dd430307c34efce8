"""Invariant suite behind ``xop-pdm check``; each check returns a :class:`Check`."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from . import susy
from .models import (
    LaguerreModel,
    Model,
    auto_domain,
    count_nodes,
    hermiticity_decay,
    overlap_integral,
    wavefunction,
    wavefunction_deriv,
)
from .solver import DEFAULT_TOL, verify_model
from .xop import construct_x1, ode_residual, orthogonality_integral


@dataclass
class Check:
    name: str
    passed: bool
    value: float
    tol: float
    detail: Optional[str] = None

    def to_dict(self) -> dict:
        return asdict(self)


def sample_points(model: Model, n: int = 200) -> np.ndarray:
    lo, hi = auto_domain(model)
    return np.linspace(lo, hi, n)


def x1_ode_residual(model: Model, nmax: int = 5) -> Check:
    fam = model.family
    lo, hi = (0.01, 60.0) if isinstance(model, LaguerreModel) else (-0.999, 0.999)
    g = np.linspace(lo, hi, 200)
    worst = 0.0
    for n in range(1, nmax + 1):
        res, lead = ode_residual(construct_x1(fam, n), g)
        scale = max(np.abs(lead).max(), 1e-300)
        worst = max(worst, float(np.abs(res).max() / scale))
    return Check("x1_ode_residual", worst <= 1e-9, worst, 1e-9)


def x1_orthogonality(model: Model, nmax: int = 5) -> Check:
    fam = model.family
    norms = [orthogonality_integral(fam, n, n) for n in range(1, nmax + 1)]
    worst = 0.0
    for m in range(1, nmax + 1):
        for n in range(m + 1, nmax + 1):
            v = abs(orthogonality_integral(fam, m, n)) / math.sqrt(norms[m - 1] * norms[n - 1])
            worst = max(worst, v)
    return Check("x1_orthogonality", worst <= 1e-8 and min(norms) > 0, worst, 1e-8)


def orthonormality(model: Model, kmax: int = 4) -> Check:
    G = np.array([[overlap_integral(model, m, n) for n in range(kmax + 1)] for m in range(kmax + 1)])
    dev = float(np.abs(G - np.eye(kmax + 1)).max())
    return Check("orthonormality", dev <= 1e-8, dev, 1e-8)


def hermiticity(model: Model, kmax: int = 4) -> Check:
    lo, hi = auto_domain(model)
    worst = 0.0
    for m in range(kmax + 1):
        # endpoints are asymmetric, so evaluate each side at its own edge
        worst = max(worst, hermiticity_decay(model, m, -lo)[0], hermiticity_decay(model, m, hi)[1])
    return Check("hermiticity_decay", worst < 1e-9, worst, 1e-9)


def node_counts(model: Model, kmax: int = 5) -> Check:
    xs = np.linspace(*auto_domain(model, kmax), 20001)
    bad = [m for m in range(kmax + 1) if count_nodes(wavefunction(model, m, xs)) != m]
    return Check("node_counts", not bad, float(len(bad)), 0.0,
                 f"levels with wrong node count: {bad}" if bad else None)


def shape_invariance(model: Model) -> Check:
    R, dev = susy.shape_invariance_check(model, sample_points(model))
    expected = susy.remainder(model)
    ok = dev <= 1e-9 * (1 + abs(R)) and abs(R - expected) <= 1e-9 * (1 + abs(expected))
    return Check("shape_invariance", ok, dev, 1e-9, f"remainder={R!r}, expected={expected!r}")


def factorization(model: Model) -> Check:
    x = sample_points(model)
    V = np.asarray(model.potential(x))
    dev = float(np.max(np.abs(np.asarray(susy.potential_from_B(model, x)) - V) / (1 + np.abs(V))))
    return Check("factorization_V_from_B", dev <= 1e-6, dev, 1e-6)


def partner_agreement(model: Model) -> Check:
    x = sample_points(model)
    V1 = np.asarray(susy.partner_potential(model, x))
    dev = float(np.max(np.abs(np.asarray(susy.partner_from_B(model, x)) - V1) / (1 + np.abs(V1))))
    return Check("partner_from_B", dev <= 1e-6, dev, 1e-6)


def ground_annihilation(model: Model) -> Check:
    x = sample_points(model)
    psi = lambda y: wavefunction(model, 0, y, True)
    dpsi = lambda y: wavefunction_deriv(model, 0, y, True)
    a = np.abs(np.asarray(susy.apply_A(model, psi, x, dpsi))).max()
    val = float(a / np.abs(psi(x)).max())
    return Check("A_psi0_zero", val <= 1e-7, val, 1e-7)


def intertwining(model: Model, mmax: int = 3) -> Check:
    x = sample_points(model)
    worst = 0.0
    for m in range(mmax + 1):
        ref = np.asarray(susy.partner_eigenstate(model, m, x, normalized=True))
        down = susy.align_sign(susy.ladder_down(model, m, x), ref)
        worst = max(worst, float(np.abs(down - ref).max()))
        base = np.asarray(wavefunction(model, m + 1, x, True))
        up = susy.align_sign(susy.ladder_up(model, m, x), base)
        worst = max(worst, float(np.abs(up - base).max()))
    return Check("intertwining", worst <= 1e-6, worst, 1e-6)


def spectrum(model: Model, k: int = 4, partner: bool = False):
    rep = verify_model(model, k, partner=partner)
    worst = max(lv.abs_err for lv in rep.levels)
    name = "partner_spectrum" if partner else "spectrum"
    return Check(name, rep.converged, worst, DEFAULT_TOL), rep


def uncorrected_offset(model: Model) -> dict:
    """Constant gap between the quoted potential and the one implied by ``B`` (reported only)."""
    x = sample_points(model)
    if isinstance(model, LaguerreModel):
        V = np.asarray(model.potential(x))
    else:
        V = np.asarray(model.potential_uncorrected(x))
    d = np.asarray(susy.potential_from_B(model, x)) - V
    return {"name": "quoted_potential_offset", "mean": float(d.mean()),
            "spread": float(np.abs(d - d.mean()).max())}


def run_all(model: Model, levels: int = 4) -> tuple[list[Check], list]:
    checks = [
        x1_ode_residual(model),
        x1_orthogonality(model),
        orthonormality(model),
        hermiticity(model),
        node_counts(model),
        shape_invariance(model),
        factorization(model),
        partner_agreement(model),
        ground_annihilation(model),
        intertwining(model),
    ]
    reports = []
    for partner in (False, True):
        c, rep = spectrum(model, levels, partner)
        checks.append(c)
        reports.append(rep)
    return checks, reports
