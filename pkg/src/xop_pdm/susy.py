"""Supersymmetric factorization ``H = A^dagger A`` of the position-dependent-mass models.

``A psi = psi'/sqrt(M) + B psi`` and ``A^dagger psi = -(psi/sqrt(M))' + B psi``
with superpotential ``B = -psi_0' / (sqrt(M) psi_0)``. Both families are shape
invariant: the partner potential is the base potential with shifted
parameters plus a constant remainder.

Jacobi family corrections relative to the commonly quoted closed forms
(each checked against ``B = -psi_0'/(sqrt(M) psi_0)`` and the partner
eigenvalue problem): the rational part of ``B`` carries a ``cosh(a x)``
factor in its numerator; the partner potential carries the same ``+a**2``
constant as the base potential; the partner-state denominator is
``(alpha - beta) sinh(a x) + (alpha + beta + 2) cosh(a x)``. The quoted forms
remain available as ``*_uncorrected``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Optional

import numpy as np

from .models import (
    JacobiModel,
    LaguerreModel,
    Model,
    _arr,
    _out,
    bump,
    significant_domain,
    uses_susy_offset,
    wavefunction,
    wavefunction_deriv,
)
from .numerics import DEFAULT_QUADRATURE, integrate

FD_STEP = 1e-4


def _require_susy(model: Model) -> None:
    if not uses_susy_offset(model):
        raise ValueError(
            "SUSY identities need the zero-point offset; got "
            f"{model.offset!r} for {model!r}"
        )


def remainder(model: Model) -> float:
    """Shape-invariance constant ``V_1(x; p) - V(x; p')``."""
    if isinstance(model, LaguerreModel):
        return model.b**2
    return model.a**2 * (model.alpha + model.beta + 2)


@dataclass(frozen=True)
class PartnerModel:
    base: Model
    shifted: Model
    remainder: float


def partner_model(model: Model) -> PartnerModel:
    _require_susy(model)
    return PartnerModel(model, model.shifted(), remainder(model))


# -- superpotential ----------------------------------------------------------

def _laguerre_B(model: LaguerreModel, x, deriv: bool = False):
    b, al = model.b, model.alpha
    x = _arr(x)
    with np.errstate(over="ignore"):
        eh, emh = np.exp(b * x / 2), np.exp(-b * x / 2)
        # e^{3bx/2} / (al(al+1) e^{2bx} + (2al+1) e^{bx} + 1), divided through by e^{3bx/2}
        den = al * (al + 1) * eh + (2 * al + 1) * emh + emh**3
        if not deriv:
            return (b / 2) * ((al + 1) * eh - emh) - b / den
        dden = (b / 2) * (al * (al + 1) * eh - (2 * al + 1) * emh - 3 * emh**3)
        return (b * b / 4) * ((al + 1) * eh + emh) + b * dden / den**2


def _jacobi_B(model: JacobiModel, x, deriv: bool = False, corrected: bool = True):
    a, al, be = model.a, model.alpha, model.beta
    x = _arr(x)
    c, s = np.cosh(a * x), np.sinh(a * x)
    t = np.tanh(a * x)
    sech = np.sqrt(model.mass(x))
    # P = (al+be) c + (al-be) s,  Q = (al+be+2) c + (al-be) s, scaled by sech
    p = al + be + (al - be) * t
    q = al + be + 2 + (al - be) * t
    if corrected:
        rat = 2 * a * (al - be) * sech / (p * q)
    else:
        rat = 2 * a * (al - be) * sech**2 / (p * q)
    if not deriv:
        return (a / 2) * ((al - be) * c + (al + be + 2) * s) + rat
    lin = (a * a / 2) * ((al - be) * s + (al + be + 2) * c)
    dt = a * sech**2
    dlog_pq = (al - be) * dt / p + (al - be) * dt / q
    k = 1 if corrected else 2
    return lin + rat * (-k * a * t - dlog_pq)


def superpotential(model: Model, x):
    return _out(_laguerre_B(model, x) if isinstance(model, LaguerreModel) else _jacobi_B(model, x))


def superpotential_uncorrected(model: Model, x):
    """The quoted closed form; differs from :func:`superpotential` only for Jacobi."""
    if isinstance(model, LaguerreModel):
        return superpotential(model, x)
    return _out(_jacobi_B(model, x, corrected=False))


def superpotential_deriv(model: Model, x):
    if isinstance(model, LaguerreModel):
        return _out(_laguerre_B(model, x, deriv=True))
    return _out(_jacobi_B(model, x, deriv=True))


def _inv_sqrt_mass(model: Model, x):
    """``1/sqrt(M)``, its first derivative, and ``(1/sqrt M)(1/sqrt M)''``."""
    x = _arr(x)
    if isinstance(model, LaguerreModel):
        b = model.b
        with np.errstate(over="ignore"):
            u = np.exp(b * x / 2)
        return u, (b / 2) * u, (b * b / 4) * u * u
    a = model.a
    c = np.cosh(a * x)
    return c, a * np.sinh(a * x), a * a * c * c


# -- potentials --------------------------------------------------------------

def potential_from_B(model: Model, x):
    """``-(B/sqrt M)' + B**2``; equals the base potential for SUSY offsets."""
    B, dB = _arr(superpotential(model, x)), _arr(superpotential_deriv(model, x))
    u, du, _ = _inv_sqrt_mass(model, x)
    return _out(-(dB * u + B * du) + B * B)


def partner_from_B(model: Model, x):
    """``V + 2 B'/sqrt(M) - (1/sqrt M)(1/sqrt M)''``."""
    dB = _arr(superpotential_deriv(model, x))
    u, _, uu2 = _inv_sqrt_mass(model, x)
    return _out(_arr(model.potential(x)) + 2 * dB * u - uu2)


def partner_potential_uncorrected(model: Model, x):
    """Quoted closed form of the partner potential (SUSY offset implied)."""
    _require_susy(model)
    x = _arr(x)
    if isinstance(model, LaguerreModel):
        b, al = model.b, model.alpha
        with np.errstate(over="ignore", invalid="ignore"):
            ep, em = np.exp(b * x), np.exp(-b * x)
            v = (b * b / 4) * (
                al * (al + 2) * ep + em
                + 4 / ((al + 1) * (1 + (al + 1) * ep))
                + 8 * bump(ep, em, al + 1)
            ) - (b * b / 2) * (al * al + al + 2) / (al + 1)
        return _out(v)
    a, al, be = model.a, model.alpha, model.beta
    with np.errstate(over="ignore"):
        ep, em = np.exp(2 * a * x), np.exp(-2 * a * x)
        den = (al + 1) * ep + be + 1
        v = (a * a / 4) * (
            al * (al + 2) * ep + be * (be + 2) * em
            + 4 * (al - be) * (al - 3 * be - 2) / ((al + 1) * den)
        ) - (a * a / 4) * (
            8 * (be + 1) * (al - be) ** 2 / ((al + 1) * den**2)
            + 2 * al * be + 4 * (be + 1) / (al + 1)
        )
    return _out(v)


def partner_potential(model: Model, x):
    """Closed-form partner potential ``V_1``."""
    v = _arr(partner_potential_uncorrected(model, x))
    if isinstance(model, JacobiModel):
        v = v + model.a**2
    return _out(v)


def shape_invariance_check(model: Model, sample_points) -> tuple[float, float]:
    """Return ``(mean d, max |d - mean d|)`` for ``d = V_1(x; p) - V(x; p')``."""
    xs = _arr(sample_points)
    if xs.size < 10:
        raise ValueError("need at least 10 sample points")
    d = _arr(partner_potential(model, xs)) - _arr(model.shifted().potential(xs))
    mean = float(d.mean())
    return mean, float(np.abs(d - mean).max())


# -- intertwining operators --------------------------------------------------

def derivative(f: Callable, x, step: float):
    """Central difference with one Richardson step, O(step**4)."""
    x = _arr(x)
    d1 = (_arr(f(x + step)) - _arr(f(x - step))) / (2 * step)
    d2 = (_arr(f(x + step / 2)) - _arr(f(x - step / 2))) / step
    return (4 * d2 - d1) / 3


def apply_A(model: Model, psi: Callable, x, dpsi: Optional[Callable] = None):
    """``(A psi)(x) = psi'/sqrt(M) + B psi``."""
    x = _arr(x)
    d = _arr(dpsi(x)) if dpsi is not None else derivative(psi, x, FD_STEP * model.length_scale)
    u, _, _ = _inv_sqrt_mass(model, x)
    return _out(u * d + _arr(superpotential(model, x)) * _arr(psi(x)))


def apply_A_dagger(model: Model, psi: Callable, x, dpsi: Optional[Callable] = None):
    """``(A^dagger psi)(x) = -(psi/sqrt(M))' + B psi``."""
    x = _arr(x)
    u, du, _ = _inv_sqrt_mass(model, x)
    p = _arr(psi(x))
    if dpsi is not None:
        d = u * _arr(dpsi(x)) + du * p
    else:
        d = derivative(lambda y: _arr(psi(y)) * _inv_sqrt_mass(model, y)[0], x,
                       FD_STEP * model.length_scale)
    return _out(-d + _arr(superpotential(model, x)) * p)


# -- partner eigenstates -----------------------------------------------------

def _raw_partner_eigenstate(model: Model, m: int, x, corrected: bool = True):
    x = _arr(x)
    if isinstance(model, LaguerreModel):
        b, al = model.b, model.alpha
        F = model.shifted().polynomial(m)
        with np.errstate(over="ignore", invalid="ignore"):
            g = np.exp(-b * x)
            logf = (-0.5 * ((al + 1) * b * x + g)
                    - np.logaddexp(math.log(al + 1) + b * x / 2, -b * x / 2))
            f = np.exp(logf)
            return np.where(f > 0, f * F(np.minimum(g, 1e300)), 0.0)
    a, al, be = model.a, model.alpha, model.beta
    F = model.shifted().polynomial(m)
    lm, lp = model._logs(x)
    t = np.tanh(a * x)
    # (al-be) sinh + (al+be+2) cosh = cosh * ((al+be+2) + (al-be) t)
    sign = 1.0 if corrected else -1.0
    den = (al + be + 2) + sign * (al - be) * t
    f = np.exp(0.5 * (al + 2) * lm + 0.5 * (be + 2) * lp) / den
    if not corrected:
        f = -f
    return f * F(t)


@lru_cache(maxsize=None)
def partner_norm(model: Model, m: int) -> float:
    lo, hi = significant_domain(model, m + 2)
    f = lambda x: float(_raw_partner_eigenstate(model, m, x)) ** 2
    return math.sqrt(integrate(f, lo, hi, DEFAULT_QUADRATURE, points=np.linspace(lo, hi, 9)[1:-1]))


def partner_eigenstate(model: Model, m: int, x, normalized: bool = False):
    """Closed-form ``m``-th bound state of the partner Hamiltonian."""
    if m < 0:
        raise ValueError("m must be >= 0")
    v = _raw_partner_eigenstate(model, m, x)
    if normalized:
        v = v / partner_norm(model, m)
    return _out(v)


def partner_eigenstate_uncorrected(model: Model, m: int, x):
    """Quoted closed form; differs from :func:`partner_eigenstate` only for Jacobi."""
    return _out(_raw_partner_eigenstate(model, m, x, corrected=False))


def align_sign(f, ref):
    """Flip ``f`` so that its inner product with ``ref`` is non-negative."""
    f = _arr(f)
    return f if np.dot(f, _arr(ref)) >= 0 else -f


def ladder_down(model: Model, m: int, x):
    """``A psi_{m+1} / sqrt(E_{m+1})`` from the normalized closed-form state."""
    _require_susy(model)
    psi = lambda y: wavefunction(model, m + 1, y, True)
    dpsi = lambda y: wavefunction_deriv(model, m + 1, y, True)
    return _out(_arr(apply_A(model, psi, x, dpsi)) / math.sqrt(model.energy(m + 1)))


def ladder_up(model: Model, m: int, x):
    """``A^dagger psi^(1)_m / sqrt(E_{m+1})`` from the normalized partner state."""
    _require_susy(model)
    phi = lambda y: partner_eigenstate(model, m, y, True)
    return _out(_arr(apply_A_dagger(model, phi, x)) / math.sqrt(model.energy(m + 1)))
