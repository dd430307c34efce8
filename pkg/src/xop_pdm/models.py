"""Exactly solvable position-dependent-mass models built on X1 polynomials.

Two families share the BenDaniel-Duke kinetic term ``-d/dx (1/M) d/dx``:

* :class:`LaguerreModel` -- ``g = exp(-b x)``, ``M = exp(-b x)``;
* :class:`JacobiModel`   -- ``g = tanh(a x)``, ``M = sech(a x)**2``.

Bound states are ``psi_m = f(x) F_{m+1}(g(x))`` with ``F`` the monic X1
polynomial of degree ``m + 1``. Units are hbar = 2 m0 = 1.

Jacobi closed forms: the commonly quoted effective potential is low by the
constant ``a**2`` relative to its own eigenfunctions and spectrum.
``JacobiModel.potential`` includes the constant; the quoted expression is kept
as ``potential_uncorrected`` so the discrepancy stays measurable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Optional, Union

import numpy as np
from scipy.special import log_expit

from .numerics import DEFAULT_QUADRATURE, QuadratureSpec, integrate
from .xop import JacobiX1, LaguerreX1, X1Polynomial, construct_x1

TAIL_RATIO = 1e-14


@dataclass(frozen=True)
class AmbiguityParams:
    """von Roos ordering parameters; must satisfy ``r + s + t = -1``."""

    r: float
    s: float
    t: float

    def __post_init__(self):
        if abs(self.r + self.s + self.t + 1.0) > 1e-12:
            raise ValueError(f"ambiguity parameters need r+s+t = -1, got {self.r + self.s + self.t}")


def _arr(x):
    return np.asarray(x, dtype=float)


def _out(v):
    return v if np.ndim(v) else float(v)


def bump(ep, em, c):
    """``ep / (1 + c ep)**2`` with ``ep = exp(y)``, ``em = exp(-y)``, finite for all y."""
    return np.where(ep <= 1.0, ep / (1 + c * ep) ** 2, em / (em + c) ** 2)


@dataclass(frozen=True)
class LaguerreModel:
    """Exponential mass ``M = exp(-b x)`` with Laguerre-type X1 bound states."""

    b: float = 1.0
    alpha: float = 2.0
    v0bar: Optional[float] = field(default=None)

    def __post_init__(self):
        if not self.b > 0:
            raise ValueError(f"b must be positive, got {self.b}")
        if not self.alpha > 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.v0bar is None:
            object.__setattr__(self, "v0bar", susy_zero_point(self))

    # -- bookkeeping ---------------------------------------------------------
    family_name = "laguerre"

    @property
    def family(self) -> LaguerreX1:
        return LaguerreX1(self.alpha)

    @property
    def offset(self) -> float:
        return self.v0bar

    @property
    def length_scale(self) -> float:
        return 1.0 / self.b

    def params(self) -> dict:
        return {"b": self.b, "alpha": self.alpha, "v0": self.v0bar}

    def shifted(self) -> "LaguerreModel":
        """Same mass profile, ``alpha -> alpha + 1``, SUSY offset."""
        return LaguerreModel(self.b, self.alpha + 1.0)

    def polynomial(self, m: int) -> X1Polynomial:
        return construct_x1(self.family, m + 1)

    # -- profiles ------------------------------------------------------------
    def mass(self, x):
        return _out(np.exp(-self.b * _arr(x)))

    def mass_derivatives(self, x):
        M = np.exp(-self.b * _arr(x))
        return _out(M), _out(-self.b * M), _out(self.b**2 * M)

    def gmap(self, x):
        return _out(np.exp(-self.b * _arr(x)))

    def gmap_deriv(self, x):
        return _out(-self.b * np.exp(-self.b * _arr(x)))

    # -- potential and spectrum ---------------------------------------------
    def potential(self, x):
        b, al = self.b, self.alpha
        x = _arr(x)
        with np.errstate(over="ignore", invalid="ignore"):
            ep, em = np.exp(b * x), np.exp(-b * x)
            v = (b * b / 4) * ((al * al - 1) * ep + em) + (b * b / 4) * (
                4.0 / (al * (1 + al * ep)) + 8.0 * bump(ep, em, al)
            )
        return _out(v + self.v0bar)

    def energy(self, m: int) -> float:
        if m < 0:
            raise ValueError("m must be >= 0")
        b, al = self.b, self.alpha
        return b * b * (m + (al + 1) / 2) + b * b / al + self.v0bar

    def energy_pre_reset(self, n: int) -> float:
        """Spectrum in the original ``n = m + 1`` labelling."""
        b, al = self.b, self.alpha
        return (b * b / 4) * (4 * n + 4 / al + 2 * al - 2) + self.v0bar

    # -- wavefunctions -------------------------------------------------------
    def _prefactor(self, x):
        """Prefactor ``f(x)`` and ``d log f / dx``."""
        b, al = self.b, self.alpha
        x = _arr(x)
        with np.errstate(over="ignore"):
            g = np.exp(-b * x)
            logf = -0.5 * ((al + 1) * b * x + g) - np.logaddexp(math.log(al), -b * x)
            f = np.exp(logf)
            dlog = -0.5 * (al + 1) * b + 0.5 * b * g + b * g / (al + g)
        return f, dlog, g

    def log_abs_wavefunction(self, m: int, x):
        b, al = self.b, self.alpha
        x = _arr(x)
        F = self.polynomial(m)
        with np.errstate(over="ignore", divide="ignore"):
            g = np.exp(-b * x)
            logf = -0.5 * ((al + 1) * b * x + g) - np.logaddexp(math.log(al), -b * x)
            # for very negative x, |F(g)| ~ g**(m+1)
            logF = np.where(b * x > -300, np.log(np.abs(F(np.minimum(g, 1e130)))), (m + 1) * (-b * x))
        return logf + logF

    def _raw_wavefunction(self, m: int, x):
        f, _, g = self._prefactor(x)
        F = self.polynomial(m)
        with np.errstate(over="ignore", invalid="ignore"):
            psi = np.where(f > 0, f * F(np.minimum(g, 1e300)), 0.0)
        return psi

    def _raw_wavefunction_deriv(self, m: int, x):
        f, dlog, g = self._prefactor(x)
        F = self.polynomial(m)
        gp = -self.b * g
        with np.errstate(over="ignore", invalid="ignore"):
            gg = np.minimum(g, 1e300)
            d = np.where(f > 0, f * (dlog * F(gg) + F.deriv(gg) * gp), 0.0)
        return d

    def search_window(self) -> tuple[float, float]:
        return -12.0 / self.b, 60.0 / self.b


@dataclass(frozen=True)
class JacobiModel:
    """Solitonic mass ``M = sech(a x)**2`` with Jacobi-type X1 bound states."""

    a: float = 0.2
    alpha: float = 2.0
    beta: float = 2.5
    v0hat: Optional[float] = field(default=None)

    def __post_init__(self):
        al, be = self.alpha, self.beta
        if not self.a > 0:
            raise ValueError(f"a must be positive, got {self.a}")
        if not (al > -0.5 and be > -0.5):
            raise ValueError(f"alpha, beta must exceed -1/2, got {al}, {be}")
        if al == be:
            raise ValueError("alpha must differ from beta")
        if not al * be > 0:
            raise ValueError(f"alpha*beta must be positive, got {al}*{be}")
        if self.v0hat is None:
            object.__setattr__(self, "v0hat", susy_zero_point(self))

    family_name = "jacobi"

    @property
    def family(self) -> JacobiX1:
        return JacobiX1(self.alpha, self.beta)

    @property
    def offset(self) -> float:
        return self.v0hat

    @property
    def length_scale(self) -> float:
        return 1.0 / self.a

    def params(self) -> dict:
        return {"a": self.a, "alpha": self.alpha, "beta": self.beta, "v0": self.v0hat}

    def shifted(self) -> "JacobiModel":
        """Same mass profile, ``(alpha, beta) -> (alpha + 1, beta + 1)``, SUSY offset."""
        return JacobiModel(self.a, self.alpha + 1.0, self.beta + 1.0)

    def polynomial(self, m: int) -> X1Polynomial:
        return construct_x1(self.family, m + 1)

    def _logs(self, x):
        """``log(1 - tanh ax)`` and ``log(1 + tanh ax)`` without cancellation."""
        y = 2 * self.a * _arr(x)
        return math.log(2.0) + log_expit(-y), math.log(2.0) + log_expit(y)

    def mass(self, x):
        lm, lp = self._logs(x)
        return _out(np.exp(lm + lp))

    def mass_derivatives(self, x):
        a = self.a
        x = _arr(x)
        M = np.exp(sum(self._logs(x)))
        t = np.tanh(a * x)
        return _out(M), _out(-2 * a * M * t), _out(4 * a * a * M * t * t - 2 * a * a * M * M)

    def gmap(self, x):
        return _out(np.tanh(self.a * _arr(x)))

    def gmap_deriv(self, x):
        return _out(self.a * self.mass(x))

    def potential_uncorrected(self, x):
        """The quoted closed form, verbatim (without the ``a**2`` constant)."""
        a, al, be = self.a, self.alpha, self.beta
        x = _arr(x)
        with np.errstate(over="ignore", invalid="ignore"):
            ep, em = np.exp(2 * a * x), np.exp(-2 * a * x)
            den = be + al * ep
            v = (a * a / 4) * ((al * al - 1) * ep + (be * be - 1) * em) + (a * a / 4) * (
                4 * (al - be) * (al - 3 * be) / (al * den)
                - 8 * be * (al - be) ** 2 / (al * den**2)
            )
        return _out(v + self.v0hat)

    def potential(self, x):
        return _out(_arr(self.potential_uncorrected(x)) + self.a**2)

    def energy(self, m: int) -> float:
        if m < 0:
            raise ValueError("m must be >= 0")
        a, al, be = self.a, self.alpha, self.beta
        return (a * a * (m + (al + be) / 2) * (m + (al + be + 2) / 2)
                + a * a * (be / al - (al * al + be * be - 2) / 4) + self.v0hat)

    def _prefactor(self, x):
        a, al, be = self.a, self.alpha, self.beta
        x = _arr(x)
        lm, lp = self._logs(x)
        t = np.tanh(a * x)
        den = al + be + (al - be) * t
        f = np.exp(0.5 * (al + 1) * lm + 0.5 * (be + 1) * lp) / den
        sech2 = np.exp(lm + lp)
        dlog = a * (-(al + 1) * (1 + t) / 2 + (be + 1) * (1 - t) / 2 - (al - be) * sech2 / den)
        return f, dlog, t

    def log_abs_wavefunction(self, m: int, x):
        al, be = self.alpha, self.beta
        lm, lp = self._logs(x)
        t = np.tanh(self.a * _arr(x))
        F = self.polynomial(m)
        with np.errstate(divide="ignore"):
            return (0.5 * (al + 1) * lm + 0.5 * (be + 1) * lp
                    - np.log(np.abs(al + be + (al - be) * t)) + np.log(np.abs(F(t))))

    def _raw_wavefunction(self, m: int, x):
        f, _, t = self._prefactor(x)
        return f * self.polynomial(m)(t)

    def _raw_wavefunction_deriv(self, m: int, x):
        f, dlog, t = self._prefactor(x)
        F = self.polynomial(m)
        gp = self.a * np.exp(sum(self._logs(x)))
        return f * (dlog * F(t) + F.deriv(t) * gp)

    def search_window(self) -> tuple[float, float]:
        return -60.0 / self.a, 60.0 / self.a


Model = Union[LaguerreModel, JacobiModel]


def susy_zero_point(model) -> float:
    """Offset that puts the ground state at zero energy."""
    if isinstance(model, LaguerreModel):
        b, al = model.b, model.alpha
        return -b * b * ((al + 1) / 2 + 1 / al)
    a, al, be = model.a, model.alpha, model.beta
    return -(a * a / 4) * (2 * al * be + 2 * al + 2 * be + 2 + 4 * be / al)


def uses_susy_offset(model: Model) -> bool:
    zp = susy_zero_point(model)
    return abs(model.offset - zp) <= 1e-12 * (1.0 + abs(zp))


# -- domains ---------------------------------------------------------------

def significant_domain(model: Model, k: int, ratio: float = TAIL_RATIO) -> tuple[float, float]:
    """Smallest interval outside which ``|psi_m|**2 < ratio * max |psi_m|**2`` for all ``m <= k``."""
    lo, hi = model.search_window()
    xs = np.linspace(lo, hi, 24001)
    left, right = math.inf, -math.inf
    cut = 0.5 * math.log(ratio)
    for m in range(k + 1):
        lp = model.log_abs_wavefunction(m, xs)
        keep = np.flatnonzero(lp > lp.max() + cut)
        left = min(left, xs[max(keep[0] - 1, 0)])
        right = max(right, xs[min(keep[-1] + 1, xs.size - 1)])
    return float(left), float(right)


def auto_domain(model: Model, k: int = 4) -> tuple[float, float]:
    """Significant domain for levels ``0..k`` rounded outward to whole length scales."""
    L = model.length_scale
    lo, hi = significant_domain(model, k)
    return math.floor(lo / L) * L, math.ceil(hi / L) * L


# -- wavefunctions ---------------------------------------------------------

def wavefunction(model: Model, m: int, x, normalized: bool = False):
    """Bound state ``psi_m``; unit L2 norm on the real line when ``normalized``."""
    if m < 0:
        raise ValueError("m must be >= 0")
    psi = model._raw_wavefunction(m, x)
    if normalized:
        psi = psi / wavefunction_norm(model, m)
    return _out(psi)


def wavefunction_deriv(model: Model, m: int, x, normalized: bool = False):
    """Closed-form ``d psi_m / dx``."""
    d = model._raw_wavefunction_deriv(m, x)
    if normalized:
        d = d / wavefunction_norm(model, m)
    return _out(d)


@lru_cache(maxsize=None)
def wavefunction_norm(model: Model, m: int) -> float:
    """L2 norm of the unnormalized ``psi_m``, by quadrature over the tail-rule domain."""
    lo, hi = significant_domain(model, m)
    xs = np.linspace(lo, hi, 2001)
    peak = float(xs[np.argmax(model.log_abs_wavefunction(m, xs))])
    f = lambda x: float(model._raw_wavefunction(m, x)) ** 2
    return math.sqrt(integrate(f, lo, hi, DEFAULT_QUADRATURE, points=[peak]))


def overlap_integral(model: Model, m: int, n: int, spec: QuadratureSpec = DEFAULT_QUADRATURE) -> float:
    """``int psi_m psi_n dx`` with both states normalized."""
    lo, hi = significant_domain(model, max(m, n))
    f = lambda x: wavefunction(model, m, x, True) * wavefunction(model, n, x, True)
    return integrate(f, lo, hi, spec, points=np.linspace(lo, hi, 9)[1:-1])


def count_nodes(values, floor: float = 1e-10) -> int:
    """Sign changes of a sampled function, ignoring samples below ``floor * max``."""
    v = np.asarray(values, dtype=float)
    v = v[np.abs(v) > floor * np.abs(v).max()]
    return int(np.count_nonzero(np.signbit(v[1:]) != np.signbit(v[:-1])))


# -- closed-form normalization and boundary behaviour -----------------

@dataclass(frozen=True)
class ClosedFormNormalization:
    """Closed-form normalization constant.

    ``convention_dependent`` is always True: the constant normalizes the
    bound state only for the reference polynomial normalization, not for
    the monic one used here.
    """

    value: float
    convention_dependent: bool = True


def normalization_constant_paper(model: Model, m: int) -> ClosedFormNormalization:
    if m < 0:
        raise ValueError("m must be >= 0")
    lg = math.lgamma
    if isinstance(model, LaguerreModel):
        b, al = model.b, model.alpha
        log_sq = math.log(b) + lg(m + 1) - math.log(m + al + 1) - lg(m + al)
    else:
        a, al, be = model.a, model.alpha, model.beta
        log_sq = (math.log(a) + 2 * math.log(abs(al - be)) + lg(m + 1)
                  + math.log(2 * m + al + be + 1) + lg(m + al + be + 1)
                  - (al + be - 1) * math.log(2) - math.log(m + al + 1) - math.log(m + be + 1)
                  - lg(m + al) - lg(m + be))
    value = math.exp(0.5 * log_sq)
    if not math.isfinite(value) or value == 0.0:
        raise OverflowError(f"normalization constant out of floating-point range for m={m}")
    return ClosedFormNormalization(value)


def closed_form_normalization_ratio(model: Model, m: int) -> float:
    """``N_closed(m) / N_monic(m)``, where ``N_monic = 1 / ||psi_m||``. Reported, never asserted."""
    return normalization_constant_paper(model, m).value * wavefunction_norm(model, m)


def hermiticity_decay(model: Model, m: int, X: float) -> tuple[float, float]:
    """``|psi_m|**2 / sqrt(M)`` at ``-X`` and ``+X`` (normalized states)."""
    if not X > 0:
        raise ValueError("X must be positive")
    vals = []
    for x in (-X, X):
        psi = wavefunction(model, m, x, normalized=True)
        vals.append(psi * psi / math.sqrt(model.mass(x)))
    return vals[0], vals[1]


def von_roos_bare_potential(model: Model, params: AmbiguityParams, x):
    """Bare potential ``V`` whose von Roos effective potential equals ``model.potential``."""
    r, s = params.r, params.s
    M, M1, M2 = (np.asarray(v) for v in model.mass_derivatives(x))
    v = (np.asarray(model.potential(x)) - (s + 1) / 2 * M2 / M**2
         + (r * (r + s + 1) + s + 1) * M1**2 / M**3)
    return _out(v)
