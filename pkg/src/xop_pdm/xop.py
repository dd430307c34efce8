"""Laguerre- and Jacobi-type X1 exceptional orthogonal polynomials.

Each family member F_n (n >= 1, no constant member) is the monic polynomial
solution of ``S2 F'' + S1 F' + S0 F = 0``, where the polynomial coefficients
come from clearing the rational coefficients of the family ODE. Members are
built by solving for the one-dimensional null space of that linear map on
polynomials of degree <= n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Union

import numpy as np

from .numerics import (
    DEFAULT_QUADRATURE,
    Polynomial,
    QuadratureSpec,
    integrate,
    nullspace,
    poly_eval,
)


@dataclass(frozen=True)
class LaguerreX1:
    alpha: float

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"Laguerre X1 family needs alpha > 0, got {self.alpha}")

    def Q(self, g):
        a = self.alpha
        return -(g - a) * (g + a + 1) / (g * (g + a))

    def R(self, g, n: int):
        return (n - 2) / g + 2 / (g + self.alpha)


@dataclass(frozen=True)
class JacobiX1:
    alpha: float
    beta: float

    def __post_init__(self):
        a, b = self.alpha, self.beta
        if not (a > -1 and b > -1):
            raise ValueError(f"Jacobi X1 family needs alpha, beta > -1, got {a}, {b}")
        if a == b:
            raise ValueError("Jacobi X1 family needs alpha != beta")
        # keeps the root (a+b)/(b-a) of the weight denominator outside [-1, 1]
        if not a * b > 0:
            raise ValueError(f"Jacobi X1 family needs alpha*beta > 0, got {a}*{b}")

    def denom(self, g):
        a, b = self.alpha, self.beta
        return (b - a) * g - (b + a)

    def Q(self, g):
        a, b = self.alpha, self.beta
        return -((a + b + 2) * g - (b - a)) / (1 - g * g) - 2 * (b - a) / self.denom(g)

    def R(self, g, n: int):
        a, b = self.alpha, self.beta
        return (-((b - a) * g - (n - 1) * (n + a + b)) / (1 - g * g)
                - (b - a) ** 2 / self.denom(g))


X1Family = Union[LaguerreX1, JacobiX1]


@dataclass(frozen=True)
class X1Polynomial:
    family: X1Family
    n: int
    p: Polynomial

    def __call__(self, g):
        return poly_eval(self.p, g)

    def deriv(self, g):
        return poly_eval(self.p.deriv(), g)


def ode_coefficients(family: X1Family, n: int) -> tuple[Polynomial, Polynomial, Polynomial]:
    """Return ``(S2, S1, S0)`` with ``S2 F'' + S1 F' + S0 F = 0``."""
    if n < 1:
        raise ValueError("X1 families start at degree 1")
    if isinstance(family, LaguerreX1):
        a = family.alpha
        S2 = Polynomial([0.0, a, 1.0])                       # g(g+a)
        S1 = Polynomial([a * (a + 1), -1.0, -1.0])           # -(g-a)(g+a+1)
        S0 = Polynomial([(n - 2) * a, n])                    # (n-2)(g+a) + 2g
        return S2, S1, S0
    if isinstance(family, JacobiX1):
        a, b = family.alpha, family.beta
        D = Polynomial([-(b + a), b - a])
        one_m_g2 = Polynomial([1.0, 0.0, -1.0])
        S2 = one_m_g2 * D
        S1 = Polynomial([b - a, -(a + b + 2)]) * D - one_m_g2.scale(2 * (b - a))
        S0 = Polynomial([(n - 1) * (n + a + b), -(b - a)]) * D - one_m_g2.scale((b - a) ** 2)
        return S2, S1, S0
    raise TypeError(f"unknown X1 family {family!r}")


def _operator_matrix(family: X1Family, n: int) -> np.ndarray:
    S2, S1, S0 = ode_coefficients(family, n)
    cols = []
    for j in range(n + 1):
        mono = Polynomial([0.0] * j + [1.0])
        img = S2 * mono.deriv().deriv() + S1 * mono.deriv() + S0 * mono
        cols.append(img.as_array())
    rows = max(len(c) for c in cols)
    A = np.zeros((rows, n + 1))
    for j, c in enumerate(cols):
        A[: len(c), j] = c
    return A


@lru_cache(maxsize=256)
def construct_x1(family: X1Family, n: int) -> X1Polynomial:
    """Monic degree-``n`` member of the family, from the ODE null space."""
    if n < 1:
        raise ValueError("X1 families have no constant member; n must be >= 1")
    A = _operator_matrix(family, n)
    # column scaling keeps the SVD threshold meaningful when g**j terms grow
    scale = np.linalg.norm(A, axis=0)
    scale[scale == 0] = 1.0
    basis = nullspace(A / scale, tol=1e-10)
    if len(basis) != 1:
        raise ValueError(
            f"null space of the degree-{n} X1 operator has dimension {len(basis)} "
            f"for {family!r}; expected 1"
        )
    v = basis[0] / scale
    if abs(v[n]) <= 1e-10 * np.abs(v).max():
        raise ValueError(f"only a spurious solution of degree < {n} exists for {family!r}")
    return X1Polynomial(family, n, Polynomial(v / v[n]))


def ode_residual(poly: X1Polynomial, g) -> tuple[np.ndarray, np.ndarray]:
    """Pointwise ``S2 F'' + S1 F' + S0 F`` and the largest of its three terms.

    The second value is the natural scale for a relative residual; ``S2 F''``
    alone vanishes identically for n = 1.
    """
    S2, S1, S0 = ode_coefficients(poly.family, poly.n)
    p = poly.p
    d1, d2 = p.deriv(), p.deriv().deriv()
    terms = np.array([S2(g) * d2(g), S1(g) * d1(g), S0(g) * p(g)])
    return terms.sum(axis=0), np.abs(terms).max(axis=0)


def domain(family: X1Family) -> tuple[float, float]:
    return (0.0, math.inf) if isinstance(family, LaguerreX1) else (-1.0, 1.0)


def weight(family: X1Family, g):
    """Orthogonality weight of the family at ``g``."""
    g = np.asarray(g, dtype=float)
    if isinstance(family, LaguerreX1):
        if np.any(g <= 0):
            raise ValueError("Laguerre X1 weight is defined for g > 0")
        a = family.alpha
        out = g**a * np.exp(-g) / (g + a) ** 2
    else:
        if np.any((g <= -1) | (g >= 1)):
            raise ValueError("Jacobi X1 weight is defined for -1 < g < 1")
        a, b = family.alpha, family.beta
        out = (1 - g) ** a * (1 + g) ** b / family.denom(g) ** 2
    return out if out.ndim else float(out)


def laguerre_cutoff(family: LaguerreX1, n: int) -> float:
    return max(50.0, 10.0 * (n + family.alpha))


def _raw_integral(family: X1Family, fm: X1Polynomial, fn: X1Polynomial, spec: QuadratureSpec) -> float:
    if isinstance(family, LaguerreX1):
        G = laguerre_cutoff(family, max(fm.n, fn.n))
        f = lambda g: fm(g) * fn(g) * weight(family, g) if g > 0 else 0.0
        peak = family.alpha + fm.n + fn.n
        return integrate(f, 0.0, G, spec, points=[peak, 2 * peak])

    a, b = family.alpha, family.beta

    # g = 1 - t^2 near +1 and g = t^2 - 1 near -1 regularise the endpoint powers
    def upper(t):
        g = 1.0 - t * t
        w = (t * t) ** a * (2.0 - t * t) ** b / family.denom(g) ** 2
        return fm(g) * fn(g) * w * 2.0 * t

    def lower(t):
        g = t * t - 1.0
        w = (2.0 - t * t) ** a * (t * t) ** b / family.denom(g) ** 2
        return fm(g) * fn(g) * w * 2.0 * t

    return integrate(upper, 0.0, 1.0, spec) + integrate(lower, 0.0, 1.0, spec)


def orthogonality_integral(
    family: X1Family, m: int, n: int, spec: QuadratureSpec = DEFAULT_QUADRATURE
) -> float:
    """``int F_m F_n W dg`` over the family's orthogonality interval."""
    fm, fn = construct_x1(family, m), construct_x1(family, n)
    if m == n:
        return _raw_integral(family, fm, fn, spec)
    # cross integrals cancel to ~0, so the tolerance is set against the norms
    scale = math.sqrt(
        orthogonality_integral(family, m, m, spec) * orthogonality_integral(family, n, n, spec)
    )
    cross_spec = QuadratureSpec(
        abs_tol=spec.abs_tol * scale, rel_tol=spec.rel_tol,
        max_subdivisions=spec.max_subdivisions,
    )
    return _raw_integral(family, fm, fn, cross_spec)
